"""Batch command line front end.

One subcommand per toolkit operation; every command reads ordinary files,
writes to stdout (or --output) and reports problems on stderr. Exit codes:
0 success, 2 bad input, 3 size guard tripped.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from .biclustering import TriContext, oa_biclusters, prime_oac_triclusters
from .bmf import BooleanMatrix, boolean_product, factorize
from .context import FormalContext
from .contextio import FORMATS, load_context
from .errors import InputError, SizeGuardError
from .exploration import ExplorationSession, start_session
from .implications import (
    duquenne_guigues_base,
    format_implications,
    generator_cover,
    implications_json,
)
from .jsm import TrainingContext, classify_tau, report
from .lattice import build_lattice, next_closure_concepts
from .patterns import TOP, PatternStructure, pattern_concepts
from .ranking import clr_rank, query_concept, rank_stability_annotate
from .rules import (
    apriori,
    extract_rules,
    frequent_closed,
    frequent_maximal,
    luxenburger_base,
    rules_json,
    rules_to_csv,
)


def _fraction(text):
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(
            "%r is not a decimal or p/q fraction" % text
        ) from None


def _read_text(path):
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise InputError("cannot read %s: %s" % (path, exc)) from None


def _set(labels, indices):
    return "{%s}" % " ".join(labels[i] for i in sorted(indices))


def _concept_line(ctx, extent, intent):
    return "(%s, %s)" % (_set(ctx.objects, extent), _set(ctx.attributes, intent))


def _emit(args, text):
    if getattr(args, "output", None):
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0


def _json_text(payload):
    return json.dumps(payload, indent=2, sort_keys=True) + "\n"


def _load_ctx(args) -> FormalContext:
    return load_context(args.context, getattr(args, "input_format", None))


def _csv_lines(header, rows):
    return "\n".join([header] + [";".join(row) for row in rows]) + "\n"


# -- command implementations ------------------------------------------------


def _cmd_concepts(args):
    ctx = _load_ctx(args)
    concepts = next_closure_concepts(ctx)
    if args.format == "json":
        payload = [
            {
                "extent": [ctx.objects[g] for g in sorted(c.extent)],
                "intent": [ctx.attributes[m] for m in sorted(c.intent)],
            }
            for c in concepts
        ]
        return _emit(args, _json_text(payload))
    if args.format == "csv":
        rows = [
            (
                " ".join(ctx.objects[g] for g in sorted(c.extent)),
                " ".join(ctx.attributes[m] for m in sorted(c.intent)),
            )
            for c in concepts
        ]
        return _emit(args, _csv_lines("extent;intent", rows))
    lines = [_concept_line(ctx, c.extent, c.intent) for c in concepts]
    return _emit(args, "\n".join(lines) + "\n")


def _cmd_lattice(args):
    ctx = _load_ctx(args)
    lattice = build_lattice(ctx)
    if args.format == "json":
        return _emit(args, _json_text(lattice.to_json_dict()))
    if args.format == "csv":
        rows = [(str(lo), str(hi)) for lo, hi in lattice.covers]
        return _emit(args, _csv_lines("lower;upper", rows))
    lines = []
    for i, c in enumerate(lattice.concepts):
        lines.append("%d %s" % (i, _concept_line(ctx, c.extent, c.intent)))
    lines.append("covers:")
    lines.extend("%d < %d" % (lo, hi) for lo, hi in lattice.covers)
    return _emit(args, "\n".join(lines) + "\n")


def _implication_output(args, ctx, base):
    if args.format == "json":
        return _emit(args, _json_text(implications_json(base.rules, ctx.attributes)))
    if args.format == "csv":
        rows = [
            (
                " ".join(ctx.attributes[j] for j in sorted(r.premise)),
                " ".join(ctx.attributes[j] for j in sorted(r.conclusion)),
            )
            for r in base.rules
        ]
        return _emit(args, _csv_lines("premise;conclusion", rows))
    return _emit(args, format_implications(base.rules, ctx.attributes))


def _cmd_dg_base(args):
    ctx = _load_ctx(args)
    return _implication_output(args, ctx, duquenne_guigues_base(ctx))


def _cmd_generators(args):
    ctx = _load_ctx(args)
    return _implication_output(args, ctx, generator_cover(ctx))


def _rule_output(args, ctx, rules):
    if args.format == "json":
        return _emit(args, _json_text(rules_json(rules, ctx.attributes)))
    if args.format == "csv":
        return _emit(args, rules_to_csv(rules, ctx.attributes))
    lines = [
        "%s -> %s  supp=%s conf=%s"
        % (
            " ".join(ctx.attributes[j] for j in sorted(r.antecedent)),
            " ".join(ctx.attributes[j] for j in sorted(r.consequent)),
            r.support,
            r.confidence,
        )
        for r in rules
    ]
    return _emit(args, "\n".join(lines) + ("\n" if lines else ""))


def _cmd_rules(args):
    ctx = _load_ctx(args)
    frequents = apriori(ctx, args.min_supp)
    return _rule_output(args, ctx, extract_rules(frequents, args.min_conf))


def _cmd_closed(args):
    ctx = _load_ctx(args)
    finder = frequent_maximal if args.maximal else frequent_closed
    found = finder(ctx, args.min_supp)
    if args.format == "json":
        payload = [
            {
                "itemset": [ctx.attributes[j] for j in sorted(itemset)],
                "count": count,
            }
            for itemset, count in found
        ]
        return _emit(args, _json_text(payload))
    if args.format == "csv":
        rows = [
            (" ".join(ctx.attributes[j] for j in sorted(itemset)), str(count))
            for itemset, count in found
        ]
        return _emit(args, _csv_lines("itemset;count", rows))
    lines = [
        "%s : %d" % (_set(ctx.attributes, itemset), count)
        for itemset, count in found
    ]
    return _emit(args, "\n".join(lines) + "\n")


def _cmd_luxenburger(args):
    ctx = _load_ctx(args)
    lattice = build_lattice(ctx)
    return _rule_output(
        args, ctx, luxenburger_base(lattice, args.min_supp, args.min_conf)
    )


def _cmd_biclusters(args):
    ctx = _load_ctx(args)
    found = oa_biclusters(ctx, args.rho)
    if args.format == "json":
        payload = [
            {
                "extent": [ctx.objects[g] for g in sorted(b.extent)],
                "intent": [ctx.attributes[m] for m in sorted(b.intent)],
                "density": str(b.density),
            }
            for b in found
        ]
        return _emit(args, _json_text(payload))
    if args.format == "csv":
        rows = [
            (
                " ".join(ctx.objects[g] for g in sorted(b.extent)),
                " ".join(ctx.attributes[m] for m in sorted(b.intent)),
                str(b.density),
            )
            for b in found
        ]
        return _emit(args, _csv_lines("extent;intent;density", rows))
    lines = [
        "%s density=%s" % (_concept_line(ctx, b.extent, b.intent), b.density)
        for b in found
    ]
    return _emit(args, "\n".join(lines) + ("\n" if lines else ""))


def _cmd_triclusters(args):
    tctx = TriContext.from_csv(_read_text(args.triples))
    found = prime_oac_triclusters(tctx, args.rho)
    if args.format == "json":
        payload = [
            {
                "extent": [tctx.objects[g] for g in sorted(t.extent)],
                "intent": [tctx.attributes[m] for m in sorted(t.intent)],
                "modus": [tctx.conditions[b] for b in sorted(t.modus)],
                "density": str(t.density),
            }
            for t in found
        ]
        return _emit(args, _json_text(payload))
    if args.format == "csv":
        rows = [
            (
                " ".join(tctx.objects[g] for g in sorted(t.extent)),
                " ".join(tctx.attributes[m] for m in sorted(t.intent)),
                " ".join(tctx.conditions[b] for b in sorted(t.modus)),
                str(t.density),
            )
            for t in found
        ]
        return _emit(args, _csv_lines("extent;intent;modus;density", rows))
    lines = [
        "(%s, %s, %s) density=%s"
        % (
            _set(tctx.objects, t.extent),
            _set(tctx.attributes, t.intent),
            _set(tctx.conditions, t.modus),
            t.density,
        )
        for t in found
    ]
    return _emit(args, "\n".join(lines) + ("\n" if lines else ""))


def _cmd_jsm(args):
    tc = TrainingContext.from_csv(_read_text(args.training))
    if args.format == "json":
        payload = {}
        for label, (verdict, witnesses) in classify_tau(tc).items():
            payload[label] = {
                "verdict": verdict,
                "witnesses": [
                    {
                        "polarity": h.polarity,
                        "intent": [
                            tc.base.attributes[j] for j in sorted(h.intent)
                        ],
                    }
                    for h in witnesses
                ],
            }
        return _emit(args, _json_text(payload))
    if args.format == "csv":
        rows = [
            (label, verdict)
            for label, (verdict, _) in classify_tau(tc).items()
        ]
        return _emit(args, _csv_lines("object;verdict", rows))
    return _emit(args, report(tc))


def _cmd_patterns(args):
    ps = PatternStructure.from_csv(_read_text(args.table))
    concepts = pattern_concepts(ps, cap=args.cap)
    if args.format == "json":
        payload = []
        for c in concepts:
            if c.pattern is TOP:
                pattern = "TOP"
            else:
                pattern = [[str(lo), str(hi)] for lo, hi in c.pattern.components]
            payload.append(
                {
                    "extent": [ps.objects[g] for g in sorted(c.extent)],
                    "pattern": pattern,
                }
            )
        return _emit(args, _json_text(payload))
    lines = [
        "(%s, %r)" % (_set(ps.objects, c.extent), c.pattern) for c in concepts
    ]
    return _emit(args, "\n".join(lines) + "\n")


def _cmd_bmf(args):
    matrix = BooleanMatrix.from_dense_text(_read_text(args.matrix))
    result = factorize(matrix, args.coverage)
    if args.format == "json":
        return _emit(args, _json_text(result.to_json_dict()))
    lines = []
    for l, factor in enumerate(result.factors):
        lines.append(
            "factor %d: ({%s}, {%s})"
            % (
                l,
                " ".join(str(g + 1) for g in sorted(factor.extent)),
                " ".join(str(m + 1) for m in sorted(factor.intent)),
            )
        )
    exact = boolean_product(result.P, result.Q) == matrix
    lines.append("reconstruction exact: %s" % ("yes" if exact else "no"))
    return _emit(args, "\n".join(lines) + "\n")


def _cmd_rank(args):
    ctx = _load_ctx(args)
    lattice = build_lattice(ctx)
    query = query_concept(ctx, args.terms)
    ranked = clr_rank(lattice, query)
    if args.format == "json":
        payload = [
            {"document": r.document, "distance": r.distance, "rank": r.rank}
            for r in ranked
        ]
        return _emit(args, _json_text(payload))
    if args.format == "csv":
        rows = [(r.document, str(r.distance), str(r.rank)) for r in ranked]
        return _emit(args, _csv_lines("document;distance;rank", rows))
    lines = ["document distance rank"]
    lines.extend("%s %d %d" % (r.document, r.distance, r.rank) for r in ranked)
    return _emit(args, "\n".join(lines) + "\n")


def _cmd_stability(args):
    ctx = _load_ctx(args)
    lattice = build_lattice(ctx)
    scores, skipped = rank_stability_annotate(ctx, lattice, cap=args.cap)
    for index, why in skipped:
        print("skipped concept %d: %s" % (index, why), file=sys.stderr)
    if args.format == "json":
        payload = [
            {
                "concept": s.concept_index,
                "extent": [
                    ctx.objects[g]
                    for g in sorted(lattice.concepts[s.concept_index].extent)
                ],
                "sigma": str(s.sigma),
            }
            for s in scores
        ]
        return _emit(args, _json_text(payload))
    if args.format == "csv":
        rows = []
        for s in scores:
            c = lattice.concepts[s.concept_index]
            rows.append(
                (
                    " ".join(ctx.objects[g] for g in sorted(c.extent)),
                    " ".join(ctx.attributes[m] for m in sorted(c.intent)),
                    str(s.sigma),
                )
            )
        return _emit(args, _csv_lines("extent;intent;sigma", rows))
    lines = []
    for s in scores:
        c = lattice.concepts[s.concept_index]
        lines.append(
            "%s sigma=%s" % (_concept_line(ctx, c.extent, c.intent), s.sigma)
        )
    return _emit(args, "\n".join(lines) + "\n")


def _cmd_explore(args):
    if args.load:
        session = ExplorationSession.from_json(_read_text(args.load))
    elif args.context:
        session = start_session(_load_ctx(args))
    else:
        raise InputError("explore needs a context file or --load")
    while session.state == "awaiting_answer":
        q = session.pending
        labels = session.context.attributes
        premise = " ".join(labels[j] for j in sorted(q.premise)) or "{}"
        conclusion = " ".join(labels[j] for j in sorted(q.conclusion))
        print("Does %s imply %s? [y/n/q]" % (premise, conclusion))
        line = sys.stdin.readline()
        if not line:
            print("(no more input, stopping)")
            break
        choice = line.strip().lower()
        if choice in ("y", "yes"):
            session.accept()
        elif choice in ("n", "no"):
            print("Counterexample label:")
            label = sys.stdin.readline().strip()
            print("Its attributes, space separated:")
            attrs = sys.stdin.readline().split()
            try:
                session.counterexample(label, attrs)
            except InputError as exc:
                print("rejected: %s" % exc)
        elif choice in ("q", "quit"):
            break
        else:
            print("please answer y, n or q")
    if session.state == "finished":
        print("Exploration finished. Accepted implications:")
        text = format_implications(session.accepted, session.context.attributes)
        sys.stdout.write(text if text else "(none)\n")
    if args.save:
        with open(args.save, "w", encoding="utf-8") as fh:
            fh.write(session.to_json())
    return 0


# -- parser ------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="fca",
        description="Formal concept analysis toolkit",
    )
    sub = parser.add_subparsers(dest="command", required=True, metavar="command")

    def command(name, func, help_text):
        p = sub.add_parser(name, help=help_text)
        p.add_argument(
            "--format", choices=("text", "json", "csv"), default="text",
            help="output format",
        )
        p.add_argument("-o", "--output", help="write to this file instead of stdout")
        p.set_defaults(func=func)
        return p

    def context_arg(p):
        p.add_argument("context", help="context file (.cxt, .csv or .json)")
        p.add_argument(
            "--input-format", choices=FORMATS, default=None,
            help="override format detection by extension",
        )

    p = command("concepts", _cmd_concepts, "list all formal concepts")
    context_arg(p)

    p = command("lattice", _cmd_lattice, "concept lattice with covers and layout")
    context_arg(p)

    p = command("dg-base", _cmd_dg_base, "canonical implication base")
    context_arg(p)

    p = command("generators", _cmd_generators, "minimal-generator implication cover")
    context_arg(p)

    p = command("rules", _cmd_rules, "association rules above thresholds")
    context_arg(p)
    p.add_argument("--min-supp", type=_fraction, required=True)
    p.add_argument("--min-conf", type=_fraction, required=True)

    p = command("closed", _cmd_closed, "frequent closed itemsets")
    context_arg(p)
    p.add_argument("--min-supp", type=_fraction, default=Fraction(0))
    p.add_argument(
        "--maximal", action="store_true", help="only maximal frequent itemsets"
    )

    p = command("luxenburger", _cmd_luxenburger, "approximate-rule base from covers")
    context_arg(p)
    p.add_argument("--min-supp", type=_fraction, default=Fraction(0))
    p.add_argument("--min-conf", type=_fraction, default=Fraction(0))

    p = command("biclusters", _cmd_biclusters, "object-attribute biclusters")
    context_arg(p)
    p.add_argument("--rho", type=_fraction, default=Fraction(0), help="density floor")

    p = command("triclusters", _cmd_triclusters, "prime-operator triclusters")
    p.add_argument("triples", help="CSV of object,attribute,condition triples")
    p.add_argument("--rho", type=_fraction, default=Fraction(0), help="density floor")

    p = command("jsm", _cmd_jsm, "classify tau objects from +/- examples")
    p.add_argument("training", help="training CSV, last column is +, - or tau")

    p = command("patterns", _cmd_patterns, "interval pattern concepts")
    p.add_argument("table", help="numeric CSV, rows are objects")
    p.add_argument("--cap", type=int, default=20, help="object-count guard")

    p = command("bmf", _cmd_bmf, "boolean matrix factorization")
    p.add_argument("matrix", help="dense 0/1 text matrix")
    p.add_argument("--coverage", type=_fraction, default=Fraction(1))

    p = command("rank", _cmd_rank, "concept-lattice document ranking")
    context_arg(p)
    p.add_argument("terms", nargs="+", help="query terms (attribute labels)")

    p = command("stability", _cmd_stability, "stability index per concept")
    context_arg(p)
    p.add_argument("--cap", type=int, default=None, help="extent-size guard")

    p = command("explore", _cmd_explore, "interactive attribute exploration")
    p.add_argument("context", nargs="?", help="context file to explore")
    p.add_argument(
        "--input-format", choices=FORMATS, default=None,
        help="override format detection by extension",
    )
    p.add_argument("--load", help="resume from a session JSON file")
    p.add_argument("--save", help="write the session JSON here on exit")

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except InputError as exc:
        print("error: %s" % exc, file=sys.stderr)
        return 2
    except SizeGuardError as exc:
        print("error: %s" % exc, file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
