"""Attribute implications: semantics, syntactic closure, and the two bases.

The Duquenne-Guigues base is computed by lectic ascent over sets closed under
the rules found so far (next-closure with the implication closure operator),
so pseudo-intents appear in lectic order without scanning the power set.  The
generator cover enumerates minimal generators levelwise; freeness is
antimonotone, which keeps the search an order ideal.
"""

from __future__ import annotations

from dataclasses import dataclass

from .closure import next_closed_mask
from .context import FormalContext, bits_of, mask_of
from .errors import InputError


@dataclass(frozen=True)
class Implication:
    """A rule premise -> conclusion over attribute indices.

    Canonical form keeps the conclusion disjoint from the premise.
    """

    premise: frozenset
    conclusion: frozenset

    @classmethod
    def canonical(cls, premise, conclusion):
        premise = frozenset(premise)
        return cls(premise, frozenset(conclusion) - premise)

    def __repr__(self):
        return "Implication(%s -> %s)" % (sorted(self.premise), sorted(self.conclusion))


@dataclass(frozen=True)
class ImplicationBase:
    rules: tuple
    kind: str  # duquenne_guigues | generator_cover | raw

    def __iter__(self):
        return iter(self.rules)

    def __len__(self):
        return len(self.rules)


def holds(ctx: FormalContext, imp: Implication) -> bool:
    """True iff every object having all premise attributes has the conclusion."""
    return ctx.extent_mask(mask_of(imp.premise)) & ~ctx.extent_mask(
        mask_of(imp.conclusion)
    ) == 0


def _closure_mask(rule_masks, x: int, by_attribute, free_rules) -> int:
    """Fixpoint of x under the rules, driven by an attribute-indexed worklist."""
    pending = list(free_rules)
    rest = x
    while rest:
        low = rest & -rest
        pending.extend(by_attribute.get(low.bit_length() - 1, ()))
        rest ^= low
    seen_fired = set()
    while pending:
        r = pending.pop()
        if r in seen_fired:
            continue
        premise, conclusion = rule_masks[r]
        if premise & ~x:
            continue
        seen_fired.add(r)
        new = conclusion & ~x
        if not new:
            continue
        x |= new
        while new:
            low = new & -new
            pending.extend(by_attribute.get(low.bit_length() - 1, ()))
            new ^= low
    return x


class _RuleEngine:
    """Reusable syntactic-closure engine over a fixed rule list."""

    def __init__(self, rules):
        self.rule_masks = [
            (mask_of(r.premise), mask_of(r.conclusion)) for r in rules
        ]
        self.by_attribute = {}
        self.free_rules = []
        for idx, (premise, _) in enumerate(self.rule_masks):
            if premise == 0:
                self.free_rules.append(idx)
            else:
                # A rule re-wakes whenever any premise attribute arrives.
                for attr in bits_of(premise):
                    self.by_attribute.setdefault(attr, []).append(idx)

    def close(self, x: int) -> int:
        return _closure_mask(self.rule_masks, x, self.by_attribute, self.free_rules)


def implication_closure(rules, attrs) -> frozenset:
    """The smallest superset of `attrs` closed under every rule."""
    engine = _RuleEngine(list(rules))
    return frozenset(bits_of(engine.close(mask_of(attrs))))


def entails(rules, imp: Implication) -> bool:
    """Syntactic entailment: the rules force imp's conclusion from its premise."""
    return imp.conclusion <= implication_closure(rules, imp.premise)


def duquenne_guigues_base(ctx: FormalContext) -> ImplicationBase:
    """The canonical base: one rule P -> P''\\P per pseudo-intent P."""
    n = ctx.n_attributes
    rules = []
    engine = _RuleEngine(rules)
    mask = 0
    full = (1 << n) - 1
    while True:
        closed = ctx.closure_attributes_mask(mask)
        if closed != mask:
            rules.append(
                Implication(frozenset(bits_of(mask)), frozenset(bits_of(closed & ~mask)))
            )
            engine = _RuleEngine(rules)
        if mask == full:
            break
        mask = next_closed_mask(n, engine.close, mask)
        if mask is None:
            break
    return ImplicationBase(tuple(rules), "duquenne_guigues")


def generator_cover(ctx: FormalContext) -> ImplicationBase:
    """Rules F -> F''\\F over all nontrivial minimal generators F.

    F is a minimal generator when no proper subset has the same closure;
    equivalently every F\\{m} closes to something smaller.  Minimal generators
    are downward closed, so a levelwise sweep with pruning suffices.
    """
    n = ctx.n_attributes
    rules = []
    empty_closure = ctx.closure_attributes_mask(0)
    if empty_closure:
        # the empty set is a minimal generator of whatever all objects share
        rules.append(Implication(frozenset(), frozenset(bits_of(empty_closure))))
    level = [0]  # masks of minimal generators of the previous size
    size = 0
    while level and size < n:
        next_level = []
        seen = set()
        for gen in level:
            start = gen.bit_length()  # extend by larger attributes only
            for j in range(start, n):
                cand = gen | (1 << j)
                if cand in seen:
                    continue
                seen.add(cand)
                closure = ctx.closure_attributes_mask(cand)
                minimal = True
                rest = cand
                while rest:
                    low = rest & -rest
                    sub = cand ^ low
                    if ctx.closure_attributes_mask(sub) == closure:
                        minimal = False
                        break
                    rest ^= low
                if not minimal:
                    continue
                next_level.append(cand)
                if closure != cand:
                    rules.append(
                        Implication(
                            frozenset(bits_of(cand)),
                            frozenset(bits_of(closure & ~cand)),
                        )
                    )
        level = next_level
        size += 1
    rules.sort(key=lambda r: (len(r.premise), sorted(r.premise)))
    return ImplicationBase(tuple(rules), "generator_cover")


def format_implications(rules, attribute_labels) -> str:
    """One rule per line: 'a b -> c d' with attribute labels."""
    lines = []
    for r in rules:
        lines.append(
            "%s -> %s"
            % (
                " ".join(attribute_labels[j] for j in sorted(r.premise)),
                " ".join(attribute_labels[j] for j in sorted(r.conclusion)),
            )
        )
    return "\n".join(lines) + ("\n" if lines else "")


def implications_json(rules, attribute_labels) -> list:
    return [
        {
            "premise": [attribute_labels[j] for j in sorted(r.premise)],
            "conclusion": [attribute_labels[j] for j in sorted(r.conclusion)],
        }
        for r in rules
    ]


# -- functional dependencies ---------------------------------------------


def fd_pair_context(mv) -> FormalContext:
    """The pair context of a complete many-valued context.

    Objects are unordered pairs {g, h}; a pair is incident to attribute m
    exactly when m(g) = m(h).  Functional dependencies of the original data
    coincide with the implications of this context.
    """
    if not mv.is_complete():
        missing = ", ".join("(%s, %s)" % cell for cell in mv.missing_cells())
        raise InputError("many-valued context is incomplete at: %s" % missing)
    labels = []
    incidence = []
    n = len(mv.objects)
    for i in range(n):
        for k in range(i + 1, n):
            labels.append("{%s,%s}" % (mv.objects[i], mv.objects[k]))
            incidence.append(
                [
                    mj
                    for mj in range(len(mv.attributes))
                    if str(mv.value(i, mj)).strip() == str(mv.value(k, mj)).strip()
                ]
            )
    return FormalContext(labels, mv.attributes, incidence)


def fd_inverse_context(ctx: FormalContext):
    """Replace crosses by 0, blanks by the row ordinal, and add an all-zero row.

    The implications of `ctx` coincide with the functional dependencies of the
    resulting many-valued context.
    """
    from .context import ManyValuedContext

    rows = []
    for gi in range(ctx.n_objects):
        mask = ctx.row_mask(gi)
        rows.append(
            [0 if mask >> mj & 1 else gi + 1 for mj in range(ctx.n_attributes)]
        )
    rows.append([0] * ctx.n_attributes)
    extra = str(ctx.n_objects + 1)
    while extra in ctx.objects:
        extra += "'"
    return ManyValuedContext.from_table(
        list(ctx.objects) + [extra], ctx.attributes, rows
    )
