"""Frequent itemsets and association rules over a formal context.

Supports are exact rationals kept as (count, |G|) pairs; nothing here touches
floating point, so equality tests against worked fractions are safe.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .context import FormalContext, bits_of, mask_of
from .errors import InputError
from .lattice import ConceptLattice, iter_concept_extent_masks


@dataclass(frozen=True)
class AssociationRule:
    antecedent: frozenset
    consequent: frozenset
    support: Fraction
    confidence: Fraction

    def __repr__(self):
        return "AssociationRule(%s -> %s, supp=%s, conf=%s)" % (
            sorted(self.antecedent),
            sorted(self.consequent),
            self.support,
            self.confidence,
        )


@dataclass(frozen=True)
class FrequentItemsets:
    """All frequent itemsets of one mining run, with absolute support counts."""

    counts: dict  # frozenset of attribute indices -> |itemset'|
    n_objects: int
    min_supp: Fraction

    def support(self, itemset) -> Fraction:
        return Fraction(self.counts[frozenset(itemset)], self.n_objects)

    def __contains__(self, itemset):
        return frozenset(itemset) in self.counts

    def __len__(self):
        return len(self.counts)


def _coerce_min_supp(min_supp, allow_zero: bool) -> Fraction:
    value = Fraction(min_supp)
    low_ok = value > 0 or (allow_zero and value == 0)
    if not (low_ok and value <= 1):
        bound = "[0, 1]" if allow_zero else "(0, 1]"
        raise InputError("min_supp must be within %s, got %s" % (bound, value))
    return value


def apriori_gen(frequents) -> set:
    """Candidate (i+1)-itemsets from frequent i-itemsets: join then eliminate."""
    tuples = sorted(tuple(sorted(f)) for f in frequents)
    frequent_set = {frozenset(t) for t in tuples}
    if not tuples:
        return set()
    size = len(tuples[0])
    if any(len(t) != size for t in tuples):
        raise InputError("apriori_gen needs itemsets of one common size")
    candidates = set()
    for a in range(len(tuples)):
        for b in range(a + 1, len(tuples)):
            p, q = tuples[a], tuples[b]
            if p[:-1] != q[:-1]:
                continue
            # sorted order gives p[-1] < q[-1] for the join condition
            candidates.add(frozenset(p) | {q[-1]})
    survivors = set()
    for cand in candidates:
        if all(cand - {item} in frequent_set for item in cand):
            survivors.add(cand)
    return survivors


def apriori(ctx: FormalContext, min_supp) -> FrequentItemsets:
    """All itemsets with support >= min_supp, found levelwise.

    min_supp = 0 is rejected; enumerate closed itemsets instead when every
    itemset is wanted.
    """
    min_supp = _coerce_min_supp(min_supp, allow_zero=False)
    n = ctx.n_objects
    if n == 0:
        raise InputError("support is undefined on a context without objects")
    counts = {frozenset(): n}
    level = []
    for j in range(ctx.n_attributes):
        count = ctx.col_mask(j).bit_count()
        if Fraction(count, n) >= min_supp:
            counts[frozenset([j])] = count
            level.append(frozenset([j]))
    while level:
        next_level = []
        for cand in apriori_gen(level):
            count = ctx.extent_mask(mask_of(cand)).bit_count()
            if Fraction(count, n) >= min_supp:
                counts[cand] = count
                next_level.append(cand)
        level = next_level
    return FrequentItemsets(counts, n, min_supp)


def extract_rules(frequents: FrequentItemsets, min_conf) -> list:
    """All rules f -> F\\f between nonempty parts of frequent itemsets.

    Shrinking the antecedent can only lower confidence, so subsets of a
    failing antecedent are pruned.
    """
    min_conf = Fraction(min_conf)
    if not 0 <= min_conf <= 1:
        raise InputError("min_conf must be within [0, 1], got %s" % min_conf)
    out = []
    for itemset, count in frequents.counts.items():
        if len(itemset) < 2:
            continue
        passing = []
        seen = set()
        frontier = [itemset - {item} for item in itemset]
        while frontier:
            antecedent = frontier.pop()
            if not antecedent or antecedent in seen:
                continue
            seen.add(antecedent)
            confidence = Fraction(count, frequents.counts[antecedent])
            if confidence < min_conf:
                continue
            passing.append(
                AssociationRule(
                    antecedent,
                    itemset - antecedent,
                    Fraction(count, frequents.n_objects),
                    confidence,
                )
            )
            frontier.extend(antecedent - {item} for item in antecedent)
        out.extend(passing)
    out.sort(key=lambda r: (sorted(r.antecedent | r.consequent), sorted(r.antecedent)))
    return out


def frequent_closed(ctx: FormalContext, min_supp) -> list:
    """Frequent closed itemsets as (itemset, absolute support) pairs.

    At min_supp = 0 this is exactly the concept intents.
    """
    min_supp = _coerce_min_supp(min_supp, allow_zero=True)
    n = ctx.n_objects
    out = []
    for extent_mask in iter_concept_extent_masks(ctx):
        count = extent_mask.bit_count()
        if n == 0 or Fraction(count, n) >= min_supp:
            intent = frozenset(bits_of(ctx.intent_mask(extent_mask)))
            out.append((intent, count))
    out.sort(key=lambda pair: (-pair[1], len(pair[0]), sorted(pair[0])))
    return out


def frequent_maximal(ctx: FormalContext, min_supp) -> list:
    """Maximal frequent itemsets (every maximal frequent itemset is closed)."""
    closed = frequent_closed(ctx, min_supp)
    itemsets = [itemset for itemset, _ in closed]
    out = [
        (itemset, count)
        for itemset, count in closed
        if not any(itemset < other for other in itemsets)
    ]
    out.sort(key=lambda pair: (-pair[1], len(pair[0]), sorted(pair[0])))
    return out


def luxenburger_base(lattice: ConceptLattice, min_supp, min_conf) -> list:
    """One rule per cover pair: upper intent -> lower's extra attributes."""
    min_supp = _coerce_min_supp(min_supp, allow_zero=True)
    min_conf = Fraction(min_conf)
    if not 0 <= min_conf <= 1:
        raise InputError("min_conf must be within [0, 1], got %s" % min_conf)
    n = lattice.context.n_objects
    out = []
    for lo, hi in lattice.covers:
        lower = lattice.concepts[lo]
        upper = lattice.concepts[hi]
        support = Fraction(len(lower.extent), n)
        confidence = Fraction(len(lower.extent), len(upper.extent))
        if support >= min_supp and confidence >= min_conf:
            out.append(
                AssociationRule(
                    upper.intent, lower.intent - upper.intent, support, confidence
                )
            )
    out.sort(key=lambda r: (sorted(r.antecedent), sorted(r.consequent)))
    return out


def _fraction_cell(value: Fraction) -> str:
    return "%.6f (%d/%d)" % (float(value), value.numerator, value.denominator)


def rules_to_csv(rules, attribute_labels) -> str:
    """Semicolon CSV: antecedent;consequent;support;confidence.

    Labels are space-separated; each measure is printed both as a 6-place
    decimal and as the exact fraction.
    """
    lines = ["antecedent;consequent;support;confidence"]
    for r in rules:
        lines.append(
            ";".join(
                [
                    " ".join(attribute_labels[j] for j in sorted(r.antecedent)),
                    " ".join(attribute_labels[j] for j in sorted(r.consequent)),
                    _fraction_cell(r.support),
                    _fraction_cell(r.confidence),
                ]
            )
        )
    return "\n".join(lines) + "\n"


def rules_json(rules, attribute_labels) -> list:
    return [
        {
            "antecedent": [attribute_labels[j] for j in sorted(r.antecedent)],
            "consequent": [attribute_labels[j] for j in sorted(r.consequent)],
            "support": str(r.support),
            "confidence": str(r.confidence),
        }
        for r in rules
    ]
