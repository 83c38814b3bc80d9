"""Interval-vector pattern structures.

Each object is described by a fixed-arity vector of numeric intervals; the
meet of two descriptions is the component-wise convex hull. Derivation works
like in a formal context, with descriptions in place of attribute sets. The
meet over zero descriptions is a designated top pattern, so deriving the
empty object set is well defined.
"""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass
from fractions import Fraction

from .context import mask_of
from .closure import lectic_closed_masks
from .errors import InputError, SizeGuardError

PATTERN_CONCEPT_CAP = 20


class TopPattern:
    """Meet-unit: TOP meet x = x, and no object description equals TOP."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "TOP"


TOP = TopPattern()


@dataclass(frozen=True)
class IntervalVector:
    components: tuple  # of (lo, hi) Fraction pairs

    def __post_init__(self):
        fixed = []
        for comp in self.components:
            lo, hi = Fraction(comp[0]), Fraction(comp[1])
            if lo > hi:
                raise InputError("interval [%s, %s] is reversed" % (lo, hi))
            fixed.append((lo, hi))
        object.__setattr__(self, "components", tuple(fixed))

    @classmethod
    def from_point(cls, values) -> "IntervalVector":
        return cls(tuple((v, v) for v in values))

    @property
    def arity(self):
        return len(self.components)

    def __repr__(self):
        return "<%s>" % ", ".join(
            "[%s, %s]" % (lo, hi) for lo, hi in self.components
        )


def interval_meet(e, f):
    """Component-wise convex hull; TOP is the neutral element."""
    if e is TOP:
        return f
    if f is TOP:
        return e
    if e.arity != f.arity:
        raise InputError("arity mismatch: %d vs %d" % (e.arity, f.arity))
    return IntervalVector(
        tuple(
            (min(a_lo, b_lo), max(a_hi, b_hi))
            for (a_lo, a_hi), (b_lo, b_hi) in zip(e.components, f.components)
        )
    )


def pattern_leq(d, x) -> bool:
    """d is more general than x (subsumes it) iff d meet x = d."""
    return interval_meet(d, x) == d


class PatternStructure:
    """Objects with interval-vector descriptions of one common arity."""

    def __init__(self, objects, descriptions):
        self.objects = tuple(objects)
        if len(set(self.objects)) != len(self.objects):
            raise InputError("duplicate object label")
        self.descriptions = tuple(descriptions)
        if len(self.descriptions) != len(self.objects):
            raise InputError(
                "expected %d descriptions, got %d"
                % (len(self.objects), len(self.descriptions))
            )
        arities = {d.arity for d in self.descriptions}
        if len(arities) > 1:
            raise InputError("descriptions have mixed arities: %s" % sorted(arities))
        self.arity = arities.pop() if arities else 0

    @classmethod
    def from_csv(cls, text: str) -> "PatternStructure":
        """Header row of component names, then one numeric row per object."""
        rows = [
            row
            for row in csv.reader(io.StringIO(text))
            if any(cell.strip() for cell in row)
        ]
        if len(rows) < 2:
            raise InputError("numeric CSV needs a header and at least one row")
        width = len(rows[0])
        objects, descriptions = [], []
        for lineno, row in enumerate(rows[1:], start=2):
            if len(row) != width:
                raise InputError(
                    "line %d: expected %d cells, got %d" % (lineno, width, len(row))
                )
            values = []
            for cell in row[1:]:
                try:
                    values.append(Fraction(cell.strip()))
                except (ValueError, ZeroDivisionError):
                    raise InputError(
                        "line %d: %r is not a number" % (lineno, cell.strip())
                    ) from None
            objects.append(row[0].strip())
            descriptions.append(IntervalVector.from_point(values))
        return cls(objects, descriptions)

    def description(self, g):
        return self.descriptions[g]


@dataclass(frozen=True)
class PatternConcept:
    extent: frozenset  # object indices
    pattern: object  # IntervalVector or TOP


def derive_objects(ps: PatternStructure, objects):
    """Meet of the descriptions of the given objects; TOP for the empty set."""
    result = TOP
    for g in objects:
        result = interval_meet(result, ps.description(g))
    return result


def derive_pattern(ps: PatternStructure, d) -> frozenset:
    """All objects whose description is subsumed by d."""
    if d is not TOP and ps.objects and d.arity != ps.arity:
        raise InputError("arity mismatch: %d vs %d" % (d.arity, ps.arity))
    return frozenset(
        g for g in range(len(ps.objects)) if pattern_leq(d, ps.description(g))
    )


def pattern_concepts(ps: PatternStructure, cap=PATTERN_CONCEPT_CAP) -> list:
    """Every (extent, pattern) pair with extent and pattern closing onto
    each other, in lectic order of extents."""
    n = len(ps.objects)
    if n > cap:
        raise SizeGuardError(
            "pattern structure has %d objects, cap is %d" % (n, cap)
        )

    def close(mask):
        members = [g for g in range(n) if mask >> g & 1]
        return mask_of(derive_pattern(ps, derive_objects(ps, members)))

    out = []
    for mask in lectic_closed_masks(n, close):
        members = frozenset(g for g in range(n) if mask >> g & 1)
        out.append(PatternConcept(members, derive_objects(ps, members)))
    return out
