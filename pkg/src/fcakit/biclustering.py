"""Object-attribute biclusters and triadic concepts.

An OA-bicluster is the pair (m', g') grown from a single incidence cell
(g, m); its density is the fraction of cells inside the rectangle that are
crosses. Triclusters live on a ternary relation and use the pairwise prime
operators.
"""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass
from fractions import Fraction

from .context import FormalContext, bits_of
from .errors import InputError


@dataclass(frozen=True)
class OABicluster:
    extent: frozenset
    intent: frozenset
    seed: tuple  # (object index, attribute index) the rectangle grew from
    density: Fraction


def bicluster_density(ctx: FormalContext, objects, attributes) -> Fraction:
    objects = frozenset(objects)
    attributes = frozenset(attributes)
    if not objects or not attributes:
        raise InputError("density needs a nonempty rectangle")
    crosses = 0
    for g in objects:
        row = ctx.row_mask(g)
        for m in attributes:
            if row >> m & 1:
                crosses += 1
    return Fraction(crosses, len(objects) * len(attributes))


def oa_biclusters(ctx: FormalContext, rho_min=0) -> list:
    """All distinct OA-biclusters with density >= rho_min.

    One candidate per incidence pair, so at most |I| biclusters come out;
    duplicates (same rectangle from another seed) keep the first seed.
    Density is only computed when a threshold asks for it.
    """
    rho_min = Fraction(rho_min)
    if not 0 <= rho_min <= 1:
        raise InputError("rho_min must be within [0, 1], got %s" % rho_min)
    seen = set()
    out = []
    for g, m in ctx.incidence_pairs():
        extent_mask = ctx.col_mask(m)
        intent_mask = ctx.row_mask(g)
        key = (extent_mask, intent_mask)
        if key in seen:
            continue
        seen.add(key)
        extent = frozenset(bits_of(extent_mask))
        intent = frozenset(bits_of(intent_mask))
        if rho_min > 0:
            density = bicluster_density(ctx, extent, intent)
            if density < rho_min:
                continue
        else:
            density = bicluster_density(ctx, extent, intent)
        out.append(OABicluster(extent, intent, (g, m), density))
    return out


class TriContext:
    """A ternary relation between objects, attributes and conditions."""

    def __init__(self, objects, attributes, conditions, triples):
        self.objects = tuple(objects)
        self.attributes = tuple(attributes)
        self.conditions = tuple(conditions)
        for axis, labels in (
            ("object", self.objects),
            ("attribute", self.attributes),
            ("condition", self.conditions),
        ):
            if len(set(labels)) != len(labels):
                raise InputError("duplicate %s label" % axis)
        checked = set()
        for triple in triples:
            g, m, b = triple
            if not (
                0 <= g < len(self.objects)
                and 0 <= m < len(self.attributes)
                and 0 <= b < len(self.conditions)
            ):
                raise InputError("triple %r is out of range" % (triple,))
            checked.add((g, m, b))
        self.triples = frozenset(checked)

    @classmethod
    def from_csv(cls, text: str) -> "TriContext":
        """Rows of object,attribute,condition labels; one triple per line."""
        rows = []
        reader = csv.reader(io.StringIO(text))
        for lineno, row in enumerate(reader, start=1):
            if not row or all(not cell.strip() for cell in row):
                continue
            if len(row) != 3:
                raise InputError("line %d: expected 3 columns, got %d" % (lineno, len(row)))
            rows.append(tuple(cell.strip() for cell in row))
        if rows and rows[0] == ("object", "attribute", "condition"):
            rows = rows[1:]
        if not rows:
            raise InputError("no triples found")
        objects, attributes, conditions = [], [], []
        index = [{}, {}, {}]
        for row in rows:
            for axis, (label, pool) in enumerate(
                zip(row, (objects, attributes, conditions))
            ):
                if label not in index[axis]:
                    index[axis][label] = len(pool)
                    pool.append(label)
        triples = [tuple(index[axis][row[axis]] for axis in range(3)) for row in rows]
        return cls(objects, attributes, conditions, triples)

    def to_csv(self) -> str:
        lines = ["object,attribute,condition"]
        for g, m, b in sorted(self.triples):
            lines.append(
                ",".join([self.objects[g], self.attributes[m], self.conditions[b]])
            )
        return "\n".join(lines) + "\n"

    # pairwise prime operators: fix two coordinates, collect the third
    def objects_for(self, m, b):
        return frozenset(g for g, m2, b2 in self.triples if (m2, b2) == (m, b))

    def attributes_for(self, g, b):
        return frozenset(m for g2, m, b2 in self.triples if (g2, b2) == (g, b))

    def conditions_for(self, g, m):
        return frozenset(b for g2, m2, b in self.triples if (g2, m2) == (g, m))

    def is_full(self, xs, ys, zs) -> bool:
        return all(
            (g, m, b) in self.triples for g in xs for m in ys for b in zs
        )


@dataclass(frozen=True)
class Tricluster:
    extent: frozenset
    intent: frozenset
    modus: frozenset
    density: Fraction


def is_triconcept(tctx: TriContext, xs, ys, zs) -> bool:
    """True when the cuboid is full and cannot grow along any axis."""
    xs, ys, zs = frozenset(xs), frozenset(ys), frozenset(zs)
    if not tctx.is_full(xs, ys, zs):
        return False
    for g in set(range(len(tctx.objects))) - xs:
        if tctx.is_full({g}, ys, zs):
            return False
    for m in set(range(len(tctx.attributes))) - ys:
        if tctx.is_full(xs, {m}, zs):
            return False
    for b in set(range(len(tctx.conditions))) - zs:
        if tctx.is_full(xs, ys, {b}):
            return False
    return True


def _tricluster_density(tctx: TriContext, xs, ys, zs) -> Fraction:
    volume = len(xs) * len(ys) * len(zs)
    if volume == 0:
        return Fraction(0)
    hits = sum(
        1 for g in xs for m in ys for b in zs if (g, m, b) in tctx.triples
    )
    return Fraction(hits, volume)


def prime_oac_triclusters(tctx: TriContext, rho_min=0) -> list:
    """One candidate tricluster per triple, via the pairwise prime operators.

    The seed (g, m, b) grows to (objects_for(m, b), attributes_for(g, b),
    conditions_for(g, m)); duplicates collapse, a density threshold filters.
    """
    rho_min = Fraction(rho_min)
    if not 0 <= rho_min <= 1:
        raise InputError("rho_min must be within [0, 1], got %s" % rho_min)
    seen = set()
    out = []
    for g, m, b in sorted(tctx.triples):
        xs = tctx.objects_for(m, b)
        ys = tctx.attributes_for(g, b)
        zs = tctx.conditions_for(g, m)
        key = (xs, ys, zs)
        if key in seen:
            continue
        seen.add(key)
        density = _tricluster_density(tctx, xs, ys, zs)
        if density >= rho_min:
            out.append(Tricluster(xs, ys, zs, density))
    return out
