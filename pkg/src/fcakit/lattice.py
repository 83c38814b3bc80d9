"""Concept enumeration (NextClosure, Close by One) and the concept lattice.

The lattice carries the cover relation (transitive reduction of the extent
order), reduced object/attribute labels, exact stability scores, and a
layered drawing used by the JSON export.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .closure import lectic_closed_masks, lectic_key
from .context import FormalContext, bits_of, mask_of
from .errors import InputError, SizeGuardError

#: Cover computation is quadratic in the number of concepts; refuse beyond this.
MAX_LATTICE_CONCEPTS = 50_000

#: Exact stability enumerates subsets of the extent; refuse beyond this size.
STABILITY_CAP = 20


@dataclass(frozen=True)
class FormalConcept:
    """A formal concept: extent' = intent and intent' = extent."""

    extent: frozenset
    intent: frozenset

    def __repr__(self):
        return "FormalConcept(extent=%s, intent=%s)" % (
            sorted(self.extent),
            sorted(self.intent),
        )


@dataclass(frozen=True)
class StabilityScore:
    concept_index: int
    sigma: Fraction


def _concept_from_extent_mask(ctx: FormalContext, extent_mask: int) -> FormalConcept:
    intent_mask = ctx.intent_mask(extent_mask)
    return FormalConcept(frozenset(bits_of(extent_mask)), frozenset(bits_of(intent_mask)))


def iter_concept_extent_masks(ctx: FormalContext):
    """All closed object masks in ascending lectic order (polynomial delay)."""
    return lectic_closed_masks(ctx.n_objects, ctx.closure_objects_mask)


def next_closure_concepts(ctx: FormalContext):
    """Every formal concept exactly once, in lectic order over extents."""
    return [_concept_from_extent_mask(ctx, m) for m in iter_concept_extent_masks(ctx)]


def close_by_one(ctx: FormalContext, return_tree: bool = False):
    """Every formal concept exactly once, in depth-first generation order.

    The canonicity test discards a generation as soon as the closure adds an
    object smaller than the object just added, and prunes the whole branch.
    With return_tree=True the (parent, child) generation edges are returned
    alongside the concepts.
    """
    n = ctx.n_objects
    concepts = []
    edges = []

    def process(a_mask: int, g: int, extent: int, intent: int, parent):
        if g >= 0 and extent & ~a_mask & ((1 << g) - 1):
            return  # non-canonical generation: already produced elsewhere
        index = len(concepts)
        concepts.append(FormalConcept(frozenset(bits_of(extent)), frozenset(bits_of(intent))))
        if parent is not None:
            edges.append((parent, index))
        for f in range(g + 1, n):
            if extent >> f & 1:
                continue
            new_intent = intent & ctx.row_mask(f)
            new_extent = ctx.extent_mask(new_intent)
            process(extent | (1 << f), f, new_extent, new_intent, index)

    bottom_extent = ctx.closure_objects_mask(0)
    process(0, -1, bottom_extent, ctx.intent_mask(bottom_extent), None)
    if return_tree:
        return concepts, edges
    return concepts


def is_concept(ctx: FormalContext, extent, intent) -> bool:
    extent_mask = mask_of(extent)
    intent_mask = mask_of(intent)
    return (
        ctx.intent_mask(extent_mask) == intent_mask
        and ctx.extent_mask(intent_mask) == extent_mask
    )


class ConceptLattice:
    """All concepts of a context in lectic order, with covers and labels."""

    def __init__(self, ctx: FormalContext, concepts, covers):
        self.context = ctx
        self.concepts = list(concepts)
        self.covers = list(covers)
        self._extent_index = {c.extent: i for i, c in enumerate(self.concepts)}
        self._intent_index = {c.intent: i for i, c in enumerate(self.concepts)}
        self._upper = [[] for _ in self.concepts]
        self._lower = [[] for _ in self.concepts]
        for lo, hi in self.covers:
            self._lower[hi].append(lo)
            self._upper[lo].append(hi)
        self.object_labels = {}
        self.attribute_labels = {}
        for gi, g in enumerate(ctx.objects):
            self.object_labels[g] = self._extent_index[ctx.closure_objects([gi])]
        for mj, m in enumerate(ctx.attributes):
            self.attribute_labels[m] = self._intent_index[ctx.closure_attributes([mj])]
        self._layout = None

    # -- order accessors ---------------------------------------------------

    def __len__(self):
        return len(self.concepts)

    @property
    def top_index(self) -> int:
        return self._extent_index[frozenset(range(self.context.n_objects))]

    @property
    def bottom_index(self) -> int:
        return self._intent_index[frozenset(range(self.context.n_attributes))]

    def index_of_extent(self, extent) -> int:
        return self._extent_index[frozenset(extent)]

    def index_of_intent(self, intent) -> int:
        return self._intent_index[frozenset(intent)]

    def upper_covers(self, i: int):
        return tuple(self._upper[i])

    def lower_covers(self, i: int):
        return tuple(self._lower[i])

    def object_concept(self, gi: int) -> int:
        return self.object_labels[self.context.objects[gi]]

    def attribute_concept(self, mj: int) -> int:
        return self.attribute_labels[self.context.attributes[mj]]

    def meet(self, i: int, j: int) -> int:
        """Infimum by the basic theorem: (A1 ∩ A2, (B1 ∪ B2)'')."""
        extent = self.concepts[i].extent & self.concepts[j].extent
        return self._extent_index[extent]

    def join(self, i: int, j: int) -> int:
        """Supremum by the basic theorem: ((A1 ∪ A2)'', B1 ∩ B2)."""
        intent = self.concepts[i].intent & self.concepts[j].intent
        return self._intent_index[intent]

    def reduced_label(self, i: int):
        """(object labels, attribute labels) attached to concept i."""
        objs = sorted(g for g, k in self.object_labels.items() if k == i)
        attrs = sorted(m for m, k in self.attribute_labels.items() if k == i)
        return objs, attrs

    # -- layout -------------------------------------------------------------

    def layout(self):
        """Deterministic (x, y) per concept: longest-path layers, barycenter x.

        y strictly decreases along every cover edge from upper to lower.
        """
        if self._layout is None:
            self._layout = _layered_layout(self)
        return self._layout

    def to_json_dict(self) -> dict:
        layout = self.layout()
        return {
            "concepts": [
                {"extent": sorted(c.extent), "intent": sorted(c.intent)}
                for c in self.concepts
            ],
            "covers": [[lo, hi] for lo, hi in self.covers],
            "objectLabels": dict(self.object_labels),
            "attributeLabels": dict(self.attribute_labels),
            "layout": [{"x": x, "y": y} for x, y in layout],
        }


def build_lattice(ctx: FormalContext, concepts=None) -> ConceptLattice:
    """Build the concept lattice, checking the supplied concept list if any."""
    enumerated = {}
    count = 0
    for mask in iter_concept_extent_masks(ctx):
        count += 1
        if count > MAX_LATTICE_CONCEPTS:
            raise SizeGuardError(
                "lattice has more than %d concepts" % MAX_LATTICE_CONCEPTS
            )
        enumerated[frozenset(bits_of(mask))] = mask
    if concepts is None:
        ordered = [
            _concept_from_extent_mask(ctx, enumerated[e])
            for e in sorted(
                enumerated, key=lambda e: lectic_key(mask_of(e), ctx.n_objects)
            )
        ]
    else:
        supplied = list(concepts)
        extents = set()
        for c in supplied:
            if not is_concept(ctx, c.extent, c.intent):
                raise InputError("not a concept of this context: %r" % (c,))
            extents.add(c.extent)
        if len(extents) != len(supplied):
            raise InputError("duplicate concepts supplied")
        if extents != set(enumerated):
            raise InputError(
                "incomplete concept list: %d supplied, %d exist"
                % (len(extents), len(enumerated))
            )
        ordered = sorted(
            supplied, key=lambda c: lectic_key(mask_of(c.extent), ctx.n_objects)
        )
    covers = _cover_edges(ctx, ordered)
    return ConceptLattice(ctx, ordered, covers)


def _cover_edges(ctx: FormalContext, concepts):
    """Transitive reduction of the extent order as (lower, upper) index pairs."""
    masks = [mask_of(c.extent) for c in concepts]
    sizes = [m.bit_count() for m in masks]
    order = sorted(range(len(concepts)), key=lambda i: sizes[i])
    edges = []
    for hi in order:
        below = [
            lo
            for lo in order
            if sizes[lo] < sizes[hi] and masks[lo] & ~masks[hi] == 0
        ]
        below.sort(key=lambda lo: -sizes[lo])
        kept = []
        for lo in below:
            if any(masks[lo] & ~masks[other] == 0 for other in kept):
                continue  # dominated: lo sits under an already-kept cover
            kept.append(lo)
            edges.append((lo, hi))
    edges.sort()
    return edges


def _layered_layout(lattice: ConceptLattice):
    n = len(lattice.concepts)
    order = sorted(
        range(n), key=lambda i: -len(lattice.concepts[i].extent)
    )  # top first: covers point from processed to unprocessed
    layer = [0] * n
    for i in order:
        for lo in lattice.lower_covers(i):
            layer[lo] = max(layer[lo], layer[i] + 1)
    by_layer = {}
    for i in range(n):
        by_layer.setdefault(layer[i], []).append(i)
    position = {}
    for depth in sorted(by_layer):
        row = sorted(by_layer[depth])  # concepts are already in lectic order
        for rank, i in enumerate(row):
            position[i] = float(rank)
    for _ in range(3):  # barycenter sweeps settle quickly at desk scale
        for depth in sorted(by_layer):
            row = by_layer[depth]
            scores = {}
            for i in row:
                neighbors = list(lattice.upper_covers(i)) + list(lattice.lower_covers(i))
                if neighbors:
                    scores[i] = sum(position[k] for k in neighbors) / len(neighbors)
                else:
                    scores[i] = position[i]
            row.sort(key=lambda i: (scores[i], i))
            for rank, i in enumerate(row):
                position[i] = float(rank)
    coords = [None] * n
    for depth, row in by_layer.items():
        width = len(row)
        for rank, i in enumerate(row):
            coords[i] = (rank - (width - 1) / 2.0, -depth)
    return coords


def iceberg(lattice: ConceptLattice, min_supp) -> list:
    """Concepts whose extent support |A|/|G| reaches min_supp (an order filter)."""
    min_supp = Fraction(min_supp)
    if not 0 <= min_supp <= 1:
        raise InputError("min_supp must be within [0, 1], got %s" % min_supp)
    n = lattice.context.n_objects
    return [
        c
        for c in lattice.concepts
        if n > 0 and Fraction(len(c.extent), n) >= min_supp
    ]


def stability(ctx: FormalContext, concept: FormalConcept, cap: int = STABILITY_CAP) -> Fraction:
    """Exact stability: the share of extent subsets whose prime is the intent.

    Subsets are grouped by the distinct rows they touch, so the enumeration
    runs over distinct row masks with multiplicity weights.  Extents larger
    than `cap` are refused rather than approximated.
    """
    if not is_concept(ctx, concept.extent, concept.intent):
        raise InputError("not a concept of this context: %r" % (concept,))
    extent = sorted(concept.extent)
    if len(extent) > cap:
        raise SizeGuardError(
            "extent size %d exceeds the exact-stability cap %d" % (len(extent), cap)
        )
    target = mask_of(concept.intent)
    multiplicity = {}
    for gi in extent:
        row = ctx.row_mask(gi)
        multiplicity[row] = multiplicity.get(row, 0) + 1
    rows = sorted(multiplicity)
    counts = [multiplicity[r] for r in rows]
    full = ctx.full_attribute_mask
    qualifying = 0
    for pick in range(1 << len(rows)):
        meet = full
        ways = 1
        rest = pick
        while rest:
            low = rest & -rest
            k = low.bit_length() - 1
            meet &= rows[k]
            ways *= (1 << counts[k]) - 1
            rest ^= low
        if meet == target:
            qualifying += ways
    return Fraction(qualifying, 1 << len(extent))
