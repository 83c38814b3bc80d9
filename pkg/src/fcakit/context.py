"""Formal contexts, many-valued contexts, and conceptual scaling.

A formal context is a triple (G, M, I) of objects, attributes, and a binary
incidence relation.  Incidence is stored twice, as packed bit masks per object
row and per attribute column, because derivation (row/column intersection) is
the hot loop of every algorithm built on top.  The two forms are cross-checked
on construction.  Contexts are immutable; "mutation" helpers return new
contexts.
"""

from __future__ import annotations

from fractions import Fraction

from .errors import InputError


def mask_of(indices) -> int:
    """Pack an iterable of nonnegative indices into a bit mask."""
    m = 0
    for i in indices:
        m |= 1 << i
    return m


def bits_of(mask: int):
    """Unpack a bit mask into a sorted tuple of indices."""
    out = []
    i = 0
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return tuple(out)


def _check_unique(labels, side):
    seen = set()
    for lab in labels:
        if lab in seen:
            raise InputError("duplicate %s label: %r" % (side, lab))
        seen.add(lab)


class FormalContext:
    """A formal context (G, M, I).

    Parameters
    ----------
    objects : sequence of str
        Object labels, unique.
    attributes : sequence of str
        Attribute labels, unique.
    incidence : sequence of iterables of int
        For each object, the indices of its attributes.
    """

    def __init__(self, objects, attributes, incidence):
        self.objects = tuple(objects)
        self.attributes = tuple(attributes)
        _check_unique(self.objects, "object")
        _check_unique(self.attributes, "attribute")
        if len(incidence) != len(self.objects):
            raise InputError(
                "incidence has %d rows for %d objects"
                % (len(incidence), len(self.objects))
            )
        n, m = len(self.objects), len(self.attributes)
        rows = []
        for gi, attrs in enumerate(incidence):
            mask = 0
            for j in attrs:
                if not 0 <= j < m:
                    raise InputError(
                        "attribute index %d out of range for object %r"
                        % (j, self.objects[gi])
                    )
                mask |= 1 << j
            rows.append(mask)
        cols = [0] * m
        for gi, mask in enumerate(rows):
            rest = mask
            while rest:
                low = rest & -rest
                cols[low.bit_length() - 1] |= 1 << gi
                rest ^= low
        self._rows = tuple(rows)
        self._cols = tuple(cols)
        self._object_index = {g: i for i, g in enumerate(self.objects)}
        self._attribute_index = {a: j for j, a in enumerate(self.attributes)}
        self._cross_check()

    def _cross_check(self):
        # Row and column forms must describe the same relation.
        for gi, mask in enumerate(self._rows):
            for j in bits_of(mask):
                if not self._cols[j] >> gi & 1:
                    raise InputError("row/column forms disagree at (%d, %d)" % (gi, j))
        if sum(m.bit_count() for m in self._rows) != sum(
            m.bit_count() for m in self._cols
        ):
            raise InputError("row/column forms disagree in size")

    # -- basic queries ----------------------------------------------------

    @property
    def n_objects(self) -> int:
        return len(self.objects)

    @property
    def n_attributes(self) -> int:
        return len(self.attributes)

    @property
    def full_object_mask(self) -> int:
        return (1 << len(self.objects)) - 1

    @property
    def full_attribute_mask(self) -> int:
        return (1 << len(self.attributes)) - 1

    def has(self, gi: int, mj: int) -> bool:
        return bool(self._rows[gi] >> mj & 1)

    def row_mask(self, gi: int) -> int:
        return self._rows[gi]

    def col_mask(self, mj: int) -> int:
        return self._cols[mj]

    def row(self, gi: int):
        return frozenset(bits_of(self._rows[gi]))

    def col(self, mj: int):
        return frozenset(bits_of(self._cols[mj]))

    def object_index(self, label: str) -> int:
        try:
            return self._object_index[label]
        except KeyError:
            raise InputError("unknown object label: %r" % (label,)) from None

    def attribute_index(self, label: str) -> int:
        try:
            return self._attribute_index[label]
        except KeyError:
            raise InputError("unknown attribute label: %r" % (label,)) from None

    def incidence_count(self) -> int:
        return sum(m.bit_count() for m in self._rows)

    def incidence_pairs(self):
        """All (object index, attribute index) pairs of the relation, row-major."""
        for gi, mask in enumerate(self._rows):
            for j in bits_of(mask):
                yield gi, j

    # -- derivation operators ---------------------------------------------
    #
    # The prime of an empty set is the full opposite side: an empty
    # intersection over rows (columns) leaves every attribute (object).

    def intent_mask(self, object_mask: int) -> int:
        common = self.full_attribute_mask
        rest = object_mask
        while rest and common:
            low = rest & -rest
            common &= self._rows[low.bit_length() - 1]
            rest ^= low
        return common

    def extent_mask(self, attribute_mask: int) -> int:
        common = self.full_object_mask
        rest = attribute_mask
        while rest and common:
            low = rest & -rest
            common &= self._cols[low.bit_length() - 1]
            rest ^= low
        return common

    def _object_mask_checked(self, objs) -> int:
        mask = 0
        for i in objs:
            if not 0 <= i < len(self.objects):
                raise InputError("object index %d out of range" % i)
            mask |= 1 << i
        return mask

    def _attribute_mask_checked(self, attrs) -> int:
        mask = 0
        for j in attrs:
            if not 0 <= j < len(self.attributes):
                raise InputError("attribute index %d out of range" % j)
            mask |= 1 << j
        return mask

    def intent(self, objs) -> frozenset:
        """A' for a set A of object indices."""
        return frozenset(bits_of(self.intent_mask(self._object_mask_checked(objs))))

    def extent(self, attrs) -> frozenset:
        """B' for a set B of attribute indices."""
        return frozenset(bits_of(self.extent_mask(self._attribute_mask_checked(attrs))))

    def closure_objects_mask(self, object_mask: int) -> int:
        return self.extent_mask(self.intent_mask(object_mask))

    def closure_attributes_mask(self, attribute_mask: int) -> int:
        return self.intent_mask(self.extent_mask(attribute_mask))

    def closure_objects(self, objs) -> frozenset:
        """A'' for a set A of object indices."""
        return frozenset(
            bits_of(self.closure_objects_mask(self._object_mask_checked(objs)))
        )

    def closure_attributes(self, attrs) -> frozenset:
        """B'' for a set B of attribute indices."""
        return frozenset(
            bits_of(self.closure_attributes_mask(self._attribute_mask_checked(attrs)))
        )

    def derive(self, side: str, s) -> frozenset:
        """Apply the derivation operator to an index set on the given side."""
        if side == "objects":
            return self.intent(s)
        if side == "attributes":
            return self.extent(s)
        raise InputError("side must be 'objects' or 'attributes', got %r" % (side,))

    def closure(self, side: str, s) -> frozenset:
        """Apply the closure operator (double prime) on the given side."""
        if side == "objects":
            return self.closure_objects(s)
        if side == "attributes":
            return self.closure_attributes(s)
        raise InputError("side must be 'objects' or 'attributes', got %r" % (side,))

    # -- construction helpers ----------------------------------------------

    @classmethod
    def from_crosses(cls, objects, attributes, rows):
        """Build from rows of cross marks ('x'/'X'/'1'/1/True count as crosses)."""
        crosses = {"x", "X", "1", 1, True}
        incidence = [
            [j for j, cell in enumerate(row) if cell in crosses] for row in rows
        ]
        return cls(objects, attributes, incidence)

    def with_object(self, label: str, attrs) -> "FormalContext":
        """A new context with one extra object row appended."""
        if label in self._object_index:
            raise InputError("duplicate object label: %r" % (label,))
        incidence = [bits_of(m) for m in self._rows]
        incidence.append(sorted(attrs))
        return FormalContext(self.objects + (label,), self.attributes, incidence)

    def subcontext(self, object_indices) -> "FormalContext":
        """The subcontext restricted to the given objects (all attributes kept)."""
        idx = sorted(set(object_indices))
        for i in idx:
            if not 0 <= i < len(self.objects):
                raise InputError("object index %d out of range" % i)
        return FormalContext(
            [self.objects[i] for i in idx],
            self.attributes,
            [bits_of(self._rows[i]) for i in idx],
        )

    def transpose(self) -> "FormalContext":
        """Swap objects and attributes."""
        return FormalContext(
            self.attributes, self.objects, [bits_of(m) for m in self._cols]
        )

    def __eq__(self, other):
        if not isinstance(other, FormalContext):
            return NotImplemented
        return (
            self.objects == other.objects
            and self.attributes == other.attributes
            and self._rows == other._rows
        )

    def __hash__(self):
        return hash((self.objects, self.attributes, self._rows))

    def __repr__(self):
        return "FormalContext(%d objects, %d attributes, %d crosses)" % (
            len(self.objects),
            len(self.attributes),
            self.incidence_count(),
        )


class ManyValuedContext:
    """A many-valued context (G, M, W, I): a partial map (object, attribute) -> value.

    Values are kept as given; incidence tests against scales compare the
    trimmed string form of the token.
    """

    def __init__(self, objects, attributes, values):
        self.objects = tuple(objects)
        self.attributes = tuple(attributes)
        _check_unique(self.objects, "object")
        _check_unique(self.attributes, "attribute")
        self._object_index = {g: i for i, g in enumerate(self.objects)}
        self._attribute_index = {a: j for j, a in enumerate(self.attributes)}
        vals = {}
        for (g, m), w in values.items():
            gi = g if isinstance(g, int) else self._object_index.get(g)
            mj = m if isinstance(m, int) else self._attribute_index.get(m)
            if gi is None or mj is None or not (0 <= gi < len(self.objects)):
                raise InputError("value for unknown cell (%r, %r)" % (g, m))
            if not 0 <= mj < len(self.attributes):
                raise InputError("value for unknown cell (%r, %r)" % (g, m))
            if (gi, mj) in vals:
                raise InputError(
                    "two values for (%r, %r)" % (self.objects[gi], self.attributes[mj])
                )
            vals[(gi, mj)] = w
        self._values = vals

    @classmethod
    def from_table(cls, objects, attributes, rows):
        """Build a complete many-valued context from a rectangular table."""
        values = {}
        for gi, row in enumerate(rows):
            if len(row) != len(attributes):
                raise InputError("row %d has %d cells, expected %d"
                                 % (gi + 1, len(row), len(attributes)))
            for mj, w in enumerate(row):
                values[(gi, mj)] = w
        return cls(objects, attributes, values)

    def value(self, gi: int, mj: int):
        return self._values.get((gi, mj))

    def is_complete(self) -> bool:
        return len(self._values) == len(self.objects) * len(self.attributes)

    def missing_cells(self):
        return [
            (g, m)
            for gi, g in enumerate(self.objects)
            for mj, m in enumerate(self.attributes)
            if (gi, mj) not in self._values
        ]

    def column_values(self, mj: int):
        """Values of one attribute in object order (None where undefined)."""
        return [self._values.get((gi, mj)) for gi in range(len(self.objects))]

    def __repr__(self):
        return "ManyValuedContext(%d objects, %d attributes, %d values)" % (
            len(self.objects),
            len(self.attributes),
            len(self._values),
        )


def _token(value) -> str:
    return str(value).strip()


def _dedupe_tokens(values):
    """Trimmed string tokens in first-appearance order."""
    seen = []
    for v in values:
        t = _token(v)
        if t not in seen:
            seen.append(t)
    return seen


def _scale_value_order(values):
    """Numeric order when every token parses as a number, else lexicographic."""
    tokens = _dedupe_tokens(values)
    try:
        keyed = sorted(tokens, key=lambda t: (Fraction(t), t))
        return keyed, "numeric"
    except (ValueError, ZeroDivisionError):
        return sorted(tokens), "lexicographic"


class Scale:
    """A conceptual scale: a formal context whose objects are scale values."""

    KINDS = ("nominal", "dichotomic", "ordinal", "interordinal", "contranominal", "custom")

    def __init__(self, kind: str, scale_context: FormalContext, value_order: str = "given"):
        if kind not in self.KINDS:
            raise InputError("unknown scale kind: %r" % (kind,))
        self.kind = kind
        self.scale_context = scale_context
        self.value_order = value_order

    @classmethod
    def nominal(cls, values):
        # Value order as given: the derived columns follow first appearance.
        ordered = _dedupe_tokens(values)
        ctx = FormalContext(ordered, ordered, [[i] for i in range(len(ordered))])
        return cls("nominal", ctx)

    @classmethod
    def dichotomic(cls, values):
        ordered = _dedupe_tokens(values)
        if len(ordered) != 2:
            raise InputError("dichotomic scale needs exactly 2 values, got %d" % len(ordered))
        ctx = FormalContext(ordered, ordered, [[0], [1]])
        return cls("dichotomic", ctx)

    @classmethod
    def ordinal(cls, values):
        ordered, order = _scale_value_order(values)
        attrs = ["<=%s" % v for v in ordered]
        incidence = [list(range(i, len(ordered))) for i in range(len(ordered))]
        ctx = FormalContext(ordered, attrs, incidence)
        return cls("ordinal", ctx, order)

    @classmethod
    def interordinal(cls, values):
        # Apposition of the <= and >= ordinal scales over the same values.
        ordered, order = _scale_value_order(values)
        k = len(ordered)
        attrs = ["<=%s" % v for v in ordered] + [">=%s" % v for v in ordered]
        incidence = [
            list(range(i, k)) + [k + t for t in range(i + 1)] for i in range(k)
        ]
        ctx = FormalContext(ordered, attrs, incidence)
        return cls("interordinal", ctx, order)

    @classmethod
    def contranominal(cls, values):
        ordered = _dedupe_tokens(values)
        attrs = ["!=%s" % v for v in ordered]
        incidence = [
            [j for j in range(len(ordered)) if j != i] for i in range(len(ordered))
        ]
        ctx = FormalContext(ordered, attrs, incidence)
        return cls("contranominal", ctx)

    @classmethod
    def custom(cls, scale_context: FormalContext):
        return cls("custom", scale_context)

    def __repr__(self):
        return "Scale(%s, %d values)" % (self.kind, self.scale_context.n_objects)


def apply_scaling(mv: ManyValuedContext, plan) -> FormalContext:
    """Scale a many-valued context into a one-valued context.

    `plan` maps each attribute label of `mv` to a Scale.  The result is the
    apposition of the per-attribute scaled blocks, in attribute order; derived
    attribute labels are "attr=scaleAttr" pairs.  Every occurring value must
    appear among the scale's objects.
    """
    for m in mv.attributes:
        if m not in plan:
            raise InputError("no scale for attribute %r" % (m,))
    derived = []
    rows = [[] for _ in mv.objects]
    for mj, m in enumerate(mv.attributes):
        scale = plan[m]
        sctx = scale.scale_context
        offset = len(derived)
        derived.extend("%s=%s" % (m, a) for a in sctx.attributes)
        for gi, g in enumerate(mv.objects):
            w = mv.value(gi, mj)
            if w is None:
                continue
            tok = _token(w)
            try:
                vi = sctx.object_index(tok)
            except InputError:
                raise InputError(
                    "value %r of object %r at attribute %r is not a scale value"
                    % (tok, g, m)
                ) from None
            rows[gi].extend(offset + j for j in bits_of(sctx.row_mask(vi)))
    return FormalContext(mv.objects, derived, rows)


def threshold_context(objects, attributes, ratings, threshold=3) -> FormalContext:
    """One-valued context from a numeric rating table: cross iff rating > threshold."""
    incidence = []
    for row in ratings:
        if len(row) != len(attributes):
            raise InputError("rating row has %d cells, expected %d"
                             % (len(row), len(attributes)))
        incidence.append([j for j, r in enumerate(row) if r > threshold])
    return FormalContext(objects, attributes, incidence)
