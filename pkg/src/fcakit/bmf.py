"""Boolean matrix factorization with formal concepts as factors.

factorize() follows the greedy concept-on-demand scheme: grow a candidate
intent one attribute at a time, always closing it, keep the attribute that
covers the most still-uncovered 1-cells, and freeze the concept once no
single attribute improves it. Every factor is a full rectangle of the input,
so 0-cells are never violated and coverage only concerns 1-cells.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .context import FormalContext, bits_of
from .errors import InputError
from .lattice import FormalConcept


class BooleanMatrix:
    """A 0/1 matrix stored as one bitmask per row."""

    def __init__(self, n_rows, n_cols, row_masks):
        self.n_rows = n_rows
        self.n_cols = n_cols
        self.row_masks = tuple(row_masks)
        if len(self.row_masks) != n_rows:
            raise InputError("expected %d rows, got %d" % (n_rows, len(self.row_masks)))
        limit = 1 << n_cols
        for i, mask in enumerate(self.row_masks):
            if not 0 <= mask < limit:
                raise InputError("row %d exceeds %d columns" % (i, n_cols))

    @classmethod
    def from_rows(cls, rows) -> "BooleanMatrix":
        rows = [list(r) for r in rows]
        width = len(rows[0]) if rows else 0
        if any(len(r) != width for r in rows):
            raise InputError("ragged rows")
        masks = []
        for r in rows:
            mask = 0
            for j, cell in enumerate(r):
                if cell not in (0, 1):
                    raise InputError("cell %r is not 0 or 1" % (cell,))
                if cell:
                    mask |= 1 << j
            masks.append(mask)
        return cls(len(rows), width, masks)

    @classmethod
    def from_dense_text(cls, text: str) -> "BooleanMatrix":
        """Rows of contiguous 0/1 digits, one per line."""
        lines = [line.strip() for line in text.splitlines() if line.strip()]
        if not lines:
            raise InputError("empty matrix text")
        width = len(lines[0])
        masks = []
        for lineno, line in enumerate(lines, start=1):
            if len(line) != width:
                raise InputError(
                    "line %d: expected %d digits, got %d" % (lineno, width, len(line))
                )
            bad = sorted(set(line) - {"0", "1"})
            if bad:
                raise InputError("line %d: invalid characters %s" % (lineno, bad))
            masks.append(
                sum(1 << j for j, ch in enumerate(line) if ch == "1")
            )
        return cls(len(lines), width, masks)

    def to_dense_text(self) -> str:
        return "\n".join(
            "".join("1" if mask >> j & 1 else "0" for j in range(self.n_cols))
            for mask in self.row_masks
        ) + "\n"

    @classmethod
    def from_context(cls, ctx: FormalContext) -> "BooleanMatrix":
        return cls(
            ctx.n_objects,
            ctx.n_attributes,
            [ctx.row_mask(i) for i in range(ctx.n_objects)],
        )

    def to_context(self, objects=None, attributes=None) -> FormalContext:
        objects = objects or ["g%d" % (i + 1) for i in range(self.n_rows)]
        attributes = attributes or ["m%d" % (j + 1) for j in range(self.n_cols)]
        incidence = [sorted(bits_of(mask)) for mask in self.row_masks]
        return FormalContext(objects, attributes, incidence)

    def cell(self, i, j) -> int:
        return self.row_masks[i] >> j & 1

    def to_lists(self) -> list:
        return [
            [self.cell(i, j) for j in range(self.n_cols)] for i in range(self.n_rows)
        ]

    def __eq__(self, other):
        if not isinstance(other, BooleanMatrix):
            return NotImplemented
        return (self.n_rows, self.n_cols, self.row_masks) == (
            other.n_rows,
            other.n_cols,
            other.row_masks,
        )

    def __repr__(self):
        return "BooleanMatrix(%dx%d)" % (self.n_rows, self.n_cols)


@dataclass(frozen=True)
class BooleanFactorization:
    P: BooleanMatrix  # n x k, column l marks factor l's extent
    Q: BooleanMatrix  # k x m, row l marks factor l's intent
    factors: tuple

    def to_json_dict(self) -> dict:
        return {
            "P": self.P.to_lists(),
            "Q": self.Q.to_lists(),
            "factors": [
                {"extent": sorted(f.extent), "intent": sorted(f.intent)}
                for f in self.factors
            ],
        }


def boolean_product(P: BooleanMatrix, Q: BooleanMatrix) -> BooleanMatrix:
    """(P o Q)_ij = OR over l of P_il AND Q_lj."""
    if P.n_cols != Q.n_rows:
        raise InputError(
            "inner dimensions disagree: %d vs %d" % (P.n_cols, Q.n_rows)
        )
    masks = []
    for i in range(P.n_rows):
        row = 0
        p_row = P.row_masks[i]
        for l in range(P.n_cols):
            if p_row >> l & 1:
                row |= Q.row_masks[l]
        masks.append(row)
    return BooleanMatrix(P.n_rows, Q.n_cols, masks)


def factorize(matrix: BooleanMatrix, coverage=1) -> BooleanFactorization:
    """Greedy concept factors until the given fraction of 1-cells is covered."""
    coverage = Fraction(coverage)
    if not 0 < coverage <= 1:
        raise InputError("coverage must be within (0, 1], got %s" % coverage)
    ctx = matrix.to_context()
    n, m = matrix.n_rows, matrix.n_cols
    total = sum(mask.bit_count() for mask in matrix.row_masks)
    uncovered = list(matrix.row_masks)
    factors = []

    def rectangle_value(extent_mask, intent_mask):
        return sum(
            (uncovered[i] & intent_mask).bit_count() for i in bits_of(extent_mask)
        )

    covered = 0
    while total and Fraction(covered, total) < coverage:
        intent = 0
        extent = ctx.full_object_mask
        value = rectangle_value(extent, intent)
        while True:
            best_j, best_intent, best_extent, best_value = None, 0, 0, value
            for j in range(m):
                if intent >> j & 1:
                    continue
                cand_extent = ctx.extent_mask(intent | 1 << j)
                cand_intent = ctx.intent_mask(cand_extent)
                cand_value = rectangle_value(cand_extent, cand_intent)
                if cand_value > best_value:
                    best_j = j
                    best_intent, best_extent = cand_intent, cand_extent
                    best_value = cand_value
            if best_j is None:
                break
            intent, extent, value = best_intent, best_extent, best_value
        factors.append(
            FormalConcept(frozenset(bits_of(extent)), frozenset(bits_of(intent)))
        )
        for i in bits_of(extent):
            covered += (uncovered[i] & intent).bit_count()
            uncovered[i] &= ~intent
    k = len(factors)
    p_masks = [0] * n
    q_masks = []
    for l, factor in enumerate(factors):
        for i in factor.extent:
            p_masks[i] |= 1 << l
        q_masks.append(sum(1 << j for j in factor.intent))
    return BooleanFactorization(
        BooleanMatrix(n, k, p_masks), BooleanMatrix(k, m, q_masks), tuple(factors)
    )


def weighted_projection(matrix: BooleanMatrix, Q: BooleanMatrix) -> list:
    """Per user and factor, the fraction of the factor's items the user has."""
    if matrix.n_cols != Q.n_cols:
        raise InputError(
            "item dimensions disagree: %d vs %d" % (matrix.n_cols, Q.n_cols)
        )
    weights = []
    for f, mask in enumerate(Q.row_masks):
        w = mask.bit_count()
        if w == 0:
            raise InputError("factor row %d is all-zero" % f)
        weights.append(w)
    return [
        [
            Fraction((row & Q.row_masks[f]).bit_count(), weights[f])
            for f in range(Q.n_rows)
        ]
        for row in matrix.row_masks
    ]
