"""Boolean matrix factorization: matrices, products, greedy concept factors
and the weighted projection used for recommendation scores."""

import random
from fractions import Fraction

import pytest

from fcakit.bmf import (
    BooleanMatrix,
    boolean_product,
    factorize,
    weighted_projection,
)
from fcakit.errors import InputError
from tests import datasets, oracles


def random_matrix(rng, max_rows=6, max_cols=6):
    n = rng.randint(1, max_rows)
    m = rng.randint(1, max_cols)
    rows = [[rng.randint(0, 1) for _ in range(m)] for _ in range(n)]
    return BooleanMatrix.from_rows(rows), rows


def row_sets(matrix):
    return [
        {j for j in range(matrix.n_cols) if matrix.cell(i, j)}
        for i in range(matrix.n_rows)
    ]


def test_matrix_basics():
    mat = BooleanMatrix.from_rows([[1, 0, 1], [0, 0, 0]])
    assert (mat.n_rows, mat.n_cols) == (2, 3)
    assert mat.row_masks == (0b101, 0)
    assert mat.cell(0, 2) == 1 and mat.cell(1, 0) == 0
    assert mat.to_lists() == [[1, 0, 1], [0, 0, 0]]
    assert mat == BooleanMatrix(2, 3, [5, 0])
    assert mat != BooleanMatrix(2, 3, [5, 1])
    assert repr(mat) == "BooleanMatrix(2x3)"


def test_matrix_validation():
    with pytest.raises(InputError, match="expected 2 rows, got 1"):
        BooleanMatrix(2, 3, [1])
    with pytest.raises(InputError, match="row 0 exceeds 2 columns"):
        BooleanMatrix(1, 2, [4])
    with pytest.raises(InputError, match="ragged rows"):
        BooleanMatrix.from_rows([[1, 0], [1]])
    with pytest.raises(InputError, match="cell 2 is not 0 or 1"):
        BooleanMatrix.from_rows([[1, 2]])


def test_dense_text_round_trip():
    mat = datasets.utility_matrix()
    text = mat.to_dense_text()
    assert text.endswith("\n")
    assert len(text.splitlines()) == mat.n_rows
    assert text.splitlines()[0] == "10110001100"
    assert BooleanMatrix.from_dense_text(text) == mat
    # surrounding blank lines and indentation are tolerated
    assert BooleanMatrix.from_dense_text("\n 10 \n01\n\n").to_lists() == [
        [1, 0],
        [0, 1],
    ]


def test_dense_text_errors():
    with pytest.raises(InputError, match="empty matrix text"):
        BooleanMatrix.from_dense_text("  \n\n")
    with pytest.raises(InputError, match="line 2: expected 2 digits, got 3"):
        BooleanMatrix.from_dense_text("10\n100\n")
    with pytest.raises(InputError, match=r"line 2: invalid characters \['x'\]"):
        BooleanMatrix.from_dense_text("10\n1x\n")


def test_context_round_trip():
    mat = datasets.ratings_matrix()
    ctx = mat.to_context()
    assert ctx.objects == ("g1", "g2", "g3", "g4", "g5", "g6")
    assert ctx.attributes == ("m1", "m2", "m3", "m4", "m5", "m6", "m7")
    assert BooleanMatrix.from_context(ctx) == mat
    named = mat.to_context(objects=list("abcdef"), attributes=list("tuvwxyz"))
    assert named.objects == tuple("abcdef")
    assert named.row(0) == {0, 1, 2}


def test_boolean_product_example():
    P = BooleanMatrix.from_rows(datasets.RATINGS_P_ROWS)
    Q = BooleanMatrix.from_rows(datasets.RATINGS_Q_ROWS)
    assert boolean_product(P, Q) == datasets.ratings_matrix()
    with pytest.raises(InputError, match="inner dimensions disagree: 7 vs 6"):
        boolean_product(Q, P)


def test_boolean_product_matches_oracle():
    rng = random.Random(101)
    for _ in range(40):
        P, _ = random_matrix(rng)
        q_rows = [
            [rng.randint(0, 1) for _ in range(rng.randint(1, 6))]
            for _ in range(P.n_cols)
        ]
        width = len(q_rows[0])
        q_rows = [r[:width] + [0] * (width - len(r[:width])) for r in q_rows]
        Q = BooleanMatrix.from_rows(q_rows)
        got = boolean_product(P, Q)
        want = oracles.boolean_product_lists(row_sets(P), row_sets(Q), Q.n_cols)
        assert row_sets(got) == want
        assert (got.n_rows, got.n_cols) == (P.n_rows, Q.n_cols)


def test_factorize_ratings_pins():
    result = factorize(datasets.ratings_matrix())
    assert result.P == BooleanMatrix.from_rows(datasets.RATINGS_P_ROWS)
    assert result.Q == BooleanMatrix.from_rows(datasets.RATINGS_Q_ROWS)
    assert [
        (set(f.extent), set(f.intent)) for f in result.factors
    ] == datasets.RATINGS_FACTORS
    assert boolean_product(result.P, result.Q) == datasets.ratings_matrix()


def test_factorize_reaches_brute_force_minimum():
    rows = [
        {j for j, cell in enumerate(r) if cell} for r in datasets.RATINGS_BOOLEAN_ROWS
    ]
    assert oracles.min_factor_count(rows, 7) == 3
    assert len(factorize(datasets.ratings_matrix()).factors) == 3


def test_factorize_partial_coverage():
    mat = datasets.ratings_matrix()
    full = factorize(mat)
    half = factorize(mat, coverage=Fraction(1, 2))
    # the greedy run is deterministic, a lower target just stops earlier
    assert half.factors == full.factors[:2]
    assert len(half.P.row_masks) == mat.n_rows and half.P.n_cols == 2
    covered = boolean_product(half.P, half.Q)
    total = sum(mask.bit_count() for mask in mat.row_masks)
    hit = sum(
        (c & m).bit_count() for c, m in zip(covered.row_masks, mat.row_masks)
    )
    assert Fraction(hit, total) >= Fraction(1, 2)


def test_factorize_validation_and_degenerate():
    mat = BooleanMatrix.from_rows([[1]])
    with pytest.raises(InputError, match=r"coverage must be within \(0, 1\], got 0"):
        factorize(mat, coverage=0)
    with pytest.raises(InputError, match=r"coverage must be within \(0, 1\], got 3/2"):
        factorize(mat, coverage="3/2")
    zero = BooleanMatrix.from_rows([[0, 0], [0, 0]])
    result = factorize(zero)
    assert result.factors == ()
    assert boolean_product(result.P, result.Q) == zero


def test_factorize_is_exact_on_random_matrices():
    # coverage 1 must reproduce any 0/1 matrix exactly
    rng = random.Random(97)
    for _ in range(120):
        mat, rows = random_matrix(rng)
        result = factorize(mat)
        assert boolean_product(result.P, result.Q) == mat
        for factor in result.factors:
            for i in factor.extent:
                assert factor.intent <= {
                    j for j, cell in enumerate(rows[i]) if cell
                }
        if mat.n_rows <= 4 and mat.n_cols <= 4:
            kmin = oracles.min_factor_count(row_sets(mat), mat.n_cols)
            assert len(result.factors) >= kmin


def test_weighted_projection_pins():
    proj = weighted_projection(
        datasets.utility_matrix(), datasets.utility_factor_matrix()
    )
    assert proj == datasets.UTILITY_PROJECTION
    # user u1 has one of the five items grouped by the second factor
    assert proj[0][1] == Fraction(1, 5)
    assert all(isinstance(x, Fraction) for row in proj for x in row)
    assert len(proj) == 10 and all(len(row) == 9 for row in proj)
    # a user holding every item of a factor projects to exactly 1
    assert proj[0][0] == 1 and proj[0][3] == 1


def test_weighted_projection_validation():
    mat = datasets.utility_matrix()
    with pytest.raises(InputError, match="item dimensions disagree: 11 vs 9"):
        weighted_projection(mat, BooleanMatrix.from_rows(datasets.UTILITY_P_ROWS))
    first = datasets.utility_factor_matrix().row_masks[0]
    with pytest.raises(InputError, match="factor row 1 is all-zero"):
        weighted_projection(mat, BooleanMatrix(2, 11, [first, 0]))


def test_factorization_json():
    data = factorize(datasets.ratings_matrix()).to_json_dict()
    assert sorted(data) == ["P", "Q", "factors"]
    assert data["P"] == datasets.RATINGS_P_ROWS
    assert data["Q"] == datasets.RATINGS_Q_ROWS
    assert data["factors"][0] == {"extent": [0, 1], "intent": [0, 1, 2]}
