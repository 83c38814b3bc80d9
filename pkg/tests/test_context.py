"""Formal contexts: derivation, closure, scaling, many-valued tables."""

import random

import pytest

from fcakit import (
    FormalContext,
    InputError,
    ManyValuedContext,
    Scale,
    apply_scaling,
    threshold_context,
)
from fcakit.context import bits_of, mask_of
from tests import datasets, oracles


def test_mask_helpers_round_trip():
    assert mask_of([0, 3]) == 0b1001
    assert bits_of(0b1001) == (0, 3)
    assert mask_of([]) == 0
    assert bits_of(0) == ()


def test_basic_queries():
    ctx = datasets.geometric()
    assert ctx.n_objects == 4
    assert ctx.n_attributes == 4
    assert ctx.objects == ("1", "2", "3", "4")
    assert ctx.attributes == ("a", "b", "c", "d")
    assert ctx.has(0, 0) and ctx.has(0, 3)
    assert not ctx.has(0, 1)
    assert ctx.row(2) == frozenset({1, 2})
    assert ctx.col(2) == frozenset({1, 2, 3})
    assert ctx.object_index("3") == 2
    assert ctx.attribute_index("d") == 3
    assert ctx.incidence_count() == 9
    assert list(ctx.incidence_pairs())[:3] == [(0, 0), (0, 3), (1, 0)]


def test_unknown_labels_rejected():
    ctx = datasets.geometric()
    with pytest.raises(InputError):
        ctx.object_index("7")
    with pytest.raises(InputError):
        ctx.attribute_index("z")


def test_duplicate_labels_rejected():
    with pytest.raises(InputError):
        FormalContext(["g", "g"], ["a"], [[0], [0]])
    with pytest.raises(InputError):
        FormalContext(["g"], ["a", "a"], [[0]])


def test_incidence_shape_checked():
    with pytest.raises(InputError):
        FormalContext(["g1", "g2"], ["a"], [[0]])
    with pytest.raises(InputError):
        FormalContext(["g"], ["a"], [[1]])


def test_derivation_worked_example():
    ctx = datasets.geometric()
    # objects 1 and 2 share only a; attribute c belongs to 2, 3, 4
    assert ctx.intent([0, 1]) == frozenset({0})
    assert ctx.extent([2]) == frozenset({1, 2, 3})
    assert ctx.closure_attributes([1]) == frozenset({1, 2})
    assert ctx.closure_objects([3]) == frozenset({3})


def test_empty_set_primes_give_full_opposite_side():
    ctx = datasets.geometric()
    assert ctx.intent([]) == frozenset(range(4))
    assert ctx.extent([]) == frozenset(range(4))


def test_derivation_index_range_checked():
    ctx = datasets.geometric()
    with pytest.raises(InputError):
        ctx.intent([4])
    with pytest.raises(InputError):
        ctx.extent([-1])


def test_derive_and_closure_dispatch():
    ctx = datasets.geometric()
    assert ctx.derive("objects", [0, 1]) == ctx.intent([0, 1])
    assert ctx.derive("attributes", [2]) == ctx.extent([2])
    assert ctx.closure("objects", [3]) == ctx.closure_objects([3])
    assert ctx.closure("attributes", [1]) == ctx.closure_attributes([1])
    with pytest.raises(InputError):
        ctx.derive("rows", [0])
    with pytest.raises(InputError):
        ctx.closure("columns", [0])


def test_galois_connection_properties_random():
    rng = random.Random(7)
    for _ in range(25):
        n, m = rng.randint(1, 6), rng.randint(1, 6)
        rows = oracles.random_context(rng, n, m)
        ctx = FormalContext(
            ["g%d" % i for i in range(n)],
            ["m%d" % j for j in range(m)],
            [sorted(r) for r in rows],
        )
        a = {g for g in range(n) if rng.random() < 0.5}
        b = {g for g in range(n) if rng.random() < 0.5}
        small, big = (a, b) if a <= b else (a & b, b)
        # extensive, antitone, idempotent
        assert a <= ctx.closure_objects(a)
        assert ctx.intent(big) <= ctx.intent(small)
        assert ctx.closure_objects(ctx.closure_objects(a)) == ctx.closure_objects(a)
        # A' = A''' on both sides
        assert ctx.intent(a) == ctx.intent(ctx.closure_objects(a))
        attrs = {j for j in range(m) if rng.random() < 0.5}
        assert attrs <= ctx.closure_attributes(attrs)
        assert ctx.extent(attrs) == ctx.extent(ctx.closure_attributes(attrs))


def test_derivation_agrees_with_oracle_random():
    rng = random.Random(11)
    for _ in range(25):
        n, m = rng.randint(1, 5), rng.randint(1, 5)
        rows = oracles.random_context(rng, n, m)
        ctx = FormalContext(
            [str(i) for i in range(n)],
            [str(j) for j in range(m)],
            [sorted(r) for r in rows],
        )
        objs = {g for g in range(n) if rng.random() < 0.5}
        attrs = {j for j in range(m) if rng.random() < 0.5}
        assert ctx.intent(objs) == oracles.intent_of(rows, m, objs)
        assert ctx.extent(attrs) == oracles.extent_of(rows, attrs)
        assert ctx.closure_attributes(attrs) == oracles.closure_attrs(rows, m, attrs)


def test_from_crosses():
    ctx = FormalContext.from_crosses(
        ["g1", "g2"], ["a", "b"], [["x", "."], [0, 1]]
    )
    assert ctx.row(0) == frozenset({0})
    assert ctx.row(1) == frozenset({1})


def test_with_object_appends_row():
    ctx = datasets.transport()
    grown = ctx.with_object("hydroplane", [1, 2])
    assert grown.n_objects == ctx.n_objects + 1
    assert grown.objects[-1] == "hydroplane"
    assert grown.row(grown.n_objects - 1) == frozenset({1, 2})
    # the original context is untouched
    assert ctx.n_objects == 5
    with pytest.raises(InputError):
        ctx.with_object("car", [0])


def test_subcontext():
    ctx = datasets.geometric()
    sub = ctx.subcontext([1, 3])
    assert sub.objects == ("2", "4")
    assert sub.attributes == ctx.attributes
    assert sub.row(0) == ctx.row(1)
    assert sub.row(1) == ctx.row(3)
    with pytest.raises(InputError):
        ctx.subcontext([5])


def test_transpose():
    ctx = datasets.geometric()
    t = ctx.transpose()
    assert t.objects == ctx.attributes
    assert t.attributes == ctx.objects
    assert t.transpose() == ctx
    # derivation swaps sides under transposition
    assert t.extent([0]) == ctx.intent([0])


def test_equality_and_hash():
    assert datasets.geometric() == datasets.geometric()
    assert datasets.geometric() != datasets.transport()
    assert hash(datasets.geometric()) == hash(datasets.geometric())
    assert datasets.geometric() != "not a context"


def test_many_valued_from_table():
    mv = datasets.university()
    assert mv.objects == ("1", "2", "3", "4", "5")
    assert mv.value(0, 0) == "M"
    assert mv.value(4, 2) == "Data Mining"
    assert mv.is_complete()
    assert mv.missing_cells() == []
    assert mv.column_values(1) == ["19", "20", "19", "20", "21"]


def test_many_valued_partial_map():
    mv = ManyValuedContext(["g1", "g2"], ["m"], {("g1", "m"): 3})
    assert mv.value(0, 0) == 3
    assert mv.value(1, 0) is None
    assert not mv.is_complete()
    assert mv.missing_cells() == [("g2", "m")]


def test_many_valued_errors():
    with pytest.raises(InputError):
        ManyValuedContext.from_table(["g"], ["m1", "m2"], [["a"]])
    with pytest.raises(InputError):
        ManyValuedContext(["g"], ["m"], {("h", "m"): 1})
    with pytest.raises(InputError):
        ManyValuedContext(["g"], ["m"], {("g", "m"): 1, (0, 0): 2})


def test_nominal_scale_keeps_first_appearance_order():
    scale = Scale.nominal(["M", "F", "F", "M"])
    sctx = scale.scale_context
    assert sctx.objects == ("M", "F")
    assert sctx.attributes == ("M", "F")
    assert sctx.row(0) == frozenset({0})
    assert sctx.row(1) == frozenset({1})


def test_dichotomic_scale_needs_two_values():
    scale = Scale.dichotomic(["yes", "no", "yes"])
    assert scale.scale_context.objects == ("yes", "no")
    with pytest.raises(InputError):
        Scale.dichotomic(["a", "b", "c"])
    with pytest.raises(InputError):
        Scale.dichotomic(["a", "a"])


def test_ordinal_scale_numeric_order():
    scale = Scale.ordinal(["8", "9", "7", "10"])
    sctx = scale.scale_context
    assert scale.value_order == "numeric"
    assert sctx.objects == ("7", "8", "9", "10")
    assert sctx.attributes == ("<=7", "<=8", "<=9", "<=10")
    # value 8 satisfies <=8, <=9, <=10
    assert sctx.row(1) == frozenset({1, 2, 3})


def test_ordinal_scale_lexicographic_fallback():
    scale = Scale.ordinal(["b", "a", "c"])
    assert scale.value_order == "lexicographic"
    assert scale.scale_context.objects == ("a", "b", "c")


def test_interordinal_scale():
    sctx = Scale.interordinal(["1", "2", "3"]).scale_context
    assert sctx.attributes == ("<=1", "<=2", "<=3", ">=1", ">=2", ">=3")
    assert sctx.row(1) == frozenset({1, 2, 3, 4})


def test_contranominal_scale():
    sctx = Scale.contranominal(["1", "2", "3"]).scale_context
    assert sctx.attributes == ("!=1", "!=2", "!=3")
    assert sctx.row(0) == frozenset({1, 2})


def test_custom_scale_and_unknown_kind():
    sctx = FormalContext(["v"], ["p"], [[0]])
    assert Scale.custom(sctx).kind == "custom"
    with pytest.raises(InputError):
        Scale("diagonal", sctx)


def test_university_scaling_matches_table():
    ctx = datasets.university_scaled()
    assert ctx.n_attributes == 16
    assert ctx.attributes[:2] == ("Gender=M", "Gender=F")
    assert ctx.attributes[2] == "Age=<=19"
    assert ctx.attributes[8] == "Mark=<=7"
    assert ctx.attributes[15] == "Mark=>=10"
    rows = [
        "".join("x" if ctx.has(i, j) else "." for j in range(16))
        for i in range(5)
    ]
    assert rows == datasets.UNIVERSITY_SCALED_ROWS


def test_scaling_errors():
    mv = datasets.university()
    plan = {
        "Gender": Scale.nominal(["M", "F"]),
        "Age": Scale.ordinal(mv.column_values(1)),
        "Subject": Scale.nominal(mv.column_values(2)),
    }
    with pytest.raises(InputError):
        apply_scaling(mv, plan)  # no scale for Mark
    plan["Mark"] = Scale.interordinal(["7", "8", "9"])  # 10 missing
    with pytest.raises(InputError):
        apply_scaling(mv, plan)


def test_scaling_skips_undefined_cells():
    mv = ManyValuedContext(["g1", "g2"], ["m"], {("g1", "m"): "a"})
    ctx = apply_scaling(mv, {"m": Scale.nominal(["a"])})
    assert ctx.row(0) == frozenset({0})
    assert ctx.row(1) == frozenset()


def test_threshold_context():
    ctx = threshold_context(
        datasets.MOVIE_USERS, datasets.MOVIE_TITLES, datasets.MOVIE_RATINGS,
        threshold=2,
    )
    rows = [
        [1 if ctx.has(i, j) else 0 for j in range(ctx.n_attributes)]
        for i in range(ctx.n_objects)
    ]
    assert rows == datasets.RATINGS_BOOLEAN_ROWS
    # the default threshold keeps only ratings above 3
    strict = threshold_context(
        datasets.MOVIE_USERS, datasets.MOVIE_TITLES, datasets.MOVIE_RATINGS
    )
    assert strict.row(1) == frozenset({0, 1, 3})
    with pytest.raises(InputError):
        threshold_context(["u"], ["a", "b"], [[1]])
