"""JSM hypothesis learning and classification of undetermined examples."""

import random

import pytest

from fcakit import FormalContext, InputError, TrainingContext, classify, hypotheses
from fcakit.jsm import classify_tau, report
from tests import datasets, oracles

A = {a: j for j, a in enumerate(datasets.CREDIT_ATTRIBUTES)}


def attrs(*names):
    return frozenset(A[n] for n in names)


def test_training_context():
    tc = datasets.credit()
    assert tc.base.objects == tuple("g%d" % i for i in range(1, 11))
    assert tc.positive_indices == (0, 1, 2, 3)
    assert tc.negative_indices == (4, 5, 6)
    assert tc.tau_indices == (7, 8, 9)
    assert tc.target_label == "w"


def test_training_validation():
    base = FormalContext(["g1", "g2"], ["a", "b"], [[0], [1]])
    with pytest.raises(InputError, match="expected 2 tags, got 1"):
        TrainingContext(base, ["positive"])
    with pytest.raises(InputError, match="unknown polarity tags: maybe"):
        TrainingContext(base, ["positive", "maybe"])
    with pytest.raises(InputError, match="collides with an attribute"):
        TrainingContext(base, ["positive", "negative"], target_label="a")


def test_from_csv_round_trip():
    tc = TrainingContext.from_csv(datasets.credit_csv())
    want = datasets.credit()
    assert tc.base == want.base
    assert tc.tags == want.tags
    assert tc.target_label == "w"


def test_from_csv_errors():
    with pytest.raises(InputError, match="header and at least one row"):
        TrainingContext.from_csv("client,a,w\n")
    with pytest.raises(InputError, match="attribute and target columns"):
        TrainingContext.from_csv("client,w\ng1,+\n")
    with pytest.raises(InputError, match="line 2: expected 4 cells, got 3"):
        TrainingContext.from_csv("client,a,b,w\ng1,x,+\n")
    with pytest.raises(InputError, match="line 3: target must be one of"):
        TrainingContext.from_csv("client,a,b,w\ng1,x,,+\ng2,,x,yes\n")


def test_positive_hypotheses_pinned():
    got = [
        (h.intent, h.minimal, h.maximal)
        for h in hypotheses(datasets.credit(), "positive")
    ]
    assert got == [
        (attrs("HS"), True, False),
        (attrs("M", "HE", "HS"), False, False),
        (attrs("M", "Y", "HE", "HS"), False, True),
        (attrs("M", "O", "HE", "HS"), False, True),
        (attrs("F", "Mi", "HE", "A"), True, True),
        (attrs("F", "Mi", "Sp", "HS"), False, True),
    ]
    assert all(h.polarity == "+" for h in hypotheses(datasets.credit(), "positive"))


def test_negative_hypotheses_pinned():
    got = [(h.intent, h.minimal, h.maximal)
           for h in hypotheses(datasets.credit(), "negative")]
    assert got == [
        (attrs("M", "Y", "HE", "L"), True, True),
        (attrs("F", "Mi", "Se", "A"), True, True),
        (attrs("F", "O", "Sp", "A"), True, True),
    ]


def test_falsified_candidates_excluded():
    tc = datasets.credit()
    # {HE} generalises g1, g3, g4 but g5 carries HE on the negative side
    assert attrs("HE") <= tc.base.row(4)
    assert attrs("HE") not in {h.intent for h in hypotheses(tc, "positive")}
    # {A, F} generalises g6, g7 but positive g3 contains both
    assert attrs("A", "F") <= tc.base.row(2)
    assert attrs("A", "F") not in {h.intent for h in hypotheses(tc, "negative")}


def test_single_example_classes():
    base = FormalContext(["p", "n"], ["a", "b"], [[0], [1]])
    tc = TrainingContext(base, ["positive", "negative"])
    assert [h.intent for h in hypotheses(tc, "positive")] == [frozenset({0})]
    assert [h.intent for h in hypotheses(tc, "negative")] == [frozenset({1})]


def test_hypotheses_polarity_handling():
    tc = datasets.credit()
    assert hypotheses(tc, "+") == hypotheses(tc, "positive")
    assert hypotheses(tc, "-") == hypotheses(tc, "negative")
    with pytest.raises(InputError, match="polarity must be positive or negative"):
        hypotheses(tc, "both")
    lopsided = TrainingContext(
        FormalContext(["g"], ["a"], [[0]]), ["positive"]
    )
    with pytest.raises(InputError, match="both positive and negative examples"):
        hypotheses(lopsided, "positive")


def test_hypotheses_match_oracle_random():
    rng = random.Random(71)
    trials = 0
    while trials < 15:
        n, m = rng.randint(2, 6), rng.randint(1, 5)
        rows = oracles.random_context(rng, n, m)
        tags = [rng.choice(["positive", "negative", "tau"]) for _ in range(n)]
        if "positive" not in tags or "negative" not in tags:
            continue
        trials += 1
        base = FormalContext(
            [str(i) for i in range(n)],
            [str(j) for j in range(m)],
            [sorted(r) for r in rows],
        )
        tc = TrainingContext(base, tags)
        pos = [i for i, t in enumerate(tags) if t == "positive"]
        neg = [i for i, t in enumerate(tags) if t == "negative"]
        assert {h.intent for h in hypotheses(tc, "positive")} == \
            oracles.jsm_hypotheses(rows, m, pos, neg)
        assert {h.intent for h in hypotheses(tc, "negative")} == \
            oracles.jsm_hypotheses(rows, m, neg, pos)


def test_classify_rules():
    pos = [frozenset({0})]
    neg = [frozenset({1})]
    assert classify(pos, neg, {0, 2}) == "positive"
    assert classify(pos, neg, {1, 2}) == "negative"
    assert classify(pos, neg, {0, 1}) == "contradictory"
    assert classify(pos, neg, {2}) == "undetermined"
    # an example with every attribute triggers both sides
    assert classify(pos, neg, {0, 1, 2}) == "contradictory"
    # hypothesis objects and raw sets both work
    tc = datasets.credit()
    minimal = [h for h in hypotheses(tc, "positive") if h.minimal]
    assert classify(minimal, [], tc.base.row(7)) == "positive"


def test_classify_tau_pinned():
    got = classify_tau(datasets.credit())
    assert list(got) == ["g8", "g9", "g10"]
    verdict, witnesses = got["g8"]
    assert verdict == "positive"
    assert [(h.polarity, h.intent) for h in witnesses] == [("+", attrs("HS"))]
    assert got["g9"] == ("undetermined", [])
    assert got["g10"] == ("undetermined", [])


def test_classification_minimal_hypotheses_suffice():
    rng = random.Random(73)
    trials = 0
    while trials < 10:
        n, m = rng.randint(3, 6), rng.randint(1, 5)
        rows = oracles.random_context(rng, n, m)
        tags = [rng.choice(["positive", "negative", "tau"]) for _ in range(n)]
        if "positive" not in tags or "negative" not in tags:
            continue
        trials += 1
        base = FormalContext(
            [str(i) for i in range(n)],
            [str(j) for j in range(m)],
            [sorted(r) for r in rows],
        )
        tc = TrainingContext(base, tags)
        pos = hypotheses(tc, "positive")
        neg = hypotheses(tc, "negative")
        pos_min = [h for h in pos if h.minimal]
        neg_min = [h for h in neg if h.minimal]
        for example in rows:
            full = classify(pos, neg, example)
            assert full == classify(pos_min, neg_min, example)
            assert full == oracles.jsm_classify(
                {h.intent for h in pos}, {h.intent for h in neg}, example
            )


def test_report_pinned():
    assert report(datasets.credit()) == (
        "g8: positive\n"
        "  + HS\n"
        "g9: undetermined\n"
        "g10: undetermined\n"
    )
