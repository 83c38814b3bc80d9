"""Attribute exploration sessions: the question loop, counterexample checks,
JSON persistence and equivalence with the canonical base."""

import json
import random

import pytest

from fcakit.closure import lectic_key
from fcakit.context import FormalContext, mask_of
from fcakit.errors import InputError
from fcakit.exploration import ExplorationSession, answer, next_question, start_session
from fcakit.implications import duquenne_guigues_base, implication_closure
from tests import datasets, oracles


def question_labels(session):
    labels = session.context.attributes
    pending = session.pending
    return (
        {labels[j] for j in pending.premise},
        {labels[j] for j in pending.conclusion},
    )


def run_transport_dialog():
    session = start_session(datasets.transport())
    asked = []
    for premise, conclusion, reply in datasets.TRANSPORT_DIALOG:
        assert session.state == "awaiting_answer"
        asked.append(question_labels(session))
        assert asked[-1] == (premise, conclusion)
        if reply == "accept":
            session.accept()
        else:
            label, attributes = reply
            session.counterexample(label, sorted(attributes))
    return session, asked


def test_transport_dialog_walkthrough():
    session, asked = run_transport_dialog()
    assert session.state == "finished"
    assert session.pending is None
    assert next_question(session) is None
    assert len(asked) == len(datasets.TRANSPORT_DIALOG) == 6
    assert len(session.accepted) == 5
    ctx = session.context
    assert ctx.objects[-1] == "hydroplane"
    assert {ctx.attributes[j] for j in ctx.row(5)} == {"air", "water"}
    # accepting every reposed question yields the canonical base
    assert list(session.accepted) == list(duquenne_guigues_base(ctx).rules)


def test_transcript_records_answers():
    session, _ = run_transport_dialog()
    transcript = session.transcript
    assert len(transcript) == 6
    assert transcript[0] == {
        "answer": "accept",
        "question": {"premise": ["underwater"], "conclusion": ["water"]},
    }
    assert transcript[1] == {
        "answer": "counterexample",
        "question": {"premise": ["air", "water"], "conclusion": ["surface", "underwater"]},
        "label": "hydroplane",
        "attributes": ["air", "water"],
    }
    assert all(t["answer"] == "accept" for t in transcript[2:])


def test_session_start_and_validation():
    session = start_session(datasets.transport())
    assert session.state == "awaiting_answer"
    assert question_labels(session) == ({"underwater"}, {"water"})
    assert session.accepted == ()
    with pytest.raises(InputError, match="exploration needs at least one attribute"):
        ExplorationSession(FormalContext(["g"], [], [[]]))
    fresh = ExplorationSession(FormalContext([], ["a", "b"], []))
    # with no objects everything follows from anything
    assert question_labels(fresh) == (set(), {"a", "b"})


def test_no_pending_question_after_finish():
    session, _ = run_transport_dialog()
    with pytest.raises(InputError, match="no pending question to accept"):
        session.accept()
    with pytest.raises(InputError, match="no pending question to refute"):
        session.counterexample("boat", ["water"])
    assert session.check_counterexample("boat", ["water"]) == {
        "ok": False,
        "reasons": ["no pending question"],
    }


def test_check_counterexample_reasons():
    session = start_session(datasets.transport())
    session.accept()
    session.counterexample("hydroplane", ["air", "water"])
    session.accept()
    # pending question is now surface -> water
    assert question_labels(session) == ({"surface"}, {"water"})
    assert session.check_counterexample("hovercraft", ["surface", "air"]) == {
        "ok": True,
        "reasons": [],
    }
    assert session.check_counterexample("plane", ["surface", "air"]) == {
        "ok": False,
        "reasons": ["object label 'plane' is already used"],
    }
    assert session.check_counterexample("boat", ["air"]) == {
        "ok": False,
        "reasons": ["missing premise attributes: surface"],
    }
    assert session.check_counterexample("ferry", ["surface", "water"]) == {
        "ok": False,
        "reasons": ["the object satisfies the pending implication"],
    }
    assert session.check_counterexample("boat3", ["surface", "underwater"]) == {
        "ok": False,
        "reasons": ["violates the accepted implication underwater -> water"],
    }
    assert session.check_counterexample("x", ["nosuch"]) == {
        "ok": False,
        "reasons": ["unknown attribute label: 'nosuch'"],
    }
    assert session.check_counterexample("x", [7]) == {
        "ok": False,
        "reasons": ["attribute index 7 out of range"],
    }


def test_counterexample_rejection_joins_reasons():
    session = start_session(datasets.transport())
    session.accept()
    session.counterexample("hydroplane", ["air", "water"])
    session.accept()
    with pytest.raises(
        InputError,
        match="missing premise attributes: surface; "
        "violates the accepted implication underwater -> water",
    ):
        session.counterexample("boat", ["underwater"])
    # a rejected counterexample leaves the session untouched
    assert session.context.n_objects == 6
    assert question_labels(session) == ({"surface"}, {"water"})


def test_answer_protocol():
    session = start_session(datasets.transport())
    with pytest.raises(InputError, match="verdict must be a mapping"):
        answer(session, "yes")
    with pytest.raises(InputError, match="verdict must contain 'accept' or 'counterexample'"):
        answer(session, {})
    with pytest.raises(InputError, match="counterexample needs 'label' and 'attributes'"):
        answer(session, {"counterexample": {"label": "x"}})
    with pytest.raises(InputError, match="counterexample needs 'label' and 'attributes'"):
        answer(session, {"counterexample": "x"})
    answer(session, {"accept": True})
    assert len(session.accepted) == 1
    answer(session, {"counterexample": {"label": "hydroplane", "attributes": ["air", "water"]}})
    assert session.context.n_objects == 6


def test_session_json_round_trip():
    session = start_session(datasets.transport())
    for _, _, reply in datasets.TRANSPORT_DIALOG:
        blob = session.to_json()
        resumed = ExplorationSession.from_json(blob)
        assert resumed.to_json() == blob
        assert resumed.state == session.state
        assert resumed.accepted == session.accepted
        if reply == "accept":
            session.accept()
            resumed.accept()
        else:
            label, attributes = reply
            session.counterexample(label, sorted(attributes))
            resumed.counterexample(label, sorted(attributes))
        assert resumed.to_json() == session.to_json()
    final = session.to_json()
    assert session.state == "finished"
    assert ExplorationSession.from_json(final).to_json() == final


def test_session_json_validation():
    session = start_session(datasets.transport())
    session.accept()
    blob = session.to_json()

    def tweaked(**kw):
        data = json.loads(blob)
        data.update(kw)
        return json.dumps(data)

    with pytest.raises(InputError, match="bad session JSON"):
        ExplorationSession.from_json("not json{")
    missing = {k: v for k, v in json.loads(blob).items() if k != "accepted"}
    with pytest.raises(InputError, match="session JSON is missing 'accepted'"):
        ExplorationSession.from_json(json.dumps(missing))
    with pytest.raises(InputError, match="finished session cannot have a pending question"):
        ExplorationSession.from_json(tweaked(state="finished"))
    with pytest.raises(InputError, match="awaiting session needs a pending question"):
        ExplorationSession.from_json(tweaked(pending=None))
    with pytest.raises(InputError, match="unknown session state 'weird'"):
        ExplorationSession.from_json(tweaked(state="weird"))
    with pytest.raises(InputError, match="pending question has an empty conclusion"):
        ExplorationSession.from_json(
            tweaked(pending={"premise": ["air", "water"], "conclusion": []})
        )
    with pytest.raises(InputError, match="pending conclusion does not match the context"):
        ExplorationSession.from_json(
            tweaked(pending={"premise": ["air", "water"], "conclusion": ["surface"]})
        )
    with pytest.raises(
        InputError, match="pending premise is not closed under the accepted implications"
    ):
        ExplorationSession.from_json(
            tweaked(pending={"premise": ["underwater"], "conclusion": ["water"]})
        )
    with pytest.raises(InputError, match="an accepted implication fails in the context"):
        ExplorationSession.from_json(
            tweaked(accepted=[{"premise": ["underwater"], "conclusion": ["surface"]}])
        )


def test_progress_is_monotone():
    session = start_session(datasets.transport())
    last_key = -1
    answers = 0
    while session.state == "awaiting_answer":
        n_attrs = session.context.n_attributes
        key = lectic_key(mask_of(session.pending.premise), n_attrs)
        assert key >= last_key
        last_key = key
        before = len(session.accepted) + session.context.n_objects
        if session.check_counterexample("hydroplane", ["air", "water"])["ok"]:
            session.counterexample("hydroplane", ["air", "water"])
        else:
            session.accept()
        answers += 1
        # every answer adds exactly one rule or one object
        assert len(session.accepted) + session.context.n_objects == before + 1
    assert answers == 6


def test_exploration_matches_hidden_context():
    # an expert answering from a hidden context ends with a base whose
    # closures agree with the hidden closures on every attribute set
    rng = random.Random(109)
    for _ in range(15):
        n_attrs = rng.randint(1, 5)
        hidden = oracles.random_context(rng, rng.randint(1, 6), n_attrs, density=0.5)
        names = ["m%d" % j for j in range(n_attrs)]
        session = ExplorationSession(FormalContext([], names, []))
        rounds = 0
        while session.state == "awaiting_answer":
            rounds += 1
            assert rounds < 300
            premise = set(session.pending.premise)
            conclusion = set(session.pending.conclusion)
            closed = oracles.closure_attrs(hidden, n_attrs, premise)
            if conclusion <= closed:
                session.accept()
            else:
                g = next(
                    i
                    for i, row in enumerate(hidden)
                    if premise <= row and not conclusion <= row
                )
                session.counterexample("h%d" % g, sorted(hidden[g]))
        final = session.context
        assert list(session.accepted) == list(duquenne_guigues_base(final).rules)
        for subset in oracles.subsets(range(n_attrs)):
            assert implication_closure(session.accepted, set(subset)) == frozenset(
                oracles.closure_attrs(hidden, n_attrs, set(subset))
            )
        hidden_rows = [set(r) for r in hidden]
        for i in range(final.n_objects):
            assert set(final.row(i)) in hidden_rows
