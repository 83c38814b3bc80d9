"""Record real service exchanges as test fixtures for the browser client.

Runs the fca-service app in-process and captures every request/response pair
the UI performs, byte for byte, plus an independently library-driven session
transcript and a corpus of counterexample pre-check verdicts. Rerun after any
service change: python3 scripts/record_fixtures.py
"""

import json
import os
import random
import sys
import warnings

warnings.filterwarnings("ignore")

from fastapi.testclient import TestClient

from fcakit.context import FormalContext
from fcakit.exploration import ExplorationSession
from fcakit.service import create_app

FIXTURES = os.path.join(os.path.dirname(__file__), "..", "tests", "fixtures")

TRANSPORT = {
    "objects": ["plane", "amphibian car", "catamaran", "car", "submarine"],
    "attributes": ["surface", "air", "water", "underwater"],
    "incidence": [[1], [0, 2], [2], [2, 3], [2, 3]],
}

GEOMETRIC = {
    "objects": ["1", "2", "3", "4"],
    "attributes": ["a", "b", "c", "d"],
    "incidence": [[0, 3], [0, 2], [1, 2], [1, 2, 3]],
}

CUSTOMERS = {
    "objects": ["c1", "c2", "c3", "c4", "c5"],
    "attributes": ["Beer", "Cakes", "Milk", "Müsli", "Chips"],
    "incidence": [[0, 1, 2, 3, 4], [0, 1, 2, 3], [0, 3, 4], [0, 3, 4], [0, 3, 4]],
}

# the full dialog as the wizard drives it: accept, refute with the
# hydroplane, then accept the remaining questions
TRANSPORT_REPLIES = [
    {"accept": True},
    {"counterexample": {"label": "hydroplane", "attributes": ["air", "water"]}},
    {"accept": True},
    {"accept": True},
    {"accept": True},
    {"accept": True},
]


def save(name, data):
    path = os.path.join(FIXTURES, name)
    if isinstance(data, str):
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(data)
    else:
        with open(path, "w", encoding="utf-8") as fh:
            json.dump(data, fh, indent=1, ensure_ascii=False)
            fh.write("\n")
    print("wrote %s" % path)


class Recorder:
    def __init__(self):
        self.client = TestClient(create_app())
        self.exchanges = []

    def call(self, method, path, body=None):
        resp = self.client.request(method, path, json=body)
        self.exchanges.append(
            {
                "method": method,
                "path": path,
                "body": body,
                "status": resp.status_code,
                "text": resp.content.decode("utf-8"),
            }
        )
        return resp


def record_walkthrough():
    rec = Recorder()
    rec.call("POST", "/contexts", TRANSPORT)
    rec.call("POST", "/sessions", {"contextId": "c1"})
    rec.call("GET", "/sessions/s1")
    for reply in TRANSPORT_REPLIES:
        rec.call("POST", "/sessions/s1/answer", reply)
        rec.call("GET", "/sessions/s1")
    final = rec.exchanges[-1]
    assert json.loads(final["text"])["state"] == "finished"
    save("transport_walkthrough.json", rec.exchanges)
    return final["text"]


def record_library_session():
    ctx = FormalContext(
        TRANSPORT["objects"], TRANSPORT["attributes"], TRANSPORT["incidence"]
    )
    session = ExplorationSession(ctx)
    for reply in TRANSPORT_REPLIES:
        if "accept" in reply:
            session.accept()
        else:
            cx = reply["counterexample"]
            session.counterexample(cx["label"], cx["attributes"])
    assert session.state == "finished"
    save("transport_library_session.json", session.to_json())


def record_rejected_answer():
    # a counterexample the service must turn down, for the inline-error path
    rec = Recorder()
    rec.call("POST", "/contexts", TRANSPORT)
    rec.call("POST", "/sessions", {"contextId": "c1"})
    rec.call("POST", "/sessions/s1/answer", {"accept": True})
    rec.call("GET", "/sessions/s1")
    resp = rec.call(
        "POST",
        "/sessions/s1/answer",
        {"counterexample": {"label": "plane", "attributes": ["underwater"]}},
    )
    assert resp.status_code == 422
    save("transport_rejected_answer.json", rec.exchanges)


def record_lattices():
    rec = Recorder()
    rec.call("POST", "/contexts", GEOMETRIC)
    geo = rec.call("GET", "/contexts/c1/lattice")
    save("geometric_context.json", GEOMETRIC)
    save("geometric_lattice.json", geo.json())

    rec.call("POST", "/contexts", CUSTOMERS)
    cust = rec.call("GET", "/contexts/c2/lattice")
    save("customers_context.json", CUSTOMERS)
    save("customers_lattice.json", cust.json())


def candidate_pool(ctx, rng):
    labels = list(ctx.attributes)
    pool = [
        ("fresh", []),
        ("fresh", labels),
        (ctx.objects[0] if ctx.objects else "fresh", labels[:1]),
    ]
    pool.append(("fresh", labels[:1] + ["nosuch"]))
    for _ in range(6):
        label = rng.choice(list(ctx.objects) + ["new-1", "new-2", "o'hare"])
        attrs = [m for m in labels if rng.random() < 0.5]
        pool.append((label, attrs))
    return pool


def record_precheck_corpus():
    rng = random.Random(2026)
    cases = []

    def snapshot(session):
        state = json.loads(session.to_json())
        return state["context"], state["accepted"], state["pending"]

    def probe(session, label, attributes):
        context, accepted, pending = snapshot(session)
        verdict = session.check_counterexample(label, list(attributes))
        cases.append(
            {
                "context": context,
                "accepted": accepted,
                "pending": pending,
                "label": label,
                "attributes": list(attributes),
                "expected": verdict,
            }
        )

    # every state of the transport dialog, with hand-picked candidates
    ctx = FormalContext(
        TRANSPORT["objects"], TRANSPORT["attributes"], TRANSPORT["incidence"]
    )
    session = ExplorationSession(ctx)
    for reply in TRANSPORT_REPLIES:
        for label, attrs in candidate_pool(session.context, rng):
            probe(session, label, attrs)
        probe(session, "hydroplane", ["air", "water"])
        probe(session, "plane", ["underwater"])
        if "accept" in reply:
            session.accept()
        else:
            cx = reply["counterexample"]
            session.counterexample(cx["label"], cx["attributes"])
    probe(session, "anything", ["water"])  # finished: no pending question

    # labels with quotes pin the exact repr the service quotes with
    qctx = FormalContext(["o'hare", 'say "hi"'], ["x", "y"], [[0, 1], [1]])
    session = ExplorationSession(qctx)
    assert session.pending is not None
    probe(session, "o'hare", ["x"])
    probe(session, 'say "hi"', ["x"])
    probe(session, "fresh", ["don't"])
    probe(session, "fresh", ['mix\'d"attr'])

    # random hidden contexts driven to assorted mid-dialog states
    for trial in range(25):
        n, m = rng.randint(1, 5), rng.randint(1, 5)
        hidden = [
            {j for j in range(m) if rng.random() < 0.5} for _ in range(n)
        ]
        attrs = ["m%d" % j for j in range(m)]
        session = ExplorationSession(FormalContext([], attrs, []))
        step = 0
        while session.state == "awaiting_answer" and step < 8:
            for label, cand in candidate_pool(session.context, rng):
                probe(session, label, cand)
            premise = set(session.pending.premise)
            conclusion = set(session.pending.conclusion)
            holds = all(
                conclusion <= row for row in hidden if premise <= row
            )
            if holds:
                session.accept()
            else:
                g = next(
                    i
                    for i, row in enumerate(hidden)
                    if premise <= row and not conclusion <= row
                )
                session.counterexample("h%d" % g, sorted(hidden[g]))
            step += 1

    save("precheck_cases.json", cases)
    print("%d pre-check cases" % len(cases))


def main():
    os.makedirs(FIXTURES, exist_ok=True)
    final_text = record_walkthrough()
    record_library_session()
    with open(
        os.path.join(FIXTURES, "transport_library_session.json"), encoding="utf-8"
    ) as fh:
        assert fh.read() == final_text, "service and library transcripts differ"
    record_rejected_answer()
    record_lattices()
    record_precheck_corpus()


if __name__ == "__main__":
    sys.exit(main())
