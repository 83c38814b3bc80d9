"""HTTP session service for attribute exploration.

Contexts are uploaded once and shared; each exploration session holds its own
working copy. Every mutating request is appended to a JSONL journal, and
replaying the journal on startup reconstructs the exact same store, because
session evolution is deterministic in the answer sequence.
"""

from __future__ import annotations

import argparse
import json
import os
import threading

from fastapi import FastAPI, HTTPException, Response
from fastapi.responses import JSONResponse
from pydantic import BaseModel

from .context import FormalContext
from .errors import InputError, SizeGuardError
from .exploration import ExplorationSession, start_session
from .implications import duquenne_guigues_base, implications_json
from .lattice import build_lattice


class ContextUpload(BaseModel):
    objects: list
    attributes: list
    incidence: list


class SessionCreate(BaseModel):
    contextId: str


class Counterexample(BaseModel):
    label: str
    attributes: list


class AnswerBody(BaseModel):
    accept: bool | None = None
    counterexample: Counterexample | None = None


class SessionStore:
    """In-memory state plus the append-only journal that rebuilds it."""

    def __init__(self, journal_path=None):
        self.contexts = {}
        self.lattices = {}
        self.sessions = {}
        self.session_context = {}
        self.session_locks = {}
        self.next_context = 1
        self.next_session = 1
        self.store_lock = threading.Lock()
        self.journal_lock = threading.Lock()
        self.journal_path = journal_path
        if journal_path and os.path.exists(journal_path):
            self._replay()

    def _replay(self):
        with open(self.journal_path, "r", encoding="utf-8") as fh:
            for lineno, line in enumerate(fh, start=1):
                line = line.strip()
                if not line:
                    continue
                try:
                    event = json.loads(line)
                    self._apply(event)
                except (ValueError, KeyError, InputError) as exc:
                    raise InputError(
                        "journal line %d cannot be replayed: %s" % (lineno, exc)
                    ) from None

    def _apply(self, event):
        kind = event["event"]
        if kind == "context":
            data = event["context"]
            self.contexts[event["id"]] = FormalContext(
                data["objects"], data["attributes"], data["incidence"]
            )
            self.next_context += 1
        elif kind == "session":
            ctx = self.contexts[event["contextId"]]
            self.sessions[event["id"]] = start_session(ctx)
            self.session_context[event["id"]] = event["contextId"]
            self.session_locks[event["id"]] = threading.Lock()
            self.next_session += 1
        elif kind == "answer":
            session = self.sessions[event["id"]]
            verdict = event["verdict"]
            if verdict.get("accept"):
                session.accept()
            else:
                ce = verdict["counterexample"]
                session.counterexample(ce["label"], ce["attributes"])
        elif kind == "delete":
            self.sessions.pop(event["id"], None)
            self.session_context.pop(event["id"], None)
            self.session_locks.pop(event["id"], None)
        else:
            raise InputError("unknown journal event %r" % kind)

    def record(self, event):
        if not self.journal_path:
            return
        with self.journal_lock:
            with open(self.journal_path, "a", encoding="utf-8") as fh:
                fh.write(json.dumps(event, sort_keys=True) + "\n")
                fh.flush()

    def add_context(self, ctx: FormalContext, raw: dict) -> str:
        with self.store_lock:
            cid = "c%d" % self.next_context
            self.next_context += 1
            self.contexts[cid] = ctx
        self.record({"event": "context", "id": cid, "context": raw})
        return cid

    def add_session(self, context_id: str) -> str:
        with self.store_lock:
            if context_id not in self.contexts:
                raise KeyError(context_id)
            sid = "s%d" % self.next_session
            self.next_session += 1
            self.sessions[sid] = start_session(self.contexts[context_id])
            self.session_context[sid] = context_id
            self.session_locks[sid] = threading.Lock()
        self.record({"event": "session", "id": sid, "contextId": context_id})
        return sid


def _state_payload(session: ExplorationSession) -> dict:
    labels = session.context.attributes

    def rule_dict(rule):
        return {
            "premise": [labels[j] for j in sorted(rule.premise)],
            "conclusion": [labels[j] for j in sorted(rule.conclusion)],
        }

    return {
        "state": session.state,
        "pending": rule_dict(session.pending) if session.pending else None,
    }


def create_app(journal_path=None) -> FastAPI:
    app = FastAPI(title="fca exploration service")
    store = SessionStore(journal_path)
    app.state.store = store

    def get_context(context_id: str) -> FormalContext:
        ctx = store.contexts.get(context_id)
        if ctx is None:
            raise HTTPException(status_code=404, detail="unknown context id")
        return ctx

    def get_session(session_id: str) -> ExplorationSession:
        session = store.sessions.get(session_id)
        if session is None:
            raise HTTPException(status_code=404, detail="unknown session id")
        return session

    @app.post("/contexts", status_code=201)
    def upload_context(body: ContextUpload):
        try:
            ctx = FormalContext(body.objects, body.attributes, body.incidence)
        except InputError as exc:
            raise HTTPException(status_code=422, detail=str(exc)) from None
        cid = store.add_context(ctx, body.model_dump())
        return {"contextId": cid}

    @app.post("/sessions", status_code=201)
    def open_session(body: SessionCreate):
        if body.contextId not in store.contexts:
            raise HTTPException(status_code=404, detail="unknown context id")
        try:
            sid = store.add_session(body.contextId)
        except InputError as exc:
            raise HTTPException(status_code=422, detail=str(exc)) from None
        payload = _state_payload(store.sessions[sid])
        payload["sessionId"] = sid
        return payload

    @app.get("/sessions/{session_id}")
    def session_json(session_id: str):
        session = get_session(session_id)
        return Response(content=session.to_json(), media_type="application/json")

    @app.post("/sessions/{session_id}/answer")
    def answer_session(session_id: str, body: AnswerBody):
        lock = store.session_locks.get(session_id)
        if lock is None:
            raise HTTPException(status_code=404, detail="unknown session id")
        with lock:
            session = get_session(session_id)
            has_accept = bool(body.accept)
            has_counter = body.counterexample is not None
            if has_accept == has_counter:
                raise HTTPException(
                    status_code=422,
                    detail="answer with exactly one of accept or counterexample",
                )
            if session.state != "awaiting_answer":
                raise HTTPException(
                    status_code=409, detail="session is not awaiting an answer"
                )
            if has_accept:
                session.accept()
                store.record(
                    {"event": "answer", "id": session_id, "verdict": {"accept": True}}
                )
            else:
                ce = body.counterexample
                check = session.check_counterexample(ce.label, ce.attributes)
                if not check["ok"]:
                    return JSONResponse(
                        status_code=422,
                        content={
                            "detail": "counterexample rejected",
                            "check": check,
                        },
                    )
                session.counterexample(ce.label, ce.attributes)
                store.record(
                    {
                        "event": "answer",
                        "id": session_id,
                        "verdict": {
                            "counterexample": {
                                "label": ce.label,
                                "attributes": list(ce.attributes),
                            }
                        },
                    }
                )
            return _state_payload(session)

    @app.delete("/sessions/{session_id}", status_code=204)
    def delete_session(session_id: str):
        with store.store_lock:
            if session_id not in store.sessions:
                raise HTTPException(status_code=404, detail="unknown session id")
            store.sessions.pop(session_id)
            store.session_context.pop(session_id, None)
            store.session_locks.pop(session_id, None)
        store.record({"event": "delete", "id": session_id})
        return Response(status_code=204)

    @app.get("/contexts/{context_id}/lattice")
    def context_lattice(context_id: str):
        ctx = get_context(context_id)
        if context_id not in store.lattices:
            try:
                store.lattices[context_id] = build_lattice(ctx)
            except SizeGuardError as exc:
                raise HTTPException(status_code=422, detail=str(exc)) from None
        return store.lattices[context_id].to_json_dict()

    @app.get("/contexts/{context_id}/dg-base")
    def context_dg_base(context_id: str):
        ctx = get_context(context_id)
        base = duquenne_guigues_base(ctx)
        return {"rules": implications_json(base.rules, ctx.attributes)}

    return app


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="fca-service", description="attribute exploration HTTP service"
    )
    parser.add_argument("--journal", default=None, help="append-only JSONL journal")
    parser.add_argument("--host", default="127.0.0.1")
    parser.add_argument(
        "--port",
        type=int,
        default=int(os.environ.get("FCA_SERVICE_PORT", "8000")),
    )
    args = parser.parse_args(argv)
    import uvicorn

    uvicorn.run(create_app(args.journal), host=args.host, port=args.port)
    return 0


if __name__ == "__main__":
    import sys

    sys.exit(main())
