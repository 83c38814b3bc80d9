"""Interactive attribute exploration as a resumable session.

The session walks the lectic order of sets closed under the accepted
implications. Whenever such a set is not closed in the working context it
becomes a question; the expert either accepts the implication or supplies a
counterexample object, which joins the context and the question is reposed
with a recomputed conclusion (or skipped if it became trivial). Accepting
every question yields exactly the canonical implication base of the final
context.
"""

from __future__ import annotations

import json

from .closure import next_closed_mask
from .context import FormalContext, bits_of, mask_of
from .contextio import context_json_dict
from .errors import InputError
from .implications import Implication, _RuleEngine

AWAITING = "awaiting_answer"
FINISHED = "finished"


class ExplorationSession:
    """Single-expert exploration state: context, accepted rules, one pending
    question, and the answer transcript."""

    def __init__(self, ctx: FormalContext):
        if ctx.n_attributes == 0:
            raise InputError("exploration needs at least one attribute")
        self._ctx = ctx
        self._accepted = []
        self._engine = _RuleEngine(self._accepted)
        self._cursor = 0
        self._pending = None
        self._state = AWAITING
        self._transcript = []
        self._refresh()

    @property
    def context(self) -> FormalContext:
        return self._ctx

    @property
    def accepted(self) -> tuple:
        return tuple(self._accepted)

    @property
    def pending(self):
        return self._pending

    @property
    def state(self) -> str:
        return self._state

    @property
    def transcript(self) -> tuple:
        return tuple(self._transcript)

    def _refresh(self):
        """Move the cursor to the next question, or finish.

        The cursor always sits on a set closed under the accepted rules;
        sets already closed in the context are skipped silently.
        """
        n = self._ctx.n_attributes
        full = self._ctx.full_attribute_mask
        while True:
            if self._cursor == full:
                self._pending = None
                self._state = FINISHED
                return
            closed = self._ctx.closure_attributes_mask(self._cursor)
            if closed != self._cursor:
                self._pending = Implication(
                    frozenset(bits_of(self._cursor)),
                    frozenset(bits_of(closed & ~self._cursor)),
                )
                self._state = AWAITING
                return
            nxt = next_closed_mask(n, self._engine.close, self._cursor)
            if nxt is None:
                self._cursor = full
            else:
                self._cursor = nxt

    def _question_dict(self) -> dict:
        labels = self._ctx.attributes
        return {
            "premise": [labels[j] for j in sorted(self._pending.premise)],
            "conclusion": [labels[j] for j in sorted(self._pending.conclusion)],
        }

    def accept(self):
        """Confirm the pending implication and advance."""
        if self._state != AWAITING:
            raise InputError("no pending question to accept")
        self._transcript.append(
            {"answer": "accept", "question": self._question_dict()}
        )
        self._accepted.append(self._pending)
        self._engine = _RuleEngine(self._accepted)
        nxt = next_closed_mask(
            self._ctx.n_attributes, self._engine.close, self._cursor
        )
        self._cursor = self._ctx.full_attribute_mask if nxt is None else nxt
        self._refresh()
        return self

    def _attribute_mask(self, attributes) -> int:
        mask = 0
        for a in attributes:
            if isinstance(a, int):
                if not 0 <= a < self._ctx.n_attributes:
                    raise InputError("attribute index %d out of range" % a)
                mask |= 1 << a
            else:
                mask |= 1 << self._ctx.attribute_index(a)
        return mask

    def check_counterexample(self, label, attributes) -> dict:
        """Validity report for a proposed counterexample, without applying it."""
        if self._state != AWAITING:
            return {"ok": False, "reasons": ["no pending question"]}
        try:
            mask = self._attribute_mask(attributes)
        except InputError as exc:
            return {"ok": False, "reasons": [str(exc)]}
        labels = self._ctx.attributes
        reasons = []
        if label in self._ctx.objects:
            reasons.append("object label %r is already used" % label)
        premise = mask_of(self._pending.premise)
        conclusion = mask_of(self._pending.conclusion)
        if premise & ~mask:
            reasons.append(
                "missing premise attributes: %s"
                % " ".join(labels[j] for j in bits_of(premise & ~mask))
            )
        if conclusion & ~mask == 0:
            reasons.append("the object satisfies the pending implication")
        for rule in self._accepted:
            p = mask_of(rule.premise)
            c = mask_of(rule.conclusion)
            if p & ~mask == 0 and c & ~mask:
                reasons.append(
                    "violates the accepted implication %s -> %s"
                    % (
                        " ".join(labels[j] for j in sorted(rule.premise)) or "{}",
                        " ".join(labels[j] for j in sorted(rule.conclusion)),
                    )
                )
        return {"ok": not reasons, "reasons": reasons}

    def counterexample(self, label, attributes):
        """Add a violating object and repose or skip the current question."""
        if self._state != AWAITING:
            raise InputError("no pending question to refute")
        check = self.check_counterexample(label, attributes)
        if not check["ok"]:
            raise InputError("; ".join(check["reasons"]))
        mask = self._attribute_mask(attributes)
        attr_labels = [self._ctx.attributes[j] for j in bits_of(mask)]
        self._transcript.append(
            {
                "answer": "counterexample",
                "question": self._question_dict(),
                "label": label,
                "attributes": attr_labels,
            }
        )
        self._ctx = self._ctx.with_object(label, sorted(bits_of(mask)))
        self._refresh()
        return self

    def to_json(self) -> str:
        labels = self._ctx.attributes

        def rule_dict(rule):
            return {
                "premise": [labels[j] for j in sorted(rule.premise)],
                "conclusion": [labels[j] for j in sorted(rule.conclusion)],
            }

        payload = {
            "context": context_json_dict(self._ctx),
            "accepted": [rule_dict(r) for r in self._accepted],
            "pending": rule_dict(self._pending) if self._pending else None,
            "state": self._state,
            "transcript": list(self._transcript),
        }
        return json.dumps(payload, sort_keys=True, separators=(",", ":"))

    @classmethod
    def from_json(cls, text: str) -> "ExplorationSession":
        try:
            payload = json.loads(text)
        except json.JSONDecodeError as exc:
            raise InputError("bad session JSON: %s" % exc) from None
        for key in ("context", "accepted", "pending", "state", "transcript"):
            if key not in payload:
                raise InputError("session JSON is missing %r" % key)
        ctx_data = payload["context"]
        ctx = FormalContext(
            ctx_data["objects"], ctx_data["attributes"], ctx_data["incidence"]
        )
        session = cls.__new__(cls)
        session._ctx = ctx

        def rule_from(d):
            return Implication(
                frozenset(ctx.attribute_index(a) for a in d["premise"]),
                frozenset(ctx.attribute_index(a) for a in d["conclusion"]),
            )

        session._accepted = [rule_from(d) for d in payload["accepted"]]
        session._engine = _RuleEngine(session._accepted)
        session._transcript = list(payload["transcript"])
        state = payload["state"]
        if state == FINISHED:
            if payload["pending"] is not None:
                raise InputError("finished session cannot have a pending question")
            session._pending = None
            session._state = FINISHED
            session._cursor = ctx.full_attribute_mask
        elif state == AWAITING:
            if payload["pending"] is None:
                raise InputError("awaiting session needs a pending question")
            pending = rule_from(payload["pending"])
            premise = mask_of(pending.premise)
            if not pending.conclusion:
                raise InputError("pending question has an empty conclusion")
            if session._engine.close(premise) != premise:
                raise InputError(
                    "pending premise is not closed under the accepted implications"
                )
            closed = ctx.closure_attributes_mask(premise)
            if closed & ~premise != mask_of(pending.conclusion):
                raise InputError("pending conclusion does not match the context")
            session._pending = pending
            session._state = AWAITING
            session._cursor = premise
        else:
            raise InputError("unknown session state %r" % state)
        for rule in session._accepted:
            extent = ctx.extent_mask(mask_of(rule.premise))
            if extent & ~ctx.extent_mask(mask_of(rule.conclusion)):
                raise InputError("an accepted implication fails in the context")
        return session


def start_session(ctx: FormalContext) -> ExplorationSession:
    return ExplorationSession(ctx)


def next_question(session: ExplorationSession):
    """The pending implication, or None once exploration finished."""
    return session.pending


def answer(session: ExplorationSession, verdict) -> ExplorationSession:
    """Apply one expert answer given as {'accept': true} or
    {'counterexample': {'label': ..., 'attributes': [...]}}."""
    if not isinstance(verdict, dict):
        raise InputError("verdict must be a mapping")
    if verdict.get("accept"):
        return session.accept()
    if "counterexample" in verdict:
        ce = verdict["counterexample"]
        try:
            label, attributes = ce["label"], ce["attributes"]
        except (TypeError, KeyError):
            raise InputError(
                "counterexample needs 'label' and 'attributes'"
            ) from None
        return session.counterexample(label, attributes)
    raise InputError("verdict must contain 'accept' or 'counterexample'")
