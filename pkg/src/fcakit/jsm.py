"""JSM-style hypothesis learning on a formal context.

Training objects carry a polarity tag: positive, negative, or tau (the
undetermined ones to classify). A positive hypothesis is a closed intent of
the positive subcontext that is not contained in any negative example's
intent; negative hypotheses are symmetric. Tau objects never take part in
hypothesis generation.
"""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass

from .context import FormalContext, bits_of, mask_of
from .contextio import _CSV_BLANK
from .errors import InputError
from .lattice import close_by_one

POSITIVE = "positive"
NEGATIVE = "negative"
TAU = "tau"

_TAG_TOKENS = {"+": POSITIVE, "-": NEGATIVE, "tau": TAU}


@dataclass(frozen=True)
class Hypothesis:
    polarity: str  # "+" or "-"
    intent: frozenset
    minimal: bool
    maximal: bool


class TrainingContext:
    """A formal context whose objects are tagged positive, negative or tau."""

    def __init__(self, base: FormalContext, tags, target_label="w"):
        self.base = base
        tags = tuple(tags)
        if len(tags) != base.n_objects:
            raise InputError(
                "expected %d tags, got %d" % (base.n_objects, len(tags))
            )
        bad = sorted({t for t in tags if t not in (POSITIVE, NEGATIVE, TAU)})
        if bad:
            raise InputError("unknown polarity tags: %s" % ", ".join(map(str, bad)))
        if target_label in base.attributes:
            raise InputError(
                "target label %r collides with an attribute" % target_label
            )
        self.tags = tags
        self.target_label = target_label

    def indices(self, tag) -> tuple:
        return tuple(i for i, t in enumerate(self.tags) if t == tag)

    @property
    def positive_indices(self):
        return self.indices(POSITIVE)

    @property
    def negative_indices(self):
        return self.indices(NEGATIVE)

    @property
    def tau_indices(self):
        return self.indices(TAU)

    @classmethod
    def from_csv(cls, text: str) -> "TrainingContext":
        """First row: object column, attributes, then the target column.

        Target cells use the tokens +, - and tau.
        """
        rows = list(csv.reader(io.StringIO(text)))
        rows = [row for row in rows if any(cell.strip() for cell in row)]
        if len(rows) < 2:
            raise InputError("training CSV needs a header and at least one row")
        header = [cell.strip() for cell in rows[0]]
        if len(header) < 3:
            raise InputError("training CSV needs attribute and target columns")
        attributes = header[1:-1]
        target_label = header[-1]
        objects, incidence, tags = [], [], []
        for lineno, row in enumerate(rows[1:], start=2):
            row = [cell.strip() for cell in row]
            if len(row) != len(header):
                raise InputError(
                    "line %d: expected %d cells, got %d"
                    % (lineno, len(header), len(row))
                )
            token = row[-1]
            if token not in _TAG_TOKENS:
                raise InputError(
                    "line %d: target must be one of +, -, tau, got %r"
                    % (lineno, token)
                )
            objects.append(row[0])
            incidence.append(
                [j for j, cell in enumerate(row[1:-1]) if cell not in _CSV_BLANK]
            )
            tags.append(_TAG_TOKENS[token])
        base = FormalContext(objects, attributes, incidence)
        return cls(base, tags, target_label)


def _normalize_polarity(polarity) -> str:
    mapping = {"+": POSITIVE, POSITIVE: POSITIVE, "-": NEGATIVE, NEGATIVE: NEGATIVE}
    if polarity not in mapping:
        raise InputError("polarity must be positive or negative, got %r" % (polarity,))
    return mapping[polarity]


def hypotheses(tc: TrainingContext, polarity) -> list:
    """All hypotheses of one polarity, minimal and maximal members flagged."""
    polarity = _normalize_polarity(polarity)
    if not tc.positive_indices or not tc.negative_indices:
        raise InputError("training needs both positive and negative examples")
    own = tc.indices(polarity)
    opposite = tc.indices(NEGATIVE if polarity == POSITIVE else POSITIVE)
    sub = tc.base.subcontext(own)
    opposite_intents = [tc.base.row_mask(g) for g in opposite]
    intents = []
    for concept in close_by_one(sub):
        if not concept.extent:
            continue  # a hypothesis must describe at least one example
        mask = mask_of(concept.intent)
        if any(mask & ~opp == 0 for opp in opposite_intents):
            continue  # falsified by an opposite-class example
        intents.append(frozenset(concept.intent))
    sign = "+" if polarity == POSITIVE else "-"
    out = []
    for intent in intents:
        minimal = not any(other < intent for other in intents)
        maximal = not any(intent < other for other in intents)
        out.append(Hypothesis(sign, intent, minimal, maximal))
    out.sort(key=lambda h: (len(h.intent), sorted(h.intent)))
    return out


def classify(pos_hyps, neg_hyps, example_intent) -> str:
    """Verdict for one example intent given both hypothesis lists."""
    intent = frozenset(example_intent)
    def contained(hyps):
        return any(
            (h.intent if isinstance(h, Hypothesis) else frozenset(h)) <= intent
            for h in hyps
        )
    pos = contained(pos_hyps)
    neg = contained(neg_hyps)
    if pos and neg:
        return "contradictory"
    if pos:
        return POSITIVE
    if neg:
        return NEGATIVE
    return "undetermined"


def classify_tau(tc: TrainingContext) -> dict:
    """Verdict and witnessing minimal hypotheses for every tau object."""
    pos = [h for h in hypotheses(tc, POSITIVE) if h.minimal]
    neg = [h for h in hypotheses(tc, NEGATIVE) if h.minimal]
    out = {}
    for g in tc.tau_indices:
        intent = frozenset(bits_of(tc.base.row_mask(g)))
        verdict = classify(pos, neg, intent)
        witnesses = [h for h in pos + neg if h.intent <= intent]
        out[tc.base.objects[g]] = (verdict, witnesses)
    return out


def report(tc: TrainingContext) -> str:
    """One block per tau object: verdict, then the hypotheses that matched."""
    labels = tc.base.attributes
    lines = []
    for label, (verdict, witnesses) in classify_tau(tc).items():
        lines.append("%s: %s" % (label, verdict))
        for h in witnesses:
            lines.append(
                "  %s %s" % (h.polarity, " ".join(labels[j] for j in sorted(h.intent)))
            )
    return "\n".join(lines) + "\n"
