"""Query concepts and concept-lattice-based ranking over document contexts.

A query of terms T lands on the concept (T', T''). Documents are ranked by
shortest-path distance between their object concepts and the query concept
in the undirected cover graph; tied documents share a rank.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass

from .context import FormalContext, bits_of
from .errors import InputError, SizeGuardError
from .lattice import ConceptLattice, StabilityScore, stability
from .closure import lectic_key


@dataclass(frozen=True)
class QueryConcept:
    terms: frozenset  # attribute indices as queried
    extent: frozenset
    intent: frozenset


@dataclass(frozen=True)
class RankedResult:
    document: str
    distance: int
    rank: int


def query_concept(ctx: FormalContext, terms) -> QueryConcept:
    """The concept (T', T'') for a set of term labels or indices."""
    indices = set()
    unknown = []
    for term in terms:
        if isinstance(term, int):
            if not 0 <= term < ctx.n_attributes:
                unknown.append(str(term))
            else:
                indices.add(term)
        elif term in ctx.attributes:
            indices.add(ctx.attribute_index(term))
        else:
            unknown.append(str(term))
    if unknown:
        raise InputError("unknown terms: %s" % ", ".join(sorted(unknown)))
    intent_mask = 0
    for j in indices:
        intent_mask |= 1 << j
    extent_mask = ctx.extent_mask(intent_mask)
    return QueryConcept(
        frozenset(indices),
        frozenset(bits_of(extent_mask)),
        frozenset(bits_of(ctx.intent_mask(extent_mask))),
    )


def neighbors(lattice: ConceptLattice, concept_index: int) -> dict:
    """Lower covers refine the query, upper covers enlarge it."""
    return {
        "refinements": list(lattice.lower_covers(concept_index)),
        "enlargements": list(lattice.upper_covers(concept_index)),
    }


def _cover_distances(lattice: ConceptLattice, start: int) -> list:
    adjacency = [[] for _ in lattice.concepts]
    for lo, hi in lattice.covers:
        adjacency[lo].append(hi)
        adjacency[hi].append(lo)
    dist = [None] * len(lattice.concepts)
    dist[start] = 0
    queue = deque([start])
    while queue:
        i = queue.popleft()
        for j in adjacency[i]:
            if dist[j] is None:
                dist[j] = dist[i] + 1
                queue.append(j)
    return dist


def clr_rank(lattice: ConceptLattice, query: QueryConcept) -> list:
    """Documents by cover-graph distance from the query concept; ties share
    a rank (1 + number of strictly closer documents)."""
    ctx = lattice.context
    start = lattice.index_of_extent(query.extent)
    if start is None:
        raise InputError("query concept is not in the lattice")
    dist = _cover_distances(lattice, start)
    per_doc = []
    for g, label in enumerate(ctx.objects):
        concept = lattice.object_concept(g)
        per_doc.append((label, dist[concept]))
    distances = [d for _, d in per_doc]
    out = [
        RankedResult(label, d, 1 + sum(1 for other in distances if other < d))
        for label, d in per_doc
    ]
    out.sort(key=lambda r: (r.distance, r.document))
    return out


def rank_stability_annotate(ctx: FormalContext, lattice: ConceptLattice, cap=None):
    """Stability per concept, sorted descending; concepts whose extent
    exceeds the exact-mode cap are reported separately, not silently dropped."""
    scores = []
    skipped = []
    for i, concept in enumerate(lattice.concepts):
        try:
            if cap is None:
                sigma = stability(ctx, concept)
            else:
                sigma = stability(ctx, concept, cap=cap)
        except SizeGuardError as exc:
            skipped.append((i, str(exc)))
            continue
        scores.append(StabilityScore(i, sigma))
    scores.sort(
        key=lambda s: (
            -s.sigma,
            -len(lattice.concepts[s.concept_index].extent),
            lectic_key(
                sum(1 << g for g in lattice.concepts[s.concept_index].extent),
                ctx.n_objects,
            ),
        )
    )
    return scores, skipped
