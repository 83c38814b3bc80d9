"""Formal concept analysis toolkit.

Contexts and scaling, concept lattices, implication bases, association
rules, bi/triclustering, JSM hypothesis learning, interval pattern
structures, Boolean matrix factorization, lattice ranking, and interactive
attribute exploration with an HTTP session service.
"""

from .errors import InputError, SizeGuardError
from .context import (
    FormalContext,
    ManyValuedContext,
    Scale,
    apply_scaling,
    threshold_context,
)
from .contextio import (
    FORMATS,
    context_json_dict,
    guess_format,
    load_context,
    parse_context,
    serialize_context,
)
from .lattice import (
    ConceptLattice,
    FormalConcept,
    StabilityScore,
    build_lattice,
    close_by_one,
    iceberg,
    is_concept,
    next_closure_concepts,
    stability,
)
from .implications import (
    Implication,
    ImplicationBase,
    duquenne_guigues_base,
    entails,
    fd_inverse_context,
    fd_pair_context,
    format_implications,
    generator_cover,
    holds,
    implication_closure,
)
from .rules import (
    AssociationRule,
    apriori,
    apriori_gen,
    extract_rules,
    frequent_closed,
    frequent_maximal,
    luxenburger_base,
    rules_to_csv,
)
from .biclustering import (
    OABicluster,
    TriContext,
    Tricluster,
    bicluster_density,
    is_triconcept,
    oa_biclusters,
    prime_oac_triclusters,
)
from .jsm import Hypothesis, TrainingContext, classify, classify_tau, hypotheses
from .patterns import (
    TOP,
    IntervalVector,
    PatternConcept,
    PatternStructure,
    derive_objects,
    derive_pattern,
    interval_meet,
    pattern_concepts,
    pattern_leq,
)
from .bmf import (
    BooleanFactorization,
    BooleanMatrix,
    boolean_product,
    factorize,
    weighted_projection,
)
from .ranking import (
    QueryConcept,
    RankedResult,
    clr_rank,
    neighbors,
    query_concept,
    rank_stability_annotate,
)
from .exploration import ExplorationSession, answer, next_question, start_session

__version__ = "0.1.0"

__all__ = [
    "AssociationRule",
    "BooleanFactorization",
    "BooleanMatrix",
    "ConceptLattice",
    "ExplorationSession",
    "FORMATS",
    "FormalConcept",
    "FormalContext",
    "Hypothesis",
    "Implication",
    "ImplicationBase",
    "InputError",
    "IntervalVector",
    "ManyValuedContext",
    "OABicluster",
    "PatternConcept",
    "PatternStructure",
    "QueryConcept",
    "RankedResult",
    "Scale",
    "SizeGuardError",
    "StabilityScore",
    "TOP",
    "TrainingContext",
    "TriContext",
    "Tricluster",
    "answer",
    "apply_scaling",
    "apriori",
    "apriori_gen",
    "bicluster_density",
    "boolean_product",
    "build_lattice",
    "classify",
    "classify_tau",
    "close_by_one",
    "clr_rank",
    "context_json_dict",
    "derive_objects",
    "derive_pattern",
    "duquenne_guigues_base",
    "entails",
    "extract_rules",
    "factorize",
    "fd_inverse_context",
    "fd_pair_context",
    "format_implications",
    "frequent_closed",
    "frequent_maximal",
    "generator_cover",
    "guess_format",
    "holds",
    "hypotheses",
    "iceberg",
    "implication_closure",
    "interval_meet",
    "is_concept",
    "is_triconcept",
    "load_context",
    "luxenburger_base",
    "neighbors",
    "next_closure_concepts",
    "next_question",
    "oa_biclusters",
    "parse_context",
    "pattern_concepts",
    "pattern_leq",
    "prime_oac_triclusters",
    "query_concept",
    "rank_stability_annotate",
    "rules_to_csv",
    "serialize_context",
    "stability",
    "start_session",
    "threshold_context",
    "weighted_projection",
]
