"""Decompositions J = A + B: certificates, constructions, screening, searches."""

from .certificate import DecompositionCertificate, PartRecord, UngradedInput, check_part, verify_sum
from .constructions import (
    certify_example1,
    certify_example2,
    certify_jvf_split,
    construct_example1,
    construct_example2,
    construct_jvf_split,
    even_projections,
    example1_claims,
    example1_embedding,
    example2_claims,
    jvf_split_claims,
    jvf_splits,
    swap_matrix,
)
from .embedding import (
    DMINUS1_WITNESS,
    embedding_exists,
    is_graded_homomorphism,
    solve_graded_isomorphism,
    verify_Dminus1_iso,
)
from .screening import (
    RULE_SET_VERSION,
    RULES,
    Candidate,
    CandidatePair,
    Exclusion,
    ScreeningReport,
    enumerate_candidates,
    screen,
)
from .search import NoCanonicalEmbedding, random_conjugate_search
