"""Exact computation for subsequence-occurrence statistics of words.

Counting and enumeration of pattern occurrences, exhaustive extremal
tables with growth-constant windows, LCS tools with permutation fast
paths, signed-lexicographic block constructions with their property
checkers, embedding shape analysis, and recount-verified lower-bound
certificates.  All arithmetic is exact (Python integers); floats never
carry results.
"""

from .certify import (
    BlockDecomposition,
    Certificate,
    TripleFinding,
    best_triple,
    certify_word,
    chained_certificate,
    decompose,
    disjoint_triples,
    duplicate_letter_certificate,
    lcs_pair_certificate,
    recommended_parameters,
)
from .construction import (
    ConstructionWord,
    TupleAlphabet,
    agreement_set,
    base_sign_vectors,
    build_construction_word,
    build_permutation,
    parse_signs,
    sign_vector_at,
    signed_key,
    signs_to_text,
    single_sign_mutations,
    verify_lemma_intermediate,
    verify_permutation_properties,
    verify_sign_properties,
)
from .counting import (
    EmbeddingMap,
    count_occurrences,
    enumerate_embeddings,
    max_occurrences,
    max_occurrences_of_length,
    occurrence_profile,
    sum_over_lengths,
    validate_embedding,
)
from .errors import BudgetError, ContractError, NotApplicable, WordRangeError
from .extremal import (
    ExtremalRecord,
    MuWindow,
    best_window,
    check_submultiplicativity,
    cross_compare,
    extremal_table,
    extremal_value,
    iroot,
    known_record,
    mu_upper_from_profile,
    mu_window,
    root_decimal,
)
from .lcs import (
    check_triple_product,
    is_permutation_word,
    lcs2,
    lcs3,
    multi_lcs,
    permutation_chain_lcs,
)
from .shapes import (
    ShapeSuiteReport,
    decompose_shape,
    e_set,
    e_subsample,
    embedding_profile,
    run_break_bound_suite,
    run_claim_suite,
    shape_of,
)
from .words import (
    Interval,
    Word,
    canonical_key,
    concat,
    dump_words,
    from_ids,
    is_subsequence,
    load_words,
    normalize,
    power,
    relabel,
    reverse,
    subword,
    to_text,
    word,
)

__version__ = "0.1.0"
