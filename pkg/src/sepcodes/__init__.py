"""Verifiers, rate bounds and exhaustive search for separable, frameproof and B2 codes."""

from .bounds import emit_bound_table, rate_bound_b2, rate_bound_reference, rate_bound_sep2
from .chain import ChainReport, choose_prefix_length, verify_proof_chain
from .core import Code, CodeFormatError, CodeParams, PrefixPartition, parse_code, partition_by_prefix, serialize_code, sum_of_squares
from .entropy import EntropyDistribution, entropy, max_constrained_entropy, max_constrained_entropy_numeric
from .phimap import PhiVariant, PhiWord, check_injectivity, phi, phi_word, zero_frequency
from .predicates import (
    CodeProperty,
    b2_extends,
    is_b2,
    is_frameproof,
    is_separable,
    sep2_extends,
)
from .search import SearchConfig, SearchResult, max_code_search, search_table

__version__ = "0.1.0"
