"""Decipherability structure of variable-length codes.

Analyses for finite and regular codes: unique decipherability
(Sardinas-Patterson with witnesses), coding partitions and their
complete lattice, canonical decomposition into an unambiguous component
and totally ambiguous components, free products of submonoids, and
maximality / completeness / fullness of generated monoids.
"""

from .errors import (
    AlphabetMismatchError,
    InputError,
    PartfactError,
    PreconditionError,
    RegexSyntaxError,
    StateCapExceededError,
)
from .finite_code import (
    Factorization,
    FiniteCode,
    Partition,
    PFactorization,
    PrimeRelation,
    brute_force_oracle,
    canonical_coding_partition,
    canonical_partition,
    characteristic_partition,
    cooccurrence_pairs,
    cooccurrence_witness_bound,
    enumerate_prime_relations,
    is_coding,
    is_totally_ambiguous,
    p_factorize,
    sp_is_ud,
)
from .fsa import Fsa, regex_to_fsa, set_state_cap, state_cap
from .lattice import all_coding_partitions, coding_join, coding_meet, leq
from .regular import (
    RegularCode,
    RegularMonoid,
    RegularPartition,
    base,
    canonical_free_factorization,
    coding_ambiguity_witness,
    completeness_witness,
    extension_witness,
    free_product_check,
    gen_ud,
    is_base,
    is_complete,
    is_dense,
    is_full,
    is_maximal,
    is_maximal_ud,
    is_submonoid,
    is_thin,
    lemma2_check,
    regular_is_coding,
    regular_is_ud,
    ud_ambiguity_witness,
)
from .words import Alphabet, Word, is_factor, is_unbordered, left_quotient_word

__version__ = "0.1.0"

__all__ = [
    "Alphabet",
    "Word",
    "is_factor",
    "is_unbordered",
    "left_quotient_word",
    "Fsa",
    "regex_to_fsa",
    "state_cap",
    "set_state_cap",
    "FiniteCode",
    "Factorization",
    "PrimeRelation",
    "Partition",
    "PFactorization",
    "sp_is_ud",
    "enumerate_prime_relations",
    "cooccurrence_pairs",
    "cooccurrence_witness_bound",
    "characteristic_partition",
    "canonical_partition",
    "canonical_coding_partition",
    "is_coding",
    "is_totally_ambiguous",
    "p_factorize",
    "brute_force_oracle",
    "leq",
    "coding_meet",
    "coding_join",
    "all_coding_partitions",
    "RegularCode",
    "RegularMonoid",
    "RegularPartition",
    "is_submonoid",
    "base",
    "is_base",
    "is_dense",
    "is_thin",
    "is_complete",
    "regular_is_ud",
    "ud_ambiguity_witness",
    "regular_is_coding",
    "coding_ambiguity_witness",
    "free_product_check",
    "completeness_witness",
    "extension_witness",
    "is_maximal",
    "is_full",
    "is_maximal_ud",
    "lemma2_check",
    "gen_ud",
    "canonical_free_factorization",
    "PartfactError",
    "InputError",
    "RegexSyntaxError",
    "AlphabetMismatchError",
    "StateCapExceededError",
    "PreconditionError",
]
