"""Exact computation with (sigma, tau)-derivations of group algebras.

Groups are given by Cayley tables or as the integer Heisenberg group
with a ball enumerator; coefficients are Gaussian rationals, so every
answer is exact. The package builds the action groupoid of an
endomorphism pair, enumerates twisted conjugacy classes and
centralizers, constructs inner / quasi-inner / central derivations, and
solves for the full derivation space of a finite group.
"""

from .algebra import AlgebraElement, GaussianRational
from .derivations import (
    AdditiveCharacterOnG,
    DerivationTable,
    Potential,
    central_derivation,
    check_leibniz,
    derivation_space,
    extend_to_word,
    inner_derivation,
    inner_space,
    is_inner,
    is_quasi_inner,
    is_sigma_tau_central,
    quasi_inner_from_potential,
)
from .errors import (
    CenterNotNormal,
    GroupMismatch,
    GroupTooLarge,
    LibraryError,
    NoIdentity,
    NoInverse,
    NotADerivation,
    NotAHomomorphism,
    NotAHomomorphismToC,
    NotASubgroup,
    NotAssociative,
    NotCentralElement,
    NotComposable,
    NotLatinSquare,
    NotSupportedForScope,
    ScopeError,
    ScopeExceeded,
    SpecError,
    UnsupportedParameter,
    UnsupportedSubgroup,
    WellDefinednessError,
    WitnessError,
)
from .groupoid import (
    Character,
    ConjugacyClass,
    GroupoidView,
    Morphism,
    SubgroupDescription,
    character_from_derivation,
    derivation_from_character,
    to_dot,
)
from .groups import (
    Endomorphism,
    Group,
    GroupElement,
    HeisenbergParams,
    all_automorphisms,
    builtin_group,
    identity_endomorphism,
    inner_endomorphism,
    make_endomorphism,
    make_finite_group,
)
from .structure import (
    StructureReport,
    character_space_dimension,
    commutator_subgroup,
    heisenberg_central_family,
    is_fc,
    is_rank2_nilpotent,
    is_sigma_tau_abelian,
    structure_report,
    verify_decomposition,
)

__version__ = "0.1.0"

__all__ = [
    "AdditiveCharacterOnG",
    "AlgebraElement",
    "CenterNotNormal",
    "Character",
    "ConjugacyClass",
    "DerivationTable",
    "Endomorphism",
    "GaussianRational",
    "Group",
    "GroupElement",
    "GroupMismatch",
    "GroupTooLarge",
    "GroupoidView",
    "HeisenbergParams",
    "LibraryError",
    "Morphism",
    "NoIdentity",
    "NoInverse",
    "NotADerivation",
    "NotAHomomorphism",
    "NotAHomomorphismToC",
    "NotASubgroup",
    "NotAssociative",
    "NotCentralElement",
    "NotComposable",
    "NotLatinSquare",
    "NotSupportedForScope",
    "Potential",
    "ScopeError",
    "ScopeExceeded",
    "SpecError",
    "StructureReport",
    "SubgroupDescription",
    "UnsupportedParameter",
    "UnsupportedSubgroup",
    "WellDefinednessError",
    "WitnessError",
    "all_automorphisms",
    "builtin_group",
    "central_derivation",
    "character_from_derivation",
    "character_space_dimension",
    "check_leibniz",
    "commutator_subgroup",
    "derivation_from_character",
    "derivation_space",
    "extend_to_word",
    "heisenberg_central_family",
    "identity_endomorphism",
    "inner_derivation",
    "inner_endomorphism",
    "inner_space",
    "is_fc",
    "is_inner",
    "is_quasi_inner",
    "is_rank2_nilpotent",
    "is_sigma_tau_abelian",
    "is_sigma_tau_central",
    "make_endomorphism",
    "make_finite_group",
    "quasi_inner_from_potential",
    "structure_report",
    "to_dot",
    "verify_decomposition",
]
