"""esnkit: finite computational algebra for restriction semigroups,
inductive categories, their premorphism classes, and the history expansion
of inductive groupoids, verified by exhaustive enumeration at desk scale.
"""
from .core import BudgetExceeded, Check, Failure, MalformedInputError, VerificationError
from .semigroups import (
    DistinguishedSemilattice,
    EquivalenceRelation,
    FiniteSemigroup,
    InverseCertificate,
    RestrictionStructure,
    attach_inverse,
    check_associativity,
    check_inverse,
    check_plus_star_identities,
    derive_restriction,
    natural_order,
    tilde_relations,
    validate_semilattice,
)
from .partial_maps import (
    KIND_I,
    KIND_PT,
    KIND_PT_STAR,
    PartialMap,
    build_monoid,
    check_unary_closure,
    compose,
    domain_projection,
)
from .categories import (
    FiniteCategory,
    corestrict,
    pseudoproduct,
    restrict,
    validate_category,
    validate_groupoid,
    validate_inductive,
    validate_ordered,
)
from .esn import (
    EsnPair,
    category_of,
    inverse_specialization,
    roundtrip_category,
    roundtrip_semigroup,
    semigroup_of,
)
from .arrows import (
    ArrowClassification,
    ElementMap,
    classify_functor_map,
    classify_semigroup_map,
    compose_maps,
    enumerate_maps,
    hasse_report,
    verify_transfer_theorems,
)
from .szendrei import SzElement, SzExpansion, build_sz, find_unique_lift, iota, star_of

__version__ = "0.1.0"
