"""Finite abelian groups, rack bundles and modules, semidirect products."""

from .abelian import (
    AbHom,
    FinAbGroup,
    ab_hom,
    hom_add,
    hom_compose,
    hom_neg,
    hom_sub,
    identity_hom,
    is_isomorphism,
    scalar_hom,
    zero_hom,
)
from .bundles import (
    AxiomReport,
    CheckMode,
    RackBundle,
    RackModule,
    constant_bundle,
    constant_module,
    validate_bundle,
    validate_module,
)
from .families import (
    GroupModule,
    alexander_module,
    from_group_module,
    trivial_module,
    validate_group_module,
)
from .semidirect import (
    CocycleRackReport,
    SemidirectLayout,
    cocycle_rack,
    cocycle_violation,
    semidirect_product,
    semidirect_projection,
    semidirect_table,
)

__all__ = [
    "AbHom",
    "AxiomReport",
    "CheckMode",
    "CocycleRackReport",
    "FinAbGroup",
    "GroupModule",
    "RackBundle",
    "RackModule",
    "SemidirectLayout",
    "ab_hom",
    "alexander_module",
    "cocycle_rack",
    "cocycle_violation",
    "constant_bundle",
    "constant_module",
    "from_group_module",
    "hom_add",
    "hom_compose",
    "hom_neg",
    "hom_sub",
    "identity_hom",
    "is_isomorphism",
    "scalar_hom",
    "semidirect_product",
    "semidirect_projection",
    "semidirect_table",
    "trivial_module",
    "validate_bundle",
    "validate_group_module",
    "validate_module",
    "zero_hom",
]
