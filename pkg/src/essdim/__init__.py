"""Essential dimension of finite p-groups from the K_i / C_i chain."""

from .chains import (
    ChainProfile,
    ClassificationVerdict,
    chain_profile,
    c_chain,
    classify_ed_le_p,
    divisibility_checks,
    essential_dimension,
    k_chain,
)
from .class2 import SkewForm, class2_bounds, commutator_forms, isotropic_subgroup
from .errors import EssDimError
from .group import (
    ElementaryAbelianView,
    FieldDescriptor,
    FiniteGroup,
    Subgroup,
    center,
    commutator_subgroup,
    derived_series,
    direct_product,
    from_cayley_table,
    from_permutations,
    h_prime,
    p_torsion_center,
    power_subgroup,
    promote,
    quotient,
    subgroup_closure,
)
from .groupspec import build_group, parse_group_spec
from .lattice import frattini, intersect_all, maximal_subgroups, subgroups_of_index
from .reps import (
    LinearCharacter,
    MonomialIrrep,
    abelian_basis,
    ass_set,
    irreps_of_dim,
    is_faithful,
    is_induced_irreducible,
    kernel_of_induced,
    linear_characters,
    min_faithful_dim_oracle,
    minimal_faithful_rep,
)

__version__ = "0.1.0"
