"""Exact finite-scale toolkit for generalized Heisenberg groups, Mumford maps,
cocycles and symplectic self-dualities."""

from .abelian import (FiniteAbelianGroup, GroupElement, Homomorphism, RationalResidue,
                      SubgroupView, canonical_form, cyclic, dual_group, find_complement,
                      hom_group, subgroup_closure)
from .bilinear import BilinearForm, classify_form, curry, forms_isomorphic
from .config import bound, get_bound, set_bound
from .errors import (BoundExceeded, ConsistencyError, HeiskitError, InputError, NotSeparated,
                     NotSymplectic, ParentMismatch)
from .grouptable import (TableGroup, abelian_structure, cocycle_from_section,
                         factorized_commutator, group_basics, maximal_abelian_subgroups,
                         mumford_from_cocycle, recognize_heisenberg)
from .gspec import parse_spec
from .heisenberg import (HeisenbergGroup, center_and_derived, embed_standard, is_mumford_group,
                         is_reflexive, mackey_weil, mumford_map, standard_heisenberg)
from .symplectic import (SelfDuality, dualities_isomorphic, is_symplectic,
                         maximal_isotropic_extend, mumford_group_from_duality,
                         standard_self_duality, symplectic_decompose)

__all__ = [
    "BilinearForm",
    "BoundExceeded",
    "ConsistencyError",
    "FiniteAbelianGroup",
    "GroupElement",
    "HeisenbergGroup",
    "HeiskitError",
    "Homomorphism",
    "InputError",
    "NotSeparated",
    "NotSymplectic",
    "ParentMismatch",
    "RationalResidue",
    "SelfDuality",
    "SubgroupView",
    "TableGroup",
    "abelian_structure",
    "bound",
    "canonical_form",
    "center_and_derived",
    "classify_form",
    "cocycle_from_section",
    "curry",
    "cyclic",
    "dual_group",
    "dualities_isomorphic",
    "embed_standard",
    "factorized_commutator",
    "find_complement",
    "forms_isomorphic",
    "get_bound",
    "group_basics",
    "hom_group",
    "is_mumford_group",
    "is_reflexive",
    "is_symplectic",
    "mackey_weil",
    "maximal_abelian_subgroups",
    "maximal_isotropic_extend",
    "mumford_from_cocycle",
    "mumford_group_from_duality",
    "mumford_map",
    "parse_spec",
    "recognize_heisenberg",
    "set_bound",
    "standard_heisenberg",
    "standard_self_duality",
    "subgroup_closure",
    "symplectic_decompose",
]

__version__ = "0.1.0"
