"""Frattini subgroups, subgroup lattices and finite-instance lemma checks."""

from .config import Caps, caps, override_caps, set_caps
from .errors import (
    CapExceeded,
    FrattiniLabError,
    HomomorphismError,
    MembershipError,
    NotNormalError,
    ParseError,
    PreconditionError,
)
from .groups import (
    FiniteGroup,
    Subgroup,
    alternating_group,
    cyclic_group,
    direct_product,
    group_from_matrix_generators,
    group_from_perm_generators,
    symmetric_group,
)
from .homs import Homomorphism, is_normal, quotient
from .lattice import all_subgroups, frattini, frattini_upper_bound, is_maximal, maximal_subgroups
from .reports import LemmaReport

__version__ = "0.1.0"

__all__ = [
    "CapExceeded",
    "Caps",
    "FiniteGroup",
    "FrattiniLabError",
    "Homomorphism",
    "HomomorphismError",
    "LemmaReport",
    "MembershipError",
    "NotNormalError",
    "ParseError",
    "PreconditionError",
    "Subgroup",
    "all_subgroups",
    "alternating_group",
    "caps",
    "cyclic_group",
    "direct_product",
    "frattini",
    "frattini_upper_bound",
    "group_from_matrix_generators",
    "group_from_perm_generators",
    "is_maximal",
    "is_normal",
    "maximal_subgroups",
    "override_caps",
    "quotient",
    "set_caps",
    "symmetric_group",
]
