"""椭圆单位零化子：群环、模 U、根的提取与指数公式"""

__version__ = "1.0.0"

from .errors import AlgebraError, ErrorKind, ValidationError
from .group_ring import CyclicGroupRing, GroupRingElement, gr_mul
from .frame import RamificationInstance, GroupData, validate
from .module import SMModule, build_U
from .annihilator import build_levels, unit_lattices, index_check, annihilator_transfer

__all__ = [
    # Errors
    "AlgebraError",
    "ErrorKind",
    "ValidationError",
    # Group ring
    "CyclicGroupRing",
    "GroupRingElement",
    "gr_mul",
    # Frame
    "RamificationInstance",
    "GroupData",
    "validate",
    # Module
    "SMModule",
    "build_U",
    # Annihilator
    "build_levels",
    "unit_lattices",
    "index_check",
    "annihilator_transfer",
]
