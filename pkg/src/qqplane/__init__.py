"""Exact computations with pointed Majid algebras built on Hopf quivers."""
from .abgroup import AbGroup
from .cocycle import Rank1, Rank2, Rank3, check_3cocycle, parse_cocycle
from .cyclo import CycNum, mult_order
from .majid import MajidStructure, Rank1Params, Rank2Params, shuffle

__version__ = "0.1.0"

__all__ = [
    "AbGroup",
    "CycNum",
    "MajidStructure",
    "Rank1",
    "Rank1Params",
    "Rank2",
    "Rank2Params",
    "Rank3",
    "check_3cocycle",
    "mult_order",
    "parse_cocycle",
    "shuffle",
]
