"""Finite abelian groups as ordered products of cyclic factors."""
from __future__ import annotations

import re
from dataclasses import dataclass
from itertools import product
from math import gcd, prod

from .cyclo import lcm

DEFAULT_ENUM_CAP = 10_000

GrpElt = tuple  # exponent tuple, componentwise reduced


@dataclass(frozen=True)
class AbGroup:
    """Z_{m1} x ... x Z_{mk}; elements are exponent tuples."""

    factor_orders: tuple[int, ...]

    def __post_init__(self):
        orders = tuple(int(m) for m in self.factor_orders)
        if not orders:
            raise ValueError("a group needs at least one cyclic factor")
        if any(m < 1 for m in orders):
            raise ValueError(f"factor orders must be >= 1, got {orders}")
        object.__setattr__(self, "factor_orders", orders)

    @classmethod
    def parse(cls, text: str) -> "AbGroup":
        """Parse ``Z(m)xZ(n)`` style literals."""
        parts = [p.strip() for p in text.strip().split("x")]
        orders = []
        for p in parts:
            m = re.fullmatch(r"Z\(\s*(\d+)\s*\)", p)
            if not m:
                raise ValueError(f"bad group literal {text!r}")
            orders.append(int(m.group(1)))
        return cls(tuple(orders))

    def __str__(self) -> str:
        return "x".join(f"Z({m})" for m in self.factor_orders)

    @property
    def rank(self) -> int:
        return len(self.factor_orders)

    @property
    def order(self) -> int:
        return prod(self.factor_orders)

    @property
    def identity(self) -> GrpElt:
        return (0,) * self.rank

    def generator(self, i: int) -> GrpElt:
        return tuple(1 % m if k == i else 0 for k, m in enumerate(self.factor_orders))

    def generators(self) -> list[GrpElt]:
        return [self.generator(i) for i in range(self.rank)]

    def elt(self, *exps: int) -> GrpElt:
        if len(exps) == 1 and isinstance(exps[0], (tuple, list)):
            exps = tuple(exps[0])
        self._check_arity(exps)
        return tuple(e % m for e, m in zip(exps, self.factor_orders))

    def _check_arity(self, x) -> None:
        if len(x) != self.rank:
            raise ValueError(f"element {tuple(x)} does not have arity {self.rank} of {self}")

    def contains(self, x) -> bool:
        return len(x) == self.rank and all(0 <= e < m for e, m in zip(x, self.factor_orders))

    def mul(self, x: GrpElt, y: GrpElt) -> GrpElt:
        self._check_arity(x)
        self._check_arity(y)
        return tuple((a + b) % m for a, b, m in zip(x, y, self.factor_orders))

    def inv(self, x: GrpElt) -> GrpElt:
        self._check_arity(x)
        return tuple(-a % m for a, m in zip(x, self.factor_orders))

    def pow(self, x: GrpElt, k: int) -> GrpElt:
        self._check_arity(x)
        return tuple(a * k % m for a, m in zip(x, self.factor_orders))

    def eq(self, x: GrpElt, y: GrpElt) -> bool:
        return self.elt(x) == self.elt(y)

    def element_order(self, x: GrpElt) -> int:
        self._check_arity(x)
        return lcm(*(m // gcd(a, m) for a, m in zip(x, self.factor_orders)))

    def enumerate(self, cap: int = DEFAULT_ENUM_CAP) -> list[GrpElt]:
        if self.order > cap:
            raise OverflowError(f"|G| = {self.order} exceeds enumeration cap {cap}")
        return list(product(*(range(m) for m in self.factor_orders)))

    def index(self, x: GrpElt) -> int:
        """Position of x in :meth:`enumerate` order."""
        idx = 0
        for a, m in zip(x, self.factor_orders):
            idx = idx * m + a
        return idx


def format_elt(x: GrpElt) -> str:
    return "(" + ",".join(str(a) for a in x) + ")"


def parse_elt(text: str) -> GrpElt:
    m = re.fullmatch(r"\s*\(\s*(-?\d+(?:\s*,\s*-?\d+)*)\s*,?\s*\)\s*", text)
    if not m:
        raise ValueError(f"bad group element literal {text!r}")
    return tuple(int(t) for t in m.group(1).split(","))
