"""Normalized 3-cocycles on finite abelian groups and their induced 2-cocycles.

Cocycle values are roots of unity, so internally a cocycle is handled through
its integer *exponent* table: ``phi(x, y, z) = zeta_N ** exponent(x, y, z)``
with ``N = cocycle.order``.  Identities between products of values become
congruences between exponents, which lets the exhaustive checks run as numpy
array arithmetic.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from math import gcd

import numpy as np

from ._check import CheckResult
from .abgroup import AbGroup, GrpElt
from .cyclo import CycNum, embed_root, lcm

DEFAULT_GROUP_CAP = 256

__all__ = [
    "Cocycle3",
    "Rank1",
    "Rank2",
    "Rank3",
    "CocycleTable",
    "TwoCocycle",
    "eval3",
    "check_3cocycle",
    "phi_tilde",
    "phi_tilde_explicit",
    "phi_tilde_table",
    "check_2cocycle",
    "check_2cocycle_table",
    "twisted_power",
    "parse_cocycle",
]


class Cocycle3:
    """Base for the parametrized cocycle families."""

    order: int

    def group(self) -> AbGroup:
        raise NotImplementedError

    def exponent(self, x: GrpElt, y: GrpElt, z: GrpElt) -> int:
        raise NotImplementedError

    def _exponent_arrays(self, X, Y, Z):
        """Vectorized exponent; X, Y, Z are integer arrays with a trailing rank axis."""
        raise NotImplementedError

    def table(self, G: AbGroup | None = None) -> np.ndarray:
        """Exponent table indexed by element positions in ``G.enumerate()``."""
        G = G or self.group()
        self._check_group(G)
        E = np.array(G.enumerate(), dtype=np.int64)
        X = E[:, None, None, :]
        Y = E[None, :, None, :]
        Z = E[None, None, :, :]
        return np.mod(self._exponent_arrays(X, Y, Z), self.order)

    def _check_group(self, G: AbGroup) -> None:
        if G.factor_orders != self.group().factor_orders:
            raise ValueError(f"{self} lives on {self.group()}, not on {G}")

    def __call__(self, x, y, z, ambient: int | None = None) -> CycNum:
        return eval3(self, x, y, z, ambient)


def _canon(x, orders):
    return tuple(a % m for a, m in zip(x, orders))


@dataclass(frozen=True)
class Rank2(Cocycle3):
    """Phi_{a,b,c} on Z_m x Z_n = <g> x <h>."""

    m: int
    n: int
    a: int
    b: int
    c: int

    def __post_init__(self):
        if self.m < 1 or self.n < 1:
            raise ValueError("m, n must be positive")
        if not (0 <= self.a < self.m and 0 <= self.b < gcd(self.m, self.n) and 0 <= self.c < self.n):
            raise ValueError(
                f"rank2 parameters out of range: need 0<=a<{self.m}, "
                f"0<=b<{gcd(self.m, self.n)}, 0<=c<{self.n}; got {(self.a, self.b, self.c)}"
            )

    @property
    def order(self) -> int:
        return lcm(self.m, self.n)

    def group(self) -> AbGroup:
        return AbGroup((self.m, self.n))

    def exponent(self, x, y, z) -> int:
        m, n = self.m, self.n
        i, j = _canon(x, (m, n))
        s, t = _canon(y, (m, n))
        k, l = _canon(z, (m, n))
        N = self.order
        f1 = (k + s) // m
        f2 = (t + l) // n
        return (self.a * f1 * i * (N // m) + (self.b * f1 + self.c * f2) * j * (N // n)) % N

    def _exponent_arrays(self, X, Y, Z):
        m, n, N = self.m, self.n, self.order
        f1 = (Z[..., 0] + Y[..., 0]) // m
        f2 = (Y[..., 1] + Z[..., 1]) // n
        return self.a * f1 * X[..., 0] * (N // m) + (self.b * f1 + self.c * f2) * X[..., 1] * (N // n)

    def __str__(self) -> str:
        return f"rank2({self.m},{self.n};{self.a},{self.b},{self.c})"


@dataclass(frozen=True)
class Rank1(Cocycle3):
    """Phi_a on Z_m = <e>; the rank-2 formula restricted to one factor."""

    m: int
    a: int

    def __post_init__(self):
        if self.m < 1 or not 0 <= self.a < self.m:
            raise ValueError(f"rank1 parameters out of range: need 0<=a<m, got m={self.m}, a={self.a}")

    @property
    def order(self) -> int:
        return self.m

    def group(self) -> AbGroup:
        return AbGroup((self.m,))

    def exponent(self, x, y, z) -> int:
        (i,), (j,), (k,) = (_canon(v, (self.m,)) for v in (x, y, z))
        return self.a * ((j + k) // self.m) * i % self.m

    def _exponent_arrays(self, X, Y, Z):
        return self.a * ((Y[..., 0] + Z[..., 0]) // self.m) * X[..., 0]

    def __str__(self) -> str:
        return f"rank1({self.m};{self.a})"


@dataclass(frozen=True)
class Rank3(Cocycle3):
    """Cocycle on Z_p^3 = <e> x <f> x <g> with parameters a1..a7."""

    p: int
    a: tuple

    def __post_init__(self):
        a = tuple(int(v) for v in self.a)
        if len(a) != 7:
            raise ValueError("rank3 cocycles take exactly 7 parameters")
        if self.p < 1 or any(not 0 <= v < self.p for v in a):
            raise ValueError(f"rank3 parameters must lie in [0,{self.p}), got {a}")
        object.__setattr__(self, "a", a)

    @property
    def order(self) -> int:
        return self.p

    def group(self) -> AbGroup:
        return AbGroup((self.p,) * 3)

    def exponent(self, x, y, z) -> int:
        p = self.p
        i, j, k = (_canon(v, (p, p, p)) for v in (x, y, z))
        a = self.a
        fl = [(j[l] + k[l]) // p for l in range(3)]
        e = sum(a[l] * i[l] * fl[l] for l in range(3))
        e += a[3] * i[1] * fl[0] + a[4] * i[2] * fl[0] + a[5] * i[2] * fl[1]
        e += a[6] * k[0] * j[1] * i[2]
        return e % p

    def _exponent_arrays(self, X, Y, Z):
        p, a = self.p, self.a
        fl = [(Y[..., l] + Z[..., l]) // p for l in range(3)]
        e = a[0] * X[..., 0] * fl[0] + a[1] * X[..., 1] * fl[1] + a[2] * X[..., 2] * fl[2]
        e = e + a[3] * X[..., 1] * fl[0] + a[4] * X[..., 2] * fl[0] + a[5] * X[..., 2] * fl[1]
        return e + a[6] * Z[..., 0] * Y[..., 1] * X[..., 2]

    def __str__(self) -> str:
        return f"rank3({self.p};{','.join(map(str, self.a))})"


class CocycleTable(Cocycle3):
    """An arbitrary exponent table; used to feed hand-modified data to the checkers."""

    def __init__(self, G: AbGroup, order: int, table: np.ndarray):
        self._G = G
        self.order = order
        self._table = np.mod(np.asarray(table, dtype=np.int64), order)
        n = G.order
        if self._table.shape != (n, n, n):
            raise ValueError("table shape does not match the group")

    @classmethod
    def of(cls, phi: Cocycle3) -> "CocycleTable":
        return cls(phi.group(), phi.order, phi.table())

    def group(self) -> AbGroup:
        return self._G

    def exponent(self, x, y, z) -> int:
        G = self._G
        return int(self._table[G.index(G.elt(x)), G.index(G.elt(y)), G.index(G.elt(z))])

    def table(self, G: AbGroup | None = None) -> np.ndarray:
        if G is not None:
            self._check_group(G)
        return self._table

    def mutated(self, x, y, z, delta: int = 1) -> "CocycleTable":
        G = self._G
        t = self._table.copy()
        t[G.index(G.elt(x)), G.index(G.elt(y)), G.index(G.elt(z))] += delta
        return CocycleTable(G, self.order, t)

    def __str__(self) -> str:
        return f"table({self._G}, N={self.order})"


def eval3(phi: Cocycle3, x, y, z, ambient: int | None = None) -> CycNum:
    """Phi(x, y, z) as an element of Q(zeta_ambient)."""
    G = phi.group()
    for v in (x, y, z):
        if len(v) != G.rank:
            raise ValueError(f"{v} is not an element of {G} (cocycle {phi})")
    N = phi.order
    ambient = ambient or N
    return embed_root(N, phi.exponent(x, y, z), ambient)


def _mult_index(G: AbGroup) -> np.ndarray:
    E = np.array(G.enumerate(), dtype=np.int64)
    orders = np.array(G.factor_orders, dtype=np.int64)
    S = np.mod(E[:, None, :] + E[None, :, :], orders)
    # flatten with the same mixed radix as AbGroup.index
    idx = np.zeros(S.shape[:2], dtype=np.int64)
    for k, m in enumerate(G.factor_orders):
        idx = idx * m + S[..., k]
    return idx


def _inv_index(G: AbGroup) -> np.ndarray:
    return np.array([G.index(G.inv(x)) for x in G.enumerate()], dtype=np.int64)


def check_3cocycle(phi: Cocycle3, G: AbGroup | None = None, cap: int = DEFAULT_GROUP_CAP) -> CheckResult:
    """Exhaustive check of normalization and the 3-cocycle identity

    ``phi(y,z,w) phi(x,yz,w) phi(x,y,z) == phi(xy,z,w) phi(x,y,zw)``.
    """
    G = G or phi.group()
    if G.order > cap:
        raise OverflowError(f"|G| = {G.order} exceeds cap {cap}")
    T = phi.table(G)
    N = phi.order
    elts = G.enumerate()
    n = G.order
    one = G.index(G.identity)
    # normalization: value 1 when any argument is the identity
    for axis in range(3):
        face = np.take(T, one, axis=axis)
        bad = np.argwhere(face % N != 0)
        if bad.size:
            a, b = (elts[i] for i in bad[0])
            args = [a, b]
            args.insert(axis, G.identity)
            return CheckResult(False, "3-cocycle", tuple(args), "normalization fails", n * n * 3)
    M = _mult_index(G)
    ys = np.arange(n)[:, None, None]
    zs = np.arange(n)[None, :, None]
    ws = np.arange(n)[None, None, :]
    yz = M[ys, zs]
    zw = M[zs, ws]
    for x in range(n):
        xy = M[x, ys]
        d = T[ys, zs, ws] + T[x, yz, ws] + T[x, ys, zs] - T[xy, zs, ws] - T[x, ys, zw]
        bad = np.argwhere(d % N != 0)
        if bad.size:
            y, z, w = bad[0]
            quad = (elts[x], elts[y], elts[z], elts[w])
            return CheckResult(False, "3-cocycle", quad, "cocycle identity fails", (x + 1) * n**3)
    return CheckResult(True, "3-cocycle", checked=n**4)


# --------------------------------------------------------------------------
# the induced function phi~ and the 2-cocycles phi~_g
# --------------------------------------------------------------------------

def phi_tilde(phi: Cocycle3, e, f, g, ambient: int | None = None) -> CycNum:
    """Generic quotient

    phi(e,f,g) phi(ef,f^-1,e^-1) phi(e,fg,f^-1) / (phi(efg,f^-1,e^-1) phi(e,f,f^-1)).
    """
    G = phi.group()
    e, f, g = G.elt(e), G.elt(f), G.elt(g)
    ef = G.mul(e, f)
    fi, ei = G.inv(f), G.inv(e)
    ex = (
        phi.exponent(e, f, g)
        + phi.exponent(ef, fi, ei)
        + phi.exponent(e, G.mul(f, g), fi)
        - phi.exponent(G.mul(ef, g), fi, ei)
        - phi.exponent(e, f, fi)
    )
    N = phi.order
    return embed_root(N, ex % N, ambient or N)


def phi_tilde_table(phi: Cocycle3, G: AbGroup | None = None) -> np.ndarray:
    """Exponent table of phi~ over all triples (same N as ``phi``)."""
    G = G or phi.group()
    T = phi.table(G)
    M = _mult_index(G)
    inv = _inv_index(G)
    n = G.order
    e = np.arange(n)[:, None, None]
    f = np.arange(n)[None, :, None]
    g = np.arange(n)[None, None, :]
    ef = M[e, f]
    fi, ei = inv[f], inv[e]
    out = T[e, f, g] + T[ef, fi, ei] + T[e, M[f, g], fi] - T[M[ef, g], fi, ei] - T[e, f, fi]
    return np.mod(out, phi.order)


def _explicit_exponent(phi: Cocycle3, e, f, g) -> int:
    if isinstance(phi, Rank2):
        m, n, N = phi.m, phi.n, phi.order
        i, j = _canon(e, (m, n))
        s, t = _canon(f, (m, n))
        k, l = _canon(g, (m, n))
        fl1 = ((m - i) % m + (m - s) % m) // m
        fl2 = ((n - j) % n + (n - t) % n) // n
        return -(phi.a * fl1 * k * (N // m) + (phi.b * fl1 * l + phi.c * fl2 * l) * (N // n)) % N
    if isinstance(phi, Rank1):
        m = phi.m
        (i,), (j,), (k,) = (_canon(v, (m,)) for v in (e, f, g))
        fl = ((m - i) % m + (m - j) % m) // m
        return -phi.a * fl * k % m
    raise TypeError(f"no closed form of phi~ for {type(phi).__name__}; use phi_tilde")


def phi_tilde_explicit(phi: Cocycle3, e, f, g, ambient: int | None = None) -> CycNum:
    """Closed-form phi~ for the rank-1 and rank-2 families."""
    ex = _explicit_exponent(phi, e, f, g)
    return embed_root(phi.order, ex, ambient or phi.order)


@dataclass(frozen=True)
class TwoCocycle:
    """(e, f) -> phi~(e, f, g) for a fixed g."""

    phi: Cocycle3
    g: GrpElt

    def exponent(self, e, f) -> int:
        return turn_exponent(phi_tilde(self.phi, e, f, self.g), self.phi.order)

    def __call__(self, e, f, ambient: int | None = None) -> CycNum:
        return phi_tilde(self.phi, e, f, self.g, ambient)

    def table(self) -> np.ndarray:
        G = self.phi.group()
        return phi_tilde_table(self.phi, G)[:, :, G.index(G.elt(self.g))]


def turn_exponent(value: CycNum, N: int) -> int:
    t = value.turn()
    if t is None or N % t.denominator:
        raise ValueError(f"{value!r} is not an N-th root of unity for N={N}")
    return t.numerator * (N // t.denominator) % N


def check_2cocycle_table(table: np.ndarray, G: AbGroup, order: int) -> CheckResult:
    """Normalized 2-cocycle identity ``T(f,g) T(e,fg) == T(e,f) T(ef,g)`` on exponents."""
    n = G.order
    elts = G.enumerate()
    one = G.index(G.identity)
    T = np.asarray(table)
    for row in (T[one, :], T[:, one]):
        bad = np.flatnonzero(row % order)
        if bad.size:
            return CheckResult(False, "2-cocycle", (elts[int(bad[0])],), "normalization fails", 2 * n)
    M = _mult_index(G)
    e = np.arange(n)[:, None, None]
    f = np.arange(n)[None, :, None]
    g = np.arange(n)[None, None, :]
    d = T[f, g] + T[e, M[f, g]] - T[e, f] - T[M[e, f], g]
    bad = np.argwhere(d % order != 0)
    if bad.size:
        a, b, c = (elts[int(v)] for v in bad[0])
        return CheckResult(False, "2-cocycle", (a, b, c), "2-cocycle identity fails", n**3)
    return CheckResult(True, "2-cocycle", checked=n**3)


def check_2cocycle(T: TwoCocycle, G: AbGroup | None = None, cap: int = DEFAULT_GROUP_CAP) -> CheckResult:
    G = G or T.phi.group()
    if G.order > cap:
        raise OverflowError(f"|G| = {G.order} exceeds cap {cap}")
    return check_2cocycle_table(T.table(), G, T.phi.order)


def twisted_power(phi: Rank2 | Rank1, which: str, i: int, ambient: int | None = None) -> CycNum:
    """Scalar s with x^{*i} = s x^i in the phi~_x-twisted group algebra.

    ``which`` is ``"g"`` or ``"h"``.  The closed form zeta_m^{-a(i-1)} is the
    left-nested product for 1 <= i <= m; i = 0 gives the unit.
    """
    if i < 0:
        raise ValueError("twisted_power needs i >= 0")
    if which not in ("g", "h"):
        raise ValueError("which must be 'g' or 'h'")
    N = phi.order
    ambient = ambient or N
    if which == "h" or i == 0:
        return CycNum.one(ambient)
    return embed_root(phi.m, -phi.a * (i - 1), ambient)


_LIT = re.compile(r"\s*(rank[123])\s*\(([^;]*);([^)]*)\)\s*")


def parse_cocycle(text: str) -> Cocycle3:
    """``rank2(m,n;a,b,c)``, ``rank1(m;a)`` or ``rank3(p;a1,...,a7)``."""
    m = _LIT.fullmatch(text)
    if not m:
        raise ValueError(f"bad cocycle literal {text!r}")
    kind = m.group(1)
    head = [int(v) for v in m.group(2).split(",") if v.strip()]
    tail = [int(v) for v in m.group(3).split(",") if v.strip()]
    if kind == "rank1" and len(head) == 1 and len(tail) == 1:
        return Rank1(head[0], tail[0])
    if kind == "rank2" and len(head) == 2 and len(tail) == 3:
        return Rank2(*head, *tail)
    if kind == "rank3" and len(head) == 1:
        return Rank3(head[0], tuple(tail))
    raise ValueError(f"wrong number of parameters in {text!r}")
