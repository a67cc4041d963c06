"""Majid bimodules on arrow spaces and the quantum shuffle product.

Every scalar that appears in a bimodule action here is a root of unity, so a
:class:`MajidStructure` keeps its actions as integer exponent tables modulo an
ambient order N (the value being ``zeta_N ** exponent``).  Exhaustive axiom
checks are congruences on these tables; the shuffle product converts to
:class:`CycNum` only when collecting coefficients.

An arrow type is described by its class ``c`` and the commutation scalars
``sigma_k`` in ``g_k X = sigma_k X g_k`` for the group generators ``g_k``.
With ``X_s`` the arrow of that type leaving vertex ``s`` (``X = X_1``)

    f . X_s = Phi(f, s, c) X_{fs}
    X_s . f = rho(f) Phi(s, f, c) / Phi(s, c, f) X_{sf}

where ``rho(prod g_k^{f_k}) = prod sigma_k^{-f_k}``.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from math import gcd

import numpy as np

from ._check import CheckResult
from .abgroup import AbGroup, GrpElt
from .cocycle import Cocycle3, Rank1, Rank2, _mult_index
from .cyclo import CycNum, embed_root, inverse, lcm, mult_order, q_factorial, turn_of
from .hopfquiver import (
    Arrow,
    HopfQuiver,
    Path,
    PathVec,
    Ramification,
    arrow_path,
    coproduct,
    path_end,
    vertex,
)

DEFAULT_LEVEL_CAP = 64
DEFAULT_STRUCTURE_CAP = 256

__all__ = [
    "Rank2Params",
    "Rank1Params",
    "validate_params",
    "ArrowType",
    "MajidStructure",
    "InfiniteOrderError",
    "NotSkewCommutative",
    "left_action",
    "right_action",
    "check_bimodule_axioms",
    "shuffle",
    "left_power",
    "closed_form_power",
    "nilpotency_scalar",
    "nilpotency_order",
    "skew_commutation_factor",
    "check_majid_axiom",
    "subalgebra_dimension",
]


class InfiniteOrderError(ValueError):
    """The nilpotency scalar is 1, so left-nested powers never vanish."""


class NotSkewCommutative(ValueError):
    """X*Y is not a scalar multiple of Y*X.

    ``degenerate`` is set when both products vanish.
    """

    def __init__(self, msg: str, degenerate: bool = False):
        super().__init__(msg)
        self.degenerate = degenerate


# --------------------------------------------------------------------------
# parameters of one-dimensional projective representations
# --------------------------------------------------------------------------

@dataclass(frozen=True)
class Rank2Params:
    lam1: CycNum
    lam2: CycNum
    eta1: CycNum
    eta2: CycNum

    @property
    def order(self) -> int:
        return self.lam1.order


@dataclass(frozen=True)
class Rank1Params:
    alpha: int
    beta: int
    mu1: CycNum
    mu2: CycNum

    @property
    def order(self) -> int:
        return self.mu1.order


def validate_params(phi: Cocycle3, p: Rank2Params | Rank1Params) -> CheckResult:
    """Power conditions on the scalars; the result names the first failure."""
    N = p.order
    scalars = [p.lam1, p.lam2, p.eta1, p.eta2] if isinstance(p, Rank2Params) else [p.mu1, p.mu2]
    if any(s.order != N for s in scalars):
        return CheckResult(False, "params", detail="scalars live in different fields")
    if isinstance(p, Rank2Params):
        if not isinstance(phi, Rank2):
            return CheckResult(False, "params", detail="rank-2 scalars need a rank-2 cocycle")
        m, n = phi.m, phi.n
        if N % lcm(m, n):
            return CheckResult(False, "params", detail=f"ambient order {N} misses zeta_{lcm(m, n)}")
        conds = [
            ("lam1^m = zeta_m^a", p.lam1 ** m, embed_root(m, phi.a, N)),
            ("lam2^n = 1", p.lam2 ** n, CycNum.one(N)),
            ("eta1^m = zeta_n^b", p.eta1 ** m, embed_root(n, phi.b, N)),
            ("eta2^n = zeta_n^c", p.eta2 ** n, embed_root(n, phi.c, N)),
        ]
    else:
        if not isinstance(phi, Rank1):
            return CheckResult(False, "params", detail="rank-1 scalars need a rank-1 cocycle")
        m = phi.m
        if not (0 < p.alpha < m and 0 < p.beta < m):
            return CheckResult(False, "params", detail=f"need 0 < alpha, beta < {m}")
        if gcd(p.alpha, p.beta) != 1:
            return CheckResult(False, "params", detail="need gcd(alpha, beta) = 1")
        if N % m:
            return CheckResult(False, "params", detail=f"ambient order {N} misses zeta_{m}")
        conds = [
            ("mu1^m = zeta_m^(a alpha)", p.mu1 ** m, embed_root(m, phi.a * p.alpha, N)),
            ("mu2^m = zeta_m^(a beta)", p.mu2 ** m, embed_root(m, phi.a * p.beta, N)),
        ]
    for name, lhs, rhs in conds:
        if lhs != rhs:
            return CheckResult(False, "params", counterexample=name, detail=f"{name} fails", checked=len(conds))
    return CheckResult(True, "params", checked=len(conds))


# --------------------------------------------------------------------------
# structures
# --------------------------------------------------------------------------

@dataclass(frozen=True)
class ArrowType:
    """A family of arrows of one class; ``sigma`` are turns (value exp(2 pi i t))."""

    name: str
    class_elt: GrpElt
    sigma: tuple
    copy: int = 0


class MajidStructure:
    """Bimodule structure on kQ_1 for the Hopf quiver spanned by some arrow types."""

    def __init__(self, G: AbGroup, phi: Cocycle3, types: list[ArrowType], ambient: int | None = None,
                 *, cap: int = DEFAULT_STRUCTURE_CAP):
        if G.order > cap:
            raise OverflowError(f"|G| = {G.order} exceeds cap {cap}")
        if phi.group() != G:
            raise ValueError(f"cocycle {phi} lives on {phi.group()}, not on {G}")
        self.group = G
        self.phi = phi
        self.types = list(types)
        names = [t.name for t in self.types]
        if len(set(names)) != len(names):
            raise ValueError("arrow type names must be distinct")
        if len({(t.class_elt, t.copy) for t in self.types}) != len(self.types):
            raise ValueError("two arrow types share class and copy index")
        sig = [Fraction(s) % 1 for t in self.types for s in t.sigma]
        N = lcm(phi.order, *(s.denominator for s in sig)) if sig else phi.order
        if ambient is not None:
            if ambient % N:
                raise ValueError(f"ambient order {ambient} is not a multiple of {N}")
            N = ambient
        self.order = N
        mult: dict = {}
        for t in self.types:
            if len(t.sigma) != G.rank:
                raise ValueError(f"arrow type {t.name} needs {G.rank} commutation scalars")
            mult[t.class_elt] = mult.get(t.class_elt, 0) + 1
        for t in self.types:
            if not 0 <= t.copy < mult[t.class_elt]:
                raise ValueError(f"copy index of {t.name} out of range")
        self.quiver = HopfQuiver(G, Ramification(mult))
        self.arrows = self.quiver.arrows
        self.arrow_index = {a: i for i, a in enumerate(self.arrows)}
        self.type_of = {(t.class_elt, t.copy): t for t in self.types}
        self.elts = G.enumerate()
        self._build_tables()
        self._zeta_cache: dict = {}
        self._pair_cache: dict = {}

    # -- construction ------------------------------------------------------
    @classmethod
    def from_params(cls, phi: Rank2 | Rank1, params: Rank2Params | Rank1Params) -> "MajidStructure":
        N = params.order
        if isinstance(phi, Rank2) and isinstance(params, Rank2Params):
            m, n = phi.m, phi.n
            ga = Fraction(phi.a, m)
            sx = (ga + turn_of(params.lam1), turn_of(params.lam2))
            sy = (Fraction(phi.b, n) + turn_of(params.eta1), Fraction(phi.c, n) + turn_of(params.eta2))
            cy = (0, 1 % n)
            types = [ArrowType("X", (1 % m, 0), sx), ArrowType("Y", cy, sy, copy=int(cy == (1 % m, 0)))]
        elif isinstance(phi, Rank1) and isinstance(params, Rank1Params):
            m = phi.m
            al, be = params.alpha, params.beta
            sx = (Fraction(phi.a * al, m) + turn_of(params.mu1),)
            sy = (Fraction(phi.a * be, m) + turn_of(params.mu2),)
            types = [ArrowType("X", (al % m,), sx), ArrowType("Y", (be % m,), sy, copy=1 if al % m == be % m else 0)]
        else:
            raise TypeError("cocycle and parameter variants do not match")
        return cls(phi.group(), phi, types, N)

    def _turn_exp(self, t: Fraction) -> int:
        t = Fraction(t) % 1
        if self.order % t.denominator:
            raise ValueError(f"turn {t} is not an {self.order}-th root of unity")
        return t.numerator * (self.order // t.denominator)

    def _build_tables(self) -> None:
        G, N = self.group, self.order
        n, A = G.order, len(self.arrows)
        scale = N // self.phi.order
        self.phi_exp = (self.phi.table(G).astype(np.int64) * scale) % N
        self.mult = _mult_index(G)
        E = np.array(self.elts, dtype=np.int64).reshape(n, G.rank)
        src = np.array([G.index(a.source) for a in self.arrows], dtype=np.int64)
        cls_ = np.array([G.index(a.class_elt) for a in self.arrows], dtype=np.int64)
        self.src, self.cls = src, cls_
        self.tgt = self.mult[cls_, src]
        # arrow index of (class, copy) leaving vertex v
        slot = {}
        for i, a in enumerate(self.arrows):
            slot[(G.index(a.source), a.class_elt, a.copy)] = i
        moved = np.empty((n, A), dtype=np.int64)
        for i, a in enumerate(self.arrows):
            for f in range(n):
                moved[f, i] = slot[(self.mult[f, src[i]], a.class_elt, a.copy)]
        self.left_dst = moved
        self.right_dst = moved.T.copy()
        sig = np.array([[self._turn_exp(s) for s in self.type_of[(a.class_elt, a.copy)].sigma]
                        for a in self.arrows], dtype=np.int64).reshape(A, G.rank)
        self.sigma_exp = sig
        P = self.phi_exp
        fs = np.arange(n)
        self.left_exp = P[fs[:, None], src[None, :], cls_[None, :]] % N
        rho = -(sig @ E.T)  # (A, n)
        self.right_exp = (rho + P[src[:, None], fs[None, :], cls_[:, None]]
                          - P[src[:, None], cls_[:, None], fs[None, :]]) % N

    def mutated(self, side: str, f: GrpElt, arrow: Arrow, delta: int) -> "MajidStructure":
        """Copy with one action exponent shifted by ``delta`` (in units of 1/N)."""
        out = object.__new__(MajidStructure)
        out.__dict__.update(self.__dict__)
        out.left_exp = self.left_exp.copy()
        out.right_exp = self.right_exp.copy()
        out._zeta_cache = {}
        out._pair_cache = {}
        fi, ai = self.group.index(f), self.index(arrow)
        if side == "left":
            out.left_exp[fi, ai] = (out.left_exp[fi, ai] + delta) % self.order
        elif side == "right":
            out.right_exp[ai, fi] = (out.right_exp[ai, fi] + delta) % self.order
        else:
            raise ValueError("side must be 'left' or 'right'")
        return out

    # -- lookups -----------------------------------------------------------
    def index(self, a: Arrow) -> int:
        try:
            return self.arrow_index[a]
        except KeyError:
            raise ValueError(f"arrow {a} is not in this quiver") from None

    def arrow(self, name: str, at: GrpElt | None = None) -> Arrow:
        """The arrow of type ``name`` leaving ``at`` (default the identity)."""
        for t in self.types:
            if t.name == name:
                return Arrow(at if at is not None else self.group.identity, t.class_elt, t.copy)
        raise KeyError(f"no arrow type {name!r}")

    def arrow_type(self, name: str) -> ArrowType:
        for t in self.types:
            if t.name == name:
                return t
        raise KeyError(f"no arrow type {name!r}")

    def zeta(self, e: int) -> CycNum:
        e %= self.order
        z = self._zeta_cache.get(e)
        if z is None:
            z = self._zeta_cache[e] = CycNum.zeta(self.order, e)
        return z

    def phi_value(self, x: GrpElt, y: GrpElt, z: GrpElt) -> CycNum:
        G = self.group
        return self.zeta(int(self.phi_exp[G.index(x), G.index(y), G.index(z)]))

    def gen(self, name: str) -> PathVec:
        return PathVec.of(self.order, arrow_path(self.arrow(name)))

    def vert(self, v: GrpElt) -> PathVec:
        return PathVec.of(self.order, vertex(self.group.elt(v)))

    def _left(self, fi: int, ai: int) -> tuple[int, int]:
        return int(self.left_exp[fi, ai]), int(self.left_dst[fi, ai])

    def _right(self, ai: int, fi: int) -> tuple[int, int]:
        return int(self.right_exp[ai, fi]), int(self.right_dst[ai, fi])


def left_action(S: MajidStructure, f: GrpElt, x: Arrow) -> tuple[CycNum, Arrow]:
    e, j = S._left(S.group.index(S.group.elt(f)), S.index(x))
    return S.zeta(e), S.arrows[j]


def right_action(S: MajidStructure, x: Arrow, f: GrpElt) -> tuple[CycNum, Arrow]:
    e, j = S._right(S.index(x), S.group.index(S.group.elt(f)))
    return S.zeta(e), S.arrows[j]


def check_bimodule_axioms(S: MajidStructure) -> CheckResult:
    """Unit, the three quasi-bimodule axioms and bicomodule compatibility, exhaustively."""
    G, N = S.group, S.order
    n, A = G.order, len(S.arrows)
    elts, arrows = S.elts, S.arrows
    L, Ld, R, Rd, P, M = S.left_exp, S.left_dst, S.right_exp, S.right_dst, S.phi_exp, S.mult
    one = G.index(G.identity)
    ar = np.arange(A)
    if (L[one] % N).any() or (Ld[one] != ar).any() or (R[:, one] % N).any() or (Rd[:, one] != ar).any():
        bad = int(np.flatnonzero((L[one] % N != 0) | (Ld[one] != ar) | (R[:, one] % N != 0) | (Rd[:, one] != ar))[0])
        return CheckResult(False, "bimodule", (G.identity, G.identity, arrows[bad]), "unit axiom fails", 2 * A)
    # the left action by f must send ^gV^h to ^{fg}V^{fh}; same on the right
    fs = np.arange(n)[:, None]
    for name, dst in (("left", Ld), ("right", Rd.T)):
        bad = (S.src[dst] != M[fs, S.src[None, :]]) | (S.tgt[dst] != M[fs, S.tgt[None, :]])
        if bad.any():
            f, a = np.argwhere(bad)[0]
            return CheckResult(False, "bimodule", (elts[f], elts[f], arrows[a]),
                               f"{name} action is not a bicomodule map", n * A)
    e = np.arange(n)[:, None, None]
    f = np.arange(n)[None, :, None]
    a = np.arange(A)[None, None, :]
    g, h = S.tgt[a], S.src[a]
    ef = M[e, f]
    checks = [
        # e.(f.m) = Phi(e,f,g)/Phi(e,f,h) (ef).m
        ("e.(f.m)", L[f, a] + L[e, Ld[f, a]] - L[ef, a] - P[e, f, g] + P[e, f, h],
         Ld[e, Ld[f, a]] != Ld[ef, a]),
        # (m.e).f = Phi(h,e,f)/Phi(g,e,f) m.(ef)
        ("(m.e).f", R[a, e] + R[Rd[a, e], f] - R[a, ef] - P[h, e, f] + P[g, e, f],
         Rd[Rd[a, e], f] != Rd[a, ef]),
        # (e.m).f = Phi(e,h,f)/Phi(e,g,f) e.(m.f)
        ("(e.m).f", L[e, a] + R[Ld[e, a], f] - R[a, f] - L[e, Rd[a, f]] - P[e, h, f] + P[e, g, f],
         Rd[Ld[e, a], f] != Ld[e, Rd[a, f]]),
    ]
    for name, diff, moved in checks:
        bad = (diff % N != 0) | moved
        if bad.any():
            i, j, k = np.argwhere(bad)[0]
            return CheckResult(False, "bimodule", (elts[i], elts[j], arrows[k]), f"axiom {name} fails",
                               3 * n * n * A)
    return CheckResult(True, "bimodule", checked=3 * n * n * A)


# --------------------------------------------------------------------------
# shuffle product
# --------------------------------------------------------------------------

def _check_vec(S: MajidStructure, v: PathVec) -> None:
    if v.order != S.order:
        raise ValueError("path vector lives over a different cyclotomic field")


def _shuffle_paths(S: MajidStructure, p: Path, q: Path) -> dict:
    """Thin-split expansion of p * q as {path: [exponents]}."""
    key = (p, q)
    hit = S._pair_cache.get(key)
    if hit is not None:
        return hit
    G = S.group
    m, n = p.length, q.length
    pa = [S.index(x) for x in p.arrows]
    qa = [S.index(x) for x in q.arrows]
    start = G.mul(p.start, q.start)
    out: dict = {}
    for ones in combinations(range(m + n), m):
        pos = set(ones)
        va, vb = G.index(p.start), G.index(q.start)
        ia = ib = 0
        exp = 0
        arrows = []
        for i in range(m + n):
            if i in pos:
                # bracket: arrow of p acted on by the current vertex of q from the right
                ai = pa[ia]
                e, j = int(S.right_exp[ai, vb]), int(S.right_dst[ai, vb])
                va = int(S.tgt[ai])
                ia += 1
            else:
                bi = qa[ib]
                e, j = int(S.left_exp[va, bi]), int(S.left_dst[va, bi])
                vb = int(S.tgt[bi])
                ib += 1
            exp += e
            arrows.append(S.arrows[j])
        out.setdefault(Path(start, tuple(arrows)), []).append(exp % S.order)
    if len(S._pair_cache) < 200_000:
        S._pair_cache[key] = out
    return out


def shuffle(S: MajidStructure, a: PathVec, b: PathVec) -> PathVec:
    """Quantum shuffle product, bilinear in both arguments."""
    _check_vec(S, a)
    _check_vec(S, b)
    out = PathVec(S.order)
    for p, cp in a.terms.items():
        for q, cq in b.terms.items():
            c = cp * cq
            for path, exps in _shuffle_paths(S, p, q).items():
                s = CycNum.sum_of_zetas(S.order, exps)
                if not s.is_zero():
                    out._acc(path, s * c)
    return out


def left_power(S: MajidStructure, x: PathVec, l: int) -> PathVec:
    """Left-nested power ((x*x)*x)*... with l factors."""
    if l < 0:
        raise ValueError("power needs l >= 0")
    out = S.vert(S.group.identity)
    for _ in range(l):
        out = shuffle(S, out, x)
    return out


def nilpotency_scalar(S: MajidStructure, name: str) -> CycNum:
    """hbar = rho(c) = prod sigma_k^(-c_k) for the arrow type's class c."""
    t = S.arrow_type(name)
    N = S.order
    e = sum(S._turn_exp(s) * ck for s, ck in zip(t.sigma, t.class_elt))
    return CycNum.zeta(N, -e % N)


def closed_form_power(S: MajidStructure, name: str, l: int) -> PathVec:
    """l!_hbar [c^{l-1}.X] ... [c.X] X as a single scaled path."""
    if l < 1:
        raise ValueError("closed form needs l >= 1")
    G = S.group
    t = S.arrow_type(name)
    x = S.index(S.arrow(name))
    c = G.index(t.class_elt)
    # the action scalars are roots of unity, so multiply them as exponents
    e, f = 0, G.index(G.identity)
    arrows = []
    for _ in range(l):
        ek, j = S._left(f, x)
        e += ek
        arrows.append(S.arrows[j])
        f = int(S.mult[c, f])
    coeff = q_factorial(l, nilpotency_scalar(S, name)) * S.zeta(e % S.order)
    return PathVec.of(S.order, Path(G.identity, tuple(arrows)), coeff)


def nilpotency_order(S: MajidStructure, name: str) -> int:
    h = nilpotency_scalar(S, name)
    if h.is_one():
        raise InfiniteOrderError(f"nilpotency scalar of {name} is 1; its powers never vanish")
    return mult_order(h)


def skew_commutation_factor(S: MajidStructure, x: str = "X", y: str = "Y") -> CycNum:
    """q with X*Y = q Y*X, or :class:`NotSkewCommutative`."""
    X, Y = S.gen(x), S.gen(y)
    xy, yx = shuffle(S, X, Y), shuffle(S, Y, X)
    if xy.is_zero() and yx.is_zero():
        raise NotSkewCommutative("X*Y and Y*X both vanish", degenerate=True)
    if yx.is_zero() or xy.is_zero():
        raise NotSkewCommutative("exactly one of X*Y, Y*X vanishes")
    p0, c0 = next(iter(yx))
    q = xy.coeff(p0) / c0
    if xy != yx.scale(q):
        raise NotSkewCommutative("X*Y is not proportional to Y*X")
    return q


# --------------------------------------------------------------------------
# quasi-associativity
# --------------------------------------------------------------------------

def check_majid_axiom(S: MajidStructure, a: PathVec, b: PathVec, c: PathVec, *, max_length: int = 2) -> bool:
    """Phi(t,t,t) (a*b)*c == a*(b*c) Phi(s,s,s) summed over the path terms.

    With Phi supported on vertices only, the coproduct terms that survive are
    ``t(p) (x) p`` on the left and ``p (x) s(p)`` on the right.
    """
    for v in (a, b, c):
        _check_vec(S, v)
        if v.terms and max(v.lengths()) > max_length:
            raise OverflowError(f"operand length exceeds cap {max_length}")
    G = S.group
    lhs = PathVec(S.order)
    rhs = PathVec(S.order)
    for pa, ca in a.terms.items():
        for pb, cb in b.terms.items():
            for pc, cc in c.terms.items():
                coeff = ca * cb * cc
                A, B, C = (PathVec.of(S.order, p) for p in (pa, pb, pc))
                ends = (path_end(G, pa), path_end(G, pb), path_end(G, pc))
                left = shuffle(S, shuffle(S, A, B), C).scale(coeff * S.phi_value(*ends))
                right = shuffle(S, A, shuffle(S, B, C)).scale(coeff * S.phi_value(pa.start, pb.start, pc.start))
                lhs = lhs + left
                rhs = rhs + right
    return lhs == rhs


def coproduct_vec(S: MajidStructure, v: PathVec) -> dict:
    """Delta(v) as {(left_path, right_path): coefficient}."""
    out: dict = {}
    for p, c in v.terms.items():
        for pair in coproduct(S.group, p):
            cur = out.get(pair)
            new = c if cur is None else cur + c
            if new.is_zero():
                out.pop(pair, None)
            else:
                out[pair] = new
    return out


# --------------------------------------------------------------------------
# dimension of generated subalgebras
# --------------------------------------------------------------------------

class _Echelon:
    """Row echelon basis; the pivot of a row is its least path."""

    def __init__(self, order: int):
        self.order = order
        self.rows: dict = {}

    def reduce(self, v: PathVec) -> PathVec:
        v = v.copy()
        while v.terms:
            p = min(v.terms)
            row = self.rows.get(p)
            if row is None:
                return v
            c = v.terms[p]
            for q, d in row.terms.items():
                v._acc(q, -(c * d))
        return v

    def add(self, v: PathVec) -> PathVec | None:
        """Insert v; return the new normalized basis row or None if dependent."""
        r = self.reduce(v)
        if not r.terms:
            return None
        p = min(r.terms)
        r = r.scale(inverse(r.terms[p]))
        self.rows[p] = r
        return r

    def basis(self) -> list[PathVec]:
        return [self.rows[p] for p in sorted(self.rows)]

    def __len__(self) -> int:
        return len(self.rows)


def subalgebra_dimension(S: MajidStructure, generators: list[PathVec], *, max_levels: int = DEFAULT_LEVEL_CAP,
                         return_levels: bool = False):
    """Dimension of the subalgebra generated by vertex and arrow combinations.

    Level d is spanned by products of levels i, j >= 1 with i + j = d (plus the
    degree-one generators), closed under multiplication by level 0 on both
    sides.  The algebra is graded and generated in degrees <= 1, so the
    closure stops at the first empty level.
    """
    seeds: dict = {}
    for g in generators:
        _check_vec(S, g)
        for d in g.lengths():
            part = PathVec(S.order, {p: c for p, c in g.terms.items() if p.length == d})
            seeds.setdefault(d, []).append(part)
    if any(d > 1 for d in seeds):
        raise ValueError("generators must have path length <= 1")
    levels: list[_Echelon] = []

    def close(ech: _Echelon, todo: list, base: list) -> None:
        while todo:
            v = todo.pop()
            r = ech.add(v)
            if r is None:
                continue
            for f in base:
                todo.append(shuffle(S, f, r))
                todo.append(shuffle(S, r, f))

    # level 0 is closed under its own products
    L0 = _Echelon(S.order)
    todo = list(seeds.get(0, []))
    while todo:
        v = todo.pop()
        r = L0.add(v)
        if r is None:
            continue
        for f in L0.basis():
            todo.append(shuffle(S, f, r))
            todo.append(shuffle(S, r, f))
    levels.append(L0)
    base = L0.basis()
    d = 1
    while True:
        if d > max_levels:
            raise OverflowError(f"closure did not terminate within {max_levels} levels")
        cand = list(seeds.get(1, [])) if d == 1 else []
        for i in range(1, d):
            for u in levels[i].basis():
                for w in levels[d - i].basis():
                    cand.append(shuffle(S, u, w))
        ech = _Echelon(S.order)
        close(ech, cand, base)
        if not len(ech):
            break
        levels.append(ech)
        d += 1
    dims = [len(e) for e in levels]
    return (sum(dims), dims) if return_levels else sum(dims)
