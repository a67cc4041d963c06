"""Existence congruences, generic presentations and the small-order lists.

Records describe each Majid algebra by quiver data: the group, the associator,
and for every skew-primitive generator its class ``c`` (so that
``Delta(X) = X (x) 1 + c (x) X``) and the commutation scalars ``sigma_k`` in
``g_k X = sigma_k X g_k``.  :func:`verify_record` rebuilds the quiver model from
those data and checks every stated property by exact computation.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from math import gcd

from ._check import CheckResult
from .abgroup import AbGroup
from .cocycle import Cocycle3, Rank1, Rank2, Rank3, check_3cocycle, parse_cocycle
from .cyclo import embed_root, embed_turn, format_zeta, lcm, parse_zeta, turn_of
from .hopfquiver import arrow_path, coproduct, vertex
from .majid import (
    ArrowType,
    InfiniteOrderError,
    MajidStructure,
    NotSkewCommutative,
    Rank1Params,
    Rank2Params,
    check_bimodule_axioms,
    check_majid_axiom,
    closed_form_power,
    left_power,
    nilpotency_order,
    shuffle,
    skew_commutation_factor,
    subalgebra_dimension,
    validate_params,
)

DEFAULT_PRIME_CAP = 5

__all__ = [
    "CongruenceSolutionSet",
    "ArrowSpec",
    "ClassRecord",
    "solve_congruence_A",
    "solve_congruence_B",
    "build_A_tilde",
    "build_B_tilde",
    "make_presentation",
    "list_p3",
    "list_p4",
    "verify_record",
    "remark26_check",
    "record_structure",
]


# --------------------------------------------------------------------------
# congruences
# --------------------------------------------------------------------------

@dataclass(frozen=True)
class CongruenceSolutionSet:
    variant: str
    params: tuple
    moduli: tuple  # residues of (x, y)
    solutions: tuple

    def __len__(self) -> int:
        return len(self.solutions)

    def __iter__(self):
        return iter(self.solutions)

    def __contains__(self, xy) -> bool:
        x, y = xy
        return (x % self.moduli[0], y % self.moduli[1]) in self.solutions

    def as_dict(self) -> dict:
        return {
            "variant": self.variant,
            "params": list(self.params),
            "moduli": list(self.moduli),
            "solutions": [list(s) for s in self.solutions],
        }


def solve_congruence_A(m: int, n: int, b: int) -> CongruenceSolutionSet:
    """Residues (x mod n, y mod m) with m x + n y + (m+1) b = 0 mod mn."""
    if m < 1 or n < 1:
        raise ValueError("m, n must be positive")
    if not 0 <= b < gcd(m, n):
        raise ValueError(f"need 0 <= b < gcd(m, n) = {gcd(m, n)}")
    sols = tuple(
        (x, y) for x in range(n) for y in range(m) if (m * x + n * y + (m + 1) * b) % (m * n) == 0
    )
    return CongruenceSolutionSet("A", (m, n, b), (n, m), sols)


def solve_congruence_B(m: int, alpha: int, beta: int, a: int) -> CongruenceSolutionSet:
    """Residues (x, y) mod m with m(beta x + alpha y + 2 a alpha beta) + 2 a alpha beta = 0 mod m^2."""
    if m < 2:
        raise ValueError("m must be at least 2")
    if not (0 < alpha < m and 0 < beta < m):
        raise ValueError(f"need 0 < alpha, beta < {m}")
    if not 0 <= a < m:
        raise ValueError(f"need 0 <= a < {m}")
    k = 2 * a * alpha * beta
    sols = tuple(
        (x, y) for x in range(m) for y in range(m) if (m * (beta * x + alpha * y + k) + k) % (m * m) == 0
    )
    return CongruenceSolutionSet("B", (m, alpha, beta, a), (m, m), sols)


def build_A_tilde(m: int, n: int, a: int, b: int, c: int) -> list[Rank2Params]:
    """Scalars (lam1, zeta_n^x, zeta_m^y zeta_mn^b, eta2) with lam1 != 1, eta2 != 1, (x, y) in A."""
    Rank2(m, n, a, b, c)  # range check
    N = lcm(m * m, n * n, m * n)
    lam1s = [embed_root(m * m, a + m * k, N) for k in range(m)]
    eta2s = [embed_root(n * n, c + n * k, N) for k in range(n)]
    lam1s = [v for v in lam1s if not v.is_one()]
    eta2s = [v for v in eta2s if not v.is_one()]
    out = []
    sols = solve_congruence_A(m, n, b)
    for l1 in lam1s:
        for e2 in eta2s:
            for x, y in sols:
                out.append(Rank2Params(l1, embed_root(n, x, N), embed_root(m, y, N) * embed_root(m * n, b, N), e2))
    return out


def build_B_tilde(m: int, alpha: int, beta: int, a: int) -> list[Rank1Params]:
    """Scalars mu1 = zeta_{m^2}^{a alpha} zeta_m^x, mu2 = zeta_{m^2}^{a beta} zeta_m^y over B,
    keeping mu1^(m+alpha) != 1 and mu2^(m+beta) != 1."""
    N = m * m
    out = []
    for x, y in solve_congruence_B(m, alpha, beta, a):
        mu1 = embed_root(N, a * alpha + m * x, N)
        mu2 = embed_root(N, a * beta + m * y, N)
        if (mu1 ** (m + alpha)).is_one() or (mu2 ** (m + beta)).is_one():
            continue
        out.append(Rank1Params(alpha, beta, mu1, mu2))
    return out


def remark26_check(m: int, n: int, s: int, t: int, params: Rank2Params, phi: Rank2) -> bool:
    """Both scalar conditions for passing to the quotient by g^s = h^t."""
    if not (0 < s < m and 0 < t < n):
        raise ValueError(f"need 0 < s < {m} and 0 < t < {n}")
    if (phi.m, phi.n) != (m, n):
        raise ValueError("cocycle group does not match (m, n)")
    N = params.order
    d = gcd(m, n)
    first = embed_root(m, phi.a * (s - 1), N) * params.lam1 ** s == params.lam2 ** t
    second = embed_root(d, phi.b * (s - 1), N) * params.eta1 ** s == embed_root(n, phi.c * (t - 1), N) * params.eta2 ** t
    return first and second


# --------------------------------------------------------------------------
# records
# --------------------------------------------------------------------------

@dataclass(frozen=True)
class ArrowSpec:
    """A skew-primitive generator: Delta(X) = X (x) 1 + class (x) X, g_k X = sigma_k X g_k."""

    name: str
    class_elt: tuple
    sigma: tuple  # turns
    nil_order: int
    copy: int = 0


@dataclass
class ClassRecord:
    family: str
    group: AbGroup
    cocycle: Cocycle3
    gen_names: tuple
    arrows: tuple
    params: dict
    q: Fraction | None = None
    dim: int = 0
    relations: list = field(default_factory=list)
    mapping: str = ""
    notes: list = field(default_factory=list)
    verified: bool | None = None
    representative_only: bool = True

    @property
    def N1(self) -> int:
        return self.arrows[0].nil_order

    @property
    def N2(self) -> int | None:
        return self.arrows[1].nil_order if len(self.arrows) > 1 else None

    def to_json(self) -> dict:
        scalars = {
            a.name: {
                "class": list(a.class_elt),
                "copy": a.copy,
                "sigma": [format_zeta(s) for s in a.sigma],
            }
            for a in self.arrows
        }
        if self.q is not None:
            scalars["q"] = format_zeta(self.q)
        return {
            "family": self.family,
            "group": str(self.group),
            "generators": list(self.gen_names),
            "cocycle": _cocycle_json(self.cocycle),
            "scalars": scalars,
            "params": {k: (format_zeta(v) if isinstance(v, Fraction) else v) for k, v in self.params.items()},
            "relations": list(self.relations),
            "N1": self.N1,
            "N2": self.N2,
            "dim": self.dim,
            "verified": self.verified,
            "representative_only": self.representative_only,
            "mapping": self.mapping,
            "notes": list(self.notes),
        }

    @classmethod
    def from_json(cls, d: dict) -> "ClassRecord":
        try:
            G = AbGroup.parse(d["group"])
            phi = parse_cocycle(d["cocycle"]["literal"])
            sc = dict(d["scalars"])
            q = sc.pop("q", None)
            nils = [d["N1"], d["N2"]]
            arrows = []
            for i, (name, v) in enumerate(sc.items()):
                arrows.append(ArrowSpec(name, tuple(v["class"]), tuple(parse_zeta(s) for s in v["sigma"]),
                                        nils[i], v.get("copy", 0)))
            params = {}
            for k, v in d.get("params", {}).items():
                params[k] = parse_zeta(v) if isinstance(v, str) and v.startswith("zeta") else v
        except (KeyError, TypeError, IndexError) as exc:
            raise ValueError(f"malformed record: {exc!r}") from None
        return cls(
            family=d["family"], group=G, cocycle=phi, gen_names=tuple(d["generators"]), arrows=tuple(arrows),
            params=params, q=parse_zeta(q) if q is not None else None, dim=d["dim"],
            relations=list(d.get("relations", [])), mapping=d.get("mapping", ""), notes=list(d.get("notes", [])),
            verified=d.get("verified"), representative_only=d.get("representative_only", True),
        )

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True)


def _cocycle_json(phi: Cocycle3) -> dict:
    out = {"literal": str(phi)}
    if isinstance(phi, Rank2):
        out.update(kind="rank2", m=phi.m, n=phi.n, a=phi.a, b=phi.b, c=phi.c)
    elif isinstance(phi, Rank1):
        out.update(kind="rank1", m=phi.m, a=phi.a)
    elif isinstance(phi, Rank3):
        out.update(kind="rank3", p=phi.p, a=list(phi.a))
    return out


def _word(names, x) -> str:
    parts = []
    for nm, e in zip(names, x):
        if e == 1:
            parts.append(nm)
        elif e:
            parts.append(f"{nm}^{e}")
    return "".join(parts) or "1"


def _relations(G: AbGroup, names, arrows, q) -> list[str]:
    rel = []
    for a in arrows:
        for nm, s in zip(names, a.sigma):
            rel.append(f"{nm}{a.name} = {format_zeta(s)} {a.name}{nm}")
    for nm, m in zip(names, G.factor_orders):
        rel.append(f"{nm}^{m} = 1")
    for i in range(len(names)):
        for j in range(i + 1, len(names)):
            rel.append(f"{names[i]}{names[j]} = {names[j]}{names[i]}")
    for a in arrows:
        rel.append(f"{a.name}^->{a.nil_order} = 0")
    if q is not None and len(arrows) == 2:
        x, y = arrows
        rel.append(f"{x.name}{y.name} = {format_zeta(q)} {y.name}{x.name}")
    for a in arrows:
        rel.append(f"Delta({a.name}) = {a.name}(x)1 + {_word(names, a.class_elt)}(x){a.name}")
    return rel


def _hbar_turn(a: ArrowSpec) -> Fraction:
    return -sum((s * c for s, c in zip(a.sigma, a.class_elt)), Fraction(0)) % 1


def _nil_from_sigma(a_name, class_elt, sigma) -> int:
    h = _hbar_turn(ArrowSpec(a_name, class_elt, sigma, 0))
    if h == 0:
        raise InfiniteOrderError(f"nilpotency scalar of {a_name} is 1")
    return h.denominator


def _record(family, G, phi, names, specs, params, printed, q=None, mapping="", notes=()) -> ClassRecord:
    """Assemble a record; ``printed`` holds the nilpotency orders stated for the family."""
    arrows = []
    seen: dict = {}
    for (name, cls, sigma, _), nil in zip(specs, printed):
        sigma = tuple(Fraction(s) % 1 for s in sigma)
        cls = tuple(c % m for c, m in zip(cls, G.factor_orders))
        # parallel skew-primitives of one class are told apart by a copy index
        copy = seen.get(cls, 0)
        seen[cls] = copy + 1
        arrows.append(ArrowSpec(name, cls, sigma, nil, copy))
    arrows = tuple(arrows)
    dim = G.order
    for a in arrows:
        dim *= a.nil_order
    rec = ClassRecord(family, G, phi, tuple(names), arrows, dict(params), None if q is None else Fraction(q) % 1,
                      dim, mapping=mapping, notes=list(notes))
    rec.relations = _relations(G, names, arrows, rec.q)
    return rec


def make_presentation(phi: Rank2 | Rank1, params: Rank2Params | Rank1Params) -> ClassRecord:
    """Generic presentation attached to validated scalars; rejects infinite nilpotency."""
    chk = validate_params(phi, params)
    if not chk:
        raise ValueError(f"invalid parameters: {chk.detail}")
    S = MajidStructure.from_params(phi, params)
    N1, N2 = nilpotency_order(S, "X"), nilpotency_order(S, "Y")
    if isinstance(phi, Rank2):
        q = -turn_of(params.lam2)
        names = ("g", "h")
        family = "thm2.5:rank2"
        ps = {"m": phi.m, "n": phi.n, "lam1": turn_of(params.lam1), "lam2": turn_of(params.lam2),
              "eta1": turn_of(params.eta1), "eta2": turn_of(params.eta2)}
        mapping = "sigma_X = (zeta_m^a lam1, lam2), sigma_Y = (zeta_n^b eta1, zeta_n^c eta2)"
    else:
        m = phi.m
        q = Fraction(phi.a * params.alpha * params.beta, m) + params.alpha * turn_of(params.mu2)
        names = ("e",)
        family = "thm2.5:rank1"
        ps = {"m": m, "alpha": params.alpha, "beta": params.beta, "mu1": turn_of(params.mu1),
              "mu2": turn_of(params.mu2)}
        mapping = "sigma_X = zeta_m^(a alpha) mu1, sigma_Y = zeta_m^(a beta) mu2"
    specs = [(t.name, t.class_elt, t.sigma, t.copy) for t in S.types]
    return _record(family, phi.group(), phi, names, specs, ps, (N1, N2), q, mapping)


# --------------------------------------------------------------------------
# the lists for |M| = p^3 and p^4
# --------------------------------------------------------------------------

def _is_prime(p: int) -> bool:
    return p >= 2 and all(p % d for d in range(2, int(p ** 0.5) + 1))


def _check_prime(p: int, cap: int) -> None:
    if not isinstance(p, int) or not _is_prime(p):
        raise ValueError(f"{p!r} is not a prime")
    if p > cap:
        raise ValueError(f"p = {p} exceeds the cap {cap}")


F = Fraction
_MAP = "sigma read off gX = sigma Xg; rank-2 data: lam1 = zeta_m^-a sigma_g, eta1 = zeta_n^-b sigma_g"


def list_p3(p: int, *, cap: int = DEFAULT_PRIME_CAP) -> list[ClassRecord]:
    _check_prime(p, cap)
    out = []
    G = AbGroup((p,))
    for r in range(p):
        for a in range(1, p):
            out.append(_record("thm3.1:1", G, Rank1(p, a), ("g",), [("X", (1,), (F(r, p) + F(a, p * p),), 0)],
                               {"r": r, "a": a}, (p * p,), mapping=_MAP))
    G = AbGroup((p, p))
    for b, c in product(range(p), repeat=2):
        if b == c == 0:
            continue
        for u in range(1, p):
            for v in range(p):
                out.append(_record("thm3.1:2", G, Rank2(p, p, 0, b, c), ("g", "h"),
                                   [("X", (1, 0), (F(u, p), F(v, p)), 0)],
                                   {"b": b, "c": c, "u": u, "v": v}, (p,), mapping=_MAP))
    G = AbGroup((p * p,))
    for t in range(1, p):
        for al in range(1, p * p):
            if al % p == 0:
                continue
            out.append(_record("thm3.1:3", G, Rank1(p * p, t * p), ("g",), [("X", (p,), (F(al, p * p),), 0)],
                               {"t": t, "alpha": al}, (p,), mapping=_MAP))
    return out


def list_p4(p: int, *, cap: int = DEFAULT_PRIME_CAP) -> list[ClassRecord]:
    _check_prime(p, cap)
    out = []
    p2 = p * p
    nonzero_bc = [(b, c) for b, c in product(range(p), repeat=2) if (b, c) != (0, 0)]
    # 1
    G = AbGroup((p, p))
    for b, c in nonzero_bc:
        for al, be in product(range(1, p), repeat=2):
            for ga, et in product(range(p), repeat=2):
                q = F(-al * be, p)
                out.append(_record(
                    "thm3.3:1", G, Rank2(p, p, 0, b, c), ("g", "h"),
                    [("X", (1, 0), (F(al, p), F(ga, p)), 0), ("Y", (be, 0), (q, F(et, p)), 0)],
                    {"b": b, "c": c, "alpha": al, "beta": be, "gamma": ga, "eta": et}, (p, p), q, _MAP))
    # 2
    for a in range(1, p):
        for b, c in product(range(p), repeat=2):
            for al, be in product(range(p), repeat=2):
                out.append(_record(
                    "thm3.3:2", G, Rank2(p, p, a, b, c), ("g", "h"),
                    [("X", (1, 0), (F(al, p) + F(a, p2), F(be, p)), 0)],
                    {"a": a, "b": b, "c": c, "alpha": al, "beta": be}, (p2,), mapping=_MAP))
    # 3
    G = AbGroup((p2,))
    for a in range(1, p2):
        if a % p == 0:
            continue
        for al in range(p2):
            out.append(_record("thm3.3:3", G, Rank1(p2, a), ("g",), [("X", (p,), (F(al, p2) + F(a, p2 * p),), 0)],
                               {"a": a, "alpha": al}, (p2,), mapping=_MAP))
    # 4: Y is read as a (1, g^p)-primitive parallel to X
    for t in range(1, p):
        for al in range(1, p2):
            if al % p == 0:
                continue
            for be in range(p):
                out.append(_record(
                    "thm3.3:4", G, Rank1(p2, t * p), ("g",),
                    [("X", (p,), (F(al, p2),), 0), ("Y", (p,), (F(be, p) - F(al, p2),), 1)],
                    {"t": t, "alpha": al, "beta": be}, (p, p), F(-al, p), _MAP,
                    notes=["Delta(Y) read as Y(x)1 + g^p(x)Y"]))
    G = AbGroup((p2, p))
    # 5
    for b, c in nonzero_bc:
        for al in range(1, p):
            for be in range(p):
                out.append(_record("thm3.3:5", G, Rank2(p2, p, 0, b, c), ("g", "h"),
                                   [("X", (1, 0), (F(al, p), F(be, p)), 0)],
                                   {"b": b, "c": c, "alpha": al, "beta": be}, (p,), mapping=_MAP))
    # 6
    for b, c in nonzero_bc:
        for al in range(1, p2):
            if al % p == 0:
                continue
            for be in range(p):
                out.append(_record("thm3.3:6", G, Rank2(p2, p, 0, b, c), ("g", "h"),
                                   [("X", (p, 0), (F(al, p2), F(be, p)), 0)],
                                   {"b": b, "c": c, "alpha": al, "beta": be}, (p,), mapping=_MAP))
    # 7
    for t in range(1, p):
        for b, c in product(range(p), repeat=2):
            for al in range(1, p2):
                if al % p == 0:
                    continue
                for be in range(p):
                    out.append(_record("thm3.3:7", G, Rank2(p2, p, t * p, b, c), ("g", "h"),
                                       [("X", (p, 0), (F(al, p2), F(be, p)), 0)],
                                       {"t": t, "b": b, "c": c, "alpha": al, "beta": be}, (p,), mapping=_MAP))
    # 8: a runs over [0, p^2), the cocycle range of Z_{p^2}
    for a in range(p2):
        for b in range(p):
            if a == b == 0:
                continue
            for al in range(p2):
                out.append(_record("thm3.3:8", G, Rank2(p2, p, a, b, 0), ("g", "h"),
                                   [("X", (0, 1), (F(al, p2) + F(b, p2 * p), F(1, p)), 0)],
                                   {"a": a, "b": b, "alpha": al}, (p,), mapping=_MAP))
    # 9
    G = AbGroup((p, p, p))
    for tail in product(range(p), repeat=6):
        if not any(tail):
            continue
        phi = Rank3(p, (0,) + tail)
        for al in range(1, p):
            for be, ga in product(range(p), repeat=2):
                out.append(_record("thm3.3:9", G, phi, ("e", "f", "g"),
                                   [("X", (1, 0, 0), (F(al, p), F(be, p), F(ga, p)), 0)],
                                   {"a": list((0,) + tail), "alpha": al, "beta": be, "gamma": ga}, (p,),
                                   mapping="sigma read off eX, fX, gX"))
    return out


# --------------------------------------------------------------------------
# verification
# --------------------------------------------------------------------------

def record_structure(rec: ClassRecord) -> MajidStructure:
    types = [ArrowType(a.name, a.class_elt, a.sigma, a.copy) for a in rec.arrows]
    return MajidStructure(rec.group, rec.cocycle, types)


@dataclass
class VerificationReport:
    family: str
    checks: list

    @property
    def ok(self) -> bool:
        return all(c.ok for c in self.checks)

    @property
    def failed(self) -> list[str]:
        return [c.name for c in self.checks if not c.ok]

    def as_dict(self) -> dict:
        return {"family": self.family, "ok": self.ok, "failed": self.failed,
                "checks": [c.as_dict() for c in self.checks]}


def verify_record(rec: ClassRecord, *, max_levels: int = 64, dimension: bool = True) -> VerificationReport:
    """Rebuild the quiver model of ``rec`` and check every property it states."""
    checks: list[CheckResult] = []
    try:
        S = record_structure(rec)
    except (ValueError, OverflowError) as exc:
        return VerificationReport(rec.family, [CheckResult(False, "structure", detail=str(exc))])
    G, N = rec.group, S.order
    checks.append(check_3cocycle(rec.cocycle, G))
    checks.append(check_bimodule_axioms(S))

    # Delta(X) = X (x) 1 + c (x) X
    bad = None
    for a in rec.arrows:
        x = arrow_path(S.arrow(a.name))
        want = [(vertex(a.class_elt), x), (x, vertex(G.identity))]
        if coproduct(G, x) != want:
            bad = a.name
    checks.append(CheckResult(bad is None, "comultiplication", bad, checked=len(rec.arrows)))

    # g_k X = sigma_k X g_k
    bad = None
    for a in rec.arrows:
        X = S.gen(a.name)
        for k, gk in enumerate(G.generators()):
            V = S.vert(gk)
            if shuffle(S, V, X) != shuffle(S, X, V).scale(embed_turn(a.sigma[k], N)):
                bad = bad or (rec.gen_names[k], a.name)
    checks.append(CheckResult(bad is None, "relations", bad, checked=len(rec.arrows) * G.rank))

    # nilpotency: X^->N = 0, X^->(N-1) != 0, and the closed form agrees
    bad = None
    detail = ""
    for a in rec.arrows:
        X = S.gen(a.name)
        n = a.nil_order
        below = left_power(S, X, n - 1) if n >= 1 else None
        at = shuffle(S, below, X) if below is not None else None
        if n < 1 or below.is_zero() or not at.is_zero():
            bad, detail = a.name, f"{a.name}^->{n} is {'nonzero' if at is not None and not at.is_zero() else 'not sharp'}"
            break
        if n >= 2 and below != closed_form_power(S, a.name, n - 1):
            bad, detail = a.name, "closed form disagrees"
            break
    checks.append(CheckResult(bad is None, "nilpotency", bad, detail, len(rec.arrows)))

    if len(rec.arrows) == 2:
        x, y = (a.name for a in rec.arrows)
        try:
            q = skew_commutation_factor(S, x, y)
            ok = rec.q is not None and q == embed_turn(rec.q, N)
            checks.append(CheckResult(ok, "skew-commutation", None if ok else repr(q), checked=1))
        except NotSkewCommutative as exc:
            checks.append(CheckResult(False, "skew-commutation", detail=str(exc), checked=1))

    gens = [S.gen(a.name) for a in rec.arrows]
    ok = all(check_majid_axiom(S, u, v, w) for u in gens for v in gens for w in gens)
    checks.append(CheckResult(ok, "majid-axiom", checked=len(gens) ** 3))

    if dimension:
        vgens = [S.vert(gk) for gk in G.generators()]
        try:
            dim = subalgebra_dimension(S, vgens + gens, max_levels=max_levels)
            checks.append(CheckResult(dim == rec.dim, "dimension", None if dim == rec.dim else dim,
                                      "" if dim == rec.dim else f"expected {rec.dim}, got {dim}", 1))
        except OverflowError as exc:
            checks.append(CheckResult(False, "dimension", detail=str(exc)))
    return VerificationReport(rec.family, checks)
