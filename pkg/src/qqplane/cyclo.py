"""Exact arithmetic in cyclotomic fields Q(zeta_N) and q-combinatorics.

A :class:`CycNum` is a polynomial in the formal symbol ``zeta_N`` of degree
below ``phi(N)``, reduced modulo the N-th cyclotomic polynomial, so equality
is a plain comparison of coefficient vectors.  Coefficients are kept as a
vector of integers over one shared positive denominator.

Roots of unity that cross text boundaries are written ``zeta(k)^e``.
"""
from __future__ import annotations

import re
from fractions import Fraction
from functools import lru_cache
from math import gcd
from typing import Iterable, Sequence

__all__ = [
    "CycNum",
    "IntPoly",
    "cyclotomic_poly",
    "embed_root",
    "embed_turn",
    "inverse",
    "mult_order",
    "q_integer",
    "q_factorial",
    "gauss_binomial",
    "parse_zeta",
    "format_zeta",
    "turn_of",
    "lcm",
    "divisors",
]


def lcm(*values: int) -> int:
    out = 1
    for v in values:
        out = out * v // gcd(out, v)
    return out


def divisors(n: int) -> list[int]:
    return [d for d in range(1, n + 1) if n % d == 0]


# --------------------------------------------------------------------------
# integer polynomials (dense, ascending degree)
# --------------------------------------------------------------------------

class IntPoly(tuple):
    """Integer polynomial as an ascending coefficient tuple.

    The zero polynomial is the empty tuple; otherwise the last entry is
    nonzero.
    """

    def __new__(cls, coeffs: Iterable[int] = ()):
        c = [int(x) for x in coeffs]
        while c and c[-1] == 0:
            c.pop()
        return super().__new__(cls, c)

    @property
    def degree(self) -> int:
        return len(self) - 1

    def __mul__(self, other):  # type: ignore[override]
        if not self or not other:
            return IntPoly()
        out = [0] * (len(self) + len(other) - 1)
        for i, a in enumerate(self):
            if a:
                for j, b in enumerate(other):
                    out[i + j] += a * b
        return IntPoly(out)

    def divexact(self, other: "IntPoly") -> "IntPoly":
        """Exact division by a monic divisor; raises if a remainder is left."""
        if other[-1] != 1:
            raise ValueError("divisor must be monic")
        rem = list(self)
        q = [0] * max(len(self) - len(other) + 1, 0)
        for k in range(len(q) - 1, -1, -1):
            coef = rem[k + len(other) - 1]
            q[k] = coef
            if coef:
                for j, b in enumerate(other):
                    rem[k + j] -= coef * b
        if any(rem):
            raise ArithmeticError("division is not exact")
        return IntPoly(q)

    def __repr__(self) -> str:
        return f"IntPoly({list(self)})"


@lru_cache(maxsize=None)
def cyclotomic_poly(n: int) -> IntPoly:
    """N-th cyclotomic polynomial by exact division of x^N - 1."""
    if not isinstance(n, int) or n < 1:
        raise ValueError(f"cyclotomic order must be a positive integer, got {n!r}")
    p = IntPoly([-1] + [0] * (n - 1) + [1])
    for d in divisors(n)[:-1]:
        p = p.divexact(cyclotomic_poly(d))
    return p


# --------------------------------------------------------------------------
# per-order field data
# --------------------------------------------------------------------------

class _Field:
    __slots__ = ("order", "phi", "poly", "red", "powers", "root_index", "rou_order")

    def __init__(self, n: int):
        self.order = n
        self.poly = cyclotomic_poly(n)
        self.phi = self.poly.degree
        phi = self.phi
        # x^k mod Phi_N for phi <= k < 2*phi - 1
        self.red = {}
        cur = [0] * phi
        if phi:
            # x^phi = -(poly without leading term)
            cur = [-c for c in self.poly[:phi]]
        for k in range(phi, 2 * phi - 1):
            self.red[k] = tuple(cur)
            cur = self._times_x(cur)
        # every root of unity of Q(zeta_N) is a power of -zeta_N
        self.rou_order = n if n % 2 == 0 else 2 * n
        self.powers = []
        vec = [0] * phi
        vec[0] = 1
        step = n if n % 2 == 0 else 2 * n
        for j in range(step):
            self.powers.append(tuple(vec))
            vec = self._times_x(vec) if n % 2 == 0 else [-v for v in self._times_x(vec)]
        # powers[j] = zeta_N^j for even N, (-zeta_N)^j for odd N
        self.root_index = {v: j for j, v in enumerate(self.powers)}

    def _times_x(self, vec):
        phi = self.phi
        if phi == 0:
            return []
        top = vec[-1]
        out = [0] + list(vec[:-1])
        if top:
            for i in range(phi):
                out[i] -= top * self.poly[i]
        return out

    def zeta_power(self, j: int) -> tuple:
        """Coefficient vector of zeta_N^j."""
        n = self.order
        j %= n
        if n % 2 == 0:
            return self.powers[j]
        # (-zeta)^j = (-1)^j zeta^j ; zeta^j = (-zeta)^(j + n) when j odd
        return self.powers[j if j % 2 == 0 else j + n]


@lru_cache(maxsize=None)
def _field(n: int) -> _Field:
    return _Field(n)


def _normalize(nums: list[int], den: int) -> tuple[tuple[int, ...], int]:
    if den < 0:
        nums = [-x for x in nums]
        den = -den
    g = den
    for x in nums:
        if x:
            g = gcd(g, x)
            if g == 1:
                break
    if not any(nums):
        return tuple(0 for _ in nums), 1
    if g != 1:
        nums = [x // g for x in nums]
        den //= g
    return tuple(nums), den


class CycNum:
    """An exact element of Q(zeta_N) in canonical form."""

    __slots__ = ("order", "_num", "_den", "_hash")

    def __init__(self, order: int, nums: Sequence[int], den: int = 1, *, _canonical: bool = False):
        self.order = order
        if _canonical:
            self._num, self._den = tuple(nums), den
        else:
            self._num, self._den = _normalize(list(nums), den)
        self._hash = None

    # -- constructors -----------------------------------------------------
    @classmethod
    def from_coeffs(cls, order: int, coeffs: Sequence) -> "CycNum":
        """Build from rational coefficients of a polynomial in zeta_N.

        The polynomial may have any degree; it is reduced modulo Phi_N.
        """
        fracs = [Fraction(c) for c in coeffs]
        den = 1
        for f in fracs:
            den = lcm(den, f.denominator)
        ints = [int(f * den) for f in fracs]
        F = _field(order)
        acc = [0] * F.phi
        for k, c in enumerate(ints):
            if c:
                vec = F.zeta_power(k)
                for i in range(F.phi):
                    acc[i] += c * vec[i]
        return cls(order, acc, den)

    @classmethod
    def const(cls, order: int, value=0) -> "CycNum":
        f = Fraction(value)
        phi = _field(order).phi
        nums = [0] * phi
        nums[0] = f.numerator
        return cls(order, nums, f.denominator)

    @classmethod
    def zero(cls, order: int) -> "CycNum":
        return cls.const(order, 0)

    @classmethod
    def one(cls, order: int) -> "CycNum":
        return cls.const(order, 1)

    @classmethod
    def zeta(cls, order: int, e: int = 1) -> "CycNum":
        return cls(order, _field(order).zeta_power(e), 1, _canonical=True)

    @classmethod
    def sum_of_zetas(cls, order: int, exps) -> "CycNum":
        """sum(zeta_N ** e for e in exps) without any multiplications."""
        F = _field(order)
        acc = [0] * F.phi
        for e in exps:
            vec = F.zeta_power(e)
            for i in range(F.phi):
                acc[i] += vec[i]
        return cls(order, acc, 1)

    # -- views --------------------------------------------------------------
    @property
    def coeffs(self) -> tuple[Fraction, ...]:
        return tuple(Fraction(x, self._den) for x in self._num)

    def is_zero(self) -> bool:
        return not any(self._num)

    def is_one(self) -> bool:
        return self._den == 1 and (not self._num or self._num[0] == 1) and not any(self._num[1:])

    def turn(self) -> Fraction | None:
        """Return r with self = exp(2 pi i r) if self is a root of unity."""
        if self._den != 1:
            return None
        F = _field(self.order)
        j = F.root_index.get(self._num)
        if j is None:
            return None
        n = self.order
        if n % 2 == 0:
            return Fraction(j, n) % 1
        # (-zeta_n)^j = exp(2 pi i (j/2 + j/n))
        return (Fraction(j, 2) + Fraction(j, n)) % 1

    # -- arithmetic ----------------------------------------------------------
    def _coerce(self, other) -> "CycNum":
        if isinstance(other, CycNum):
            if other.order != self.order:
                raise ValueError(
                    f"ambient order mismatch: Q(zeta_{self.order}) vs Q(zeta_{other.order})"
                )
            return other
        if isinstance(other, (int, Fraction)):
            return CycNum.const(self.order, other)
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        d1, d2 = self._den, o._den
        if d1 == d2:
            nums = [a + b for a, b in zip(self._num, o._num)]
            return CycNum(self.order, nums, d1)
        nums = [a * d2 + b * d1 for a, b in zip(self._num, o._num)]
        return CycNum(self.order, nums, d1 * d2)

    __radd__ = __add__

    def __neg__(self):
        return CycNum(self.order, [-a for a in self._num], self._den, _canonical=True)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self + (-o)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            f = Fraction(other)
            return CycNum(self.order, [a * f.numerator for a in self._num], self._den * f.denominator)
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        F = _field(self.order)
        phi = F.phi
        a, b = self._num, o._num
        conv = [0] * (2 * phi - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    if y:
                        conv[i + j] += x * y
        out = conv[:phi]
        for k in range(phi, 2 * phi - 1):
            c = conv[k]
            if c:
                r = F.red[k]
                for i in range(phi):
                    out[i] += c * r[i]
        return CycNum(self.order, out, self._den * o._den)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "CycNum":
        if k < 0:
            return inverse(self) ** (-k)
        result = CycNum.one(self.order)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return self * (1 / Fraction(other))
        return self * inverse(self._coerce(other))

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = CycNum.const(self.order, other)
        if not isinstance(other, CycNum):
            return NotImplemented
        return self.order == other.order and self._den == other._den and self._num == other._num

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.order, self._num, self._den))
        return self._hash

    def __bool__(self):
        return not self.is_zero()

    # -- text ---------------------------------------------------------------
    def serialize(self) -> str:
        """``[N; c0, c1, ...]`` with exact rationals."""
        parts = ", ".join(str(c) for c in self.coeffs)
        return f"[{self.order}; {parts}]"

    @classmethod
    def parse(cls, text: str) -> "CycNum":
        m = re.fullmatch(r"\s*\[\s*(\d+)\s*;(.*)\]\s*", text)
        if not m:
            raise ValueError(f"not a CycNum literal: {text!r}")
        order = int(m.group(1))
        body = m.group(2).strip()
        coeffs = [Fraction(t.strip()) for t in body.split(",")] if body else []
        if len(coeffs) != _field(order).phi:
            raise ValueError(f"expected {_field(order).phi} coefficients for N={order}")
        return cls.from_coeffs(order, coeffs)

    def __repr__(self) -> str:
        t = self.turn()
        if t is not None:
            return f"CycNum({format_zeta(t)} in Q(zeta_{self.order}))"
        return f"CycNum{self.serialize()}"

    __str__ = serialize


# --------------------------------------------------------------------------
# roots of unity
# --------------------------------------------------------------------------

def embed_root(k: int, e: int, n: int) -> CycNum:
    """zeta_k^e as an element of Q(zeta_n), using zeta_k = zeta_n^(n/k)."""
    if k < 1 or n < 1 or n % k:
        raise ValueError(f"cannot embed zeta_{k} into Q(zeta_{n}): {k} does not divide {n}")
    return CycNum.zeta(n, (e * (n // k)) % n)


def embed_turn(r: Fraction, n: int) -> CycNum:
    """exp(2 pi i r) in Q(zeta_n); the denominator of r must divide n."""
    r = Fraction(r) % 1
    return embed_root(r.denominator, r.numerator, n)


_ZETA_RE = re.compile(r"\s*zeta\(\s*(-?\d+)\s*\)\s*(?:\^\s*\(?\s*(-?\d+)\s*\)?)?\s*")


def parse_zeta(text: str) -> Fraction:
    """Parse ``zeta(k)^e`` (or a product ``zeta(k)^e*zeta(l)^f``) into a turn."""
    total = Fraction(0)
    for piece in text.split("*"):
        m = _ZETA_RE.fullmatch(piece)
        if not m:
            if piece.strip() == "1":
                continue
            raise ValueError(f"bad root-of-unity literal: {text!r}")
        k = int(m.group(1))
        if k < 1:
            raise ValueError(f"root order must be positive in {text!r}")
        e = int(m.group(2)) if m.group(2) is not None else 1
        total += Fraction(e, k)
    return total % 1


def format_zeta(r: Fraction) -> str:
    r = Fraction(r) % 1
    return f"zeta({r.denominator})^{r.numerator}"


def turn_of(a: CycNum) -> Fraction:
    t = a.turn()
    if t is None:
        raise ValueError(f"{a!r} is not a root of unity")
    return t


# --------------------------------------------------------------------------
# inverse and multiplicative order
# --------------------------------------------------------------------------

def _qpoly_trim(p: list[Fraction]) -> list[Fraction]:
    while p and p[-1] == 0:
        p.pop()
    return p


def _qpoly_divmod(a: list[Fraction], b: list[Fraction]):
    a = list(a)
    q = [Fraction(0)] * max(len(a) - len(b) + 1, 1)
    lead = b[-1]
    while len(_qpoly_trim(a)) >= len(b):
        shift = len(a) - len(b)
        c = a[-1] / lead
        q[shift] = c
        for i, x in enumerate(b):
            a[shift + i] -= c * x
        _qpoly_trim(a)
    return _qpoly_trim(q), a


def _qpoly_mul(a, b):
    if not a or not b:
        return []
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] += x * y
    return _qpoly_trim(out)


def _qpoly_sub(a, b):
    n = max(len(a), len(b))
    out = [(a[i] if i < len(a) else 0) - (b[i] if i < len(b) else 0) for i in range(n)]
    return _qpoly_trim([Fraction(x) for x in out])


def inverse(a: CycNum) -> CycNum:
    """Multiplicative inverse by the extended Euclidean algorithm against Phi_N."""
    if a.is_zero():
        raise ZeroDivisionError("inverse of zero in a cyclotomic field")
    n = a.order
    r0 = [Fraction(c) for c in cyclotomic_poly(n)]
    r1 = _qpoly_trim(list(a.coeffs))
    s0, s1 = [], [Fraction(1)]
    # invariant: s_i * a == r_i  (mod Phi_N)
    while len(r1) > 1:
        q, r = _qpoly_divmod(r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, _qpoly_sub(s0, _qpoly_mul(q, s1))
    c = r1[0]
    return CycNum.from_coeffs(n, [x / c for x in s1])


def mult_order(a: CycNum) -> int:
    """Multiplicative order of a root of unity in Q(zeta_N)."""
    if a.is_zero():
        raise ValueError("zero has no multiplicative order")
    t = a.turn()
    if t is None:
        raise ValueError(f"{a!r} is not a root of unity")
    return t.denominator


# --------------------------------------------------------------------------
# q-combinatorics
# --------------------------------------------------------------------------

def q_integer(l: int, h: CycNum) -> CycNum:
    """l_h = 1 + h + ... + h^(l-1)."""
    if l < 0:
        raise ValueError("q-integer needs l >= 0")
    total = CycNum.zero(h.order)
    term = CycNum.one(h.order)
    for _ in range(l):
        total = total + term
        term = term * h
    return total


_QF_CACHE: dict = {}


def q_factorial(l: int, h: CycNum) -> CycNum:
    """l!_h = 1_h 2_h ... l_h; prefixes are memoized per h."""
    if l < 0:
        raise ValueError("q-factorial needs l >= 0")
    entry = _QF_CACHE.get(h)
    if entry is None:
        if len(_QF_CACHE) > 512:
            _QF_CACHE.clear()
        one = CycNum.one(h.order)
        entry = _QF_CACHE[h] = [[one], CycNum.zero(h.order), one]
    facts = entry[0]
    while len(facts) <= l:
        # k_h = (k-1)_h + h^(k-1)
        entry[1] = entry[1] + entry[2]
        entry[2] = entry[2] * h
        facts.append(facts[-1] * entry[1])
    return facts[l]


def gauss_binomial(n: int, k: int, h: CycNum) -> CycNum:
    """Gaussian binomial via the division-free q-Pascal recurrence."""
    if k < 0 or n < 0 or k > n:
        raise ValueError(f"gauss_binomial needs 0 <= k <= n, got n={n}, k={k}")
    one = CycNum.one(h.order)
    row = [one]
    for m in range(1, n + 1):
        new = [one] * (m + 1)
        hk = one
        for j in range(1, m):
            hk = hk * h
            # [m, j] = [m-1, j-1] + h^j [m-1, j]
            new[j] = row[j - 1] + hk * row[j]
        row = new
    return row[k]
