"""Hopf quivers Q(G, R) over finite abelian groups, paths and the path coalgebra."""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from itertools import combinations
from math import comb
from typing import Iterator, NamedTuple

from .abgroup import AbGroup, GrpElt, format_elt, parse_elt
from .cyclo import CycNum

DEFAULT_PATH_CAP = 200_000
DEFAULT_ARROW_CAP = 100_000


class Arrow(NamedTuple):
    """Arrow ``source -> class_elt * source``; ``copy`` tells parallel arrows apart."""

    source: GrpElt
    class_elt: GrpElt
    copy: int = 0


class Path(NamedTuple):
    """A path given by its start vertex and arrows in walking order.

    ``arrows[0]`` leaves ``start``; the empty path is the vertex itself.
    """

    start: GrpElt
    arrows: tuple = ()

    @property
    def length(self) -> int:
        return len(self.arrows)


@dataclass
class Ramification:
    """Formal sum of group elements (conjugacy classes of an abelian group)."""

    mult: dict = field(default_factory=dict)

    def __post_init__(self):
        clean = {}
        for c, k in self.mult.items():
            if k < 0:
                raise ValueError("ramification multiplicities must be >= 0")
            if k:
                clean[tuple(c)] = clean.get(tuple(c), 0) + int(k)
        self.mult = dict(sorted(clean.items()))

    @classmethod
    def of(cls, *classes: GrpElt) -> "Ramification":
        """Sum of the given classes, repeated classes add up."""
        d: dict = {}
        for c in classes:
            d[tuple(c)] = d.get(tuple(c), 0) + 1
        return cls(d)

    def total(self) -> int:
        return sum(self.mult.values())


class HopfQuiver:
    """Vertices are the group elements; R_C arrows x -> c x for each class c."""

    def __init__(self, G: AbGroup, R: Ramification, *, arrow_cap: int = DEFAULT_ARROW_CAP):
        self.group = G
        self.ramification = R
        for c in R.mult:
            if not G.contains(c):
                raise ValueError(f"class element {c} is not in {G}")
        if G.order * R.total() > arrow_cap:
            raise OverflowError(f"{G.order * R.total()} arrows exceed cap {arrow_cap}")
        self.vertices = G.enumerate()
        self.arrows = [
            Arrow(x, c, k) for x in self.vertices for c, mult in R.mult.items() for k in range(mult)
        ]
        self._out: dict = {}
        for a in self.arrows:
            self._out.setdefault(a.source, []).append(a)

    def target(self, a: Arrow) -> GrpElt:
        return self.group.mul(a.class_elt, a.source)

    def out_arrows(self, v: GrpElt) -> list:
        return self._out.get(v, [])

    def has_arrow(self, a: Arrow) -> bool:
        return (
            self.group.contains(a.source)
            and 0 <= a.copy < self.ramification.mult.get(a.class_elt, 0)
        )

    def end(self, p: Path) -> GrpElt:
        v = p.start
        for a in p.arrows:
            v = self.group.mul(a.class_elt, v)
        return v

    def is_path(self, p: Path) -> bool:
        v = p.start
        if not self.group.contains(v):
            return False
        for a in p.arrows:
            if a.source != v or not self.has_arrow(a):
                return False
            v = self.target(a)
        return True

    def __repr__(self) -> str:
        return f"HopfQuiver({self.group}, {self.ramification.mult})"


def build_quiver(G: AbGroup, R: Ramification, **caps) -> HopfQuiver:
    return HopfQuiver(G, R, **caps)


def vertex(v: GrpElt) -> Path:
    return Path(tuple(v), ())


def arrow_path(a: Arrow) -> Path:
    return Path(a.source, (a,))


def enumerate_paths(q: HopfQuiver, length: int, cap: int = DEFAULT_PATH_CAP) -> list[Path]:
    """All paths of the given length, in lexicographic order of (start, arrows)."""
    if length < 0:
        raise ValueError("path length must be >= 0")
    count = len(q.vertices) * (q.ramification.total() ** length)
    if count > cap:
        raise OverflowError(f"{count} paths of length {length} exceed cap {cap}")
    paths = [vertex(v) for v in q.vertices]
    for _ in range(length):
        paths = [
            Path(p.start, p.arrows + (a,))
            for p in paths
            for a in q.out_arrows(q.end(p))
        ]
    return paths


# --------------------------------------------------------------------------
# coalgebra structure
# --------------------------------------------------------------------------

def path_end(G: AbGroup, p: Path) -> GrpElt:
    v = p.start
    for a in p.arrows:
        v = G.mul(a.class_elt, v)
    return v


def _vertices_along(G: AbGroup, p: Path) -> list:
    out = [p.start]
    for a in p.arrows:
        out.append(G.mul(a.class_elt, out[-1]))
    return out


def coproduct(G: AbGroup, p: Path) -> list[tuple[Path, Path]]:
    """Delta(p) as a list of (left, right) terms.

    For p = a_l ... a_1 the k-th term is (a_l ... a_{k+1}) (x) (a_k ... a_1):
    the left leg is the later part of the walk.
    """
    verts = _vertices_along(G, p)
    out = []
    for k in range(p.length, -1, -1):
        left = Path(verts[k], p.arrows[k:])
        right = Path(p.start, p.arrows[:k])
        out.append((left, right))
    return out


def counit(p: Path) -> int:
    return 1 if p.length == 0 else 0


def thin_splits(G: AbGroup, p: Path, n: int) -> list[tuple]:
    """All n-thin splits of p, one per 0/1 sequence with ``p.length`` ones.

    Each split is a tuple ``(d, pieces)``: ``d`` the 0/1 sequence and
    ``pieces[i]`` a vertex (group element tuple wrapped as a length-0 Path) or
    an Arrow, listed from the source side; concatenating the pieces recovers p.
    """
    l = p.length
    if n < l:
        raise ValueError(f"an {n}-thin split needs n >= length {l}")
    verts = _vertices_along(G, p)
    out = []
    for ones in combinations(range(n), l):
        d = [0] * n
        for i in ones:
            d[i] = 1
        pieces = []
        k = 0
        for i in range(n):
            if d[i]:
                pieces.append(p.arrows[k])
                k += 1
            else:
                pieces.append(vertex(verts[k]))
        out.append((tuple(d), tuple(pieces)))
    assert len(out) == comb(n, l)
    return out


# --------------------------------------------------------------------------
# linear combinations of paths
# --------------------------------------------------------------------------

class PathVec:
    """Finite CycNum-linear combination of paths in one ambient field."""

    __slots__ = ("order", "terms")

    def __init__(self, order: int, terms: dict | None = None):
        self.order = order
        self.terms: dict = {}
        if terms:
            for p, c in terms.items():
                self._acc(p, c)

    @classmethod
    def of(cls, order: int, p: Path, coeff: CycNum | int = 1) -> "PathVec":
        if not isinstance(coeff, CycNum):
            coeff = CycNum.const(order, coeff)
        return cls(order, {p: coeff})

    def _acc(self, p: Path, c: CycNum) -> None:
        if c.order != self.order:
            raise ValueError("coefficient lives in a different cyclotomic field")
        cur = self.terms.get(p)
        new = c if cur is None else cur + c
        if new.is_zero():
            self.terms.pop(p, None)
        else:
            self.terms[p] = new

    def copy(self) -> "PathVec":
        out = PathVec(self.order)
        out.terms = dict(self.terms)
        return out

    def __add__(self, other: "PathVec") -> "PathVec":
        out = self.copy()
        for p, c in other.terms.items():
            out._acc(p, c)
        return out

    def __sub__(self, other: "PathVec") -> "PathVec":
        return self + other.scale(CycNum.const(self.order, -1))

    def scale(self, c: CycNum | int) -> "PathVec":
        if not isinstance(c, CycNum):
            c = CycNum.const(self.order, c)
        if c.is_zero():
            return PathVec(self.order)
        out = PathVec(self.order)
        out.terms = {p: v * c for p, v in self.terms.items()}
        return out

    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other) -> bool:
        if not isinstance(other, PathVec):
            return NotImplemented
        return self.order == other.order and self.terms == other.terms

    def __iter__(self) -> Iterator:
        return iter(sorted(self.terms.items()))

    def __len__(self) -> int:
        return len(self.terms)

    def lengths(self) -> set:
        return {p.length for p in self.terms}

    def coeff(self, p: Path) -> CycNum:
        return self.terms.get(p, CycNum.zero(self.order))

    def __repr__(self) -> str:
        inner = ", ".join(f"{format_path(p)}: {c!r}" for p, c in self)
        return f"PathVec({inner})"


# --------------------------------------------------------------------------
# path literals:  (0,0) -X-> (1,0) -X-> (0,0)
# --------------------------------------------------------------------------

def format_path(p: Path, names: dict | None = None, G: AbGroup | None = None) -> str:
    """Render ``v0 -a1-> v1 -a2-> v2``; arrows are labelled by ``names[(class, copy)]``."""
    names = names or {}
    out = [format_elt(p.start)]
    v = p.start
    for k, a in enumerate(p.arrows):
        label = names.get((a.class_elt, a.copy), f"{format_elt(a.class_elt)}#{a.copy}")
        if G is not None:
            v = G.mul(a.class_elt, v)
        elif k + 1 < p.length:
            v = p.arrows[k + 1].source
        else:
            # without the group the last target is not reduced; leave it open
            out.append(f"-{label}-> ...")
            break
        out.append(f"-{label}-> {format_elt(v)}")
    return " ".join(out)


_STEP = re.compile(r"-\s*([^\s>-][^>]*?)\s*->")


def parse_path(text: str, G: AbGroup, names: dict) -> Path:
    """Inverse of :func:`format_path`; ``names`` maps label -> (class, copy)."""
    tokens = re.split(r"(-[^>]*->)", text.strip())
    start = G.elt(parse_elt(tokens[0]))
    v = start
    arrows = []
    for i in range(1, len(tokens), 2):
        m = _STEP.fullmatch(tokens[i].strip())
        if not m or m.group(1) not in names:
            raise ValueError(f"unknown arrow label in {tokens[i]!r}")
        cls, copy = names[m.group(1)]
        a = Arrow(v, tuple(cls), copy)
        v = G.mul(a.class_elt, v)
        nxt = G.elt(parse_elt(tokens[i + 1]))
        if nxt != v:
            raise ValueError(f"path literal {text!r}: expected vertex {format_elt(v)}, got {format_elt(nxt)}")
        arrows.append(a)
    return Path(start, tuple(arrows))
