"""The bicategory of spans of finite sets.

Composites are canonical pullbacks and remember how they were built
(``Span.parts`` and ``Span.pb``); factoring a 2-cell into a composite reads
the middle leg off that provenance.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterator, Optional

from . import finset as fs
from .bicategory import Aug, Bicategory, CoherentClass, Gen
from .finset import BoundaryMismatch, FinFunction
from .report import InternalConsistencyError


class MissingCompositeStructure(ValueError):
    pass


class InvalidSquare(ValueError):
    pass


@dataclass(frozen=True)
class Span:
    """``X <-left- T -right-> Z``."""

    left: FinFunction
    right: FinFunction
    parts: Optional[tuple["Span", "Span"]] = field(default=None, compare=False, repr=False)
    pb: Optional[fs.PullbackResult] = field(default=None, compare=False, repr=False)

    def __post_init__(self):
        if self.left.dom != self.right.dom:
            raise ValueError("span legs have different domains")

    @property
    def apex(self) -> int:
        return self.left.dom

    @property
    def src(self) -> int:
        return self.left.cod

    @property
    def tgt(self) -> int:
        return self.right.cod

    def __repr__(self):
        return f"Span({list(self.left.table)}:{self.src}, {list(self.right.table)}:{self.tgt})"

    def to_json(self) -> dict:
        return {"left": self.left.to_json(), "right": self.right.to_json()}

    @classmethod
    def from_json(cls, data: dict) -> Span:
        return cls(FinFunction.from_json(data["left"]), FinFunction.from_json(data["right"]))


def span(left, right, x: int, z: int) -> Span:
    """Build a span from plain tables."""
    return Span(FinFunction(len(left), x, tuple(left)), FinFunction(len(right), z, tuple(right)))


@dataclass(frozen=True)
class SpanMor:
    src: Span
    dst: Span
    map: FinFunction

    def __post_init__(self):
        m = self.map
        if m.dom != self.src.apex or m.cod != self.dst.apex:
            raise ValueError("2-cell map has the wrong boundary")
        if self.src.src != self.dst.src or self.src.tgt != self.dst.tgt:
            raise ValueError("2-cell between spans with different boundary objects")
        dl, dr = self.dst.left.table, self.dst.right.table
        sl, sr = self.src.left.table, self.src.right.table
        for i, j in enumerate(m.table):
            if dl[j] != sl[i] or dr[j] != sr[i]:
                raise ValueError(f"2-cell map does not commute with legs at {i}")

    def then(self, other: SpanMor) -> SpanMor:
        return vcomp(self, other)

    def to_json(self) -> dict:
        return {"src": self.src.to_json(), "dst": self.dst.to_json(), "map": list(self.map.table)}

    @classmethod
    def from_json(cls, data: dict) -> SpanMor:
        src, dst = Span.from_json(data["src"]), Span.from_json(data["dst"])
        return cls(src, dst, FinFunction(src.apex, dst.apex, tuple(data["map"])))


@dataclass(frozen=True)
class GenericWitnessSpan:
    base: Span
    h: FinFunction

    def __post_init__(self):
        if self.h.dom != self.base.apex:
            raise ValueError("witness leg must start at the apex")


@dataclass(frozen=True)
class SpanFactorization:
    witness: GenericWitnessSpan
    left_mor: SpanMor
    right_mor: SpanMor


# ---------------------------------------------------------------------------
# 1-cells


def identity_span(x: int) -> Span:
    i = fs.identity(x)
    return Span(i, i)


@lru_cache(maxsize=200_000)
def compose_spans(a: Span, b: Span) -> Span:
    """``a;b`` via the canonical pullback of ``a.right`` and ``b.left``."""
    if a.tgt != b.src:
        raise BoundaryMismatch(f"cannot compose {a!r} with {b!r}")
    pb = fs.pullback(a.right, b.left)
    left = fs.compose(pb.proj1, a.left)
    right = fs.compose(pb.proj2, b.right)
    return Span(left, right, (a, b), pb)


def _provenance(c: Span, a: Span | None = None, b: Span | None = None) -> tuple[Span, Span, fs.PullbackResult]:
    if c.parts is None:
        if a is None or b is None:
            raise MissingCompositeStructure(f"{c!r} is not a tracked composite")
        c2 = compose_spans(a, b)
        if c2 != c:
            raise MissingCompositeStructure(f"{c!r} is not the composite of the given factors")
        return a, b, c2.pb
    if a is not None and (c.parts[0] != a or c.parts[1] != b):
        c2 = compose_spans(a, b)
        if c2 != c:
            raise MissingCompositeStructure("factors do not match the tracked composite")
        return a, b, c2.pb
    return c.parts[0], c.parts[1], c.pb


# ---------------------------------------------------------------------------
# 2-cells


def id2(a: Span) -> SpanMor:
    return SpanMor(a, a, fs.identity(a.apex))


def vcomp(al: SpanMor, be: SpanMor) -> SpanMor:
    if al.dst != be.src:
        raise BoundaryMismatch("vertical composite of non-composable 2-cells")
    return SpanMor(al.src, be.dst, fs.compose(al.map, be.map))


def hcomp(al: SpanMor, be: SpanMor) -> SpanMor:
    """``al;be : a;b -> a';b'``."""
    src = compose_spans(al.src, be.src)
    dst = compose_spans(al.dst, be.dst)
    am, bm, idx = al.map.table, be.map.table, dst.pb.pair_index
    table = tuple(idx[(am[i], bm[j])] for i, j in src.pb.pairs)
    return SpanMor(src, dst, FinFunction.unchecked(src.apex, dst.apex, table))


def inverse(al: SpanMor) -> SpanMor:
    return SpanMor(al.dst, al.src, al.map.inverse())


def two_cells(a: Span, b: Span) -> list[SpanMor]:
    """All 2-cells ``a -> b``, in lexicographic table order."""
    if a.src != b.src or a.tgt != b.tgt:
        return []
    return _two_cells(a, b)


@lru_cache(maxsize=200_000)
def _two_cells(a: Span, b: Span) -> list[SpanMor]:
    targets: dict = {}
    for j, key in enumerate(zip(b.left.table, b.right.table)):
        targets.setdefault(key, []).append(j)
    choices = [targets.get(key, ()) for key in zip(a.left.table, a.right.table)]
    return [SpanMor(a, b, FinFunction.unchecked(a.apex, b.apex, t)) for t in itertools.product(*choices)]


def count_two_cells(a: Span, b: Span) -> int:
    if a.src != b.src or a.tgt != b.tgt:
        return 0
    counts: dict = {}
    for key in zip(b.left.table, b.right.table):
        counts[key] = counts.get(key, 0) + 1
    n = 1
    for key in zip(a.left.table, a.right.table):
        n *= counts.get(key, 0)
    return n


def canonical_associator(a: Span, b: Span, c: Span) -> SpanMor:
    """``(a;b);c -> a;(b;c)``."""
    ab = compose_spans(a, b)
    ab_c = compose_spans(ab, c)
    bc = compose_spans(b, c)
    a_bc = compose_spans(a, bc)
    ab_pairs = ab.pb.pairs
    table = []
    for m, k in ab_c.pb.pairs:
        i, j = ab_pairs[m]
        table.append(a_bc.pb.pair_index[(i, bc.pb.pair_index[(j, k)])])
    return SpanMor(ab_c, a_bc, FinFunction.unchecked(ab_c.apex, a_bc.apex, tuple(table)))


def canonical_left_unitor(a: Span) -> SpanMor:
    """``a -> 1;a``."""
    c = compose_spans(identity_span(a.src), a)
    idx = c.pb.pair_index
    table = tuple(idx[(a.left.table[i], i)] for i in range(a.apex))
    return SpanMor(a, c, FinFunction.unchecked(a.apex, c.apex, table))


def canonical_right_unitor(a: Span) -> SpanMor:
    """``a -> a;1``."""
    c = compose_spans(a, identity_span(a.tgt))
    idx = c.pb.pair_index
    table = tuple(idx[(i, a.right.table[i])] for i in range(a.apex))
    return SpanMor(a, c, FinFunction.unchecked(a.apex, c.apex, table))


# ---------------------------------------------------------------------------
# generics, augmentations, factorization


def generic_2cell(w: GenericWitnessSpan) -> SpanMor:
    """``delta_{s,h,t}: (s,t) -> (s,h);(h,t)``, the diagonal into the pullback."""
    s, t, h = w.base.left, w.base.right, w.h
    c = compose_spans(Span(s, h), Span(h, t))
    idx = c.pb.pair_index
    return SpanMor(w.base, c, FinFunction.unchecked(w.base.apex, c.apex, tuple(idx[(i, i)] for i in range(w.base.apex))))


def generic(s: FinFunction, h: FinFunction, t: FinFunction) -> Gen:
    w = GenericWitnessSpan(Span(s, t), h)
    return Gen(generic_2cell(w), w.base, Span(s, h), Span(h, t))


def augmentation_2cell(h: FinFunction) -> SpanMor:
    """``epsilon_h: (h,h) -> 1_X`` with underlying map ``h``."""
    return SpanMor(Span(h, h), identity_span(h.cod), h)


def augmentation(h: FinFunction) -> Aug:
    return Aug(augmentation_2cell(h), Span(h, h), h.cod)


def factor_2cell(f: SpanMor, a: Span | None = None, b: Span | None = None) -> SpanFactorization:
    """Read off ``(h, left, right)`` for a 2-cell into a tracked composite.

    Pass the factors when ``f.dst`` may be an equal but untracked span.
    """
    a, b, pb = _provenance(f.dst, a, b)
    m1 = fs.compose(f.map, pb.proj1)
    m2 = fs.compose(f.map, pb.proj2)
    h = fs.compose(m1, a.right)
    w = GenericWitnessSpan(f.src, h)
    left = SpanMor(Span(f.src.left, h), a, m1)
    right = SpanMor(Span(h, f.src.right), b, m2)
    return SpanFactorization(w, left, right)


def recompose(fac: SpanFactorization) -> SpanMor:
    return vcomp(generic_2cell(fac.witness), hcomp(fac.left_mor, fac.right_mor))


def is_generic_cell(delta: SpanMor, l: Span | None = None, r: Span | None = None) -> bool:
    """Generic iff both components into the pullback apex are bijections."""
    _, _, pb = _provenance(delta.dst, l, r)
    return fs.compose(delta.map, pb.proj1).is_bijective() and fs.compose(delta.map, pb.proj2).is_bijective()


def generic_filler(delta: Gen, gamma: SpanMor, phi: tuple[SpanMor, SpanMor], theta: tuple[SpanMor, SpanMor]):
    """The unique ``(g1, g2)`` filling the square ``gamma;(phi1;phi2) == delta;(theta1;theta2)``."""
    p1, p2 = phi
    t1, t2 = theta
    lhs = vcomp(gamma, hcomp(p1, p2))
    rhs = vcomp(delta.cell, hcomp(t1, t2))
    if lhs != rhs:
        raise InvalidSquare("square does not commute")
    got = fill(delta, gamma, p1.src, p2.src)
    if got is None:
        raise InternalConsistencyError("no filler through a cell assumed generic")
    g1, g2 = got
    if vcomp(g1, p1) != t1 or vcomp(g2, p2) != t2:
        raise InternalConsistencyError("filler does not satisfy the bottom triangle")
    return g1, g2


def fill(delta: Gen, gamma: SpanMor, f: Span, g: Span):
    """Diagonal filler through a generic ``delta: c -> l;r`` for ``gamma: c -> f;g``."""
    _, _, dpb = _provenance(delta.cell.dst, delta.l, delta.r)
    _, _, gpb = _provenance(gamma.dst, f, g)
    u1 = fs.compose(delta.cell.map, dpb.proj1)
    u2 = fs.compose(delta.cell.map, dpb.proj2)
    if not (u1.is_bijective() and u2.is_bijective()):
        return None
    try:
        g1 = SpanMor(delta.l, f, fs.compose(u1.inverse(), fs.compose(gamma.map, gpb.proj1)))
        g2 = SpanMor(delta.r, g, fs.compose(u2.inverse(), fs.compose(gamma.map, gpb.proj2)))
    except ValueError:
        return None
    if vcomp(delta.cell, hcomp(g1, g2)) != gamma:
        return None
    return g1, g2


# ---------------------------------------------------------------------------
# enumeration


@lru_cache(maxsize=None)
def spans(x: int, z: int, max_apex: int) -> tuple[Span, ...]:
    out = []
    for n in range(max_apex + 1):
        for lt in itertools.product(range(x), repeat=n):
            for rt in itertools.product(range(z), repeat=n):
                out.append(Span(FinFunction.unchecked(n, x, lt), FinFunction.unchecked(n, z, rt)))
    return tuple(out)


def spans_with_apex(x: int, z: int, n: int) -> Iterator[Span]:
    for lt in itertools.product(range(x), repeat=n):
        for rt in itertools.product(range(z), repeat=n):
            yield Span(FinFunction.unchecked(n, x, lt), FinFunction.unchecked(n, z, rt))


def witnesses(base: Span, y: int) -> Iterator[GenericWitnessSpan]:
    for ht in itertools.product(range(y), repeat=base.apex):
        yield GenericWitnessSpan(base, FinFunction.unchecked(base.apex, y, ht))


# ---------------------------------------------------------------------------
# bicategory handle


class SpanBicat(Bicategory):
    """Span(FinSet) with objects ``0..max_obj`` and 1-cells of apex ``<= max_apex``."""

    name = "span"

    def __init__(self, max_obj: int = 2, max_apex: int = 2, min_obj: int = 0):
        self.max_obj = max_obj
        self.max_apex = max_apex
        self.min_obj = min_obj

    def objects(self):
        return list(range(self.min_obj, self.max_obj + 1))

    def hom(self, X, Y):
        return list(spans(X, Y, self.max_apex))

    def source(self, a):
        return a.src

    def target(self, a):
        return a.tgt

    def two_cells(self, a, b):
        return two_cells(a, b)

    def dom2(self, al):
        return al.src

    def cod2(self, al):
        return al.dst

    def id2(self, a):
        return id2(a)

    def vcomp(self, al, be):
        return vcomp(al, be)

    def hcomp(self, al, be):
        return hcomp(al, be)

    def compose(self, a, b):
        return compose_spans(a, b)

    def unit(self, X):
        return identity_span(X)

    def associator(self, a, b, c):
        return canonical_associator(a, b, c)

    def lunitor(self, a):
        return canonical_left_unitor(a)

    def runitor(self, a):
        return canonical_right_unitor(a)

    def is_iso(self, al):
        return al.map.is_bijective()

    def inverse(self, al):
        return inverse(al)

    def is_generic(self, gen):
        return is_generic_cell(gen.cell, gen.l, gen.r)

    def fill(self, gen, gamma, a, b):
        return fill(gen, gamma, a, b)

    def coherent_class(self):
        return SpanClass(self)

    def candidate_generics(self):
        # generic cells have all three apexes equal, which prunes the search
        for X, Y, Z in itertools.product(self.objects(), repeat=3):
            for n in range(self.max_apex + 1):
                ls = list(spans_with_apex(X, Y, n))
                rs = list(spans_with_apex(Y, Z, n))
                cs = list(spans_with_apex(X, Z, n))
                for l in ls:
                    for r in rs:
                        lr = compose_spans(l, r)
                        for c in cs:
                            for cell in two_cells(c, lr):
                                g = Gen(cell, c, l, r)
                                if self.is_generic(g):
                                    yield g


class SpanClass(CoherentClass):
    """Delta2 = all ``delta_{s,h,t}``, Delta0 = all ``epsilon_h``."""

    name = "span class"

    def generics(self, c):
        return _class_generics(c, tuple(self.bicat.objects()))

    def contains(self, gen):
        c = gen.c
        return (
            gen.l.left == c.left
            and gen.r.right == c.right
            and gen.l.right == gen.r.left
            and gen.l.right.dom == c.apex
            and gen.cell == generic_2cell(GenericWitnessSpan(c, gen.l.right))
        )

    def augmentations(self, n):
        if n.left == n.right:
            return [augmentation(n.left)]
        return []

    def contains_aug(self, aug):
        return aug.n.left == aug.n.right and aug == augmentation(aug.n.left)

    def factor(self, gamma, a, b):
        fac = factor_2cell(_retrack(gamma, a, b))
        g = generic(fac.witness.base.left, fac.witness.h, fac.witness.base.right)
        return g, fac.left_mor, fac.right_mor


@lru_cache(maxsize=100_000)
def _class_generics(c: Span, objs: tuple) -> list[Gen]:
    return [generic(c.left, w.h, c.right) for Y in objs for w in witnesses(c, Y)]


def _retrack(gamma: SpanMor, a: Span, b: Span) -> SpanMor:
    if gamma.dst.parts is not None and gamma.dst.parts == (a, b):
        return gamma
    dst = compose_spans(a, b)
    if dst != gamma.dst:
        raise MissingCompositeStructure("2-cell target is not the composite of the given factors")
    return SpanMor(gamma.src, dst, gamma.map)
