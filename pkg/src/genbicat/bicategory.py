"""Abstract bicategory handle, generic structure, and the axiom suites.

Concrete instances (spans, polynomials, one-object monoidal bicategories)
subclass :class:`Bicategory`.  Everything here only talks to the handle, so
the same suites run on every instance.

Conventions: ``vcomp(a, b)`` is "a then b"; ``hcomp(a, b)`` is the horizontal
composite ``a;b``; ``associator(a, b, c): (a;b);c -> a;(b;c)``;
``lunitor(a): a -> 1;a`` and ``runitor(a): a -> a;1``.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from typing import Any, Iterable, Iterator, Optional

from .report import Check, timed


class InstanceNotGeneric(RuntimeError):
    pass


@dataclass(frozen=True)
class Gen:
    """A 2-cell ``cell: c -> l;r`` together with its named factors."""

    cell: Any
    c: Any
    l: Any
    r: Any

    def to_json(self):
        return {"cell": _j(self.cell), "c": _j(self.c), "l": _j(self.l), "r": _j(self.r)}


@dataclass(frozen=True)
class Aug:
    """An augmentation ``cell: n -> 1_obj``."""

    cell: Any
    n: Any
    obj: Any

    def to_json(self):
        return {"cell": _j(self.cell), "n": _j(self.n), "obj": _j(self.obj)}


def _j(x):
    return x.to_json() if hasattr(x, "to_json") else x


class Bicategory:
    """Finite, bounded presentation of a bicategory."""

    name = "bicategory"

    # -- structure every instance provides -------------------------------
    def objects(self) -> list:
        raise NotImplementedError

    def hom(self, X, Y) -> list:
        """Bounded list of 1-cells ``X -> Y``."""
        raise NotImplementedError

    def source(self, a):
        raise NotImplementedError

    def target(self, a):
        raise NotImplementedError

    def two_cells(self, a, b) -> list:
        raise NotImplementedError

    def dom2(self, alpha):
        raise NotImplementedError

    def cod2(self, alpha):
        raise NotImplementedError

    def id2(self, a):
        raise NotImplementedError

    def vcomp(self, alpha, beta):
        raise NotImplementedError

    def hcomp(self, alpha, beta):
        raise NotImplementedError

    def compose(self, a, b):
        raise NotImplementedError

    def unit(self, X):
        raise NotImplementedError

    def associator(self, a, b, c):
        raise NotImplementedError

    def associator_inv(self, a, b, c):
        return self.inverse(self.associator(a, b, c))

    def lunitor(self, a):
        raise NotImplementedError

    def lunitor_inv(self, a):
        return self.inverse(self.lunitor(a))

    def runitor(self, a):
        raise NotImplementedError

    def runitor_inv(self, a):
        return self.inverse(self.runitor(a))

    def is_iso(self, alpha) -> bool:
        raise NotImplementedError

    def inverse(self, alpha):
        raise NotImplementedError

    # -- generic structure ------------------------------------------------
    def is_generic(self, gen: Gen) -> bool:
        raise InstanceNotGeneric(self.name)

    def fill(self, gen: Gen, gamma, a, b):
        """The unique ``(s1, s2)`` with ``gen.cell ; (s1;s2) == gamma``, or None."""
        raise InstanceNotGeneric(self.name)

    def coherent_class(self) -> "CoherentClass":
        raise InstanceNotGeneric(self.name)

    def candidate_generics(self) -> Iterator[Gen]:
        """Every generic 2-cell with source and factors in the bounded universe."""
        for X, Y, Z in itertools.product(self.objects(), repeat=3):
            for l in self.hom(X, Y):
                for r in self.hom(Y, Z):
                    lr = self.compose(l, r)
                    for c in self.hom(X, Z):
                        for cell in self.two_cells(c, lr):
                            g = Gen(cell, c, l, r)
                            if self.is_generic(g):
                                yield g

    def candidate_augmentations(self) -> Iterator[Aug]:
        for X in self.objects():
            u = self.unit(X)
            for n in self.hom(X, X):
                for cell in self.two_cells(n, u):
                    yield Aug(cell, n, X)

    # -- helpers --------------------------------------------------------
    def whisker_left(self, a, beta):
        return self.hcomp(self.id2(a), beta)

    def whisker_right(self, alpha, b):
        return self.hcomp(alpha, self.id2(b))

    def vcomp_all(self, *cells):
        out = cells[0]
        for c in cells[1:]:
            out = self.vcomp(out, c)
        return out

    def all_one_cells(self) -> Iterator:
        for X, Y in itertools.product(self.objects(), repeat=2):
            yield from self.hom(X, Y)


class CoherentClass:
    """A chosen class (Delta2, Delta0) of generics and augmentations."""

    name = "class"

    def __init__(self, bicat: Bicategory):
        self.bicat = bicat

    def generics(self, c) -> list[Gen]:
        raise NotImplementedError

    def augmentations(self, n) -> list[Aug]:
        raise NotImplementedError

    def contains(self, gen: Gen) -> bool:
        return gen in self.generics(gen.c)

    def contains_aug(self, aug: Aug) -> bool:
        return aug in self.augmentations(aug.n)

    def factor(self, gamma, a, b):
        """Factor ``gamma: c -> a;b`` as ``delta ; (s1;s2)`` with delta in the class."""
        B = self.bicat
        for g in self.generics(B.dom2(gamma)):
            if B.target(g.l) != B.target(a):
                continue
            got = B.fill(g, gamma, a, b)
            if got is not None:
                return g, got[0], got[1]
        raise InstanceNotGeneric(f"no class generic factors {gamma!r}")

    def all_generics(self) -> Iterator[Gen]:
        for c in self.bicat.all_one_cells():
            yield from self.generics(c)

    def all_augmentations(self) -> Iterator[Aug]:
        for X in self.bicat.objects():
            for n in self.bicat.hom(X, X):
                yield from self.augmentations(n)


class RestrictedClass(CoherentClass):
    """A class with some members removed; used for negative controls."""

    def __init__(self, base: CoherentClass, drop_generics=(), drop_augmentations=(), no_augmentations=False):
        super().__init__(base.bicat)
        self.base = base
        self.drop_generics = frozenset(drop_generics)
        self.drop_augmentations = frozenset(drop_augmentations)
        self.no_augmentations = no_augmentations
        self.name = f"{base.name} (restricted)"

    def generics(self, c):
        return [g for g in self.base.generics(c) if g not in self.drop_generics]

    def augmentations(self, n):
        if self.no_augmentations:
            return []
        return [a for a in self.base.augmentations(n) if a not in self.drop_augmentations]


# ---------------------------------------------------------------------------
# generic filler search (brute force oracle)


def filler_candidates(B: Bicategory, gen: Gen, gamma, f, g) -> list[tuple]:
    """All pairs ``(g1, g2)`` in Hom(l, f) x Hom(r, g) with ``gen.cell;(g1;g2) == gamma``."""
    out = []
    for g1 in B.two_cells(gen.l, f):
        for g2 in B.two_cells(gen.r, g):
            if B.vcomp(gen.cell, B.hcomp(g1, g2)) == gamma:
                out.append((g1, g2))
    return out


def squares_through(B: Bicategory, gen: Gen, targets: Iterable[tuple], codomains: Iterable[tuple]) -> Iterator[tuple]:
    """Commuting squares ``gamma;(phi1;phi2) == gen;(theta1;theta2)``.

    ``targets`` supplies pairs ``(f, g)`` for the top-right corner and
    ``codomains`` pairs ``(m, n)`` for the bottom-right corner.
    """
    codomains = list(codomains)
    for f, g in targets:
        fg = B.compose(f, g)
        gammas = B.two_cells(gen.c, fg)
        if not gammas:
            continue
        for m, n in codomains:
            phis = [(p1, p2) for p1 in B.two_cells(f, m) for p2 in B.two_cells(g, n)]
            thetas = [(t1, t2) for t1 in B.two_cells(gen.l, m) for t2 in B.two_cells(gen.r, n)]
            if not phis or not thetas:
                continue
            bottom = {}
            for t1, t2 in thetas:
                bottom.setdefault(B.vcomp(gen.cell, B.hcomp(t1, t2)), []).append((t1, t2))
            for gamma in gammas:
                for p1, p2 in phis:
                    top = B.vcomp(gamma, B.hcomp(p1, p2))
                    for t1, t2 in bottom.get(top, ()):
                        yield gamma, (f, g), (p1, p2), (m, n), (t1, t2)


def check_filler_square(B: Bicategory, gen: Gen, square) -> tuple[bool, Any]:
    """Exhaustive candidate search: exactly one pair fills both triangles."""
    gamma, (f, g), (p1, p2), _mn, (t1, t2) = square
    top = filler_candidates(B, gen, gamma, f, g)
    if len(top) != 1:
        return False, {"reason": f"{len(top)} top-triangle fillers", "gen": gen, "gamma": gamma}
    g1, g2 = top[0]
    if B.vcomp(g1, p1) != t1 or B.vcomp(g2, p2) != t2:
        return False, {"reason": "bottom triangle fails", "gen": gen, "gamma": gamma}
    return True, None


# ---------------------------------------------------------------------------
# bicategory axioms


def _quadruples(B: Bicategory, n: int, max_arity_objects=None) -> Iterator[tuple]:
    objs = B.objects()
    for path in itertools.product(objs, repeat=n + 1):
        homs = [B.hom(path[i], path[i + 1]) for i in range(n)]
        yield from itertools.product(*homs)


def check_pentagon(B: Bicategory, cells: Optional[Iterable[tuple]] = None) -> Check:
    chk = Check("pentagon", "bicategory axiom")
    with timed(chk):
        for a, b, c, d in cells if cells is not None else _quadruples(B, 4):
            ab = B.compose(a, b)
            cd = B.compose(c, d)
            bc = B.compose(b, c)
            p1 = B.vcomp(B.associator(ab, c, d), B.associator(a, b, cd))
            p2 = B.vcomp_all(
                B.whisker_right(B.associator(a, b, c), d),
                B.associator(a, bc, d),
                B.whisker_left(a, B.associator(b, c, d)),
            )
            chk.record(p1 == p2, {"cells": [a, b, c, d]})
    return chk


def check_triangle(B: Bicategory, cells: Optional[Iterable[tuple]] = None) -> Check:
    chk = Check("triangle", "bicategory axiom")
    with timed(chk):
        for a, b in cells if cells is not None else _quadruples(B, 2):
            one = B.unit(B.target(a))
            lhs = B.vcomp(B.associator(a, one, b), B.whisker_left(a, B.lunitor_inv(b)))
            rhs = B.whisker_right(B.runitor_inv(a), b)
            chk.record(lhs == rhs, {"cells": [a, b]})
    return chk


def _vertical_pairs(B: Bicategory, X, Y) -> list[tuple]:
    cells = B.hom(X, Y)
    out = []
    for a in cells:
        for b in cells:
            for al in B.two_cells(a, b):
                for c in cells:
                    for be in B.two_cells(b, c):
                        out.append((al, be))
    return out


def check_interchange(B: Bicategory, samples: int = 2000, seed: int = 0) -> Check:
    """Interchange on seeded samples of vertically composable pairs."""
    chk = Check("interchange", "bicategory axiom", bound={"samples": samples, "seed": seed})
    rng = random.Random(seed)
    with timed(chk):
        objs = B.objects()
        pools = {}
        for X, Y in itertools.product(objs, repeat=2):
            pools[X, Y] = _vertical_pairs(B, X, Y)
        triples = [(X, Y, Z) for X, Y, Z in itertools.product(objs, repeat=3) if pools[X, Y] and pools[Y, Z]]
        for _ in range(samples if triples else 0):
            X, Y, Z = rng.choice(triples)
            a1, a2 = rng.choice(pools[X, Y])
            b1, b2 = rng.choice(pools[Y, Z])
            lhs = B.hcomp(B.vcomp(a1, a2), B.vcomp(b1, b2))
            rhs = B.vcomp(B.hcomp(a1, b1), B.hcomp(a2, b2))
            chk.record(lhs == rhs, {"cells": [a1, a2, b1, b2]})
            e = B.hcomp(B.id2(B.dom2(a1)), B.id2(B.dom2(b1)))
            chk.record(e == B.id2(B.compose(B.dom2(a1), B.dom2(b1))), {"cells": [a1, b1], "law": "identity"})
    return chk


def check_constraint_naturality(B: Bicategory, samples: int = 500, seed: int = 0) -> Check:
    """Associators and unitors are natural, on seeded samples."""
    chk = Check("constraint naturality", "bicategory axiom", bound={"samples": samples, "seed": seed})
    rng = random.Random(seed)
    with timed(chk):
        objs = B.objects()
        cells = {}
        for X, Y in itertools.product(objs, repeat=2):
            cells[X, Y] = [al for a in B.hom(X, Y) for b in B.hom(X, Y) for al in B.two_cells(a, b)]
        paths = [p for p in itertools.product(objs, repeat=4) if all(cells[p[i], p[i + 1]] for i in range(3))]
        for _ in range(samples if paths else 0):
            W, X, Y, Z = rng.choice(paths)
            al, be, ga = rng.choice(cells[W, X]), rng.choice(cells[X, Y]), rng.choice(cells[Y, Z])
            a, b, c = B.dom2(al), B.dom2(be), B.dom2(ga)
            a2, b2, c2 = B.cod2(al), B.cod2(be), B.cod2(ga)
            lhs = B.vcomp(B.hcomp(B.hcomp(al, be), ga), B.associator(a2, b2, c2))
            rhs = B.vcomp(B.associator(a, b, c), B.hcomp(al, B.hcomp(be, ga)))
            chk.record(lhs == rhs, {"cells": [al, be, ga], "law": "associator"})
            lhs = B.vcomp(al, B.lunitor(a2))
            rhs = B.vcomp(B.lunitor(a), B.whisker_left(B.unit(W), al))
            chk.record(lhs == rhs, {"cells": [al], "law": "left unitor"})
            lhs = B.vcomp(al, B.runitor(a2))
            rhs = B.vcomp(B.runitor(a), B.whisker_right(al, B.unit(X)))
            chk.record(lhs == rhs, {"cells": [al], "law": "right unitor"})
    return chk


def check_bicategory_axioms(B: Bicategory, samples: int = 2000, seed: int = 0) -> list[Check]:
    return [
        check_pentagon(B),
        check_triangle(B),
        check_interchange(B, samples, seed),
        check_constraint_naturality(B, samples // 4, seed),
    ]


# ---------------------------------------------------------------------------
# coherent class validation


def _find_iso_equivalence(B: Bicategory, cls: CoherentClass, gp: Gen, isos_of) -> Optional[tuple]:
    """A class member delta and isos with ``zeta;gp == delta;(z1;z2)``."""
    for c in _iso_sources(B, gp.c):
        for zeta in isos_of(c, gp.c):
            lhs = B.vcomp(zeta, gp.cell)
            for d in cls.generics(c):
                for z1 in isos_of(d.l, gp.l):
                    for z2 in isos_of(d.r, gp.r):
                        if B.vcomp(d.cell, B.hcomp(z1, z2)) == lhs:
                            return d, zeta, z1, z2
    return None


def _iso_sources(B: Bicategory, c) -> list:
    return [x for x in B.hom(B.source(c), B.target(c)) if any(B.is_iso(z) for z in B.two_cells(x, c))] or [c]


def validate_coherent_class(cls: CoherentClass, stop_at_first: bool = False) -> list[Check]:
    """Conditions (1)-(5) of a coherent class, exhaustively in the bounded universe."""
    B = cls.bicat
    iso_cache: dict = {}

    def isos_of(a, b):
        key = (a, b)
        if key not in iso_cache:
            iso_cache[key] = [z for z in B.two_cells(a, b) if B.is_iso(z)]
        return iso_cache[key]

    c1 = Check("coherent class (1) completeness of generics", "Def. coherent class (1)")
    with timed(c1):
        for gp in B.candidate_generics():
            if cls.contains(gp):
                c1.record(True)
                continue
            c1.record(_find_iso_equivalence(B, cls, gp, isos_of) is not None, {"generic": gp})
            if stop_at_first and c1.failures:
                break

    c2 = Check("coherent class (2) completeness of augmentations", "Def. coherent class (2)")
    with timed(c2):
        for ap in B.candidate_augmentations():
            if cls.contains_aug(ap):
                c2.record(True)
                continue
            ok = False
            for x in _iso_sources(B, ap.n):
                for xi in isos_of(x, ap.n):
                    for e in cls.augmentations(x):
                        if B.vcomp(xi, ap.cell) == e.cell:
                            ok = True
                            break
                    if ok:
                        break
                if ok:
                    break
            c2.record(ok, {"augmentation": ap})
            if stop_at_first and c2.failures:
                break

    c3 = Check("coherent class (3) associator coherence", "Def. coherent class (3)")
    with timed(c3):
        for d1 in cls.all_generics():
            for d2 in cls.generics(d1.l):
                l, m, r = d2.l, d2.r, d1.r
                target = B.vcomp_all(d1.cell, B.whisker_right(d2.cell, r), B.associator(l, m, r))
                ok = False
                for d3 in cls.generics(d1.c):
                    if d3.l != l:
                        continue
                    for d4 in cls.generics(d3.r):
                        if d4.l == m and d4.r == r and B.vcomp(d3.cell, B.whisker_left(l, d4.cell)) == target:
                            ok = True
                            break
                    if ok:
                        break
                c3.record(ok, {"delta1": d1, "delta2": d2})
            if stop_at_first and c3.failures:
                break

    c4 = Check("coherent class (4) left unitor coherence", "Def. coherent class (4)")
    c5 = Check("coherent class (5) right unitor coherence", "Def. coherent class (5)")
    with timed(c4):
        for c in _omega2(cls):
            ok = False
            for d in cls.generics(c):
                if d.r != c:
                    continue
                for e in cls.augmentations(d.l):
                    if B.vcomp(d.cell, B.whisker_right(e.cell, c)) == B.lunitor(c):
                        ok = True
                        break
                if ok:
                    break
            c4.record(ok, {"cell": c})
    with timed(c5):
        for c in _omega2(cls):
            ok = False
            for d in cls.generics(c):
                if d.l != c:
                    continue
                for e in cls.augmentations(d.r):
                    if B.vcomp(d.cell, B.whisker_left(c, e.cell)) == B.runitor(c):
                        ok = True
                        break
                if ok:
                    break
            c5.record(ok, {"cell": c})
    return [c1, c2, c3, c4, c5]


def _omega2(cls: CoherentClass) -> Iterator:
    for c in cls.bicat.all_one_cells():
        if cls.generics(c):
            yield c
