"""One-object bicategories from monoidal structures on finite sets.

``CartesianBicat``: (FinSet, x, 1).  1-cells are set sizes, 2-cells are
functions, ``a;b = a x b`` with lexicographic pairs.  The lexicographic
encoding makes associators and unitors literal identities.

``SpeciesBicat``: (P, +, 0), finite sets and bijections under disjoint
union, stored skeletally.  ``a;b = a + b`` with the left summand first.

The single object is ``0``.
"""

from __future__ import annotations

from . import finset as fs
from .bicategory import Aug, Bicategory, CoherentClass, Gen, InstanceNotGeneric
from .finset import BoundaryMismatch, FinFunction

STAR = 0


def product_map(f: FinFunction, g: FinFunction) -> FinFunction:
    """``f x g`` on lexicographically encoded pairs."""
    nb, mb = f.dom, g.dom
    nc = g.cod
    return FinFunction.unchecked(
        nb * mb, f.cod * nc, tuple(f.table[i] * nc + g.table[j] for i in range(nb) for j in range(mb))
    )


def sum_map(f: FinFunction, g: FinFunction) -> FinFunction:
    """``f + g`` on the left-then-right encoding of a disjoint union."""
    return FinFunction.unchecked(f.dom + g.dom, f.cod + g.cod, f.table + tuple(f.cod + x for x in g.table))


def diagonal(n: int) -> FinFunction:
    return FinFunction(n, n * n, tuple(i * n + i for i in range(n)))


def projections(a: int, b: int) -> tuple[FinFunction, FinFunction]:
    n = a * b
    return (
        FinFunction.unchecked(n, a, tuple(k // b for k in range(n))),
        FinFunction.unchecked(n, b, tuple(k % b for k in range(n))),
    )


def pairing(f: FinFunction, g: FinFunction) -> FinFunction:
    if f.dom != g.dom:
        raise BoundaryMismatch("pairing needs a common domain")
    return FinFunction.unchecked(f.dom, f.cod * g.cod, tuple(x * g.cod + y for x, y in zip(f.table, g.table)))


class _OneObject(Bicategory):
    def __init__(self, max_size: int = 3):
        self.max_size = max_size

    def objects(self):
        return [STAR]

    def hom(self, X, Y):
        return list(range(self.max_size + 1))

    def source(self, a):
        return STAR

    def target(self, a):
        return STAR

    def dom2(self, al):
        return al.dom

    def cod2(self, al):
        return al.cod

    def id2(self, a):
        return fs.identity(a)

    def vcomp(self, al, be):
        return fs.compose(al, be)

    def unit(self, X):
        return self._unit

    def associator(self, a, b, c):
        return fs.identity(self.compose(self.compose(a, b), c))

    def lunitor(self, a):
        return fs.identity(a)

    def runitor(self, a):
        return fs.identity(a)

    def is_iso(self, al):
        return al.is_bijective()

    def inverse(self, al):
        return al.inverse()


class CartesianBicat(_OneObject):
    name = "cartesian"
    _unit = 1

    def two_cells(self, a, b):
        return fs.enumerate_functions(a, b)

    def hcomp(self, al, be):
        return product_map(al, be)

    def compose(self, a, b):
        return a * b

    def is_generic(self, gen):
        p1, p2 = projections(gen.l, gen.r)
        return fs.compose(gen.cell, p1).is_bijective() and fs.compose(gen.cell, p2).is_bijective()

    def fill(self, gen, gamma, a, b):
        p1, p2 = projections(gen.l, gen.r)
        u1, u2 = fs.compose(gen.cell, p1), fs.compose(gen.cell, p2)
        if not (u1.is_bijective() and u2.is_bijective()):
            return None
        q1, q2 = projections(a, b)
        return fs.compose_all(u1.inverse(), gamma, q1), fs.compose_all(u2.inverse(), gamma, q2)

    def coherent_class(self):
        return DiagonalClass(self)


def diagonal_generic(n: int) -> Gen:
    return Gen(diagonal(n), n, n, n)


def terminal_augmentation(n: int) -> Aug:
    return Aug(fs.to_terminal(n), n, STAR)


class DiagonalClass(CoherentClass):
    """Delta2 = diagonals, Delta0 = the maps to the terminal set."""

    name = "cartesian class"

    def generics(self, c):
        return [diagonal_generic(c)]

    def augmentations(self, n):
        return [terminal_augmentation(n)]

    def factor(self, gamma, a, b):
        g = diagonal_generic(gamma.dom)
        s1, s2 = self.bicat.fill(g, gamma, a, b)
        return g, s1, s2


class SpeciesBicat(_OneObject):
    name = "species"
    _unit = 0

    def two_cells(self, a, b):
        return fs.enumerate_bijections(a) if a == b else []

    def hcomp(self, al, be):
        return sum_map(al, be)

    def compose(self, a, b):
        return a + b

    def is_generic(self, gen):
        # every 2-cell is invertible, hence generic
        return gen.cell.is_bijective()

    def fill(self, gen, gamma, a, b):
        if gen.l != a or gen.r != b:
            return None
        # the unique block-diagonal filler, if gamma after gen^-1 is block diagonal
        m = fs.compose(gen.cell.inverse(), gamma)
        left, right = m.table[: gen.l], m.table[gen.l :]
        if any(x >= a for x in left) or any(x < a for x in right):
            return None
        return FinFunction(a, a, left), FinFunction(b, b, tuple(x - a for x in right))

    def candidate_generics(self):
        n = self.max_size
        for l in range(n + 1):
            for r in range(n + 1 - l):
                for cell in fs.enumerate_bijections(l + r):
                    yield Gen(cell, l + r, l, r)

    def coherent_class(self):
        return SplitClass(self)


def split_generic(n1: int, n2: int) -> Gen:
    """``[n1 + n2] -> [n1] + [n2]``: first ``n1`` elements left, the rest right."""
    return Gen(fs.identity(n1 + n2), n1 + n2, n1, n2)


class SplitClass(CoherentClass):
    name = "species class"

    def generics(self, c):
        return [split_generic(n1, c - n1) for n1 in range(c + 1)]

    def augmentations(self, n):
        return [Aug(fs.identity(0), 0, STAR)] if n == 0 else []

    def factor(self, gamma, a, b):
        g = split_generic(a, b)
        got = self.bicat.fill(g, gamma, a, b)
        if got is None:
            raise InstanceNotGeneric("2-cell does not preserve the block split")
        return g, got[0], got[1]
