"""Canonical finite sets and functions between them.

A finite set is identified with its size ``n``; its elements are ``0..n-1``.
Functions are stored as tables and composed in diagrammatic order:
``compose(f, g)`` is "f then g".
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from math import prod
from typing import Iterator, Sequence

DEFAULT_CAP = 10**6


class BoundaryMismatch(ValueError):
    pass


class InvalidCone(ValueError):
    pass


class EnumerationTooLarge(RuntimeError):
    pass


@dataclass(frozen=True)
class FinSet:
    size: int

    def __post_init__(self):
        if self.size < 0:
            raise ValueError(f"negative set size {self.size}")

    def __iter__(self):
        return iter(range(self.size))

    def __len__(self):
        return self.size


@dataclass(frozen=True)
class FinFunction:
    dom: int
    cod: int
    table: tuple[int, ...]

    def __post_init__(self):
        if not isinstance(self.table, tuple):
            object.__setattr__(self, "table", tuple(self.table))
        if len(self.table) != self.dom:
            raise ValueError(f"table length {len(self.table)} != dom {self.dom}")
        for x in self.table:
            if not 0 <= x < self.cod:
                raise ValueError(f"table entry {x} outside codomain of size {self.cod}")

    @classmethod
    def unchecked(cls, dom: int, cod: int, table: tuple[int, ...]) -> FinFunction:
        f = object.__new__(cls)
        object.__setattr__(f, "dom", dom)
        object.__setattr__(f, "cod", cod)
        object.__setattr__(f, "table", table)
        return f

    def __call__(self, i: int) -> int:
        return self.table[i]

    def __repr__(self):
        return f"FinFunction({self.dom}->{self.cod}, {list(self.table)})"

    def then(self, other: FinFunction) -> FinFunction:
        return compose(self, other)

    def is_injective(self) -> bool:
        return len(set(self.table)) == self.dom

    def is_surjective(self) -> bool:
        return len(set(self.table)) == self.cod

    def is_bijective(self) -> bool:
        return self.dom == self.cod and self.is_injective()

    def inverse(self) -> FinFunction:
        if not self.is_bijective():
            raise ValueError(f"{self!r} is not invertible")
        inv = [0] * self.dom
        for i, j in enumerate(self.table):
            inv[j] = i
        return FinFunction(self.cod, self.dom, tuple(inv))

    def fiber(self, y: int) -> list[int]:
        return [i for i, j in enumerate(self.table) if j == y]

    def fibers(self) -> list[list[int]]:
        out: list[list[int]] = [[] for _ in range(self.cod)]
        for i, j in enumerate(self.table):
            out[j].append(i)
        return out

    def to_json(self) -> dict:
        return {"dom": self.dom, "cod": self.cod, "table": list(self.table)}

    @classmethod
    def from_json(cls, data: dict) -> FinFunction:
        return cls(int(data["dom"]), int(data["cod"]), tuple(int(x) for x in data["table"]))


def identity(n: int) -> FinFunction:
    return FinFunction(n, n, tuple(range(n)))


def constant(dom: int, cod: int, value: int) -> FinFunction:
    return FinFunction(dom, cod, (value,) * dom)


def to_terminal(n: int) -> FinFunction:
    return FinFunction(n, 1, (0,) * n)


def from_empty(n: int) -> FinFunction:
    return FinFunction(0, n, ())


def compose(f: FinFunction, g: FinFunction) -> FinFunction:
    """``f`` then ``g``."""
    if f.cod != g.dom:
        raise BoundaryMismatch(f"cannot compose {f!r} with {g!r}")
    gt = g.table
    return FinFunction.unchecked(f.dom, g.cod, tuple(gt[x] for x in f.table))


def compose_all(*fs: FinFunction) -> FinFunction:
    out = fs[0]
    for f in fs[1:]:
        out = compose(out, f)
    return out


@dataclass(frozen=True)
class PullbackResult:
    """Canonical pullback of a cospan ``f: A -> C <- B: g``.

    Apex elements are the pairs ``(i, j)`` with ``f(i) == g(j)`` in
    lexicographic order; ``pairs[k]`` is the k-th such pair.
    """

    f: FinFunction
    g: FinFunction
    pairs: tuple[tuple[int, int], ...]
    proj1: FinFunction
    proj2: FinFunction
    pair_index: dict = field(compare=False, hash=False, repr=False)

    @property
    def apex(self) -> int:
        return len(self.pairs)


def pullback(f: FinFunction, g: FinFunction) -> PullbackResult:
    if f.cod != g.cod:
        raise BoundaryMismatch(f"pullback of non-cospan {f!r}, {g!r}")
    gfib = g.fibers()
    pairs = tuple((i, j) for i in range(f.dom) for j in gfib[f.table[i]])
    n = len(pairs)
    proj1 = FinFunction.unchecked(n, f.dom, tuple(p[0] for p in pairs))
    proj2 = FinFunction.unchecked(n, g.dom, tuple(p[1] for p in pairs))
    index = {p: k for k, p in enumerate(pairs)}
    return PullbackResult(f, g, pairs, proj1, proj2, index)


def mediate(pb: PullbackResult, c1: FinFunction, c2: FinFunction) -> FinFunction:
    """The unique ``u`` with ``u;proj1 == c1`` and ``u;proj2 == c2``."""
    if c1.dom != c2.dom or c1.cod != pb.f.dom or c2.cod != pb.g.dom:
        raise BoundaryMismatch("cone legs do not match the pullback")
    try:
        table = tuple(pb.pair_index[(a, b)] for a, b in zip(c1.table, c2.table))
    except KeyError as exc:
        raise InvalidCone(f"cone does not commute at {exc.args[0]}") from None
    return FinFunction.unchecked(c1.dom, pb.apex, table)


@dataclass(frozen=True)
class DependentProduct:
    """``Pi_p q`` together with its sections.

    ``sections[k]`` is ``(b, sec)`` where ``sec`` maps the fiber ``p^-1(b)``
    (in increasing order) into the domain of ``q``.
    """

    p: FinFunction
    q: FinFunction
    sections: tuple[tuple[int, tuple[int, ...]], ...]
    result: FinFunction
    index: dict = field(compare=False, hash=False, repr=False)


def dependent_product_sections(p: FinFunction, q: FinFunction, cap: int = DEFAULT_CAP) -> DependentProduct:
    if q.cod != p.dom:
        raise BoundaryMismatch(f"{q!r} is not an object over the domain of {p!r}")
    qfib = q.fibers()
    pfib = p.fibers()
    sections = []
    for b in range(p.cod):
        choices = [qfib[e] for e in pfib[b]]
        count = prod(len(c) for c in choices)
        if len(sections) + count > cap:
            raise EnumerationTooLarge(f"dependent product exceeds cap {cap}")
        for sec in itertools.product(*choices):
            sections.append((b, tuple(sec)))
    sections = tuple(sections)
    result = FinFunction(len(sections), p.cod, tuple(b for b, _ in sections))
    return DependentProduct(p, q, sections, result, {s: k for k, s in enumerate(sections)})


def dependent_product(p: FinFunction, q: FinFunction, cap: int = DEFAULT_CAP) -> FinFunction:
    """Right adjoint to pulling back along ``p``, applied to ``q: A -> dom p``."""
    return dependent_product_sections(p, q, cap).result


def count_functions(a: int, b: int) -> int:
    return b**a


def enumerate_functions(a: int, b: int, cap: int = DEFAULT_CAP) -> list[FinFunction]:
    if b**a > cap:
        raise EnumerationTooLarge(f"{b}^{a} functions exceeds cap {cap}")
    return [FinFunction(a, b, t) for t in itertools.product(range(b), repeat=a)]


def iter_functions(a: int, b: int) -> Iterator[FinFunction]:
    for t in itertools.product(range(b), repeat=a):
        yield FinFunction(a, b, t)


def enumerate_bijections(n: int) -> list[FinFunction]:
    return [FinFunction(n, n, t) for t in itertools.permutations(range(n))]


def functions_over(dom_labels: Sequence[int], cod: FinFunction) -> Iterator[tuple[int, ...]]:
    """Tables ``u`` with ``cod(u[i]) == dom_labels[i]``: maps over a base."""
    fib = cod.fibers()
    yield from itertools.product(*(fib[x] for x in dom_labels))
