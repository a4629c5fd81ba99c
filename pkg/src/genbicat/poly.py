"""Polynomials over finite sets with cartesian 2-cells.

A polynomial ``(s, p, t)`` is ``X <-s- E -p-> B -t-> Z``.  Composition is the
usual pullback / dependent product / sum construction; a composite keeps an
element-level description (``Polynomial.comp``) from which cartesian 2-cells
into it are factored into septuples.

For a composite of ``P = (a, i, b)`` (``K -> I``) followed by
``Q = (u, j, v)`` (``R -> J``):

* base elements are pairs ``(m, sigma)``: ``m`` in ``J`` and ``sigma`` assigns to
  each ``r`` in the fiber ``j^-1(m)`` an ``i`` in ``I`` with ``b(sigma(r)) = u(r)``;
* total elements are triples ``(beta, r, k)`` with ``k`` in ``i^-1(sigma_beta(r))``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import lru_cache
from math import factorial
from typing import Iterator, Optional

from . import finset as fs
from .bicategory import Aug, Bicategory, CoherentClass, Gen
from .finset import BoundaryMismatch, FinFunction
from .report import InternalConsistencyError


class MissingProvenance(ValueError):
    pass


class NotCartesian(ValueError):
    pass


@dataclass(frozen=True)
class Composite:
    first: "Polynomial"
    second: "Polynomial"
    base: tuple  # (m, sigma) per base element
    total: tuple  # (beta, r, k) per total element
    base_index: dict = field(compare=False, hash=False, repr=False)
    total_index: dict = field(compare=False, hash=False, repr=False)

    def sigma(self, beta: int, r: int) -> int:
        m, sig = self.base[beta]
        return sig[self.second.p.fiber(m).index(r)]


@dataclass(frozen=True)
class Polynomial:
    s: FinFunction
    p: FinFunction
    t: FinFunction
    comp: Optional[Composite] = field(default=None, compare=False, repr=False)

    def __post_init__(self):
        if self.s.dom != self.p.dom or self.p.cod != self.t.dom:
            raise ValueError("polynomial legs do not compose")

    @property
    def E(self) -> int:
        return self.p.dom

    @property
    def B(self) -> int:
        return self.p.cod

    @property
    def src(self) -> int:
        return self.s.cod

    @property
    def tgt(self) -> int:
        return self.t.cod

    def __repr__(self):
        return f"Poly(s={list(self.s.table)}:{self.src}, p={list(self.p.table)}:{self.B}, t={list(self.t.table)}:{self.tgt})"

    def to_json(self):
        return {"s": self.s.to_json(), "p": self.p.to_json(), "t": self.t.to_json()}

    @classmethod
    def from_json(cls, d):
        return cls(FinFunction.from_json(d["s"]), FinFunction.from_json(d["p"]), FinFunction.from_json(d["t"]))


def poly(s, p, t, x: int, b: int, z: int) -> Polynomial:
    e = len(s)
    return Polynomial(FinFunction(e, x, tuple(s)), FinFunction(e, b, tuple(p)), FinFunction(b, z, tuple(t)))


def identity_poly(x: int) -> Polynomial:
    i = fs.identity(x)
    return Polynomial(i, i, i)


@dataclass(frozen=True)
class CartPolyMor:
    src: Polynomial
    dst: Polynomial
    f: FinFunction
    g: FinFunction

    def __post_init__(self):
        a, b, f, g = self.src, self.dst, self.f, self.g
        if f.dom != a.E or f.cod != b.E or g.dom != a.B or g.cod != b.B:
            raise ValueError("2-cell components have the wrong boundary")
        if a.src != b.src or a.tgt != b.tgt:
            raise ValueError("2-cell between polynomials with different boundary objects")
        if fs.compose(f, b.s) != a.s or fs.compose(g, b.t) != a.t:
            raise ValueError("2-cell triangles do not commute")
        if fs.compose(f, b.p) != fs.compose(a.p, g):
            raise ValueError("2-cell middle square does not commute")
        if not is_pullback_square(f, a.p, b.p, g):
            raise NotCartesian("middle square is not a pullback")

    def to_json(self):
        return {"src": self.src.to_json(), "dst": self.dst.to_json(), "f": list(self.f.table), "g": list(self.g.table)}


def is_pullback_square(f: FinFunction, p: FinFunction, q: FinFunction, g: FinFunction) -> bool:
    """Square ``f;q == p;g`` is a pullback: compare against the canonical apex."""
    pb = fs.pullback(g, q)
    u = fs.mediate(pb, p, f)
    return u.is_bijective()


@dataclass(frozen=True)
class Septuple:
    p1: FinFunction
    h: FinFunction
    p2: FinFunction
    w: FinFunction
    x: FinFunction
    y: FinFunction
    z: FinFunction

    @property
    def T(self) -> int:
        return self.h.dom

    def to_json(self):
        return {k: list(getattr(self, k).table) for k in ("p1", "h", "p2", "w", "x", "y", "z")}


@dataclass(frozen=True)
class SeptupleEquivalence:
    alpha: FinFunction


# ---------------------------------------------------------------------------
# composition


@lru_cache(maxsize=100_000)
def compose_polys(P: Polynomial, Q: Polynomial, cap: int = fs.DEFAULT_CAP) -> Polynomial:
    """``P;Q`` (apply ``P`` first); extension is ``Q`` after ``P``."""
    if P.tgt != Q.src:
        raise BoundaryMismatch(f"cannot compose {P!r} with {Q!r}")
    a, i, b = P.s, P.p, P.t
    u, j, v = Q.s, Q.p, Q.t
    # directions of Q labelled by shapes of P with matching boundary
    pb = fs.pullback(u, b)
    dp = fs.dependent_product_sections(j, pb.proj1, cap)
    base = tuple((m, tuple(pb.pairs[k][1] for k in sec)) for m, sec in dp.sections)
    ifib = i.fibers()
    jfib = j.fibers()
    total = []
    for beta, (m, sig) in enumerate(base):
        for r, iota in zip(jfib[m], sig):
            for k in ifib[iota]:
                total.append((beta, r, k))
        if len(total) > cap:
            raise fs.EnumerationTooLarge("composite exceeds cap")
    total = tuple(total)
    nB, nE = len(base), len(total)
    s = FinFunction.unchecked(nE, a.cod, tuple(a.table[k] for _, _, k in total))
    p = FinFunction.unchecked(nE, nB, tuple(beta for beta, _, _ in total))
    t = FinFunction.unchecked(nB, v.cod, tuple(v.table[m] for m, _ in base))
    comp = Composite(P, Q, base, total, {x: n for n, x in enumerate(base)}, {x: n for n, x in enumerate(total)})
    return Polynomial(s, p, t, comp)


def _tracked(c: Polynomial, P: Polynomial | None = None, Q: Polynomial | None = None) -> Composite:
    if c.comp is not None and (P is None or (c.comp.first == P and c.comp.second == Q)):
        return c.comp
    if P is None:
        raise MissingProvenance(f"{c!r} is not a tracked composite")
    c2 = compose_polys(P, Q)
    if c2 != c:
        raise MissingProvenance("polynomial is not the composite of the given factors")
    return c2.comp


# ---------------------------------------------------------------------------
# extensions


def extension_eval(P: Polynomial, A: FinFunction, cap: int = fs.DEFAULT_CAP) -> FinFunction:
    """``Sigma_t Pi_p Delta_s`` applied to ``A -> X``; returns an object over ``Z``."""
    if A.cod != P.src:
        raise BoundaryMismatch("input is not over the source of the polynomial")
    pb = fs.pullback(P.s, A)
    pi = fs.dependent_product(P.p, pb.proj1, cap)
    return fs.compose(pi, P.t)


def fiber_counts(f: FinFunction) -> tuple[int, ...]:
    return tuple(len(x) for x in f.fibers())


def extension_counts_bruteforce(P: Polynomial, counts: tuple[int, ...]) -> tuple[int, ...]:
    """Per-fiber sizes of the extension from input fiber sizes alone."""
    out = [0] * P.tgt
    efib = P.p.fibers()
    for b in range(P.B):
        n = 1
        for e in efib[b]:
            n *= counts[P.s.table[e]]
        out[P.t.table[b]] += n
    return tuple(out)


# ---------------------------------------------------------------------------
# 2-cells


def id2(P: Polynomial) -> CartPolyMor:
    return CartPolyMor(P, P, fs.identity(P.E), fs.identity(P.B))


def vcomp(al: CartPolyMor, be: CartPolyMor) -> CartPolyMor:
    if al.dst != be.src:
        raise BoundaryMismatch("vertical composite of non-composable 2-cells")
    return CartPolyMor(al.src, be.dst, fs.compose(al.f, be.f), fs.compose(al.g, be.g))


def inverse(al: CartPolyMor) -> CartPolyMor:
    return CartPolyMor(al.dst, al.src, al.f.inverse(), al.g.inverse())


def hcomp(al: CartPolyMor, be: CartPolyMor) -> CartPolyMor:
    src = compose_polys(al.src, be.src)
    dst = compose_polys(al.dst, be.dst)
    cs, cd = src.comp, dst.comp
    j_src, j_dst = be.src.p, be.dst.p
    gtab = []
    for m, sig in cs.base:
        m2 = be.g.table[m]
        fib = j_src.fiber(m)
        image = {be.f.table[r]: al.g.table[iota] for r, iota in zip(fib, sig)}
        sig2 = tuple(image[r2] for r2 in j_dst.fiber(m2))
        gtab.append(cd.base_index[(m2, sig2)])
    ftab = []
    for beta, r, k in cs.total:
        ftab.append(cd.total_index[(gtab[beta], be.f.table[r], al.f.table[k])])
    return CartPolyMor(
        src,
        dst,
        FinFunction.unchecked(src.E, dst.E, tuple(ftab)),
        FinFunction.unchecked(src.B, dst.B, tuple(gtab)),
    )


def two_cells(P: Polynomial, Q: Polynomial) -> list[CartPolyMor]:
    if P.src != Q.src or P.tgt != Q.tgt:
        return []
    return _two_cells(P, Q)


@lru_cache(maxsize=100_000)
def _two_cells(P: Polynomial, Q: Polynomial) -> list[CartPolyMor]:
    pf, qf = P.p.fibers(), Q.p.fibers()
    per_b = []
    for b in range(P.B):
        opts = []
        for b2 in range(Q.B):
            if Q.t.table[b2] != P.t.table[b] or len(qf[b2]) != len(pf[b]):
                continue
            for perm in itertools.permutations(qf[b2]):
                if all(Q.s.table[e2] == P.s.table[e] for e, e2 in zip(pf[b], perm)):
                    opts.append((b2, perm))
        per_b.append(opts)
    out = []
    for choice in itertools.product(*per_b):
        g = [0] * P.B
        f = [0] * P.E
        for b, (b2, perm) in enumerate(choice):
            g[b] = b2
            for e, e2 in zip(pf[b], perm):
                f[e] = e2
        out.append(CartPolyMor(P, Q, FinFunction.unchecked(P.E, Q.E, tuple(f)), FinFunction.unchecked(P.B, Q.B, tuple(g))))
    return out


def two_cells_bruteforce(P: Polynomial, Q: Polynomial) -> list[CartPolyMor]:
    """All cartesian 2-cells by scanning every pair of functions (oracle)."""
    out = []
    for f in fs.iter_functions(P.E, Q.E):
        for g in fs.iter_functions(P.B, Q.B):
            try:
                out.append(CartPolyMor(P, Q, f, g))
            except ValueError:
                pass
    return out


# ---------------------------------------------------------------------------
# constraint cells


def canonical_left_unitor(P: Polynomial) -> CartPolyMor:
    """``P -> 1;P``."""
    c = compose_polys(identity_poly(P.src), P)
    comp = c.comp
    efib = P.p.fibers()
    g = []
    for m in range(P.B):
        g.append(comp.base_index[(m, tuple(P.s.table[e] for e in efib[m]))])
    f = [comp.total_index[(g[P.p.table[e]], e, P.s.table[e])] for e in range(P.E)]
    return CartPolyMor(P, c, FinFunction.unchecked(P.E, c.E, tuple(f)), FinFunction.unchecked(P.B, c.B, tuple(g)))


def canonical_right_unitor(P: Polynomial) -> CartPolyMor:
    """``P -> P;1``."""
    c = compose_polys(P, identity_poly(P.tgt))
    comp = c.comp
    g = [comp.base_index[(P.t.table[b], (b,))] for b in range(P.B)]
    f = [comp.total_index[(g[P.p.table[e]], P.t.table[P.p.table[e]], e)] for e in range(P.E)]
    return CartPolyMor(P, c, FinFunction.unchecked(P.E, c.E, tuple(f)), FinFunction.unchecked(P.B, c.B, tuple(g)))


def canonical_associator(P: Polynomial, Q: Polynomial, R: Polynomial) -> CartPolyMor:
    """``(P;Q);R -> P;(Q;R)``, translating element descriptions."""
    pq = compose_polys(P, Q)
    pq_r = compose_polys(pq, R)
    qr = compose_polys(Q, R)
    p_qr = compose_polys(P, qr)
    c12, cL, c23, cR = pq.comp, pq_r.comp, qr.comp, p_qr.comp
    r_fib = R.p.fibers()
    gtab = []
    for m3, tau in cL.base:
        tau2 = tuple(c12.base[b12][0] for b12 in tau)
        beta23 = c23.base_index[(m3, tau2)]
        rho = []
        for _b, e3, e2 in (x for x in c23.total if x[0] == beta23):
            b12 = tau[r_fib[m3].index(e3)]
            rho.append(c12.sigma(b12, e2))
        gtab.append(cR.base_index[(beta23, tuple(rho))])
    ftab = []
    for beta, e3, e12 in cL.total:
        m3, tau = cL.base[beta]
        b12, e2, e1 = c12.total[e12]
        beta23 = cR.base[gtab[beta]][0]
        e23 = c23.total_index[(beta23, e3, e2)]
        ftab.append(cR.total_index[(gtab[beta], e23, e1)])
    return CartPolyMor(
        pq_r,
        p_qr,
        FinFunction.unchecked(pq_r.E, p_qr.E, tuple(ftab)),
        FinFunction.unchecked(pq_r.B, p_qr.B, tuple(gtab)),
    )


# ---------------------------------------------------------------------------
# generics, augmentations, Weber factorization


def generic_poly_2cell(s: FinFunction, p1: FinFunction, h: FinFunction, p2: FinFunction, t: FinFunction) -> CartPolyMor:
    """``delta: (s, p1;p2, t) -> (s, p1, h);(h, p2, t)`` with identity components."""
    if p1.cod != p2.dom or h.dom != p1.cod or s.dom != p1.dom or p2.cod != t.dom:
        raise BoundaryMismatch("generic data does not compose")
    c = Polynomial(s, fs.compose(p1, p2), t)
    l, r = Polynomial(s, p1, h), Polynomial(h, p2, t)
    lr = compose_polys(l, r)
    comp = lr.comp
    fib = p2.fibers()
    g = [comp.base_index[(m, tuple(fib[m]))] for m in range(c.B)]
    f = [comp.total_index[(g[c.p.table[e]], p1.table[e], e)] for e in range(c.E)]
    return CartPolyMor(c, lr, FinFunction.unchecked(c.E, lr.E, tuple(f)), FinFunction.unchecked(c.B, lr.B, tuple(g)))


def generic(s, p1, h, p2, t) -> Gen:
    cell = generic_poly_2cell(s, p1, h, p2, t)
    return Gen(cell, cell.src, Polynomial(s, p1, h), Polynomial(h, p2, t))


def poly_augmentation(h: FinFunction) -> CartPolyMor:
    """``epsilon_h: (h, 1, h) -> 1_X`` with middle map the identity."""
    n = Polynomial(h, fs.identity(h.dom), h)
    return CartPolyMor(n, identity_poly(h.cod), h, h)


def augmentation(h: FinFunction) -> Aug:
    cell = poly_augmentation(h)
    return Aug(cell, cell.src, h.cod)


def factor_cartesian_2cell(phi: CartPolyMor, P: Polynomial | None = None, Q: Polynomial | None = None):
    """Weber factorization of ``phi: (s,p,t) -> P;Q`` into a septuple.

    Returns ``(septuple, left, right)`` where ``left: (s,p1,h) -> P`` and
    ``right: (h,p2,t) -> Q`` are the cartesian components.
    """
    comp = _tracked(phi.dst, P, Q)
    P, Q = comp.first, comp.second
    c = phi.src
    jfib = Q.p.fibers()
    z = tuple(comp.base[phi.g.table[beta]][0] for beta in range(c.B))
    T = [(beta, r) for beta in range(c.B) for r in jfib[z[beta]]]
    t_index = {x: n for n, x in enumerate(T)}
    nT = len(T)
    p2 = FinFunction.unchecked(nT, c.B, tuple(beta for beta, _ in T))
    y = FinFunction.unchecked(nT, Q.E, tuple(r for _, r in T))
    x = FinFunction.unchecked(nT, P.B, tuple(comp.sigma(phi.g.table[beta], r) for beta, r in T))
    h = fs.compose(y, Q.s)
    p1t, wt = [], []
    for e in range(c.E):
        beta2, r, k = comp.total[phi.f.table[e]]
        if beta2 != phi.g.table[c.p.table[e]]:
            raise InternalConsistencyError("2-cell square does not commute")
        p1t.append(t_index[(c.p.table[e], r)])
        wt.append(k)
    p1 = FinFunction.unchecked(c.E, nT, tuple(p1t))
    w = FinFunction.unchecked(c.E, P.E, tuple(wt))
    zf = FinFunction.unchecked(c.B, Q.B, z)
    sept = Septuple(p1, h, p2, w, x, y, zf)
    try:
        left = CartPolyMor(Polynomial(c.s, p1, h), P, w, x)
        right = CartPolyMor(Polynomial(h, p2, c.t), Q, y, zf)
    except ValueError as exc:
        raise InternalConsistencyError(f"septuple components invalid: {exc}") from None
    return sept, left, right


def recompose(c: Polynomial, sept: Septuple, left: CartPolyMor, right: CartPolyMor) -> CartPolyMor:
    delta = generic_poly_2cell(c.s, sept.p1, sept.h, sept.p2, c.t)
    return vcomp(delta, hcomp(left, right))


def septuple_is_valid(c: Polynomial, P: Polynomial, Q: Polynomial, st: Septuple) -> bool:
    """All commutation conditions and both pullback squares of the Weber diagram."""
    try:
        if fs.compose(st.p1, st.p2) != c.p:
            return False
        CartPolyMor(Polynomial(c.s, st.p1, st.h), P, st.w, st.x)
        CartPolyMor(Polynomial(st.h, st.p2, c.t), Q, st.y, st.z)
    except ValueError:
        return False
    return True


def septuples_equivalent(a: Septuple, b: Septuple) -> Optional[SeptupleEquivalence]:
    """The unique ``alpha: T -> T'`` identifying two septuples, if any."""
    if a.w != b.w or a.z != b.z or a.T != b.T:
        return None
    # T and T' are both pullbacks of the same cospan via (p2, y)
    where = {(b.p2.table[t], b.y.table[t]): t for t in range(b.T)}
    try:
        alpha = FinFunction(a.T, b.T, tuple(where[(a.p2.table[t], a.y.table[t])] for t in range(a.T)))
    except KeyError:
        return None
    if not alpha.is_bijective():
        return None
    if fs.compose(a.p1, alpha) != b.p1 or fs.compose(alpha, b.x) != a.x or fs.compose(alpha, b.h) != a.h:
        return None
    return SeptupleEquivalence(alpha)


def transport(st: Septuple, perm: FinFunction) -> Septuple:
    """Relabel ``T`` along the bijection ``perm: T -> T'``."""
    inv = perm.inverse()
    return Septuple(
        fs.compose(st.p1, perm),
        fs.compose(inv, st.h),
        fs.compose(inv, st.p2),
        st.w,
        fs.compose(inv, st.x),
        fs.compose(inv, st.y),
        st.z,
    )


def count_septuple_classes(c: Polynomial, P: Polynomial, Q: Polynomial) -> int:
    """Equivalence classes of Weber septuples, by brute force over every labelled septuple.

    Relabelling acts freely on septuples, so classes = labelled count / |T|!.
    """
    total = 0
    jfib = Q.p.fibers()
    for zt in itertools.product(range(Q.B), repeat=c.B):
        if any(Q.t.table[zt[b]] != c.t.table[b] for b in range(c.B)):
            continue
        n = sum(len(jfib[m]) for m in zt)
        labelled = 0
        for p2t in itertools.product(range(c.B), repeat=n):
            for yt in itertools.product(range(Q.E), repeat=n):
                if not _is_pullback_tables(p2t, yt, zt, Q.p.table, n, c.B, Q.E):
                    continue
                ht = tuple(Q.s.table[r] for r in yt)
                for xt in itertools.product(range(P.B), repeat=n):
                    if any(P.t.table[xt[k]] != ht[k] for k in range(n)):
                        continue
                    for p1t in itertools.product(range(n), repeat=c.E):
                        if any(p2t[p1t[e]] != c.p.table[e] for e in range(c.E)):
                            continue
                        for wt in itertools.product(range(P.E), repeat=c.E):
                            st = Septuple(
                                FinFunction(c.E, n, p1t), FinFunction(n, P.tgt, ht), FinFunction(n, c.B, p2t),
                                FinFunction(c.E, P.E, wt), FinFunction(n, P.B, xt), FinFunction(n, Q.E, yt),
                                FinFunction(c.B, Q.B, zt),
                            )
                            if septuple_is_valid(c, P, Q, st):
                                labelled += 1
        if labelled % factorial(n):
            raise InternalConsistencyError("relabelling action is not free")
        total += labelled // factorial(n)
    return total


def _is_pullback_tables(p2t, yt, zt, jt, n, nB, nR) -> bool:
    if any(jt[yt[k]] != zt[p2t[k]] for k in range(n)):
        return False
    return len(set(zip(p2t, yt))) == n


def triple_automorphisms(p1: FinFunction, h: FinFunction, p2: FinFunction) -> list[FinFunction]:
    """Permutations of ``T`` fixing ``p1``, ``h`` and ``p2``."""
    out = []
    for a in fs.enumerate_bijections(h.dom):
        if fs.compose(p1, a) == p1 and fs.compose(a, h) == h and fs.compose(a, p2) == p2:
            out.append(a)
    return out


def is_rigid(gen_or_triple) -> bool:
    p1, h, p2 = gen_or_triple
    return len(triple_automorphisms(p1, h, p2)) == 1


# ---------------------------------------------------------------------------
# enumeration


@lru_cache(maxsize=None)
def polys(x: int, z: int, max_e: int, max_b: int) -> tuple[Polynomial, ...]:
    out = []
    for nb in range(max_b + 1):
        for tt in itertools.product(range(z), repeat=nb):
            for ne in range(max_e + 1):
                for pt in itertools.product(range(nb), repeat=ne):
                    for st in itertools.product(range(x), repeat=ne):
                        out.append(
                            Polynomial(
                                FinFunction.unchecked(ne, x, st),
                                FinFunction.unchecked(ne, nb, pt),
                                FinFunction.unchecked(nb, z, tt),
                            )
                        )
    return tuple(out)


def factorizations(p: FinFunction, max_t: int) -> Iterator[tuple[FinFunction, FinFunction]]:
    """All ``p = p1;p2`` through ``T`` with ``|T| <= max_t``."""
    for n in range(max_t + 1):
        for p2 in fs.iter_functions(n, p.cod):
            fib = p2.fibers()
            for p1t in itertools.product(*(fib[p.table[e]] for e in range(p.dom))):
                yield FinFunction.unchecked(p.dom, n, tuple(p1t)), p2


class PolyBicat(Bicategory):
    """Poly_c(FinSet) with objects ``0..max_obj`` and ``|E|, |B| <= max_size``."""

    name = "poly"

    def __init__(self, max_obj: int = 1, max_size: int = 2, max_middle: Optional[int] = None):
        self.max_obj = max_obj
        self.max_size = max_size
        self.max_middle = max_size if max_middle is None else max_middle

    def objects(self):
        return list(range(self.max_obj + 1))

    def hom(self, X, Y):
        return list(polys(X, Y, self.max_size, self.max_size))

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
        return compose_polys(a, b)

    def unit(self, X):
        return identity_poly(X)

    def associator(self, a, b, c):
        return canonical_associator(a, b, c)

    def lunitor(self, a):
        return canonical_left_unitor(a)

    def runitor(self, a):
        return canonical_right_unitor(a)

    def is_iso(self, al):
        return al.f.is_bijective() and al.g.is_bijective()

    def inverse(self, al):
        return inverse(al)

    def is_generic(self, gen):
        _, left, right = factor_cartesian_2cell(gen.cell, gen.l, gen.r)
        if not (self.is_iso(left) and self.is_iso(right)):
            return False
        sept, _, _ = factor_cartesian_2cell(gen.cell, gen.l, gen.r)
        return is_rigid((sept.p1, sept.h, sept.p2))

    def fill(self, gen, gamma, a, b):
        """Pruned search: the base map of the right component is forced."""
        _, _, dr = factor_cartesian_2cell(gen.cell, gen.l, gen.r)
        _, _, gr = factor_cartesian_2cell(gamma, a, b)
        if not dr.g.is_bijective():
            return None
        z_forced = fs.compose(dr.g.inverse(), gr.g)
        found = []
        for g2 in two_cells(gen.r, b):
            if g2.g != z_forced:
                continue
            for g1 in two_cells(gen.l, a):
                if vcomp(gen.cell, hcomp(g1, g2)) == gamma:
                    found.append((g1, g2))
        return found[0] if len(found) == 1 else None

    def coherent_class(self):
        return PolyClass(self)

    def candidate_generics(self):
        for X, Y, Z in itertools.product(self.objects(), repeat=3):
            for c in self.hom(X, Z):
                for p1, p2 in factorizations(c.p, self.max_middle):
                    for h in fs.iter_functions(p1.cod, Y):
                        try:
                            g = generic(c.s, p1, h, p2, c.t)
                        except ValueError:
                            continue
                        if self.is_generic(g):
                            yield g


class PolyClass(CoherentClass):
    """Delta2 = all ``delta_{s,p1,h,p2,t}`` with rigid triple, Delta0 = all ``epsilon_h``."""

    name = "poly class"

    def __init__(self, bicat, rigid_only: bool = True):
        super().__init__(bicat)
        self.rigid_only = rigid_only

    def generics(self, c):
        out = []
        B = self.bicat
        for p1, p2 in factorizations(c.p, B.max_middle):
            for Y in B.objects():
                for h in fs.iter_functions(p1.cod, Y):
                    if self.rigid_only and not is_rigid((p1, h, p2)):
                        continue
                    out.append(generic(c.s, p1, h, p2, c.t))
        return out

    def augmentations(self, n):
        if n.p == fs.identity(n.E) and n.s == n.t:
            return [augmentation(n.s)]
        return []

    def factor(self, gamma, a, b):
        sept, left, right = factor_cartesian_2cell(gamma, a, b)
        c = gamma.src
        return generic(c.s, sept.p1, sept.h, sept.p2, c.t), left, right
