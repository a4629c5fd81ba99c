"""Oplax functors out of a generic bicategory, in two equivalent presentations.

* oplax data ``(L, phi, lambda)``: binary constraints ``phi[a, b]: L(a;b) -> La;Lb``
  for every composable pair and units ``lam[X]: L(1_X) -> 1_LX``;
* comonadic data ``(L, Phi, Lambda)``: a comultiplication ``Phi[delta]: Lc -> Ll;Lr``
  for each class generic ``delta: c -> l;r`` and a counit ``Lam[eps]: Ln -> 1_LX``
  for each class augmentation ``eps: n -> 1_X``.

Converting one way precomposes the constraint with ``L(delta)``; converting
back factors the identity on ``a;b`` through a class generic.  Both law suites
quantify over the bounded universe of the source handle.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, replace
from typing import Any, Callable, Iterator, Optional

from .bicategory import Aug, Bicategory, CoherentClass, Gen, InstanceNotGeneric
from .report import Check, LawViolation, timed

# ---------------------------------------------------------------------------
# tables and local functors


class Table:
    """A lazily computed, memoised mapping with optional overrides.

    Overrides are how corrupted data is built for negative controls.
    """

    def __init__(self, fn: Callable, overrides: Optional[dict] = None, name: str = ""):
        self.fn = fn
        self.overrides = dict(overrides or {})
        self.name = name
        self._memo: dict = {}

    def __getitem__(self, key):
        if key in self.overrides:
            return self.overrides[key]
        try:
            return self._memo[key]
        except KeyError:
            v = self._memo[key] = self.fn(key)
            return v

    def with_override(self, key, value) -> "Table":
        t = Table(self.fn, {**self.overrides, key: value}, self.name)
        t._memo = self._memo
        return t


@dataclass(frozen=True)
class LocalFunctor:
    """Object map plus the local functors ``L_{X,Y}`` on 1-cells and 2-cells."""

    name: str
    obj: Callable
    one: Callable
    two: Callable


@dataclass
class OplaxData:
    A: Bicategory
    C: Bicategory
    L: LocalFunctor
    phi: Table
    lam: Table
    name: str = ""


@dataclass
class ComonadicData:
    A: Bicategory
    C: Bicategory
    L: LocalFunctor
    cls: CoherentClass
    Phi: Table
    Lam: Table
    name: str = ""


@dataclass
class OplaxTransformationData:
    """``theta_obj[X]: LX -> KX`` and ``theta[f]: Lf;theta_Y -> theta_X;Kf``."""

    theta_obj: Callable
    theta: Table
    name: str = ""


@dataclass
class IconData:
    """Components ``theta[c]: Lc -> Kc`` for an icon between functors agreeing on objects."""

    theta: Table
    name: str = ""


# ---------------------------------------------------------------------------
# enumeration helpers over the bounded source


def _pairs(A: Bicategory) -> Iterator[tuple]:
    objs = A.objects()
    for X, Y, Z in itertools.product(objs, repeat=3):
        for a in A.hom(X, Y):
            for b in A.hom(Y, Z):
                yield a, b


def _triples(A: Bicategory) -> Iterator[tuple]:
    objs = A.objects()
    for X, Y, Z, W in itertools.product(objs, repeat=4):
        for a in A.hom(X, Y):
            for b in A.hom(Y, Z):
                for c in A.hom(Z, W):
                    yield a, b, c


def _cells_in(A: Bicategory, X, Y) -> list:
    hom = A.hom(X, Y)
    return [al for a in hom for b in hom for al in A.two_cells(a, b)]


def _guard(chk: Check, fn, witness):
    """Evaluate an equation; ill-typed data counts as a failure."""
    try:
        ok = fn()
    except ValueError as exc:
        ok = False
        witness = {**witness, "error": str(exc)}
    chk.record(bool(ok), witness)


def _sample(items: list, limit: Optional[int], seed: int) -> tuple[list, bool]:
    if limit is None or len(items) <= limit:
        return items, False
    return random.Random(seed).sample(items, limit), True


# ---------------------------------------------------------------------------
# oplax law suite


def check_oplax_laws(d: OplaxData, limit: Optional[int] = None, seed: int = 0) -> list[Check]:
    """Local functoriality, naturality of phi, associativity and both unit laws.

    Naturality is checked one variable at a time, which with local
    functoriality and interchange in the target gives joint naturality.
    ``limit`` caps each family by seeded sampling (recorded in the note).
    """
    A, C, L = d.A, d.C, d.L
    objs = A.objects()
    typ = Check("oplax data boundaries", "oplax functor: typing")
    with timed(typ):
        for a, b in _pairs(A):
            _guard(
                typ,
                lambda: C.dom2(d.phi[(a, b)]) == L.one(A.compose(a, b))
                and C.cod2(d.phi[(a, b)]) == C.compose(L.one(a), L.one(b)),
                {"a": a, "b": b},
            )
        for X in objs:
            _guard(
                typ,
                lambda: C.dom2(d.lam[X]) == L.one(A.unit(X)) and C.cod2(d.lam[X]) == C.unit(L.obj(X)),
                {"object": X},
            )
    out = [typ]

    fid = Check("local functor preserves identities", "oplax functor: local functoriality")
    fcomp = Check("local functor preserves vertical composites", "oplax functor: local functoriality")
    with timed(fid), timed(fcomp):
        for X, Y in itertools.product(objs, repeat=2):
            hom = A.hom(X, Y)
            for a in hom:
                _guard(fid, lambda: L.two(A.id2(a)) == C.id2(L.one(a)), {"a": a})
            cells = {(a, b): A.two_cells(a, b) for a in hom for b in hom}
            pairs = [(al, be) for a in hom for b in hom for c in hom for al in cells[(a, b)] for be in cells[(b, c)]]
            pairs, sampled = _sample(pairs, limit, seed)
            fcomp.note = "sampled" if sampled else fcomp.note
            for al, be in pairs:
                _guard(
                    fcomp,
                    lambda: L.two(A.vcomp(al, be)) == C.vcomp(L.two(al), L.two(be)),
                    {"alpha": al, "beta": be},
                )
    out += [fid, fcomp]

    nat = Check("naturality of phi", "oplax functor: naturality of constraints")
    with timed(nat):
        items = []
        for X, Y, Z in itertools.product(objs, repeat=3):
            for al in _cells_in(A, X, Y):
                for b in A.hom(Y, Z):
                    items.append((al, A.id2(b)))
            for a in A.hom(X, Y):
                for be in _cells_in(A, Y, Z):
                    items.append((A.id2(a), be))
        items, sampled = _sample(items, limit, seed)
        nat.note = "sampled" if sampled else ""
        for al, be in items:
            a, a2, b, b2 = A.dom2(al), A.cod2(al), A.dom2(be), A.cod2(be)
            _guard(
                nat,
                lambda: C.vcomp(L.two(A.hcomp(al, be)), d.phi[(a2, b2)])
                == C.vcomp(d.phi[(a, b)], C.hcomp(L.two(al), L.two(be))),
                {"alpha": al, "beta": be},
            )
    out.append(nat)

    assoc = Check("associativity of phi", "oplax functor: associativity")
    with timed(assoc):
        items, sampled = _sample(list(_triples(A)), limit, seed)
        assoc.note = "sampled" if sampled else ""
        for a, b, c in items:

            def eq():
                ab, bc = A.compose(a, b), A.compose(b, c)
                La, Lb, Lc = L.one(a), L.one(b), L.one(c)
                lhs = C.vcomp_all(
                    d.phi[(ab, c)], C.whisker_right(d.phi[(a, b)], Lc), C.associator(La, Lb, Lc)
                )
                rhs = C.vcomp_all(L.two(A.associator(a, b, c)), d.phi[(a, bc)], C.whisker_left(La, d.phi[(b, c)]))
                return lhs == rhs

            _guard(assoc, eq, {"a": a, "b": b, "c": c})
    out.append(assoc)

    lu = Check("left unit law", "oplax functor: unit axiom")
    ru = Check("right unit law", "oplax functor: unit axiom")
    with timed(lu), timed(ru):
        for X, Y in itertools.product(objs, repeat=2):
            for a in A.hom(X, Y):
                La = L.one(a)
                _guard(
                    lu,
                    lambda: C.vcomp_all(
                        L.two(A.lunitor(a)), d.phi[(A.unit(X), a)], C.whisker_right(d.lam[X], La)
                    )
                    == C.lunitor(La),
                    {"a": a},
                )
                _guard(
                    ru,
                    lambda: C.vcomp_all(L.two(A.runitor(a)), d.phi[(a, A.unit(Y))], C.whisker_left(La, d.lam[Y]))
                    == C.runitor(La),
                    {"a": a},
                )
    out += [lu, ru]
    return out


# ---------------------------------------------------------------------------
# comonadic law suite


def axiom_a_instances(cls: CoherentClass) -> Iterator[tuple]:
    """``(delta1, zeta, delta2, zeta1, zeta2)`` with ``delta1;(zeta1;zeta2) == zeta;delta2``.

    Squares are enumerated by choosing ``zeta`` and ``delta2``; the right edge
    is the filler against ``delta1``.
    """
    A = cls.bicat
    for X, Z in itertools.product(A.objects(), repeat=2):
        hom = A.hom(X, Z)
        for c2 in hom:
            gens2 = cls.generics(c2)
            if not gens2:
                continue
            for c in hom:
                gens1 = cls.generics(c)
                if not gens1:
                    continue
                for zeta in A.two_cells(c, c2):
                    for d2 in gens2:
                        gamma = A.vcomp(zeta, d2.cell)
                        for d1 in gens1:
                            if A.target(d1.l) != A.target(d2.l):
                                continue
                            got = A.fill(d1, gamma, d2.l, d2.r)
                            if got is not None:
                                yield d1, zeta, d2, got[0], got[1]


def axiom_b_instances(cls: CoherentClass) -> Iterator[tuple]:
    A = cls.bicat
    for X in A.objects():
        hom = A.hom(X, X)
        augs = {n: cls.augmentations(n) for n in hom}
        for n in hom:
            for n2 in hom:
                if not augs[n] or not augs[n2]:
                    continue
                for xi in A.two_cells(n, n2):
                    for e2 in augs[n2]:
                        got = A.vcomp(xi, e2.cell)
                        for e in augs[n]:
                            if got == e.cell:
                                yield xi, e, e2


def axiom_c_instances(cls: CoherentClass) -> Iterator[tuple]:
    """``(d1, d2, d3, d4)`` with ``d1;(d2;r);assoc == d3;(l;d4)``."""
    A = cls.bicat
    for d1 in cls.all_generics():
        for d2 in cls.generics(d1.l):
            l, m, r = d2.l, d2.r, d1.r
            target = A.vcomp_all(d1.cell, A.whisker_right(d2.cell, r), A.associator(l, m, r))
            for d3 in cls.generics(d1.c):
                if d3.l != l:
                    continue
                for d4 in cls.generics(d3.r):
                    if d4.l == m and d4.r == r and A.vcomp(d3.cell, A.whisker_left(l, d4.cell)) == target:
                        yield d1, d2, d3, d4


def axiom_c_instances_bruteforce(cls: CoherentClass) -> list[tuple]:
    """Independent enumeration: every quadruple of class generics, filtered by boundary then equality."""
    A = cls.bicat
    gens = list(cls.all_generics())
    by_c: dict = {}
    for g in gens:
        by_c.setdefault(g.c, []).append(g)
    out = []
    for d3 in gens:
        for d4 in by_c.get(d3.r, ()):
            rhs = A.vcomp(d3.cell, A.whisker_left(d3.l, d4.cell))
            for d1 in by_c.get(d3.c, ()):
                if d1.r != d4.r:
                    continue
                for d2 in by_c.get(d1.l, ()):
                    if d2.l != d3.l or d2.r != d4.l:
                        continue
                    lhs = A.vcomp_all(d1.cell, A.whisker_right(d2.cell, d1.r), A.associator(d2.l, d2.r, d1.r))
                    if lhs == rhs:
                        out.append((d1, d2, d3, d4))
    return out


def axiom_d_instances(cls: CoherentClass) -> Iterator[tuple]:
    A = cls.bicat
    for c in A.all_one_cells():
        for d in cls.generics(c):
            if d.r != c:
                continue
            for e in cls.augmentations(d.l):
                if A.vcomp(d.cell, A.whisker_right(e.cell, c)) == A.lunitor(c):
                    yield c, d, e


def axiom_e_instances(cls: CoherentClass) -> Iterator[tuple]:
    A = cls.bicat
    for c in A.all_one_cells():
        for d in cls.generics(c):
            if d.l != c:
                continue
            for e in cls.augmentations(d.r):
                if A.vcomp(d.cell, A.whisker_left(c, e.cell)) == A.runitor(c):
                    yield c, d, e


AXIOMS = ("a", "b", "c", "d", "e")
AXIOM_NAMES = {
    "a": "naturality of comultiplication",
    "b": "naturality of counits",
    "c": "associativity of comultiplication",
    "d": "left counit axiom",
    "e": "right counit axiom",
}


def axiom_instances(cls: CoherentClass, axiom: str) -> Iterator[tuple]:
    return {
        "a": axiom_a_instances,
        "b": axiom_b_instances,
        "c": axiom_c_instances,
        "d": axiom_d_instances,
        "e": axiom_e_instances,
    }[axiom](cls)


def axiom_entries(axiom: str, inst: tuple) -> list[tuple[str, Any]]:
    """The table entries an instance of ``axiom`` reads."""
    if axiom == "a":
        return [("Phi", inst[0]), ("Phi", inst[2])]
    if axiom == "b":
        return [("Lam", inst[1]), ("Lam", inst[2])]
    if axiom == "c":
        return [("Phi", g) for g in inst]
    return [("Phi", inst[1]), ("Lam", inst[2])]


def axiom_holds(D: ComonadicData, axiom: str, inst: tuple) -> bool:
    """The conclusion diagram of ``axiom`` at one hypothesis instance."""
    C, L = D.C, D.L
    if axiom == "a":
        d1, zeta, d2, z1, z2 = inst
        return C.vcomp(D.Phi[d1], C.hcomp(L.two(z1), L.two(z2))) == C.vcomp(L.two(zeta), D.Phi[d2])
    if axiom == "b":
        xi, e, e2 = inst
        return C.vcomp(L.two(xi), D.Lam[e2]) == D.Lam[e]
    if axiom == "c":
        d1, d2, d3, d4 = inst
        Ll, Lm, Lr = L.one(d2.l), L.one(d2.r), L.one(d1.r)
        lhs = C.vcomp_all(D.Phi[d1], C.whisker_right(D.Phi[d2], Lr), C.associator(Ll, Lm, Lr))
        return lhs == C.vcomp(D.Phi[d3], C.whisker_left(Ll, D.Phi[d4]))
    c, d, e = inst
    Lc = L.one(c)
    if axiom == "d":
        return C.vcomp(D.Phi[d], C.whisker_right(D.Lam[e], Lc)) == C.lunitor(Lc)
    return C.vcomp(D.Phi[d], C.whisker_left(Lc, D.Lam[e])) == C.runitor(Lc)


def _witness(axiom: str, inst: tuple) -> dict:
    keys = {
        "a": ("delta1", "zeta", "delta2", "zeta1", "zeta2"),
        "b": ("xi", "eps", "eps2"),
        "c": ("delta1", "delta2", "delta3", "delta4"),
        "d": ("c", "delta", "eps"),
        "e": ("c", "delta", "eps"),
    }[axiom]
    return dict(zip(keys, inst))


def check_comonadic_typing(D: ComonadicData) -> Check:
    """Every table entry has the boundary the data type demands."""
    C, L = D.C, D.L
    chk = Check("comonadic data boundaries", "comonadic data: typing")
    with timed(chk):
        for g in D.cls.all_generics():
            _guard(
                chk,
                lambda: C.dom2(D.Phi[g]) == L.one(g.c) and C.cod2(D.Phi[g]) == C.compose(L.one(g.l), L.one(g.r)),
                {"delta": g},
            )
        for e in D.cls.all_augmentations():
            _guard(
                chk,
                lambda: C.dom2(D.Lam[e]) == L.one(e.n) and C.cod2(D.Lam[e]) == C.unit(L.obj(e.obj)),
                {"eps": e},
            )
    return chk


def check_comonadic_laws(D: ComonadicData, axioms=AXIOMS, typing: bool = True) -> list[Check]:
    """Conditions (a)-(e) on every instance of each hypothesis diagram in the bounded source."""
    out = [check_comonadic_typing(D)] if typing else []
    for ax in axioms:
        chk = Check(f"({ax}) {AXIOM_NAMES[ax]}", f"comonadic data ({ax})")
        with timed(chk):
            for inst in axiom_instances(D.cls, ax):
                _guard(chk, lambda: axiom_holds(D, ax, inst), _witness(ax, inst))
        out.append(chk)
    return out


# ---------------------------------------------------------------------------
# conversions


def _failed(checks: list[Check]) -> Optional[Check]:
    for c in checks:
        if not c.passed:
            return c
    return None


def oplax_to_comonadic(d: OplaxData, cls: CoherentClass, check: bool = True, limit: Optional[int] = None) -> ComonadicData:
    """``Phi[delta] = L(delta);phi[l, r]`` and ``Lam[eps] = L(eps);lam[X]``."""
    if check:
        bad = _failed(check_oplax_laws(d, limit=limit))
        if bad is not None:
            raise LawViolation(bad.name, bad.witness)
    C, L = d.C, d.L
    Phi = Table(lambda g: C.vcomp(L.two(g.cell), d.phi[(g.l, g.r)]), name="Phi")
    Lam = Table(lambda e: C.vcomp(L.two(e.cell), d.lam[e.obj]), name="Lambda")
    return ComonadicData(d.A, C, L, cls, Phi, Lam, f"{d.name} (comonadic)")


def identity_augmentation(cls: CoherentClass, X) -> Aug:
    A = cls.bicat
    u = A.unit(X)
    for e in cls.augmentations(u):
        if e.cell == A.id2(u):
            return e
    raise InstanceNotGeneric(f"class has no identity augmentation at {X!r}")


def comonadic_to_oplax(D: ComonadicData, check: bool = True) -> OplaxData:
    """``phi[a, b] = Phi[delta];(L s1; L s2)`` where ``id_{a;b} = delta;(s1;s2)``."""
    if check:
        bad = _failed(check_comonadic_laws(D))
        if bad is not None:
            raise LawViolation(bad.name, bad.witness)
    A, C, L, cls = D.A, D.C, D.L, D.cls

    def phi(key):
        a, b = key
        g, s1, s2 = cls.factor(A.id2(A.compose(a, b)), a, b)
        return C.vcomp(D.Phi[g], C.hcomp(L.two(s1), L.two(s2)))

    def lam(X):
        return D.Lam[identity_augmentation(cls, X)]

    return OplaxData(A, C, L, Table(phi, name="phi"), Table(lam, name="lambda"), f"{D.name} (oplax)")


def iso_equivalences(cls: CoherentClass, gp: Gen) -> Iterator[tuple]:
    """All ``(delta, zeta, z1, z2)`` with delta in the class, isos, and ``zeta;gp == delta;(z1;z2)``."""
    A = cls.bicat
    # the source itself first: composites may lie outside the bounded homs
    hom = [gp.c] + [c for c in A.hom(A.source(gp.c), A.target(gp.c)) if c != gp.c]
    isos = lambda a, b: [z for z in A.two_cells(a, b) if A.is_iso(z)]
    for c in hom:
        for zeta in isos(c, gp.c):
            lhs = A.vcomp(zeta, gp.cell)
            for d in cls.generics(c):
                for z1 in isos(d.l, gp.l):
                    for z2 in isos(d.r, gp.r):
                        if A.vcomp(d.cell, A.hcomp(z1, z2)) == lhs:
                            yield d, zeta, z1, z2


def extend_Phi(D: ComonadicData, gp: Gen, via: Optional[tuple] = None):
    """Comultiplication at an arbitrary generic, transported from an iso-equivalent class member."""
    A, C, L = D.A, D.C, D.L
    if via is None:
        via = next(iso_equivalences(D.cls, gp), None)
        if via is None:
            raise InstanceNotGeneric(f"{gp!r} is not iso-equivalent to a class generic")
    d, zeta, z1, z2 = via
    return C.vcomp_all(L.two(A.inverse(zeta)), D.Phi[d], C.hcomp(L.two(z1), L.two(z2)))


def check_extension_well_defined(D: ComonadicData, generics=None, max_routes: int = 8) -> Check:
    """Different iso-equivalences of one generic give the same transported comultiplication."""
    A = D.A
    chk = Check("extension of comultiplication is well defined", "extension to all generics")
    with timed(chk):
        for gp in generics if generics is not None else A.candidate_generics():
            vals = [extend_Phi(D, gp, via) for via in itertools.islice(iso_equivalences(D.cls, gp), max_routes)]
            chk.record(bool(vals) and all(v == vals[0] for v in vals), {"generic": gp, "routes": len(vals)})
    return chk


def check_factorization_independence(D: ComonadicData, pairs=None, max_routes: int = 4) -> Check:
    """``phi[a, b]`` computed through different generic factorizations of ``id_{a;b}`` agrees."""
    A, C, L, cls = D.A, D.C, D.L, D.cls
    chk = Check("constraint independent of chosen generic", "comonadic to oplax")
    with timed(chk):
        for a, b in pairs if pairs is not None else _pairs(A):
            ab = A.compose(a, b)
            g, s1, s2 = cls.factor(A.id2(ab), a, b)
            base = C.vcomp(D.Phi[g], C.hcomp(L.two(s1), L.two(s2)))
            routes = 0
            ok = True
            # re-route through delta;(i1;i2) for automorphisms i1, i2 of its factors
            for i1 in [z for z in A.two_cells(g.l, g.l) if A.is_iso(z)][:max_routes]:
                for i2 in [z for z in A.two_cells(g.r, g.r) if A.is_iso(z)][:max_routes]:
                    gp = Gen(A.vcomp(g.cell, A.hcomp(i1, i2)), ab, g.l, g.r)
                    t1, t2 = A.vcomp(A.inverse(i1), s1), A.vcomp(A.inverse(i2), s2)
                    val = C.vcomp(extend_Phi(D, gp), C.hcomp(L.two(t1), L.two(t2)))
                    ok &= val == base
                    routes += 1
            chk.record(ok, {"a": a, "b": b, "routes": routes})
    return chk


# ---------------------------------------------------------------------------
# roundtrips and comparisons


def compare_oplax(d1: OplaxData, d2: OplaxData, name: str = "oplax data agree") -> Check:
    A = d1.A
    chk = Check(name, "oplax/comonadic bijection")
    with timed(chk):
        for a, b in _pairs(A):
            _guard(chk, lambda: d1.phi[(a, b)] == d2.phi[(a, b)], {"a": a, "b": b})
        for X in A.objects():
            _guard(chk, lambda: d1.lam[X] == d2.lam[X], {"object": X})
    return chk


def compare_comonadic(D1: ComonadicData, D2: ComonadicData, name: str = "comonadic data agree") -> Check:
    chk = Check(name, "oplax/comonadic bijection")
    with timed(chk):
        for g in D1.cls.all_generics():
            _guard(chk, lambda: D1.Phi[g] == D2.Phi[g], {"delta": g})
        for e in D1.cls.all_augmentations():
            _guard(chk, lambda: D1.Lam[e] == D2.Lam[e], {"eps": e})
    return chk


def roundtrip_oplax(d: OplaxData, cls: CoherentClass) -> Check:
    """oplax -> comonadic -> oplax is the identity."""
    back = comonadic_to_oplax(oplax_to_comonadic(d, cls, check=False), check=False)
    return compare_oplax(d, back, f"roundtrip oplax->comonadic->oplax [{d.name}]")


def roundtrip_comonadic(D: ComonadicData) -> Check:
    """comonadic -> oplax -> comonadic is the identity."""
    back = oplax_to_comonadic(comonadic_to_oplax(D, check=False), D.cls, check=False)
    return compare_comonadic(D, back, f"roundtrip comonadic->oplax->comonadic [{D.name}]")


def restrict_to_class(d: OplaxData, cls: CoherentClass) -> OplaxData:
    """Oplax data whose phi is only defined on factor pairs of class generics."""
    allowed = {(g.l, g.r) for g in cls.all_generics()}

    def phi(key):
        if key not in allowed:
            raise KeyError(f"constraint at {key!r} withheld")
        return d.phi[key]

    return OplaxData(d.A, d.C, d.L, Table(phi, name="phi|class"), d.lam, f"{d.name} restricted")


# ---------------------------------------------------------------------------
# transformations and icons


def check_transformation(
    t: OplaxTransformationData, L: ComonadicData, K: ComonadicData, naturality: bool = True
) -> list[Check]:
    """Conditions (a) and (b) on class members, plus naturality of ``theta`` in 2-cells."""
    A, C = L.A, L.C
    FL, FK = L.L, K.L
    th, tho = t.theta, t.theta_obj
    out = []
    if naturality:
        nat = Check("transformation naturality", "oplax transformation: naturality")
        with timed(nat):
            for X, Y in itertools.product(A.objects(), repeat=2):
                for al in _cells_in(A, X, Y):
                    f, f2 = A.dom2(al), A.cod2(al)
                    _guard(
                        nat,
                        lambda: C.vcomp(C.whisker_right(FL.two(al), tho(Y)), th[f2])
                        == C.vcomp(th[f], C.whisker_left(tho(X), FK.two(al))),
                        {"alpha": al},
                    )
        out.append(nat)
    ca = Check("transformation (a) comultiplication", "oplax transformation (a)")
    with timed(ca):
        for g in L.cls.all_generics():
            X, Y, Z = A.source(g.c), A.target(g.l), A.target(g.c)
            tx, ty, tz = tho(X), tho(Y), tho(Z)

            def eq():
                Ll, Lr, Kl, Kr = FL.one(g.l), FL.one(g.r), FK.one(g.l), FK.one(g.r)
                lhs = C.vcomp(th[g.c], C.whisker_left(tx, K.Phi[g]))
                rhs = C.vcomp_all(
                    C.whisker_right(L.Phi[g], tz),
                    C.associator(Ll, Lr, tz),
                    C.whisker_left(Ll, th[g.r]),
                    C.associator_inv(Ll, ty, Kr),
                    C.whisker_right(th[g.l], Kr),
                    C.associator(tx, Kl, Kr),
                )
                return lhs == rhs

            _guard(ca, eq, {"delta": g})
    cb = Check("transformation (b) counit", "oplax transformation (b)")
    with timed(cb):
        for e in L.cls.all_augmentations():
            tx = tho(e.obj)
            _guard(
                cb,
                lambda: C.vcomp(th[e.n], C.whisker_left(tx, K.Lam[e]))
                == C.vcomp_all(C.whisker_right(L.Lam[e], tx), C.lunitor_inv(tx), C.runitor(tx)),
                {"eps": e},
            )
    return out + [ca, cb]


def check_transformation_oplax(t: OplaxTransformationData, L: OplaxData, K: OplaxData) -> list[Check]:
    """The usual oplax transformation axioms against ``phi`` and ``lambda``."""
    A, C = L.A, L.C
    FL, FK = L.L, K.L
    th, tho = t.theta, t.theta_obj
    ca = Check("transformation compatible with phi", "oplax transformation: composition")
    with timed(ca):
        for a, b in _pairs(A):
            X, Y, Z = A.source(a), A.target(a), A.target(b)
            tx, ty, tz = tho(X), tho(Y), tho(Z)

            def eq():
                La, Lb, Ka, Kb = FL.one(a), FL.one(b), FK.one(a), FK.one(b)
                lhs = C.vcomp(th[A.compose(a, b)], C.whisker_left(tx, K.phi[(a, b)]))
                rhs = C.vcomp_all(
                    C.whisker_right(L.phi[(a, b)], tz),
                    C.associator(La, Lb, tz),
                    C.whisker_left(La, th[b]),
                    C.associator_inv(La, ty, Kb),
                    C.whisker_right(th[a], Kb),
                    C.associator(tx, Ka, Kb),
                )
                return lhs == rhs

            _guard(ca, eq, {"a": a, "b": b})
    cb = Check("transformation compatible with lambda", "oplax transformation: units")
    with timed(cb):
        for X in A.objects():
            tx = tho(X)
            _guard(
                cb,
                lambda: C.vcomp(th[A.unit(X)], C.whisker_left(tx, K.lam[X]))
                == C.vcomp_all(C.whisker_right(L.lam[X], tx), C.lunitor_inv(tx), C.runitor(tx)),
                {"object": X},
            )
    return [ca, cb]


def identity_transformation(D: ComonadicData) -> OplaxTransformationData:
    C, L = D.C, D.L
    unit = lambda X: C.unit(L.obj(X))
    theta = Table(lambda f: C.vcomp(C.runitor_inv(L.one(f)), C.lunitor(L.one(f))), name="theta")
    return OplaxTransformationData(unit, theta, "identity")


def check_icon(i: IconData, L: ComonadicData, K: ComonadicData) -> list[Check]:
    A, C = L.A, L.C
    th = i.theta
    nat = Check("icon naturality", "icon: natural transformation")
    with timed(nat):
        for X, Y in itertools.product(A.objects(), repeat=2):
            if L.L.obj(X) != K.L.obj(X) or L.L.obj(Y) != K.L.obj(Y):
                nat.record(False, {"reason": "functors differ on objects", "X": X, "Y": Y})
                continue
            for al in _cells_in(A, X, Y):
                _guard(
                    nat,
                    lambda: C.vcomp(L.L.two(al), th[A.cod2(al)]) == C.vcomp(th[A.dom2(al)], K.L.two(al)),
                    {"alpha": al},
                )
    sq = Check("icon comultiplication square", "icon: comultiplication")
    with timed(sq):
        for g in L.cls.all_generics():
            _guard(
                sq,
                lambda: C.vcomp(L.Phi[g], C.hcomp(th[g.l], th[g.r])) == C.vcomp(th[g.c], K.Phi[g]),
                {"delta": g},
            )
    tri = Check("icon counit triangle", "icon: counit")
    with timed(tri):
        for e in L.cls.all_augmentations():
            _guard(tri, lambda: C.vcomp(th[e.n], K.Lam[e]) == L.Lam[e], {"eps": e})
    return [nat, sq, tri]


def identity_icon(D: ComonadicData) -> IconData:
    return IconData(Table(lambda c: D.C.id2(D.L.one(c)), name="theta"), "identity")


# ---------------------------------------------------------------------------
# comonoids in a one-object target


def comonoid_report(D: ComonadicData) -> list[Check]:
    """Each ``LT`` is a comonoid ``(LT, Phi_T, Lam_T)`` and each ``Lf`` a comonoid map.

    ``D`` must come from the cartesian one-object source with its diagonal class.
    """
    A, C, L, cls = D.A, D.C, D.L, D.cls
    coassoc = Check("comonoid coassociativity", "comonoids: coassociativity")
    lcounit = Check("comonoid left counit", "comonoids: counit")
    rcounit = Check("comonoid right counit", "comonoids: counit")
    hom_counit = Check("homomorphism preserves counit", "comonoids: morphisms")
    hom_comult = Check("homomorphism preserves comultiplication", "comonoids: morphisms")
    star = A.objects()[0]
    with timed(coassoc):
        for T in A.hom(star, star):
            (g,) = cls.generics(T)
            (e,) = cls.augmentations(T)
            LT = L.one(T)
            P, Lm = D.Phi[g], D.Lam[e]
            _guard(
                coassoc,
                lambda: C.vcomp_all(P, C.whisker_right(P, LT), C.associator(LT, LT, LT))
                == C.vcomp(P, C.whisker_left(LT, P)),
                {"T": T},
            )
            _guard(lcounit, lambda: C.vcomp(P, C.whisker_right(Lm, LT)) == C.lunitor(LT), {"T": T})
            _guard(rcounit, lambda: C.vcomp(P, C.whisker_left(LT, Lm)) == C.runitor(LT), {"T": T})
    with timed(hom_comult):
        hom = A.hom(star, star)
        for T, T2 in itertools.product(hom, repeat=2):
            (g,), (g2,) = cls.generics(T), cls.generics(T2)
            (e,), (e2,) = cls.augmentations(T), cls.augmentations(T2)
            for f in A.two_cells(T, T2):
                Lf = L.two(f)
                _guard(hom_counit, lambda: C.vcomp(Lf, D.Lam[e2]) == D.Lam[e], {"f": f})
                _guard(
                    hom_comult,
                    lambda: C.vcomp(Lf, D.Phi[g2]) == C.vcomp(D.Phi[g], C.hcomp(Lf, Lf)),
                    {"f": f},
                )
    return [coassoc, lcounit, rcounit, hom_counit, hom_comult]


# ---------------------------------------------------------------------------
# negative controls


def alternatives(C: Bicategory, value, limit: int = 8) -> list:
    """Other well-typed 2-cells with the same boundary as ``value``."""
    out = []
    for v in C.two_cells(C.dom2(value), C.cod2(value)):
        if v != value:
            out.append(v)
            if len(out) >= limit:
                break
    return out


@dataclass
class Corruption:
    table: str  # "Phi" | "Lam" | "phi" | "lam"
    key: Any
    value: Any
    well_typed: bool


def corrupt(data, c: Corruption):
    tab = getattr(data, c.table)
    return replace(data, **{c.table: tab.with_override(c.key, c.value)}, name=f"{data.name} corrupted")


def _ill_typed_for(C: Bicategory, value):
    """A 2-cell with a different boundary: the identity on the source of ``value``."""
    alt = C.id2(C.dom2(value))
    return alt if C.cod2(alt) != C.cod2(value) else None


def targeted_corruptions(D: ComonadicData, axiom: str, n: int, seed: int = 0) -> list[Corruption]:
    """Up to ``n`` single-entry corruptions, each breaking some instance of ``axiom``.

    Entries are drawn from shuffled instances of the axiom.  Well-typed
    replacements are tried first; counits into identity 1-cells are unique in
    the shipped targets, so those fall back to an ill-typed replacement.
    """
    C = D.C
    rng = random.Random(seed)
    insts = list(axiom_instances(D.cls, axiom))
    rng.shuffle(insts)
    out, seen = [], set()
    for inst in insts:
        for tab, key in axiom_entries(axiom, inst):
            if (tab, key) in seen:
                continue
            true = getattr(D, tab)[key]
            alts = alternatives(C, true)
            rng.shuffle(alts)
            bad = _ill_typed_for(C, true)
            cands = [(v, True) for v in alts] + ([(bad, False)] if bad is not None else [])
            for v, typed in cands:
                c = Corruption(tab, key, v, typed)
                try:
                    broken = not axiom_holds(corrupt(D, c), axiom, inst)
                except ValueError:
                    broken = True
                if broken:
                    out.append(c)
                    seen.add((tab, key))
                    break
            if len(out) >= n:
                return out
    return out


def random_corruptions(D: ComonadicData, n: int, seed: int = 0) -> list[Corruption]:
    """Untargeted well-typed comultiplication corruptions."""
    rng = random.Random(seed)
    gens = list(D.cls.all_generics())
    rng.shuffle(gens)
    out = []
    for g in gens:
        alts = alternatives(D.C, D.Phi[g])
        if alts:
            out.append(Corruption("Phi", g, rng.choice(alts), True))
        if len(out) >= n:
            break
    return out


def oplax_corruptions(d: OplaxData, n: int, seed: int = 0, pairs=None) -> list[Corruption]:
    """Well-typed corruptions of phi (at the given pairs) and ill-typed corruptions of lambda."""
    A, C = d.A, d.C
    rng = random.Random(seed)
    pairs = list(pairs if pairs is not None else _pairs(A))
    rng.shuffle(pairs)
    out = []
    for key in pairs:
        alts = alternatives(C, d.phi[key])
        if alts:
            out.append(Corruption("phi", key, rng.choice(alts), True))
        if len(out) >= n:
            break
    for X in A.objects():
        bad = _ill_typed_for(C, d.lam[X])
        if bad is None:
            others = [d.lam[Y] for Y in A.objects() if Y != X]
            bad = others[0] if others else None
        if bad is not None:
            out.append(Corruption("lam", X, bad, False))
    return out
