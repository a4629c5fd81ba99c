"""Law suites for the span and polynomial handles.

Each function returns one ``Check`` (or a list) and is deterministic under
its ``seed``.  Brute-force oracles here deliberately avoid the fast paths
of the modules they test: hom-sets are recounted by enumerating raw maps,
fillers by exhaustive candidate search.
"""

from __future__ import annotations

import itertools
import random
from typing import Iterator, Optional

from . import finset as fs
from . import poly as pl
from . import span as sp
from .bicategory import Gen, check_filler_square, filler_candidates
from .finset import FinFunction
from .report import Check, timed


# ---------------------------------------------------------------------------
# enumeration helpers


def span_generics(max_obj: int, max_apex: int) -> Iterator[Gen]:
    """Every ``delta_{s,h,t}`` with boundary objects ``<= max_obj`` and apex ``<= max_apex``."""
    objs = range(max_obj + 1)
    for X, Y, Z in itertools.product(objs, repeat=3):
        for T in range(max_apex + 1):
            for s in fs.iter_functions(T, X):
                for h in fs.iter_functions(T, Y):
                    for t in fs.iter_functions(T, Z):
                        yield sp.generic(s, h, t)


def random_cell_out(a: sp.Span, max_apex: int, rng: random.Random) -> Optional[sp.SpanMor]:
    """A random 2-cell ``a -> f`` whose target ``f`` has apex ``<= max_apex``."""
    keys: list = []
    table = []
    for key in zip(a.left.table, a.right.table):
        opts = [k for k, kk in enumerate(keys) if kk == key]
        if len(keys) < max_apex:
            opts.append(len(keys))
        if not opts:
            return None
        k = rng.choice(opts)
        if k == len(keys):
            keys.append(key)
        table.append(k)
    X, Z = a.src, a.tgt
    extra = rng.randint(0, max_apex - len(keys)) if X and Z else 0
    for _ in range(extra):
        keys.append((rng.randrange(X), rng.randrange(Z)))
    n = len(keys)
    f = sp.Span(FinFunction(n, X, tuple(k[0] for k in keys)), FinFunction(n, Z, tuple(k[1] for k in keys)))
    return sp.SpanMor(a, f, FinFunction(a.apex, n, tuple(table)))


def relabel(a: sp.Span, perm: FinFunction) -> sp.SpanMor:
    """The iso ``a -> a'`` moving apex element ``i`` to ``perm(i)``."""
    inv = perm.inverse()
    b = sp.Span(fs.compose(inv, a.left), fs.compose(inv, a.right))
    return sp.SpanMor(a, b, perm)


def _square(B, g: Gen, g1, g2, p1, p2):
    gamma = B.vcomp(g.cell, B.hcomp(g1, g2))
    return gamma, (g1.dst, g2.dst), (p1, p2), (p1.dst, p2.dst), (B.vcomp(g1, p1), B.vcomp(g2, p2))


# ---------------------------------------------------------------------------
# span: genericity of delta


def check_span_filler_uniqueness(
    max_size: int = 3, squares_per_generic: int = 2, seed: int = 0, exhaustive_size: int = 1
) -> Check:
    """Exactly one filler pair for commuting squares through every ``delta_{s,h,t}``.

    Every generic gets its identity square and seeded random squares; those of
    size ``<= exhaustive_size`` also get every square over the bounded homs.
    """
    chk = Check("generic filler uniqueness", "genericity of delta_{s,h,t}")
    B = sp.SpanBicat(max_size, max_size)
    rng = random.Random(seed)
    with timed(chk):
        gens = 0
        for g in span_generics(max_size, max_size):
            gens += 1
            ident = _square(B, g, B.id2(g.l), B.id2(g.r), B.id2(g.l), B.id2(g.r))
            chk.record(*check_filler_square(B, g, ident))
            for _ in range(squares_per_generic):
                g1, g2 = random_cell_out(g.l, max_size, rng), random_cell_out(g.r, max_size, rng)
                if g1 is None or g2 is None:
                    continue
                p1, p2 = random_cell_out(g1.dst, max_size, rng), random_cell_out(g2.dst, max_size, rng)
                if p1 is None or p2 is None:
                    continue
                chk.record(*check_filler_square(B, g, _square(B, g, g1, g2, p1, p2)))
        small = sp.SpanBicat(exhaustive_size, exhaustive_size)
        from .bicategory import squares_through

        for g in span_generics(exhaustive_size, exhaustive_size):
            X, Y, Z = g.c.src, g.l.tgt, g.c.tgt
            pairs = [(f, h) for f in small.hom(X, Y) for h in small.hom(Y, Z)]
            for square in squares_through(small, g, pairs, pairs):
                chk.record(*check_filler_square(small, g, square))
        chk.bound = {"max_size": max_size, "generics": gens, "exhaustive_squares_size": exhaustive_size}
    return chk


# ---------------------------------------------------------------------------
# span: the hom-into-composite bijection


def _count_cells_raw(a: sp.Span, b: sp.Span) -> int:
    """2-cells counted by enumerating every map of apexes."""
    if a.src != b.src or a.tgt != b.tgt:
        return 0
    n = 0
    for m in itertools.product(range(b.apex), repeat=a.apex):
        if all(b.left.table[j] == a.left.table[i] and b.right.table[j] == a.right.table[i] for i, j in enumerate(m)):
            n += 1
    return n


def hom_composite_instance(c: sp.Span, f: sp.Span, g: sp.Span) -> tuple[bool, object]:
    """Count equality plus explicit mutually inverse maps for one instance."""
    fg = sp.compose_spans(f, g)
    lhs = _count_cells_raw(c, fg)
    summands = []
    for h in fs.iter_functions(c.apex, f.tgt):
        for l in sp.two_cells(sp.Span(c.left, h), f):
            for r in sp.two_cells(sp.Span(h, c.right), g):
                summands.append((h, l, r))
    if lhs != len(summands):
        return False, {"c": c, "f": f, "g": g, "lhs": lhs, "rhs": len(summands)}
    seen = set()
    for h, l, r in summands:
        cell = sp.recompose(sp.SpanFactorization(sp.GenericWitnessSpan(c, h), l, r))
        back = sp.factor_2cell(cell, f, g)
        if (back.witness.h, back.left_mor, back.right_mor) != (h, l, r):
            return False, {"reason": "factor after recompose", "c": c, "h": h}
        seen.add(cell)
    cells = sp.two_cells(c, fg)
    for cell in cells:
        if sp.recompose(sp.factor_2cell(cell, f, g)) != cell:
            return False, {"reason": "recompose after factor", "cell": cell}
    if seen != set(cells):
        return False, {"reason": "images differ", "c": c}
    return True, None


def check_hom_composite(exhaustive_size: int = 2, sampled_size: int = 3, samples: int = 2000, seed: int = 0) -> list[Check]:
    """Exhaustive below ``exhaustive_size``; seeded instances at ``sampled_size``."""
    out = []
    chk = Check("hom into a composite is a sum over middle legs (exhaustive)", "hom into composite bijection")
    with timed(chk):
        objs = range(exhaustive_size + 1)
        for X, Y, Z in itertools.product(objs, repeat=3):
            fs_ = sp.spans(X, Y, exhaustive_size)
            gs_ = sp.spans(Y, Z, exhaustive_size)
            for c in sp.spans(X, Z, exhaustive_size):
                for f in fs_:
                    for g in gs_:
                        chk.record(*hom_composite_instance(c, f, g))
        chk.bound = {"max_size": exhaustive_size}
    out.append(chk)
    if sampled_size > exhaustive_size and samples:
        chk = Check("hom into a composite is a sum over middle legs (sampled)", "hom into composite bijection")
        rng = random.Random(seed)
        with timed(chk):
            n = sampled_size
            for _ in range(samples):
                X, Y, Z = (rng.randint(0, n) for _ in range(3))
                c, f, g = _random_span(X, Z, n, rng), _random_span(X, Y, n, rng), _random_span(Y, Z, n, rng)
                chk.record(*hom_composite_instance(c, f, g))
            chk.bound = {"max_size": n, "samples": samples, "seed": seed}
            chk.note = "seeded sample; exhaustive coverage is the companion check"
        out.append(chk)
    return out


def span_iso_classes(x: int, z: int, max_apex: int) -> list[tuple]:
    """Spans up to apex isomorphism: sorted multisets of leg pairs."""
    pairs = list(itertools.product(range(x), range(z)))
    out = [()]
    if pairs:
        for k in range(1, max_apex + 1):
            out.extend(itertools.combinations_with_replacement(pairs, k))
    return out


def _from_pairs(ms: tuple, x: int, z: int) -> sp.Span:
    n = len(ms)
    return sp.Span(FinFunction(n, x, tuple(a for a, _ in ms)), FinFunction(n, z, tuple(b for _, b in ms)))


def _relabel_pairs(ms: tuple, px: tuple, pz: tuple) -> tuple:
    return tuple(sorted((px[a], pz[b]) for a, b in ms))


def _pair_orbit_reps(X: int, Y: int, Z: int, n: int) -> list[tuple]:
    """One ``(f, g)`` per orbit under relabelling ``X``, ``Y`` and ``Z``."""
    seen, reps = set(), []
    perms = [list(itertools.permutations(range(k))) for k in (X, Y, Z)]
    for f in span_iso_classes(X, Y, n):
        for g in span_iso_classes(Y, Z, n):
            if (f, g) in seen:
                continue
            reps.append((f, g))
            for px, py, pz in itertools.product(*perms):
                seen.add((_relabel_pairs(f, px, py), _relabel_pairs(g, py, pz)))
    return reps


def check_hom_composite_up_to_iso(max_size: int = 3) -> Check:
    """Every instance at ``max_size`` up to isomorphism.

    Both sides transport along bijections of apexes and of ``X, Y, Z``, so one
    ``(f, g)`` per orbit with every ``c`` up to apex isomorphism covers all
    labelled instances.
    """
    chk = Check("hom into a composite is a sum over middle legs (all instances up to isomorphism)", "hom into composite bijection")
    with timed(chk):
        objs = range(max_size + 1)
        for X, Y, Z in itertools.product(objs, repeat=3):
            cs = [_from_pairs(c, X, Z) for c in span_iso_classes(X, Z, max_size)]
            for f, g in _pair_orbit_reps(X, Y, Z, max_size):
                fa, ga = _from_pairs(f, X, Y), _from_pairs(g, Y, Z)
                for c in cs:
                    chk.record(*hom_composite_instance(c, fa, ga))
        chk.bound = {"max_size": max_size}
        chk.note = "orbit representatives under relabelling apexes and objects"
    return chk


def _random_span(X: int, Z: int, max_apex: int, rng: random.Random) -> sp.Span:
    n = rng.randint(0, max_apex) if X and Z else 0
    return sp.Span(
        FinFunction(n, X, tuple(rng.randrange(X) for _ in range(n))),
        FinFunction(n, Z, tuple(rng.randrange(Z) for _ in range(n))),
    )


# ---------------------------------------------------------------------------
# span: sub-terminality and augmentations


def check_subterminal(max_size: int = 3) -> Check:
    """At most one 2-cell into ``1_X``; exactly one iff both legs agree, and then it is ``epsilon``."""
    chk = Check("identity span is sub-terminal", "sub-terminality of units")
    with timed(chk):
        for X in range(max_size + 1):
            one = sp.identity_span(X)
            for a in sp.spans(X, X, max_size):
                raw = _count_cells_raw(a, one)
                cells = sp.two_cells(a, one)
                ok = raw == len(cells) and raw <= 1 and (raw == 1) == (a.left == a.right)
                if ok and raw == 1:
                    ok = cells[0] == sp.augmentation_2cell(a.left)
                chk.record(ok, {"span": a, "count": raw})
        chk.bound = {"max_size": max_size}
    return chk


# ---------------------------------------------------------------------------
# span: unitor components and pastings of generics


def _iso_translates(g: Gen) -> Iterator[Gen]:
    for p1 in fs.enumerate_bijections(g.l.apex):
        i1 = relabel(g.l, p1)
        for p2 in fs.enumerate_bijections(g.r.apex):
            i2 = relabel(g.r, p2)
            yield Gen(sp.vcomp(g.cell, sp.hcomp(i1, i2)), g.c, i1.dst, i2.dst)


def check_induced_unitor(max_size: int = 2) -> Check:
    """Factoring a unitor through any generic that fills it leaves an invertible component."""
    chk = Check("induced unitor component is invertible", "induced unitor")
    B = sp.SpanBicat(max_size, max_size)
    cls = B.coherent_class()
    with timed(chk):
        for X, Z in itertools.product(B.objects(), repeat=2):
            for a in B.hom(X, Z):
                for unitor, one, side in (
                    (sp.canonical_left_unitor(a), sp.identity_span(X), "left"),
                    (sp.canonical_right_unitor(a), sp.identity_span(Z), "right"),
                ):
                    l, r = (one, a) if side == "left" else (a, one)
                    hits = 0
                    for g0 in cls.generics(a):
                        for g in _iso_translates(g0):
                            got = B.fill(g, unitor, l, r)
                            if got is None:
                                continue
                            hits += 1
                            comp = got[1] if side == "left" else got[0]
                            chk.record(comp.map.is_bijective(), {"span": a, "side": side, "generic": g})
                    chk.record(hits > 0, {"span": a, "side": side, "reason": "no generic fills the unitor"})
        chk.bound = {"max_size": max_size}
    return chk


def pasting(d1: Gen, d2: Gen) -> sp.SpanMor:
    """``d1`` then ``d2`` whiskered by the right factor of ``d1``: ``c -> (l1;l2);r``."""
    return sp.vcomp(d1.cell, sp.hcomp(d2.cell, sp.id2(d1.r)))


def _probe_targets(c: sp.Span, Y1: int, Y2: int):
    for h1 in fs.iter_functions(c.apex, Y1):
        for h2 in fs.iter_functions(c.apex, Y2):
            yield sp.Span(c.left, h1), sp.Span(h1, h2), sp.Span(h2, c.right)


def _triple_composite(tg):
    return sp.compose_spans(sp.compose_spans(tg[0], tg[1]), tg[2])


def _triple_cells(src, dst):
    return [
        (k1, k2, k3, sp.hcomp(sp.hcomp(k1, k2), k3))
        for k1 in sp.two_cells(src[0], dst[0])
        for k2 in sp.two_cells(src[1], dst[1])
        for k3 in sp.two_cells(src[2], dst[2])
    ]


def triple_filler_property(omega: sp.SpanMor, factors, pool) -> tuple[bool, object]:
    """Unique fillers for every commuting square ``omega;theta == gamma;phi`` over ``pool``.

    ``gamma: c -> F``, ``phi: F -> M`` and ``theta: factors -> M`` are triples of
    2-cells with ``F`` and ``M`` ranging over ``pool``.
    """
    c = omega.src
    pool = list(dict.fromkeys(tuple(t) for t in pool))
    for M in pool:
        thetas = {}
        for *th, cell in _triple_cells(factors, M):
            thetas.setdefault(sp.vcomp(omega, cell), []).append(tuple(th))
        if not thetas:
            continue
        for F in pool:
            gammas = sp.two_cells(c, _triple_composite(F))
            if not gammas:
                continue
            phis = _triple_cells(F, M)
            ks = _triple_cells(factors, F)
            for gamma in gammas:
                fillers = [(k1, k2, k3) for k1, k2, k3, cell in ks if sp.vcomp(omega, cell) == gamma]
                for *ph, cell in phis:
                    for th in thetas.get(sp.vcomp(gamma, cell), ()):
                        n = sum(
                            1 for k in fillers if all(sp.vcomp(k[i], ph[i]) == th[i] for i in range(3))
                        )
                        if n != 1:
                            return False, {"omega": omega, "F": F, "M": M, "gamma": gamma, "fillers": n}
    return True, None


def _random_pool(factors, max_size: int, rng: random.Random, n: int) -> list:
    pool = [tuple(factors)]
    for _ in range(n):
        base = rng.choice(pool)
        ks = [random_cell_out(a, max_size, rng) for a in base]
        if all(k is not None for k in ks):
            pool.append(tuple(k.dst for k in ks))
    return pool


def check_generic_pasting(max_size: int = 2, seed: int = 0, random_targets: int = 3, converse_size: int = 1) -> list[Check]:
    """Pastings of class generics satisfy the filler property for triple composites, and conversely."""
    rng = random.Random(seed)
    fwd = Check("pasting of generics is generic", "pasting of generics")
    with timed(fwd):
        for d1 in span_generics(max_size, max_size):
            T = d1.c.apex
            for Y1 in range(max_size + 1):
                for h1 in fs.iter_functions(T, Y1):
                    d2 = sp.generic(d1.l.left, h1, d1.l.right)
                    omega = pasting(d1, d2)
                    factors = (d2.l, d2.r, d1.r)
                    pool = _random_pool(factors, max_size, rng, random_targets)
                    fwd.record(*triple_filler_property(omega, factors, pool))
        fwd.bound = {"max_size": max_size, "random_targets": random_targets, "seed": seed}
    conv = Check("2-cells into triple composites with the filler property are pastings", "pasting of generics")
    with timed(conv):
        n = converse_size
        B = sp.SpanBicat(n, n)
        cls = B.coherent_class()
        for X, Y1, Y2, Z in itertools.product(B.objects(), repeat=4):
            for c in sp.spans(X, Z, n):
                probes = list(_probe_targets(c, Y1, Y2))
                for l1 in sp.spans(X, Y1, n):
                    for l2 in sp.spans(Y1, Y2, n):
                        l12 = sp.compose_spans(l1, l2)
                        for r in sp.spans(Y2, Z, n):
                            factors = (l1, l2, r)
                            for omega in sp.two_cells(c, sp.compose_spans(l12, r)):
                                pool = [factors] + probes + _random_pool(factors, n, rng, random_targets)[1:]
                                prop, _ = triple_filler_property(omega, factors, pool)
                                d1, g12, g3 = cls.factor(omega, l12, r)
                                d2, g1, g2 = cls.factor(g12, l1, l2)
                                rebuilt = sp.vcomp(pasting(d1, d2), sp.hcomp(sp.hcomp(g1, g2), g3))
                                isos = all(k.map.is_bijective() for k in (g1, g2, g3))
                                conv.record(rebuilt == omega and prop == isos, {"omega": omega, "property": prop, "isos": isos})
        conv.bound = {"max_size": n}
    return [fwd, conv]


def check_span_roundtrip(max_size: int = 2) -> Check:
    """Factor-then-recompose is the identity on every 2-cell into a composite."""
    chk = Check("factor then recompose is the identity", "hom into composite bijection")
    B = sp.SpanBicat(max_size, max_size)
    with timed(chk):
        for X, Y, Z in itertools.product(B.objects(), repeat=3):
            for a in B.hom(X, Y):
                for b in B.hom(Y, Z):
                    ab = sp.compose_spans(a, b)
                    for c in B.hom(X, Z):
                        for cell in sp.two_cells(c, ab):
                            chk.record(sp.recompose(sp.factor_2cell(cell, a, b)) == cell, {"cell": cell})
    return chk


def check_generic_projections(max_size: int = 3) -> Check:
    """Both projections after ``delta`` are identities."""
    chk = Check("projections of delta are identities", "definition of delta_{s,h,t}")
    with timed(chk):
        for g in span_generics(max_size, max_size):
            pb = g.cell.dst.pb
            ok = fs.compose(g.cell.map, pb.proj1) == fs.identity(g.c.apex) == fs.compose(g.cell.map, pb.proj2)
            chk.record(ok, {"generic": g})
    return chk


# ---------------------------------------------------------------------------
# polynomials


def check_poly_composition_oracle(max_obj: int = 2, max_size: int = 2, max_input: int = 2) -> Check:
    """Extension of ``P;Q`` equals extension of ``Q`` after that of ``P``, per fiber.

    Three routes agree: the composite's extension, the iterated extensions,
    and the closed-form count from fiber sizes alone.
    """
    chk = Check("extension of composite equals composite of extensions", "polynomial composition")
    with timed(chk):
        objs = range(max_obj + 1)
        for X, Y, Z in itertools.product(objs, repeat=3):
            inputs = [A for n in range(max_input + 1) for A in fs.iter_functions(n, X)]
            for P in pl.polys(X, Y, max_size, max_size):
                ext_P = [pl.extension_eval(P, A) for A in inputs]
                for Q in pl.polys(Y, Z, max_size, max_size):
                    PQ = pl.compose_polys(P, Q)
                    for A, EA in zip(inputs, ext_P):
                        direct = pl.fiber_counts(pl.extension_eval(PQ, A))
                        iterated = pl.fiber_counts(pl.extension_eval(Q, EA))
                        closed = pl.extension_counts_bruteforce(Q, pl.extension_counts_bruteforce(P, pl.fiber_counts(A)))
                        chk.record(direct == iterated == closed, {"P": P, "Q": Q, "A": A, "counts": [direct, iterated, closed]})
        chk.bound = {"max_obj": max_obj, "max_size": max_size, "max_input": max_input}
    return chk


def worked_composite_example() -> tuple[int, int]:
    """Sizes at ``|X| = 2`` of the extensions of ``P;Q`` and ``Q;P`` for ``P = X + X^2``, ``Q = X^2``."""
    P = pl.poly([0, 0, 0], [0, 1, 1], [0, 0], 1, 2, 1)
    Q = pl.poly([0, 0], [0, 0], [0], 1, 1, 1)
    A = fs.constant(2, 1, 0)
    return pl.extension_eval(pl.compose_polys(P, Q), A).dom, pl.extension_eval(pl.compose_polys(Q, P), A).dom


def check_worked_composite() -> Check:
    chk = Check("X+X^2 composed with X^2 at |X|=2", "polynomial composition")
    with timed(chk):
        pq, qp = worked_composite_example()
        # Q;P substitutes X^2 into X + X^2: 4 + 16; P;Q squares X + X^2: 6 * 6
        chk.record(qp == 20 and pq == 36, {"Q;P": qp, "P;Q": pq})
        chk.note = f"X^2 + X^4 has {qp} elements"
    return chk


def _shapes(P: pl.Polynomial) -> set:
    fib = P.p.fibers()
    return {(P.t.table[b], tuple(sorted(P.s.table[e] for e in fib[b]))) for b in range(P.B)}


def tracked_cells(max_obj: int, max_size: int) -> Iterator[tuple]:
    """``(c, P, Q, phi)`` for every cartesian ``phi: c -> P;Q`` below the bounds."""
    objs = range(max_obj + 1)
    for X, Z in itertools.product(objs, repeat=2):
        cs = [(c, _shapes(c)) for c in pl.polys(X, Z, max_size, max_size)]
        for Y in objs:
            for P in pl.polys(X, Y, max_size, max_size):
                for Q in pl.polys(Y, Z, max_size, max_size):
                    PQ = pl.compose_polys(P, Q)
                    sh = _shapes(PQ)
                    for c, csh in cs:
                        # a cartesian cell preserves fiber shapes, so this skips only empty homs
                        if not csh <= sh:
                            continue
                        for phi in pl.two_cells(c, PQ):
                            yield c, P, Q, phi


def check_weber_roundtrip(max_obj: int = 2, max_size: int = 2) -> Check:
    chk = Check("Weber factor then recompose is the identity", "Weber septuple factorization")
    with timed(chk):
        for c, P, Q, phi in tracked_cells(max_obj, max_size):
            st, l, r = pl.factor_cartesian_2cell(phi, P, Q)
            ok = pl.septuple_is_valid(c, P, Q, st) and pl.recompose(c, st, l, r) == phi
            chk.record(ok, {"phi": phi})
        chk.bound = {"max_obj": max_obj, "max_size": max_size}
    return chk


def iter_septuples(c: pl.Polynomial, P: pl.Polynomial, Q: pl.Polynomial) -> Iterator[pl.Septuple]:
    """Every labelled valid septuple for ``c -> P;Q``.

    ``T`` is a pullback of ``z`` against ``Q.p``, so ``z`` fixes its size.  The
    loops only enforce the commuting triangles and squares pointwise; the
    pullback conditions are left to ``septuple_is_valid``.
    """
    qfib, pfib = Q.p.fibers(), P.p.fibers()
    for z in fs.iter_functions(c.B, Q.B):
        if fs.compose(z, Q.t) != c.t:
            continue
        n = sum(len(qfib[m]) for m in z.table)
        for p1, p2 in pl.factorizations(c.p, n):
            if p1.cod != n:
                continue
            for yt in itertools.product(*(qfib[z.table[p2.table[k]]] for k in range(n))):
                y = FinFunction(n, Q.E, yt)
                h = fs.compose(y, Q.s)
                xs = [[b for b in range(P.B) if P.t.table[b] == h.table[k]] for k in range(n)]
                for xt in itertools.product(*xs):
                    x = FinFunction(n, P.B, xt)
                    ws = [[e2 for e2 in pfib[xt[p1.table[e]]] if P.s.table[e2] == c.s.table[e]] for e in range(c.E)]
                    for wt in itertools.product(*ws):
                        st = pl.Septuple(p1, h, p2, FinFunction(c.E, P.E, wt), x, y, z)
                        if pl.septuple_is_valid(c, P, Q, st):
                            yield st


def check_septuple_equivalence(max_obj: int = 1, max_size: int = 2) -> list[Check]:
    """Equivalence relation axioms on every enumerated septuple; classes match the hom-set."""
    rel = Check("septuple equivalence is an equivalence relation", "septuple equivalence")
    cnt = Check("septuple classes count cartesian cells into a composite", "cartesian cells into composites")
    with timed(rel), timed(cnt):
        objs = range(max_obj + 1)
        for X, Y, Z in itertools.product(objs, repeat=3):
            for P in pl.polys(X, Y, max_size, max_size):
                for Q in pl.polys(Y, Z, max_size, max_size):
                    PQ = pl.compose_polys(P, Q)
                    for c in pl.polys(X, Z, max_size, max_size):
                        sts = list(iter_septuples(c, P, Q))
                        _relation_axioms(rel, sts)
                        classes = _classes(sts)
                        cells = pl.two_cells(c, PQ)
                        ok = len(classes) == len(cells)
                        if ok:
                            # each class contains the septuple read off its recomposite
                            for cls_ in classes:
                                a = cls_[0]
                                phi = pl.recompose(c, a, *_components(c, P, Q, a))
                                st, _, _ = pl.factor_cartesian_2cell(phi, P, Q)
                                ok = ok and pl.septuples_equivalent(a, st) is not None
                        cnt.record(ok, {"c": c, "P": P, "Q": Q, "classes": len(classes), "cells": len(cells)})
                        cnt.record(pl.count_septuple_classes(c, P, Q) == len(cells), {"c": c, "P": P, "Q": Q})
        rel.bound = cnt.bound = {"max_obj": max_obj, "max_size": max_size}
    return [rel, cnt]


def _components(c, P, Q, st):
    left = pl.CartPolyMor(pl.Polynomial(c.s, st.p1, st.h), P, st.w, st.x)
    right = pl.CartPolyMor(pl.Polynomial(st.h, st.p2, c.t), Q, st.y, st.z)
    return left, right


def _relation_axioms(chk: Check, sts: list) -> None:
    """Reflexivity, transport, symmetry over all pairs, transitivity over related triples."""
    for a in sts:
        e = pl.septuples_equivalent(a, a)
        chk.record(e is not None and e.alpha == fs.identity(a.T), {"reflexive": a})
        for perm in fs.enumerate_bijections(a.T):
            e = pl.septuples_equivalent(a, pl.transport(a, perm))
            chk.record(e is not None and e.alpha == perm, {"transport": a, "perm": perm})
    related: dict = {i: {} for i in range(len(sts))}
    # septuples with different (w, z) are never related, so pairs are taken per bucket
    buckets: dict = {}
    for i, a in enumerate(sts):
        buckets.setdefault((a.w, a.z), []).append(i)
    for idx in buckets.values():
        for i in idx:
            for k in idx:
                ab = pl.septuples_equivalent(sts[i], sts[k])
                if ab is not None:
                    related[i][k] = ab.alpha
    for i in related:
        for k, alpha in related[i].items():
            back = related[k].get(i)
            chk.record(back is not None and back == alpha.inverse(), {"symmetric": (sts[i], sts[k])})
    for k in related:
        for i in related:
            ab = related[i].get(k)
            if ab is None:
                continue
            for m, bc in related[k].items():
                ac = related[i].get(m)
                chk.record(ac is not None and ac == fs.compose(ab, bc), {"transitive": (sts[i], sts[k], sts[m])})


def _classes(sts: list) -> list[list]:
    classes: list[list] = []
    for st in sts:
        for cl in classes:
            if pl.septuples_equivalent(cl[0], st) is not None:
                cl.append(st)
                break
        else:
            classes.append([st])
    return classes


def _raw_pullback(f: FinFunction, p: FinFunction, q: FinFunction, g: FinFunction) -> bool:
    """Fiberwise test: ``f`` restricts to bijections ``p^-1(b) -> q^-1(g(b))``."""
    pf, qf = p.fibers(), q.fibers()
    for b in range(p.cod):
        img = sorted(f.table[e] for e in pf[b])
        if img != sorted(qf[g.table[b]]):
            return False
    return True


def check_cartesian_rejection(max_obj: int = 1, max_size: int = 2) -> Check:
    """``CartPolyMor`` accepts a commuting pair of maps iff the middle square is a pullback."""
    chk = Check("non-pullback middle squares are rejected", "cartesian 2-cells")
    with timed(chk):
        rejected = 0
        for X, Z in itertools.product(range(max_obj + 1), repeat=2):
            ps = pl.polys(X, Z, max_size, max_size)
            for a in ps:
                for b in ps:
                    for f in fs.iter_functions(a.E, b.E):
                        if fs.compose(f, b.s) != a.s:
                            continue
                        for g in fs.iter_functions(a.B, b.B):
                            if fs.compose(g, b.t) != a.t or fs.compose(a.p, g) != fs.compose(f, b.p):
                                continue
                            expected = _raw_pullback(f, a.p, b.p, g)
                            try:
                                pl.CartPolyMor(a, b, f, g)
                                got = True
                            except pl.NotCartesian:
                                got = False
                                rejected += 1
                            chk.record(got == expected, {"src": a, "dst": b, "f": f, "g": g})
        chk.note = f"{rejected} commuting non-pullback squares rejected"
        chk.bound = {"max_obj": max_obj, "max_size": max_size}
    return chk


def poly_squares(B: pl.PolyBicat, g: Gen, rng: random.Random, pool: list) -> Iterator[tuple]:
    """Seeded commuting squares through ``g`` built from cells out of its factors."""
    def out_of(a):
        cands = [cell for f in pool if f.src == a.src and f.tgt == a.tgt for cell in pl.two_cells(a, f)]
        return rng.choice(cands) if cands else None

    g1, g2 = out_of(g.l), out_of(g.r)
    if g1 is None or g2 is None:
        return
    p1, p2 = out_of(g1.dst), out_of(g2.dst)
    if p1 is None or p2 is None:
        return
    yield _square(B, g, g1, g2, p1, p2)


def check_poly_filler_uniqueness(samples: int = 50, max_obj: int = 1, max_size: int = 2, seed: int = 0) -> Check:
    """Exactly one filler for sampled squares through rigid ``delta`` cells."""
    chk = Check("poly generic filler uniqueness", "genericity of delta_{s,p1,h,p2,t}")
    B = pl.PolyBicat(max_obj, max_size)
    rng = random.Random(seed)
    gens = [g for g in B.candidate_generics()]
    pool = [a for X, Y in itertools.product(B.objects(), repeat=2) for a in B.hom(X, Y)]
    with timed(chk):
        tries = 0
        while chk.instances < samples and tries < samples * 50:
            tries += 1
            g = rng.choice(gens)
            for sq in poly_squares(B, g, rng, pool):
                chk.record(*check_filler_square(B, g, sq))
        chk.incomplete = chk.instances < samples
        chk.bound = {"samples": samples, "max_obj": max_obj, "max_size": max_size, "seed": seed}
    return chk


def nonrigid_example():
    """``E`` empty, ``T = 2`` over a single base point: the swap of ``T`` fixes everything."""
    s = fs.from_empty(1)
    p1 = FinFunction(0, 2, ())
    h = fs.constant(2, 1, 0)
    p2 = fs.constant(2, 1, 0)
    return pl.generic(s, p1, h, p2, fs.identity(1))


def check_nonrigid_not_generic() -> Check:
    """A triple with a nontrivial automorphism gives a cell with two fillers for itself."""
    chk = Check("delta over a non-rigid triple is not generic", "rigidity of generic triples")
    with timed(chk):
        g = nonrigid_example()
        B = pl.PolyBicat(1, 2)
        n = len(filler_candidates(B, g, g.cell, g.l, g.r))
        chk.record(n == 2 and not B.is_generic(g), {"fillers": n})
        chk.note = f"{n} fillers for the identity square"
    return chk


# ---------------------------------------------------------------------------
# negative controls for coherent classes


def check_drop_each_generator(cls, generics=None, augmentations=None, name: str = "") -> Check:
    """Removing any single generic or augmentation must make validation fail."""
    from .bicategory import RestrictedClass, validate_coherent_class

    chk = Check(f"negative control: removing any generator is rejected{name}", "negative control")
    gens = list(cls.all_generics()) if generics is None else list(generics)
    augs = list(cls.all_augmentations()) if augmentations is None else list(augmentations)
    with timed(chk):
        for g in gens:
            failed = [c.name for c in validate_coherent_class(RestrictedClass(cls, drop_generics=[g]), stop_at_first=True) if not c.passed]
            chk.record(bool(failed), {"dropped": g})
        for e in augs:
            failed = [c.name for c in validate_coherent_class(RestrictedClass(cls, drop_augmentations=[e]), stop_at_first=True) if not c.passed]
            chk.record(bool(failed), {"dropped": e})
        chk.bound = {"generics": len(gens), "augmentations": len(augs)}
    return chk
