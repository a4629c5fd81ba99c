import itertools

import pytest
from hypothesis import given, strategies as st

from genbicat import finset as fs
from genbicat.finset import FinFunction

from strategies import composable, cospans, function_any


def test_rejects_out_of_range_table():
    with pytest.raises(ValueError):
        FinFunction(2, 2, (0, 2))


def test_empty_function_into_anything():
    e = fs.from_empty(3)
    assert e.dom == 0 and e.cod == 3 and e.is_injective()


@given(composable(3))
def test_composition_associative(fgh):
    f, g, h = fgh
    assert f.then(g).then(h) == f.then(g.then(h))


@given(function_any())
def test_identities_are_units(f):
    assert fs.identity(f.dom).then(f) == f == f.then(fs.identity(f.cod))


@given(function_any())
def test_bijection_inverse(f):
    if f.is_bijective():
        assert f.then(f.inverse()) == fs.identity(f.dom)
    else:
        with pytest.raises(ValueError):
            f.inverse()


@given(cospans())
def test_pullback_is_exactly_the_commuting_pairs(fg):
    f, g = fg
    pb = fs.pullback(f, g)
    brute = [(i, j) for i in range(f.dom) for j in range(g.dom) if f(i) == g(j)]
    assert list(pb.pairs) == brute
    assert pb.proj1.then(f) == pb.proj2.then(g)


@given(cospans(), st.integers(0, 3), st.data())
def test_pullback_universal_property(fg, n, data):
    f, g = fg
    pb = fs.pullback(f, g)
    c1 = data.draw(st.tuples(*[st.integers(0, f.dom - 1)] * n)) if f.dom else None
    if c1 is None and n:
        return
    c1 = FinFunction(n, f.dom, c1 or ())
    fibers = g.fibers()
    choices = [fibers[f(a)] for a in c1.table]
    cones = list(itertools.product(*choices))
    for t in cones:
        c2 = FinFunction(n, g.dom, t)
        u = fs.mediate(pb, c1, c2)
        assert u.then(pb.proj1) == c1 and u.then(pb.proj2) == c2
        others = [v for v in fs.iter_functions(n, pb.apex) if v.then(pb.proj1) == c1 and v.then(pb.proj2) == c2]
        assert others == [u]


def test_mediate_rejects_non_commuting_cone():
    f, g = FinFunction(1, 2, (0,)), FinFunction(1, 2, (1,))
    pb = fs.pullback(f, g)
    with pytest.raises(fs.InvalidCone):
        fs.mediate(pb, fs.identity(1), fs.identity(1))


def test_pullback_boundary_mismatch():
    with pytest.raises(fs.BoundaryMismatch):
        fs.pullback(fs.identity(1), fs.identity(2))


@given(function_any(), function_any())
def test_dependent_product_counts(p, q):
    if q.cod != p.dom:
        return
    res = fs.dependent_product(p, q)
    qcount = [len(fb) for fb in q.fibers()]
    for b, fiber in enumerate(p.fibers()):
        expected = 1
        for e in fiber:
            expected *= qcount[e]
        assert len(res.fiber(b)) == expected


def test_dependent_product_adjunction_small():
    # maps X*_B p -> over q correspond to sections: |Hom_B(X, Pi_p q)| = |Hom_E(p^*X, q)|
    p = FinFunction(3, 2, (0, 0, 1))
    q = FinFunction(4, 3, (0, 1, 1, 2))
    pi = fs.dependent_product(p, q)
    for x in fs.iter_functions(2, 2):
        lhs = sum(1 for _ in fs.functions_over(x.table, pi))
        pb = fs.pullback(p, x)
        rhs = sum(1 for _ in fs.functions_over(pb.proj1.table, q))
        assert lhs == rhs


def test_enumeration_cap():
    with pytest.raises(fs.EnumerationTooLarge):
        fs.enumerate_functions(10, 10, cap=100)
    assert len(fs.enumerate_functions(2, 3)) == fs.count_functions(2, 3) == 9
    assert len(fs.enumerate_bijections(3)) == 6


def test_json_roundtrip():
    f = FinFunction(3, 2, (1, 0, 1))
    assert FinFunction.from_json(f.to_json()) == f
