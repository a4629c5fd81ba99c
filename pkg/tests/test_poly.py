import pytest
from hypothesis import given, strategies as st

from genbicat import finset as fs
from genbicat import poly as pl
from genbicat import suites

from strategies import functions


@st.composite
def polys(draw, x=None, z=None, max_size=2):
    x = draw(st.integers(1, max_size)) if x is None else x
    z = draw(st.integers(1, max_size)) if z is None else z
    b = draw(st.integers(0, max_size))
    e = draw(st.integers(0, max_size)) if b else 0
    return pl.Polynomial(draw(functions(e, x)), draw(functions(e, b)), draw(functions(b, z)))


def _ext_count(P, counts):
    # per output fiber: sum over b of prod over e in p^-1(b) of counts[s(e)]
    out = [0] * P.tgt
    for b in range(P.B):
        term = 1
        for e in P.p.fiber(b):
            term *= counts[P.s(e)]
        out[P.t(b)] += term
    return tuple(out)


@given(st.data())
def test_composite_extension_matches_closed_form(data):
    x, y, z = (data.draw(st.integers(1, 2)) for _ in range(3))
    P, Q = data.draw(polys(x, y)), data.draw(polys(y, z))
    counts = tuple(data.draw(st.integers(0, 2)) for _ in range(x))
    PQ = pl.compose_polys(P, Q)
    assert _ext_count(PQ, counts) == _ext_count(Q, _ext_count(P, counts))
    assert pl.extension_counts_bruteforce(PQ, counts) == _ext_count(PQ, counts)


def test_worked_example_order():
    # P;Q means P first: (X + X^2)^2 has 36 elements, X^2 + X^4 has 20
    pq, qp = suites.worked_composite_example()
    assert (pq, qp) == (36, 20)


@given(st.data())
def test_two_cells_agree_with_bruteforce(data):
    P, Q = data.draw(polys(1, 1)), data.draw(polys(1, 1))
    assert set(pl.two_cells(P, Q)) == set(pl.two_cells_bruteforce(P, Q))


@given(st.data())
def test_weber_factor_recompose(data):
    x, y, z = (data.draw(st.integers(1, 2)) for _ in range(3))
    P, Q = data.draw(polys(x, y)), data.draw(polys(y, z))
    PQ = pl.compose_polys(P, Q)
    c = data.draw(polys(x, z))
    for phi in pl.two_cells(c, PQ)[:20]:
        sept, left, right = pl.factor_cartesian_2cell(phi, P, Q)
        assert pl.septuple_is_valid(c, P, Q, sept)
        assert pl.recompose(c, sept, left, right) == phi


def test_transport_gives_equivalent_septuples():
    P = pl.poly([0, 0], [0, 0], [0], 1, 1, 1)
    Q = pl.poly([0, 0], [0, 1], [0, 0], 1, 2, 1)
    PQ = pl.compose_polys(P, Q)
    found = 0
    for c in pl.polys(1, 1, 4, 2):
        for phi in pl.two_cells(c, PQ):
            sept, _, _ = pl.factor_cartesian_2cell(phi, P, Q)
            for perm in fs.enumerate_bijections(sept.T):
                other = pl.transport(sept, perm)
                assert pl.septuple_is_valid(c, P, Q, other)
                eq = pl.septuples_equivalent(sept, other)
                assert eq is not None and eq.alpha == perm
                found += 1
    assert found


def test_septuple_class_count_is_cell_count():
    P = pl.poly([0], [0], [0], 1, 1, 1)
    Q = pl.poly([0, 0], [0, 0], [0], 1, 1, 1)
    PQ = pl.compose_polys(P, Q)
    for c in pl.polys(1, 1, 2, 2):
        assert pl.count_septuple_classes(c, P, Q) == len(pl.two_cells(c, PQ))


def test_cartesian_requires_pullback():
    # X^2 -> X: commutes (everything to a point) but is not a pullback
    P = pl.poly([0, 0], [0, 0], [0], 1, 1, 1)
    Q = pl.poly([0], [0], [0], 1, 1, 1)
    with pytest.raises(ValueError):
        pl.CartPolyMor(P, Q, fs.to_terminal(2), fs.identity(1))


def test_nonrigid_generic_fails_uniqueness():
    chk = suites.check_nonrigid_not_generic()
    assert chk.passed, chk.line()
    T = 2
    assert not pl.is_rigid((fs.FinFunction(0, T, ()), fs.constant(T, 1, 0), fs.constant(T, 1, 0)))


def test_poly_suites_small():
    for chk in [
        suites.check_poly_composition_oracle(1, 2, 2),
        suites.check_weber_roundtrip(1, 1),
        *suites.check_septuple_equivalence(max_obj=1, max_size=1),
        suites.check_cartesian_rejection(1, 1),
        suites.check_poly_filler_uniqueness(samples=5),
        suites.check_worked_composite(),
    ]:
        assert chk.passed, chk.line()
        assert chk.instances > 0, chk.line()
