from hypothesis import given, strategies as st

from genbicat import finset as fs
from genbicat import span as sp
from genbicat import suites
from genbicat.finset import FinFunction

from strategies import functions, spans


@st.composite
def composable_spans(draw, n=2, max_size=2):
    objs = [draw(st.integers(0, max_size)) for _ in range(n + 1)]
    return [draw(spans(a, b, max_size)) for a, b in zip(objs, objs[1:])]


@given(composable_spans())
def test_composite_apex_counts_middle_matches(ab):
    a, b = ab
    c = sp.compose_spans(a, b)
    expected = sum(len(a.right.fiber(y)) * len(b.left.fiber(y)) for y in range(a.tgt))
    assert c.apex == expected


@given(composable_spans(3))
def test_associator_is_invertible_and_typed(abc):
    a, b, c = abc
    al = sp.canonical_associator(a, b, c)
    assert al.map.is_bijective()
    assert al.src == sp.compose_spans(sp.compose_spans(a, b), c)
    assert al.dst == sp.compose_spans(a, sp.compose_spans(b, c))
    assert sp.vcomp(al, sp.inverse(al)) == sp.id2(al.src)


@given(spans())
def test_unitors_invertible(a):
    lu, ru = sp.canonical_left_unitor(a), sp.canonical_right_unitor(a)
    assert lu.map.is_bijective() and ru.map.is_bijective()
    assert lu.dst == sp.compose_spans(sp.identity_span(a.src), a)
    assert ru.dst == sp.compose_spans(a, sp.identity_span(a.tgt))


@given(st.data())
def test_two_cells_match_raw_enumeration(data):
    x, z = data.draw(st.integers(0, 2)), data.draw(st.integers(0, 2))
    a, b = data.draw(spans(x, z, 3)), data.draw(spans(x, z, 3))
    assert len(sp.two_cells(a, b)) == sp.count_two_cells(a, b) == suites._count_cells_raw(a, b)


@given(st.data())
def test_factor_then_recompose(data):
    x, y, z = (data.draw(st.integers(0, 2)) for _ in range(3))
    f, g = data.draw(spans(x, y)), data.draw(spans(y, z))
    fg = sp.compose_spans(f, g)
    c = data.draw(spans(x, z))
    for cell in sp.two_cells(c, fg):
        fac = sp.factor_2cell(cell, f, g)
        assert sp.recompose(fac) == cell


@given(st.data())
def test_delta_is_generic_and_fills_itself(data):
    x, y, z = (data.draw(st.integers(1, 2)) for _ in range(3))
    n = data.draw(st.integers(0, 2))
    s, h, t = data.draw(functions(n, x)), data.draw(functions(n, y)), data.draw(functions(n, z))
    g = sp.generic(s, h, t)
    assert sp.is_generic_cell(g.cell, g.l, g.r)
    g1, g2 = sp.fill(g, g.cell, g.l, g.r)
    assert g1 == sp.id2(g.l) and g2 == sp.id2(g.r)


def test_non_generic_cell_detected():
    # 1 -> (1<-2->1);(1<-2->1): the diagonal does not hit a bijection on components
    c = sp.Span(fs.identity(1), fs.identity(1))
    f = sp.Span(fs.to_terminal(2), fs.to_terminal(2))
    fg = sp.compose_spans(f, f)
    cells = sp.two_cells(c, fg)
    assert len(cells) == 4
    assert not any(sp.is_generic_cell(m, f, f) for m in cells)


def test_augmentation_is_the_unique_cell_into_unit():
    h = FinFunction(3, 2, (0, 1, 1))
    eps = sp.augmentation_2cell(h)
    assert sp.two_cells(eps.src, sp.identity_span(2)) == [eps]
    bad = sp.Span(h, FinFunction(3, 2, (1, 1, 1)))
    assert sp.two_cells(bad, sp.identity_span(2)) == []


def test_suites_small_bounds():
    for chk in [
        suites.check_span_filler_uniqueness(max_size=1),
        *suites.check_hom_composite(exhaustive_size=1, sampled_size=2, samples=50),
        suites.check_subterminal(2),
        suites.check_induced_unitor(1),
        suites.check_span_roundtrip(1),
        suites.check_generic_projections(2),
    ]:
        assert chk.passed, chk.line()
        assert chk.instances > 0


def test_span_json_roundtrip():
    a = sp.Span(FinFunction(2, 1, (0, 0)), FinFunction(2, 2, (1, 0)))
    assert sp.Span.from_json(a.to_json()) == a
    m = sp.id2(a)
    assert sp.SpanMor.from_json(m.to_json()) == m


def test_orbit_reps_cover_every_labelled_pair():
    import itertools

    X = Y = Z = 2
    reps = suites._pair_orbit_reps(X, Y, Z, 2)
    covered = set()
    perms = [list(itertools.permutations(range(k))) for k in (X, Y, Z)]
    for f, g in reps:
        for px, py, pz in itertools.product(*perms):
            covered.add((suites._relabel_pairs(f, px, py), suites._relabel_pairs(g, py, pz)))
    everything = {(f, g) for f in suites.span_iso_classes(X, Y, 2) for g in suites.span_iso_classes(Y, Z, 2)}
    assert covered == everything
    assert len(reps) < len(everything)


def test_iso_classes_count_multisets():
    from math import comb

    # multisets of size k from 6 leg pairs
    assert len(suites.span_iso_classes(2, 3, 3)) == sum(comb(6 + k - 1, k) for k in range(4))
