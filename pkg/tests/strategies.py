"""Hypothesis strategies for small finite data."""

from hypothesis import strategies as st

from genbicat.finset import FinFunction
from genbicat.span import Span


def functions(dom, cod):
    if dom and not cod:
        return st.nothing()
    return st.tuples(*[st.integers(0, cod - 1) for _ in range(dom)]).map(lambda t: FinFunction(dom, cod, t))


@st.composite
def function_any(draw, max_size=3):
    dom = draw(st.integers(0, max_size))
    cod = draw(st.integers(1 if dom else 0, max_size))
    return draw(functions(dom, cod))


@st.composite
def composable(draw, n=2, max_size=3):
    sizes = [draw(st.integers(1, max_size))]
    sizes.insert(0, draw(st.integers(0, max_size)))
    for _ in range(n - 1):
        sizes.append(draw(st.integers(1, max_size)))
    return [draw(functions(a, b)) for a, b in zip(sizes, sizes[1:])]


@st.composite
def spans(draw, x=None, z=None, max_size=2):
    x = draw(st.integers(0, max_size)) if x is None else x
    z = draw(st.integers(0, max_size)) if z is None else z
    n = draw(st.integers(0, max_size)) if x and z else 0
    return Span(draw(functions(n, x)), draw(functions(n, z)))


@st.composite
def cospans(draw, max_size=3):
    c = draw(st.integers(1, max_size))
    return draw(functions(draw(st.integers(0, max_size)), c)), draw(functions(draw(st.integers(0, max_size)), c))
