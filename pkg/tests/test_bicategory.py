import pytest

from genbicat import finset as fs
from genbicat import poly as pl
from genbicat import span as sp
from genbicat import suites
from genbicat.bicategory import (
    RestrictedClass,
    check_bicategory_axioms,
    check_pentagon,
    check_triangle,
    filler_candidates,
    validate_coherent_class,
)
from genbicat.monoidal import CartesianBicat, SpeciesBicat, diagonal_generic, split_generic


@pytest.mark.parametrize("B", [sp.SpanBicat(1, 1), pl.PolyBicat(1, 1), CartesianBicat(2), SpeciesBicat(3)], ids=repr)
def test_axioms_small(B):
    for chk in check_bicategory_axioms(B, samples=100):
        assert chk.passed, chk.line()
        assert chk.instances > 0, chk.line()


class TwistedSpan(sp.SpanBicat):
    """Associator precomposed with a nontrivial automorphism where one exists."""

    def associator(self, a, b, c):
        al = super().associator(a, b, c)
        n = al.src.apex
        if n < 2:
            return al
        swap = fs.FinFunction(n, n, (1, 0) + tuple(range(2, n)))
        legs = list(zip(al.src.left.table, al.src.right.table))
        if legs[0] == legs[1]:
            return sp.SpanMor(al.src, al.dst, fs.compose(swap, al.map))
        return al


def test_pentagon_detects_bad_associator():
    B = TwistedSpan(1, 2)
    bad = [chk for chk in (check_pentagon(B), check_triangle(B)) if not chk.passed]
    assert bad


def test_span_class_validates_small():
    B = sp.SpanBicat(1, 1)
    checks = validate_coherent_class(B.coherent_class())
    assert all(c.passed for c in checks), [c.line() for c in checks if not c.passed]
    assert len(checks) >= 5


@pytest.mark.parametrize("B,gen", [(CartesianBicat(3), diagonal_generic(1)), (SpeciesBicat(3), split_generic(1, 1))])
def test_dropping_a_generator_is_reported(B, gen):
    cls = B.coherent_class()
    assert all(c.passed for c in validate_coherent_class(cls))
    restricted = RestrictedClass(cls, drop_generics=[gen])
    assert not all(c.passed for c in validate_coherent_class(restricted))
    empty = RestrictedClass(cls, no_augmentations=True)
    assert not all(c.passed for c in validate_coherent_class(empty))


def test_drop_each_generator_control_species():
    cls = SpeciesBicat(3).coherent_class()
    chk = suites.check_drop_each_generator(cls)
    assert chk.passed and chk.instances > 0, chk.line()


def test_filler_candidates_unique_for_generic():
    B = sp.SpanBicat(2, 2)
    g = sp.generic(fs.identity(2), fs.constant(2, 1, 0), fs.identity(2))
    assert len(filler_candidates(B, g, g.cell, g.l, g.r)) == 1
