import pytest

from genbicat import functors as fn
from genbicat import oplax as op
from genbicat import span as sp
from genbicat.monoidal import CartesianBicat, SpeciesBicat


@pytest.fixture(scope="module")
def A():
    return sp.SpanBicat(1, 2)


def _all_pass(checks):
    bad = [c.line() for c in checks if not c.passed]
    assert not bad, bad


@pytest.mark.parametrize("name", ["identity", "x2", "+1", "apex"])
def test_converted_laws_and_roundtrips(A, name):
    from genbicat.cli import functor_data

    cls = A.coherent_class()
    d, D0 = functor_data(name, A)
    _all_pass(op.check_oplax_laws(d))
    D = op.oplax_to_comonadic(d, cls, check=False)
    _all_pass(op.check_comonadic_laws(D))
    _all_pass([op.roundtrip_oplax(d, cls), op.roundtrip_comonadic(D)])
    if D0 is not None:
        _all_pass([op.compare_comonadic(D, D0)])


def test_axiom_c_enumeration_matches_bruteforce(A):
    cls = A.coherent_class()
    fast = set(map(repr, op.axiom_c_instances(cls)))
    slow = set(map(repr, op.axiom_c_instances_bruteforce(cls)))
    assert fast == slow and fast


@pytest.mark.parametrize("axiom", op.AXIOMS)
def test_targeted_corruption_fails_matching_axiom(A, axiom):
    D = fn.identity_comonadic(A, A.coherent_class())
    cs = op.targeted_corruptions(D, axiom, 3)
    assert cs
    for c in cs:
        res = {x.name: x for x in op.check_comonadic_laws(op.corrupt(D, c))}
        wanted = f"({axiom}) {op.AXIOM_NAMES[axiom]}"
        assert not res[wanted].passed or (not c.well_typed and not res["comonadic data boundaries"].passed)


def test_corrupted_oplax_rejected(A):
    d = fn.identity_oplax(A)
    for c in op.oplax_corruptions(d, 3):
        assert not all(x.passed for x in op.check_oplax_laws(op.corrupt(d, c)))


def test_overrides_do_not_leak(A):
    D = fn.identity_comonadic(A, A.coherent_class())
    (c,) = op.random_corruptions(D, 1)
    op.corrupt(D, c)
    assert D.Phi[c.key] != c.value


def test_cartesian_comonoids():
    B = CartesianBicat(3)
    cls = B.coherent_class()
    D = op.oplax_to_comonadic(fn.identity_oplax(B), cls, check=False)
    _all_pass(op.comonoid_report(D))
    T = B.hom(B.objects()[0], B.objects()[0])[2]
    (g,) = cls.generics(T)
    alts = op.alternatives(B, D.Phi[g])
    assert alts
    bad = op.corrupt(D, op.Corruption("Phi", g, alts[0], True))
    assert not all(c.passed for c in op.comonoid_report(bad))


def test_species_identity_roundtrip():
    B = SpeciesBicat(3)
    cls = B.coherent_class()
    d = fn.identity_oplax(B)
    D = op.oplax_to_comonadic(d, cls, check=False)
    _all_pass(op.check_comonadic_laws(D) + [op.roundtrip_oplax(d, cls), op.roundtrip_comonadic(D)])


def test_transformations(A):
    cls = A.coherent_class()
    I = fn.identity_comonadic(A, cls)
    _all_pass(op.check_transformation(op.identity_transformation(I), I, I))
    _all_pass(op.check_icon(op.identity_icon(I), I, I))
    Kd = fn.product_oplax(A, 2, C=A)
    K = op.oplax_to_comonadic(Kd, cls, check=False)
    pt = fn.projection_transformation(2)
    _all_pass(op.check_transformation(pt, K, I))
    _all_pass(op.check_transformation_oplax(pt, Kd, fn.identity_oplax(A)))
    _all_pass([op.check_extension_well_defined(I), op.check_factorization_independence(I)])
