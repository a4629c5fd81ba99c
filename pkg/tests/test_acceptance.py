"""Acceptance gate: one PASS/FAIL line per criterion.

Run alone with ``pytest tests/test_acceptance.py -s`` or ``python3 scripts/run_acceptance.py``.
"""

import pytest

from genbicat import cli, suites
from genbicat import span as sp
from genbicat.bicategory import check_bicategory_axioms, validate_coherent_class
from genbicat.monoidal import SpeciesBicat

pytestmark = pytest.mark.slow

RESULTS: dict = {}


@pytest.fixture(scope="module", autouse=True)
def summary(request):
    yield
    tr = request.config.pluginmanager.getplugin("terminalreporter")
    if tr is None:
        return
    tr.write_line("")
    tr.write_line("acceptance summary")
    for key in sorted(RESULTS):
        tr.write_line(RESULTS[key])


def gate(capsys, key: str, title: str, checks: list, require_instances: bool = True):
    bad = [c for c in checks if not c.passed or (require_instances and c.instances == 0)]
    total = sum(c.instances for c in checks)
    line = f"[{'PASS' if not bad else 'FAIL'}] {key}: {title} ({len(checks)} checks, {total} instances)"
    RESULTS[key] = line
    with capsys.disabled():
        print("\n" + line)
        for c in bad:
            print("    " + c.line())
    assert not bad, [c.line() for c in bad]


def test_c01_generic_filler_uniqueness(capsys):
    gate(capsys, "C01", "generic filler uniqueness, spans of size <= 3",
         [suites.check_span_filler_uniqueness(3)])


def test_c02_hom_into_composite_bijection(capsys):
    checks = suites.check_hom_composite(exhaustive_size=2, sampled_size=3, samples=2000)
    checks.append(suites.check_hom_composite_up_to_iso(3))
    gate(capsys, "C02", "hom into a composite is a sum over middle legs, size <= 3", checks)


def test_c03_subterminal_units(capsys):
    gate(capsys, "C03", "identity spans are sub-terminal, size <= 3", [suites.check_subterminal(3)])


def test_c04_unitors_and_pastings(capsys):
    gate(capsys, "C04", "induced unitors invertible, pastings of generics generic, size <= 2",
         [suites.check_induced_unitor(2), *suites.check_generic_pasting(2)])


def test_c05_coherent_classes(capsys):
    checks = []
    for B in (sp.SpanBicat(2, 2), SpeciesBicat(4)):
        cls = B.coherent_class()
        checks += validate_coherent_class(cls)
        checks += cli._negative_class_controls(B, cls)
        checks.append(suites.check_drop_each_generator(cls))
    gate(capsys, "C05", "span and species classes validate; every removal is rejected", checks)


def test_c06_oplax_comonadic_correspondence(capsys):
    checks = cli._correspondence_laws(cli.RunConfig(instance="span", max_size=2))
    names = {c.name for c in checks}
    for f in cli.FUNCTORS:
        assert any(f"[{f}" in n and "roundtrip" in n for n in names), f
    gate(capsys, "C06", "roundtrips, axioms (a)-(e) and negative controls on spans of size <= 2", checks)


def test_c07_weber_and_septuples(capsys):
    gate(capsys, "C07", "Weber factor/recompose at size <= 2; septuple equivalence",
         [suites.check_weber_roundtrip(2, 2), *suites.check_septuple_equivalence(1, 2)])


def test_c08_polynomial_composition(capsys):
    gate(capsys, "C08", "extension of composites at size <= 2, inputs <= 2; the 20-element instance",
         [suites.check_poly_composition_oracle(2, 2, 2), suites.check_worked_composite()])


def test_c09_convolution(capsys):
    checks = cli.span_convolution_checks(2, 2, stability_size=1)
    checks += cli.species_convolution_checks(4)
    gate(capsys, "C09", "reduced convolution for spans <= 2 and species |c| <= 4; truncation stability", checks)


def test_c10_bicategory_axioms(capsys):
    gate(capsys, "C10", "pentagon, triangle, interchange on spans of size <= 2",
         check_bicategory_axioms(sp.SpanBicat(2, 2)))
