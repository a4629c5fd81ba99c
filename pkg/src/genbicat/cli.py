"""Command-line batch runner.

    genbicat check span-laws --max-size 2 --format text
    genbicat check laws --instance span
    genbicat convert oplax-to-comonadic --functor x2
    genbicat convolve --instance species --fixture F.json --fixture G.json --cell 2 --bound 4
    genbicat convolve --instance species --fixture cases.json

Exit status is 0 iff every executed check passed and none is incomplete.
"""

from __future__ import annotations

import argparse
import itertools
import json
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass
from typing import Callable, Optional

from . import convolution as cv
from . import finset as fs
from . import functors as fn
from . import oplax as op
from . import poly as pl
from . import span as sp
from . import suites
from .bicategory import RestrictedClass, check_bicategory_axioms, check_pentagon, check_triangle, validate_coherent_class
from .monoidal import CartesianBicat, SpeciesBicat, diagonal_generic, split_generic
from .report import Check, Report, to_jsonable

INSTANCES = ("span", "poly", "cartesian", "species")
SUITES = ("span-laws", "poly-laws", "coherent-class", "thm-laws", "transformation", "convolve")


class FixtureError(ValueError):
    """A malformed fixture; the message names the offending field."""


@dataclass
class RunConfig:
    instance: str = "span"
    max_size: int = 2
    seed: int = 0
    samples: int = 20
    suites: tuple = ()
    fixture: Optional[str] = None
    cases: tuple = ()
    functor: str = "identity"
    fmt: str = "text"
    out: Optional[str] = None
    timings: bool = False
    workers: int = 1

    def __post_init__(self):
        if self.instance not in INSTANCES:
            raise ValueError(f"unknown instance {self.instance!r}")
        if self.max_size < 0 or self.samples < 0 or self.workers < 1:
            raise ValueError("bounds, samples and workers must be non-negative")
        if self.fmt not in ("text", "structured"):
            raise ValueError(f"unknown format {self.fmt!r}")
        for s in self.suites:
            if s not in SUITES:
                raise ValueError(f"unknown suite {s!r}")

    def to_json(self):
        d = asdict(self)
        d.pop("out")
        d.pop("timings")
        d.pop("workers")
        d["suites"] = list(self.suites)
        d["cases"] = list(self.cases)
        return d


# ---------------------------------------------------------------------------
# fixtures


def _get(data, key, where: str):
    if not isinstance(data, dict):
        raise FixtureError(f"{where}: expected an object")
    if key not in data:
        raise FixtureError(f"{where}.{key}: missing field")
    return data[key]


def parse_function(data, where: str) -> fs.FinFunction:
    try:
        dom, cod, table = int(_get(data, "dom", where)), int(_get(data, "cod", where)), _get(data, "table", where)
        return fs.FinFunction(dom, cod, tuple(int(x) for x in table))
    except FixtureError:
        raise
    except (TypeError, ValueError) as exc:
        raise FixtureError(f"{where}: {exc}") from None


def parse_span(data, where: str) -> sp.Span:
    left = parse_function(_get(data, "left", where), f"{where}.left")
    right = parse_function(_get(data, "right", where), f"{where}.right")
    try:
        return sp.Span(left, right)
    except ValueError as exc:
        raise FixtureError(f"{where}: {exc}") from None


def parse_poly(data, where: str) -> pl.Polynomial:
    parts = [parse_function(_get(data, k, where), f"{where}.{k}") for k in ("s", "p", "t")]
    try:
        return pl.Polynomial(*parts)
    except ValueError as exc:
        raise FixtureError(f"{where}: {exc}") from None


def load_fixture(path: str) -> dict:
    try:
        with open(path) as fh:
            data = json.load(fh)
    except json.JSONDecodeError as exc:
        raise FixtureError(f"{path}: line {exc.lineno} column {exc.colno}: {exc.msg}") from None
    if not isinstance(data, dict):
        raise FixtureError(f"{path}: top level must be an object")
    return data


def span_fixture_checks(data: dict) -> list[Check]:
    """``{"spans": [...], "cells": [{"map": [...], "src": span, "factors": [a, b]}]}``."""
    spans = [parse_span(s, f"spans[{i}]") for i, s in enumerate(data.get("spans", []))]
    B = sp.SpanBicat(max((max(s.src, s.tgt) for s in spans), default=0), 0)
    quads = [q for q in itertools.product(spans, repeat=4) if all(q[i].tgt == q[i + 1].src for i in range(3))]
    pairs = [q for q in itertools.product(spans, repeat=2) if q[0].tgt == q[1].src]
    pent = check_pentagon(B, quads)
    tri = check_triangle(B, pairs)
    pent.name, tri.name = "pentagon on fixture spans", "triangle on fixture spans"
    fac = Check("factor then recompose on fixture cells", "hom into composite bijection")
    for i, c in enumerate(data.get("cells", [])):
        where = f"cells[{i}]"
        src = parse_span(_get(c, "src", where), f"{where}.src")
        fa = _get(c, "factors", where)
        if not isinstance(fa, list) or len(fa) != 2:
            raise FixtureError(f"{where}.factors: expected two spans")
        a, b = parse_span(fa[0], f"{where}.factors[0]"), parse_span(fa[1], f"{where}.factors[1]")
        ab = sp.compose_spans(a, b)
        try:
            cell = sp.SpanMor(src, ab, fs.FinFunction(src.apex, ab.apex, tuple(int(x) for x in _get(c, "map", where))))
        except ValueError as exc:
            raise FixtureError(f"{where}.map: {exc}") from None
        fac.record(sp.recompose(sp.factor_2cell(cell, a, b)) == cell, {"cell": cell})
    return [pent, tri, fac]


def poly_fixture_checks(data: dict) -> list[Check]:
    """``{"compositions": [{"P": poly, "Q": poly, "inputs": [function, ...]}]}``."""
    chk = Check("extension of composite on fixture polynomials", "polynomial composition")
    for i, item in enumerate(data.get("compositions", [])):
        where = f"compositions[{i}]"
        P = parse_poly(_get(item, "P", where), f"{where}.P")
        Q = parse_poly(_get(item, "Q", where), f"{where}.Q")
        if P.tgt != Q.src:
            raise FixtureError(f"{where}: P and Q are not composable")
        PQ = pl.compose_polys(P, Q)
        for k, A in enumerate(item.get("inputs", [])):
            A = parse_function(A, f"{where}.inputs[{k}]")
            if A.cod != P.src:
                raise FixtureError(f"{where}.inputs[{k}]: not over the source of P")
            got = pl.fiber_counts(pl.extension_eval(PQ, A))
            want = pl.fiber_counts(pl.extension_eval(Q, pl.extension_eval(P, A)))
            chk.record(got == want, {"P": P, "Q": Q, "A": A, "counts": [got, want]})
    return [chk]


def _presheaf(entry, base: cv.FiniteCategory, where: str, label_parser) -> cv.Presheaf:
    family = _get(entry, "family", where)
    if family == "const":
        return cv.constant_presheaf(base, int(_get(entry, "value", where)))
    if family in ("sieve", "representable"):
        label = label_parser(_get(entry, "at", where), f"{where}.at")
        if label not in base.labels:
            raise FixtureError(f"{where}.at: not an object of the truncation")
        k = base.labels.index(label)
        return cv.sieve(base, k) if family == "sieve" else cv.representable(base, k)
    if family == "species":
        name = _get(entry, "name", where)
        if not all(isinstance(x, int) for x in base.labels):
            raise FixtureError(f"{where}.family: species presheaves need --instance species")
        if name not in SPECIES:
            raise FixtureError(f"{where}.name: unknown species {name!r}; choose from {sorted(SPECIES)}")
        return cv.species_presheaf(SPECIES[name](base.n_objects - 1), base)
    if family == "table":
        try:
            return cv.Presheaf.from_json(base, entry)
        except cv.InvalidPresheaf as exc:
            raise FixtureError(f"{where}: {exc}") from None
    raise FixtureError(f"{where}.family: unknown family {family!r}")


def convolve_fixture_checks(data: dict, instance: str, bound: int, bijection: bool = False) -> list[Check]:
    """``{"cases": [{"cell": ..., "mid": Y, "F": presheaf, "G": presheaf}]}``."""
    out = []
    for i, case in enumerate(_get(data, "cases", "fixture")):
        where = f"cases[{i}]"
        if instance == "span":
            c = parse_span(_get(case, "cell", where), f"{where}.cell")
            Y = int(_get(case, "mid", where))
            B = sp.SpanBicat(max(c.src, c.tgt, Y), max(bound, c.apex))
            c1, c2 = cv.hom_category(B, c.src, Y), cv.hom_category(B, Y, c.tgt)
            parse = parse_span
        elif instance == "species":
            c, Y = int(_get(case, "cell", where)), 0
            B = SpeciesBicat(max(bound, c))
            c1 = c2 = cv.hom_category(B, 0, 0)
            parse = lambda x, w: int(x)  # noqa: E731
        else:
            raise FixtureError(f"{where}: convolution is not supported for {instance}")
        F = _presheaf(_get(case, "F", where), c1, f"{where}.F", parse)
        G = _presheaf(_get(case, "G", where), c2, f"{where}.G", parse)
        out.append(cv.verify_convolution_iso(B, F, G, c, Y, bijection=bijection))
    return out


# ---------------------------------------------------------------------------
# suites


def _span_laws(cfg: RunConfig) -> list[Check]:
    n = cfg.max_size
    B = sp.SpanBicat(n, n)
    out = check_bicategory_axioms(B, samples=200 * max(cfg.samples, 1), seed=cfg.seed)
    out.append(suites.check_generic_projections(n))
    out.append(suites.check_span_filler_uniqueness(n, seed=cfg.seed, exhaustive_size=min(n, 1)))
    out.extend(suites.check_hom_composite(n, n + 1, samples=10 * cfg.samples, seed=cfg.seed))
    if n < 3:
        out.append(suites.check_hom_composite_up_to_iso(n + 1))
    out.append(suites.check_subterminal(n))
    out.append(suites.check_span_roundtrip(n))
    out.append(suites.check_induced_unitor(n))
    out.extend(suites.check_generic_pasting(n, seed=cfg.seed, converse_size=min(n, 1)))
    return out


def _poly_laws(cfg: RunConfig) -> list[Check]:
    n = cfg.max_size
    out = [suites.check_worked_composite(), suites.check_nonrigid_not_generic()]
    out.append(suites.check_poly_composition_oracle(n, n, n))
    out.append(suites.check_weber_roundtrip(n, n))
    out.extend(suites.check_septuple_equivalence(min(n, 1), n))
    out.append(suites.check_cartesian_rejection(min(n, 1), n))
    out.append(suites.check_poly_filler_uniqueness(samples=50, max_obj=min(n, 1), max_size=n, seed=cfg.seed))
    out.extend(check_bicategory_axioms(pl.PolyBicat(1, min(n, 1)), samples=50 * max(cfg.samples, 1), seed=cfg.seed))
    return out


def handle(cfg: RunConfig):
    n = cfg.max_size
    if cfg.instance == "span":
        return sp.SpanBicat(n, n)
    if cfg.instance == "poly":
        return pl.PolyBicat(min(n, 1), n)
    if cfg.instance == "cartesian":
        return CartesianBicat(n + 1)
    return SpeciesBicat(n + 2)


def _negative_class_controls(B, cls) -> list[Check]:
    """Each restriction must make validation fail."""
    controls = []
    if isinstance(B, sp.SpanBicat):
        g = sp.generic(fs.identity(1), fs.constant(1, 1, 0), fs.identity(1))
        controls.append(("drop one generic", RestrictedClass(cls, drop_generics=[g])))
    elif isinstance(B, pl.PolyBicat):
        P = pl.identity_poly(1)
        g = pl.generic(P.s, P.p, fs.identity(1), fs.identity(1), P.t)
        controls.append(("drop one generic", RestrictedClass(cls, drop_generics=[g])))
    elif isinstance(B, CartesianBicat):
        controls.append(("drop one generic", RestrictedClass(cls, drop_generics=[diagonal_generic(1)])))
    else:
        controls.append(("drop one generic", RestrictedClass(cls, drop_generics=[split_generic(1, 1)])))
    controls.append(("no augmentations", RestrictedClass(cls, no_augmentations=True)))
    out = []
    for what, restricted in controls:
        chk = Check(f"negative control: {what} is rejected", "negative control")
        failed = [c.name for c in validate_coherent_class(restricted) if not c.passed]
        chk.record(bool(failed), None if failed else {"reason": "restricted class validated"})
        chk.note = "failing: " + ", ".join(failed)
        out.append(chk)
    return out


def _coherent_class(cfg: RunConfig) -> list[Check]:
    B = handle(cfg)
    cls = B.coherent_class()
    return validate_coherent_class(cls) + _negative_class_controls(B, cls) + [suites.check_drop_each_generator(cls)]


def functor_data(name: str, A: sp.SpanBicat):
    """Oplax data and, where it exists, directly written comonadic data for a stock functor."""
    cls = A.coherent_class()
    if name == "identity":
        return fn.identity_oplax(A), fn.identity_comonadic(A, cls)
    if name.startswith("x"):
        k = int(name[1:])
        return fn.product_oplax(A, k), fn.product_comonadic(A, cls, k)
    if name.startswith("+"):
        return fn.sum_oplax(A, int(name[1:])), None
    if name == "apex":
        return fn.apex_oplax(A), fn.apex_comonadic(A, cls)
    raise ValueError(f"unknown functor {name!r}")


FUNCTORS = ("identity", "x2", "+1", "apex")


def _correspondence_laws(cfg: RunConfig) -> list[Check]:
    out: list[Check] = []
    if cfg.instance in ("cartesian", "species"):
        B = handle(cfg)
        cls = B.coherent_class()
        d = fn.identity_oplax(B)
        out.extend(op.check_oplax_laws(d))
        D = op.oplax_to_comonadic(d, cls, check=False)
        out.extend(op.check_comonadic_laws(D))
        out.append(op.roundtrip_oplax(d, cls))
        out.append(op.roundtrip_comonadic(D))
        if cfg.instance == "cartesian":
            out.extend(op.comonoid_report(D))
        out.extend(_negative_axiom_controls(D, cfg))
        return out
    if cfg.instance != "span":
        raise ValueError("comonadic data suites run on span, cartesian or species sources")
    A = sp.SpanBicat(min(cfg.max_size, 2), 2)
    cls = A.coherent_class()
    for name in FUNCTORS:
        d, D0 = functor_data(name, A)
        out.extend(op.check_oplax_laws(d))
        D = op.oplax_to_comonadic(d, cls, check=False)
        out.extend(op.check_comonadic_laws(D))
        out.append(op.roundtrip_oplax(d, cls))
        out.append(op.roundtrip_comonadic(D))
        if D0 is not None:
            out.append(op.compare_comonadic(D, D0, f"converted data equals direct data [{name}]"))
            out.append(op.roundtrip_comonadic(D0))
        out.extend(_negative_axiom_controls(D0 if D0 is not None else D, cfg))
        out.extend(_negative_oplax_controls(d, cfg))
    return out


def _negative_axiom_controls(D, cfg: RunConfig) -> list[Check]:
    out = []
    for ax in op.AXIOMS:
        chk = Check(f"negative control: corrupted data fails ({ax}) [{D.name}]", "negative control")
        wanted = f"({ax}) {op.AXIOM_NAMES[ax]}"
        for c in op.targeted_corruptions(D, ax, cfg.samples, seed=cfg.seed):
            res = {x.name: x for x in op.check_comonadic_laws(op.corrupt(D, c))}
            typing_caught = not c.well_typed and not res["comonadic data boundaries"].passed
            chk.record(not res[wanted].passed or typing_caught, {"corruption": c})
        chk.note = "targeted single-entry corruptions"
        if chk.instances == 0:
            # e.g. counits into a unit whose endo-hom is a single cell: nothing to corrupt
            chk.note = "no single-entry corruption of this axiom's data exists"
        out.append(chk)
    chk = Check(f"negative control: random corruptions are rejected [{D.name}]", "negative control")
    for c in op.random_corruptions(D, cfg.samples, seed=cfg.seed):
        chk.record(not all(x.passed for x in op.check_comonadic_laws(op.corrupt(D, c))), {"corruption": c})
    out.append(chk)
    return out


def _negative_oplax_controls(d, cfg: RunConfig) -> list[Check]:
    chk = Check(f"negative control: corrupted oplax data is rejected [{d.name}]", "negative control")
    for c in op.oplax_corruptions(d, max(cfg.samples // 2, 1), seed=cfg.seed):
        chk.record(not all(x.passed for x in op.check_oplax_laws(op.corrupt(d, c))), {"corruption": c})
    return [chk]


def _transformation(cfg: RunConfig) -> list[Check]:
    A = sp.SpanBicat(min(cfg.max_size, 2), 2)
    cls = A.coherent_class()
    I = fn.identity_comonadic(A, cls)
    out = op.check_transformation(op.identity_transformation(I), I, I)
    out += op.check_icon(op.identity_icon(I), I, I)
    Kd = fn.product_oplax(A, 2, C=A)
    K = op.oplax_to_comonadic(Kd, cls, check=False)
    pt = fn.projection_transformation(2)
    out += op.check_transformation(pt, K, I)
    out += op.check_transformation_oplax(pt, Kd, fn.identity_oplax(A))
    out.append(op.check_factorization_independence(I))
    return out


def _convolve(cfg: RunConfig) -> list[Check]:
    if cfg.cases:
        return convolve_fixture_checks({"cases": list(cfg.cases)}, cfg.instance, cfg.max_size, bijection=True)
    if cfg.fixture:
        return convolve_fixture_checks(load_fixture(cfg.fixture), cfg.instance, cfg.max_size)
    if cfg.instance == "species":
        return species_convolution_checks(cfg.max_size + 2)
    if cfg.instance == "span":
        return span_convolution_checks(cfg.max_size, cfg.max_size, stability_size=min(cfg.max_size, 1))
    chk = Check(f"convolution on {cfg.instance}", "reduced Day convolution")
    chk.incomplete = True
    chk.note = "no enumerable generic index for this instance"
    return [chk]


def span_families(base: cv.FiniteCategory) -> list[cv.Presheaf]:
    """Constants ``0, 1, 2`` and the sieve on the largest object (pointwise size ``<= 2``)."""
    return [cv.constant_presheaf(base, k) for k in range(3)] + [cv.sieve(base, base.n_objects - 1)]


def span_convolution_checks(max_obj: int, max_apex: int, stability_size: int = 1) -> list[Check]:
    B = sp.SpanBicat(max_obj, max_apex)
    agg = Check("convolution reduces to a sum over generics (spans)", "reduced Day convolution")
    cats: dict = {}
    for X, Y, Z in itertools.product(B.objects(), repeat=3):
        c1 = cats.setdefault((X, Y), cv.hom_category(B, X, Y))
        c2 = cats.setdefault((Y, Z), cv.hom_category(B, Y, Z))
        for c in B.hom(X, Z):
            for F in span_families(c1):
                for G in span_families(c2):
                    r = cv.verify_convolution_iso(B, F, G, c, Y)
                    agg.elapsed += r.elapsed
                    agg.record(r.passed, r.witness)
    agg.bound = {"max_obj": max_obj, "max_apex": max_apex, "presheaf_values": 2}
    stab = Check("coend stable under enlarging the truncation (spans)", "truncation stability")
    small, big = sp.SpanBicat(stability_size, stability_size), sp.SpanBicat(stability_size, stability_size + 1)
    for X, Y, Z in itertools.product(small.objects(), repeat=3):
        for c in small.hom(X, Z):
            for k in range(3):
                makers = [lambda b, k=k: cv.constant_presheaf(b, k)]
                if small.hom(X, Y):
                    top = small.hom(X, Y)[-1]
                    makers.append(lambda b, top=top: cv.sieve_of(b, top))
                for mk in makers:
                    r = cv.check_truncation_stability(
                        small, big, mk, lambda b: cv.constant_presheaf(b, 1), c, X, Y, Z
                    )
                    stab.elapsed += r.elapsed
                    stab.record(r.passed, r.witness)
    stab.bound = {"N": stability_size, "N+1": stability_size + 1}
    return [agg, stab]


SPECIES = {
    "const1": cv.species_constant,
    "E1": lambda N: cv.species_of_size(N, 1),
    "L": cv.species_linear_orders,
    "P": cv.species_subsets,
    "const0": lambda N: cv.species_constant(N, 0),
}


def species_families(N: int) -> list[cv.Species]:
    return [make(N) for make in SPECIES.values()]


def species_convolution_checks(N: int = 4) -> list[Check]:
    S = SpeciesBicat(N)
    base = cv.hom_category(S, 0, 0)
    fams = species_families(N)
    agg = Check("convolution reduces to a sum over generics (species)", "reduced Day convolution")
    closed = Check("species convolution matches the binomial formula", "species product")
    for F, G in itertools.product(fams, repeat=2):
        PF, PG = cv.species_presheaf(F, base), cv.species_presheaf(G, base)
        prod = cv.species_product(F, G)
        for c in range(N + 1):
            r = cv.verify_convolution_iso(S, PF, PG, c, 0)
            agg.elapsed += r.elapsed
            agg.record(r.passed, r.witness)
            closed.record(prod.sizes[c] == cv.species_product_count(F, G, c) == r.bound["coend"], {"F": F.name, "G": G.name, "n": c})
    agg.bound = {"max_n": N}
    ex = Check("constant singleton convolved with itself at n=2", "species product")
    E = cv.species_presheaf(cv.species_constant(N), base)
    r = cv.verify_convolution_iso(S, E, E, 2, 0)
    ex.record(r.passed and r.bound["coend"] == 4, r.bound)
    assoc = Check("species convolution is associative", "species associativity")
    for F, G, H in itertools.product(fams[:4], repeat=3):
        for n in range(min(N, 3) + 1):
            r = cv.species_associativity(F, G, H, n)
            assoc.elapsed += r.elapsed
            assoc.record(r.passed, r.witness)
    stab = Check("coend stable under enlarging the truncation (species)", "truncation stability")
    S2 = SpeciesBicat(N + 1)
    for c in range(N + 1):
        for F in fams:
            r = cv.check_truncation_stability(
                S, S2, lambda b, F=F: cv.species_presheaf(SPECIES[F.name](b.n_objects - 1), b),
                lambda b: cv.species_presheaf(cv.species_constant(b.n_objects - 1), b), c, 0, 0, 0,
            )
            stab.record(r.passed, r.witness)
    return [agg, closed, ex, assoc, stab]


SUITE_FUNCS: dict[str, Callable[[RunConfig], list[Check]]] = {
    "span-laws": _span_laws,
    "poly-laws": _poly_laws,
    "coherent-class": _coherent_class,
    "thm-laws": _correspondence_laws,
    "transformation": _transformation,
    "convolve": _convolve,
}


def default_suites(instance: str) -> tuple:
    if instance == "span":
        return ("span-laws", "coherent-class", "thm-laws", "transformation", "convolve")
    if instance == "poly":
        return ("poly-laws", "coherent-class")
    if instance == "cartesian":
        return ("coherent-class", "thm-laws")
    return ("coherent-class", "thm-laws", "convolve")


def _run_suite(args) -> list[Check]:
    name, cfg = args
    try:
        if cfg.fixture and name == "span-laws":
            return span_fixture_checks(load_fixture(cfg.fixture))
        if cfg.fixture and name == "poly-laws":
            return poly_fixture_checks(load_fixture(cfg.fixture))
        return SUITE_FUNCS[name](cfg)
    except fs.EnumerationTooLarge as exc:
        chk = Check(f"{name} suite", "enumeration cap")
        chk.incomplete = True
        chk.note = str(exc)
        return [chk]


def run(config: RunConfig) -> Report:
    """Execute the selected suites; report assembly stays in this process."""
    names = config.suites or default_suites(config.instance)
    tasks = [(n, config) for n in names]
    if config.workers > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(config.workers) as pool:
            results = list(pool.map(_run_suite, tasks))
    else:
        results = [_run_suite(t) for t in tasks]
    report = Report(config=config.to_json())
    for checks in results:
        report.extend(checks)
    return report


# ---------------------------------------------------------------------------
# conversion command


def convert(direction: str, functor: str, max_size: int, cls_size: Optional[int] = None) -> dict:
    """Tables of the converted data on the bounded source, as JSON."""
    A = sp.SpanBicat(min(max_size, 2), 2)
    cls = A.coherent_class()
    d, D0 = functor_data(functor, A)
    if direction == "oplax-to-comonadic":
        D = op.oplax_to_comonadic(d, cls)
        gens = list(cls.all_generics())
        augs = list(cls.all_augmentations())
        return {
            "direction": direction,
            "functor": functor,
            "Phi": [{"generic": to_jsonable(g), "value": to_jsonable(D.Phi[g])} for g in gens],
            "Lambda": [{"augmentation": to_jsonable(e), "value": to_jsonable(D.Lam[e])} for e in augs],
        }
    if D0 is None:
        raise ValueError(f"no direct comonadic data for {functor}")
    back = op.comonadic_to_oplax(D0)
    pairs = [(a, b) for X, Y, Z in itertools.product(A.objects(), repeat=3) for a in A.hom(X, Y) for b in A.hom(Y, Z)]
    return {
        "direction": direction,
        "functor": functor,
        "phi": [{"pair": to_jsonable(p), "value": to_jsonable(back.phi[p])} for p in pairs],
        "lambda": [{"object": X, "value": to_jsonable(back.lam[X])} for X in A.objects()],
    }


# ---------------------------------------------------------------------------
# argument parsing


def _common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--max-size", type=int, default=2)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--samples", type=int, default=20, help="negative-control corruptions per axiom")
    p.add_argument("--format", choices=("text", "structured"), default="text")
    p.add_argument("--out")
    p.add_argument("--instance", choices=INSTANCES, default="span")
    p.add_argument("--fixture", action="append", default=[],
                   help="fixture file; convolve takes either one cases file or two presheaf files F, G")
    p.add_argument("--timings", action="store_true", help="include wall-clock timings in structured output")
    p.add_argument("--workers", type=int, default=1)


CHECK_COMMANDS = {
    "span-laws": ("span-laws",),
    "poly-laws": ("poly-laws",),
    "coherent-class": ("coherent-class",),
    "thm-laws": ("thm-laws",),
    "transformation": ("transformation",),
    "laws": (),
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="genbicat")
    sub = parser.add_subparsers(dest="command", required=True)
    check = sub.add_parser("check", help="run law suites")
    check.add_argument("suite", choices=sorted(CHECK_COMMANDS))
    _common(check)
    conv = sub.add_parser("convert", help="convert between oplax and comonadic data")
    conv.add_argument("direction", choices=("oplax-to-comonadic", "comonadic-to-oplax"))
    conv.add_argument("--functor", choices=FUNCTORS, default="identity")
    _common(conv)
    cvl = sub.add_parser("convolve", help="check reduced Day convolution")
    cvl.add_argument("--cell", help="JSON span (span instance) or size (species)")
    cvl.add_argument("--mid", type=int, default=None, help="middle object for span cells")
    cvl.add_argument("--bound", type=int, default=None, help="truncation bound")
    _common(cvl)
    return parser


def _emit(text: str, out: Optional[str]) -> None:
    if out:
        with open(out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.command == "convert":
            data = convert(args.direction, args.functor, args.max_size)
            _emit(json.dumps(data, indent=2, sort_keys=True) + "\n", args.out)
            return 0
        fixtures = args.fixture
        cases: tuple = ()
        if args.command == "check":
            suites_ = CHECK_COMMANDS[args.suite]
            if args.suite == "laws":
                suites_ = default_suites(args.instance)
            if len(fixtures) > 1:
                raise FixtureError("check takes a single --fixture")
        else:
            suites_ = ("convolve",)
            if args.cell is not None:
                cases = (_cell_case(args),)
                fixtures = []
            elif len(fixtures) > 1:
                raise FixtureError("two presheaf fixtures need --cell")
        max_size = args.bound if getattr(args, "bound", None) is not None else args.max_size
        cfg = RunConfig(
            instance=args.instance, max_size=max_size, seed=args.seed, samples=args.samples, suites=suites_,
            fixture=fixtures[0] if fixtures else None, cases=cases, fmt=args.format, out=args.out,
            timings=args.timings, workers=args.workers,
        )
        report = run(cfg)
    except FixtureError as exc:
        sys.stderr.write(f"fixture error: {exc}\n")
        return 2
    except ValueError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 2
    _emit(report.dumps(cfg.fmt, timings=cfg.timings), cfg.out)
    return 0 if report.passed else 1


def _json_arg(text: str, what: str):
    """Inline JSON, or a path to a JSON file."""
    if os.path.exists(text):
        with open(text) as fh:
            text = fh.read()
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise FixtureError(f"{what}: neither a file nor JSON ({exc.msg})") from None


def _cell_case(args) -> dict:
    """One convolution case from ``--cell`` and up to two presheaf fixtures (default: constant singletons)."""
    cell = _json_arg(args.cell, "--cell")
    mid = args.mid
    if isinstance(cell, dict) and "cell" in cell:
        mid = cell.get("mid", mid)
        cell = cell["cell"]
    if args.instance == "span" and mid is None:
        raise FixtureError("--cell: span cells need a middle object (--mid or a \"mid\" field)")
    one = {"family": "const", "value": 1}
    pre = [load_fixture(f) for f in args.fixture] + [one] * (2 - len(args.fixture))
    if len(pre) != 2:
        raise FixtureError("convolve takes at most two presheaf fixtures")
    return {"cell": cell, "mid": mid or 0, "F": pre[0], "G": pre[1]}


if __name__ == "__main__":
    sys.exit(main())
