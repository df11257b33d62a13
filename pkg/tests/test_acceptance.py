"""Acceptance criteria 1-10, one test each, each printing a single PASS/FAIL line."""

import time
from fractions import Fraction
from functools import cache

import pytest

from superjordan import certs
from superjordan.catalog import FamilySpec, build, build_Dt, family_dims
from superjordan.cli import main
from superjordan.decomposition import (
    certify_example1,
    certify_example2,
    certify_jvf_split,
    example2_claims,
    jvf_splits,
    screen,
    verify_Dminus1_iso,
)
from superjordan.superalgebra import Subspace, associative_envelope, check_axioms, is_simple


@pytest.fixture
def report(capsys):
    def emit(n: int, ok: bool, detail: str):
        with capsys.disabled():
            print(f"\nCRITERION {n:2d}: {'PASS' if ok else 'FAIL'}  {detail}")
        return ok
    return emit


def _formula_dim(spec: FamilySpec) -> int:
    f, p = spec.family, spec.params
    if f == "M":
        return (p[0] + p[1]) ** 2
    if f == "osp":
        n, m = p
        return n * (n + 1) // 2 + m * (2 * m - 1) + 2 * n * m
    if f in ("P", "Q"):
        return 2 * p[0] ** 2
    return {"K3": 3, "Dt": 4}[f]


DT_VALUES = [Fraction(-1), Fraction(0), Fraction(1, 2), Fraction(2)]
GRID = (
    [FamilySpec("M", (n, m)) for n in range(1, 5) for m in range(1, 5)]
    + [FamilySpec("osp", (n, m)) for n in range(1, 5) for m in range(1, 5)]
    + [FamilySpec(f, (n,)) for f in ("P", "Q") for n in range(1, 5)]
    + [FamilySpec("K3")]
    + [FamilySpec("Dt", (t,)) for t in DT_VALUES]
)


def test_criterion_01_dimension_contracts(report):
    t0 = time.perf_counter()
    bad = [str(s) for s in GRID if build(s).dim != _formula_dim(s)]
    dt = time.perf_counter() - t0
    ok = report(1, not bad and dt < 5, f"{len(GRID)} builders, mismatches {bad or 'none'}, {dt:.2f}s (< 5s)")
    assert ok


def test_criterion_02_axiom_suite(report):
    t0 = time.perf_counter()
    algs = [build(s) for s in GRID if _formula_dim(s) <= 49]
    algs += [build(FamilySpec("JVf", (a, b))) for a in range(4) for b in range(3) if a + 2 * b >= 1]
    failed = [a.name for a in algs if not check_axioms(a).ok]
    dt = time.perf_counter() - t0
    ok = report(2, not failed and dt < 120, f"{len(algs)} algebras, violations in {failed or 'none'}, {dt:.1f}s (< 120s)")
    assert ok


@cache
def _example1_results():
    t0 = time.perf_counter()
    rows = []
    for n, m in [(1, 2), (2, 2), (3, 2), (3, 4)]:
        cert = certify_example1(n, m)
        paper_count = m * n + 2 * m * (n - 1) - m * (n - 2)
        rows.append((n, m, cert, paper_count))
    return rows, time.perf_counter() - t0


def test_criterion_03_example1(report):
    rows, dt = _example1_results()
    cells = []
    ok = dt < 30
    for n, m, cert, count in rows:
        good = cert.accepted and count == 2 * m * n == cert.span_rank_odd
        ok &= good
        cells.append(f"({n},{m}) {'ok' if good else cert.reason + f' (odd rank {cert.span_rank_odd} of {2 * m * n})'}")
    ok = report(3, ok, "; ".join(cells) + f"; {dt:.1f}s (< 30s)")
    assert ok


@cache
def _example2_results():
    return [(n, m, certify_example2(n, m)) for n, m in [(2, 1), (2, 3), (4, 3)]]


def test_criterion_04_example2(report):
    ok = True
    cells = []
    for n, m, cert in _example2_results():
        ca, cb = example2_claims(n, m)
        types_ok = (str(ca), str(cb)) == (f"osp({m},{n // 2})", f"M({m - 1},{n})")
        dims_ok = cert.part_a.parity_dims == family_dims(ca) and cert.part_b.parity_dims == family_dims(cb)
        good = cert.accepted and types_ok and dims_ok
        ok &= good
        cells.append(f"({n},{m}) {'ok' if good else cert.reason}")
    ok = report(4, ok, "; ".join(cells))
    assert ok


@cache
def _jvf_results():
    return [(m0, n1, a, b, certify_jvf_split(m0, n1, a, b))
            for m0, n1 in [(2, 1), (4, 2), (3, 3)] for a, b in jvf_splits(m0, n1)]


def test_criterion_05_jvf_splits(report):
    rows = _jvf_results()
    bad = [f"JVf({m0},{n1}) split ({a},{b}): {c.reason}, overlap {c.intersection_dim}"
           for m0, n1, a, b, c in rows if not (c.accepted and c.intersection_dim == 1)]
    ok = report(5, not bad and bool(rows), f"{len(rows)} splits, failures {bad or 'none'}")
    assert ok


SIMPLE = ["M(1,1)", "M(1,2)", "osp(1,1)", "osp(2,1)", "Q(2)", "P(3)", "K3", "Dt(1/2)", "Dt(-1)", "JVf(2,1)"]


def test_criterion_06_simplicity(report):
    t0 = time.perf_counter()
    bad = []
    for name in SIMPLE:
        A = build(name)
        v = is_simple(A)
        if v.kind != "Simple" or v.burnside_dim != A.dim ** 2:
            bad.append(f"{name}:{v.kind}")
    D0 = build_Dt(0)
    v0 = is_simple(D0)
    if v0.kind != "NotSimple" or v0.witness is None or not v0.recheck(D0):
        bad.append(f"Dt(0):{v0.kind}")
    dt = time.perf_counter() - t0
    ok = report(6, not bad and dt < 120, f"{len(SIMPLE)} Simple + Dt(0) NotSimple, wrong {bad or 'none'}, {dt:.1f}s")
    assert ok


def test_criterion_07_envelopes(report):
    want = {"osp(1,1)": 9, "osp(2,1)": 16, "P(3)": 36, "Q(2)": 8}
    got = {}
    for name in want:
        A = build(name)
        got[name] = len(associative_envelope(A.realization, Subspace.whole(A)))
    ok = report(7, got == want, f"dims {got}")
    assert ok


GRID8 = {
    "M(1,1)": set(), "M(3,3)": set(),
    "M(3,2)": {("M(2,2)", "osp(3,1)")},
    "osp(1,1)": set(), "osp(2,1)": set(), "osp(1,2)": set(),
    "Q(2)": set(), "Q(3)": set(), "P(2)": set(), "P(3)": set(),
    "K3": set(), "Dt(1/2)": set(),
}
M22_FAMILIES = {("osp(2,1)@even", "M(1,2)"), ("osp(2,1)@odd", "M(2,1)")}
JVF_TARGETS = ["JVf(2,1)", "JVf(1,2)", "JVf(3,0)", "JVf(4,2)"]


@cache
def _screen_results():
    t0 = time.perf_counter()
    reps = {t: screen(t) for t in list(GRID8) + ["M(2,2)"] + JVF_TARGETS}
    return reps, time.perf_counter() - t0


def test_criterion_08_screening_grid(report):
    reps, dt = _screen_results()
    bad = []
    for t, want in GRID8.items():
        got = reps[t].survivor_types(annotated=False)
        if got != want:
            bad.append(f"{t}: {sorted(got)}")
    if reps["M(2,2)"].survivor_keys(annotated=False) != M22_FAMILIES:
        bad.append("M(2,2)")
    for t in JVF_TARGETS:
        if not all(p.a.family == p.b.family == "JVf" for p in reps[t].survivors):
            bad.append(t)
    annotated = [p for p in reps["M(3,2)"].survivors if p.note]
    if [str(p.b) for p in annotated] != ["M(3,1)"]:
        bad.append("M(3,2) k=n shape not annotated")
    ok = report(8, not bad and dt < 300, f"{len(reps)} targets, mismatches {bad or 'none'}, {dt:.1f}s (< 300s)")
    assert ok


def test_criterion_09_dminus1(report):
    ok = report(9, verify_Dminus1_iso(), "stored witness re-multiplied")
    assert ok


def test_criterion_10_roundtrip(report, tmp_path, capsys):
    docs = [certs.certificate_document(c) for _, _, c, _ in _example1_results()[0]]
    docs += [certs.certificate_document(c) for *_, c in _example2_results()]
    docs += [certs.certificate_document(c) for *_, c in _jvf_results()]
    docs += [certs.screening_document(r) for r in _screen_results()[0].values()]
    paths = [certs.write(d, tmp_path / f"doc{i:03d}.json") for i, d in enumerate(docs)]
    code = main(["check", *map(str, paths)])
    out = capsys.readouterr().out
    reproduced = out.count(": reproduced")
    verdicts_same = all(certs.verdict_of(certs.read(p)) == certs.verdict_of(d) for p, d in zip(paths, docs))
    ok = report(10, code == 0 and reproduced == len(docs) and verdicts_same,
                f"{reproduced}/{len(docs)} documents reproduced by check")
    assert ok
