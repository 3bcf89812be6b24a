"""One test per acceptance criterion, each run at its stated size and time budget.

Every test prints a single ``ACCEPT <n> PASS|FAIL`` line (visible with ``-s``
or in the captured output of ``pytest -v``)."""
import time

import pytest

from ppart import checks

pytestmark = pytest.mark.acceptance


def _accept(num, title, results, budget, t0, extra_ok=True):
    elapsed = time.perf_counter() - t0
    counts = checks.summarize(results)
    ok = counts["fail"] == 0 and counts["pass"] > 0 and extra_ok and elapsed < budget
    print(f"ACCEPT {num} {'PASS' if ok else 'FAIL'}: {title} "
          f"({counts['pass']} pass, {counts['fail']} fail, {elapsed:.1f}s / {budget}s)")
    bad = [r.line() for r in results if r.status == checks.FAIL][:5]
    assert counts["fail"] == 0, bad
    assert counts["pass"] > 0
    assert extra_ok
    assert elapsed < budget, f"{elapsed:.1f}s over budget {budget}s"


def test_01_trace_example():
    t0 = time.perf_counter()
    _accept(1, "k-trace worked example", checks.suite_traces(), 1, t0)


def test_02_macmahon():
    t0 = time.perf_counter()
    res = checks.suite_macmahon(rmax=3, D=12, inf_D=8)
    _accept(2, "MacMahon box and infinite products", res, 30, t0, len(res) == 10)


def test_03_gansner():
    t0 = time.perf_counter()
    res = checks.suite_gansner(rmax=3, D=10)
    _accept(3, "trace-refined box product", res, 120, t0, len(res) == 18)


def test_04_bar_composition_closed_form():
    t0 = time.perf_counter()
    res = checks.suite_thm12(nmax=5, seeds=20, D=12, seed=0)
    _accept(4, "n-fold composition vs closed form, n=2..5, 20 seeds", res, 60, t0, len(res) == 80)


def test_05_operator_modes():
    t0 = time.perf_counter()
    res = checks.suite_modes(count=200, D=10, seed=0)
    _accept(5, "rational vs combinatorial operators, 200 inputs", res, 60, t0)


def test_06_trace_enumeration():
    t0 = time.perf_counter()
    res = checks.suite_thm34(nmax=3, D=10)
    bases = {r.params["base"] for r in res}
    extra = {"vertex", "two_chain", "diamond_top"} <= bases
    _accept(6, "bar-extension enumeration vs operator composition", res, 60, t0, extra)


def test_07_families():
    t0 = time.perf_counter()
    res = checks.suite_families(grid=3, D=15)
    names = {r.params["family"] for r in res}
    extra = {"P6(n=3)", "P9(n=3,k=3,r=3)"} <= names
    _accept(7, "families P0-P9 over the grid: PF and e(P)", res, 15 * 60, t0, extra)


def test_08_skew_determinants():
    t0 = time.perf_counter()
    res = checks.suite_kreweras(N=6, mmax=4)
    _accept(8, "skew-shape determinants for aleph and e", res, 60, t0)


def test_09_jordan_holder():
    t0 = time.perf_counter()
    res = checks.suite_jordan(pmax=8, D=15, M=8)
    _accept(9, "major-index and descent formulas on catalog posets p<=8", res, 120, t0)


def test_10_two_row_series():
    t0 = time.perf_counter()
    res = checks.suite_example42(kmax=3, mmax=5)
    _accept(10, "two-rowed aleph series, k<=3, m<=5", res, 30, t0, len(res) == 16)
