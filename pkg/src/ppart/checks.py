"""Verification suites shared by the CLI and the acceptance tests.

Each suite returns a list of :class:`CheckResult` in a fixed order.  Wall
times are recorded but kept out of the default report so repeated runs
print identical text.
"""
from __future__ import annotations

import random
import time
from dataclasses import dataclass, field
from typing import Callable

from . import catalog, formulas, operators, poset
from .catalog import Family
from .series import Monomial, TruncSeries, closed_eval, extract_e_limit, q_registry

PASS, FAIL, SKIP = "pass", "fail", "skipped"


@dataclass
class CheckResult:
    name: str
    params: dict = field(default_factory=dict)
    status: str = PASS
    seconds: float = 0.0
    detail: str = ""

    @property
    def ok(self) -> bool:
        return self.status != FAIL

    def line(self, timing: bool = False) -> str:
        par = ",".join(f"{k}={v}" for k, v in self.params.items())
        s = f"{self.status.upper():7s} {self.name}" + (f" [{par}]" if par else "")
        if self.detail:
            s += f" -- {self.detail}"
        if timing:
            s += f" ({self.seconds:.3f}s)"
        return s

    def to_json(self) -> dict:
        return {"name": self.name, "params": self.params, "status": self.status,
                "detail": self.detail}


def _run(name: str, params: dict, fn: Callable[[], tuple[bool, str] | bool]) -> CheckResult:
    t = time.perf_counter()
    try:
        out = fn()
        ok, detail = out if isinstance(out, tuple) else (out, "")
        status = PASS if ok else FAIL
    except Exception as exc:  # a crash is reported as a failure of that check
        status, detail = FAIL, f"{type(exc).__name__}: {exc}"
    return CheckResult(name, params, status, time.perf_counter() - t, detail)


def _diff(a: TruncSeries, b: TruncSeries) -> tuple[bool, str]:
    if a == b:
        return True, ""
    return False, "first mismatches " + "; ".join(f"{m}: {x} vs {y}" for m, x, y in a.difference(b, 3))


# ---------------------------------------------------------------------------

TRACE_EXAMPLE = [[7, 7, 6, 5], [7, 5, 4, 2], [6, 3, 0, 0]]


def suite_traces() -> list[CheckResult]:
    def go():
        tv = poset.k_trace(TRACE_EXAMPLE)
        total = sum(map(sum, TRACE_EXAMPLE))
        ok = tv.values == (6, 10, 12, 11, 8, 5) and sum(tv.values) == 52 == total
        return ok, f"traces {tv.values}, sum {sum(tv.values)}"
    return [_run("traces.example", {}, go)]


def suite_macmahon(rmax: int = 3, D: int = 12, inf_D: int = 8) -> list[CheckResult]:
    out = []
    for r in range(1, rmax + 1):
        for c in range(1, rmax + 1):
            def go(r=r, c=c):
                cf = formulas.macmahon_rc(r, c, "q")
                return _diff(closed_eval(cf, q_registry(D)), poset.pf_oracle(catalog.rect(r, c), D))
            out.append(_run("macmahon.box", {"r": r, "c": c, "D": D}, go))

    def go_inf():
        got = formulas.macmahon_inf(inf_D).coefficients()
        want = poset.count_plane_partitions(inf_D)
        return got == want, f"{got}"
    out.append(_run("macmahon.infinite", {"D": inf_D}, go_inf))
    return out


def gansner_oracle(r: int, c: int, D: int) -> TruncSeries:
    """Trace-refined count of r x c plane partitions of size <= D."""
    reg = formulas.gansner_registry(r, c, D)
    zs = formulas.gansner_vars(r, c)
    acc: dict[tuple, int] = {}
    for pi in poset.iter_plane_partitions(r, c, D):
        tv = poset.k_trace(pi)
        e = tuple(tv[int(z[1:])] for z in zs) + (sum(tv.values),)
        acc[e] = acc.get(e, 0) + 1
    return TruncSeries(reg, acc)


def suite_gansner(rmax: int = 3, D: int = 10) -> list[CheckResult]:
    out = []
    for r in range(1, rmax + 1):
        for c in range(1, rmax + 1):
            def go(r=r, c=c):
                reg = formulas.gansner_registry(r, c, D)
                return _diff(closed_eval(formulas.gansner(r, c), reg), gansner_oracle(r, c, D))
            out.append(_run("gansner.traces", {"r": r, "c": c, "D": D}, go))

            def go_flat(r=r, c=c):
                flat = formulas.gansner(r, c).substitute(
                    {z: Monomial() for z in formulas.gansner_vars(r, c)})
                return _diff(closed_eval(flat, q_registry(D)),
                             closed_eval(formulas.macmahon_rc(r, c, "q"), q_registry(D)))
            out.append(_run("gansner.z_to_one", {"r": r, "c": c, "D": D}, go_flat))
    return out


def suite_thm12(nmax: int = 5, seeds: int = 20, D: int = 12, seed: int = 0) -> list[CheckResult]:
    out = []
    reg = operators.operator_registry(D)
    for s in range(seeds):
        F = operators.random_base_series(random.Random(seed * 1000 + s), reg, q_power=2)
        for n in range(2, nmax + 1):
            def go(F=F, n=n):
                return _diff(operators.compose_bar(F, n).series, operators.thm12_rhs(F, n))
            out.append(_run("thm12.compose_vs_closed", {"seed": seed * 1000 + s, "n": n, "D": D}, go))
    return out


def suite_modes(count: int = 200, D: int = 10, seed: int = 0) -> list[CheckResult]:
    reg = operators.operator_registry(D, 1)
    bad = []

    def go():
        for s in range(count):
            F = operators.random_base_series(random.Random(seed * 1000 + s), reg, q_power=2)
            for op in (operators.phi, operators.psi):
                a = op(F, "z1", operators.Mode.RATIONAL)
                b = op(F, "z1", operators.Mode.COMBINATORIAL)
                if a != b:
                    bad.append((s, op.__name__))
        return not bad, f"{count} inputs" + (f", mismatches {bad[:5]}" if bad else "")
    return [_run("modes.rational_vs_combinatorial", {"count": count, "D": D, "seed": seed}, go)]


THM34_BASES = {
    "vertex": lambda: catalog.vertex(),
    "two_chain": lambda: catalog.two_chain(),
    "diamond_top": lambda: catalog.diamond(A="u1"),
    "diamond_u2_u4": lambda: catalog.diamond(A="u2", B="u4"),
}


def suite_thm34(nmax: int = 3, D: int = 10) -> list[CheckResult]:
    out = []
    for name, mk in THM34_BASES.items():
        for n in range(1, nmax + 1):
            def go(mk=mk, n=n):
                rep = operators.thm34_trace_check(mk(), n, D)
                return rep.ok, f"{rep.enumerated} labelings, {rep.terms} terms" + (
                    f", mismatches {rep.mismatches[:3]}" if rep.mismatches else "")
            out.append(_run("thm34.trace_enumeration", {"base": name, "n": n, "D": D}, go))
    return out


def family_check(fam: Family, D: int = 15) -> tuple[bool, str]:
    P = catalog.named(fam)
    pf = formulas.pf_closed(fam)
    ok, why = _diff(closed_eval(pf, q_registry(D)), poset.pf_oracle(P, D))
    if not ok:
        return False, "PF " + why
    counts = {"closed": formulas.e_closed(fam),
              "ideal_dp": poset.count_linear_extensions(P),
              "order_poly": poset.e_via_order_poly(P),
              "q_limit": extract_e_limit(pf, P.p)}
    if len(set(counts.values())) != 1:
        return False, f"e(P) disagree: {counts}"
    return True, f"p={P.p}, e={counts['closed']}"


def suite_families(grid: int = 3, D: int = 15, derived: bool = True) -> list[CheckResult]:
    out = []
    for fam in catalog.family_grid(grid):
        out.append(_run("families.pf_and_e", {"family": str(fam), "D": D},
                        lambda fam=fam: family_check(fam, D)))
        if derived:
            def go(fam=fam):
                return _diff(closed_eval(formulas.derived_pf(fam), q_registry(D)),
                             closed_eval(formulas.pf_closed(fam), q_registry(D)))
            out.append(_run("families.operator_pipeline", {"family": str(fam), "D": D}, go))
        if fam.name in ("P0", "P1", "P2", "P3"):
            def go_iso(fam=fam):
                a = catalog.bar_route(fam)
                b = catalog.skew(catalog.family_skew_shape(fam))
                if a.p != b.p:
                    return False, f"sizes {a.p} vs {b.p}"
                ok, why = _diff(poset.pf_oracle(a, D), poset.pf_oracle(b, D))
                eq = poset.count_linear_extensions(a) == poset.count_linear_extensions(b)
                return ok and eq, why
            out.append(_run("families.skew_vs_bar", {"family": str(fam), "D": D}, go_iso))
    return out


def suite_kreweras(N: int = 6, mmax: int = 4) -> list[CheckResult]:
    out = []
    for shape in formulas.skew_shapes_up_to(N):
        def go(shape=shape):
            P = catalog.skew(shape)
            for m in range(mmax + 1):
                a, b = formulas.kreweras_aleph(shape, m), poset.aleph(P, m)
                if a != b:
                    return False, f"m={m}: det {a} vs oracle {b}"
            e1, e2 = formulas.skew_e_det(shape), poset.count_linear_extensions(P)
            return e1 == e2, f"e {e1} vs {e2}"
        out.append(_run("kreweras.det_vs_oracle", {"shape": str(shape), "mmax": mmax}, go))
    return out


def small_catalog(pmax: int = 8) -> list[tuple[str, "poset.Poset"]]:
    """Catalog posets with at most ``pmax`` elements, named for reports."""
    items: list[tuple[str, poset.Poset]] = [
        ("vertex", catalog.vertex()), ("two_chain", catalog.two_chain()),
        ("antichain2", catalog.antichain(2)), ("antichain3", catalog.antichain(3)),
        ("diamond", catalog.diamond()), ("diamond_diag", catalog.diamond_diag()),
    ]
    items += [(f"chain{p}", catalog.chain(p)) for p in range(1, 5)]
    items += [(f"rect{r}x{c}", catalog.rect(r, c)) for r in range(1, 4) for c in range(1, 4)]
    items += [(f"ladder_base({k},{r})", catalog.ladder_base(k, r)) for k in range(3) for r in range(3)]
    items += [(str(f), catalog.named(f)) for f in catalog.family_grid(3)]
    return [(name, P) for name, P in items if P.p <= pmax]


def suite_jordan(pmax: int = 8, D: int = 15, M: int = 8) -> list[CheckResult]:
    out = []
    for name, P in small_catalog(pmax):
        def go(P=P):
            ok, why = _diff(poset.pf_formula_maj(P, D), poset.pf_oracle(P, D))
            if not ok:
                return False, "maj: " + why
            left, right = poset.order_gf_check(P, M)
            if left != right:
                return False, f"des: {left} vs {right}"
            n_jh = len(poset.jordan_holder(P))
            return n_jh == poset.count_linear_extensions(P), f"p={P.p}, |L(P)|={n_jh}"
        out.append(_run("jordan.maj_and_des", {"poset": name, "D": D, "M": M}, go))
    return out


def suite_example42(kmax: int = 3, mmax: int = 5) -> list[CheckResult]:
    out = []
    for j in range(1, 5):
        for k in range(kmax + 1):
            def go(j=j, k=k):
                ser = closed_eval(formulas.example42_gf(j, k), q_registry(mmax, "x")).coefficients()
                P = catalog.skew(catalog.SkewShape((k + j, j)))
                want = [poset.aleph(P, m) for m in range(mmax + 1)]
                return ser == want, f"{ser}"
            out.append(_run("example42.aleph_series", {"j": j, "k": k, "mmax": mmax}, go))
    return out


SUITES: dict[str, Callable[..., list[CheckResult]]] = {
    "traces": suite_traces,
    "macmahon": suite_macmahon,
    "gansner": suite_gansner,
    "thm12": suite_thm12,
    "modes": suite_modes,
    "thm34": suite_thm34,
    "families": suite_families,
    "kreweras": suite_kreweras,
    "jordan": suite_jordan,
    "example42": suite_example42,
}


def run_all(grid: int = 3, seed: int = 0, nmax: int = 5, seeds: int = 20) -> list[CheckResult]:
    out = []
    out += suite_traces()
    out += suite_macmahon()
    out += suite_gansner()
    out += suite_thm12(nmax=nmax, seeds=seeds, seed=seed)
    out += suite_modes(seed=seed)
    out += suite_thm34()
    out += suite_families(grid=grid)
    out += suite_kreweras()
    out += suite_jordan()
    out += suite_example42()
    return out


def summarize(results: list[CheckResult]) -> dict:
    counts = {PASS: 0, FAIL: 0, SKIP: 0}
    for r in results:
        counts[r.status] += 1
    return counts
