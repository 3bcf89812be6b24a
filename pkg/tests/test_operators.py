import random

import pytest
from hypothesis import given, settings, strategies as st

from ppart import catalog
from ppart.errors import ConfigurationError, DomainError
from ppart.operators import (Mode, compose_bar, cor35_pf, cor35_tf, drop_unused, operator_registry,
                             phi, psi, random_base_series, thm12_rhs, thm34_trace_check,
                             trace_weights)
from ppart.poset import fgen_oracle, pf_oracle
from ppart.series import ClosedForm, Monomial, TruncSeries, VarRegistry, closed_eval, pochhammer, qfact

X, Y, Q, Z = (Monomial.var(v) for v in "xyqz")
R = VarRegistry.graded(("x", "y", "q", "z"), 9)
BOTH = [Mode.RATIONAL, Mode.COMBINATORIAL]


def cf(expr) -> TruncSeries:
    return closed_eval(expr, R)


def mono(m, coef=1):
    return TruncSeries.monomial(R, m, coef)


@pytest.mark.parametrize("mode", BOTH)
def test_phi_examples(mode):
    one = TruncSeries.one(R)
    assert phi(one, "z", mode) == cf(ClosedForm.factor(X, -1))
    assert phi(mono(X * Y), "z", mode) == cf(ClosedForm({X * Y * Z ** 2: 1}, [(X, -1)]))
    assert phi(mono(X), "z", mode) == cf(ClosedForm({X * Z: 1, X * Y * Z: 1}, [(X, -1)]))


@pytest.mark.parametrize("mode", BOTH)
def test_psi_examples(mode):
    assert psi(TruncSeries.one(R), "z", mode) == TruncSeries.one(R)
    assert psi(mono(X * Y), "z", mode) == mono(X * Z ** 2)
    assert psi(mono(X), "z", mode) == mono(Z) + mono(X * Z)


@pytest.mark.parametrize("op", [phi, psi])
def test_support_violation(op):
    with pytest.raises(DomainError):
        op(mono(Y), "z")


def test_compose_with_one():
    F = TruncSeries.one(operator_registry(8))
    got = compose_bar(F, 2).series
    reg = got.registry
    z2 = Monomial.var("z2")
    assert got == closed_eval(ClosedForm(1, [(X * z2, -1), (z2, -1)]), reg)
    assert got == thm12_rhs(F, 2)


def test_compose_n1_is_psi():
    reg = operator_registry(10)
    F = random_base_series(random.Random(3), reg)
    assert compose_bar(F, 1).series == psi(F, "z1")


def test_thm12_rejects_n1():
    with pytest.raises(DomainError):
        thm12_rhs(TruncSeries.one(operator_registry(4)), 1)


def test_compose_rejects_bad_args():
    F = TruncSeries.one(operator_registry(4))
    with pytest.raises(DomainError):
        compose_bar(F, 0)
    with pytest.raises(ConfigurationError):
        compose_bar(F, 2, "everything")


def test_thm12_xy_combinatorial():
    F = TruncSeries.monomial(operator_registry(10), X * Y)
    assert compose_bar(F, 2, mode=Mode.COMBINATORIAL).series == thm12_rhs(F, 2)


@pytest.mark.parametrize("seed", range(5))
@pytest.mark.parametrize("n", [2, 3, 4])
def test_thm12_random(seed, n):
    F = random_base_series(random.Random(seed), operator_registry(10), q_power=2)
    assert compose_bar(F, n).series == thm12_rhs(F, n)


def test_tf_of_vertex_is_square_tf():
    n = 3
    got = cor35_tf(ClosedForm.factor(X, -1), n)
    want = (pochhammer(X * Q, n) * qfact(n)).reciprocal()
    reg = VarRegistry.graded(("x", "q"), 12)
    assert closed_eval(got, reg) == closed_eval(want, reg)


@pytest.mark.parametrize("n", [1, 2, 3])
def test_specializations_match_series_path(n):
    reg = VarRegistry.graded(("x", "y", "q"), 12)
    F = closed_eval(ClosedForm(1, [(X, -1), (X * Y, -1)]), reg)  # arrows A -> B, sum over i >= j
    sym = ClosedForm(1, [(X, -1), (X * Y, -1)])
    tf = compose_bar(F, n, "tf").series
    assert tf == closed_eval(cor35_tf(sym, n), tf.registry)
    pf = compose_bar(F, n, "pf").series
    assert pf == closed_eval(cor35_pf(sym, n), pf.registry)
    assert pf == pf_oracle(catalog.extend_bar(catalog.two_chain(), n), 12)


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_pf_of_bare_bar_extension(n):
    # trivial base F = 1/(1-x): a single tracked vertex
    g = cor35_pf(ClosedForm.factor(X, -1), n)
    P = catalog.extend_bar(catalog.vertex(), n)
    assert closed_eval(g, pf_oracle(P, 12).registry) == pf_oracle(P, 12)
    assert pf_oracle(P, 12) == pf_oracle(catalog.rect(2, n), 12)


def test_unit_base_against_composition():
    F = TruncSeries.one(VarRegistry.graded(("x", "y", "q"), 10))
    for n in (1, 2, 3):
        g = cor35_tf(ClosedForm(1), n)
        got = compose_bar(F, n, "tf").series
        assert got == closed_eval(g, got.registry)


@pytest.mark.parametrize("base", ["vertex", "two_chain", "diamond"])
@pytest.mark.parametrize("n", [1, 2, 3])
def test_trace_check(base, n):
    P = {"vertex": catalog.vertex(), "two_chain": catalog.two_chain(),
         "diamond": catalog.diamond(A="u1")}[base]
    rep = thm34_trace_check(P, n, 8)
    assert rep.ok, rep.mismatches
    assert rep.enumerated > 0


def test_trace_weights_first_z_tracks_base_pair():
    Q2, w = trace_weights(catalog.two_chain(), 2)
    assert w[Q2.index("A")] == w[Q2.index("B")] == Monomial.var("z1")
    assert w[Q2.index("e2")] == X
    assert w[Q2.index("a1")] == w[Q2.index("e1")] == Monomial.var("z2")


def test_trace_check_size_guard():
    with pytest.raises(DomainError):
        thm34_trace_check(catalog.chain(7), 1)


# ---------------------------------------------------------------------------

seeds = st.integers(0, 10 ** 6)


@given(seeds)
@settings(max_examples=50, deadline=None)
def test_modes_agree(seed):
    reg = operator_registry(9, 1)
    F = random_base_series(random.Random(seed), reg, q_power=2)
    assert phi(F, "z1") == phi(F, "z1", Mode.COMBINATORIAL)
    assert psi(F, "z1") == psi(F, "z1", Mode.COMBINATORIAL)


@given(seeds, st.integers(-3, 3), st.integers(-3, 3))
@settings(max_examples=40, deadline=None)
def test_linearity(seed, a, b):
    reg = operator_registry(9, 1)
    rng = random.Random(seed)
    F, G = random_base_series(rng, reg), random_base_series(rng, reg)
    lhs = phi(F.scale(a) + G.scale(b), "z1")
    assert lhs == phi(F, "z1").scale(a) + phi(G, "z1").scale(b)
    assert psi(F.scale(a) + G.scale(b), "z1") == psi(F, "z1").scale(a) + psi(G, "z1").scale(b)


@given(seeds, st.integers(1, 3))
@settings(max_examples=25, deadline=None)
def test_specialization_consistency(seed, n):
    reg = VarRegistry.graded(("x", "y", "q"), 9)
    F = random_base_series(random.Random(seed), reg, q_power=1)
    full = compose_bar(F, n).series
    qq = {z: "q" for z in full.registry.names if z.startswith("z")}
    flat = full.substitute(qq)
    tf = compose_bar(F, n, "tf").series
    keep = [v for v in flat.registry.names if not v.startswith("z")]
    assert drop_unused(flat, keep) == tf


def test_fgen_base_through_pipeline_matches_poset():
    P = catalog.diamond(A="u2", B="u4")
    F = fgen_oracle(P, 12)
    for n in (1, 2):
        got = compose_bar(F, n, "pf").series
        assert got == pf_oracle(catalog.extend_bar(P, n), 12)
