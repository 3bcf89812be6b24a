import pytest
from hypothesis import given, settings, strategies as st

from ppart.errors import ConfigurationError, DomainError, InconsistencyError
from ppart.series import (ClosedForm, ClosedSum, Monomial, TruncSeries, VarRegistry,
                          closed_eval, closed_from_json, extract_e_limit, inv, mul, pochhammer,
                          q_registry, qfact, substitute)

X, Y, Q = Monomial.var("x"), Monomial.var("y"), Monomial.var("q")
XY = VarRegistry.graded(("x", "y"), 8)


def ser(reg, *pairs):
    return TruncSeries.from_monomials(reg, [(Monomial(m), c) for m, c in pairs])


def test_mul_identity_and_zero():
    f = ser(XY, ({"x": 2}, 3), ({"x": 1, "y": 1}, -1))
    one, zero = TruncSeries.one(XY), TruncSeries.zero(XY)
    assert mul(one, f) == f
    assert mul(zero, f) == zero


def test_mul_two_terms():
    a = ser(XY, ({}, 1), ({"x": 1}, 1))
    b = ser(XY, ({}, 1), ({"y": 1}, 1))
    assert mul(a, b) == ser(XY, ({}, 1), ({"x": 1}, 1), ({"y": 1}, 1), ({"x": 1, "y": 1}, 1))


def test_mul_registry_mismatch():
    with pytest.raises(ConfigurationError):
        mul(TruncSeries.one(XY), TruncSeries.one(q_registry(3)))


def test_inv_geometric_and_two_parts():
    R = q_registry(8)
    assert inv(TruncSeries.one(R).mul_one_minus(Q)).coefficients() == [1] * 9
    f = TruncSeries.one(R).mul_one_minus(Q).mul_one_minus(Q ** 2)
    # partitions of d into parts of size 1 and 2
    assert inv(f).coefficients() == [d // 2 + 1 for d in range(9)]
    assert inv(TruncSeries.one(R)) == TruncSeries.one(R)


def test_inv_rejects_nonunit():
    R = q_registry(4)
    with pytest.raises(DomainError):
        inv(TruncSeries.one(R).scale(2))


def test_substitute_examples():
    R = VarRegistry.graded(("x", "y", "z"), 6)
    f = TruncSeries.monomial(R, X * Y)
    got = substitute(f, {"x": X * Monomial.var("z"), "y": Y * Monomial.var("z")})
    assert got == TruncSeries.monomial(R, Monomial.of(x=1, y=1, z=2))
    assert substitute(f, {}) == f


def test_substitute_geometric_to_q():
    R = VarRegistry.graded(("x", "q"), 7)
    geo = closed_eval(ClosedForm.factor(X, -1), R)
    got = substitute(geo, {"x": Q})
    assert got == closed_eval(ClosedForm.factor(Q, -1), R)


def test_substitute_rejects_degree_drop():
    R = VarRegistry.graded(("x", "q"), 5)
    with pytest.raises(DomainError):
        substitute(TruncSeries.monomial(R, X), {"x": 1})


def test_pochhammer():
    a = Monomial.var("a")
    assert pochhammer(a, 1).factors == ((a, 1),)
    assert pochhammer(Q, 0) == ClosedForm(1)
    assert closed_eval(pochhammer(Q, 2), q_registry(5)).coefficients() == [1, -1, -1, 1, 0, 0]


def test_closed_eval_examples():
    R = q_registry(6)
    assert closed_eval(ClosedForm.factor(Q, -1), R).coefficients() == [1] * 7
    with pytest.raises(DomainError):
        ClosedForm.factor(Monomial(), 1)


def test_closed_eval_unknown_variable():
    cf = ClosedForm(1, [(Monomial.var("t"), -1)])
    with pytest.raises(ConfigurationError):
        closed_eval(cf, q_registry(4))


def test_extract_e_limit_examples():
    assert extract_e_limit(qfact(5).reciprocal(), 5) == 1
    assert extract_e_limit(ClosedForm.factor(Q, -2), 2) == 2


def test_extract_e_limit_wrong_p():
    with pytest.raises(InconsistencyError):
        extract_e_limit(qfact(3).reciprocal(), 2)
    with pytest.raises(InconsistencyError):
        extract_e_limit(qfact(3).reciprocal(), 4)


def test_extract_e_limit_cancelling_sum():
    # 1/(1-q)^2 - q/(1-q)^2 = 1/(1-q): the summands' double poles cancel
    s = ClosedSum([ClosedForm.factor(Q, -2), ClosedForm({Q: -1}, [(Q, -2)])])
    assert extract_e_limit(s, 1) == 1


@pytest.mark.parametrize("p", range(0, 13))
def test_extract_e_limit_chain(p):
    assert extract_e_limit(qfact(p).reciprocal(), p) == 1


def test_json_roundtrip():
    R = VarRegistry.graded(("x", "y", "q"), 6, caps={"x": 4})
    f = ser(R, ({"x": 2, "q": 1}, -7), ({}, 10 ** 30))
    g = TruncSeries.from_json(f.to_json())
    assert g == f
    assert f.to_json()["terms"][0]["coef"] == str(10 ** 30)
    cf = ClosedSum([qfact(3).reciprocal(), ClosedForm({Q ** 2: -1}, [(Q * X, -1)])])
    back = closed_from_json(cf.to_json())
    assert closed_eval(back, R) == closed_eval(cf, R)


def test_caps_respected():
    R = VarRegistry.graded(("x", "y"), 10, caps={"x": 2})
    f = closed_eval(ClosedForm(1, [(X, -1), (Y, -1)]), R)
    assert all(e[0] <= 2 and sum(e) <= 10 for e, _ in f.items())
    assert len(f) == 11 + 10 + 9  # x-degree 0, 1, 2 with total degree <= 10


# ---------------------------------------------------------------------------
# properties

R3 = VarRegistry.graded(("x", "y", "q"), 5)
exps = st.tuples(st.integers(0, 3), st.integers(0, 3), st.integers(0, 3))
series_st = st.dictionaries(exps, st.integers(-5, 5), max_size=8).map(lambda d: TruncSeries(R3, d))


@given(series_st, series_st, series_st)
@settings(max_examples=60, deadline=None)
def test_mul_commutative_associative(a, b, c):
    assert mul(a, b) == mul(b, a)
    assert mul(mul(a, b), c) == mul(a, mul(b, c))


@given(series_st, st.sampled_from([1, -1]))
@settings(max_examples=60, deadline=None)
def test_inverse_property(f, c0):
    g = f + TruncSeries.one(R3).scale(c0 - f.constant())
    assert mul(g, inv(g)) == TruncSeries.one(R3)


@given(st.integers(0, 10))
def test_pochhammer_inverse(n):
    R = q_registry(12)
    assert (closed_eval(qfact(n), R) * closed_eval(qfact(n).reciprocal(), R)
            == TruncSeries.one(R))


@given(series_st, st.integers(1, 2), st.integers(1, 2))
@settings(max_examples=40, deadline=None)
def test_substitution_composes(f, a, b):
    s1 = {"x": X * Q ** (a - 1), "y": Y * X}
    s2 = {"x": X ** b, "q": Q}
    lhs = substitute(substitute(f, s1), s2)
    composed = {k: v.substitute(s2) for k, v in s1.items()}
    composed.setdefault("q", Q)
    assert lhs == substitute(f, composed)


def test_laurent_rejects_multivariate():
    with pytest.raises(DomainError):
        extract_e_limit(ClosedForm(1, [(X, -1)]), 1)
