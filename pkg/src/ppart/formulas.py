"""Closed forms for plane partitions, skew shapes and the named families.

Every expression here is transcribed as displayed (products of ``(1 - m)``
powers, explicit sums kept as sums); nothing is simplified.  The ``derived_*``
builders instead obtain the same generating functions by running the
specialized operator pipeline on each family's base generating function.
"""
from __future__ import annotations

from fractions import Fraction
from math import comb, factorial
from typing import Sequence

from .catalog import Family, SkewShape
from .errors import DomainError, InconsistencyError
from .operators import cor35_pf, cor35_tf
from .series import (GF, ClosedForm, ClosedSum, Monomial, TruncSeries, VarRegistry,
                     as_monomial, closed_eval, pochhammer, poly, qfact)

Q = Monomial.var("q")


def _q(e: int) -> Monomial:
    return Monomial.var("q", e)


def _f(*exps: int) -> ClosedForm:
    """``prod (1 - q^e)``; nonpositive entries are rejected."""
    for e in exps:
        if e < 1:
            raise DomainError(f"factor (1 - q^{e}) is not a unit")
    return ClosedForm(1, [(_q(e), 1) for e in exps])


def _qp(a: int, n: int) -> ClosedForm:
    """``(q^a; q)_n``."""
    if n and a < 1:
        raise DomainError(f"(q^{a};q)_{n} has a vanishing or constant factor")
    return pochhammer(_q(a), n)


def _qf(n: int) -> ClosedForm:
    if n < 0:
        raise DomainError(f"(q;q)_{n} needs n >= 0")
    return qfact(n)


def _inv(cf: ClosedForm) -> ClosedForm:
    return cf.reciprocal()


def _num(*terms: tuple[int, int]) -> ClosedForm:
    """Polynomial ``sum c q^e`` from ``(c, e)`` pairs."""
    return ClosedForm(poly(*((c, _q(e)) for c, e in terms)))


# ---------------------------------------------------------------------------
# plane partitions
# ---------------------------------------------------------------------------

def macmahon_rc(r: int, c: int, var: str = "x") -> ClosedForm:
    """Plane partitions in an r x c box: ``prod 1/(1 - x^(i+j-1))``."""
    if r < 1 or c < 1:
        raise DomainError("box needs r, c >= 1")
    x = Monomial.var(var)
    return ClosedForm(1, [(x ** (i + j - 1), -1) for i in range(1, r + 1)
                          for j in range(1, c + 1)])


def macmahon_inf(D: int, var: str = "x") -> TruncSeries:
    """``prod_{n >= 1} (1 - x^n)^(-n)`` through ``x^D``."""
    if D < 0:
        raise DomainError("D must be >= 0")
    x = Monomial.var(var)
    cf = ClosedForm(1, [(x ** n, -n) for n in range(1, D + 1)])
    return closed_eval(cf, VarRegistry.graded((var,), D))


def gansner_vars(r: int, c: int) -> tuple[str, ...]:
    return tuple(f"z{k}" for k in range(-r + 1, c))


def gansner(r: int, c: int, q: str = "q") -> ClosedForm:
    """Trace-refined box product over ``z_(-r+1) .. z_(c-1)`` and q."""
    if r < 1 or c < 1:
        raise DomainError("box needs r, c >= 1")
    factors = []
    for i in range(1, r + 1):
        for j in range(1, c + 1):
            m = Monomial.var(q, i + j - 1)
            for k in range(-i + 1, j):
                m = m * Monomial.var(f"z{k}")
            factors.append((m, -1))
    return ClosedForm(1, factors)


def gansner_registry(r: int, c: int, D: int, q: str = "q") -> VarRegistry:
    """z's carry no degree (each capped at D); q carries the total."""
    zs = gansner_vars(r, c)
    return VarRegistry.graded(zs + (q,), D, weights={z: 0 for z in zs},
                              caps={z: D for z in zs})


# ---------------------------------------------------------------------------
# determinants for skew shapes
# ---------------------------------------------------------------------------

def det(matrix: Sequence[Sequence[Fraction | int]]) -> Fraction:
    """Exact determinant by fraction-valued Gaussian elimination."""
    a = [[Fraction(x) for x in row] for row in matrix]
    k = len(a)
    if any(len(row) != k for row in a):
        raise DomainError("determinant of a non-square matrix")
    sign = 1
    out = Fraction(1)
    for col in range(k):
        piv = next((r for r in range(col, k) if a[r][col]), None)
        if piv is None:
            return Fraction(0)
        if piv != col:
            a[col], a[piv] = a[piv], a[col]
            sign = -sign
        out *= a[col][col]
        for r in range(col + 1, k):
            f = a[r][col] / a[col][col]
            if f:
                for j in range(col, k):
                    a[r][j] -= f * a[col][j]
    return sign * out


def _binom(a: int, b: int) -> int:
    return comb(a, b) if 0 <= b <= a else 0


def _as_shape(shape) -> SkewShape:
    if isinstance(shape, SkewShape):
        return shape
    lam, mu = shape
    return SkewShape(tuple(lam), tuple(mu))


def kreweras_matrix(shape, m: int) -> list[list[int]]:
    s = _as_shape(shape)
    k = len(s.lam)
    return [[_binom(m + s.lam[i] - s.mu[j], m + i - j) for j in range(k)] for i in range(k)]


def kreweras_aleph(shape, m: int) -> int:
    """Number of P-partitions of the skew shape with parts <= m."""
    if m < 0:
        raise DomainError("m must be >= 0")
    d = det(kreweras_matrix(shape, m))
    if d.denominator != 1:
        raise InconsistencyError(f"non-integer determinant {d}")
    return int(d)


def skew_e_det(shape) -> int:
    """Linear extensions of a skew shape: ``N! det(1/(lam_i - mu_j - i + j)!)``."""
    s = _as_shape(shape)
    k = len(s.lam)

    def inv_fact(t):
        return Fraction(1, factorial(t)) if t >= 0 else Fraction(0)

    mat = [[inv_fact(s.lam[i] - s.mu[j] - i + j) for j in range(k)] for i in range(k)]
    e = det(mat) * factorial(s.size)
    if e.denominator != 1:
        raise InconsistencyError(f"non-integer count {e}")
    return int(e)


def partitions_up_to(N: int) -> list[tuple[int, ...]]:
    """All partitions of 1..N, largest part first."""
    out = []

    def rec(left, top, acc):
        if acc:
            out.append(tuple(acc))
        for part in range(min(left, top), 0, -1):
            acc.append(part)
            rec(left - part, part, acc)
            acc.pop()

    rec(N, N, [])
    return sorted(out, key=lambda p: (sum(p), p))


def sub_partitions(lam: Sequence[int]) -> list[tuple[int, ...]]:
    """All mu contained in lam (zero-padded tuples), with lam/mu non-empty."""
    out = []

    def rec(i, top, acc):
        if i == len(lam):
            if sum(acc) < sum(lam):
                out.append(tuple(acc))
            return
        for v in range(min(top, lam[i]) + 1):
            acc.append(v)
            rec(i + 1, v, acc)
            acc.pop()

    rec(0, lam[0] if lam else 0, [])
    return out


def skew_shapes_up_to(N: int) -> list[SkewShape]:
    """Every lam/mu with |lam| <= N, mu contained in lam, at least one cell."""
    return [SkewShape(lam, mu) for lam in partitions_up_to(N) for mu in sub_partitions(lam)]


# ---------------------------------------------------------------------------
# base generating functions
# ---------------------------------------------------------------------------

def diamond_gf(x1, x2, x3, x4) -> ClosedForm:
    """Full generating function of the diamond ``u1 >= u2, u3 >= u4``."""
    x1, x2, x3, x4 = map(as_monomial, (x1, x2, x3, x4))
    num = poly((1, 1), (-1, x1 ** 2 * x2 * x3))
    return ClosedForm(num, [(x1, -1), (x1 * x2, -1), (x1 * x3, -1),
                            (x1 * x2 * x3, -1), (x1 * x2 * x3 * x4, -1)])


def diamond_diag_gf(x1, x2, x3, x4, x5, x6) -> ClosedForm:
    """Full generating function of the diamond with a diagonal (six vertices)."""
    x1, x2, x3, x4, x5, x6 = map(as_monomial, (x1, x2, x3, x4, x5, x6))
    a = ClosedForm(poly((1, 1), (-1, x1 ** 2 * x2 * x3)))
    b = ClosedForm(poly((1, 1), (-1, x1 ** 2 * x2 ** 2 * x3 ** 2 * x4 * x5)))
    s = x1 * x2 * x3
    den = ClosedForm(1, [(x1, -1), (x1 * x2, -1), (x1 * x3, -1), (s, -1), (s * x4, -1),
                         (s * x5, -1), (s * x4 * x5, -1), (s * x4 * x5 * x6, -1)])
    return a * b * den


def ladder_gf(k: int, r: int) -> ClosedSum:
    """Generating function in x, y, q of the ladder base with tails k and r."""
    if k < 0 or r < 0:
        raise DomainError("ladder needs k, r >= 0")
    X, Y = Monomial.var("x"), Monomial.var("y")
    terms = [_inv(pochhammer(Y, r + 1) * pochhammer(X, k + 2))]
    for i in range(r + 1):
        sign = (-1) ** (i + 1)
        num = ClosedForm({Y * _q(i * (i + 3) // 2): sign})
        den = (ClosedForm.factor(X) * ClosedForm.factor(Y * _q(i)) * _qf(i) * _qf(r - i)
               * pochhammer(X * Y * _q(i + 1), k + 1))
        terms.append(num * _inv(den))
    return ClosedSum(terms)


def chain_top_gf(k: int) -> ClosedForm:
    """``1/(x;q)_(k+1)``: a (k+1)-chain whose top carries x."""
    return _inv(pochhammer(Monomial.var("x"), k + 1))


def base_gf(which: str, *args) -> GF:
    if which == "diamond":
        return diamond_gf(*args)
    if which == "diamond_diag":
        return diamond_diag_gf(*args)
    if which == "ladder":
        return ladder_gf(*args)
    raise DomainError(f"unknown base {which!r}")


# ---------------------------------------------------------------------------
# displayed PF formulas
# ---------------------------------------------------------------------------

def _pf_P0(n, k):
    num = _num((1, 0), (-1, 1), (1, n + 1), (-1, n + k + 1))
    return num * _inv(_qf(n + k + 1) * _qf(n))


def _pf_P1(n, m):
    num = _num((1, 0), (-1, 1), (-1, m + n + 1), (1, m + 2))
    return num * _inv(_qf(m - 1) * _qf(m + n + 1) * _qf(n))


def _pf_P2(n, m, r):
    den = _inv(_qf(r + m + n + 1) * _qf(r + m + n) * _qf(m + n) * _qf(n))
    t1 = (_f(m) * _qp(r + 1, m + n) * _qp(m + r + 1, n + 1)
          * _num((1, 0), (-1, m + r), (-1, 1), (1, r + 1)))
    inner = (ClosedForm({_q(2): 1}) * _f(r) * _f(m + r + 1)) - (_f(m + n + r + 1) * _f(m + r))
    t2 = ClosedForm({_q(r): 1}) * _qp(m, n + 1) * _qp(r + 1, m + n) * inner
    return ClosedSum([t1 * den]) + (t2 * den)


def _pf_P3(n, m, r):
    den = _inv(_qf(n + r + m + 1) * _qf(m) * _qf(n + r))
    a = _qp(m + n + 1, r + 1) * _num((1, 0), (-1, 1), (-1, m + n), (1, m + 1))
    b = (ClosedForm({_q(m): -1}) * _qp(n, r + 1)
         * _num((1, 0), (-1, 2), (1, m + 2), (-1, n + r + m + 1)))
    return ClosedSum([a * den, b * den])


def _pf_P4(n):
    num = (_num((1, 0), (1, n + 1)) * _f(n + 4)
           - _num((1, 1), (1, n + 3)) * _f(n))          # q(1 + q^(n+2)) = q + q^(n+3)
    return num * _inv(_qf(n) * _qf(n + 4))


def _pf_P5(n):
    num = _num((1, 0), (1, 2))
    return num * _inv(_qf(n) * _qf(n - 1) * _f(2, 3, n + 3, n + 4))


def _pf_P6(n):
    den = _inv(_qf(n + 6) * _qf(n + 4))
    a = _f(2 * n + 2, 2 * n + 6, n + 2, n + 4, n + 6)
    b = ClosedForm({Q: -1}) * _f(2 * n + 4, 2 * n + 8, n, n + 1, n + 3)
    return ClosedSum([a * den, b * den])


def _pf_P7(n):
    num = _num((1, 0), (-1, 1), (1, 4), (-1, 5))
    den = (_qf(n) * _qf(n - 1) * _f(1) * _f(2) * _f(2) * _f(3) * _f(5)
           * _f(n + 5) * _f(n + 6))
    return num * _inv(den)


def _pf_P8(n, m):
    pre = _inv(_qf(n) * _qf(n - 1) * _qf(m) * _qf(m - 1))
    t1_num = (_f(3 * m + n + 1) * _f(m + 1) * _f(m + n + 1)
              - ClosedForm({Q: 1}) * _f(3 * m + n + 2) * _f(m) * _f(m + n))
    t1_den = _inv(_f(m, m + 1, m + n, m + n + 1, 2 * m + 1, 2 * m + n + 1, 2 * m + 2 * n + 2))
    t2_num = (ClosedForm({_q(2): 1}) * _f(3 * m + n + 3) * _f(m) * _f(m + n + 1)
              - ClosedForm({Q: 1}) * _f(3 * m + n + 2) * _f(m + 1) * _f(m + n + 2))
    t2_den = _inv(_f(m, m + 1, m + n + 1, m + n + 2, 2 * m + 1, 2 * m + n + 2, 2 * m + 2 * n + 2))
    return ClosedSum([t1_num * t1_den * pre, t2_num * t2_den * pre])


def _pf_P9(n, k, r):
    first = _num((1, 0), (-1, 1), (-1, n + k + 2), (1, n + r + 2)) * _inv(
        _qf(n + r + 1) * _qf(n + k + 2))
    terms = [first]
    for i in range(r + 1):
        sign = (-1) ** (i + 1)
        lead = ClosedForm({_q(i * (i + 3) // 2 + n + 1): sign})
        inner = _f(n + 1) * _f(n + i) - _f(n) * _f(n + i + 1)
        den = (_f(n + i, n + i + 1) * _qf(n) * _qf(n + 1) * _qf(i) * _qf(r - i)
               * _qp(2 * n + i + 2, k + 1))
        terms.append(lead * inner * _inv(den))
    return ClosedSum(terms)


def _flat(g) -> ClosedSum:
    return g if isinstance(g, ClosedSum) else ClosedSum([g])


def pf_closed(fam: Family) -> ClosedSum:
    """The displayed PF expression of a named family."""
    p = fam.params()
    fn = {"P0": _pf_P0, "P1": _pf_P1, "P2": _pf_P2, "P3": _pf_P3, "P4": _pf_P4,
          "P5": _pf_P5, "P6": _pf_P6, "P7": _pf_P7, "P8": _pf_P8, "P9": _pf_P9}[fam.name]
    return _flat(fn(**p))


# ---------------------------------------------------------------------------
# displayed e(P) formulas
# ---------------------------------------------------------------------------

def _F(t: int) -> int:
    if t < 0:
        raise DomainError(f"factorial of {t}")
    return factorial(t)


def _e_raw(fam: Family) -> Fraction:
    n, m, k, r = fam.n, fam.m, fam.k, fam.r
    name = fam.name
    if name == "P0":
        return Fraction(_F(2 * n + k) * (k + 1), _F(n) * _F(n + k + 1))
    if name == "P1":
        return Fraction(_F(2 * n + 2 * m - 1), _F(m - 1) * _F(n - 1) * _F(m + n + 1))
    if name == "P2":
        a = Fraction(m * m, _F(n) * _F(r) * _F(m + r) * _F(m + n))
        b = Fraction(m * m + m * (n + r + 1) + r * n,
                     _F(n) * _F(r) * _F(m - 1) * _F(m + n + r + 1))
        return _F(2 * r + 2 * n + 2 * m - 2) * (a - b)
    if name == "P3":
        a = Fraction(n, _F(m) * _F(n + r) * _F(m + n))
        b = Fraction(n + r + 1, _F(m) * _F(n - 1) * _F(m + n + r + 1))
        return _F(2 * n + 2 * m + r - 1) * (a - b)
    if name == "P4":
        return Fraction(8 * _F(2 * n + 3), _F(n) * _F(n + 4))
    if name == "P5":
        return Fraction(_F(2 * n + 3), 3 * _F(n) * _F(n - 1) * (n + 3) * (n + 4))
    if name == "P6":
        return Fraction(24 * _F(2 * n + 5), _F(n) * _F(n + 6))
    if name == "P7":
        return Fraction(_F(2 * n + 5), 30 * (n + 5) * (n + 6) * _F(n) * _F(n - 1))
    if name == "P8":
        num = _F(2 * n + 2 * m + 2) * (17 * m ** 3 + (19 * n + 35) * m ** 2
                                       + (7 * n * n + 26 * n + 22) * m + (n + 1) * (n + 2) ** 2)
        den = (_F(n) * _F(m) * _F(n - 1) * _F(m + 1) * 2 * (m + n) * (m + n + 1) ** 2
               * (2 * m + 1) * (2 * m + n + 1) * (m + n + 2) * (2 * m + n + 2))
        return Fraction(num, den)
    if name == "P9":
        total = Fraction((k - r + 1) * _F(2 * n + k + r + 2), _F(n + r + 1) * _F(n + k + 2))
        for i in range(r + 1):
            total += Fraction((-1) ** (i + 1) * i * _F(2 * n + i + 1) * _F(2 * n + k + r + 2),
                              (n + i) * (n + i + 1) * _F(n) * _F(i) * _F(n + 1) * _F(r - i)
                              * _F(2 * n + k + i + 2))
        return total
    raise DomainError(name)  # pragma: no cover


def e_closed(fam: Family) -> int:
    """Linear-extension count from the displayed factorial expression."""
    e = _e_raw(fam)
    if e.denominator != 1 or e < 0:
        raise InconsistencyError(f"{fam}: formula gives {e}")
    return int(e)


# ---------------------------------------------------------------------------
# the same PFs through the specialized operators
# ---------------------------------------------------------------------------

def vertex_tf(n: int) -> GF:
    """TF of the 2 x n rectangle grown from a single tracked vertex."""
    return cor35_tf(ClosedForm(1, [(Monomial.var("x"), -1)]), n)


def derived_pf(fam: Family) -> ClosedSum:
    """PF obtained by feeding each family's base generating function through
    one or more specialized bar extensions."""
    n, m, k, r = fam.n, fam.m, fam.k, fam.r
    x, y = Monomial.var("x"), Monomial.var("y")
    name = fam.name
    if name == "P0":
        g = cor35_pf(chain_top_gf(k), n)
    elif name == "P1":
        g = cor35_pf(vertex_tf(n), m)
    elif name == "P2":
        g = cor35_pf(cor35_tf(vertex_tf(n), m), r)
    elif name == "P3":
        g = cor35_pf(cor35_tf(chain_top_gf(r), n), m)
    elif name == "P4":
        g = cor35_pf(diamond_gf(x, Q, Q, Q), n)
    elif name == "P5":
        g = cor35_pf(diamond_gf(Q, Q, Q, x), n)
    elif name == "P6":
        g = cor35_pf(diamond_diag_gf(x, Q, Q, Q, Q, Q), n)
    elif name == "P7":
        g = cor35_pf(diamond_diag_gf(Q, Q, Q, Q, Q, x), n)
    elif name == "P8":
        x1, x3 = Monomial.var("x1"), Monomial.var("x3")
        stage = cor35_pf(diamond_gf(x1, x, x3, y), n)
        g = cor35_pf(stage.substitute({"x1": x, "x3": y}), m)
    elif name == "P9":
        g = cor35_pf(ladder_gf(k, r), n)
    else:  # pragma: no cover
        raise DomainError(name)
    return _flat(g)


# ---------------------------------------------------------------------------
# order-polynomial series for two-rowed shapes
# ---------------------------------------------------------------------------

def example42_gf(j: int, k: int) -> ClosedForm:
    """``sum_m aleph(P_(k+j, j), m) x^m`` for ``j = 1..4``."""
    if j not in (1, 2, 3, 4):
        raise DomainError("j must be one of 1, 2, 3, 4")
    if k < 0:
        raise DomainError("k must be >= 0")
    if j == 1:
        coefs = [1, k]
    elif j == 2:
        coefs = [1, 2 * k + 1, Fraction(k * (k + 1), 2)]
    elif j == 3:
        coefs = [1, 3 * (k + 1), Fraction((3 * k + 1) * (k + 2), 2),
                 Fraction(k * (k + 1) * (k + 2), 6)]
    else:
        coefs = [1, 4 * k + 6, 3 * k * k + 11 * k + 6,
                 Fraction(4 * k ** 3 + 21 * k * k + 29 * k + 6, 6),
                 Fraction(k * (k + 1) * (k + 2) * (k + 3), 24)]
    ints = []
    for c in coefs:
        c = Fraction(c)
        if c.denominator != 1:
            raise InconsistencyError(f"non-integer numerator coefficient {c}")
        ints.append(int(c))
    x = Monomial.var("x")
    num = poly(*((c, x ** t) for t, c in enumerate(ints)))
    return ClosedForm(num, [(x, -(k + 2 * j + 1))])


def pf_series(fam: Family, D: int) -> TruncSeries:
    return closed_eval(pf_closed(fam), VarRegistry.graded(("q",), D))
