"""The phi/psi operators on bivariate generating functions and their
iterated composition.

``F(x, y) = sum a_ij x^i y^j`` with ``i >= j``; the coefficients ``a_ij`` may
themselves be series in any other registry variables (q, earlier z's).

    phi_z F = (F(xz, yz) - y F(xyz, z)) / ((1 - x)(1 - y))
    psi_z F = (F(z, xz) - x F(xz, z)) / (1 - x)

Each has an index-sum form that enumerates the same terms directly; the two
modes must agree exactly and are cross-checked in the test suite.
"""
from __future__ import annotations

import enum
import random
from dataclasses import dataclass, field
from typing import Sequence

from .errors import ConfigurationError, DomainError
from .poset import Poset, fgen_oracle, iter_p_partitions
from .series import (GF, Monomial, TruncSeries, VarRegistry, closed_eval, pochhammer,
                     qfact)
from .catalog import extend_bar_indexed


class Mode(enum.Enum):
    RATIONAL = "rational"
    COMBINATORIAL = "combinatorial"


SPECIALIZATIONS = ("none", "tf", "pf")


def _need(registry: VarRegistry, *names: str) -> VarRegistry:
    missing = [n for n in names if n not in registry]
    return registry.extend(missing) if missing else registry


def _lift(F: TruncSeries, *names: str) -> TruncSeries:
    reg = _need(F.registry, *names)
    return F if reg is F.registry else F.embed(reg)


def check_support(F: TruncSeries, x: str = "x", y: str = "y"):
    """Raise unless every term has x-exponent >= y-exponent."""
    reg = F.registry
    if y not in reg:
        return
    ix, iy = reg.index(x), reg.index(y)
    for e, _ in F.items():
        if e[ix] < e[iy]:
            raise DomainError(f"term {reg.monomial(e)} has x-exponent below y-exponent")


# ---------------------------------------------------------------------------
# single operators
# ---------------------------------------------------------------------------

def phi(F: TruncSeries, z: str = "z", mode: Mode = Mode.RATIONAL,
        x: str = "x", y: str = "y") -> TruncSeries:
    """phi_z; ``z`` may be an existing variable such as ``q``."""
    F = _lift(F, x, y, z)
    check_support(F, x, y)
    X, Y, Z = (Monomial.var(v) for v in (x, y, z))
    if Mode(mode) is Mode.RATIONAL:
        a = F.substitute({x: X * Z, y: Y * Z})
        b = F.substitute({x: X * Y * Z, y: Z}).mul_monomial(Y)
        return (a - b).div_one_minus(X).div_one_minus(Y)
    reg = F.registry
    ix, iy, iz = reg.index(x), reg.index(y), reg.index(z)
    acc: dict[tuple, int] = {}
    for e, c in F.items():
        i, j = e[ix], e[iy]
        base = list(e)
        base[ix] = base[iy] = 0
        base[iz] += i + j
        for l in range(j, i + 1):
            m = i
            while True:
                t = list(base)
                t[ix], t[iy] = m, l
                t = tuple(t)
                if not reg.within(t):
                    break
                acc[t] = acc.get(t, 0) + c
                m += 1
    return TruncSeries(reg, acc)


def psi(F: TruncSeries, z: str = "z", mode: Mode = Mode.RATIONAL,
        x: str = "x", y: str = "y") -> TruncSeries:
    """psi_z; the result no longer involves ``y``."""
    F = _lift(F, x, y, z)
    check_support(F, x, y)
    X, Z = Monomial.var(x), Monomial.var(z)
    if Mode(mode) is Mode.RATIONAL:
        a = F.substitute({x: Z, y: X * Z})
        b = F.substitute({x: X * Z, y: Z}).mul_monomial(X)
        return (a - b).div_one_minus(X)
    reg = F.registry
    ix, iy, iz = reg.index(x), reg.index(y), reg.index(z)
    acc: dict[tuple, int] = {}
    for e, c in F.items():
        i, j = e[ix], e[iy]
        base = list(e)
        base[ix] = base[iy] = 0
        base[iz] += i + j
        for l in range(j, i + 1):
            t = list(base)
            t[ix] = l
            t = tuple(t)
            if reg.within(t):
                acc[t] = acc.get(t, 0) + c
    return TruncSeries(reg, acc)


# ---------------------------------------------------------------------------
# compositions
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class BarExtensionResult:
    series: TruncSeries
    n: int
    specialization: str = "none"
    z_names: tuple[str, ...] = field(default=())


def z_names(n: int, prefix: str = "z") -> tuple[str, ...]:
    return tuple(f"{prefix}{t}" for t in range(1, n + 1))


def drop_unused(F: TruncSeries, keep: Sequence[str]) -> TruncSeries:
    """Re-index onto the variables ``keep``; the others must not occur."""
    reg = F.registry
    extra = F.support_vars() - set(keep)
    if extra:
        raise DomainError(f"variables {sorted(extra)} still occur")
    idx = [reg.index(n) for n in keep]
    sub = VarRegistry(tuple(keep), reg.degree, tuple(reg.weights[i] for i in idx),
                      tuple(reg.caps[i] for i in idx))
    return TruncSeries(sub, {tuple(e[i] for i in idx): c for e, c in F.items()})


def compose_bar(F: TruncSeries, n: int, specialization: str = "none",
                mode: Mode = Mode.RATIONAL) -> BarExtensionResult:
    """``psi_{z_n} phi_{z_(n-1)} ... phi_{z_1} F``; ``n = 1`` is psi alone.

    ``tf`` sets every z to q, ``pf`` additionally sets x to q.  When
    specialized, q is used in place of each z from the start."""
    if n < 1:
        raise DomainError("composition needs n >= 1")
    if specialization not in SPECIALIZATIONS:
        raise ConfigurationError(f"unknown specialization {specialization!r}")
    if specialization == "none":
        zs = z_names(n)
        clash = [z for z in zs if z in F.registry]
        if clash:
            raise ConfigurationError(f"operator variables {clash} already in use")
        G = _lift(F, "x", "y", *zs)
    else:
        zs = ("q",) * n
        G = _lift(F, "x", "y", "q")
    for t in range(n - 1):
        G = phi(G, zs[t], mode)
    G = psi(G, zs[-1], mode)
    if specialization == "pf":
        keep = [v for v in G.registry.names if v not in ("x", "y")]
        G = drop_unused(G.substitute({"x": "q"}), keep)
    return BarExtensionResult(G, n, specialization, zs if specialization == "none" else ())


def thm12_rhs(F: TruncSeries, n: int) -> TruncSeries:
    """Closed expression for the n-fold composition (n >= 2), expanded in the
    registry of ``F`` extended by ``z1..zn``."""
    if n < 2:
        raise DomainError("the closed composition identity needs n >= 2")
    zs = z_names(n)
    G = _lift(F, "x", "y", *zs)
    Z = Monomial()
    for z in zs:
        Z = Z * Monomial.var(z)
    X = Monomial.var("x")
    out = G.substitute({"x": Z, "y": X * Z}) - G.substitute({"x": X * Z, "y": Z}).mul_monomial(X)
    out = out.div_one_minus(X)
    for t in range(2, n + 1):
        tail = Monomial()
        for z in zs[t - 1:]:
            tail = tail * Monomial.var(z)
        out = out.div_one_minus(X * tail).div_one_minus(tail)
    return out


# ---------------------------------------------------------------------------
# specializations, series and symbolic
# ---------------------------------------------------------------------------

def _q(e: int) -> Monomial:
    return Monomial.var("q", e)


def cor35_tf(F, n: int):
    """``[F(q^n, x q^n) - x F(x q^n, q^n)] / ((x;q)_n (q;q)_(n-1))``.

    A TruncSeries goes through :func:`compose_bar`; a ClosedForm/ClosedSum
    is transformed symbolically."""
    if n < 1:
        raise DomainError("needs n >= 1")
    if isinstance(F, TruncSeries):
        return compose_bar(F, n, "tf").series
    X = Monomial.var("x")
    a = F.substitute({"x": _q(n), "y": X * _q(n)})
    b = F.substitute({"x": X * _q(n), "y": _q(n)}) * X
    den = pochhammer(X, n) * qfact(n - 1)
    return (a - b) * den.reciprocal()


def cor35_pf(F, n: int):
    """``[F(q^n, q^(n+1)) - q F(q^(n+1), q^n)] / ((q;q)_n (q;q)_(n-1))``."""
    if n < 1:
        raise DomainError("needs n >= 1")
    if isinstance(F, TruncSeries):
        return compose_bar(F, n, "pf").series
    a = F.substitute({"x": _q(n), "y": _q(n + 1)})
    b = F.substitute({"x": _q(n + 1), "y": _q(n)}) * _q(1)
    den = qfact(n) * qfact(n - 1)
    return (a - b) * den.reciprocal()


# ---------------------------------------------------------------------------
# trace bookkeeping on the extended poset
# ---------------------------------------------------------------------------

@dataclass
class TraceReport:
    ok: bool
    terms: int
    mismatches: list = field(default_factory=list)
    enumerated: int = 0


def trace_weights(base: Poset, n: int) -> tuple[Poset, list[Monomial]]:
    """Extended poset and per-element weights: ``e_n -> x``,
    ``a_k, e_k -> z_(k+1)`` for ``k < n``, ``A, B -> z_1``, rest ``-> q``."""
    Q, a_idx, e_idx = extend_bar_indexed(base, n)
    w = [Monomial.var("q")] * Q.p
    for lab in (base.labels[base.A],) + ((base.labels[base.B],) if base.B is not None else ()):
        w[Q.index(lab)] = Monomial.var("z1")
    for k in range(1, n):
        w[a_idx[k - 1]] = Monomial.var(f"z{k + 1}")
        w[e_idx[k - 1]] = Monomial.var(f"z{k + 1}")
    w[e_idx[n - 1]] = Monomial.var("x")
    return Q, w


def thm34_trace_check(base: Poset, n: int, D: int = 10, max_p: int = 6) -> TraceReport:
    """Enumerate P-partitions of the bar extension of ``base`` one by one and
    compare the trace-weighted sum with the operator composition applied to
    the base's generating function in A, B."""
    if base.p > max_p:
        raise DomainError(f"base poset larger than {max_p} elements")
    if n < 1 or n > 3:
        raise DomainError("trace check is limited to 1 <= n <= 3")
    Q, w = trace_weights(base, n)
    reg = VarRegistry.graded(("x", "y", "q") + z_names(n), D)
    acc: dict[tuple, int] = {}
    count = 0
    wexp = [reg.exp_of(m) for m in w]
    for sigma in iter_p_partitions(Q, max_sum=D):
        count += 1
        e = [0] * reg.nvars
        for s, v in enumerate(sigma.values):
            if v:
                for i, x in enumerate(wexp[s]):
                    e[i] += v * x
        e = tuple(e)
        acc[e] = acc.get(e, 0) + 1
    direct = TruncSeries(reg, acc)
    F = fgen_oracle(base, D, registry=VarRegistry.graded(("x", "y", "q"), D))
    via_ops = compose_bar(F, n).series
    via_ops = via_ops.embed(reg) if via_ops.registry != reg else via_ops
    bad = direct.difference(via_ops, limit=10)
    return TraceReport(not bad, len(direct), bad, count)


# ---------------------------------------------------------------------------
# random inputs
# ---------------------------------------------------------------------------

def random_base_series(rng: random.Random, registry: VarRegistry, max_i: int = 6,
                       nterms: int | None = None, q_power: int = 0) -> TruncSeries:
    """Random F with support on ``i >= j``, ``i <= max_i``, coefficients in
    -3..3 and optionally a q power up to ``q_power`` on each term."""
    support = [(i, j) for i in range(max_i + 1) for j in range(i + 1)]
    k = nterms if nterms is not None else rng.randint(1, len(support))
    picks = rng.sample(support, min(k, len(support)))
    ix, iy = registry.index("x"), registry.index("y")
    iq = registry.index("q") if q_power else None
    acc: dict[tuple, int] = {}
    for i, j in picks:
        c = rng.randint(-3, 3)
        if not c:
            continue
        e = [0] * registry.nvars
        e[ix], e[iy] = i, j
        if iq is not None:
            e[iq] = rng.randint(0, q_power)
        acc[tuple(e)] = acc.get(tuple(e), 0) + c
    return TruncSeries(registry, acc)


def operator_registry(D: int, n: int = 0, with_q: bool = True) -> VarRegistry:
    names = ("x", "y") + (("q",) if with_q else ()) + z_names(n)
    return VarRegistry.graded(names, D)


def expand(F: GF | TruncSeries, registry: VarRegistry) -> TruncSeries:
    if isinstance(F, TruncSeries):
        return F
    return closed_eval(F, registry)
