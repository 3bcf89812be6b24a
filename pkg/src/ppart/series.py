"""Exact truncated multivariate power series and structured closed forms.

A :class:`TruncSeries` is a finite map from exponent vectors to Python
integers, relative to a :class:`VarRegistry` that fixes the variable order
and the truncation region.  The region is always downward closed (weighted
total degree <= ``degree`` plus optional per-variable caps), which makes
products, geometric division by ``1 - m`` and degree-non-decreasing monomial
substitutions exact on every retained coefficient.

A :class:`ClosedForm` is ``numerator * prod (1 - m_i)**k_i`` with an integer
polynomial numerator; :class:`ClosedSum` is a formal sum of those.  Neither is
ever simplified symbolically; equality is checked after expansion.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from math import comb, factorial
from typing import Iterable, Iterator, Mapping, Sequence, Union

from .errors import ConfigurationError, DomainError, InconsistencyError


# ---------------------------------------------------------------------------
# monomials
# ---------------------------------------------------------------------------

class Monomial:
    """Immutable product of named variables with nonnegative exponents."""

    __slots__ = ("_items", "_hash")

    def __init__(self, exps: Mapping[str, int] | Iterable[tuple[str, int]] = ()):
        items = dict(exps)
        for name, e in items.items():
            if e < 0:
                raise DomainError(f"negative exponent {e} for {name!r}")
        self._items = tuple(sorted((k, int(v)) for k, v in items.items() if v))
        self._hash = hash(self._items)

    @classmethod
    def of(cls, **exps: int) -> "Monomial":
        return cls(exps)

    @classmethod
    def var(cls, name: str, e: int = 1) -> "Monomial":
        return cls({name: e})

    @property
    def items(self) -> tuple[tuple[str, int], ...]:
        return self._items

    def as_dict(self) -> dict[str, int]:
        return dict(self._items)

    def __getitem__(self, name: str) -> int:
        for k, v in self._items:
            if k == name:
                return v
        return 0

    def variables(self) -> set[str]:
        return {k for k, _ in self._items}

    def is_one(self) -> bool:
        return not self._items

    def __mul__(self, other: "Monomial") -> "Monomial":
        if not isinstance(other, Monomial):
            return NotImplemented
        d = dict(self._items)
        for k, v in other._items:
            d[k] = d.get(k, 0) + v
        return Monomial(d)

    def __pow__(self, e: int) -> "Monomial":
        if e < 0:
            raise DomainError("monomials have no inverses here")
        return Monomial({k: v * e for k, v in self._items})

    def substitute(self, mapping: Mapping[str, "Monomial"]) -> "Monomial":
        out = Monomial()
        for k, v in self._items:
            out = out * (mapping[k] ** v if k in mapping else Monomial({k: v}))
        return out

    def __eq__(self, other):
        return isinstance(other, Monomial) and self._items == other._items

    def __lt__(self, other: "Monomial") -> bool:
        return self._items < other._items

    def __hash__(self):
        return self._hash

    def __repr__(self):
        if not self._items:
            return "1"
        return "*".join(k if v == 1 else f"{k}^{v}" for k, v in self._items)


ONE = Monomial()


def as_monomial(m: Union[Monomial, str, int]) -> Monomial:
    """Accept a Monomial, a variable name, or the integer 1."""
    if isinstance(m, Monomial):
        return m
    if isinstance(m, str):
        return Monomial.var(m)
    if m == 1:
        return ONE
    raise DomainError(f"cannot interpret {m!r} as a monomial")


# ---------------------------------------------------------------------------
# registries
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class VarRegistry:
    """Variable order plus truncation region.

    A term with exponent vector ``e`` is kept iff
    ``sum(w_i * e_i) <= degree`` and ``e_i <= caps[i]`` for every finite cap.
    Zero-weight variables need a finite cap so the region stays finite.
    """

    names: tuple[str, ...]
    degree: int
    weights: tuple[int, ...]
    caps: tuple[int | None, ...]

    def __post_init__(self):
        if len(set(self.names)) != len(self.names):
            raise ConfigurationError(f"duplicate variable names in {self.names}")
        if not (len(self.weights) == len(self.caps) == len(self.names)):
            raise ConfigurationError("weights/caps must align with names")
        if self.degree < 0:
            raise ConfigurationError("degree cap must be nonnegative")
        for name, w, c in zip(self.names, self.weights, self.caps):
            if w < 0 or (c is not None and c < 0):
                raise ConfigurationError(f"bad weight/cap for {name!r}")
            if w == 0 and c is None:
                raise ConfigurationError(f"zero-weight variable {name!r} needs a cap")

    @classmethod
    def graded(cls, names: Sequence[str], degree: int,
               weights: Mapping[str, int] | None = None,
               caps: Mapping[str, int | None] | None = None) -> "VarRegistry":
        weights = weights or {}
        caps = caps or {}
        names = tuple(names)
        return cls(names, degree,
                   tuple(weights.get(n, 1) for n in names),
                   tuple(caps.get(n) for n in names))

    @property
    def nvars(self) -> int:
        return len(self.names)

    def index(self, name: str) -> int:
        try:
            return self.names.index(name)
        except ValueError:
            raise ConfigurationError(f"variable {name!r} not in registry {self.names}") from None

    def __contains__(self, name: str) -> bool:
        return name in self.names

    def wdeg(self, exp: Sequence[int]) -> int:
        return sum(w * e for w, e in zip(self.weights, exp))

    def within(self, exp: Sequence[int]) -> bool:
        if self.wdeg(exp) > self.degree:
            return False
        for e, c in zip(exp, self.caps):
            if c is not None and e > c:
                return False
        return True

    def exp_of(self, m: Monomial) -> tuple[int, ...]:
        out = [0] * self.nvars
        for k, v in m.items:
            out[self.index(k)] = v
        return tuple(out)

    def monomial(self, exp: Sequence[int]) -> Monomial:
        return Monomial(zip(self.names, exp))

    def zero_exp(self) -> tuple[int, ...]:
        return (0,) * self.nvars

    def extend(self, names: Iterable[str], weight: int = 1, cap: int | None = None) -> "VarRegistry":
        new = [n for n in names if n not in self.names]
        return VarRegistry(self.names + tuple(new), self.degree,
                           self.weights + (weight,) * len(new),
                           self.caps + (cap,) * len(new))

    def with_degree(self, degree: int) -> "VarRegistry":
        return VarRegistry(self.names, degree, self.weights, self.caps)

    def to_json(self) -> dict:
        return {"degree": self.degree,
                "weights": dict(zip(self.names, self.weights)),
                "per_var": {n: c for n, c in zip(self.names, self.caps) if c is not None}}


def q_registry(degree: int, q: str = "q") -> VarRegistry:
    return VarRegistry.graded((q,), degree)


# ---------------------------------------------------------------------------
# truncated series
# ---------------------------------------------------------------------------

def _add_exp(a, b):
    return tuple(x + y for x, y in zip(a, b))


class TruncSeries:
    """Truncated power series with integer coefficients.  Immutable."""

    __slots__ = ("registry", "_terms")

    def __init__(self, registry: VarRegistry, terms: Mapping[tuple, int] | None = None,
                 *, _trusted: bool = False):
        self.registry = registry
        if _trusted:
            self._terms = terms
            return
        clean = {}
        for e, c in (terms or {}).items():
            e = tuple(e)
            if len(e) != registry.nvars:
                raise ConfigurationError(f"exponent {e} does not match registry {registry.names}")
            if c and registry.within(e):
                clean[e] = clean.get(e, 0) + int(c)
        self._terms = {e: c for e, c in clean.items() if c}

    # construction -----------------------------------------------------------
    @classmethod
    def zero(cls, registry: VarRegistry) -> "TruncSeries":
        return cls(registry, {}, _trusted=True)

    @classmethod
    def one(cls, registry: VarRegistry) -> "TruncSeries":
        return cls.monomial(registry, ONE)

    @classmethod
    def monomial(cls, registry: VarRegistry, m: Monomial | str, coef: int = 1) -> "TruncSeries":
        return cls(registry, {registry.exp_of(as_monomial(m)): coef})

    @classmethod
    def from_monomials(cls, registry: VarRegistry,
                       pairs: Iterable[tuple[Monomial, int]]) -> "TruncSeries":
        acc: dict[tuple, int] = {}
        for m, c in pairs:
            e = registry.exp_of(m)
            acc[e] = acc.get(e, 0) + c
        return cls(registry, acc)

    # access -----------------------------------------------------------------
    @property
    def terms(self) -> list[tuple[tuple[int, ...], int]]:
        """Terms sorted lexicographically by exponent vector."""
        return sorted(self._terms.items())

    def items(self):
        return self._terms.items()

    def __len__(self):
        return len(self._terms)

    def __iter__(self) -> Iterator[tuple[int, ...]]:
        return iter(sorted(self._terms))

    def coeff(self, m: Monomial | Sequence[int]) -> int:
        e = self.registry.exp_of(m) if isinstance(m, Monomial) else tuple(m)
        return self._terms.get(e, 0)

    def constant(self) -> int:
        return self._terms.get(self.registry.zero_exp(), 0)

    def support_vars(self) -> set[str]:
        used = set()
        for e in self._terms:
            used.update(n for n, x in zip(self.registry.names, e) if x)
        return used

    def coefficients(self, var: str | None = None) -> list[int]:
        """Dense coefficient list of a series in a single variable."""
        reg = self.registry
        if var is None:
            if reg.nvars != 1:
                raise ConfigurationError("coefficients() needs a variable for multivariate series")
            var = reg.names[0]
        i = reg.index(var)
        top = reg.degree // reg.weights[i] if reg.weights[i] else reg.caps[i]
        if reg.caps[i] is not None:
            top = min(top, reg.caps[i])
        out = [0] * (top + 1)
        for e, c in self._terms.items():
            if any(x for j, x in enumerate(e) if j != i):
                raise ConfigurationError(f"series is not univariate in {var!r}")
            out[e[i]] = c
        return out

    # arithmetic -------------------------------------------------------------
    def _check(self, other: "TruncSeries"):
        if not isinstance(other, TruncSeries):
            raise ConfigurationError(f"cannot combine series with {type(other).__name__}")
        if other.registry != self.registry:
            raise ConfigurationError("series live over different registries")

    def __add__(self, other: "TruncSeries") -> "TruncSeries":
        self._check(other)
        acc = dict(self._terms)
        for e, c in other._terms.items():
            v = acc.get(e, 0) + c
            if v:
                acc[e] = v
            else:
                acc.pop(e, None)
        return TruncSeries(self.registry, acc, _trusted=True)

    def __neg__(self) -> "TruncSeries":
        return TruncSeries(self.registry, {e: -c for e, c in self._terms.items()}, _trusted=True)

    def __sub__(self, other: "TruncSeries") -> "TruncSeries":
        return self + (-other)

    def scale(self, k: int) -> "TruncSeries":
        if k == 0:
            return TruncSeries.zero(self.registry)
        return TruncSeries(self.registry, {e: k * c for e, c in self._terms.items()}, _trusted=True)

    def __mul__(self, other):
        if isinstance(other, int):
            return self.scale(other)
        if isinstance(other, Monomial):
            return self.mul_monomial(other)
        return mul(self, other)

    __rmul__ = __mul__

    def mul_monomial(self, m: Monomial | str, coef: int = 1) -> "TruncSeries":
        reg = self.registry
        d = reg.exp_of(as_monomial(m))
        acc = {}
        for e, c in self._terms.items():
            t = _add_exp(e, d)
            if reg.within(t):
                acc[t] = c * coef
        return TruncSeries(reg, acc, _trusted=True)

    def div_one_minus(self, m: Monomial | str, power: int = 1) -> "TruncSeries":
        """Multiply by ``(1 - m)**(-power)``, i.e. repeated geometric summation."""
        reg = self.registry
        d = reg.exp_of(as_monomial(m))
        if not any(d):
            raise DomainError("cannot divide by 1 - 1")
        out = self
        for _ in range(power):
            acc: dict[tuple, int] = {}
            for e, c in out._terms.items():
                t = e
                while reg.within(t):
                    v = acc.get(t, 0) + c
                    if v:
                        acc[t] = v
                    else:
                        del acc[t]
                    t = _add_exp(t, d)
            out = TruncSeries(reg, acc, _trusted=True)
        return out

    def mul_one_minus(self, m: Monomial | str, power: int = 1) -> "TruncSeries":
        out = self
        for _ in range(power):
            out = out - out.mul_monomial(m)
        return out

    def substitute(self, mapping: Mapping[str, Monomial | str | int],
                   registry: VarRegistry | None = None, exact: bool = True) -> "TruncSeries":
        return substitute(self, mapping, registry, exact)

    def embed(self, registry: VarRegistry) -> "TruncSeries":
        """Re-index over a registry containing all of this series' variables."""
        src = self.registry
        idx = [registry.index(n) for n in src.names]
        acc = {}
        for e, c in self._terms.items():
            t = [0] * registry.nvars
            for i, x in zip(idx, e):
                t[i] = x
            acc[tuple(t)] = c
        return TruncSeries(registry, acc)

    def truncate(self, registry: VarRegistry) -> "TruncSeries":
        """Restrict to a smaller region over the same variable order."""
        if registry.names != self.registry.names:
            raise ConfigurationError("truncate() keeps the variable order")
        return TruncSeries(registry, self._terms)

    # comparison / io --------------------------------------------------------
    def __eq__(self, other):
        if isinstance(other, int):
            return self == TruncSeries.one(self.registry).scale(other)
        if not isinstance(other, TruncSeries):
            return NotImplemented
        return self.registry == other.registry and self._terms == other._terms

    def __hash__(self):
        return hash((self.registry, frozenset(self._terms.items())))

    def difference(self, other: "TruncSeries", limit: int = 5) -> list[tuple[Monomial, int, int]]:
        """First few (monomial, ours, theirs) disagreements, for diagnostics."""
        self._check(other)
        bad = []
        for e in sorted(set(self._terms) | set(other._terms)):
            a, b = self._terms.get(e, 0), other._terms.get(e, 0)
            if a != b:
                bad.append((self.registry.monomial(e), a, b))
                if len(bad) >= limit:
                    break
        return bad

    def __repr__(self):
        if not self._terms:
            return "TruncSeries(0)"
        parts = []
        for e, c in self.terms[:12]:
            m = self.registry.monomial(e)
            parts.append(f"{c}" if m.is_one() else f"{c}*{m}")
        more = " + ..." if len(self._terms) > 12 else ""
        return "TruncSeries(" + " + ".join(parts) + more + ")"

    def to_json(self) -> dict:
        return {"vars": list(self.registry.names),
                "caps": self.registry.to_json(),
                "terms": [{"exp": list(e), "coef": str(c)} for e, c in self.terms]}

    @classmethod
    def from_json(cls, data: Mapping | str) -> "TruncSeries":
        if isinstance(data, str):
            data = json.loads(data)
        names = tuple(data["vars"])
        caps = data.get("caps", {})
        degree = caps.get("degree")
        if degree is None:
            degree = max((sum(t["exp"]) for t in data["terms"]), default=0)
        reg = VarRegistry.graded(names, degree, caps.get("weights"), caps.get("per_var"))
        return cls(reg, {tuple(t["exp"]): int(t["coef"]) for t in data["terms"]})


# module-level operations ------------------------------------------------------

def mul(a: TruncSeries, b: TruncSeries) -> TruncSeries:
    """Exact product truncated to the common region."""
    a._check(b)
    reg = a.registry
    if len(a) > len(b):
        a, b = b, a
    bs = sorted(((reg.wdeg(e), e, c) for e, c in b._terms.items()), key=lambda t: t[0])
    capped = [(i, c) for i, c in enumerate(reg.caps) if c is not None]
    acc: dict[tuple, int] = {}
    for ea, ca in a._terms.items():
        budget = reg.degree - reg.wdeg(ea)
        for db, eb, cb in bs:
            if db > budget:
                break
            t = _add_exp(ea, eb)
            if any(t[i] > c for i, c in capped):
                continue
            acc[t] = acc.get(t, 0) + ca * cb
    return TruncSeries(reg, {e: c for e, c in acc.items() if c}, _trusted=True)


def inv(f: TruncSeries) -> TruncSeries:
    """Multiplicative inverse of a series whose constant term is +1 or -1."""
    c0 = f.constant()
    if c0 not in (1, -1):
        raise DomainError(f"constant term {c0} is not a unit")
    reg = f.registry
    one = TruncSeries.one(reg)
    h = one - f.scale(c0)          # f = c0 * (1 - h), h has no constant term
    g = one
    for _ in range(10 * (reg.degree + 1 + sum(c or 0 for c in reg.caps)) + 10):
        nxt = one + mul(h, g)
        if nxt == g:
            return g.scale(c0)
        g = nxt
    raise InconsistencyError("geometric inversion did not stabilise")


def _substitution_is_exact(src: VarRegistry, images: dict[str, tuple], dst: VarRegistry) -> str | None:
    """Return a reason string if some kept target coefficient could depend on a
    source term that was already truncated away."""
    if dst.degree > src.degree and any(w for w in src.weights):
        return f"target degree {dst.degree} exceeds source degree {src.degree}"
    for name, w, cap in zip(src.names, src.weights, src.caps):
        img = images[name]
        deg = dst.wdeg(img)
        if deg < w:
            return f"image of {name!r} has weighted degree {deg} < {w}"
        if cap is not None:
            bounds = [c // e for e, c in zip(img, dst.caps) if e and c is not None]
            if deg:
                bounds.append(dst.degree // deg)
            if not bounds or min(bounds) > cap:
                return f"exponent of {name!r} is not bounded by its cap {cap} after substitution"
    return None


def substitute(f: TruncSeries, mapping: Mapping[str, Monomial | str | int],
               registry: VarRegistry | None = None, exact: bool = True) -> TruncSeries:
    """Monomial substitution ``v -> mapping[v]``; unmapped variables map to
    themselves.  With ``exact`` the call refuses substitutions under which a
    retained coefficient could depend on truncated input terms."""
    src = f.registry
    dst = registry or src
    images = {}
    for name in src.names:
        m = as_monomial(mapping[name]) if name in mapping else Monomial.var(name)
        images[name] = dst.exp_of(m)
    for name in mapping:
        if name not in src.names:
            raise ConfigurationError(f"substituted variable {name!r} not in registry")
    if exact:
        why = _substitution_is_exact(src, images, dst)
        if why:
            raise DomainError(f"substitution would not be exact: {why}")
    cols = [images[n] for n in src.names]
    acc: dict[tuple, int] = {}
    for e, c in f._terms.items():
        t = [0] * dst.nvars
        for a, img in zip(e, cols):
            if a:
                for j, x in enumerate(img):
                    if x:
                        t[j] += a * x
        t = tuple(t)
        if dst.within(t):
            acc[t] = acc.get(t, 0) + c
    return TruncSeries(dst, {e: c for e, c in acc.items() if c}, _trusted=True)


# ---------------------------------------------------------------------------
# closed forms
# ---------------------------------------------------------------------------

Poly = dict  # Monomial -> int


def _poly_mul(a: Mapping[Monomial, int], b: Mapping[Monomial, int]) -> dict[Monomial, int]:
    out: dict[Monomial, int] = {}
    for ma, ca in a.items():
        for mb, cb in b.items():
            m = ma * mb
            out[m] = out.get(m, 0) + ca * cb
    return {m: c for m, c in out.items() if c}


def poly(*terms: tuple[int, Monomial | str | int]) -> dict[Monomial, int]:
    """``poly((1, 1), (-1, 'q'), (1, q**3))`` -> 1 - q + q^3."""
    out: dict[Monomial, int] = {}
    for c, m in terms:
        m = as_monomial(m)
        out[m] = out.get(m, 0) + c
    return {m: c for m, c in out.items() if c}


class ClosedForm:
    """``numerator * prod (1 - m)**k`` with integer numerator polynomial."""

    __slots__ = ("numerator", "factors")

    def __init__(self, numerator: Mapping[Monomial, int] | int = 1,
                 factors: Iterable[tuple[Monomial | str, int]] = ()):
        if isinstance(numerator, int):
            numerator = {ONE: numerator} if numerator else {}
        num = {as_monomial(m): int(c) for m, c in numerator.items() if c}
        acc: dict[Monomial, int] = {}
        for m, k in factors:
            m = as_monomial(m)
            if m.is_one():
                raise DomainError("factor (1 - 1) has a vanishing constant term")
            acc[m] = acc.get(m, 0) + int(k)
        self.numerator = tuple(sorted(num.items()))
        self.factors = tuple(sorted((m, k) for m, k in acc.items() if k))

    @classmethod
    def factor(cls, m: Monomial | str, k: int = 1) -> "ClosedForm":
        return cls(1, [(m, k)])

    @classmethod
    def monomial(cls, m: Monomial | str, coef: int = 1) -> "ClosedForm":
        return cls({as_monomial(m): coef})

    def variables(self) -> set[str]:
        out = set()
        for m, _ in self.numerator:
            out |= m.variables()
        for m, _ in self.factors:
            out |= m.variables()
        return out

    def __mul__(self, other):
        if isinstance(other, ClosedSum):
            return ClosedSum(self * t for t in other.terms)
        if isinstance(other, int):
            return ClosedForm({m: c * other for m, c in self.numerator}, self.factors)
        if isinstance(other, Monomial):
            return ClosedForm({m * other: c for m, c in self.numerator}, self.factors)
        if isinstance(other, ClosedForm):
            return ClosedForm(_poly_mul(dict(self.numerator), dict(other.numerator)),
                              self.factors + other.factors)
        return NotImplemented

    __rmul__ = __mul__

    def __neg__(self):
        return self * -1

    def __add__(self, other):
        if isinstance(other, ClosedForm):
            return ClosedSum([self, other])
        if isinstance(other, ClosedSum):
            return ClosedSum((self,) + other.terms)
        return NotImplemented

    def __sub__(self, other):
        return self + (-other)

    def reciprocal(self) -> "ClosedForm":
        if self.numerator not in (((ONE, 1),), ((ONE, -1),)):
            raise DomainError("only closed forms with numerator +-1 can be inverted")
        return ClosedForm(self.numerator[0][1], [(m, -k) for m, k in self.factors])

    def substitute(self, mapping: Mapping[str, Monomial | str | int]) -> "ClosedForm":
        mp = {k: as_monomial(v) for k, v in mapping.items()}
        num: dict[Monomial, int] = {}
        for m, c in self.numerator:
            t = m.substitute(mp)
            num[t] = num.get(t, 0) + c
        return ClosedForm(num, [(m.substitute(mp), k) for m, k in self.factors])

    def expand(self, registry: VarRegistry) -> TruncSeries:
        return closed_eval(self, registry)

    def __eq__(self, other):
        return (isinstance(other, ClosedForm) and self.numerator == other.numerator
                and self.factors == other.factors)

    def __hash__(self):
        return hash((self.numerator, self.factors))

    def __repr__(self):
        num = " + ".join(f"{c}*{m}" for m, c in self.numerator) or "0"
        den = " ".join(f"(1-{m})^{k}" for m, k in self.factors)
        return f"ClosedForm(({num}) {den})"

    def to_json(self) -> dict:
        return {"numerator": [{"mono": m.as_dict(), "coef": str(c)} for m, c in self.numerator],
                "factors": [{"mono": m.as_dict(), "exp": k} for m, k in self.factors]}

    @classmethod
    def from_json(cls, data: Mapping) -> "ClosedForm":
        return cls({Monomial(t["mono"]): int(t["coef"]) for t in data["numerator"]},
                   [(Monomial(f["mono"]), int(f["exp"])) for f in data["factors"]])


class ClosedSum:
    """Formal sum of closed forms, combined only at expansion time."""

    __slots__ = ("terms",)

    def __init__(self, terms: Iterable[ClosedForm]):
        flat: list[ClosedForm] = []
        for t in terms:
            flat.extend(t.terms if isinstance(t, ClosedSum) else [t])
        self.terms = tuple(flat)

    def variables(self) -> set[str]:
        return set().union(*(t.variables() for t in self.terms)) if self.terms else set()

    def __add__(self, other):
        if isinstance(other, (ClosedForm, ClosedSum)):
            return ClosedSum([self, other])
        return NotImplemented

    __radd__ = __add__

    def __mul__(self, other):
        if isinstance(other, (int, Monomial, ClosedForm)):
            return ClosedSum(t * other for t in self.terms)
        return NotImplemented

    __rmul__ = __mul__

    def __neg__(self):
        return self * -1

    def __sub__(self, other):
        return self + (-other)

    def substitute(self, mapping) -> "ClosedSum":
        return ClosedSum(t.substitute(mapping) for t in self.terms)

    def expand(self, registry: VarRegistry) -> TruncSeries:
        return closed_eval(self, registry)

    def __repr__(self):
        return "ClosedSum(" + " + ".join(map(repr, self.terms)) + ")"

    def to_json(self) -> dict:
        return {"terms": [t.to_json() for t in self.terms]}

    @classmethod
    def from_json(cls, data: Mapping) -> "ClosedSum":
        return cls(ClosedForm.from_json(t) for t in data["terms"])


GF = Union[ClosedForm, ClosedSum]


def closed_from_json(data: Mapping) -> GF:
    return ClosedSum.from_json(data) if "terms" in data else ClosedForm.from_json(data)


def pochhammer(m: Monomial | str, n: int, q: str = "q") -> ClosedForm:
    """``(m; q)_n = (1 - m)(1 - m q) ... (1 - m q^(n-1))``."""
    if n < 0:
        raise DomainError("pochhammer length must be >= 0")
    m = as_monomial(m)
    if n and m.is_one():
        raise DomainError("(1; q)_n vanishes")
    return ClosedForm(1, [(m * Monomial.var(q, t), 1) for t in range(n)])


def qfact(n: int, q: str = "q") -> ClosedForm:
    """``(q; q)_n``."""
    return pochhammer(Monomial.var(q), n, q)


def closed_eval(cf: GF, registry: VarRegistry) -> TruncSeries:
    """Expand a closed form (or a sum of them) exactly inside ``registry``."""
    if isinstance(cf, ClosedSum):
        out = TruncSeries.zero(registry)
        for t in cf.terms:
            out = out + closed_eval(t, registry)
        return out
    for m, _ in cf.factors:
        if not any(registry.exp_of(m)):
            raise DomainError(f"factor (1 - {m}) has a constant term")
    s = TruncSeries.from_monomials(registry, cf.numerator)
    for m, k in cf.factors:
        if k > 0:
            s = s.mul_one_minus(m, k)
    for m, k in cf.factors:
        if k < 0:
            s = s.div_one_minus(m, -k)
    return s


# ---------------------------------------------------------------------------
# the q -> 1 limit behind e(P) = p! ((1-q)^p PF)|_{q=1}
# ---------------------------------------------------------------------------

def _ps_mul(a: list, b: list, order: int) -> list:
    out = [Fraction(0)] * (order + 1)
    for i, x in enumerate(a[:order + 1]):
        if x:
            for j, y in enumerate(b[:order + 1 - i]):
                out[i + j] += x * y
    return out


def _ps_inv(a: list, order: int) -> list:
    out = [Fraction(0)] * (order + 1)
    out[0] = Fraction(1) / a[0]
    for n in range(1, order + 1):
        s = sum(a[k] * out[n - k] for k in range(1, min(n, len(a) - 1) + 1))
        out[n] = -s / a[0]
    return out


def _ps_pow(a: list, k: int, order: int) -> list:
    if k < 0:
        a, k = _ps_inv(a, order), -k
    out = [Fraction(1)] + [Fraction(0)] * order
    for _ in range(k):
        out = _ps_mul(out, a, order)
    return out


def _laurent_at_one(cf: ClosedForm, q: str, order: int) -> tuple[int, list]:
    """Write ``cf`` at ``q = 1 - t`` as ``t**s * R(t)`` with ``R(0)`` finite;
    return ``s`` and the coefficients of ``R`` up to ``t**order``."""
    s = 0
    r = [Fraction(0)] * (order + 1)
    for m, c in cf.numerator:
        if m.variables() - {q}:
            raise DomainError(f"numerator monomial {m} is not a pure power of {q}")
        d = m[q]
        for j in range(0, min(d, order) + 1):
            r[j] += c * comb(d, j) * (-1) ** j
    for m, k in cf.factors:
        if m.variables() != {q}:
            raise DomainError(f"factor (1 - {m}) is not of the form (1 - {q}^a)")
        a = m[q]
        # 1 - (1-t)^a = t * [a](1-t),  [a](1-t) = sum_j C(a, j+1) (-t)^j
        bracket = [Fraction(comb(a, j + 1) * (-1) ** j) for j in range(min(a, order + 1))]
        bracket += [Fraction(0)] * (order + 1 - len(bracket))
        r = _ps_mul(r, _ps_pow(bracket, k, order), order)
        s += k
    return s, r


def extract_e_limit(pf: GF, p: int, q: str = "q") -> int:
    """``p! * lim_{q->1} (1-q)^p pf`` computed exactly.

    Each summand is expanded around ``q = 1`` separately; poles of individual
    summands may cancel in the sum.  Raises :class:`InconsistencyError` if the
    total pole order at ``q = 1`` is not exactly ``p``.
    """
    terms = pf.terms if isinstance(pf, ClosedSum) else (pf,)
    # shifts first, to size the expansions
    shifts = []
    for t in terms:
        s = sum(k for m, k in t.factors)
        shifts.append(p + s)
    depth = max([0] + [-s for s in shifts])
    laurent: dict[int, Fraction] = {}
    for t in terms:
        s, r = _laurent_at_one(t, q, depth)
        s += p
        for j, c in enumerate(r):
            e = s + j
            if e > 0:
                break
            if c:
                laurent[e] = laurent.get(e, Fraction(0)) + c
    poles = {e: c for e, c in laurent.items() if e < 0 and c}
    if poles:
        raise InconsistencyError(f"pole of order {-min(poles)} > {p} at q=1")
    lim = laurent.get(0, Fraction(0))
    if lim == 0:
        raise InconsistencyError(f"pole order at q=1 is below {p}")
    e = lim * factorial(p)
    if e.denominator != 1 or e < 0:
        raise InconsistencyError(f"limit gives non-integer or negative count {e}")
    return int(e)
