"""Constructors for the posets studied here.

Everything beyond a handful of small base posets is produced by
:func:`extend_bar`, which glues a two-rowed tail onto a tracked pair (A, B).
The figures behind the named families are not machine readable, so each
family is rebuilt from its defining generating function and the
corresponding closed forms serve as ground truth (see the acceptance suite).
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .errors import DomainError
from .poset import Poset, build

FAMILY_PARAMS = {
    "P0": ("n", "k"),
    "P1": ("n", "m"),
    "P2": ("n", "m", "r"),
    "P3": ("n", "m", "r"),
    "P4": ("n",), "P5": ("n",), "P6": ("n",), "P7": ("n",),
    "P8": ("n", "m"),
    "P9": ("n", "k", "r"),
}


@dataclass(frozen=True)
class SkewShape:
    lam: tuple[int, ...]
    mu: tuple[int, ...] = ()

    def __post_init__(self):
        lam = tuple(int(x) for x in self.lam if x)
        mu = tuple(int(x) for x in self.mu)
        if any(b > a for a, b in zip(lam, lam[1:])) or any(x < 0 for x in lam):
            raise DomainError(f"lambda {self.lam} is not a partition")
        if len([x for x in mu if x]) > len(lam):
            raise DomainError("mu is longer than lambda")
        mu = (mu + (0,) * len(lam))[:len(lam)]
        if any(x < 0 for x in mu) or any(b > a for a, b in zip(mu, mu[1:])):
            raise DomainError(f"mu {self.mu} is not a partition")
        if any(m > l for l, m in zip(lam, mu)):
            raise DomainError("mu is not contained in lambda")
        if sum(lam) - sum(mu) < 1:
            raise DomainError("skew shape has no cells")
        object.__setattr__(self, "lam", lam)
        object.__setattr__(self, "mu", mu)

    @property
    def size(self) -> int:
        return sum(self.lam) - sum(self.mu)

    def cells(self) -> list[tuple[int, int]]:
        return [(i + 1, j) for i, (l, m) in enumerate(zip(self.lam, self.mu))
                for j in range(m + 1, l + 1)]

    def __str__(self):
        return f"{self.lam}/{self.mu}"


@dataclass(frozen=True)
class Family:
    """A named family with its parameters; unused parameters stay ``None``."""

    name: str
    n: int | None = None
    m: int | None = None
    k: int | None = None
    r: int | None = None

    def __post_init__(self):
        if self.name not in FAMILY_PARAMS:
            raise DomainError(f"unknown family {self.name!r}")
        need = FAMILY_PARAMS[self.name]
        for par in ("n", "m", "k", "r"):
            v = getattr(self, par)
            if par in need:
                if v is None:
                    raise DomainError(f"{self.name} needs parameter {par}")
                lo = 1 if par in ("n", "m") else 0
                if self.name == "P2" and par == "r":
                    lo = 1
                if v < lo:
                    raise DomainError(f"{self.name}: {par}={v} below {lo}")
            elif v is not None:
                object.__setattr__(self, par, None)

    @classmethod
    def make(cls, name: str, **params) -> "Family":
        need = FAMILY_PARAMS.get(name, ())
        return cls(name, **{k: v for k, v in params.items() if k in need and v is not None})

    def params(self) -> dict[str, int]:
        return {p: getattr(self, p) for p in FAMILY_PARAMS[self.name]}

    @property
    def size(self) -> int:
        n, m, k, r = self.n, self.m, self.k, self.r
        return {
            "P0": lambda: 2 * n + k,
            "P1": lambda: 2 * n + 2 * m - 1,
            "P2": lambda: 2 * n + 2 * m + 2 * r - 2,
            "P3": lambda: 2 * n + 2 * m + r - 1,
            "P4": lambda: 2 * n + 3, "P5": lambda: 2 * n + 3,
            "P6": lambda: 2 * n + 5, "P7": lambda: 2 * n + 5,
            "P8": lambda: 2 * n + 2 * m + 2,
            "P9": lambda: 2 * n + k + r + 2,
        }[self.name]()

    def __str__(self):
        inner = ",".join(f"{k}={v}" for k, v in self.params().items())
        return f"{self.name}({inner})"


# ---------------------------------------------------------------------------
# small posets
# ---------------------------------------------------------------------------

def _from_labelled(labels: Sequence[str], pairs: Sequence[tuple[str, str]],
                   A: str | None = None, B: str | None = None) -> Poset:
    idx = {lab: i for i, lab in enumerate(labels)}
    covers = [(idx[s], idx[t]) for s, t in pairs]
    tracked = (None if A is None else idx[A], None if B is None else idx[B])
    return build(covers, len(labels), tracked, labels)


def vertex(label: str = "A") -> Poset:
    return _from_labelled([label], [], A=label)


def chain(p: int, tracked_top: bool = True, prefix: str = "c") -> Poset:
    """p-chain ``c1 -> c2 -> ...``; ``c1`` carries the largest value."""
    labels = [f"{prefix}{i + 1}" for i in range(p)]
    pairs = list(zip(labels, labels[1:]))
    return _from_labelled(labels, pairs, A=labels[0] if tracked_top and p else None)


def two_chain() -> Poset:
    """A -> B with both tracked."""
    return _from_labelled(["A", "B"], [("A", "B")], A="A", B="B")


def antichain(p: int) -> Poset:
    return build([], p)


def P0_base(k: int) -> Poset:
    """Chain ``i >= b1 >= ... >= bk`` with the top tracked as A."""
    labels = ["A"] + [f"b{t}" for t in range(1, k + 1)]
    return _from_labelled(labels, list(zip(labels, labels[1:])), A="A")


def diamond(A: str | None = "u1", B: str | None = None) -> Poset:
    """u1 >= u2, u1 >= u3, u2 >= u4, u3 >= u4."""
    labels = ["u1", "u2", "u3", "u4"]
    pairs = [("u1", "u2"), ("u1", "u3"), ("u2", "u4"), ("u3", "u4")]
    return _from_labelled(labels, pairs, A, B)


def diamond_diag(A: str | None = "v1", B: str | None = None) -> Poset:
    """v1>=v3>=v5>=v6, v2>=v4>=v6, v1>=v2, v3>=v4, v2>=v5."""
    labels = [f"v{i}" for i in range(1, 7)]
    pairs = [("v1", "v3"), ("v3", "v5"), ("v5", "v6"), ("v2", "v4"), ("v4", "v6"),
             ("v1", "v2"), ("v3", "v4"), ("v2", "v5")]
    return _from_labelled(labels, pairs, A, B)


def ladder_base(k: int, r: int) -> Poset:
    """A >= b0 >= ... >= bk and b0 >= B >= c1 >= ... >= cr, tracking (A, B)."""
    if k < 0 or r < 0:
        raise DomainError("ladder_base needs k, r >= 0")
    bs = [f"b{t}" for t in range(k + 1)]
    cs = [f"c{t}" for t in range(1, r + 1)]
    labels = ["A"] + bs + ["B"] + cs
    pairs = [("A", "b0")] + list(zip(bs, bs[1:])) + [("b0", "B")]
    pairs += list(zip(["B"] + cs, cs))
    return _from_labelled(labels, pairs, A="A", B="B")


# ---------------------------------------------------------------------------
# the bar extension
# ---------------------------------------------------------------------------

def _fresh(labels: set[str], base: str) -> str:
    lab = base
    while lab in labels:
        lab += "'"
    return lab


def extend_bar_indexed(P: Poset, n: int) -> tuple[Poset, list[int], list[int]]:
    """:func:`extend_bar` plus the indices of ``a1..a(n-1)`` and ``e1..en``
    in the returned poset."""
    if n < 1:
        raise DomainError("bar extension needs n >= 1")
    if P.A is None:
        raise DomainError("bar extension needs a tracked vertex A")
    taken = set(P.labels)
    a_lab, e_lab = [], []
    for k in range(1, n):
        a_lab.append(_fresh(taken, f"a{k}"))
        taken.add(a_lab[-1])
    for k in range(1, n + 1):
        e_lab.append(_fresh(taken, f"e{k}"))
        taken.add(e_lab[-1])
    p = P.p
    a = list(range(p, p + n - 1))                  # a[k-1] is a_k
    e = list(range(p + n - 1, p + 2 * n - 1))      # e[k-1] is e_k
    covers = list(P.covers)
    chain_a = [P.A] + a                            # a_(n-1) -> ... -> a_1 -> A
    covers += [(chain_a[k + 1], chain_a[k]) for k in range(n - 1)]
    covers += [(e[k + 1], e[k]) for k in range(n - 1)]   # e_n -> ... -> e_1
    if P.B is not None:
        covers.append((e[0], P.B))
    covers += [(a[k - 1], e[k]) for k in range(1, n)]    # a_k -> e_(k+1)
    covers.append((P.A, e[0]))
    labels = list(P.labels) + a_lab + e_lab
    Q = build(covers, p + 2 * n - 1, (e[-1], None), labels)
    a_idx = [Q.index(l) for l in a_lab]
    e_idx = [Q.index(l) for l in e_lab]
    return Q, a_idx, e_idx


def extend_bar(P: Poset, n: int) -> Poset:
    """Attach ``a1..a(n-1)`` and ``e1..en`` subject to
    ``a(n-1) >= ... >= a1 >= A``, ``en >= ... >= e1 >= B``,
    ``ak >= e(k+1)`` and ``A >= e1``; the result tracks ``en`` as its A."""
    return extend_bar_indexed(P, n)[0]


# ---------------------------------------------------------------------------
# skew shapes
# ---------------------------------------------------------------------------

def skew(shape: SkewShape | tuple) -> Poset:
    """Cells of ``lam/mu``; each cell points to its right and lower neighbours."""
    if not isinstance(shape, SkewShape):
        lam, mu = shape if len(shape) == 2 and isinstance(shape[0], (tuple, list)) else (shape, ())
        shape = SkewShape(tuple(lam), tuple(mu))
    cells = shape.cells()
    idx = {c: i for i, c in enumerate(cells)}
    covers = []
    for (i, j), s in idx.items():
        for nb in ((i, j + 1), (i + 1, j)):
            if nb in idx:
                covers.append((s, idx[nb]))
    return build(covers, len(cells), None, [f"({i},{j})" for i, j in cells])


def rect(r: int, c: int) -> Poset:
    if r < 1 or c < 1:
        raise DomainError("rect needs r, c >= 1")
    return skew(SkewShape((c,) * r))


def family_skew_shape(fam: Family) -> SkewShape | None:
    """Skew shape named in the caption of P0-P3, else None."""
    n, m, k, r = fam.n, fam.m, fam.k, fam.r
    if fam.name == "P0":
        return SkewShape((n + k, n))
    if fam.name == "P1":
        return SkewShape((n + m - 1, n + m - 1, m), (m - 1,))
    if fam.name == "P2":
        return SkewShape((n + m + r - 2, n + m + r - 2, m + r - 1, r), (m + r - 2, r - 1))
    if fam.name == "P3":
        return SkewShape((n + r + m - 1, n + m - 1, m), (m - 1,))
    return None


def bar_route(fam: Family) -> Poset:
    """P0-P3 rebuilt by iterated bar extensions (cross-check of the skew route)."""
    n, m, k, r = fam.n, fam.m, fam.k, fam.r
    if fam.name == "P0":
        return extend_bar(P0_base(k), n)
    if fam.name == "P1":
        return extend_bar(extend_bar(vertex(), n), m)
    if fam.name == "P2":
        return extend_bar(extend_bar(extend_bar(vertex(), n), m), r)
    if fam.name == "P3":
        return extend_bar(extend_bar(P0_base(r), n), m)
    raise DomainError(f"{fam.name} has no separate bar route")


def named(fam: Family) -> Poset:
    """The poset of a named family."""
    n, m, k, r = fam.n, fam.m, fam.k, fam.r
    name = fam.name
    if name == "P0":
        P = extend_bar(P0_base(k), n)
    elif name == "P1":
        P = extend_bar(extend_bar(vertex(), n), m)
    elif name in ("P2", "P3"):
        P = skew(family_skew_shape(fam))
    elif name == "P4":
        P = extend_bar(diamond(A="u1"), n)
    elif name == "P5":
        P = extend_bar(diamond(A="u4"), n)
    elif name == "P6":
        P = extend_bar(diamond_diag(A="v1"), n)
    elif name == "P7":
        P = extend_bar(diamond_diag(A="v6"), n)
    elif name == "P8":
        inner = extend_bar(diamond(A="u2", B="u4"), n)
        P = extend_bar(inner.retrack("u1", "u3"), m)
    elif name == "P9":
        P = extend_bar(ladder_base(k, r), n)
    else:  # pragma: no cover - Family validates names
        raise DomainError(name)
    if P.p != fam.size:
        raise DomainError(f"{fam}: built {P.p} elements, expected {fam.size}")
    return P


def family_grid(bound: int = 3) -> list[Family]:
    """All family instances with n, m in 1..bound and k, r in 0..bound that
    satisfy each family's validity range."""
    pos = range(1, bound + 1)
    nonneg = range(0, bound + 1)
    out = []
    out += [Family("P0", n=n, k=k) for n in pos for k in nonneg]
    out += [Family("P1", n=n, m=m) for n in pos for m in pos]
    out += [Family("P2", n=n, m=m, r=r) for n in pos for m in pos for r in pos]
    out += [Family("P3", n=n, m=m, r=r) for n in pos for m in pos for r in nonneg]
    for name in ("P4", "P5", "P6", "P7"):
        out += [Family(name, n=n) for n in pos]
    out += [Family("P8", n=n, m=m) for n in pos for m in pos]
    out += [Family("P9", n=n, k=k, r=r) for n in pos for k in nonneg for r in nonneg]
    return out
