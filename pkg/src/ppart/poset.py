"""Finite posets, P-partition oracles and linear-extension machinery.

Convention: a cover ``(s, t)`` means ``s < t`` in the order, drawn as an arrow
``s -> t``; a P-partition is order-reversing, so ``sigma(s) >= sigma(t)``.
Elements are renumbered into a stable topological order at construction, so
index order is always a natural labeling (``s < t`` implies ``s`` has the
smaller index).  Permutations in the Jordan-Hoelder set use the labels
``index + 1``.
"""
from __future__ import annotations

import heapq
import json
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from math import factorial
from typing import Iterable, Iterator, Mapping, Sequence

from .errors import DomainError, InconsistencyError, InvalidPosetError, ResourceError
from .series import (ClosedForm, ClosedSum, Monomial, TruncSeries, VarRegistry,
                     closed_eval, q_registry, qfact)

IDEAL_BUDGET = 10 ** 7
JH_MAX = 10


@dataclass(frozen=True, eq=False)
class Poset:
    p: int
    covers: tuple[tuple[int, int], ...]
    labels: tuple[str, ...]
    A: int | None = None
    B: int | None = None

    # structure ---------------------------------------------------------------
    @cached_property
    def lower_covers(self) -> tuple[tuple[int, ...], ...]:
        """``lower_covers[t]`` = elements ``s`` covered by ``t`` (``s -> t``)."""
        low = [[] for _ in range(self.p)]
        for s, t in self.covers:
            low[t].append(s)
        return tuple(tuple(x) for x in low)

    @cached_property
    def upper_covers(self) -> tuple[tuple[int, ...], ...]:
        up = [[] for _ in range(self.p)]
        for s, t in self.covers:
            up[s].append(t)
        return tuple(tuple(x) for x in up)

    @cached_property
    def below_mask(self) -> tuple[int, ...]:
        """Bitmask of all elements strictly below each element."""
        masks = [0] * self.p
        for t in range(self.p):          # topological by construction
            m = 0
            for s in self.lower_covers[t]:
                m |= masks[s] | (1 << s)
            masks[t] = m
        return tuple(masks)

    def less(self, s: int, t: int) -> bool:
        return bool(self.below_mask[t] >> s & 1)

    def comparable(self, s: int, t: int) -> bool:
        return s == t or self.less(s, t) or self.less(t, s)

    def minimal(self) -> list[int]:
        return [t for t in range(self.p) if not self.lower_covers[t]]

    def index(self, label: str | int) -> int:
        if isinstance(label, int):
            if not 0 <= label < self.p:
                raise DomainError(f"element {label} out of range")
            return label
        try:
            return self.labels.index(label)
        except ValueError:
            raise DomainError(f"no element labelled {label!r}") from None

    def retrack(self, A: str | int | None, B: str | int | None = None) -> "Poset":
        a = None if A is None else self.index(A)
        b = None if B is None else self.index(B)
        _check_tracked(self, a, b)
        return Poset(self.p, self.covers, self.labels, a, b)

    def with_labels(self, labels: Sequence[str]) -> "Poset":
        if len(labels) != self.p or len(set(labels)) != self.p:
            raise DomainError("labels must be unique, one per element")
        return Poset(self.p, self.covers, tuple(labels), self.A, self.B)

    # io ------------------------------------------------------------------------
    def to_json(self) -> dict:
        return {"p": self.p, "covers": [list(c) for c in self.covers],
                "tracked": {"A": self.A, "B": self.B}, "labels": list(self.labels)}

    @classmethod
    def from_json(cls, data: Mapping | str) -> "Poset":
        if isinstance(data, str):
            data = json.loads(data)
        tr = data.get("tracked") or {}
        return build(data.get("covers", []), data["p"], (tr.get("A"), tr.get("B")),
                     data.get("labels"))

    def to_dot(self, name: str = "P") -> str:
        lines = [f"digraph {name} {{", "  rankdir=TB;"]
        for i, lab in enumerate(self.labels):
            extra = ""
            if i == self.A:
                extra = ", shape=box"
            elif i == self.B:
                extra = ", shape=diamond"
            lines.append(f'  n{i} [label="{lab}"{extra}];')
        for s, t in self.covers:
            lines.append(f"  n{s} -> n{t};")
        lines.append("}")
        return "\n".join(lines) + "\n"

    def __eq__(self, other):
        return (isinstance(other, Poset) and self.p == other.p and self.covers == other.covers
                and self.A == other.A and self.B == other.B)

    def __hash__(self):
        return hash((self.p, self.covers, self.A, self.B))

    def __repr__(self):
        return f"Poset(p={self.p}, covers={len(self.covers)}, A={self.A}, B={self.B})"


def _check_tracked(P: Poset, a, b):
    if b is not None and a is None:
        raise InvalidPosetError("B may only be designated together with A")
    if a is not None and b is not None and not P.less(a, b):
        raise InvalidPosetError("tracked pair needs A < B (so sigma(A) >= sigma(B))")


def build(covers: Iterable[Sequence[int]], p: int,
          tracked: tuple[int | None, int | None] | Mapping | None = None,
          labels: Sequence[str] | None = None) -> Poset:
    """Validate, transitively reduce and canonically order a poset.

    Canonical order: Kahn's algorithm taking the smallest input index first.
    Raises :class:`InvalidPosetError` on cycles or out-of-range pairs.
    """
    if p < 0:
        raise InvalidPosetError("p must be nonnegative")
    edges = set()
    for pair in covers:
        s, t = int(pair[0]), int(pair[1])
        if not (0 <= s < p and 0 <= t < p):
            raise InvalidPosetError(f"pair {(s, t)} outside [0, {p})")
        if s == t:
            raise InvalidPosetError(f"self-loop at {s}")
        edges.add((s, t))
    out = [[] for _ in range(p)]
    indeg = [0] * p
    for s, t in edges:
        out[s].append(t)
        indeg[t] += 1
    heap = [i for i in range(p) if indeg[i] == 0]
    heapq.heapify(heap)
    order = []
    while heap:
        s = heapq.heappop(heap)
        order.append(s)
        for t in out[s]:
            indeg[t] -= 1
            if indeg[t] == 0:
                heapq.heappush(heap, t)
    if len(order) != p:
        raise InvalidPosetError("cover relation contains a cycle")
    pos = {v: i for i, v in enumerate(order)}
    # transitive reduction via descendant masks, processed in reverse order
    desc = [0] * p
    for v in reversed(order):
        m = 0
        for t in out[v]:
            m |= desc[pos[t]] | (1 << pos[t])
        desc[pos[v]] = m
    reduced = []
    for s, t in edges:
        ps, pt = pos[s], pos[t]
        if not any(u != t and desc[pos[u]] >> pt & 1 for u in out[s]):
            reduced.append((ps, pt))
    reduced.sort()
    if labels is None:
        labels = [str(i) for i in range(p)]
    if len(labels) != p or len(set(labels)) != p:
        raise InvalidPosetError("labels must be unique, one per element")
    new_labels = tuple(str(labels[v]) for v in order)
    if isinstance(tracked, Mapping):
        tracked = (tracked.get("A"), tracked.get("B"))
    a, b = tracked if tracked else (None, None)
    a = None if a is None else pos[int(a)]
    b = None if b is None else pos[int(b)]
    P = Poset(p, tuple(reduced), new_labels, a, b)
    _check_tracked(P, a, b)
    return P


# ---------------------------------------------------------------------------
# domain records
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class PPartition:
    poset: Poset = field(repr=False)
    values: tuple[int, ...]

    def __post_init__(self):
        for s, t in self.poset.covers:
            if self.values[s] < self.values[t]:
                raise InconsistencyError(f"labeling not order-reversing at {(s, t)}")

    @property
    def total(self) -> int:
        return sum(self.values)


@dataclass(frozen=True)
class Permutation:
    seq: tuple[int, ...]

    @property
    def descent_set(self) -> tuple[int, ...]:
        s = self.seq
        return tuple(i + 1 for i in range(len(s) - 1) if s[i] > s[i + 1])

    @property
    def des(self) -> int:
        return len(self.descent_set)

    @property
    def maj(self) -> int:
        return sum(self.descent_set)


@dataclass(frozen=True)
class TraceVector:
    r: int
    c: int
    values: tuple[int, ...]     # tr_k for k = -r+1 .. c-1

    def __getitem__(self, k: int) -> int:
        if not -self.r + 1 <= k <= self.c - 1:
            raise IndexError(k)
        return self.values[k + self.r - 1]

    def as_dict(self) -> dict[int, int]:
        return {k: self[k] for k in range(-self.r + 1, self.c)}


# ---------------------------------------------------------------------------
# enumeration
# ---------------------------------------------------------------------------

def iter_p_partitions(P: Poset, max_part: int | None = None,
                      max_sum: int | None = None) -> Iterator[PPartition]:
    """Plain backtracking over all P-partitions with the given bounds.

    Elements are filled in canonical order; each value is capped by the
    smallest value among its lower covers.  Every yielded labeling is
    re-validated.
    """
    if max_part is None and max_sum is None and P.p:
        raise DomainError("need max_part or max_sum to keep enumeration finite")
    top = max_part if max_part is not None else max_sum
    vals = [0] * P.p
    low = P.lower_covers

    def rec(i: int, budget: int):
        if i == P.p:
            yield PPartition(P, tuple(vals))
            return
        hi = min((vals[s] for s in low[i]), default=top)
        if max_sum is not None:
            hi = min(hi, budget)
        for v in range(hi + 1):
            vals[i] = v
            yield from rec(i + 1, budget - v)
        vals[i] = 0

    yield from rec(0, max_sum if max_sum is not None else 0)


def _dp_order(P: Poset) -> list[int]:
    """A linear extension chosen greedily to keep the DP frontier small."""
    placed = [False] * P.p
    remaining_up = [len(u) for u in P.upper_covers]
    frontier: set[int] = set()
    order = []
    for _ in range(P.p):
        best = None
        for t in range(P.p):
            if placed[t] or not all(placed[s] for s in P.lower_covers[t]):
                continue
            closes = sum(1 for s in P.lower_covers[t] if remaining_up[s] == 1)
            grow = (1 if P.upper_covers[t] else 0) - closes
            key = (grow, t)
            if best is None or key < best:
                best = key
        t = best[1]
        placed[t] = True
        order.append(t)
        for s in P.lower_covers[t]:
            remaining_up[s] -= 1
            if remaining_up[s] == 0:
                frontier.discard(s)
        if P.upper_covers[t]:
            frontier.add(t)
    return order


def _dp_plan(P: Poset):
    """For the frontier DP: per step the element, the positions of its lower
    covers in the current frontier tuple, and the projection onto the next."""
    order = _dp_order(P)
    placed = set()
    frontier: list[int] = []
    plan = []
    for t in order:
        low_pos = tuple(frontier.index(s) for s in P.lower_covers[t])
        placed.add(t)
        ext = frontier + [t]
        nxt = [s for s in ext if any(u not in placed for u in P.upper_covers[s])]
        proj = tuple(ext.index(s) for s in nxt)
        plan.append((t, low_pos, proj))
        frontier = nxt
    return plan


def aleph(P: Poset, m: int) -> int:
    """Number of order-reversing maps ``P -> {0, ..., m}``.

    Backtracking with the tightest upper bound from assigned lower covers,
    with partial assignments merged on the values that still constrain
    unassigned elements.
    """
    if m < 0:
        raise DomainError("m must be >= 0")
    states: dict[tuple, int] = {(): 1}
    for t, low_pos, proj in _dp_plan(P):
        nxt: dict[tuple, int] = {}
        for key, cnt in states.items():
            hi = min((key[i] for i in low_pos), default=m)
            for v in range(hi + 1):
                ext = key + (v,)
                k2 = tuple(ext[i] for i in proj)
                nxt[k2] = nxt.get(k2, 0) + cnt
        states = nxt
    return sum(states.values())


def pp_series(P: Poset, weights: Sequence[Monomial], registry: VarRegistry,
              max_part: int | None = None) -> TruncSeries:
    """``sum_sigma prod_s weights[s]**sigma(s)`` truncated to ``registry``.

    Same frontier DP as :func:`aleph`, carrying a partial series per state.
    Each weight must grow the truncation degree (or hit a cap) unless
    ``max_part`` bounds the values.
    """
    wexp = [registry.exp_of(w) for w in weights]
    if len(wexp) != P.p:
        raise DomainError("one weight monomial per element")
    if max_part is None:
        for s, w in enumerate(wexp):
            if not any(w):
                raise DomainError(f"element {s} has trivial weight and no part bound")
    zero = registry.zero_exp()
    states: dict[tuple, dict] = {(): {zero: 1}}
    within = registry.within
    for t, low_pos, proj in _dp_plan(P):
        w = wexp[t]
        nxt: dict[tuple, dict] = {}
        for key, ser in states.items():
            hi = min((key[i] for i in low_pos), default=max_part)
            v = 0
            while hi is None or v <= hi:
                shift = tuple(v * x for x in w)
                moved = {}
                for e, c in ser.items():
                    e2 = tuple(a + b for a, b in zip(e, shift))
                    if within(e2):
                        moved[e2] = c
                if not moved:
                    break
                k2 = tuple((key + (v,))[i] for i in proj)
                acc = nxt.setdefault(k2, {})
                for e, c in moved.items():
                    acc[e] = acc.get(e, 0) + c
                v += 1
        states = nxt
    total: dict[tuple, int] = {}
    for ser in states.values():
        for e, c in ser.items():
            total[e] = total.get(e, 0) + c
    return TruncSeries(registry, total)


def pf_oracle(P: Poset, D: int, q: str = "q") -> TruncSeries:
    """``sum_sigma q^|sigma|`` through ``q^D`` by P-partition enumeration."""
    reg = q_registry(D, q)
    return pp_series(P, [Monomial.var(q)] * P.p, reg)


def fgen_registry(D: int, x_cap: int | None = None, y_cap: int | None = None) -> VarRegistry:
    return VarRegistry.graded(("x", "y", "q"), D, caps={"x": x_cap, "y": y_cap})


def fgen_oracle(P: Poset, D: int, x_cap: int | None = None, y_cap: int | None = None,
                registry: VarRegistry | None = None) -> TruncSeries:
    """``sum_sigma x^sigma(A) y^sigma(B) q^(|sigma| - sigma(A) - sigma(B))``."""
    if P.A is None:
        raise DomainError("poset has no tracked vertex A")
    reg = registry or fgen_registry(D, x_cap, y_cap)
    w = [Monomial.var("q")] * P.p
    w[P.A] = Monomial.var("x")
    if P.B is not None:
        w[P.B] = Monomial.var("y")
    return pp_series(P, w, reg)


# ---------------------------------------------------------------------------
# linear extensions
# ---------------------------------------------------------------------------

def iter_ideals(P: Poset, budget: int = IDEAL_BUDGET) -> Iterator[list[int]]:
    """Order ideals (down-sets) as bitmasks, layer by layer by size."""
    below = P.below_mask
    layer = [0]
    seen = 1
    while layer:
        yield layer
        nxt = set()
        for I in layer:
            for t in range(P.p):
                if not I >> t & 1 and below[t] & ~I == 0:
                    nxt.add(I | (1 << t))
        seen += len(nxt)
        if seen > budget:
            raise ResourceError(f"order-ideal lattice exceeds budget {budget}")
        layer = sorted(nxt)


def ideal_count(P: Poset, budget: int = IDEAL_BUDGET) -> int:
    return sum(len(layer) for layer in iter_ideals(P, budget))


def count_linear_extensions(P: Poset, budget: int = IDEAL_BUDGET) -> int:
    """e(P) = number of maximal chains in the lattice of order ideals."""
    below = P.below_mask
    ways = {0: 1}
    for layer in iter_ideals(P, budget):
        nxt: dict[int, int] = {}
        for I in layer:
            w = ways[I]
            for t in range(P.p):
                if not I >> t & 1 and below[t] & ~I == 0:
                    J = I | (1 << t)
                    nxt[J] = nxt.get(J, 0) + w
        if nxt:
            ways = nxt
    return ways.get((1 << P.p) - 1, 1 if P.p == 0 else 0)


def iter_linear_extensions(P: Poset) -> Iterator[tuple[int, ...]]:
    """Linear extensions as element sequences (first = earliest)."""
    below = P.below_mask
    seq: list[int] = []

    def rec(I: int):
        if len(seq) == P.p:
            yield tuple(seq)
            return
        for t in range(P.p):
            if not I >> t & 1 and below[t] & ~I == 0:
                seq.append(t)
                yield from rec(I | (1 << t))
                seq.pop()

    yield from rec(0)


def jordan_holder(P: Poset, max_p: int = JH_MAX) -> list[Permutation]:
    """The Jordan-Hoelder set under the natural labeling ``index + 1``."""
    if P.p > max_p:
        raise ResourceError(f"Jordan-Hoelder enumeration limited to p <= {max_p}")
    return [Permutation(tuple(t + 1 for t in ext)) for ext in iter_linear_extensions(P)]


def maj_closed_form(P: Poset, q: str = "q") -> ClosedForm:
    num: dict = {}
    for mu in jordan_holder(P):
        m = Monomial.var(q, mu.maj)
        num[m] = num.get(m, 0) + 1
    return ClosedForm(num) * qfact(P.p, q).reciprocal()


def pf_formula_maj(P: Poset, D: int, q: str = "q") -> TruncSeries:
    """``sum_{mu in L(P)} q^maj(mu) / (q;q)_p`` expanded through ``q^D``."""
    return closed_eval(maj_closed_form(P, q), q_registry(D, q))


def order_gf_check(P: Poset, M: int) -> tuple[list[int], list[int]]:
    """Both sides of ``sum_m aleph(P,m) x^m = sum x^des(mu) / (1-x)^(p+1)``
    through ``x^M``."""
    left = [aleph(P, m) for m in range(M + 1)]
    num: dict = {}
    for mu in jordan_holder(P):
        mono = Monomial.var("x", mu.des)
        num[mono] = num.get(mono, 0) + 1
    cf = ClosedForm(num, [(Monomial.var("x"), -(P.p + 1))])
    right = closed_eval(cf, q_registry(M, "x")).coefficients()
    return left, right


def e_via_order_poly(P: Poset) -> int:
    """p! times the leading coefficient of the interpolated order polynomial."""
    p = P.p
    vals = [aleph(P, m) for m in range(p + 1)]
    lead = Fraction(0)
    for i, v in enumerate(vals):
        den = 1
        for j in range(p + 1):
            if j != i:
                den *= i - j
        lead += Fraction(v, den)
    e = lead * factorial(p)
    if e.denominator != 1:
        raise InconsistencyError(f"order polynomial gives non-integer e = {e}")
    return int(e)


# ---------------------------------------------------------------------------
# the fundamental generating function
# ---------------------------------------------------------------------------

def fundamental_gf(P: Poset, prefix: str = "x") -> ClosedSum:
    """``F_P`` as a sum over the Jordan-Hoelder set, variables ``x1..xp``."""
    terms = []
    for mu in jordan_holder(P):
        partial = [Monomial()]
        for a in mu.seq:
            partial.append(partial[-1] * Monomial.var(f"{prefix}{a}"))
        num = Monomial()
        for j in mu.descent_set:
            num = num * partial[j]
        terms.append(ClosedForm({num: 1}, [(partial[i], -1) for i in range(1, P.p + 1)]))
    return ClosedSum(terms)


def fundamental_oracle(P: Poset, D: int, prefix: str = "x") -> TruncSeries:
    names = [f"{prefix}{i + 1}" for i in range(P.p)]
    reg = VarRegistry.graded(names, D)
    return pp_series(P, [Monomial.var(n) for n in names], reg)


# ---------------------------------------------------------------------------
# plane partitions and k-traces
# ---------------------------------------------------------------------------

def k_trace(array: Sequence[Sequence[int]]) -> TraceVector:
    """Diagonal sums ``tr_k = sum_{j - i = k} pi[i][j]`` of a plane partition."""
    rows = [list(r) for r in array]
    r = len(rows)
    if r == 0 or any(len(row) != len(rows[0]) for row in rows) or not rows[0]:
        raise DomainError("expected a non-empty rectangular array")
    c = len(rows[0])
    for i in range(r):
        for j in range(c):
            v = rows[i][j]
            if v < 0:
                raise DomainError(f"negative entry at {(i, j)}")
            if j + 1 < c and rows[i][j + 1] > v:
                raise DomainError(f"row {i} increases at column {j + 1}")
            if i + 1 < r and rows[i + 1][j] > v:
                raise DomainError(f"column {j} increases at row {i + 1}")
    vals = [0] * (r + c - 1)
    for i in range(r):
        for j in range(c):
            vals[j - i + r - 1] += rows[i][j]
    return TraceVector(r, c, tuple(vals))


def iter_plane_partitions(r: int, c: int, max_sum: int) -> Iterator[tuple[tuple[int, ...], ...]]:
    """All r x c arrays, weakly decreasing along rows and columns, with entry sum <= max_sum."""
    def rows_under(prev, budget):
        # weakly decreasing rows bounded entrywise by prev
        row = [0] * c

        def rec(j, hi, left):
            if j == c:
                yield tuple(row), left
                return
            for v in range(min(hi, prev[j], left) + 1):
                row[j] = v
                yield from rec(j + 1, v, left - v)
            row[j] = 0
        yield from rec(0, budget, budget)

    def rec_rows(i, prev, left, acc):
        if i == r:
            yield tuple(acc)
            return
        for row, rem in rows_under(prev, left):
            acc.append(row)
            yield from rec_rows(i + 1, row, rem, acc)
            acc.pop()

    yield from rec_rows(0, (max_sum,) * c, max_sum, [])


def count_plane_partitions(n_max: int) -> list[int]:
    """Unrestricted plane partitions of n for n <= n_max, by brute force
    (an n x n array always suffices for a plane partition of n)."""
    size = max(n_max, 1)
    counts = [0] * (n_max + 1)
    for pi in iter_plane_partitions(size, size, n_max):
        counts[sum(map(sum, pi))] += 1
    return counts
