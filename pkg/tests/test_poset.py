from itertools import permutations, product

import pytest
from hypothesis import given, settings, strategies as st

from ppart import catalog
from ppart.errors import DomainError, InvalidPosetError, ResourceError
from ppart.poset import (Permutation, Poset, PPartition, aleph, build, count_linear_extensions,
                         e_via_order_poly, fgen_oracle, fundamental_gf, fundamental_oracle,
                         ideal_count, iter_p_partitions, jordan_holder, k_trace, order_gf_check,
                         pf_formula_maj, pf_oracle)
from ppart.series import VarRegistry, closed_eval


def brute_extensions(P: Poset) -> int:
    """Permutations of the elements that respect every cover."""
    n = 0
    for perm in permutations(range(P.p)):
        pos = {v: i for i, v in enumerate(perm)}
        n += all(pos[s] < pos[t] for s, t in P.covers)
    return n


def brute_aleph(P: Poset, m: int) -> int:
    return sum(all(v[s] >= v[t] for s, t in P.covers) for v in product(range(m + 1), repeat=P.p))


def test_build_examples():
    assert build([], 3).covers == ()
    assert build([(0, 1), (1, 2)], 3).covers == ((0, 1), (1, 2))
    assert build([(0, 1), (1, 2), (0, 2)], 3).covers == ((0, 1), (1, 2))


def test_build_rejects_cycles_and_bad_pairs():
    with pytest.raises(InvalidPosetError):
        build([(0, 1), (1, 0)], 2)
    with pytest.raises(InvalidPosetError):
        build([(0, 3)], 2)
    with pytest.raises(InvalidPosetError):
        build([(0, 1)], 2, tracked=(1, 0))


def test_build_canonical_order():
    P = build([(2, 0), (1, 0)], 3, labels=["a", "b", "c"])
    assert P.labels == ("b", "c", "a")
    assert all(s < t for s, t in P.covers)


def test_json_roundtrip():
    P = catalog.named(catalog.Family("P8", n=1, m=2))
    assert Poset.from_json(P.to_json()) == P
    assert "->" in P.to_dot()


def test_linear_extension_examples():
    assert count_linear_extensions(catalog.chain(5)) == 1
    assert count_linear_extensions(catalog.antichain(4)) == 24
    assert count_linear_extensions(catalog.rect(2, 2)) == brute_extensions(catalog.rect(2, 2)) == 2


def test_ideal_budget():
    with pytest.raises(ResourceError):
        count_linear_extensions(catalog.antichain(12), budget=1000)
    assert ideal_count(catalog.chain(4)) == 5


def test_jordan_holder_examples():
    assert [m.seq for m in jordan_holder(catalog.chain(2))] == [(1, 2)]
    assert sorted(m.seq for m in jordan_holder(catalog.antichain(2))) == [(1, 2), (2, 1)]
    assert len(jordan_holder(catalog.rect(2, 2))) == 2
    with pytest.raises(ResourceError):
        jordan_holder(catalog.antichain(11))


def test_permutation_statistics():
    mu = Permutation((3, 1, 4, 2, 5))
    assert mu.descent_set == (1, 3)
    assert (mu.des, mu.maj) == (2, 4)


def test_aleph_examples():
    assert aleph(catalog.chain(2), 1) == 3
    for m in range(5):
        assert aleph(catalog.antichain(2), m) == (m + 1) ** 2
    assert aleph(catalog.skew(((2, 1), ())), 1) == 5


def test_pf_oracle_examples():
    assert pf_oracle(catalog.chain(1), 6).coefficients() == [1] * 7
    assert pf_oracle(catalog.chain(2), 8).coefficients() == [1, 1, 2, 2, 3, 3, 4, 4, 5]


def test_fgen_oracle_examples():
    F = fgen_oracle(catalog.vertex(), 5)
    assert sorted(e for e, _ in F.items()) == [(i, 0, 0) for i in range(6)]
    F2 = fgen_oracle(catalog.two_chain(), 6)
    assert {e for e, _ in F2.items()} == {(i, j, 0) for i in range(7) for j in range(i + 1)
                                          if i + j <= 6}
    assert all(c == 1 for _, c in F2.items())
    with pytest.raises(DomainError):
        fgen_oracle(catalog.antichain(2), 3)


def test_pf_formula_maj_examples():
    assert pf_formula_maj(catalog.chain(2), 8) == pf_oracle(catalog.chain(2), 8)
    anti = pf_formula_maj(catalog.antichain(2), 8)
    assert anti.coefficients() == [d + 1 for d in range(9)]


def test_order_gf_examples():
    left, right = order_gf_check(catalog.chain(1), 5)
    assert left == right == [1, 2, 3, 4, 5, 6]
    left, right = order_gf_check(catalog.antichain(2), 5)
    assert left == right == [1, 4, 9, 16, 25, 36]
    left, right = order_gf_check(catalog.skew(((2, 1), ())), 5)
    assert left == right == [brute_aleph(catalog.skew(((2, 1), ())), m) for m in range(6)]


def test_e_via_order_poly_examples():
    assert e_via_order_poly(catalog.chain(2)) == 1
    assert e_via_order_poly(catalog.antichain(2)) == 2
    assert e_via_order_poly(catalog.rect(2, 2)) == 2


def test_k_trace_examples():
    tv = k_trace([[7, 7, 6, 5], [7, 5, 4, 2], [6, 3, 0, 0]])
    assert tv.values == (6, 10, 12, 11, 8, 5)
    assert tv[-2] == 6 and tv[3] == 5
    assert k_trace([[0, 0], [0, 0]]).values == (0, 0, 0)
    assert k_trace([[4]]).as_dict() == {0: 4}
    with pytest.raises(DomainError):
        k_trace([[1, 2]])


def test_ppartition_validates():
    P = catalog.chain(2)
    assert PPartition(P, (2, 1)).total == 3
    with pytest.raises(Exception):
        PPartition(P, (1, 2))


def test_fundamental_gf_matches_enumeration():
    for P in (catalog.diamond(), catalog.rect(2, 2), catalog.skew(((2, 1), ()))):
        names = [f"x{i + 1}" for i in range(P.p)]
        reg = VarRegistry.graded(names, 6)
        assert closed_eval(fundamental_gf(P), reg) == fundamental_oracle(P, 6)


# ---------------------------------------------------------------------------
# properties over random small posets

@st.composite
def small_posets(draw, pmax=6):
    p = draw(st.integers(1, pmax))
    pairs = [(s, t) for s in range(p) for t in range(s + 1, p)]
    chosen = draw(st.lists(st.sampled_from(pairs), unique=True, max_size=len(pairs))) if pairs else []
    return build(chosen, p)


@given(small_posets())
@settings(max_examples=40, deadline=None)
def test_counts_agree(P):
    e = count_linear_extensions(P)
    assert e == brute_extensions(P) == len(jordan_holder(P)) == e_via_order_poly(P)


@given(small_posets(5), st.integers(0, 3))
@settings(max_examples=40, deadline=None)
def test_aleph_matches_brute_force(P, m):
    assert aleph(P, m) == brute_aleph(P, m)


@given(small_posets())
@settings(max_examples=30, deadline=None)
def test_maj_and_des_formulas(P):
    assert pf_formula_maj(P, 10) == pf_oracle(P, 10)
    left, right = order_gf_check(P, 6)
    assert left == right


@given(small_posets(5))
@settings(max_examples=30, deadline=None)
def test_enumeration_is_order_reversing(P):
    seen = 0
    for sigma in iter_p_partitions(P, max_sum=5):
        assert all(sigma.values[s] >= sigma.values[t] for s, t in P.covers)
        seen += 1
    assert seen == sum(pf_oracle(P, 5).coefficients())


@given(st.lists(st.lists(st.integers(0, 9), min_size=3, max_size=3), min_size=1, max_size=4))
def test_trace_sum(rows):
    # sort into a plane partition first
    rows = [sorted(r, reverse=True) for r in rows]
    cols = [sorted(c, reverse=True) for c in zip(*rows)]
    arr = [list(r) for r in zip(*cols)]
    arr = [sorted(r, reverse=True) for r in arr]
    tv = k_trace(arr)
    assert sum(tv.values) == sum(map(sum, arr))
