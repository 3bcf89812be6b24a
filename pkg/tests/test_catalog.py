import pytest

from ppart import catalog
from ppart.catalog import Family, SkewShape
from ppart.errors import DomainError
from ppart.poset import count_linear_extensions, fgen_oracle, pf_oracle
from ppart.series import Monomial, closed_eval
from ppart import formulas


def is_chain(P):
    return count_linear_extensions(P) == 1


@pytest.mark.parametrize("fam", catalog.family_grid(2), ids=str)
def test_named_sizes(fam):
    assert catalog.named(fam).p == fam.size


def test_bar_extension_small_cases():
    P = catalog.extend_bar(catalog.vertex(), 1)
    assert P.p == 2 and is_chain(P)
    Q = catalog.extend_bar(catalog.two_chain(), 1)
    assert Q.p == 3 and is_chain(Q)
    assert Q.labels[Q.A] == "e1"


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_bar_of_vertex_is_two_row_rectangle(n):
    P = catalog.extend_bar(catalog.vertex(), n)
    assert pf_oracle(P, 10) == pf_oracle(catalog.rect(2, n), 10)
    assert count_linear_extensions(P) == count_linear_extensions(catalog.rect(2, n))


def test_bar_extension_needs_tracked_vertex():
    with pytest.raises(DomainError):
        catalog.extend_bar(catalog.antichain(2), 1)
    with pytest.raises(DomainError):
        catalog.extend_bar(catalog.vertex(), 0)


def test_fresh_labels_do_not_collide():
    P = catalog.extend_bar(catalog.extend_bar(catalog.vertex(), 2), 2)
    assert len(set(P.labels)) == P.p == 7


def test_skew_examples():
    P = catalog.skew(((2, 1), ()))
    assert P.p == 3 and count_linear_extensions(P) == 2
    S = SkewShape((4, 4, 3, 2), (2, 1, 1))
    assert S.size == 9 == catalog.skew(S).p


def test_skew_shape_validation():
    with pytest.raises(DomainError):
        SkewShape((1, 2))
    with pytest.raises(DomainError):
        SkewShape((2, 1), (3,))
    with pytest.raises(DomainError):
        SkewShape((2, 1), (2, 1))


def test_small_family_members():
    assert is_chain(catalog.named(Family("P0", n=1, k=0)))
    assert catalog.named(Family("P8", n=2, m=3)).p == 2 * 2 + 2 * 3 + 2


def test_family_validation():
    with pytest.raises(DomainError):
        Family("P1", n=1)
    with pytest.raises(DomainError):
        Family("P0", n=0, k=1)
    with pytest.raises(DomainError):
        Family("P2", n=1, m=1, r=0)
    with pytest.raises(DomainError):
        Family("P11", n=1)
    assert Family.make("P4", n=2, m=7).params() == {"n": 2}


@pytest.mark.parametrize("fam", [f for f in catalog.family_grid(2) if f.name in "P0 P1 P2 P3".split()],
                         ids=str)
def test_skew_and_bar_routes_agree(fam):
    a, b = catalog.named(fam), catalog.bar_route(fam)
    assert pf_oracle(a, 10) == pf_oracle(b, 10)


def test_diamond_base_generating_function():
    P = catalog.diamond(A="u1")
    F = fgen_oracle(P, 10)
    Q = Monomial.var("q")
    assert closed_eval(formulas.diamond_gf("x", Q, Q, Q), F.registry) == F


@pytest.mark.parametrize("k", range(3))
@pytest.mark.parametrize("r", range(3))
def test_ladder_base_generating_function(k, r):
    F = fgen_oracle(catalog.ladder_base(k, r), 10)
    assert closed_eval(formulas.ladder_gf(k, r), F.registry) == F


def test_grid_counts():
    grid = catalog.family_grid(3)
    by = {}
    for f in grid:
        by[f.name] = by.get(f.name, 0) + 1
    assert by == {"P0": 12, "P1": 9, "P2": 27, "P3": 36, "P4": 3, "P5": 3, "P6": 3, "P7": 3,
                  "P8": 9, "P9": 48}
