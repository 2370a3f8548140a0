import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from anomalab.catalog import named_group
from anomalab.errors import DomainError
from anomalab.groups import (
    ExtensionData,
    abelian_structure,
    centralizer,
    conjugacy_classes,
    direct_product,
    group_from_generators,
    identity_extension,
    subgroup_from_elements,
)

CATALOG = ["Z/2", "Z/3", "Z/4", "Z/6", "Z/2xZ/2", "S3", "D4", "Q8", "A4"]


def test_trivial_group():
    G = group_from_generators(1, [])
    assert G.order == 1
    assert G.identity == 0


def test_s3_from_generators():
    G = group_from_generators(3, [(1, 2, 0), (1, 0, 2)])
    assert G.order == 6
    assert not G.is_abelian
    data = conjugacy_classes(G)
    assert sorted(len(c) for c in data.classes) == [1, 2, 3]


def test_cyclic4_from_generator():
    G = group_from_generators(4, [(1, 2, 3, 0)])
    assert G.order == 4
    assert G.is_abelian
    assert G.element_order(1) == 4


@pytest.mark.parametrize("name", CATALOG + ["S4", "Z/16", "Z/4xZ/8"])
def test_catalog_valid(name):
    G = named_group(name)
    # identity/inverse/associativity all validated at construction
    assert G.mul(G.identity, 3 % G.order) == 3 % G.order
    n = G.order
    assert sorted(G.mult[0]) == list(range(n))


@pytest.mark.parametrize("name", CATALOG)
def test_orbit_stabilizer(name):
    G = named_group(name)
    data = conjugacy_classes(G)
    assert sum(len(c) for c in data.classes) == G.order
    for g in G.elements():
        cls = data.classes[data.class_of[g]]
        cent = centralizer(G, g)
        assert cent.order * len(cls) == G.order
        assert G.order % len(cls) == 0


def test_centralizer_of_identity_and_abelian():
    G = named_group("S3")
    assert centralizer(G, G.identity).order == G.order
    A = named_group("Z/6")
    for g in A.elements():
        assert centralizer(A, g).order == A.order


def test_centralizer_of_transposition_in_s3():
    G = named_group("S3")
    transpositions = [g for g in G.elements() if G.element_order(g) == 2]
    assert len(transpositions) == 3
    for t in transpositions:
        assert centralizer(G, t).order == 2


def test_abelian_singleton_classes():
    A = named_group("Z/2xZ/2")
    assert all(len(c) == 1 for c in conjugacy_classes(A).classes)


@pytest.mark.parametrize(
    "name,factors",
    [
        ("Z/6", (6,)),
        ("Z/2xZ/2", (2, 2)),
        ("Z/4xZ/8", (4, 8)),
        ("Z/2xZ/6", (2, 6)),
        ("Z/12", (12,)),
    ],
)
def test_abelian_structure_factors(name, factors):
    A = named_group(name)
    st_ = abelian_structure(A)
    assert st_.invariant_factors == factors
    # coordinates are a homomorphism
    for x in A.elements():
        for y in A.elements():
            cx, cy = st_.coordinates[x], st_.coordinates[y]
            cxy = st_.coordinates[A.mul(x, y)]
            assert cxy == tuple(
                (a + b) % d for a, b, d in zip(cx, cy, st_.invariant_factors)
            )
    # basis elements have the stated orders
    for b, d in zip(st_.basis, st_.invariant_factors):
        assert A.element_order(b) == d


def test_abelian_structure_trivial():
    G = group_from_generators(1, [])
    assert abelian_structure(G).invariant_factors == ()


def test_abelian_structure_rejects_nonabelian():
    with pytest.raises(DomainError):
        abelian_structure(named_group("S3"))


def test_subgroup_validation():
    G = named_group("Z/4")
    sub = subgroup_from_elements(G, [0, 2])
    assert sub.group.order == 2
    with pytest.raises(DomainError):
        subgroup_from_elements(G, [0, 1, 2])


def test_subgroup_embedding_is_homomorphism():
    G = named_group("S3")
    t = next(g for g in G.elements() if G.element_order(g) == 3)
    sub = subgroup_from_elements(G, [G.identity, t, G.mul(t, t)])
    H = sub.group
    for a in H.elements():
        for b in H.elements():
            assert sub.to_parent[H.mul(a, b)] == G.mul(sub.to_parent[a], sub.to_parent[b])


def test_extension_validation():
    G = named_group("Z/2")
    E = named_group("Z/4")
    q = tuple(x % 2 for x in E.elements())
    ker = subgroup_from_elements(E, [0, 2])
    ext = ExtensionData(E, ker, q, G)
    assert ext.base.order == 2
    bad_q = (0, 0, 0, 0)
    with pytest.raises(DomainError):
        ExtensionData(E, ker, bad_q, G)


def test_identity_extension():
    G = named_group("S3")
    ext = identity_extension(G)
    assert ext.total == G
    assert ext.kernel.order == 1


def test_direct_product_order():
    G = direct_product(named_group("Z/2"), named_group("S3"))
    assert G.order == 12
    assert not G.is_abelian


def test_quaternion_structure():
    Q = named_group("Q8")
    orders = sorted(Q.element_order(x) for x in Q.elements())
    assert orders == [1, 2, 4, 4, 4, 4, 4, 4]
    assert not Q.is_abelian
    # -1 is central
    data = conjugacy_classes(Q)
    assert sorted(len(c) for c in data.classes) == [1, 1, 2, 2, 2]


def test_closure_cap(monkeypatch):
    monkeypatch.setenv("ANOMALAB_CAPS", '{"closure_order": 5}')
    from anomalab.errors import CapError

    with pytest.raises(CapError):
        group_from_generators(3, [(1, 2, 0), (1, 0, 2)])


@settings(max_examples=25, deadline=None)
@given(st.permutations(range(5)), st.permutations(range(5)))
def test_random_permutation_groups(p, q):
    G = group_from_generators(5, [tuple(p), tuple(q)])
    assert 120 % G.order == 0
    # spot-check associativity again through the power map
    x = min(1, G.order - 1)
    assert G.power(x, G.order) == G.power(x, 0) == G.identity
