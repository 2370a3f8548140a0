"""Sector bookkeeping for abelian orbifolds and the reindexing identity."""

from math import gcd

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from anomalab.catalog import named_group
from anomalab.cohomology import Cochain, cohomology_group, slant2
from anomalab.errors import DomainError
from anomalab.gauging import (
    ConjugationRule,
    anomaly_transport_demo,
    galois_transform,
    gauged_decomposition,
    random_cocycle,
    reindex_campaign,
    reindex_check,
    random_cocycle as _rc,
)

SHAPES = ["Z/3xZ/3", "Z/5xZ/5", "Z/4xZ/8", "Z/2xZ/2xZ/2"]


def test_zero_beta_gives_zero_characters():
    A = named_group("Z/4")
    dec = gauged_decomposition(A, Cochain.zero(A, 2, 4))
    assert all(not lab.twist_character._np.any() for lab in dec.labels)


def test_z2_any_beta_zero_characters():
    A = named_group("Z/2")
    H = cohomology_group(A, 2, 2)
    for cls in H.classes():
        dec = gauged_decomposition(A, cls.representative)
        assert all(not lab.twist_character._np.any() for lab in dec.labels)


def test_klein_bilinear_sector_characters():
    A = named_group("Z/2xZ/2")
    st_ = A.abelian_structure()

    def beta_fn(x, y):
        return st_.coordinates[x][0] * st_.coordinates[y][1]

    beta = Cochain.from_function(A, 2, 2, beta_fn)
    dec = gauged_decomposition(A, beta)
    g10 = st_.element_from_coordinates((1, 0))
    g01 = st_.element_from_coordinates((0, 1))
    for lab in dec.labels:
        if lab.sector == g10:
            for x in A.elements():
                assert lab.twist_character.value(x) == st_.coordinates[x][1]
        if lab.sector == g01:
            for x in A.elements():
                assert lab.twist_character.value(x) == (-st_.coordinates[x][0]) % 2


def test_labels_match_slant2():
    A = named_group("Z/4xZ/8")
    rng = np.random.default_rng(0)
    beta = random_cocycle(A, 32, rng)
    dec = gauged_decomposition(A, beta)
    for lab in dec.labels[:6]:
        assert lab.twist_character.table == slant2(beta, lab.sector).table
        assert lab.selector.table == lab.twist_character.table


def test_rejects_bad_inputs():
    S3 = named_group("S3")
    with pytest.raises(DomainError):
        gauged_decomposition(S3, Cochain.zero(S3, 2, 6))
    A = named_group("Z/4")
    nonco = Cochain.from_reduced(A, 2, 4, [1, 0, 0, 0, 0, 0, 0, 0, 0])
    if not nonco.is_cocycle():
        with pytest.raises(DomainError):
            gauged_decomposition(A, nonco)
    with pytest.raises(DomainError):
        ConjugationRule(2, 4, 4)


def test_galois_transform_identity_and_permutation():
    A = named_group("Z/5xZ/5")
    rng = np.random.default_rng(1)
    beta = random_cocycle(A, 25, rng)
    dec = gauged_decomposition(A, beta)
    same = galois_transform(dec, ConjugationRule(1, 25, 5))
    assert same.label_multiset() == dec.label_multiset()
    # beta = 0: sectors permuted by inversion of 2, characters stay zero
    zero = gauged_decomposition(A, Cochain.zero(A, 2, 25))
    moved = galois_transform(zero, ConjugationRule(2, 25, 5))
    assert all(not lab.twist_character._np.any() for lab in moved.labels)


def test_galois_transform_rule_z5():
    A = named_group("Z/5xZ/5")
    st_ = A.abelian_structure()
    rng = np.random.default_rng(7)
    beta = random_cocycle(A, 25, rng)
    dec = gauged_decomposition(A, beta)
    rule = ConjugationRule(2, 25, 5)
    assert rule.n_inverse == 3
    out = galois_transform(dec, rule)
    by_sector = {lab.sector: lab for lab in out.labels}
    for lab in dec.labels:
        target = st_.scalar_mul(3, lab.sector)
        expect = lab.twist_character.scaled(2)
        assert by_sector[target].twist_character.table == expect.table


def test_transform_composition():
    A = named_group("Z/3xZ/3")
    rng = np.random.default_rng(5)
    beta = random_cocycle(A, 9, rng)
    dec = gauged_decomposition(A, beta)
    units = [n for n in range(1, 27) if gcd(n, 27) == 1]
    for n1 in units[:4]:
        for n2 in units[:4]:
            a = galois_transform(
                galois_transform(dec, ConjugationRule(n2, 9, 3)),
                ConjugationRule(n1, 9, 3),
            )
            n12 = (n1 * n2) % 27
            b = galois_transform(dec, ConjugationRule(n12, 9, 3))
            assert a.label_multiset() == b.label_multiset()


def test_identity_sector_always_plain():
    for name in SHAPES:
        A = named_group(name)
        rng = np.random.default_rng(3)
        beta = random_cocycle(A, A.order, rng)
        dec = gauged_decomposition(A, beta)
        lab = next(l for l in dec.labels if l.sector == A.identity)
        assert not lab.twist_character._np.any()


def test_character_scaling_consistency():
    # character at sector nx equals n times the character at x
    A = named_group("Z/2xZ/2xZ/2")
    st_ = A.abelian_structure()
    rng = np.random.default_rng(11)
    beta = random_cocycle(A, 8, rng)
    dec = gauged_decomposition(A, beta)
    by_sector = {lab.sector: lab for lab in dec.labels}
    for n in (0, 1, 2, 3):
        for x in A.elements():
            nx = st_.scalar_mul(n, x)
            left = by_sector[nx].twist_character
            right = by_sector[x].twist_character.scaled(n)
            assert left.table == right.table


def test_reindex_trivial_cases():
    A = named_group("Z/3xZ/3")
    beta = Cochain.zero(A, 2, 9)
    assert reindex_check(A, beta, ConjugationRule(1, 9, 3))
    rng = np.random.default_rng(0)
    lam = Cochain.from_reduced(A, 1, 9, rng.integers(0, 9, size=8))
    assert reindex_check(A, lam.d(), ConjugationRule(2, 9, 3))


@settings(max_examples=25, deadline=None)
@given(st.sampled_from(SHAPES), st.integers(0, 10**6))
def test_reindex_random(name, seed):
    A = named_group(name)
    m = A.order
    e = A.exponent()
    rng = np.random.default_rng(seed)
    beta = random_cocycle(A, m, rng)
    units = [n for n in range(1, m * e) if gcd(n, m * e) == 1]
    n = units[int(rng.integers(0, len(units)))]
    assert reindex_check(A, beta, ConjugationRule(n, m, e))


def test_campaign_summary():
    r = reindex_campaign(per_shape=5, seed=123)
    assert r["instances"] == 20
    assert r["passed"] == 20
    assert r["failures"] == []


def test_transport_demo():
    G = named_group("Z/5")
    H = cohomology_group(G, 3, 5)
    cls = H.class_from_coordinates((1,))
    rep = anomaly_transport_demo(G, cls, 1)
    assert rep["n_squared_alpha"] == [1]
    rep2 = anomaly_transport_demo(G, cls, 2)
    assert rep2["n_squared_alpha"] == [4]
    assert rep2["fixed_exponent_divides_24"]
    assert rep2["modular_data_check"]["equivalence_found"]
