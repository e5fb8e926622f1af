from __future__ import annotations

from fractions import Fraction
from itertools import product

import pytest

from qsuper.affine import ConfigError
from qsuper.rootdata import (
    _cc_scalar, build_root_data, canonical_element, rho_tilde, tau_on_cartan, tau_sum,
    verify_dual_basis, verify_root_data, verify_sum_identity, verify_tau_invariants,
)


def coords(v):
    return [Fraction(int(v[i, 0].p), int(v[i, 0].q)) for i in range(v.nrows())]


def by_id(rep):
    return {r.id.split("[")[0]: r for r in rep.records}


def test_rank_one_roots():
    rd = build_root_data(1)
    # coordinates (delta, eps1, del1, d)
    assert coords(rd.roots[0]) == [1, -1, 1, 0]
    assert coords(rd.roots[1]) == [0, 1, -1, 0]


def test_rank_two_roots_sum_to_delta():
    rd = build_root_data(2)
    total = rd.roots[0]
    for a in rd.roots[1:]:
        total = total + a
    assert coords(total) == coords(rd.delta())


def test_rank_one_dual_exchange_element():
    rd = build_root_data(1)
    assert coords(rd.dual["ex"]) == [0, Fraction(1, 2), Fraction(-1, 2), 0]
    assert rd.form(rd.h_ex, rd.dual["ex"]) == 1
    assert rd.form(rd.d, rd.c) == 1


@pytest.mark.parametrize("n", [1, 2, 3])
def test_dual_basis_pairing_exhaustive(n):
    rd = build_root_data(n)
    B, D = rd.basis(), rd.dual_basis()
    for (i, a), (j, b) in product(enumerate(B), enumerate(D)):
        assert rd.form(a, b) == (1 if i == j else 0)


def test_rank_must_be_positive():
    with pytest.raises(ConfigError):
        build_root_data(0)


def test_rank_one_tau_swaps_simple_roots():
    rd = build_root_data(1)
    A = tau_on_cartan(1, 0, rd)
    assert coords(A * rd.roots[0]) == coords(rd.roots[1])
    assert coords(A * rd.roots[1]) == coords(rd.roots[0])


@pytest.mark.parametrize("n,xi", [(1, 0), (2, 0), (2, 1), (3, 0), (3, 1)])
def test_rho_tilde_gives_principal_gradation(n, xi):
    rd = build_root_data(n)
    rho = rho_tilde(rd, xi)
    assert all(rd.form(rho, a) == 1 for a in rd.roots)


def test_canonical_element_is_inverse_form():
    rd = build_root_data(3)
    assert canonical_element(rd) == rd.gram.inv()


def test_cc_scalar_rank_one_xi_zero():
    assert _cc_scalar(1, Fraction(0)) == 0


@pytest.mark.parametrize("xi", [0, 1])
def test_rank_one_tau_invariants_hold(xi):
    assert verify_tau_invariants(1, xi).passed


def test_rank_one_xi_zero_sum_identities_hold():
    assert verify_sum_identity(1, 0).passed


def test_rank_one_xi_one_cc_coefficient_has_opposite_sign():
    # the measured c (x) c coefficient is -xi/2; the displayed scalar gives +xi/2
    rec = by_id(verify_sum_identity(1, 1))
    assert not rec["tau-sum-T"].passed
    assert "measured c (x) c coefficient -1/2" in rec["tau-sum-T"].note
    assert rec["tau-sum-perturbed"].passed


def test_rank_one_sum_matches_with_flipped_xi_sign():
    rd = build_root_data(1)
    A = tau_on_cartan(1, 1, rd)
    total = tau_sum(rd, A, canonical_element(rd))
    rho = rho_tilde(rd, 1)
    rest = total - rho * rd.c.transpose() - rd.c * rho.transpose()
    measured = Fraction(int(rest[0, 0].p), int(rest[0, 0].q))
    assert measured == Fraction(-1, 2)
    # -(2(n^2 - 1) + 3 xi)/6 at n = 1, xi = 1
    assert measured == -Fraction(2 * (1 - 1) + 3 * 1, 6)
    assert measured != -_cc_scalar(1, Fraction(1))


@pytest.mark.parametrize("n", [2, 3])
def test_higher_rank_cartan_matrix_is_not_cyclic(n):
    # (alpha_i, alpha_{i+1}) alternates in sign, so the index shift is no isometry
    rd = build_root_data(n)
    C = rd.cartan_matrix()
    m = 2 * n
    assert [C[i][(i + 1) % m] for i in range(m)] == [(-1) ** (i + 1) for i in range(m)]
    assert not by_id(verify_dual_basis(n))["cartan-cyclic-invariance"].passed


@pytest.mark.parametrize("n,xi", [(2, 0), (2, 1), (3, 1)])
def test_higher_rank_tau_is_not_an_isometry(n, xi):
    rec = by_id(verify_tau_invariants(n, xi))
    assert not rec["tau-tau-T"].passed
    assert rec["tau-c"].passed and rec["tau-order-2n"].passed


def test_full_root_data_suite_reports_failures():
    rep = verify_root_data(ns=(1, 2), xis=(0,))
    assert not rep.passed
    failing = {r.id for r in rep.failures()}
    assert all("n=2" in f for f in failing)
