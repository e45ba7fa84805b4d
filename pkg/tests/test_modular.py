"""Modular-transform tests: group membership and action, the two characters,
the scalar cocycle, kappa0 asymptotics and quasi-periodicity, the exact
index map on theta zeros, and divisibility of the modular defect."""

from __future__ import annotations

import cmath
import math
import random

import pytest

from appell_kit.modular import (
    GAMMA_GENERATORS,
    GAMMA_IDENTITY,
    MIN_IM_TAU,
    AdditivePoint,
    GammaElement,
    ThetaZeroIndex,
    act,
    act_tau,
    chi,
    divisibility_residual,
    gamma_check,
    gamma_zero_index,
    k_gamma,
    kappa0,
    kappa0_at_zero,
    modular_defect,
    phi_gamma,
    theta_additive,
    theta_zero,
    zero_grid,
    zeta_sq,
)
from appell_kit.numeric import DomainError, theta

T2 = GammaElement(1, 2, 0, 1)
V = GammaElement(1, 0, 2, 1)
S = GammaElement(0, -1, 1, 0)
TAUS = (1.2j, 2.0j, 0.5 + 1.5j)


def test_membership_validation():
    gamma_check(1, 2, 0, 1)
    gamma_check(0, -1, 1, 0)
    gamma_check(1, 0, 2, 1)
    gamma_check(3, 2, 4, 3)
    with pytest.raises(DomainError):
        gamma_check(1, 1, 0, 1)  # b*d odd
    with pytest.raises(DomainError):
        gamma_check(1, 0, 1, 1)  # a*c odd
    with pytest.raises(DomainError):
        gamma_check(2, 0, 0, 2)  # det != 1
    with pytest.raises(DomainError):
        GammaElement(1.0, 0, 0, 1)  # non-integer entries


def test_group_operations():
    g = T2 @ V @ S
    assert g @ g.inverse() == GAMMA_IDENTITY
    assert GAMMA_IDENTITY.is_identity
    assert not T2.is_identity
    assert len(GAMMA_GENERATORS) == 5


def test_moebius_action_composes():
    tau = 0.3 + 1.1j
    for g1 in (T2, V, S):
        for g2 in (V, S, T2 @ V):
            composed = act_tau(g1 @ g2, tau)
            nested = act_tau(g1, act_tau(g2, tau))
            assert abs(composed - nested) < 1e-12
    point = act(S, AdditivePoint(0.3 + 0.2j, tau))
    assert point.tau == pytest.approx(act_tau(S, tau))


def test_character_values():
    assert zeta_sq(GAMMA_IDENTITY) == 1
    assert chi(GAMMA_IDENTITY) == 1
    assert chi(T2) == 1j
    assert zeta_sq(T2) == 1
    assert zeta_sq(S) == -1j
    assert zeta_sq(V) == 1
    for g in (T2, V, S, T2 @ V, S @ T2):
        assert abs(abs(zeta_sq(g)) - 1.0) < 1e-15
        assert abs(abs(chi(g)) - 1.0) < 1e-15


def test_chi_multiplicative_on_parabolic_words():
    parabolic = GAMMA_GENERATORS[:4]
    rng = random.Random(0)

    def word():
        g = GAMMA_IDENTITY
        for _ in range(rng.randint(1, 4)):
            g = g @ rng.choice(parabolic)
        return g

    for _ in range(50):
        g1, g2 = word(), word()
        assert abs(chi(g1 @ g2) - chi(g1) * chi(g2)) < 1e-12


def test_theta_null_cocycle():
    """theta(0, g.tau)**2 / theta(0, tau)**2 = zeta_sq(g) * (c tau + d)."""
    for g in (T2, V, S, T2 @ V, V @ V @ T2, S @ T2):
        for tau in (0.3 + 1.1j, 1.7j):
            lhs = theta_additive(0, act_tau(g, tau)) ** 2 / theta_additive(0, tau) ** 2
            rhs = zeta_sq(g) * (g.c * tau + g.d)
            assert abs(lhs - rhs) <= 1e-8 * max(1.0, abs(rhs))


def test_k_gamma_identity_is_exactly_one():
    assert k_gamma(GAMMA_IDENTITY, 1.3j) == 1.0
    assert k_gamma(GAMMA_IDENTITY, 0.4 + 2.1j) == 1.0


def test_kappa0_large_imaginary_tau_asymptotics():
    """For Im tau large the nome is tiny and kappa0(x, tau) approaches
    exp(3 pi i tau / 4) * (1 + exp(2 pi i x))."""
    tau = 5.0j
    for x in (0.3, 0.1 + 0.2j):
        expected = cmath.exp(0.75j * math.pi * tau) * (
            1.0 + cmath.exp(2j * math.pi * x)
        )
        assert abs(kappa0(x, tau) - expected) <= 1e-5 * abs(expected)


def test_kappa0_at_base_zero_matches_special_value():
    """At x0 = (tau+1)/2 the multiplicative argument is -u, so kappa0 reduces
    to exp(3 pi i tau/4) * theta(-1) theta(u) / 2."""
    for tau in (1.5j, 0.4 + 1.3j):
        u = cmath.exp(1j * math.pi * tau)
        expected = (
            cmath.exp(0.75j * math.pi * tau) * 0.5 * theta(-1, u) * theta(u, u)
        )
        value = kappa0((tau + 1.0) / 2.0, tau)
        assert abs(value - expected) <= 1e-12 * max(1.0, abs(expected))


def test_kappa0_quasi_periodicity():
    tau = 0.3 + 1.4j
    x0 = (tau + 1.0) / 2.0
    for m in (-2, 0, 1):
        for n in (-2, -1, 0, 1, 2):
            direct = kappa0(x0 + m + n * tau, tau)
            reduced = kappa0_at_zero(ThetaZeroIndex(m, n), tau)
            assert abs(direct - reduced) <= 1e-10 * max(1.0, abs(direct))


def test_gamma_zero_index_is_exact():
    """x/(c tau + d) lands exactly on the mapped theta zero of gamma.tau."""
    rng = random.Random(3)
    elements = [T2, V, S, T2 @ V, S @ T2, V @ T2 @ V]
    for g in elements:
        for _ in range(5):
            index = ThetaZeroIndex(rng.randint(-3, 3), rng.randint(-3, 3))
            tau = rng.uniform(-0.5, 0.5) + 1j * rng.uniform(0.8, 2.0)
            mapped = gamma_zero_index(g, index)
            lhs = theta_zero(index, tau) / (g.c * tau + g.d)
            rhs = theta_zero(mapped, act_tau(g, tau))
            assert abs(lhs - rhs) < 1e-10 * max(1.0, abs(lhs))


def test_zero_grid_shape():
    grid = zero_grid(1)
    assert len(grid) == 9
    assert grid[0] == ThetaZeroIndex(-1, -1)
    assert ThetaZeroIndex(0, 0) in grid
    with pytest.raises(DomainError):
        zero_grid(-1)


def test_divisibility_identity_element_is_exact_zero():
    assert modular_defect(GAMMA_IDENTITY, 0.3 + 0.2j, 1.5j) == 0j
    assert divisibility_residual(GAMMA_IDENTITY, 1.5j) == 0.0


@pytest.mark.parametrize("gamma", (T2, V))
@pytest.mark.parametrize("tau", TAUS)
def test_divisibility_generators(gamma, tau):
    assert divisibility_residual(gamma, tau, zero_grid(1)) < 1e-10


def test_divisibility_random_words_with_skip_accounting():
    rng = random.Random(1)

    def word():
        g = GAMMA_IDENTITY
        for _ in range(rng.randint(1, 3)):
            g = g @ rng.choice(GAMMA_GENERATORS)
        return g

    valid = skipped = 0
    worst = 0.0
    for _ in range(10):
        g = word()
        for tau in TAUS:
            try:
                worst = max(worst, divisibility_residual(g, tau, zero_grid(1)))
                valid += 1
            except DomainError:
                skipped += 1
    assert valid > 0
    assert valid + skipped == 30
    assert worst < 1e-10


def test_divisibility_domain_guard():
    """Elements that push Im gamma.tau below the floor must be refused, not
    silently evaluated in an ill-conditioned regime."""
    squeezing = GammaElement(1, 2, 4, 9)
    for tau in TAUS:
        gtau = act_tau(squeezing, tau)
        assert gtau.imag < MIN_IM_TAU
        with pytest.raises(DomainError):
            divisibility_residual(squeezing, tau)
    with pytest.raises(DomainError):
        divisibility_residual(T2, 0.05j)


def test_raw_defect_vanishes_on_zero_grid():
    """The raw bilateral-series route (no quasi-periodicity reduction) agrees
    that the defect vanishes on the central grid, where conditioning allows."""
    tau = 2.0j
    for gamma in (T2, V):
        for index in zero_grid(1):
            x = theta_zero(index, tau)
            assert abs(modular_defect(gamma, x, tau)) < 1e-9


def test_phi_gamma_identity_and_plugback():
    tau = 1.5j
    x = 0.31 + 0.17j
    assert phi_gamma(GAMMA_IDENTITY, x, tau) == 0j
    gamma = T2 @ V
    u = cmath.exp(1j * math.pi * tau)
    value = phi_gamma(gamma, x, tau)
    reconstructed = (
        value
        * cmath.exp(0.75j * math.pi * act_tau(gamma, tau))
        * theta(cmath.exp(2j * math.pi * x), u)
    )
    defect = modular_defect(gamma, x, tau)
    assert abs(reconstructed - defect) <= 1e-12 * max(1.0, abs(defect))


def test_phi_gamma_guard_near_theta_zero():
    tau = 1.5j
    x = (tau + 1.0) / 2.0
    with pytest.raises(DomainError):
        phi_gamma(T2, x, tau)


def test_phi_gamma_bounded_along_segment():
    """phi stays O(1) along a segment crossing the fundamental cell, away
    from zeros: the quotient really is holomorphic, not merely meromorphic."""
    tau = 1.5j
    gamma = V
    values = [
        abs(phi_gamma(gamma, 0.05 + t * 0.08 + 0.21j, tau)) for t in range(0, 11)
    ]
    assert max(values) < 1e3
