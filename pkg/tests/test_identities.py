"""Registry tests: every identity passes its sampled residual check, the
sampling is deterministic and guarded, and the numeric backend agrees with
the exact-series backend where both apply."""

from __future__ import annotations

import cmath

import pytest

from appell_kit.identities import (
    GUARD_TOL,
    REGISTRY,
    NonReachableGuardError,
    UnknownIdentityError,
    identity_residual,
    max_residual_over_samples,
    near_kappa_pole,
    near_theta_zero,
    registry_ids,
    sample_points,
    verify_registry,
)
from appell_kit.numeric import DomainError, EvalPoint, Nome, kappa, theta
from appell_kit.qexact import for1_sides

EXPECTED_IDS = {
    "ADDF", "DEF", "DEF2", "FOR1", "FOR2", "HADD", "HADD2", "HADD3",
    "HALFSER_M", "HALFSER_P", "ID4", "ID55", "ID5PROD", "ID5SUM", "ID6",
    "INV", "JAC", "QUASI", "SP1", "SP2", "SP3", "SP4", "SP5", "SQRT", "SYM",
}


def test_registry_inventory():
    assert set(registry_ids()) == EXPECTED_IDS
    assert len(REGISTRY) == 25
    for identity_id in registry_ids():
        assert REGISTRY[identity_id].description


@pytest.mark.parametrize("identity_id", sorted(EXPECTED_IDS))
def test_identity_worst_residual(identity_id):
    report = max_residual_over_samples(identity_id, count=30, seed=0)
    assert report.rel_residual < 1e-9, (
        f"{identity_id} worst residual {report.rel_residual:.3e} at "
        f"{dict(report.point.bindings)}, u = {report.nome.u}"
    )


def test_unknown_identity():
    with pytest.raises(UnknownIdentityError):
        identity_residual("NOPE", EvalPoint({}), Nome(0.3))
    with pytest.raises(UnknownIdentityError):
        max_residual_over_samples("NOPE")


def test_sampling_determinism():
    domain = REGISTRY["HADD"].domain
    first = sample_points(domain, 12, seed=7)
    second = sample_points(domain, 12, seed=7)
    assert [
        (sorted(p.bindings.items()), n.u) for p, n in first
    ] == [(sorted(p.bindings.items()), n.u) for p, n in second]
    third = sample_points(domain, 12, seed=8)
    assert [n.u for _, n in first] != [n.u for _, n in third]


def test_sampling_respects_guard_and_range():
    domain = REGISTRY["ID55"].domain
    for point, nome in sample_points(domain, 40, seed=3):
        assert domain.guard(dict(point.bindings), nome.u)
        assert 0.05 <= abs(nome.u) <= 0.75
        for name in domain.symbols:
            assert 0.5 <= abs(point[name]) <= 2.0


def test_guard_violation_raises():
    with pytest.raises(DomainError):
        identity_residual("DEF", EvalPoint({"a": 1.0 + 0j, "z": 1.2}), Nome(0.3))


def test_special_value_example():
    """kappa(-1, 1) = theta(1)/2 spelled out at one real nome."""
    u = 0.3
    assert abs(kappa(-1, 1, u) - theta(1, u) / 2) < 1e-14
    report = identity_residual("SP4", EvalPoint({}), Nome(u))
    assert report.rel_residual < 1e-14


def test_sqrt_checks_both_branches():
    point, nome = sample_points(REGISTRY["SQRT"].domain, 1, seed=11)[0]
    s = point["s"]
    assert abs(s * s - point["a"]) < 1e-12 * abs(point["a"])
    report = identity_residual("SQRT", point, nome)
    assert report.rel_residual < 1e-10


def test_def_identity_at_tiny_nome():
    """The defining relation degenerates gracefully: at u = 1e-9 both sides
    reduce to their n = 0 terms."""
    report = identity_residual(
        "DEF", EvalPoint({"a": 0.3 + 0.2j, "z": 1.2}), Nome(1e-9)
    )
    assert report.rel_residual < 1e-9


def test_for1_numeric_matches_exact_series():
    """Evaluate the exact-series sides of the first three-term relation at
    u = 0.3 and compare against direct numeric evaluation."""
    u = 0.3
    lhs_series, rhs_series = for1_sides(140)
    numeric_lhs = theta(1, u) * kappa(u, -1, u) + theta(-1, u) * kappa(-u, 1, u)
    numeric_rhs = theta(u, u) ** 3 / 2
    assert abs(lhs_series.evaluate(u) - numeric_lhs) < 1e-12 * abs(numeric_lhs)
    assert abs(rhs_series.evaluate(u) - numeric_rhs) < 1e-12 * abs(numeric_rhs)


def test_quasi_entry_runs_on_complex_nome():
    report = identity_residual("QUASI", EvalPoint({}), Nome(0.3 + 0.2j))
    assert report.rel_residual < 1e-9


def test_verify_registry_shape():
    reports = verify_registry(count=5, seed=1)
    assert sorted(reports) == sorted(EXPECTED_IDS)
    assert all(r.rel_residual < 1e-9 for r in reports.values())


def test_guard_helpers():
    u = 0.3
    assert near_kappa_pole(u**2 * (1 + 1e-6), u)
    assert not near_kappa_pole(1.5 + 0.5j, u)
    assert near_theta_zero(-(u**3) * (1 + 1e-6), u)
    assert not near_theta_zero(u**3, u)
    assert GUARD_TOL == 1e-3


def test_unreachable_guard_raises():
    from appell_kit.identities import DomainSpec

    impossible = DomainSpec(symbols=("a",), guard=lambda b, u: False)
    with pytest.raises(NonReachableGuardError):
        sample_points(impossible, 1, seed=0)
