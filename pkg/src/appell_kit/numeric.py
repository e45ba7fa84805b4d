"""Numeric kernel for theta series and the Appell-Lerch function kappa.

Everything is evaluated in the half-nome u with q = u**2, so the
half-integer powers of q that appear throughout the classical formulas
become integer powers of u and no square root is ever taken at evaluation
time.  The quarter-nome variants (vartheta0, vartheta1) take their own
nome argument v with q = v**4 for the same reason.

All series are bilateral sums over n in Z, summed symmetrically outward
from n = 0 with a term-size stopping rule controlled by TruncationPolicy.
"""

from __future__ import annotations

import cmath
from dataclasses import dataclass, field
from typing import Callable, Mapping


POLE_GUARD = 1e-8


class DomainError(ValueError):
    """Input outside the numeric domain (bad nome, zero binding, guard hit)."""


class PoleProximityError(DomainError):
    """A kappa denominator u**(2n) - a fell below the pole guard."""


class NonconvergenceError(ArithmeticError):
    """A series failed to meet the truncation policy within n_max terms."""


@dataclass(frozen=True)
class TruncationPolicy:
    """Stopping rule for the bilateral series: terms are added until the
    next term magnitude falls below eps_term times the running scale."""

    eps_term: float = 1e-16
    n_max: int = 200

    def __post_init__(self) -> None:
        if not (0.0 < self.eps_term < 1.0):
            raise DomainError("eps_term must lie in (0, 1)")
        if self.n_max < 4:
            raise DomainError("n_max must be at least 4")


DEFAULT_POLICY = TruncationPolicy()


@dataclass(frozen=True)
class Nome:
    """Half-nome u = q**(1/2) with 0 < |u| < 1."""

    u: complex

    def __post_init__(self) -> None:
        _require_nome(self.u)

    @property
    def q(self) -> complex:
        return self.u * self.u


@dataclass(frozen=True)
class EvalPoint:
    """Named nonzero complex bindings (subset of z, a, b, s, v) for one
    evaluation of an identity."""

    bindings: Mapping[str, complex]

    def __post_init__(self) -> None:
        clean = {}
        for name, value in dict(self.bindings).items():
            value = complex(value)
            if value == 0:
                raise DomainError(f"binding {name!r} must be nonzero")
            clean[name] = value
        object.__setattr__(self, "bindings", clean)

    def __getitem__(self, name: str) -> complex:
        try:
            return self.bindings[name]
        except KeyError:
            raise DomainError(f"missing binding {name!r}") from None

    def __contains__(self, name: str) -> bool:
        return name in self.bindings

    def items(self):
        return self.bindings.items()


@dataclass(frozen=True)
class ResidualReport:
    """Outcome of one identity check: lhs, rhs and scaled residuals for the
    worst component pair."""

    identity_id: str
    point: EvalPoint
    nome: Nome
    lhs: complex
    rhs: complex
    abs_residual: float
    scale: float
    rel_residual: float

    @classmethod
    def from_pairs(
        cls,
        identity_id: str,
        point: EvalPoint,
        nome: Nome,
        pairs: list[tuple[complex, complex]],
    ) -> "ResidualReport":
        if not pairs:
            raise DomainError("identity produced no value pairs")
        worst = None
        for lhs, rhs in pairs:
            abs_res = abs(lhs - rhs)
            scale = max(abs(lhs), abs(rhs), 1.0)
            rel = abs_res / scale
            if worst is None or rel > worst[4]:
                worst = (lhs, rhs, abs_res, scale, rel)
        lhs, rhs, abs_res, scale, rel = worst
        return cls(identity_id, point, nome, lhs, rhs, abs_res, scale, rel)


def _require_nome(u: complex) -> None:
    r = abs(u)
    if not 0.0 < r < 1.0:
        raise DomainError(f"half-nome u must satisfy 0 < |u| < 1, got |u| = {r}")


def _require_nonzero(value: complex, name: str) -> None:
    if value == 0:
        raise DomainError(f"{name} must be nonzero")


def _check_finite(total: complex, name: str) -> complex:
    if not (cmath.isfinite(total)):
        raise NonconvergenceError(f"{name} overflowed during summation")
    return total


def theta(z: complex, u: complex, pol: TruncationPolicy = DEFAULT_POLICY) -> complex:
    """Theta series sum_n u**(n*n) * z**n at nome q = u**2.

    Quasi-periodic: theta(q*z) = theta(z)/(u*z); zeros lie on -u * q**Z.
    """
    _require_nome(u)
    _require_nonzero(z, "z")
    eps, n_max = pol.eps_term, pol.n_max
    total = 1.0 + 0.0j
    scale = 1.0
    u_sq = u * u
    pw = 1.0 + 0.0j  # u**(n*n), advanced by the odd power u**(2n-1)
    odd = u
    zp = 1.0 + 0.0j
    zm = 1.0 + 0.0j
    for n in range(1, n_max + 1):
        pw *= odd
        odd *= u_sq
        zp *= z
        zm /= z
        tp = pw * zp
        tm = pw * zm
        ap = abs(tp)
        am = abs(tm)
        if n >= 3 and ap < eps * scale and am < eps * scale:
            return _check_finite(total, "theta")
        total += tp + tm
        if ap > scale:
            scale = ap
        if am > scale:
            scale = am
    raise NonconvergenceError("theta did not converge within n_max terms")


def theta_scale(z: complex, u: complex, pol: TruncationPolicy = DEFAULT_POLICY) -> float:
    """Sum of absolute term magnitudes of theta(z, u); the natural scale
    for deciding whether a computed theta value is suspiciously small."""
    return theta(abs(z), abs(u), pol).real


def theta2(z: complex, u: complex, pol: TruncationPolicy = DEFAULT_POLICY) -> complex:
    """Theta series at the squared nome: sum_n u**(2*n*n) * z**n = theta(z, u**2)."""
    _require_nome(u)
    return theta(z, u * u, pol)


def vartheta0(z: complex, v: complex, pol: TruncationPolicy = DEFAULT_POLICY) -> complex:
    """Even half-period theta sum_n q**(n*n) * z**(2n) at q = v**4."""
    _require_nome(v)
    _require_nonzero(z, "z")
    v_sq = v * v
    return theta(z * z, v_sq * v_sq, pol)


def vartheta1(z: complex, v: complex, pol: TruncationPolicy = DEFAULT_POLICY) -> complex:
    """Odd half-period theta sum_n v**((2n+1)**2) * z**(2n+1) at q = v**4.

    Terms for n and -(n+1) share the exponent (2n+1)**2, so the sum runs
    over m >= 0 with the paired argument powers z**(2m+1) + z**-(2m+1).
    """
    _require_nome(v)
    _require_nonzero(z, "z")
    eps, n_max = pol.eps_term, pol.n_max
    total = 0.0 + 0.0j
    scale = 0.0
    pw = v  # v**((2m+1)**2), advanced by v**(8m+8)
    v8 = v ** 8
    step = v8
    zp = z
    zm = 1.0 / z
    z_sq = z * z
    for m in range(0, n_max + 1):
        tp = pw * zp
        tm = pw * zm
        ap = abs(tp)
        am = abs(tm)
        if m >= 3 and ap < eps * scale and am < eps * scale:
            return _check_finite(total, "vartheta1")
        total += tp + tm
        if ap > scale:
            scale = ap
        if am > scale:
            scale = am
        pw *= step
        step *= v8
        zp *= z_sq
        zm /= z_sq
    raise NonconvergenceError("vartheta1 did not converge within n_max terms")


def dtheta_dz(z: complex, u: complex, pol: TruncationPolicy = DEFAULT_POLICY) -> complex:
    """Argument derivative sum_n n * u**(n*n) * z**(n-1) of theta.

    The n and -n terms are paired so dtheta_dz(1, u) cancels exactly.
    """
    _require_nome(u)
    _require_nonzero(z, "z")
    eps, n_max = pol.eps_term, pol.n_max
    total = 0.0 + 0.0j
    scale = 0.0
    u_sq = u * u
    pw = 1.0 + 0.0j
    odd = u
    zp = 1.0 + 0.0j  # z**(n-1)
    zm = 1.0 / (z * z)  # z**(-n-1)
    for n in range(1, n_max + 1):
        pw *= odd
        odd *= u_sq
        tp = n * pw * zp
        tm = n * pw * zm
        ap = abs(tp)
        am = abs(tm)
        if n >= 3 and ap < eps * scale and am < eps * scale:
            return _check_finite(total, "dtheta_dz")
        total += tp - tm
        if ap > scale:
            scale = ap
        if am > scale:
            scale = am
        zp *= z
        zm /= z
    raise NonconvergenceError("dtheta_dz did not converge within n_max terms")


def kappa(a: complex, z: complex, u: complex, pol: TruncationPolicy = DEFAULT_POLICY) -> complex:
    """Appell-Lerch sum sum_n u**(n*n) * z**n / (u**(2n) - a) at q = u**2.

    Poles in the parameter a sit on q**Z; every denominator actually used
    is checked against POLE_GUARD * max(1, |a|).
    """
    _require_nome(u)
    _require_nonzero(z, "z")
    _require_nonzero(a, "a")
    eps, n_max = pol.eps_term, pol.n_max
    guard = POLE_GUARD * max(1.0, abs(a))
    d0 = 1.0 - a
    if abs(d0) < guard:
        raise PoleProximityError(f"parameter a = {a} within {guard} of the pole q**0 = 1")
    total = 1.0 / d0
    scale = max(abs(total), 1e-300)
    u_sq = u * u
    pw = 1.0 + 0.0j
    odd = u
    up = 1.0 + 0.0j  # u**(2n)
    um = 1.0 + 0.0j  # u**(-2n)
    zp = 1.0 + 0.0j
    zm = 1.0 + 0.0j
    for n in range(1, n_max + 1):
        pw *= odd
        odd *= u_sq
        up *= u_sq
        um /= u_sq
        zp *= z
        zm /= z
        dp = up - a
        dm = um - a
        if abs(dp) < guard:
            raise PoleProximityError(f"parameter a = {a} within {guard} of the pole q**{n}")
        if abs(dm) < guard:
            raise PoleProximityError(f"parameter a = {a} within {guard} of the pole q**{-n}")
        tp = pw * zp / dp
        tm = pw * zm / dm
        ap = abs(tp)
        am = abs(tm)
        if n >= 3 and ap < eps * scale and am < eps * scale:
            return _check_finite(total, "kappa")
        total += tp + tm
        if ap > scale:
            scale = ap
        if am > scale:
            scale = am
    raise NonconvergenceError("kappa did not converge within n_max terms")


def kappa_bar(a: complex, z: complex, u: complex, pol: TruncationPolicy = DEFAULT_POLICY) -> complex:
    """Normalized variant theta(-a/u) * kappa(a, z): holomorphic in a across
    the kappa poles, but still guarded numerically by POLE_GUARD."""
    return theta(-a / u, u, pol) * kappa(a, z, u, pol)


def qpochhammer(x: complex, q: complex, pol: TruncationPolicy = DEFAULT_POLICY) -> complex:
    """Infinite product prod_{k>=0} (1 - x * q**k), truncated once
    |x * q**k| < eps_term."""
    if not abs(q) < 1.0:
        raise DomainError(f"qpochhammer requires |q| < 1, got |q| = {abs(q)}")
    eps, n_max = pol.eps_term, pol.n_max
    prod = 1.0 + 0.0j
    f = complex(x)
    for _ in range(n_max + 1):
        if abs(f) < eps:
            return _check_finite(prod, "qpochhammer")
        prod *= 1.0 - f
        f *= q
    raise NonconvergenceError("qpochhammer did not converge within n_max factors")


def near_power_orbit(
    value: complex,
    u: complex,
    *,
    sign: int = 1,
    parity: int | None = None,
    tol: float = 1e-3,
) -> bool:
    """Whether ``value`` lies within ``tol * max(1, |value|)`` of some point
    of the orbit ``{sign * u**e : e in Z}``, optionally restricted to
    exponents of a fixed parity (0 = even, 1 = odd).

    This is the workhorse behind sampling guards: kappa poles live on the
    orbit ``+u**even`` (that is, q**Z) and theta zeros on ``-u**odd``.  The
    orbit accumulates at 0, so values within the threshold of 0 count as
    near the orbit.
    """
    _require_nome(u)
    if sign not in (1, -1):
        raise DomainError(f"sign must be +1 or -1, got {sign}")
    if parity not in (None, 0, 1):
        raise DomainError(f"parity must be None, 0 or 1, got {parity}")
    thresh = tol * max(1.0, abs(value))
    if abs(value) <= thresh:
        return True
    # Non-negative exponents: |u**e| decreases; once it is far below |value|
    # no later exponent can come close.
    p = 1.0 + 0.0j
    for e in range(0, 400):
        if (parity is None or e % 2 == parity) and abs(value - sign * p) <= thresh:
            return True
        p *= u
        if abs(p) < 0.5 * min(thresh, abs(value)):
            break
    # Negative exponents: |u**e| grows without bound.
    p = 1.0 + 0.0j
    for e in range(1, 400):
        p /= u
        if abs(p) > 2.0 * abs(value) + 1.0:
            break
        if (parity is None or e % 2 == parity) and abs(value - sign * p) <= thresh:
            return True
    return False
