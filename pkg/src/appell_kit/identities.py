"""Registry-driven residual checks for the theta/kappa identity corpus.

Every displayed identity with free complex parameters is an entry in
``REGISTRY``: a recipe that, given an :class:`EvalPoint` and a :class:`Nome`,
evaluates one or more (lhs, rhs) pairs literally and reports the worst
relative residual via :class:`ResidualReport`.

Sampling is deterministic: ``sample_points`` draws |u| uniformly from the
identity's range (default [0.05, 0.75], so |q| <= 0.5625), arguments
uniformly, and |z|, |a|, |b| log-uniformly from [0.5, 2], then rejects any
draw that lands within 1e-3 of a kappa pole orbit (+u**even) or a theta zero
orbit (-u**odd) relevant to the identity.  Identities built on the square
roots s = a**(1/2) and v = u**(1/2) derive them from the principal branch;
the SQRT entry checks both signs of s at every sample.
"""

from __future__ import annotations

import cmath
import math
import random
from dataclasses import dataclass, field
from typing import Callable

from appell_kit.modular import kappa0
from appell_kit.numeric import (
    DEFAULT_POLICY,
    DomainError,
    EvalPoint,
    Nome,
    NonconvergenceError,
    ResidualReport,
    TruncationPolicy,
    dtheta_dz,
    kappa,
    kappa_bar,
    near_power_orbit,
    qpochhammer,
    theta,
    vartheta0,
    vartheta1,
)

#: Sampling guard distance (relative) from pole/zero orbits.  Far more
#: conservative than the 1e-8 evaluation guard inside kappa, it keeps the
#: condition number of every registry formula below ~1e3.
GUARD_TOL = 1e-3

PairFn = Callable[[EvalPoint, Nome, TruncationPolicy], list[tuple[complex, complex]]]
GuardFn = Callable[[dict[str, complex], complex], bool]


class UnknownIdentityError(KeyError):
    """Raised for an identity_id with no registry entry."""


def near_kappa_pole(a: complex, u: complex, tol: float = GUARD_TOL) -> bool:
    """Whether a sits within tol of the kappa pole orbit q**Z = +u**even."""
    return near_power_orbit(a, u, sign=1, parity=0, tol=tol)


def near_theta_zero(z: complex, u: complex, tol: float = GUARD_TOL) -> bool:
    """Whether z sits within tol of the theta zero orbit -u**odd.

    The same orbit serves theta2(z, u) = theta(z, u**2), whose zeros are
    -u**(2k+1) as well."""
    return near_power_orbit(z, u, sign=-1, parity=1, tol=tol)


def _accept_all(bindings: dict[str, complex], u: complex) -> bool:
    return True


@dataclass(frozen=True)
class DomainSpec:
    """Sampling recipe for one identity: which symbols to draw, which derived
    square-root bindings to attach, the admissible |u| range, and the guard
    predicate applied to candidate draws."""

    symbols: tuple[str, ...] = ()
    derived_sqrt: tuple[tuple[str, str], ...] = ()  # (new_name, source: symbol or "u")
    u_abs_range: tuple[float, float] = (0.05, 0.75)
    guard: GuardFn = _accept_all


@dataclass(frozen=True)
class IdentityDef:
    """One registry entry: identifier, human description, sampling domain,
    and the literal (lhs, rhs) pair evaluator."""

    identity_id: str
    description: str
    domain: DomainSpec
    pairs: PairFn


def _half_nome_series(sign: int, z: complex, u: complex, pol: TruncationPolicy) -> complex:
    """The one-sided expansion of kappa(-sign*u, z):
    sum_{n>=0} u**(n**2+2n) / (1 + sign*u**(2n+1)) * (z**-n + sign*z**(n+1)).

    sign=-1 gives kappa(u, z) (all minus signs), sign=+1 gives kappa(-u, z)
    (all plus signs).  Denominators stay away from 0 for |u| < 1, so only
    the usual geometric truncation applies."""
    eps, n_max = pol.eps_term, pol.n_max
    total = 0.0 + 0.0j
    scale = 1.0
    for n in range(n_max + 1):
        base = u ** (n * n + 2 * n)
        term = base / (1.0 + sign * u ** (2 * n + 1)) * (z ** (-n) + sign * z ** (n + 1))
        mag = abs(base) * max(abs(z) ** (-n), abs(z) ** (n + 1))
        if n >= 3 and mag < eps * scale:
            return total
        total += term
        scale = max(scale, mag)
    raise NonconvergenceError("half-nome series did not converge within n_max terms")


# ---------------------------------------------------------------------------
# Pair evaluators.  Each returns the literal (lhs, rhs) pairs of the printed
# identity; u is the half-nome, q = u*u throughout.
# ---------------------------------------------------------------------------


def _pairs_def(p: EvalPoint, nome: Nome, pol: TruncationPolicy):
    a, z, u = p["a"], p["z"], nome.u
    return [(kappa(a, u * u * z, u, pol), a * kappa(a, z, u, pol) + theta(z, u, pol))]


def _pairs_inv(p: EvalPoint, nome: Nome, pol: TruncationPolicy):
    a, z, u = p["a"], p["z"], nome.u
    return [(kappa(a, z, u, pol), -kappa(1 / a, u * u / z, u, pol) / a)]


def _pairs_def2(p: EvalPoint, nome: Nome, pol: TruncationPolicy):
    a, z, u = p["a"], p["z"], nome.u
    q = u * u
    lhs = kappa(q * a, z, u, pol)
    return [
        (lhs, z * kappa(a, q * z, u, pol) / u),
        (lhs, (a * z * kappa(a, z, u, pol) + z * theta(z, u, pol)) / u),
    ]


def _pairs_sym(p: EvalPoint, nome: Nome, pol: TruncationPolicy):
    a, z, u = p["a"], p["z"], nome.u
    return [
        (a * kappa_bar(a, z, u, pol), -u * z * kappa_bar(-u * z, -a / u, u, pol))
    ]


def _pairs_sqrt(p: EvalPoint, nome: Nome, pol: TruncationPolicy):
    z, v, u = p["z"], p["v"], nome.u
    pairs = []
    for s in (p["s"], -p["s"]):
        a = s * s
        lhs = kappa_bar(a * z, 1 / z, u, pol)
        c0 = vartheta0(1j * v * s * z, v, pol) / vartheta0(1j, v, pol)
        c1 = vartheta1(1j * v * s * z, v, pol) / vartheta1(1j * v * v, v, pol)
        rhs = c0 * kappa_bar(s / v, v * s, u, pol) + c1 * kappa_bar(v * s, s / v, u, pol)
        pairs.append((lhs, rhs))
    return pairs


def _pairs_addf(p: EvalPoint, nome: Nome, pol: TruncationPolicy):
    a, z, v, u = p["a"], p["z"], p["v"], nome.u
    lhs = theta(z * a, u, pol) * theta(z / a, u, pol)
    rhs = vartheta0(a, v, pol) * vartheta0(z, v, pol) + vartheta1(a, v, pol) * vartheta1(
        z, v, pol
    )
    return [(lhs, rhs)]


def _hadd_lhs(a, b, z, u, pol):
    return theta(b * z, u, pol) * kappa(a * b, z, u, pol) - theta(z, u, pol) * kappa(
        a, b * z, u, pol
    ) / b


def _pairs_hadd(p: EvalPoint, nome: Nome, pol: TruncationPolicy):
    a, b, z, u = p["a"], p["b"], p["z"], nome.u
    rhs = (
        theta(-u * b, u, pol)
        * theta(z / a, u, pol)
        / theta(-a / u, u, pol)
        * kappa(a * b, -u, u, pol)
    )
    return [(_hadd_lhs(a, b, z, u, pol), rhs)]


def _pairs_sp1(p: EvalPoint, nome: Nome, pol: TruncationPolicy):
    a, u = p["a"], nome.u
    rhs = (
        theta(1, u, pol)
        * theta(-1, u, pol)
        * theta(u, u, pol)
        / (2 * theta(-a / u, u, pol))
    )
    return [(kappa(a, -u, u, pol), rhs)]


def _pairs_hadd2(p: EvalPoint, nome: Nome, pol: TruncationPolicy):
    a, b, z, u = p["a"], p["b"], p["z"], nome.u
    rhs = (
        theta(1, u, pol)
        * theta(-1, u, pol)
        * theta(u, u, pol)
        * theta(-u * b, u, pol)
        * theta(z / a, u, pol)
        / (2 * theta(-a / u, u, pol) * theta(-a * b / u, u, pol))
    )
    return [(_hadd_lhs(a, b, z, u, pol), rhs)]


def _pairs_hadd3(p: EvalPoint, nome: Nome, pol: TruncationPolicy):
    a, z, u = p["a"], p["z"], nome.u
    lhs = kappa(a, z, u, pol)
    rhs = (u / a) * theta(z, u, pol) / theta(a * z / u, u, pol) * kappa(
        u, a * z / u, u, pol
    ) + theta(1, u, pol) * theta(u, u, pol) * theta(-a, u, pol) * theta(
        z / u, u, pol
    ) / (2 * theta(-a / u, u, pol) * theta(a * z / u, u, pol))
    return [(lhs, rhs)]


def _pairs_sp2(p: EvalPoint, nome: Nome, pol: TruncationPolicy):
    u = nome.u
    return [(kappa(-u, -u, u, pol), 0.5 * theta(-1, u, pol) * theta(u, u, pol))]


def _pairs_sp3(p: EvalPoint, nome: Nome, pol: TruncationPolicy):
    u = nome.u
    return [(kappa(-1, -u, u, pol), 0.5 * theta(1, u, pol) * theta(-1, u, pol))]


def _pairs_sp4(p: EvalPoint, nome: Nome, pol: TruncationPolicy):
    u = nome.u
    return [
        (kappa(-1, 1, u, pol), 0.5 * theta(1, u, pol)),
        (kappa(-1, -1, u, pol), 0.5 * theta(-1, u, pol)),
    ]


def _pairs_sp5(p: EvalPoint, nome: Nome, pol: TruncationPolicy):
    u = nome.u
    half = 0.5 * theta(u, u, pol)
    return [(kappa(u, u, u, pol), half), (kappa(-u, u, u, pol), half)]


def _pairs_halfser_p(p: EvalPoint, nome: Nome, pol: TruncationPolicy):
    z, u = p["z"], nome.u
    return [(kappa(u, z, u, pol), _half_nome_series(-1, z, u, pol))]


def _pairs_halfser_m(p: EvalPoint, nome: Nome, pol: TruncationPolicy):
    z, u = p["z"], nome.u
    return [(kappa(-u, z, u, pol), _half_nome_series(1, z, u, pol))]


def _pairs_id4(p: EvalPoint, nome: Nome, pol: TruncationPolicy):
    b, u = p["b"], nome.u
    lhs = 2 * kappa(u / b, u * b, u, pol)
    rhs = theta(b / u, u, pol) + theta(1, u, pol) * theta(b, u, pol) * theta(
        -u / b, u, pol
    ) / theta(-b, u, pol)
    return [(lhs, rhs)]


def _pairs_id5sum(p: EvalPoint, nome: Nome, pol: TruncationPolicy):
    b, u = p["b"], nome.u
    rhs = (
        theta(u, u, pol)
        * theta(b / u, u, pol)
        * theta(-b / u, u, pol)
        / (2 * theta(-b, u, pol))
    )
    return [(kappa(u / b, b, u, pol), rhs)]


def _pairs_id5prod(p: EvalPoint, nome: Nome, pol: TruncationPolicy):
    b, u = p["b"], nome.u
    q = u * u
    rhs = (
        qpochhammer(q, q, pol) ** 2
        * qpochhammer(-q, q, pol) ** 2
        * qpochhammer(-b, q, pol)
        * qpochhammer(-q / b, q, pol)
        * qpochhammer(b, q, pol)
        * qpochhammer(q / b, q, pol)
    ) / (qpochhammer(u * b, q, pol) * qpochhammer(u / b, q, pol))
    return [(kappa(u / b, b, u, pol), rhs)]


def _pairs_id55(p: EvalPoint, nome: Nome, pol: TruncationPolicy):
    a, z, u = p["a"], p["z"], nome.u
    lhs = theta(-z, u, pol) * kappa(a, z, u, pol) + theta(z, u, pol) * kappa(
        -a, -z, u, pol
    )
    rhs = (
        theta(u, u, pol) ** 2
        * theta(1, u, pol)
        * theta(-1, u, pol)
        * theta(-z / a, u, pol)
        / (2 * theta(u / a, u, pol) * theta(-u / a, u, pol))
    )
    return [(lhs, rhs)]


def _pairs_id6(p: EvalPoint, nome: Nome, pol: TruncationPolicy):
    b, u = p["b"], nome.u
    lhs = theta(u, u, pol) ** 2 * theta(-b, u, pol) * kappa(u / b, -b, u, pol)
    rhs = theta(u / b, u, pol) ** 2 * theta(-1, u, pol) * kappa(u, -1, u, pol) + theta(
        -u / b, u, pol
    ) ** 2 * theta(1, u, pol) * kappa(-u, 1, u, pol)
    return [(lhs, rhs)]


def _pairs_for1(p: EvalPoint, nome: Nome, pol: TruncationPolicy):
    u = nome.u
    lhs = theta(1, u, pol) * kappa(u, -1, u, pol) + theta(-1, u, pol) * kappa(
        -u, 1, u, pol
    )
    return [(lhs, 0.5 * theta(u, u, pol) ** 3)]


def _pairs_for2(p: EvalPoint, nome: Nome, pol: TruncationPolicy):
    u = nome.u
    lhs = theta(u, u, pol) ** 3 * kappa(-1, u, u, pol)
    rhs = theta(-1, u, pol) ** 3 * kappa(u, -1, u, pol) + theta(1, u, pol) ** 3 * kappa(
        -u, 1, u, pol
    )
    return [(lhs, rhs)]


def _pairs_jac(p: EvalPoint, nome: Nome, pol: TruncationPolicy):
    u = nome.u
    lhs = dtheta_dz(-1 / u, u, pol) / u
    rhs = 0.5 * theta(1, u, pol) * theta(-1, u, pol) * theta(u, u, pol)
    return [(lhs, rhs)]


def _pairs_quasi(p: EvalPoint, nome: Nome, pol: TruncationPolicy):
    u = nome.u
    tau = cmath.log(u) / (1j * math.pi)
    x0 = (tau + 1.0) / 2.0
    base = kappa0(x0, tau, pol)
    pairs = []
    for m in range(-2, 3):
        for n in range(-2, 3):
            lhs = kappa0(x0 + m + n * tau, tau, pol)
            rhs = cmath.exp(1j * math.pi * n * (tau + 1.0)) * base
            pairs.append((lhs, rhs))
    return pairs


# ---------------------------------------------------------------------------
# Guards: reject sampled bindings that land too close to a kappa pole orbit
# or a theta-denominator zero of the specific identity.
# ---------------------------------------------------------------------------


def _guard_def(b, u):
    return not near_kappa_pole(b["a"], u)


def _guard_inv(b, u):
    return not near_kappa_pole(b["a"], u) and not near_kappa_pole(1 / b["a"], u)


def _guard_def2(b, u):
    return not near_kappa_pole(b["a"], u) and not near_kappa_pole(u * u * b["a"], u)


def _guard_sym(b, u):
    return not near_kappa_pole(b["a"], u) and not near_kappa_pole(-u * b["z"], u)


def _guard_sqrt(b, u):
    v = b["v"]
    for w in (b["s"] * b["s"] * b["z"], b["s"] / v, v * b["s"]):
        if near_power_orbit(w, u, sign=1, parity=0, tol=GUARD_TOL):
            return False
        if near_power_orbit(w, u, sign=-1, parity=0, tol=GUARD_TOL):
            return False
    return True


def _guard_hadd(b, u):
    a, bb = b["a"], b["b"]
    return (
        not near_kappa_pole(a, u)
        and not near_kappa_pole(a * bb, u)
        and not near_theta_zero(-a / u, u)
    )


def _guard_sp1(b, u):
    return not near_kappa_pole(b["a"], u) and not near_theta_zero(-b["a"] / u, u)


def _guard_hadd2(b, u):
    a, bb = b["a"], b["b"]
    return (
        not near_kappa_pole(a, u)
        and not near_kappa_pole(a * bb, u)
        and not near_theta_zero(-a / u, u)
        and not near_theta_zero(-a * bb / u, u)
    )


def _guard_hadd3(b, u):
    a, z = b["a"], b["z"]
    return (
        not near_kappa_pole(a, u)
        and not near_theta_zero(a * z / u, u)
        and not near_theta_zero(-a / u, u)
    )


def _guard_id4(b, u):
    return not near_kappa_pole(u / b["b"], u) and not near_theta_zero(-b["b"], u)


def _guard_id5prod(b, u):
    return not near_kappa_pole(u / b["b"], u)


def _guard_id55(b, u):
    a = b["a"]
    return (
        not near_kappa_pole(a, u)
        and not near_kappa_pole(-a, u)
        and not near_theta_zero(u / a, u)
        and not near_theta_zero(-u / a, u)
    )


def _guard_id6(b, u):
    return not near_kappa_pole(u / b["b"], u)


_D = DomainSpec  # local shorthand for the table below

REGISTRY: dict[str, IdentityDef] = {
    d.identity_id: d
    for d in (
        IdentityDef(
            "DEF",
            "three-term defining relation kappa(a, q z) = a kappa(a, z) + theta(z)",
            _D(symbols=("a", "z"), guard=_guard_def),
            _pairs_def,
        ),
        IdentityDef(
            "INV",
            "inversion kappa(a, z) = -kappa(1/a, q/z) / a",
            _D(symbols=("a", "z"), guard=_guard_inv),
            _pairs_inv,
        ),
        IdentityDef(
            "DEF2",
            "parameter shift kappa(q a, z) = z kappa(a, q z)/u = (a z kappa(a,z) + z theta(z))/u",
            _D(symbols=("a", "z"), guard=_guard_def2),
            _pairs_def2,
        ),
        IdentityDef(
            "SYM",
            "symmetry a kappa_bar(a, z) = -u z kappa_bar(-u z, -a/u)",
            _D(symbols=("a", "z"), guard=_guard_sym),
            _pairs_sym,
        ),
        IdentityDef(
            "SQRT",
            "square-root expansion of kappa_bar(a z, 1/z) in vartheta0/vartheta1 "
            "coefficients, checked on both branches s and -s of a**(1/2)",
            _D(
                symbols=("a", "z"),
                derived_sqrt=(("s", "a"), ("v", "u")),
                guard=_guard_sqrt,
            ),
            _pairs_sqrt,
        ),
        IdentityDef(
            "ADDF",
            "addition formula theta(z a) theta(z/a) = vartheta0(a) vartheta0(z) + "
            "vartheta1(a) vartheta1(z)",
            _D(symbols=("a", "z"), derived_sqrt=(("v", "u"),)),
            _pairs_addf,
        ),
        IdentityDef(
            "HADD",
            "half addition: theta(b z) kappa(a b, z) - theta(z) kappa(a, b z)/b "
            "proportional to theta(z/a)",
            _D(symbols=("a", "b", "z"), guard=_guard_hadd),
            _pairs_hadd,
        ),
        IdentityDef(
            "SP1",
            "special value kappa(a, -u) = theta(1) theta(-1) theta(u) / (2 theta(-a/u))",
            _D(symbols=("a",), guard=_guard_sp1),
            _pairs_sp1,
        ),
        IdentityDef(
            "HADD2",
            "rank-2 addition formula: the HADD combination in fully factored theta form",
            _D(symbols=("a", "b", "z"), guard=_guard_hadd2),
            _pairs_hadd2,
        ),
        IdentityDef(
            "HADD3",
            "kappa(a, z) in terms of kappa(u, a z/u) plus an explicit theta quotient",
            _D(symbols=("a", "z"), guard=_guard_hadd3),
            _pairs_hadd3,
        ),
        IdentityDef(
            "SP2",
            "special value kappa(-u, -u) = theta(-1) theta(u) / 2",
            _D(),
            _pairs_sp2,
        ),
        IdentityDef(
            "SP3",
            "special value kappa(-1, -u) = theta(1) theta(-1) / 2",
            _D(),
            _pairs_sp3,
        ),
        IdentityDef(
            "SP4",
            "special values kappa(-1, 1) = theta(1)/2 and kappa(-1, -1) = theta(-1)/2",
            _D(),
            _pairs_sp4,
        ),
        IdentityDef(
            "SP5",
            "special values kappa(u, u) = kappa(-u, u) = theta(u)/2",
            _D(),
            _pairs_sp5,
        ),
        IdentityDef(
            "HALFSER_P",
            "one-sided series for kappa(u, z) with denominators 1 - u**(2n+1)",
            _D(symbols=("z",)),
            _pairs_halfser_p,
        ),
        IdentityDef(
            "HALFSER_M",
            "one-sided series for kappa(-u, z) with denominators 1 + u**(2n+1)",
            _D(symbols=("z",)),
            _pairs_halfser_m,
        ),
        IdentityDef(
            "ID4",
            "2 kappa(u/b, u b) = theta(b/u) + theta(1) theta(b) theta(-u/b) / theta(-b)",
            _D(symbols=("b",), guard=_guard_id4),
            _pairs_id4,
        ),
        IdentityDef(
            "ID5SUM",
            "kappa(u/b, b) = theta(u) theta(b/u) theta(-b/u) / (2 theta(-b))",
            _D(symbols=("b",), guard=_guard_id4),
            _pairs_id5sum,
        ),
        IdentityDef(
            "ID5PROD",
            "kappa(u/b, b) as a ratio of q-Pochhammer infinite products",
            _D(symbols=("b",), guard=_guard_id5prod),
            _pairs_id5prod,
        ),
        IdentityDef(
            "ID55",
            "theta(-z) kappa(a, z) + theta(z) kappa(-a, -z) in closed theta form",
            _D(symbols=("a", "z"), guard=_guard_id55),
            _pairs_id55,
        ),
        IdentityDef(
            "ID6",
            "theta(u)**2 theta(-b) kappa(u/b, -b) as a two-term theta/kappa combination",
            _D(symbols=("b",), guard=_guard_id6),
            _pairs_id6,
        ),
        IdentityDef(
            "FOR1",
            "theta(1) kappa(u, -1) + theta(-1) kappa(-u, 1) = theta(u)**3 / 2",
            _D(),
            _pairs_for1,
        ),
        IdentityDef(
            "FOR2",
            "theta(u)**3 kappa(-1, u) = theta(-1)**3 kappa(u, -1) + theta(1)**3 kappa(-u, 1)",
            _D(),
            _pairs_for2,
        ),
        IdentityDef(
            "JAC",
            "derivative value dtheta/dz at -1/u: u**-1 theta'(-1/u) = "
            "theta(1) theta(-1) theta(u) / 2",
            _D(),
            _pairs_jac,
        ),
        IdentityDef(
            "QUASI",
            "quasi-periodicity of kappa0 on the theta-zero translate "
            "x -> x + m + n tau, grid (m, n) in {-2..2}**2",
            _D(),
            _pairs_quasi,
        ),
    )
}


def registry_ids() -> tuple[str, ...]:
    """All identity identifiers, sorted."""
    return tuple(sorted(REGISTRY))


def get_identity(identity_id: str) -> IdentityDef:
    try:
        return REGISTRY[identity_id]
    except KeyError:
        raise UnknownIdentityError(
            f"unknown identity {identity_id!r}; known: {', '.join(registry_ids())}"
        ) from None


def identity_residual(
    identity_id: str,
    point: EvalPoint,
    nome: Nome,
    pol: TruncationPolicy = DEFAULT_POLICY,
) -> ResidualReport:
    """Evaluate both sides of the named identity at (point, nome) and report
    the worst relative residual among its (lhs, rhs) pairs.

    The point must satisfy the identity's guard; violations raise DomainError
    so that near-pole evaluations are never silently reported as residuals."""
    ident = get_identity(identity_id)
    bindings = dict(point.bindings)
    if not ident.domain.guard(bindings, nome.u):
        raise DomainError(
            f"point {bindings} violates the sampling guard of {identity_id}"
        )
    pairs = ident.pairs(point, nome, pol)
    return ResidualReport.from_pairs(identity_id, point, nome, pairs)


class NonReachableGuardError(RuntimeError):
    """Raised when rejection sampling cannot satisfy a guard (indicates a
    misconfigured domain, not bad luck)."""


def sample_points(
    domain: DomainSpec, count: int, seed: int = 0
) -> list[tuple[EvalPoint, Nome]]:
    """Deterministic guarded samples: same (domain, count, seed) always yields
    the same list.  Rejection sampling advances the stream until the guard
    accepts; the guard regions have tiny measure, so acceptance is fast."""
    if count < 1:
        raise DomainError(f"count must be >= 1, got {count}")
    rng = random.Random(seed)
    lo, hi = domain.u_abs_range
    out: list[tuple[EvalPoint, Nome]] = []
    attempts = 0
    while len(out) < count:
        attempts += 1
        if attempts > 1000 * count + 1000:
            raise NonReachableGuardError(
                f"guard accepted only {len(out)}/{count} points after {attempts} draws"
            )
        u = cmath.rect(rng.uniform(lo, hi), rng.uniform(0.0, 2.0 * math.pi))
        bindings: dict[str, complex] = {}
        for name in domain.symbols:
            mag = math.exp(rng.uniform(math.log(0.5), math.log(2.0)))
            bindings[name] = cmath.rect(mag, rng.uniform(0.0, 2.0 * math.pi))
        for new_name, source in domain.derived_sqrt:
            bindings[new_name] = cmath.sqrt(u if source == "u" else bindings[source])
        if not domain.guard(bindings, u):
            continue
        out.append((EvalPoint(bindings), Nome(u)))
    return out


def max_residual_over_samples(
    identity_id: str,
    count: int = 100,
    seed: int = 0,
    pol: TruncationPolicy = DEFAULT_POLICY,
) -> ResidualReport:
    """Worst-case ResidualReport for the identity over deterministic samples."""
    ident = get_identity(identity_id)
    worst: ResidualReport | None = None
    for point, nome in sample_points(ident.domain, count, seed):
        report = identity_residual(identity_id, point, nome, pol)
        if worst is None or report.rel_residual > worst.rel_residual:
            worst = report
    assert worst is not None
    return worst


def verify_registry(
    count: int = 100,
    seed: int = 0,
    pol: TruncationPolicy = DEFAULT_POLICY,
) -> dict[str, ResidualReport]:
    """Worst residual per registry identity, keyed by identifier (sorted)."""
    return {
        identity_id: max_residual_over_samples(identity_id, count, seed, pol)
        for identity_id in registry_ids()
    }
