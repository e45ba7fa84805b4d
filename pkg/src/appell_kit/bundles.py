"""Factors of automorphy on C* / q**Z and explicit gauge equivalences.

A rank-r factor of automorphy is a holomorphic matrix A(z) on C*; its
sections are the vector functions s with s(q z) = A(z) s(z).  The classical
example is the scalar factor 1/(u z) whose one-dimensional section space is
spanned by theta.  The rank-2 factors built here,

    F_a  = [[a, 1], [0, 1/(u z)]]      sections contain (kappa(a, z), theta(z))
    F'_a = [[1, 1], [0, a/(u z)]]
    P    = [[0, -1/(u z)], [1, 0]]     a pushforward-type factor

are linked by explicit meromorphic-looking but actually holomorphic gauge
matrices whose entries are kappa/theta combinations: B conjugates F'_a into
F_a, and C conjugates P into F'_1.  Both have constant determinant, and the
constants have independent closed forms in theta null values, which the
checks here compare against the kappa special-value forms.

The mu-expansion utilities express a b-translated section of the
tensor(F_{ab}, L) factor in the explicit three-element section basis
(v0, v1, v-1), with coefficients that are pure theta quotients.
"""

from __future__ import annotations

import cmath
import math
import random
from dataclasses import dataclass
from typing import Callable, Sequence

from appell_kit.numeric import (
    DEFAULT_POLICY,
    DomainError,
    EvalPoint,
    Nome,
    ResidualReport,
    TruncationPolicy,
    kappa,
    near_power_orbit,
    theta,
    theta2,
)

Matrix = tuple[tuple[complex, ...], ...]
MatrixFn = Callable[[complex], Matrix]
VectorFn = Callable[[complex], tuple[complex, ...]]


@dataclass(frozen=True)
class FactorOfAutomorphy:
    """Matrix factor A(z); sections satisfy s(q z) = A(z) s(z)."""

    rank: int
    label: str
    nome: Nome
    evaluator: MatrixFn


@dataclass(frozen=True)
class SectionCandidate:
    """A vector function to be tested against a factor's section equation."""

    rank: int
    label: str
    evaluator: VectorFn


@dataclass(frozen=True)
class GaugeMatrix:
    """Holomorphic G(z) with G(q z) A_source(z) = A_target(z) G(z) and
    constant determinant det G = -constant."""

    label: str
    nome: Nome
    source: FactorOfAutomorphy
    target: FactorOfAutomorphy
    constant: complex
    evaluator: MatrixFn

    @property
    def det_expected(self) -> complex:
        return -self.constant


def _mat_mul(a: Matrix, b: Matrix) -> Matrix:
    n, mid, m = len(a), len(b), len(b[0])
    return tuple(
        tuple(sum(a[i][k] * b[k][j] for k in range(mid)) for j in range(m))
        for i in range(n)
    )


def _mat_vec(a: Matrix, v: tuple[complex, ...]) -> tuple[complex, ...]:
    return tuple(sum(row[k] * v[k] for k in range(len(v))) for row in a)


def _mat_det(a: Matrix) -> complex:
    if len(a) == 1:
        return a[0][0]
    if len(a) == 2:
        return a[0][0] * a[1][1] - a[0][1] * a[1][0]
    raise DomainError(f"determinant implemented for ranks 1 and 2, got {len(a)}")


# ---------------------------------------------------------------------------
# The standard factors.
# ---------------------------------------------------------------------------


def make_L(u: complex) -> FactorOfAutomorphy:
    """Scalar factor 1/(u z); theta is a section."""
    nome = Nome(u)

    def ev(z: complex) -> Matrix:
        return ((1.0 / (u * z),),)

    return FactorOfAutomorphy(1, "L", nome, ev)


def make_Fa(a: complex, u: complex) -> FactorOfAutomorphy:
    """Upper-triangular factor [[a, 1], [0, 1/(u z)]]; the section equation of
    its first row is the three-term relation defining kappa."""
    nome = Nome(u)

    def ev(z: complex) -> Matrix:
        return ((complex(a), 1.0 + 0.0j), (0.0j, 1.0 / (u * z)))

    return FactorOfAutomorphy(2, f"F[{a}]", nome, ev)


def make_Fpa(a: complex, u: complex) -> FactorOfAutomorphy:
    """Companion factor [[1, 1], [0, a/(u z)]], gauge-equivalent to F_a."""
    nome = Nome(u)

    def ev(z: complex) -> Matrix:
        return ((1.0 + 0.0j, 1.0 + 0.0j), (0.0j, complex(a) / (u * z)))

    return FactorOfAutomorphy(2, f"F'[{a}]", nome, ev)


def make_push(u: complex) -> FactorOfAutomorphy:
    """Off-diagonal factor [[0, -1/(u z)], [1, 0]] (a rank-2 pushforward of a
    line factor along the degree-2 isogeny); its sections are built from
    theta2 = theta at the squared nome."""
    nome = Nome(u)

    def ev(z: complex) -> Matrix:
        return ((0.0j, -1.0 / (u * z)), (1.0 + 0.0j, 0.0j))

    return FactorOfAutomorphy(2, "P", nome, ev)


def tensor(factor: FactorOfAutomorphy, scalar: FactorOfAutomorphy) -> FactorOfAutomorphy:
    """Tensor a factor by a rank-1 factor: entrywise multiplication of A(z)
    by the scalar value."""
    if scalar.rank != 1:
        raise DomainError(f"second operand must have rank 1, got {scalar.rank}")
    if factor.nome != scalar.nome:
        raise DomainError("tensor operands must share a nome")

    def ev(z: complex) -> Matrix:
        s = scalar.evaluator(z)[0][0]
        return tuple(tuple(s * entry for entry in row) for row in factor.evaluator(z))

    return FactorOfAutomorphy(
        factor.rank, f"{factor.label}*{scalar.label}", factor.nome, ev
    )


# ---------------------------------------------------------------------------
# Sections.
# ---------------------------------------------------------------------------


def theta_section(u: complex, pol: TruncationPolicy = DEFAULT_POLICY) -> SectionCandidate:
    return SectionCandidate(1, "theta", lambda z: (theta(z, u, pol),))


def kappa_theta_section(
    a: complex, u: complex, pol: TruncationPolicy = DEFAULT_POLICY
) -> SectionCandidate:
    """(kappa(a, z), theta(z)): a section of F_a by the defining relation."""

    def ev(z: complex) -> tuple[complex, ...]:
        return (kappa(a, z, u, pol), theta(z, u, pol))

    return SectionCandidate(2, f"(kappa[{a}], theta)", ev)


def push_section(u: complex, pol: TruncationPolicy = DEFAULT_POLICY) -> SectionCandidate:
    """(-theta2(-u z), -theta2(-z/u)): a section of the pushforward factor P."""

    def ev(z: complex) -> tuple[complex, ...]:
        return (-theta2(-u * z, u, pol), -theta2(-z / u, u, pol))

    return SectionCandidate(2, "push-theta2", ev)


def basis_sections(
    a: complex, u: complex, pol: TruncationPolicy = DEFAULT_POLICY
) -> tuple[SectionCandidate, SectionCandidate, SectionCandidate]:
    """The three-element section basis (v0, v1, v-1) of tensor(F_a, L):

        v0  = (theta(z/a), 0)
        v1  = (theta(z) kappa(a, z), theta(z)**2)
        v-1 = (theta(-z) kappa(-a, -z), -theta(-z)**2)
    """

    def v0(z: complex) -> tuple[complex, ...]:
        return (theta(z / a, u, pol), 0.0j)

    def v1(z: complex) -> tuple[complex, ...]:
        th = theta(z, u, pol)
        return (th * kappa(a, z, u, pol), th * th)

    def vm1(z: complex) -> tuple[complex, ...]:
        th = theta(-z, u, pol)
        return (th * kappa(-a, -z, u, pol), -th * th)

    return (
        SectionCandidate(2, f"v0[{a}]", v0),
        SectionCandidate(2, f"v1[{a}]", v1),
        SectionCandidate(2, f"v-1[{a}]", vm1),
    )


def check_section(
    factor: FactorOfAutomorphy,
    section: SectionCandidate,
    points: Sequence[complex],
) -> float:
    """Worst relative residual of s(q z) - A(z) s(z) over the points."""
    if factor.rank != section.rank:
        raise DomainError(
            f"rank mismatch: factor {factor.rank}, section {section.rank}"
        )
    q = factor.nome.q
    worst = 0.0
    for z in points:
        shifted = section.evaluator(q * z)
        mapped = _mat_vec(factor.evaluator(z), section.evaluator(z))
        scale = max(1.0, *(abs(c) for c in shifted), *(abs(c) for c in mapped))
        worst = max(
            worst, max(abs(x - y) for x, y in zip(shifted, mapped)) / scale
        )
    return worst


# ---------------------------------------------------------------------------
# Determinant constants c_a and c, each with two independent closed forms.
# ---------------------------------------------------------------------------


def c_a_theta(a: complex, u: complex, pol: TruncationPolicy = DEFAULT_POLICY) -> complex:
    """c_a = theta(1)**2 theta(-1)**2 theta(u)**2 /
    (4 a theta(-a/u) theta(-u a)), the theta-null form."""
    num = (
        theta(1, u, pol) ** 2 * theta(-1, u, pol) ** 2 * theta(u, u, pol) ** 2
    )
    return num / (4 * a * theta(-a / u, u, pol) * theta(-u * a, u, pol))


def c_a_kappa(a: complex, u: complex, pol: TruncationPolicy = DEFAULT_POLICY) -> complex:
    """c_a = kappa(a, -u) kappa(1/a, -u) / a, the kappa special-value form."""
    return kappa(a, -u, u, pol) * kappa(1 / a, -u, u, pol) / a


def lambda_constant(u: complex, pol: TruncationPolicy = DEFAULT_POLICY) -> complex:
    """lambda = theta2(1) theta2(q) / theta(u), the normalizing constant of
    the gauge from the pushforward factor."""
    q = u * u
    return theta2(1, u, pol) * theta2(q, u, pol) / theta(u, u, pol)


def c_constant_theta(u: complex, pol: TruncationPolicy = DEFAULT_POLICY) -> complex:
    """c = lambda theta(1) theta(-1)."""
    return lambda_constant(u, pol) * theta(1, u, pol) * theta(-1, u, pol)


def c_constant_kappa(u: complex, pol: TruncationPolicy = DEFAULT_POLICY) -> complex:
    """c = -2 lambda kappa(-1, -1/u) (equivalently +2 lambda kappa(-1, -u))."""
    return -2.0 * lambda_constant(u, pol) * kappa(-1, -1 / u, u, pol)


# ---------------------------------------------------------------------------
# The two gauge matrices.
# ---------------------------------------------------------------------------


def build_B(
    a: complex, u: complex, pol: TruncationPolicy = DEFAULT_POLICY
) -> GaugeMatrix:
    """Gauge matrix from F'_a to F_a:

        B = [[kappa(a,z), (c_a - kappa(a,z) kappa(1/a,z)/a) / theta(z)],
             [theta(z),   -kappa(1/a,z)/a]]

    with det B = -c_a identically.  The (1,2) entry is holomorphic: its
    numerator vanishes wherever theta does."""
    if near_power_orbit(a, u, sign=1, parity=0, tol=1e-6):
        raise DomainError(f"parameter a = {a} too close to the pole orbit q**Z")
    ca = c_a_theta(a, u, pol)

    def ev(z: complex) -> Matrix:
        ka = kappa(a, z, u, pol)
        ki = kappa(1 / a, z, u, pol)
        th = theta(z, u, pol)
        return ((ka, (ca - ka * ki / a) / th), (th, -ki / a))

    return GaugeMatrix(
        f"B[{a}]", Nome(u), make_Fpa(a, u), make_Fa(a, u), ca, ev
    )


def build_C(u: complex, pol: TruncationPolicy = DEFAULT_POLICY) -> GaugeMatrix:
    """Gauge matrix from the pushforward factor P to F'_1:

        C = [[lambda (theta(1)theta(-1)/2 - kappa(-1,-z)) / theta2(-u z),
              lambda (theta(1)theta(-1)/2 + kappa(-1,-z)) / theta2(-z/u)],
             [theta2(-z/u), -theta2(-u z)]]

    with det C = -c identically; both ratio entries are holomorphic."""
    lam = lambda_constant(u, pol)
    half = 0.5 * theta(1, u, pol) * theta(-1, u, pol)
    c = c_constant_theta(u, pol)

    def ev(z: complex) -> Matrix:
        k = kappa(-1, -z, u, pol)
        t_up = theta2(-u * z, u, pol)
        t_dn = theta2(-z / u, u, pol)
        return (
            (lam * (half - k) / t_up, lam * (half + k) / t_dn),
            (t_dn, -t_up),
        )

    return GaugeMatrix("C", Nome(u), make_push(u), make_Fpa(1.0, u), c, ev)


def gauge_residual(gauge: GaugeMatrix, points: Sequence[complex]) -> float:
    """Worst relative residual of the intertwining equation
    G(q z) A_source(z) = A_target(z) G(z) over the points."""
    q = gauge.nome.q
    worst = 0.0
    for z in points:
        left = _mat_mul(gauge.evaluator(q * z), gauge.source.evaluator(z))
        right = _mat_mul(gauge.target.evaluator(z), gauge.evaluator(z))
        scale = max(
            1.0,
            *(abs(e) for row in left for e in row),
            *(abs(e) for row in right for e in row),
        )
        diff = max(
            abs(left[i][j] - right[i][j])
            for i in range(gauge.source.rank)
            for j in range(gauge.source.rank)
        )
        worst = max(worst, diff / scale)
    return worst


def determinant_spread(gauge: GaugeMatrix, points: Sequence[complex]) -> float:
    """Worst relative deviation of det G(z) from its expected constant."""
    expected = gauge.det_expected
    scale = max(1.0, abs(expected))
    return max(abs(_mat_det(gauge.evaluator(z)) - expected) for z in points) / scale


# ---------------------------------------------------------------------------
# Bezout pair for the two squared-nome theta generators.
# ---------------------------------------------------------------------------


def bezout_pair(
    u: complex, pol: TruncationPolicy = DEFAULT_POLICY
) -> tuple[Callable[[complex], complex], Callable[[complex], complex]]:
    """Holomorphic (phi1, phi2) with

        phi1(w) theta2(w) - phi2(w) theta2(q w) = 1   for all w in C*.

    Both are rescaled entries of the gauge matrix C evaluated at z = -u w;
    the theta2 denominators cancel against zeros of the numerators."""
    lam = lambda_constant(u, pol)
    half = 0.5 * theta(1, u, pol) * theta(-1, u, pol)
    c = c_constant_theta(u, pol)
    q = u * u

    def phi1(w: complex) -> complex:
        return lam * (half + kappa(-1, u * w, u, pol)) / (c * theta2(w, u, pol))

    def phi2(w: complex) -> complex:
        return -lam * (half - kappa(-1, u * w, u, pol)) / (c * theta2(q * w, u, pol))

    return phi1, phi2


def bezout_residual(
    u: complex, w: complex, pol: TruncationPolicy = DEFAULT_POLICY
) -> float:
    """|phi1(w) theta2(w) - phi2(w) theta2(q w) - 1| at one point."""
    phi1, phi2 = bezout_pair(u, pol)
    q = u * u
    value = phi1(w) * theta2(w, u, pol) - phi2(w) * theta2(q * w, u, pol)
    return abs(value - 1.0)


# ---------------------------------------------------------------------------
# mu-expansion: a b-translated section in the (v0, v1, v-1) basis.
# ---------------------------------------------------------------------------


def mu_lambda(b: complex, u: complex, pol: TruncationPolicy = DEFAULT_POLICY) -> complex:
    """Coefficient lambda_b = theta(u/b) theta(u b) / theta(u)**2."""
    return theta(u / b, u, pol) * theta(u * b, u, pol) / theta(u, u, pol) ** 2


def mu_nu(
    a: complex, b: complex, u: complex, pol: TruncationPolicy = DEFAULT_POLICY
) -> complex:
    """Coefficient nu_{a,b} = theta(1) theta(u b) theta(-u b) theta(-u/b)
    theta(b) theta(a b) / (2 theta(u) theta(-u/a) theta(a b/u) theta(-a b**2))."""
    num = (
        theta(1, u, pol)
        * theta(u * b, u, pol)
        * theta(-u * b, u, pol)
        * theta(-u / b, u, pol)
        * theta(b, u, pol)
        * theta(a * b, u, pol)
    )
    den = (
        2.0
        * theta(u, u, pol)
        * theta(-u / a, u, pol)
        * theta(a * b / u, u, pol)
        * theta(-a * b * b, u, pol)
    )
    return num / den


def mu_sample_ok(a: complex, b: complex, u: complex, tol: float = 1e-3) -> bool:
    """Guard for the mu-expansion: the kappa parameters a, ab, -ab must stay
    off the pole orbit +u**even, and the theta arguments -u/a, ab/u, -ab/u,
    -ab**2 off the zero orbit -u**odd."""
    for w in (a, a * b, -a * b):
        if near_power_orbit(w, u, sign=1, parity=0, tol=tol):
            return False
    for w in (-u / a, a * b / u, -a * b / u, -a * b * b):
        if near_power_orbit(w, u, sign=-1, parity=1, tol=tol):
            return False
    return True


def mu_expansion_residual(
    a: complex,
    b: complex,
    u: complex,
    zs: Sequence[complex],
    pol: TruncationPolicy = DEFAULT_POLICY,
) -> ResidualReport:
    """Check, componentwise at each z, that the b-translated section

        w(z) = (theta(z/b) kappa(a, b z)/b,  theta(z/b) theta(b z))

    of tensor(F_{ab}, L) expands as

        w = lambda_b v1 - lambda_{-b} v-1 + (nu_{a,b} - nu_{a,-b}) v0

    in the section basis for parameter a b."""
    if not mu_sample_ok(a, b, u):
        raise DomainError(
            f"(a, b) = ({a}, {b}) violates the mu-expansion sampling guard"
        )
    lam_p = mu_lambda(b, u, pol)
    lam_m = mu_lambda(-b, u, pol)
    nu_diff = mu_nu(a, b, u, pol) - mu_nu(a, -b, u, pol)
    v0, v1, vm1 = basis_sections(a * b, u, pol)
    pairs: list[tuple[complex, complex]] = []
    for z in zs:
        w = (
            theta(z / b, u, pol) * kappa(a, b * z, u, pol) / b,
            theta(z / b, u, pol) * theta(b * z, u, pol),
        )
        x0, x1, xm1 = v0.evaluator(z), v1.evaluator(z), vm1.evaluator(z)
        rhs = tuple(
            lam_p * x1[i] - lam_m * xm1[i] + nu_diff * x0[i] for i in range(2)
        )
        pairs.extend(zip(w, rhs))
    return ResidualReport.from_pairs(
        "MU_EXPANSION", EvalPoint({"a": a, "b": b}), Nome(u), pairs
    )


def sample_z_points(
    u: complex,
    count: int,
    seed: int = 0,
    radius_range: tuple[float, float] = (0.5, 2.0),
) -> list[complex]:
    """Deterministic annulus samples kept clear of the orbits +-u**odd, where
    theta(z) and the theta2 gauge denominators vanish."""
    rng = random.Random(seed)
    lo, hi = radius_range
    out: list[complex] = []
    while len(out) < count:
        z = cmath.rect(
            math.exp(rng.uniform(math.log(lo), math.log(hi))),
            rng.uniform(0.0, 2.0 * math.pi),
        )
        if near_power_orbit(z, u, sign=-1, parity=1, tol=1e-3):
            continue
        if near_power_orbit(z, u, sign=1, parity=1, tol=1e-3):
            continue
        out.append(z)
    return out
