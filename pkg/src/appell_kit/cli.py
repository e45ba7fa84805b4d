"""Command-line interface: verify / eval / qseries / modular.

Reports are deterministic for fixed arguments and seed: JSON output is
emitted with sorted keys and no timestamps, so identical invocations are
byte-identical.  Wall-clock timing goes to stderr only.

Exit codes: 0 = success, 1 = a verification record failed, 2 = usage or
domain error (bad arguments, parameters outside the numeric domain).
"""

from __future__ import annotations

import argparse
import cmath
import json
import math
import os
import random
import sys
import time
from typing import Sequence

from appell_kit import bundles, identities, modular, qexact
from appell_kit.numeric import (
    DomainError,
    kappa,
    kappa_bar,
    near_power_orbit,
    theta,
    vartheta0,
    vartheta1,
)

#: Nome values swept by the bundle suite; one real, one complex.
BUNDLE_NOMES = (0.2 + 0.0j, 0.4 + 0.1j)

#: tau values swept by the modular suite.
MODULAR_TAUS = (1.2j, 2.0j, 0.5 + 1.5j)

SUITES = ("all", "numeric", "exact", "bundles", "modular")


def parse_complex(text: str) -> complex:
    """Parse a complex number accepting both 'i' and 'j' notation."""
    cleaned = text.strip().replace(" ", "").replace("i", "j").replace("I", "j")
    try:
        return complex(cleaned)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a complex number: {text!r}") from None


def format_value(value: complex) -> str:
    """15-significant-digit rendering re+imj, sign always explicit on im."""
    re, im = value.real, value.imag
    sign = "+" if (im >= 0 or im != im) else "-"
    return f"{re:.15g}{sign}{abs(im):.15g}j"


def _default_seed() -> int:
    try:
        return int(os.environ.get("APPELL_KIT_SEED", "0"))
    except ValueError:
        return 0


def _emit(text: str, out_path: str | None) -> None:
    if out_path:
        with open(out_path, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
    else:
        print(text)


def _record(
    record_id: str, kind: str, worst: float, tolerance: float, detail: str = ""
) -> dict:
    return {
        "record_id": record_id,
        "kind": kind,
        "worst": worst,
        "tolerance": tolerance,
        "passed": worst < tolerance,
        "detail": detail,
    }


def _exact_record(record_id: str, passed: bool, detail: str) -> dict:
    return {
        "record_id": record_id,
        "kind": "exact-coefficients",
        "worst": None,
        "tolerance": None,
        "passed": passed,
        "detail": detail,
    }


# ---------------------------------------------------------------------------
# verify suites
# ---------------------------------------------------------------------------


def _numeric_records(
    ids: Sequence[str], samples: int, seed: int, tolerance: float
) -> list[dict]:
    records = []
    for identity_id in ids:
        report = identities.max_residual_over_samples(identity_id, samples, seed)
        records.append(
            _record(
                identity_id,
                "numeric-sampled",
                report.rel_residual,
                tolerance,
                identities.REGISTRY[identity_id].description,
            )
        )
    return records


def _exact_records(exact_order: int) -> list[dict]:
    records = []
    for name, check in (("FOR1_EXACT", qexact.check_for1_exact), ("FOR2_EXACT", qexact.check_for2_exact)):
        mismatch = check(exact_order)
        records.append(
            _exact_record(
                name,
                mismatch is None,
                f"coefficients through u**{exact_order - 1} agree"
                if mismatch is None
                else f"first mismatch at exponent {mismatch}",
            )
        )
    q_order = exact_order // 2
    cube = qexact.triangular_gf(q_order + 1) ** 3
    for name, series in (
        ("TRIANGULAR_DOUBLE_SUM", qexact.as_q_series(qexact.double_sum_series(2 * q_order + 2))),
        ("TRIANGULAR_ANDREWS", qexact.as_q_series(qexact.andrews_series(2 * q_order + 2))),
    ):
        mismatch = cube.agrees_with(series)
        records.append(
            _exact_record(
                name,
                mismatch is None,
                f"matches the cubed generating function through q**{q_order}"
                if mismatch is None
                else f"first mismatch at exponent {mismatch}",
            )
        )
    counts = qexact.triangular_counts_bruteforce(q_order)
    series_counts = tuple(int(cube.coefficient(m)) for m in range(q_order + 1))
    records.append(
        _exact_record(
            "TRIANGULAR_COUNTS",
            series_counts == counts.counts,
            f"series coefficients equal brute-force triple counts through {q_order}",
        )
    )
    return records


def _sample_parameter(rng: random.Random) -> complex:
    return cmath.rect(
        math.exp(rng.uniform(math.log(0.5), math.log(2.0))),
        rng.uniform(0.0, 2.0 * math.pi),
    )


def _bundle_records(samples: int, seed: int, tolerance: float) -> list[dict]:
    rng = random.Random(seed)
    z_count = max(8, samples // 10)
    worst: dict[str, float] = {}

    def bump(key: str, value: float) -> None:
        worst[key] = max(worst.get(key, 0.0), value)

    for u in BUNDLE_NOMES:
        zs = bundles.sample_z_points(u, z_count, seed)
        bump("SECTION_THETA", bundles.check_section(bundles.make_L(u), bundles.theta_section(u), zs))
        bump("SECTION_PUSH", bundles.check_section(bundles.make_push(u), bundles.push_section(u), zs))
        a_values = []
        while len(a_values) < 2:
            a = _sample_parameter(rng)
            if not near_power_orbit(a, u, sign=1, parity=0, tol=1e-3):
                a_values.append(a)
        for a in a_values:
            bump(
                "SECTION_KAPPA_THETA",
                bundles.check_section(bundles.make_Fa(a, u), bundles.kappa_theta_section(a, u), zs),
            )
            factor = bundles.tensor(bundles.make_Fa(a, u), bundles.make_L(u))
            for section in bundles.basis_sections(a, u):
                bump("SECTION_BASIS", bundles.check_section(factor, section, zs))
            gauge_b = bundles.build_B(a, u)
            bump("GAUGE_B_CONJ", bundles.gauge_residual(gauge_b, zs))
            bump("DET_B_SPREAD", bundles.determinant_spread(gauge_b, zs))
            ca_t = bundles.c_a_theta(a, u)
            bump(
                "CONST_CA_CROSS",
                abs(ca_t - bundles.c_a_kappa(a, u)) / max(1.0, abs(ca_t)),
            )
        gauge_c = bundles.build_C(u)
        bump("GAUGE_C_CONJ", bundles.gauge_residual(gauge_c, zs))
        bump("DET_C_SPREAD", bundles.determinant_spread(gauge_c, zs))
        c_t = bundles.c_constant_theta(u)
        bump(
            "CONST_C_CROSS",
            abs(c_t - bundles.c_constant_kappa(u)) / max(1.0, abs(c_t)),
        )
        ws = bundles.sample_z_points(u, samples, seed + 1, radius_range=(0.3, 3.0))
        bump("BEZOUT_PAIR", max(bundles.bezout_residual(u, w) for w in ws))
        mu_pairs = 0
        while mu_pairs < max(4, samples // 20):
            a, b = _sample_parameter(rng), _sample_parameter(rng)
            if not bundles.mu_sample_ok(a, b, u):
                continue
            bump("MU_EXPANSION", bundles.mu_expansion_residual(a, b, u, zs).rel_residual)
            mu_pairs += 1
    return [
        _record(key, "bundle", value, tolerance) for key, value in sorted(worst.items())
    ]


def _random_word(rng: random.Random, alphabet, max_len: int) -> modular.GammaElement:
    g = modular.GAMMA_IDENTITY
    for _ in range(rng.randint(1, max_len)):
        g = g @ rng.choice(alphabet)
    return g


def _modular_records(samples: int, seed: int, tolerance: float, grid: int) -> list[dict]:
    rng = random.Random(seed)
    records = []

    # k_gamma at the identity is exactly 1.
    records.append(
        _record(
            "K_GAMMA_IDENTITY",
            "modular",
            abs(modular.k_gamma(modular.GAMMA_IDENTITY, 1.3j) - 1.0),
            tolerance,
            "scalar cocycle equals 1 at the identity element",
        )
    )

    # theta-null cocycle: theta(0, g.tau)**2 / theta(0, tau)**2 = zeta_sq * (c tau + d).
    t2, v_elt = modular.GammaElement(1, 2, 0, 1), modular.GammaElement(1, 0, 2, 1)
    s_elt = modular.GammaElement(0, -1, 1, 0)
    cocycle_worst = 0.0
    for g in (t2, v_elt, s_elt, t2 @ v_elt, v_elt @ v_elt @ t2, s_elt @ t2):
        for tau in (0.3 + 1.1j, 1.7j):
            lhs = modular.theta_additive(0, modular.act_tau(g, tau)) ** 2 / modular.theta_additive(0, tau) ** 2
            rhs = modular.zeta_sq(g) * (g.c * tau + g.d)
            cocycle_worst = max(cocycle_worst, abs(lhs - rhs) / max(1.0, abs(rhs)))
    records.append(
        _record(
            "ZETA_SQ_COCYCLE",
            "modular",
            cocycle_worst,
            tolerance,
            "squared theta-null transformation matches zeta_sq * (c tau + d)",
        )
    )

    # chi is multiplicative on words in the parabolic generators.
    parabolic = (
        t2,
        v_elt,
        modular.GammaElement(1, -2, 0, 1),
        modular.GammaElement(1, 0, -2, 1),
    )
    chi_worst = 0.0
    for _ in range(max(1, samples // 2)):
        g1 = _random_word(rng, parabolic, 4)
        g2 = _random_word(rng, parabolic, 4)
        chi_worst = max(
            chi_worst, abs(modular.chi(g1 @ g2) - modular.chi(g1) * modular.chi(g2))
        )
    records.append(
        _record(
            "CHI_MULTIPLICATIVITY",
            "modular",
            chi_worst,
            tolerance,
            "character of a product equals the product of characters",
        )
    )

    # Divisibility of the modular defect by theta, generators then random words.
    zeros = modular.zero_grid(grid)

    def divisibility_sweep(elements) -> tuple[float, int, int]:
        worst, valid, skipped = 0.0, 0, 0
        for g in elements:
            for tau in MODULAR_TAUS:
                try:
                    worst = max(worst, modular.divisibility_residual(g, tau, zeros))
                    valid += 1
                except DomainError:
                    skipped += 1
        return worst, valid, skipped

    gen_worst, gen_valid, gen_skipped = divisibility_sweep((t2, v_elt))
    records.append(
        _record(
            "DIVISIBILITY_GENERATORS",
            "modular",
            gen_worst if gen_valid else math.inf,
            tolerance,
            f"valid={gen_valid} skipped={gen_skipped}",
        )
    )
    words = [_random_word(rng, modular.GAMMA_GENERATORS, 3) for _ in range(10)]
    word_worst, word_valid, word_skipped = divisibility_sweep(words)
    records.append(
        _record(
            "DIVISIBILITY_WORDS",
            "modular",
            word_worst if word_valid else math.inf,
            tolerance,
            f"valid={word_valid} skipped={word_skipped}",
        )
    )
    return records


def _cmd_verify(args: argparse.Namespace) -> int:
    target = args.target
    records: list[dict] = []
    if target in ("all", "numeric"):
        records += _numeric_records(identities.registry_ids(), args.samples, args.seed, args.tolerance)
    if target in ("all", "exact"):
        records += _exact_records(args.exact_order)
    if target in ("all", "bundles"):
        records += _bundle_records(args.samples, args.seed, args.tolerance)
    if target in ("all", "modular"):
        records += _modular_records(args.samples, args.seed, args.tolerance, args.grid)
    if target not in SUITES:
        records += _numeric_records([target], args.samples, args.seed, args.tolerance)
        if target == "FOR1":
            records.append(_exact_records(args.exact_order)[0])
        elif target == "FOR2":
            records.append(_exact_records(args.exact_order)[1])
    records.sort(key=lambda r: r["record_id"])
    passed = all(r["passed"] for r in records)
    report = {
        "command": "verify",
        "target": target,
        "samples": args.samples,
        "seed": args.seed,
        "tolerance": args.tolerance,
        "exact_order": args.exact_order,
        "grid": args.grid,
        "passed": passed,
        "records": records,
    }
    if args.format == "json":
        _emit(json.dumps(report, sort_keys=True, indent=2), args.out)
    else:
        rows = ["record_id,kind,worst,tolerance,passed,detail"]
        for r in records:
            worst = "" if r["worst"] is None else repr(r["worst"])
            tol = "" if r["tolerance"] is None else repr(r["tolerance"])
            detail = r["detail"].replace(",", ";")
            rows.append(
                f"{r['record_id']},{r['kind']},{worst},{tol},{r['passed']},{detail}"
            )
        _emit("\n".join(rows), args.out)
    return 0 if passed else 1


# ---------------------------------------------------------------------------
# eval / qseries / modular subcommands
# ---------------------------------------------------------------------------

EVAL_SIGNATURES = {
    "theta": ("z", "u"),
    "kappa": ("a", "z", "u"),
    "kappa_bar": ("a", "z", "u"),
    "vartheta0": ("z", "v"),
    "vartheta1": ("z", "v"),
}

EVAL_FUNCTIONS = {
    "theta": theta,
    "kappa": kappa,
    "kappa_bar": kappa_bar,
    "vartheta0": vartheta0,
    "vartheta1": vartheta1,
}


def _cmd_eval(args: argparse.Namespace, parser: argparse.ArgumentParser) -> int:
    needed = EVAL_SIGNATURES[args.function]
    values = []
    for name in needed:
        value = getattr(args, name)
        if value is None:
            parser.error(f"eval {args.function} requires --{name}")
        values.append(value)
    result = EVAL_FUNCTIONS[args.function](*values)
    print(format_value(result))
    return 0


QSERIES_NAMES = ("t3", "double_sum", "andrews", "for1_lhs", "for1_rhs", "for2_lhs", "for2_rhs")


def _qseries_build(name: str, order: int) -> tuple[qexact.USeries, str]:
    if name == "t3":
        return qexact.triangular_gf(order + 1) ** 3, "q"
    if name == "double_sum":
        return qexact.as_q_series(qexact.double_sum_series(2 * order + 2)), "q"
    if name == "andrews":
        return qexact.as_q_series(qexact.andrews_series(2 * order + 2)), "q"
    trunc = 2 * order + 2
    if name.startswith("for1"):
        lhs, rhs = qexact.for1_sides(trunc)
    else:
        lhs, rhs = qexact.for2_sides(trunc)
    return (lhs if name.endswith("lhs") else rhs), "u"


def _cmd_qseries(args: argparse.Namespace) -> int:
    series, variable = _qseries_build(args.name, args.order)
    if args.format == "csv":
        _emit("\n".join(qexact.to_csv_rows(series)), args.out)
        return 0
    payload = {
        "command": "qseries",
        "series": args.name,
        "order": args.order,
        "variable": variable,
        "trunc": series.trunc,
        "coefficients": [
            [k, c.numerator, c.denominator] for k, c in enumerate(series.coeffs)
        ],
    }
    _emit(json.dumps(payload, sort_keys=True, indent=2), args.out)
    return 0


def _cmd_modular(args: argparse.Namespace) -> int:
    gamma = modular.gamma_check(args.a, args.b, args.c, args.d)
    tau = args.tau
    per_zero = []
    worst = 0.0
    for index in modular.zero_grid(args.grid):
        residual = modular.divisibility_residual(gamma, tau, (index,))
        worst = max(worst, residual)
        per_zero.append({"m": index.m, "n": index.n, "residual": residual})
    payload = {
        "command": "modular",
        "gamma": [gamma.a, gamma.b, gamma.c, gamma.d],
        "tau": str(tau),
        "gamma_tau": str(modular.act_tau(gamma, tau)),
        "zeta_sq": str(modular.zeta_sq(gamma)),
        "chi": str(modular.chi(gamma)),
        "k_gamma": str(modular.k_gamma(gamma, tau)),
        "grid": args.grid,
        "divisibility_worst": worst,
        "divisibility_per_zero": per_zero,
    }
    _emit(json.dumps(payload, sort_keys=True, indent=2), args.out)
    return 0


# ---------------------------------------------------------------------------
# parser and entry point
# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="appell-kit",
        description="Verification toolkit for theta/kappa identities, bundle "
        "gauge matrices, and modular transformation laws.",
    )
    sub = parser.add_subparsers(dest="subcommand", required=True)

    p_verify = sub.add_parser("verify", help="run residual checks and report pass/fail")
    p_verify.add_argument(
        "target",
        choices=SUITES + identities.registry_ids(),
        help="a suite name or a single identity id",
    )
    p_verify.add_argument("--samples", type=int, default=100)
    p_verify.add_argument("--seed", type=int, default=_default_seed())
    p_verify.add_argument("--tolerance", type=float, default=1e-9)
    p_verify.add_argument("--exact-order", type=int, default=80, dest="exact_order")
    p_verify.add_argument("--grid", type=int, default=1)
    p_verify.add_argument("--format", choices=("json", "csv"), default="json")
    p_verify.add_argument("--out", default=None)

    p_eval = sub.add_parser("eval", help="evaluate one special function")
    p_eval.add_argument("function", choices=tuple(EVAL_SIGNATURES))
    p_eval.add_argument("--a", type=parse_complex, default=None)
    p_eval.add_argument("--z", type=parse_complex, default=None)
    p_eval.add_argument("--u", type=parse_complex, default=None)
    p_eval.add_argument("--v", type=parse_complex, default=None)

    p_qseries = sub.add_parser("qseries", help="emit exact series coefficients")
    p_qseries.add_argument("name", choices=QSERIES_NAMES)
    p_qseries.add_argument("--order", type=int, default=40)
    p_qseries.add_argument("--format", choices=("json", "csv"), default="json")
    p_qseries.add_argument("--out", default=None)

    p_modular = sub.add_parser(
        "modular", help="characters and divisibility residuals for one element"
    )
    p_modular.add_argument("a", type=int)
    p_modular.add_argument("b", type=int)
    p_modular.add_argument("c", type=int)
    p_modular.add_argument("d", type=int)
    p_modular.add_argument("--tau", type=parse_complex, default=1.5j)
    p_modular.add_argument("--grid", type=int, default=1)
    p_modular.add_argument("--out", default=None)

    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    started = time.monotonic()
    try:
        if args.subcommand == "verify":
            code = _cmd_verify(args)
        elif args.subcommand == "eval":
            code = _cmd_eval(args, parser)
        elif args.subcommand == "qseries":
            code = _cmd_qseries(args)
        else:
            code = _cmd_modular(args)
    except SystemExit as exc:  # parser.error inside a subcommand
        return int(exc.code or 0)
    except DomainError as exc:
        print(f"domain error: {exc}", file=sys.stderr)
        return 2
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    print(f"elapsed {time.monotonic() - started:.3f}s", file=sys.stderr)
    return code


if __name__ == "__main__":
    sys.exit(main())
