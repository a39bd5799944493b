"""Command-line front end.

    ramzeta coeffs --max-m 20 --precision 128 --format csv
    ramzeta eval --s 0.5,14.134725 --terms 400 --with-oracle
    ramzeta rsum harmonic
    ramzeta verify all

Exit codes: 0 success, 1 failed check, 2 usage error, 3 non-convergence.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
from dataclasses import dataclass
from fractions import Fraction
from importlib import metadata

import mpmath
from mpmath import mp, mpf, mpc

from . import basis, rsum, zexpand
from .numcore import binomial
from .quadrature import QuadratureSpec

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_NONCONVERGENCE = 0, 1, 2, 3

SUITES = ("orthogonality", "roots", "identities", "parseval", "identity43", "plana", "all")
SUITE_DEFAULT_M = {"orthogonality": 20, "roots": 30, "identities": 30, "parseval": 1000}
PLANA_PRESETS = ("harmonic", "log", "power:2")


@dataclass(frozen=True)
class CliConfig:
    precision_bits: int = 128
    max_m: int | None = None
    output_format: str = "text"
    output_path: str | None = None
    quad_level: int | None = None

    def __post_init__(self) -> None:
        if self.precision_bits < 53:
            raise ValueError("--precision must be at least 53")
        if self.max_m is not None and self.max_m < 0:
            raise ValueError("--max-m must be >= 0")
        if self.quad_level is not None and self.quad_level < 1:
            raise ValueError("--quad-level must be >= 1")

    def quad_spec(self, target_bits: int | None = None) -> QuadratureSpec:
        bits = self.precision_bits if target_bits is None else target_bits
        if self.quad_level is None:
            return QuadratureSpec(target_bits=bits)
        return QuadratureSpec(level_max=self.quad_level, target_bits=bits)


@dataclass(frozen=True)
class Check:
    name: str
    passed: bool
    detail: str = ""


def _version() -> str:
    try:
        return metadata.version("ramzeta")
    except metadata.PackageNotFoundError:
        return "0+unknown"


def _digits(bits: int) -> int:
    return int(bits * math.log10(2)) + 1


def fmt(x, bits: int) -> str:
    """Decimal string with a digit count tied to the precision."""
    d = _digits(bits)
    with mp.workprec(bits):
        if isinstance(x, mpc):
            return f"{mpmath.nstr(x.real, d, strip_zeros=False)},{mpmath.nstr(x.imag, d, strip_zeros=False)}"
        return mpmath.nstr(mpf(x), d, strip_zeros=False)


def _short(x) -> str:
    return mpmath.nstr(x, 6)


def parse_complex(text: str) -> mpc:
    parts = text.split(",")
    if len(parts) not in (1, 2):
        raise ValueError(f"expected re,im but got {text!r}")
    try:
        re_ = mpf(parts[0])
        im_ = mpf(parts[1]) if len(parts) == 2 else mpf(0)
    except (ValueError, TypeError) as exc:
        raise ValueError(f"cannot parse {text!r} as re,im") from exc
    return mpc(re_, im_)


def _meta(command: str, cfg: CliConfig, **extra) -> dict:
    meta = {"command": command, "precision_bits": cfg.precision_bits, "ramzeta": _version(),
            "mpmath": mpmath.__version__}
    meta.update(extra)
    return meta


def _emit(cfg: CliConfig, command: str, header: list[str], rows: list[list], meta_extra: dict | None = None,
          text: str | None = None) -> None:
    if cfg.output_format == "json":
        payload = {"meta": _meta(command, cfg, **(meta_extra or {})),
                   "data": [dict(zip(header, row)) for row in rows]}
        out = json.dumps(payload, indent=2) + "\n"
    elif cfg.output_format == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(header)
        w.writerows(rows)
        out = buf.getvalue()
    else:
        out = text if text is not None else "\n".join("  ".join(str(c) for c in row) for row in rows) + "\n"
    if cfg.output_path:
        with open(cfg.output_path, "w", encoding="utf-8", newline="") as fh:
            fh.write(out)
    else:
        sys.stdout.write(out)


# --- commands ------------------------------------------------------------------


def cmd_coeffs(cfg: CliConfig) -> int:
    max_m = 10 if cfg.max_m is None else cfg.max_m
    bits = cfg.precision_bits
    records = zexpand.coefficient_table(max_m, bits)
    header = ["m", "x_m", "y_m", "z_m", "r_m_num", "r_m_den", "precision_bits"]
    rows = [[r.m, fmt(r.x, bits), fmt(r.y, bits), fmt(r.z, bits), r.r.numerator, r.r.denominator, bits]
            for r in records]
    if cfg.output_format == "csv":
        text = zexpand.coefficient_csv(records)
        if cfg.output_path:
            with open(cfg.output_path, "w", encoding="utf-8", newline="") as fh:
                fh.write(text)
        else:
            sys.stdout.write(text)
        return EXIT_OK
    lines = [f"m={r[0]:<5d} x={r[1]}  y={r[2]}  z={r[3]}  r={r[4]}/{r[5]}" for r in rows]
    _emit(cfg, "coeffs", header, rows, {"max_m": max_m}, "\n".join(lines) + "\n")
    return EXIT_OK


def cmd_eval(cfg: CliConfig, s: mpc, terms: int, with_oracle: bool) -> int:
    if terms < 1:
        raise ValueError("--terms must be >= 1")
    bits = cfg.precision_bits
    res = zexpand.zeta_expansion(s, terms, bits, with_oracle=with_oracle)
    header = ["s", "terms", "value", "tail_estimate", "oracle_gap"]
    gap = "" if res.oracle_gap is None else fmt(res.oracle_gap, 53)
    row = [fmt(res.s, 53), terms, fmt(res.value, bits), fmt(res.tail_estimate, 53), gap]
    text = (f"s             = {row[0]}\n"
            f"terms         = {terms}\n"
            f"value         = {row[2]}\n"
            f"tail estimate = {row[3]}\n")
    if with_oracle:
        text += f"oracle gap    = {gap}\n"
    _emit(cfg, "eval", header, [row], {"terms": terms}, text)
    return EXIT_OK


def cmd_rsum(cfg: CliConfig, name: str) -> int:
    entry = rsum.preset(name)
    bits = cfg.precision_bits
    spec = cfg.quad_spec()
    res = rsum.ramanujan_sum(entry.function, spec)
    gap = None
    if entry.closed_form is not None:
        with mp.workprec(spec.working_bits):
            gap = abs(res.value - entry.closed_form())
    header = ["preset", "value", "closed_form_gap", "converged", "nodes"]
    row = [name, fmt(res.value, bits), "" if gap is None else fmt(gap, 53), res.quadrature.converged,
           res.quadrature.nodes_used]
    text = f"R-sum[{name}] = {row[1]}\n"
    if gap is not None:
        text += f"closed-form gap = {row[2]}\n"
    _emit(cfg, "rsum", header, [row], None, text)
    if not res.quadrature.converged:
        return EXIT_NONCONVERGENCE
    return EXIT_OK


# --- verification suites -----------------------------------------------------------

_PRINTED_Q = {
    # Q_m = i^(m mod 2) R_m; listed as R_m coefficients, lowest degree first
    0: [1],
    1: [0, -2],
    2: [Fraction(1, 2), 0, -2],
    3: [0, Fraction(-5, 3), 0, Fraction(4, 3)],
    4: [Fraction(3, 8), 0, Fraction(-7, 3), 0, Fraction(2, 3)],
}


def suite_orthogonality(max_m: int) -> list[Check]:
    fam = basis.family(max_m)
    G = basis.gram_matrix(fam, max_m)
    bad = [(i, j) for i in range(max_m + 1) for j in range(max_m + 1) if G[i][j] != (1 if i == j else 0)]
    return [Check(f"gram_identity_upto_{max_m}", not bad, f"{len(bad)} off entries")]


def suite_roots(max_m: int) -> list[Check]:
    fam = basis.family(max_m)
    out = []
    for m in range(1, max_m + 1):
        count, roots = basis.certify_real_roots(m, 64, fam)
        out.append(Check(f"sturm_count_m{m}", count == m and len(roots) == m, f"count={count}"))
    return out


def suite_identities(max_m: int, bits: int, cfg: CliConfig) -> list[Check]:
    fam = basis.family(max(max_m, 4))
    out = [Check(f"contiguous_m{m}", basis.contiguous_check(m, fam)) for m in range(max_m + 1)]
    for m, coeffs in _PRINTED_Q.items():
        out.append(Check(f"printed_Q{m}", fam.R[m] == basis.RationalPoly(coeffs, "t")))
    for m in range(max_m + 1):
        q = zexpand.r_coefficient(m)
        # r_m must absorb the -1/k terms and the (-1)^m shift
        alt = -(-1) ** m - sum((Fraction(binomial(m, k) * (-2) ** k, k) for k in range(1, m + 1)),
                               Fraction(0))
        out.append(Check(f"r_rational_m{m}", q == alt, str(q)))
    small = min(max_m, 10)
    xs = zexpand.coeff_x_table(small, bits)
    gf = zexpand.coeff_x_genfunc(small, bits)
    tol = mpf(2) ** (-(bits - 10))
    spec = cfg.quad_spec(min(bits, 128))
    for m in range(small + 1):
        z = zexpand.coeff_z(m, bits)
        with mp.workprec(bits):
            zxy = abs(z - xs[m] - zexpand.coeff_y(m, bits))
        out.append(Check(f"z_eq_x_plus_y_m{m}", zxy <= tol, _short(zxy)))
        dg = abs(xs[m] - gf[m])
        out.append(Check(f"x_genfunc_m{m}", dg <= tol, _short(dg)))
        dy = abs(zexpand.coeff_y(m, bits) - zexpand.coeff_y_integral(m, spec))
        out.append(Check(f"y_integral_m{m}", dy <= mpf(2) ** (-(spec.target_bits - 8)), _short(dy)))
    for m in range(min(small, 3) + 1):
        dx = abs(xs[m] - zexpand.coeff_x_integral(m, spec))
        out.append(Check(f"x_integral_m{m}", dx <= mpf(2) ** (-(spec.target_bits - 10)), _short(dx)))
    return out


def suite_parseval(max_m: int, bits: int) -> list[Check]:
    M = max(1, max_m)
    xs = zexpand.coeff_x_table(M - 1, bits)
    bound = zexpand.parseval_closed_form(bits)
    with mp.workprec(bits + 16):
        acc = mpf(0)
        monotone = True
        for x in xs:
            nxt = acc + x * x
            monotone &= nxt >= acc
            acc = nxt
    slack = mpf(2) ** -40
    out = [
        Check("parseval_monotone", monotone),
        Check("parseval_bounded", acc <= bound + slack, f"{_short(acc)} <= {_short(bound)}"),
    ]
    if M >= 1000:
        out.append(Check(f"parseval_gap_M{M}", bound - acc < mpf("0.02"), _short(bound - acc)))
    return out


def suite_identity43(cfg: CliConfig) -> list[Check]:
    lhs, rhs, gap = zexpand.identity43_check(cfg.quad_spec())
    return [Check("identity43", gap < mpf("1e-8"), f"lhs={_short(lhs)} rhs={_short(rhs)} gap={_short(gap)}")]


def suite_plana(cfg: CliConfig) -> list[Check]:
    spec = cfg.quad_spec()
    tol = mpf(2) ** (-(cfg.precision_bits - 8))
    out = []
    for name in PLANA_PRESETS:
        f = rsum.preset(name).function
        for n in (2, 5, 10):
            gap = rsum.plana_check(f, n, spec)
            out.append(Check(f"plana_{name}_n{n}", gap < tol, _short(gap)))
    return out


def run_suite(name: str, cfg: CliConfig) -> list[Check]:
    def m_for(suite: str) -> int:
        return SUITE_DEFAULT_M[suite] if cfg.max_m is None else cfg.max_m

    bits = cfg.precision_bits
    if name == "orthogonality":
        return suite_orthogonality(m_for(name))
    if name == "roots":
        return suite_roots(m_for(name))
    if name == "identities":
        return suite_identities(m_for(name), bits, cfg)
    if name == "parseval":
        return suite_parseval(m_for(name), bits)
    if name == "identity43":
        return suite_identity43(cfg)
    if name == "plana":
        return suite_plana(cfg)
    if name == "all":
        out = []
        for suite in SUITES[:-1]:
            out.extend(run_suite(suite, cfg))
        return out
    raise ValueError(f"unknown suite {name!r}")


def cmd_verify(cfg: CliConfig, suite: str) -> int:
    checks = run_suite(suite, cfg)
    header = ["check", "passed", "detail"]
    rows = [[c.name, c.passed, c.detail] for c in checks]
    lines = [f"{'PASS' if c.passed else 'FAIL'}  {c.name}  {c.detail}".rstrip() for c in checks]
    failed = sum(not c.passed for c in checks)
    lines.append(f"{len(checks) - failed}/{len(checks)} checks passed")
    _emit(cfg, "verify", header, rows, {"suite": suite}, "\n".join(lines) + "\n")
    return EXIT_OK if failed == 0 else EXIT_FAIL


# --- entry point -------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--precision", type=int, default=128, help="target precision in bits (>= 53)")
    common.add_argument("--max-m", type=int, default=None, help="largest coefficient index")
    common.add_argument("--format", choices=("text", "csv", "json"), default="text")
    common.add_argument("--out", default=None, help="write output to this file")
    common.add_argument("--quad-level", type=int, default=None, help="maximum quadrature refinement level")

    parser = argparse.ArgumentParser(prog="ramzeta", description="Expansion of zeta in the critical strip.")
    sub = parser.add_subparsers(dest="command", required=True)

    sub.add_parser("coeffs", parents=[common], help="coefficient table x_m, y_m, z_m, r_m")

    p_eval = sub.add_parser("eval", parents=[common], help="partial sum of the expansion at s")
    p_eval.add_argument("--s", required=True, help="point in the strip as re,im")
    p_eval.add_argument("--terms", type=int, default=100)
    p_eval.add_argument("--with-oracle", action="store_true", help="also report |value - zeta(s)|")

    p_rsum = sub.add_parser("rsum", parents=[common], help="Ramanujan sum of a catalog function")
    p_rsum.add_argument("preset", help="one of: " + ", ".join(rsum.PRESET_NAMES))

    p_verify = sub.add_parser("verify", parents=[common], help="run a verification suite")
    p_verify.add_argument("suite", choices=SUITES)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)  # exits with 2 on usage errors
    try:
        cfg = CliConfig(args.precision, args.max_m, args.format, args.out, args.quad_level)
        mp.prec = cfg.precision_bits + 16
        if args.command == "coeffs":
            return cmd_coeffs(cfg)
        if args.command == "eval":
            return cmd_eval(cfg, parse_complex(args.s), args.terms, args.with_oracle)
        if args.command == "rsum":
            return cmd_rsum(cfg, args.preset)
        return cmd_verify(cfg, args.suite)
    except (ValueError, KeyError) as exc:
        print(f"error: {exc.args[0] if exc.args else exc}", file=sys.stderr)
        return EXIT_USAGE
    except ArithmeticError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NONCONVERGENCE
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
