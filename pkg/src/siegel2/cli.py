"""Command line front end.

Subcommands: expand (compute and store an expansion), coeff (look up one
coefficient), hecke (operator coefficient or whole-expansion application),
eigenvalue (three extraction methods), verify (identity suites with a JSON
report).  All numeric output is exact; exit codes are 0 success, 1
computation failure, 2 flag errors.
"""

from __future__ import annotations

import argparse
import json
import os
import random
import sys
from fractions import Fraction
from math import gcd

from .arith import is_prime
from .eigen import (
    InconsistentEigenvalue,
    NoNonzeroWitness,
    NotNormalized,
    VerificationReport,
    eigenvalue_direct,
    eigenvalue_from_weight,
    eigenvalue_normalized,
    reports_to_json,
    verify_coefficient_relations,
    verify_multiplicativity,
)
from .fourier import (
    ExpansionFileError,
    SiegelExpansion,
    TruncationExceeded,
    cusp_form_10,
    cusp_form_12,
    eisenstein,
    read_expansion,
    write_expansion,
)
from .hecke import (
    DEFAULT_MAX_DELTA,
    apply_hecke,
    coset_set,
    hecke_coefficient,
    hecke_coefficient_coprime_s,
    hecke_coefficient_order1,
    hecke_coefficient_order2,
    hecke_coefficient_scalar_index,
    required_source_trace,
)
from .quadform import (
    HalfIntegralForm,
    UnimodularMatrix,
    enumerate_reduced,
    sts_matrix,
    transform,
    two_squares,
)

__all__ = ["main"]


def _format_value(value: Fraction) -> str:
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


def _fail(message: str, code: int) -> int:
    print(f"error: {message}", file=sys.stderr)
    return code


def _parse_index(text: str) -> tuple[int, int, int]:
    parts = text.split(",")
    if len(parts) != 3:
        raise ValueError("--index must be three comma-separated integers r,b,s")
    try:
        r, b, s = (int(part) for part in parts)
    except ValueError:
        raise ValueError("--index must be three comma-separated integers r,b,s") from None
    return r, b, s


# ---------------------------------------------------------------- commands


def _cmd_expand(args) -> int:
    if args.form == "eisenstein":
        if args.weight is None:
            return _fail("--weight is required for --form eisenstein", 2)
        if args.weight % 2 or args.weight < 4:
            return _fail("weight must be even >= 4", 2)
        expansion = eisenstein(args.weight, args.max_trace)
    else:
        if args.weight is not None:
            return _fail("--weight only applies to --form eisenstein", 2)
        if args.max_trace < 2:
            return _fail("cusp forms require --max-trace >= 2", 2)
        builder = cusp_form_10 if args.form == "cusp10" else cusp_form_12
        expansion = builder(args.max_trace)
    write_expansion(args.out, expansion)
    print(
        f"weight {expansion.weight}, max trace {expansion.max_trace}, "
        f"{len(expansion.classes())} classes -> {args.out}"
    )
    return 0


def _cmd_coeff(args) -> int:
    try:
        index = _parse_index(args.index)
    except ValueError as err:
        return _fail(str(err), 2)
    expansion = read_expansion(args.file)
    r, b, s = index
    if r < 0 or s < 0 or 4 * r * s < b * b:
        return _fail("not positive semi-definite", 1)
    try:
        value = expansion.coefficient(index)
    except TruncationExceeded as err:
        return _fail(
            f"index outside truncation: requires trace {err.required_trace}, "
            f"file stores trace <= {expansion.max_trace}",
            1,
        )
    print(_format_value(value))
    return 0


def _cmd_hecke(args) -> int:
    if not is_prime(args.p):
        return _fail("p must be prime", 2)
    if args.delta < 1:
        return _fail("delta must be >= 1", 2)
    if args.delta > args.max_delta:
        return _fail(f"delta exceeds --max-delta {args.max_delta}", 2)
    if (args.index is None) == (args.out is None):
        return _fail("exactly one of --index or --out is required", 2)
    if args.index is not None:
        try:
            index = _parse_index(args.index)
        except ValueError as err:
            return _fail(str(err), 2)
    expansion = read_expansion(args.file)
    if args.index is not None:
        value = hecke_coefficient(
            expansion, (args.p, args.delta), index, max_delta=args.max_delta
        )
        print(_format_value(value))
    else:
        result = apply_hecke(expansion, (args.p, args.delta), max_delta=args.max_delta)
        write_expansion(args.out, result)
        print(
            f"weight {result.weight}, max trace {result.max_trace}, "
            f"{len(result.classes())} classes -> {args.out}"
        )
    return 0


def _cmd_eigenvalue(args) -> int:
    if not is_prime(args.p):
        return _fail("p must be prime", 2)
    if args.delta < 1 or args.delta > DEFAULT_MAX_DELTA:
        return _fail(f"delta must be between 1 and {DEFAULT_MAX_DELTA}", 2)
    if args.method in ("normalized", "weight") and args.delta not in (1, 2):
        return _fail(f"--method {args.method} supports delta 1 or 2 only", 2)
    expansion = read_expansion(args.file)
    methods = ("direct", "normalized", "weight") if args.method == "all" else (args.method,)
    values = {}
    skipped = {}
    for method in methods:
        if method == "direct":
            values[method] = eigenvalue_direct(expansion, args.p, args.delta).value
        elif method == "normalized":
            if args.method == "all" and args.delta not in (1, 2):
                skipped[method] = "delta must be 1 or 2"
                continue
            try:
                values[method] = eigenvalue_normalized(expansion, args.p, args.delta).value
            except NotNormalized as err:
                if args.method == "all":
                    skipped[method] = str(err)
                    continue
                raise
        else:
            if args.method == "all" and args.delta not in (1, 2):
                skipped[method] = "delta must be 1 or 2"
                continue
            if expansion.coefficient(HalfIntegralForm.zero()) == 0:
                if args.method == "all":
                    skipped[method] = "a(0) = 0"
                    continue
                return _fail("a(0) = 0", 1)
            values[method] = eigenvalue_from_weight(
                expansion.weight, args.p, args.delta
            ).value
    if args.method == "all":
        for method in methods:
            if method in values:
                value = values[method]
                note = "" if value.denominator == 1 else " (non-integral)"
                print(f"{method}: {_format_value(value)}{note}")
            else:
                print(f"{method}: skipped ({skipped[method]})")
        consistent = len(set(values.values())) <= 1
        print(f"consistency: {'consistent' if consistent else 'INCONSISTENT'}")
        return 0 if consistent else 1
    value = values[args.method]
    note = "" if value.denominator == 1 else " (non-integral)"
    print(f"{_format_value(value)}{note}")
    return 0


# ---------------------------------------------------------------- suites


def _coset_orbit_min(p: int, q: int, pair: tuple[int, int]) -> tuple[int, int]:
    """Canonical label of a coprime pair under unit scaling mod q, found by
    exhaustive sweep over the units."""
    u1, u2 = pair
    best = None
    for a in range(1, q):
        if a % p == 0:
            continue
        candidate = ((a * u1) % q, (a * u2) % q)
        if best is None or candidate < best:
            best = candidate
    return best


def suite_cosets(primes=(2, 3, 5), betas=(1, 2, 3)) -> list[VerificationReport]:
    """Brute-force completeness and non-redundancy of the coset sets."""
    reports = []
    for p in primes:
        for beta in betas:
            q = p**beta
            members = coset_set(p, beta).members
            reports.append(
                VerificationReport.check(
                    "coset-size",
                    {"p": p, "beta": beta},
                    len(members),
                    q + q // p,
                )
            )
            orbits = set()
            for u1 in range(q):
                for u2 in range(q):
                    if u1 % p or u2 % p:
                        orbits.add(_coset_orbit_min(p, q, (u1, u2)))
            member_orbits = [
                _coset_orbit_min(p, q, (m.u1 % q, m.u2 % q)) for m in members
            ]
            covered_once = sum(1 for o in orbits if member_orbits.count(o) == 1)
            reports.append(
                VerificationReport.check(
                    "coset-completeness",
                    {"p": p, "beta": beta},
                    covered_once,
                    len(orbits),
                )
            )
    return reports


def suite_constructions(primes=(5, 13, 17, 29), betas=(1, 2, 3, 4)) -> list[VerificationReport]:
    """Literal assertions for the two-squares and Gram factorization lemmas."""
    reports = []
    for p in primes:
        for beta in betas:
            q = p**beta
            x, y = two_squares(p, beta)
            reports.append(
                VerificationReport.check(
                    "two-squares-sum", {"p": p, "beta": beta}, x * x + y * y, q
                )
            )
            conditions = sum(
                (x > 0, y > 0, x % 2 == 1, y % 2 == 0, x % p != 0, y % p != 0)
            )
            reports.append(
                VerificationReport.check(
                    "two-squares-conditions", {"p": p, "beta": beta}, conditions, 6
                )
            )
            for u in range(q):
                if (u * u + 1) % q:
                    continue
                s = sts_matrix(p, beta, u)
                gram = (
                    s.u1 * s.u1 + s.u2 * s.u2,
                    s.u1 * s.u3 + s.u2 * s.u4,
                    s.u3 * s.u3 + s.u4 * s.u4,
                )
                target = ((1 + u * u) // q, u, q)
                mismatches = int(s.det() != 1) + sum(
                    left != right for left, right in zip(gram, target)
                )
                reports.append(
                    VerificationReport.check(
                        "gram-factorization", {"p": p, "beta": beta, "u": u}, mismatches, 0
                    )
                )
    return reports


def _mult_instances(max_trace: int):
    scalars = [m for m in range(1, 7) if 2 * m <= max_trace]
    pairs = [
        (m, n)
        for m in range(1, 7)
        for n in range(m + 1, 7)
        if gcd(m, n) == 1 and 2 * m * n <= max_trace
    ]
    recurrences = [
        (p, r) for p in (2, 3, 5) for r in (1, 2) if 2 * p ** (r + 1) <= max_trace
    ]
    return scalars, pairs, recurrences


def suite_mult(expansion: SiegelExpansion, label: str) -> list[VerificationReport]:
    """Multiplicative relations sized to the expansion's truncation."""
    scalars, pairs, recurrences = _mult_instances(expansion.max_trace)
    reports = verify_coefficient_relations(
        expansion,
        scalar_multiples=scalars,
        coprime_pairs=pairs,
        recurrences=recurrences,
        label=label,
    )
    if expansion.max_trace >= 12:
        reports += verify_multiplicativity(expansion, [((2, 1), (3, 1))], label=label)
    return reports


_GENERATORS = (
    UnimodularMatrix(1, 1, 0, 1),
    UnimodularMatrix(1, 0, 1, 1),
    UnimodularMatrix(0, 1, -1, 0),
    UnimodularMatrix(1, 0, 0, -1),
)


def _random_unimodular(rng: random.Random, length: int = 4) -> UnimodularMatrix:
    u = UnimodularMatrix.identity()
    for _ in range(length):
        u = u.compose(rng.choice(_GENERATORS))
    return u


def suite_corollaries(
    expansion: SiegelExpansion, label: str, rng: random.Random
) -> list[VerificationReport]:
    """Fast-path evaluations against the general sum: exhaustive over small
    canonical indices plus seeded random non-canonical representatives."""
    reports = []
    max_trace = expansion.max_trace
    small = [tuple(n) for n in enumerate_reduced(min(max_trace, 3))]
    extras = []
    for _ in range(6):
        base = rng.choice(small)
        extras.append(tuple(transform(base, _random_unimodular(rng))))
    candidates = small + extras
    for p in (2, 3, 5):
        for delta in (1, 2):
            index = (p, delta)
            for n in candidates:
                if required_source_trace(index, n) > max_trace:
                    continue
                general = hecke_coefficient(expansion, index, n)
                r, b, s = n
                params = {"form": label, "p": p, "delta": delta, "index": list(n)}
                if s % p:
                    reports.append(
                        VerificationReport.check(
                            "fastpath-coprime-s",
                            params,
                            hecke_coefficient_coprime_s(expansion, index, n),
                            general,
                        )
                    )
                if delta == 1:
                    reports.append(
                        VerificationReport.check(
                            "fastpath-order-1",
                            params,
                            hecke_coefficient_order1(expansion, p, n),
                            general,
                        )
                    )
                else:
                    reports.append(
                        VerificationReport.check(
                            "fastpath-order-2",
                            params,
                            hecke_coefficient_order2(expansion, p, n),
                            general,
                        )
                    )
            for m in (1, 2, 3):
                if gcd(m, p) != 1:
                    continue
                scalar = tuple(HalfIntegralForm.scalar(m))
                if required_source_trace(index, scalar) > max_trace:
                    continue
                reports.append(
                    VerificationReport.check(
                        "fastpath-scalar-index",
                        {"form": label, "p": p, "delta": delta, "m": m},
                        hecke_coefficient_scalar_index(expansion, index, m),
                        hecke_coefficient(expansion, index, scalar),
                    )
                )
    return reports


def _print_table(reports: list[VerificationReport]) -> None:
    print(f"{'IDENTITY':28} {'PARAMS':52} RESULT")
    for report in reports:
        params = " ".join(f"{key}={value}" for key, value in report.params.items())
        verdict = "pass" if report.passed else "FAIL"
        print(f"{report.identity:28} {params:52} {verdict}")
    passed = sum(report.passed for report in reports)
    print(f"{passed}/{len(reports)} passed")


def _cmd_verify(args) -> int:
    file_suites = {"mult", "corollaries"}
    if args.suite in file_suites and not args.files:
        return _fail(f"--suite {args.suite} requires expansion files", 2)
    suites = (
        ["mult", "corollaries", "cosets", "constructions"]
        if args.suite == "all"
        else [args.suite]
    )
    rng = random.Random(args.seed)
    reports: list[VerificationReport] = []
    for suite in suites:
        if suite == "cosets":
            reports += suite_cosets()
        elif suite == "constructions":
            reports += suite_constructions()
        else:
            for path in args.files:
                expansion = read_expansion(path)
                label = os.path.basename(path)
                if suite == "mult":
                    reports += suite_mult(expansion, label)
                else:
                    reports += suite_corollaries(expansion, label, rng)
    _print_table(reports)
    if args.report:
        with open(args.report, "w", encoding="utf-8") as handle:
            json.dump(reports_to_json(reports), handle, indent=2)
            handle.write("\n")
    return 0 if all(report.passed for report in reports) else 1


# ---------------------------------------------------------------- parser


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="siegel2",
        description="Exact degree-2 Siegel modular form expansions, Hecke "
        "operators, eigenvalues, and identity verification.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_expand = sub.add_parser("expand", help="compute and store an expansion")
    p_expand.add_argument(
        "--form", required=True, choices=("eisenstein", "cusp10", "cusp12")
    )
    p_expand.add_argument("--weight", type=int)
    p_expand.add_argument("--max-trace", type=int, required=True)
    p_expand.add_argument("--out", required=True)
    p_expand.set_defaults(func=_cmd_expand)

    p_coeff = sub.add_parser("coeff", help="print one coefficient of a stored expansion")
    p_coeff.add_argument("file")
    p_coeff.add_argument("--index", required=True, help="r,b,s")
    p_coeff.set_defaults(func=_cmd_coeff)

    p_hecke = sub.add_parser("hecke", help="apply a Hecke operator")
    p_hecke.add_argument("file")
    p_hecke.add_argument("--p", type=int, required=True)
    p_hecke.add_argument("--delta", type=int, default=1)
    p_hecke.add_argument("--index", help="r,b,s: print one transformed coefficient")
    p_hecke.add_argument("--out", help="write the transformed expansion here")
    p_hecke.add_argument("--max-delta", type=int, default=DEFAULT_MAX_DELTA)
    p_hecke.set_defaults(func=_cmd_hecke)

    p_eigen = sub.add_parser("eigenvalue", help="extract an eigenvalue")
    p_eigen.add_argument("file")
    p_eigen.add_argument("--p", type=int, required=True)
    p_eigen.add_argument("--delta", type=int, default=1)
    p_eigen.add_argument(
        "--method", choices=("direct", "normalized", "weight", "all"), default="direct"
    )
    p_eigen.set_defaults(func=_cmd_eigenvalue)

    p_verify = sub.add_parser("verify", help="run identity verification suites")
    p_verify.add_argument("files", nargs="*")
    p_verify.add_argument(
        "--suite",
        choices=("mult", "corollaries", "cosets", "constructions", "all"),
        default="all",
    )
    p_verify.add_argument("--seed", type=int, default=0)
    p_verify.add_argument("--report", help="write the JSON report to this path")
    p_verify.set_defaults(func=_cmd_verify)

    return parser


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        return args.func(args)
    except TruncationExceeded as err:
        return _fail(str(err), 1)
    except (
        ExpansionFileError,
        NoNonzeroWitness,
        InconsistentEigenvalue,
        NotNormalized,
    ) as err:
        return _fail(str(err), 1)
    except ValueError as err:
        return _fail(str(err), 1)
    except OSError as err:
        return _fail(str(err), 1)


if __name__ == "__main__":
    sys.exit(main())
