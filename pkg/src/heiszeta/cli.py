"""Command-line front end.

Four commands: ``formula`` prints W(X, Y) for a shape, ``series`` prints the
first Dirichlet coefficients at a prime, ``check`` runs identity suites, and
``oracle`` cross-validates the closed form against brute-force counts.  Flags
are long-form only so scripts stay unambiguous.  Exit codes: 0 pass,
1 check failure, 2 usage error, 3 capacity/budget error.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass

from . import coxeter, oracle, polyrat, zeta_formulas
from .errors import CapacityError, PrecisionError
from .local_ring import make_ring_spec
from .polyrat import rf_equal, series_Y
from .zeta_formulas import ExtensionShape

VARIANTS = ("main", "snf", "inert", "totram")
CHECK_SUITES = ("funeq", "consistency", "coxeter", "lemmas")

EXIT_PASS = 0
EXIT_CHECK_FAILURE = 1
EXIT_USAGE = 2
EXIT_CAPACITY = 3


class _UsageError(Exception):
    pass


@dataclass(frozen=True)
class RunConfig:
    """A fully validated invocation; identical configs give identical output."""

    command: str
    e: int
    f: int
    p: int | None = None
    terms: int = 0
    variant: str = "snf"
    output: str = "text"
    seed: int = 0
    budget: int = oracle.DEFAULT_LATTICE_BUDGET
    trials: int = 100
    suite: str | None = None

    def __post_init__(self):
        if self.e < 1 or self.f < 1:
            raise _UsageError("--e and --f must be positive")
        if self.variant == "inert" and self.e != 1:
            raise _UsageError("--variant inert requires --e 1")
        if self.variant == "totram" and self.f != 1:
            raise _UsageError("--variant totram requires --f 1")
        if self.command in ("series", "oracle") and self.p is None:
            raise _UsageError(f"{self.command} requires --p")


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="heiszeta",
        description="Local normal zeta functions of Heisenberg groups over "
        "compact discrete valuation rings, exactly.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_shape(sp):
        sp.add_argument("--e", type=int, required=True, help="ramification index")
        sp.add_argument("--f", type=int, required=True, help="inertia degree")

    sp = sub.add_parser("formula", help="print W(X, Y) for a shape")
    add_shape(sp)
    sp.add_argument("--variant", choices=VARIANTS, default="snf")
    sp.add_argument("--output", choices=("text", "json", "latex"), default="text")

    sp = sub.add_parser("series", help="print Dirichlet coefficients at a prime")
    add_shape(sp)
    sp.add_argument("--p", type=int, required=True)
    sp.add_argument("--terms", type=int, required=True)
    sp.add_argument("--variant", choices=VARIANTS, default="snf")
    sp.add_argument("--output", choices=("text", "json"), default="text")

    sp = sub.add_parser("check", help="run an identity suite for a shape")
    sp.add_argument("suite", choices=CHECK_SUITES)
    add_shape(sp)
    sp.add_argument("--output", choices=("text", "json"), default="text")

    sp = sub.add_parser("oracle", help="brute-force cross-validation")
    add_shape(sp)
    sp.add_argument("--p", type=int, required=True)
    sp.add_argument("--terms", type=int, required=True)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--budget", type=int, default=oracle.DEFAULT_LATTICE_BUDGET)
    sp.add_argument("--trials", type=int, default=100)
    sp.add_argument("--output", choices=("text", "json"), default="text")
    return parser


def _config_from_args(args: argparse.Namespace) -> RunConfig:
    return RunConfig(
        command=args.command,
        e=args.e,
        f=args.f,
        p=getattr(args, "p", None),
        terms=getattr(args, "terms", 0),
        variant=getattr(args, "variant", "snf"),
        output=getattr(args, "output", "text"),
        seed=getattr(args, "seed", 0),
        budget=getattr(args, "budget", oracle.DEFAULT_LATTICE_BUDGET),
        trials=getattr(args, "trials", 100),
        suite=getattr(args, "suite", None),
    )


def _variant_function(config: RunConfig):
    shape = ExtensionShape(config.e, config.f)
    if config.variant == "main":
        return zeta_formulas.zeta_main(shape)
    if config.variant == "snf":
        return zeta_formulas.zeta_snf(shape)
    if config.variant == "inert":
        return zeta_formulas.zeta_inert(shape.n)
    return zeta_formulas.zeta_totally_ramified(shape.n)


def _formula_text(F) -> str:
    num = " + ".join(
        (f"{c}*" if c != 1 else "")
        + (f"X^{a}*Y^{b}" if (a, b) != (0, 0) else ("1" if c == 1 else ""))
        for a, b, c in F.numerator.canonical_terms()
    ) or "0"
    den = " ".join(f"(1 - X^{a} Y^{b})" for a, b in F.denominator)
    return f"({num}) / [{den}]"


def _cmd_formula(config: RunConfig) -> int:
    F = _variant_function(config)
    if config.output == "latex":
        print(polyrat.prf_to_latex(F))
    elif config.output == "json":
        payload = {"e": config.e, "f": config.f, "variant": config.variant}
        payload.update(polyrat.prf_to_json(F))
        print(json.dumps(payload, sort_keys=True))
    else:
        print(_formula_text(F))
    return EXIT_PASS


def _cmd_series(config: RunConfig) -> int:
    F = _variant_function(config)
    coeffs = series_Y(F, config.p, config.terms)
    if config.output == "json":
        payload = {
            "e": config.e,
            "f": config.f,
            "p": config.p,
            "terms": [str(c) for c in coeffs],
        }
        print(json.dumps(payload, sort_keys=True))
    else:
        print(", ".join(str(c) for c in coeffs))
    return EXIT_PASS


def _coxeter_suite(n: int) -> list[tuple[str, bool]]:
    if n > 7:
        raise CapacityError(f"exhaustive S_n sweeps capped at n = 7, got {n}")
    w0 = coxeter.longest_element(n)
    subsets = [
        frozenset(i + 1 for i in range(n - 1) if bits >> i & 1)
        for bits in range(1 << (n - 1))
    ]
    perms = list(coxeter.enumerate_permutations(n))
    ok_lenpar = all(
        coxeter.parabolic_length(coxeter.compose(w0, w), I)
        == coxeter.parabolic_length(w0, I) - coxeter.parabolic_length(w, I)
        for w in perms
        for I in subsets
    )
    full = frozenset(range(1, n))
    ok_desw0 = all(
        coxeter.descent_set(coxeter.compose(w0, w)) == full - coxeter.descent_set(w)
        for w in perms
    )
    ok_last = all(
        coxeter.parabolic_length(w, range(1, n - 1)) == n - w(n) for w in perms
    ) if n >= 2 else True
    ok_des = True
    for I in subsets:
        lhs = polyrat.LaurentPoly.zero()
        for w in perms:
            if coxeter.descent_set(w) <= I:
                lhs = lhs + polyrat.monomial(0, coxeter.length(w))
        if lhs != polyrat.gaussian_multinomial(n, I):
            ok_des = False
            break
    return [
        ("parabolic length under w0-multiplication", ok_lenpar),
        ("descent complementation under w0", ok_desw0),
        ("l^[n-2](w) = n - w(n)", ok_last),
        ("descent generating polynomials are Gaussian multinomials", ok_des),
    ]


def _lemmas_suite(shape: ExtensionShape) -> list[tuple[str, bool]]:
    n, f = shape.n, shape.f
    if n > 6:
        raise CapacityError(f"exhaustive lemma sweeps capped at n = 6, got {n}")
    perms = list(coxeter.enumerate_permutations(n))
    ok_shift = all(
        zeta_formulas.shift_identity_check(n, f, w, m)
        for w in perms
        for m in range(n)
        if w(1) <= n - m
    )
    ok_aux = all(
        zeta_formulas.shift_identity_check(n, f, w, m, aux=True)
        for w in perms
        for m in range((n - f) // f + 1)
        if w(1) <= f
    )
    ok_denom = zeta_formulas.snf_denominator_identity_holds(shape)
    ok_coset = zeta_formulas.snf_coset_partition_holds(n, f)
    return [
        ("cycle-shift identity", ok_shift),
        ("cycle-shift identity (floor variant)", ok_aux),
        ("denominator factorization of 1 - x_0", ok_denom),
        ("unique factorization S_n = {c^{mf}} x S_n^{(f)}", ok_coset),
    ]


def _cmd_check(config: RunConfig) -> int:
    shape = ExtensionShape(config.e, config.f)
    if config.suite == "funeq":
        report = zeta_formulas.check_functional_equation(shape)
        if config.output == "json":
            print(json.dumps(report.to_json(), sort_keys=True))
        else:
            print(
                f"functional equation e={config.e} f={config.f}: "
                f"sign {report.sign:+d}, X-exponent {report.x_exponent}, "
                f"Y-exponent {report.y_exponent}, "
                f"{'PASS' if report.holds else 'FAIL'}"
            )
        return EXIT_PASS if report.holds else EXIT_CHECK_FAILURE

    if config.suite == "consistency":
        F = zeta_formulas.zeta_main(shape)
        results = [("main vs snf", rf_equal(F, zeta_formulas.zeta_snf(shape)))]
        if shape.e == 1:
            results.append(
                ("main vs inert", rf_equal(F, zeta_formulas.zeta_inert(shape.n)))
            )
        if shape.f == 1:
            results.append(
                (
                    "main vs totally ramified",
                    rf_equal(F, zeta_formulas.zeta_totally_ramified(shape.n)),
                )
            )
    elif config.suite == "coxeter":
        results = _coxeter_suite(shape.n)
    else:
        results = _lemmas_suite(shape)

    if config.output == "json":
        payload = {
            "suite": config.suite,
            "e": config.e,
            "f": config.f,
            "results": [{"name": name, "pass": ok} for name, ok in results],
            "holds": all(ok for _, ok in results),
        }
        print(json.dumps(payload, sort_keys=True))
    else:
        for name, ok in results:
            print(f"{name:<55} {'PASS' if ok else 'FAIL'}")
    return EXIT_PASS if all(ok for _, ok in results) else EXIT_CHECK_FAILURE


def _cmd_oracle(config: RunConfig) -> int:
    precision = max(config.terms, 8)
    spec = make_ring_spec(config.p, config.e, config.f, precision)
    series_report = oracle.match_series(
        spec, config.terms, budget=config.budget, seed=config.seed
    )
    xreport = oracle.verify_xlambda(spec, config.trials, config.seed)
    if config.output == "json":
        for row in series_report.rows:
            print(json.dumps(row, sort_keys=True))
        print(json.dumps(xreport.to_json(), sort_keys=True))
    else:
        for row in series_report.rows:
            print(
                f"k={row['k']}: oracle {row['oracle_count']} vs formula "
                f"{row['formula_count']}: {'PASS' if row['match'] else 'FAIL'}"
            )
        print(
            f"congruence-index law: {config.trials} trials, "
            f"{len(xreport.mismatches)} mismatches: "
            f"{'PASS' if xreport.ok else 'FAIL'}"
        )
    ok = series_report.all_match and xreport.ok
    return EXIT_PASS if ok else EXIT_CHECK_FAILURE


_HANDLERS = {
    "formula": _cmd_formula,
    "series": _cmd_series,
    "check": _cmd_check,
    "oracle": _cmd_oracle,
}


def run_config(config: RunConfig) -> int:
    """Execute a validated configuration; returns the process exit status."""
    return _HANDLERS[config.command](config)


def run(argv) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_PASS
    try:
        config = _config_from_args(args)
        return run_config(config)
    except _UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ValueError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (CapacityError, PrecisionError) as exc:
        print(
            json.dumps({"error": "capacity", "reason": str(exc)}),
            file=sys.stderr,
        )
        return EXIT_CAPACITY


def main() -> None:
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
