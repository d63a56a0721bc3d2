"""Command-line front end.

Exit codes: 0 success (or the checked property holds), 1 the checked
property fails, 2 unreadable or malformed input, 3 semantically invalid
input (bad map, wrong arity, auxiliary operator failing its side
condition).  ``--output json`` switches every command to a JSON report.
The ``GENSHIFT_SEED`` environment variable supplies the default seed for
``verify``; an explicit ``--seed`` wins.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass, field

from . import jsonio
from .derivcheck import (
    CheckResult,
    is_derivation,
    is_generalized_derivation,
    is_generalized_jordan_derivation,
    is_generalized_jordan_triple_derivation,
    is_higher_derivation,
    is_jordan_derivation,
    is_jordan_triple_derivation,
    is_psi_derivation,
    is_psi_lambda_derivation,
)
from .errors import ParseError, SemanticError
from .seqalg import TOL, PExponent
from .shiftop import fibers, shift_operator_norm, sigma_op
from .structure import (
    classify_psi_lambda,
    generalized_derivation_feasible,
    higher_derivation_tail_space,
    synthesize_pair,
    twisted_derivation_space,
)
from .verify import SuiteReport, run_suite

CHECK_FLAVORS = (
    "derivation",
    "jordan",
    "jordan-triple",
    "psi",
    "psi-lambda",
    "generalized",
    "generalized-jordan",
    "generalized-jordan-triple",
    "higher",
    "higher-jordan",
    "higher-jordan-triple",
)

SOLVE_FLAVORS = {"plain": "plain", "jordan": "jordan", "jordan-triple": "jordan_triple"}


@dataclass(frozen=True)
class RunConfig:
    """Everything one invocation needs, resolved from flags and environment."""

    command: str
    output: str = "text"
    tolerance: float | None = None
    phi_path: str | None = None
    d_path: str | None = None
    d_paths: tuple[str, ...] = ()
    psi_path: str | None = None
    lambda_path: str | None = None
    big_d_path: str | None = None
    r_path: str | None = None
    flavor: str | None = None
    mode: str | None = None
    depth: int = 3
    p_list: tuple[PExponent, ...] = field(default_factory=tuple)
    n_max: int = 4
    seed: int = 0

    @property
    def tol(self) -> float:
        return TOL if self.tolerance is None else self.tolerance


def _fmt_complex(z: complex) -> str:
    return f"{z.real:.12g}{z.imag:+.12g}i"


def _fmt_vector(vec) -> str:
    return "[" + ", ".join(_fmt_complex(v) for v in vec) + "]"


def _emit_json(payload) -> None:
    print(json.dumps(payload, indent=2, sort_keys=True))


def _parse_p_list(raw: str) -> tuple[PExponent, ...]:
    tokens = [tok.strip() for tok in raw.split(",") if tok.strip()]
    if not tokens:
        raise ParseError(f"cannot parse norm exponents from {raw!r}")
    return tuple(PExponent.parse(tok) for tok in tokens)


def _env_seed() -> int:
    raw = os.environ.get("GENSHIFT_SEED")
    if raw is None:
        return 0
    try:
        return int(raw)
    except ValueError as exc:
        raise ParseError(f"GENSHIFT_SEED must be an integer, got {raw!r}") from exc


def _load_phi(path: str):
    return jsonio.index_map_from_json(jsonio.load_json_file(path))


def _load_op(path: str):
    return jsonio.linop_from_json(jsonio.load_json_file(path))


def cmd_analyze(config: RunConfig) -> int:
    phi = _load_phi(config.phi_path)
    report = fibers(phi)
    p_list = config.p_list or (PExponent.parse(1), PExponent.parse(2), PExponent.parse("inf"))
    norms = [(p, shift_operator_norm(phi, p)) for p in p_list]
    if config.output == "json":
        _emit_json(
            {
                "map": jsonio.index_map_to_json(phi),
                "fibers": {
                    "sizes": {str(k): v for k, v in sorted(report.sizes.items())},
                    "bound": report.bound,
                    "empty_fibers": sorted(report.empty_fibers),
                },
                "injective": phi.is_injective,
                "surjective": phi.is_surjective,
                "norms": [{"p": p.to_json(), "norm": value} for p, value in norms],
            }
        )
    else:
        print(f"index map: n={phi.n} image={list(phi.image)}")
        sizes = " ".join(f"{beta}:{size}" for beta, size in sorted(report.sizes.items()))
        print(f"fiber sizes: {sizes}")
        print(f"bound N: {report.bound}")
        print(f"empty fibers: {sorted(report.empty_fibers)}")
        print(f"injective: {'yes' if phi.is_injective else 'no'}")
        print(f"surjective: {'yes' if phi.is_surjective else 'no'}")
        for p, value in norms:
            print(f"norm p={p}: {value!r}")
    return 0


def _run_check(config: RunConfig) -> CheckResult:
    flavor = config.flavor
    tol = config.tol
    if flavor in ("higher", "higher-jordan", "higher-jordan-triple"):
        if not config.d_paths:
            raise SemanticError(f"flavor {flavor!r} needs one or more --d operator files")
        ds = [_load_op(path) for path in config.d_paths]
        inner = {"higher": "plain", "higher-jordan": "jordan", "higher-jordan-triple": "jordan_triple"}[flavor]
        return is_higher_derivation(ds, inner, tol=tol)

    if flavor in ("generalized", "generalized-jordan", "generalized-jordan-triple"):
        if config.big_d_path is None or not config.d_paths:
            raise SemanticError(f"flavor {flavor!r} needs --D and --d operator files")
        big_d = _load_op(config.big_d_path)
        d = _load_op(config.d_paths[0])
        check = {
            "generalized": is_generalized_derivation,
            "generalized-jordan": is_generalized_jordan_derivation,
            "generalized-jordan-triple": is_generalized_jordan_triple_derivation,
        }[flavor]
        return check(big_d, d, tol=tol)

    if not config.d_paths:
        raise SemanticError(f"flavor {flavor!r} needs a --d operator file")
    d = _load_op(config.d_paths[0])
    if flavor == "psi-lambda":
        if config.psi_path is None or config.lambda_path is None:
            raise SemanticError("flavor 'psi-lambda' needs --psi and --lambda operator files")
        return is_psi_lambda_derivation(d, _load_op(config.psi_path), _load_op(config.lambda_path), tol=tol)
    if flavor == "psi":
        if config.psi_path is None:
            raise SemanticError("flavor 'psi' needs a --psi operator file")
        return is_psi_derivation(d, _load_op(config.psi_path), tol=tol)
    check = {
        "derivation": is_derivation,
        "jordan": is_jordan_derivation,
        "jordan-triple": is_jordan_triple_derivation,
    }[flavor]
    return check(d, tol=tol)


def cmd_check(config: RunConfig) -> int:
    result = _run_check(config)
    if config.output == "json":
        _emit_json({"flavor": config.flavor, **jsonio.check_result_to_json(result)})
    else:
        print(f"flavor: {config.flavor}")
        print(f"verdict: {'holds' if result.holds else 'fails'}")
        if result.witness is not None:
            w = result.witness
            if w.detail:
                print(f"witness ({w.detail}):")
            else:
                print("witness:")
            for i, vec in enumerate(w.inputs):
                print(f"  input[{i}]: {_fmt_vector(vec)}")
            print(f"  lhs: {_fmt_vector(w.lhs)}")
            print(f"  rhs: {_fmt_vector(w.rhs)}")
            print(f"  deviation: {w.deviation!r}")
    return 0 if result.holds else 1


def cmd_synth(config: RunConfig) -> int:
    phi = _load_phi(config.phi_path)
    r = jsonio.vector_from_json(jsonio.load_json_file(config.r_path), "multiplier")
    psi, lam = synthesize_pair(phi, r)
    if config.output == "json":
        _emit_json({"psi": jsonio.linop_to_json(psi), "lambda": jsonio.linop_to_json(lam)})
    else:
        print(f"index map: n={phi.n} image={list(phi.image)}")
        print(f"psi    = multiplier {_fmt_vector(psi.r)} along the map")
        print(f"lambda = multiplier {_fmt_vector(lam.r)} along the map")
    return 0


def cmd_classify(config: RunConfig) -> int:
    phi = _load_phi(config.phi_path)
    psi = _load_op(config.psi_path)
    lam = _load_op(config.lambda_path)
    outcome = classify_psi_lambda(phi, psi, lam, tol=config.tol)
    if config.output == "json":
        _emit_json(jsonio.classification_to_json(outcome))
    else:
        if outcome.accepted:
            print(f"accepted: r = {_fmt_vector(outcome.r)}")
        else:
            w = outcome.witness
            print("rejected")
            print(
                f"witness: {w.operator} entry ({w.row}, {w.col}) "
                f"expected {_fmt_complex(w.expected)} actual {_fmt_complex(w.actual)} "
                f"deviation {w.deviation!r}"
            )
    return 0 if outcome.accepted else 1


def cmd_solve(config: RunConfig) -> int:
    if config.mode == "twisted":
        if config.psi_path is not None and config.lambda_path is not None:
            psi = _load_op(config.psi_path)
            lam = _load_op(config.lambda_path)
        elif config.phi_path is not None:
            shift = sigma_op(_load_phi(config.phi_path))
            psi = lam = shift
        else:
            raise SemanticError("mode 'twisted' needs --psi and --lambda, or --phi for the shift pair")
        report = twisted_derivation_space(psi, lam)
        if config.output == "json":
            _emit_json(jsonio.solve_report_to_json(report))
        else:
            print(f"solution-space dimension: {report.dimension}")
            print(f"residual: {report.residual!r}")
        return 0

    if config.mode == "generalized":
        phi = _load_phi(config.phi_path)
        flavor = SOLVE_FLAVORS[config.flavor or "plain"]
        report = generalized_derivation_feasible(phi, flavor)
        if config.output == "json":
            _emit_json(jsonio.solve_report_to_json(report))
        else:
            print(f"flavor: {config.flavor or 'plain'}")
            print(f"feasible: {'yes' if report.feasible else 'no'}")
            if report.feasible:
                print(f"certificate d (dense rows): {[ _fmt_vector(row) for row in report.solution.as_matrix() ]}")
                print(f"solution-space dimension: {report.dimension}")
                print(f"residual: {report.residual!r}")
        return 0

    if config.mode == "higher":
        phi = _load_phi(config.phi_path)
        reports = higher_derivation_tail_space(phi, config.depth)
        if config.output == "json":
            _emit_json({"levels": [jsonio.solve_report_to_json(rep) for rep in reports]})
        else:
            for level, rep in enumerate(reports, start=1):
                if not rep.feasible:
                    print(f"level {level}: infeasible")
                else:
                    print(f"level {level}: dimension={rep.dimension} residual={rep.residual!r}")
        return 0

    raise SemanticError(f"unknown solve mode {config.mode!r}")


def _render_suite_text(report: SuiteReport) -> None:
    print("generalized-shift derivation property suite")
    print(f"n_max={report.n_max} seed={report.seed}")
    print("maps: " + " ".join(f"n={n}:{count}" for n, count in report.map_counts))
    width = max(len(result.name) for result in report.results)
    for result in report.results:
        status = "PASS" if result.passed else "FAIL"
        print(f"{status} {result.name.ljust(width)} cases={result.cases} failures={result.failures}")
    print(f"overall: {'PASS' if report.passed else 'FAIL'}")


def cmd_verify(config: RunConfig) -> int:
    report = run_suite(n_max=config.n_max, seed=config.seed)
    if config.output == "json":
        _emit_json(
            {
                "n_max": report.n_max,
                "seed": report.seed,
                "map_counts": {str(n): count for n, count in report.map_counts},
                "results": [
                    {
                        "name": result.name,
                        "description": result.description,
                        "cases": result.cases,
                        "failures": result.failures,
                        "passed": result.passed,
                    }
                    for result in report.results
                ],
                "passed": report.passed,
            }
        )
    else:
        _render_suite_text(report)
    return 0 if report.passed else 1


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--output", choices=["text", "json"], default="text", help="report format")
    common.add_argument("--tolerance", type=float, default=None, help="override the check tolerance (default 1e-9)")

    parser = argparse.ArgumentParser(
        prog="genshift",
        description="Analyze index-map shifts and derivation identities on the pointwise algebra C^n.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_analyze = sub.add_parser("analyze", parents=[common], help="fibers and operator norms of a shift")
    p_analyze.add_argument("--phi", required=True, help="index map JSON file")
    p_analyze.add_argument("--p", default="1,2,inf", help="comma-separated norm exponents, e.g. 1,2,inf")

    p_check = sub.add_parser("check", parents=[common], help="decide a derivation-style identity")
    p_check.add_argument("--flavor", required=True, choices=CHECK_FLAVORS)
    p_check.add_argument("--d", action="append", default=[], help="operator JSON file (repeatable for higher flavors)")
    p_check.add_argument("--psi", default=None, help="psi operator JSON file")
    p_check.add_argument("--lambda", dest="lam", default=None, help="lambda operator JSON file")
    p_check.add_argument("--D", dest="big_d", default=None, help="outer operator JSON file for generalized flavors")

    p_synth = sub.add_parser("synth", parents=[common], help="build the multiplier pair for a map and multiplier")
    p_synth.add_argument("--phi", required=True)
    p_synth.add_argument("--r", required=True, help="multiplier vector JSON file")

    p_classify = sub.add_parser("classify", parents=[common], help="test a (psi, lambda) pair against the forced form")
    p_classify.add_argument("--phi", required=True)
    p_classify.add_argument("--psi", required=True)
    p_classify.add_argument("--lambda", dest="lam", required=True)

    p_solve = sub.add_parser("solve", parents=[common], help="compute derivation spaces and feasibility")
    p_solve.add_argument("--mode", required=True, choices=["twisted", "generalized", "higher"])
    p_solve.add_argument("--phi", default=None)
    p_solve.add_argument("--psi", default=None)
    p_solve.add_argument("--lambda", dest="lam", default=None)
    p_solve.add_argument("--flavor", default=None, choices=sorted(SOLVE_FLAVORS))
    p_solve.add_argument("--depth", type=int, default=3)

    p_verify = sub.add_parser("verify", parents=[common], help="run the full property suite over enumerated maps")
    p_verify.add_argument("--n-max", type=int, default=4, dest="n_max")
    p_verify.add_argument("--seed", type=int, default=None)

    return parser


def _config_from_args(args: argparse.Namespace) -> RunConfig:
    command = args.command
    base = dict(command=command, output=args.output, tolerance=args.tolerance)
    if command == "analyze":
        return RunConfig(**base, phi_path=args.phi, p_list=_parse_p_list(args.p))
    if command == "check":
        return RunConfig(
            **base,
            flavor=args.flavor,
            d_paths=tuple(args.d),
            psi_path=args.psi,
            lambda_path=args.lam,
            big_d_path=args.big_d,
        )
    if command == "synth":
        return RunConfig(**base, phi_path=args.phi, r_path=args.r)
    if command == "classify":
        return RunConfig(**base, phi_path=args.phi, psi_path=args.psi, lambda_path=args.lam)
    if command == "solve":
        if args.mode == "generalized" and args.phi is None:
            raise SemanticError("mode 'generalized' needs --phi")
        if args.mode == "higher" and args.phi is None:
            raise SemanticError("mode 'higher' needs --phi")
        return RunConfig(
            **base,
            mode=args.mode,
            phi_path=args.phi,
            psi_path=args.psi,
            lambda_path=args.lam,
            flavor=args.flavor,
            depth=args.depth,
        )
    if command == "verify":
        seed = args.seed if args.seed is not None else _env_seed()
        return RunConfig(**base, n_max=args.n_max, seed=seed)
    raise SemanticError(f"unknown command {command!r}")


_HANDLERS = {
    "analyze": cmd_analyze,
    "check": cmd_check,
    "synth": cmd_synth,
    "classify": cmd_classify,
    "solve": cmd_solve,
    "verify": cmd_verify,
}


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        config = _config_from_args(args)
        return _HANDLERS[config.command](config)
    except ParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except SemanticError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
