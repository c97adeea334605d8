"""Command line front end.

Usage::

    rieszrep analyze   --input problem.json --n 2
    rieszrep sweep     --input problem.json [--n-max 10] [--format csv]
    rieszrep exp-check --input exp.json
    rieszrep bounds    --input matrix.json
    rieszrep gen       --family block_remark42 --n-blocks 4

Exit codes: 0 success, 1 exponential certificate not established or other
failure, 2 validation error, 3 numerical non-convergence.  Data goes to
stdout (or ``--output``), diagnostics to stderr.
"""

from __future__ import annotations

import argparse
import logging
import sys
import time
from dataclasses import dataclass, replace
from pathlib import Path

import numpy as np

from . import __version__
from .coeff import ReplacementProblem, validate_problem
from .errors import ConditionViolated, NonConvergence, ParseError, RieszError, UnwritableOutput, ValidationError
from .expbasis import coefficient_matrix, suff_basis_check, suggest_parameters
from .families import FAMILIES, FamilySpec, generate
from .frame_constants import closed_form_n1, exact_constants, sweep, tilde_constants
from .gershgorin import gershgorin_report
from .gram import riesz_basis_test
from .serialize import (
    Report,
    dumps,
    emit_report,
    exp_input_to_dict,
    load_json,
    parse_exp_check,
    parse_matrix,
    parse_problem,
    problem_to_dict,
)
from .variational import VariationalOptions, variational_constants

log = logging.getLogger("rieszrep")

MODES = ("analyze", "sweep", "exp-check", "bounds", "gen")
EXIT_OK, EXIT_FAIL, EXIT_VALIDATION, EXIT_NONCONVERGENCE = 0, 1, 2, 3


@dataclass(frozen=True)
class AnalysisConfig:
    mode: str
    payload: object  # ReplacementProblem, ExpCheckInput, ndarray or FamilySpec
    input_path: str | None = None
    output_path: str | None = None
    format: str = "json"
    variational: VariationalOptions = VariationalOptions()
    n: int | None = None
    n_max: int | None = None


def parse_config(data: bytes, mode: str = "analyze", **options) -> AnalysisConfig:
    """Parse an input document for ``mode`` and check mode-required fields.

    ``options`` carries the CLI-level settings (``n``, ``n_max``, ``format``,
    ``variational``, paths); ``n`` falls back to an ``"N"`` field in the file.
    Problem files are checked for structure and ``N`` here; the unit-norm
    check against ``unit_tol`` runs in :func:`execute`.
    """
    if mode not in MODES:
        raise ParseError(f"unknown mode {mode!r}", field="mode")
    obj = load_json(data)
    if not isinstance(obj, dict):
        raise ParseError("top-level JSON value must be an object")
    fmt = options.get("format", "json")
    if fmt not in ("json", "csv"):
        raise ParseError(f"unknown format {fmt!r}", field="format")
    n = options.get("n")
    n_max = options.get("n_max")

    if mode in ("analyze", "sweep"):
        payload = parse_problem(obj, validate=False)
        K = payload.n_replacements
        if mode == "analyze":
            if n is None:
                n = obj.get("N")
            if n is None:
                raise ParseError("analyze needs N (--n or an 'N' field)", field="N")
            if isinstance(n, bool) or not isinstance(n, int) or not 1 <= n <= K:
                raise ParseError(f"N={n!r} outside 1..{K} (number of vectors)", field="N")
        elif n_max is not None and not 1 <= n_max <= K:
            raise ParseError(f"n_max={n_max!r} outside 1..{K} (number of vectors)", field="n_max")
    elif mode == "exp-check":
        payload = parse_exp_check(obj)
    elif mode == "bounds":
        payload = parse_matrix(obj)
    else:
        kind = obj.get("kind")
        if kind not in FAMILIES:
            raise ParseError(f"expected one of {FAMILIES}", field="kind")
        params = obj.get("params", {})
        if not isinstance(params, dict):
            raise ParseError("expected an object", field="params")
        payload = FamilySpec(kind, params)
    return AnalysisConfig(
        mode=mode,
        payload=payload,
        input_path=options.get("input_path"),
        output_path=options.get("output_path"),
        format=fmt,
        variational=options.get("variational", VariationalOptions()),
        n=n,
        n_max=n_max,
    )


# ---------------------------------------------------------------- runners


def _opts_dict(opts: VariationalOptions) -> dict:
    return {
        "restarts": opts.restarts,
        "max_iters": opts.max_iters,
        "step_tol": opts.step_tol,
        "value_tol": opts.value_tol,
        "seed": opts.seed,
    }


def run_analyze(problem: ReplacementProblem, N: int, opts: VariationalOptions) -> Report:
    verdict = riesz_basis_test(problem, N)
    constants = {
        "tilde": tilde_constants(problem, N),
        "exact": exact_constants(problem, N),
        "variational": variational_constants(problem, N, opts) if verdict.is_riesz_basis else None,
    }
    if N == 1:
        constants["closed_form_n1"] = closed_form_n1(problem)
    return Report(
        mode="analyze",
        inputs={"problem": problem_to_dict(problem), "N": N, "variational_options": _opts_dict(opts)},
        payload={"riesz": verdict, "constants": constants},
    )


def run_sweep(problem: ReplacementProblem, n_max: int | None) -> Report:
    rep = sweep(problem, n_max)
    return Report(
        mode="sweep",
        inputs={"problem": problem_to_dict(problem), "n_max": n_max},
        payload=rep,
    )


def run_exp_check(inp) -> Report:
    params = {"a": inp.a, "a_prime": inp.a_prime, "delta": inp.delta}
    suggested = None
    if None in params.values():
        suggested = suggest_parameters(inp.domain, inp.frequencies, inp.N)
        if suggested is None:
            raise ValidationError("no (a, a_prime, delta) given and none can be derived from the matrix")
        for key, val in zip(("a", "a_prime", "delta"), suggested):
            if params[key] is None:
                params[key] = val
    cert = suff_basis_check(inp.domain, inp.frequencies, inp.N, raise_on_violation=False, **params)
    Mx = coefficient_matrix(inp.domain, inp.frequencies, inp.N)
    sv = np.linalg.svd(Mx, compute_uv=False)
    return Report(
        mode="exp-check",
        inputs=exp_input_to_dict(inp),
        payload={
            "certificate": cert,
            "parameters_suggested": suggested is not None,
            "mixing_sigma_min": float(sv[-1]),
            "mixing_sigma_max": float(sv[0]),
        },
    )


def run_bounds(A: np.ndarray) -> Report:
    g = gershgorin_report(A)
    return Report(
        mode="bounds",
        inputs={"matrix": [[[z.real, z.imag] for z in row] for row in A]},
        payload={"gershgorin": g, "certifies_nonsingular": g.certifies_nonsingular},
    )


def execute(config: AnalysisConfig) -> tuple[bytes, int]:
    """Run a parsed configuration, returning output bytes and exit code."""
    if config.mode == "gen":
        if config.format != "json":
            raise ValidationError("gen only writes JSON problem files")
        return dumps(problem_to_dict(generate(config.payload))).encode(), EXIT_OK
    if config.mode in ("analyze", "sweep"):
        validate_problem(config.payload)
    if config.mode == "analyze":
        report = run_analyze(config.payload, config.n, config.variational)
    elif config.mode == "sweep":
        report = run_sweep(config.payload, config.n_max)
    elif config.mode == "exp-check":
        report = run_exp_check(config.payload)
    else:
        report = run_bounds(config.payload)
    code = EXIT_OK
    if config.mode == "exp-check" and not report.payload["certificate"]["condition_holds"]:
        cert = report.payload["certificate"]
        log.warning("certificate not established (worst row %d, sum %r)", cert["worst_row"], cert["worst_sum"])
        code = EXIT_FAIL
    return emit_report(report, config.format), code


# ---------------------------------------------------------------- argparse


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="rieszrep", description=__doc__.split("\n")[0])
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="mode", required=True)

    def common(p, needs_input=True):
        p.add_argument("--input", required=needs_input, help="input JSON file ('-' for stdin)")
        p.add_argument("--output", help="output file (default stdout)")
        p.add_argument("--format", choices=("json", "csv"), default="json")
        p.add_argument("--quiet", action="store_true", help="suppress diagnostics")
        p.add_argument("--timing", action="store_true", help="add wall time to the report (breaks byte determinism)")

    p = sub.add_parser("analyze", help="verdict and all frame-constant routes for one N")
    common(p)
    p.add_argument("--n", type=int)
    p.add_argument("--restarts", type=int, default=VariationalOptions.restarts)
    p.add_argument("--max-iters", type=int, default=VariationalOptions.max_iters)
    p.add_argument("--seed", type=int, default=VariationalOptions.seed)

    p = sub.add_parser("sweep", help="tilde and exact constants for N = 1..n_max")
    common(p)
    p.add_argument("--n-max", type=int)

    common(sub.add_parser("exp-check", help="exponential-basis certificate"))
    common(sub.add_parser("bounds", help="Gershgorin singular-value bounds of a matrix"))

    p = sub.add_parser("gen", help="write a family instance as a problem file")
    common(p, needs_input=False)
    p.add_argument("--family", choices=FAMILIES)
    p.add_argument("--n-blocks", type=int)
    p.add_argument("--thetas", help="comma-separated angles")
    p.add_argument("--dim", type=int)
    p.add_argument("--count", type=int)
    p.add_argument("--epsilon", type=float)
    p.add_argument("--seed", type=int, default=0)
    return parser


def _gen_spec_bytes(args) -> bytes:
    if args.family is None:
        raise ParseError("gen needs --input or --family", field="family")
    params: dict = {}
    if args.n_blocks is not None:
        params["n_blocks"] = args.n_blocks
    if args.thetas is not None:
        try:
            params["thetas"] = [float(t) for t in args.thetas.split(",")]
        except ValueError:
            raise ParseError("expected comma-separated numbers", field="thetas") from None
    for key in ("dim", "count", "epsilon"):
        if getattr(args, key) is not None:
            params[key] = getattr(args, key)
    params["seed"] = args.seed
    return dumps({"kind": args.family, "params": params}).encode()


def _read_input(path: str) -> bytes:
    if path == "-":
        return sys.stdin.buffer.read()
    try:
        return Path(path).read_bytes()
    except OSError as exc:
        raise ValidationError(f"cannot read input {path!r}: {exc.strerror}") from None


def _write_output(data: bytes, path: str | None) -> None:
    if path is None:
        sys.stdout.buffer.write(data)
        sys.stdout.buffer.flush()
        return
    try:
        Path(path).write_bytes(data)
    except OSError as exc:
        raise UnwritableOutput(f"cannot write {path!r}: {exc.strerror}") from None


def _configure_logging(quiet: bool) -> None:
    # bound to the current stderr on every call so repeated in-process runs work
    for h in list(log.handlers):
        log.removeHandler(h)
    handler = logging.StreamHandler(sys.stderr)
    handler.setFormatter(logging.Formatter("rieszrep: %(levelname)s: %(message)s"))
    log.addHandler(handler)
    log.setLevel(logging.ERROR if quiet else logging.INFO)
    log.propagate = False


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    _configure_logging(args.quiet)
    try:
        if args.mode == "gen" and args.input is None:
            data = _gen_spec_bytes(args)
        else:
            data = _read_input(args.input)
        options = {
            "format": args.format,
            "input_path": args.input,
            "output_path": args.output,
            "n": getattr(args, "n", None),
            "n_max": getattr(args, "n_max", None),
        }
        if args.mode == "analyze":
            options["variational"] = VariationalOptions(
                restarts=args.restarts, max_iters=args.max_iters, seed=args.seed
            )
        config = parse_config(data, args.mode, **options)
        start = time.perf_counter()
        out, code = execute(config)
        if args.timing and config.mode != "gen" and config.format == "json":
            import json

            rep = Report.from_dict(json.loads(out))
            rep = replace(rep, timing_ms=1000.0 * (time.perf_counter() - start))
            out = dumps(rep.to_dict()).encode()
        _write_output(out, config.output_path)
        return code
    except ValidationError as exc:
        log.error("%s", exc)
        return EXIT_VALIDATION
    except NonConvergence as exc:
        log.error("%s", exc)
        return EXIT_NONCONVERGENCE
    except ConditionViolated as exc:
        log.error("%s", exc)
        return EXIT_FAIL
    except RieszError as exc:
        log.error("%s", exc)
        return EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
