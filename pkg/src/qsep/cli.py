"""Command-line front end.

Exit codes: 0 = separable certified or undetermined, 1 = entanglement
certified, 2 = bad input.
"""

import argparse
import json
import sys

import numpy as np

from qsep import __version__
from qsep.bell import maximize_chsh
from qsep.config import DEFAULT_TOLERANCES
from qsep.criteria import entropy_test, majorization_test, ppt_test, schmidt
from qsep.densecoding import classify, dc_advantage, dc_capacity, is_dc, reported_capacity
from qsep.errors import QsepError
from qsep.states import (
    BELL_KINDS,
    PureState,
    basis_state,
    bell_state,
    maximally_mixed,
    random_density,
    random_separable,
    werner,
)
from qsep import statefile
from qsep.witness import Witness, canonical_witness_2x2, witness_value

EXIT_OK, EXIT_ENTANGLED, EXIT_INPUT = 0, 1, 2
DEFAULT_TOL = 1e-9
DEFAULT_RESTARTS = 32


class InputError(Exception):
    pass


def _round(x):
    """Round floats to 12 significant digits, recursively."""
    if isinstance(x, float):
        return float(f"{x:.12g}")
    if isinstance(x, dict):
        return {k: _round(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_round(v) for v in x]
    return x


def _fmt(x: float) -> str:
    return f"{x:.12g}"


def _envelope(command: str, args, payload: dict) -> dict:
    return {
        "command": command,
        "version": __version__,
        "tolerances": {
            "tol": args.tol,
            "hermitian": DEFAULT_TOLERANCES.hermitian,
            "trace": DEFAULT_TOLERANCES.trace,
            "psd": DEFAULT_TOLERANCES.psd,
            "schmidt_cutoff": DEFAULT_TOLERANCES.schmidt_cutoff,
        },
        "seed": args.seed,
        **payload,
    }


def _emit(args, command: str, payload: dict, lines: list[str]) -> None:
    if args.json:
        text = json.dumps(_round(_envelope(command, args, payload)), sort_keys=True, indent=2)
    else:
        text = "\n".join(lines)
    if getattr(args, "output", None) and command != "gen":
        with open(args.output, "w") as fh:
            fh.write(text + "\n")
    else:
        print(text)


def _verdict_lines(v) -> list[str]:
    return [f"{v.criterion:<13} margin={_fmt(v.margin):<20} violated={str(v.violated).lower()}"]


def _load_witness(path, dims) -> Witness:
    if path is None:
        if tuple(dims) != (2, 2):
            raise InputError("no --witness-file given and the default witness needs a 2x2 state")
        return canonical_witness_2x2()
    obj, _ = statefile.load(path)
    if not isinstance(obj, tuple):
        raise InputError(f"{path}: witness file must have kind 'operator'")
    op, wdims = obj
    return Witness(op, wdims)


def cmd_classify(args) -> int:
    rho = statefile.load_density(args.path)
    witness = _load_witness(args.witness_file, rho.dims) if args.witness_file else None
    report = classify(rho, tol=args.tol, witness=witness)
    payload = {"report": report.as_dict()}
    lines = [f"state: {args.path} dims={tuple(rho.dims)}"]
    for v in (report.ppt, report.majorization, report.entropy):
        lines += _verdict_lines(v)
    lines.append(f"dc_advantage  {_fmt(report.dc_advantage)} bits")
    lines.append(f"capacity      {_fmt(report.capacity)} bits")
    if report.witness_value is not None:
        lines.append(f"witness       {_fmt(report.witness_value)}")
    if args.chsh:
        if tuple(rho.dims) != (2, 2):
            raise InputError("--chsh needs a two-qubit state")
        value, setting = maximize_chsh(rho, restarts=args.restarts, seed=args.seed)
        payload["chsh_max"] = value
        payload["chsh_setting"] = setting.as_dict()
        lines.append(f"chsh_max      {_fmt(value)}")
    lines.append(f"class: {report.class_label}")
    for note in report.notes:
        lines.append(f"warning: {note}")
    _emit(args, "classify", payload, lines)
    return EXIT_ENTANGLED if report.entangled_certified else EXIT_OK


def _simple_criterion(test, name):
    def run(args) -> int:
        rho = statefile.load_density(args.path)
        v = test(rho, args.tol)
        _emit(args, name, {"verdict": v.as_dict()}, _verdict_lines(v))
        return EXIT_ENTANGLED if v.violated else EXIT_OK

    return run


def cmd_chsh(args) -> int:
    rho = statefile.load_density(args.path)
    if tuple(rho.dims) != (2, 2):
        raise InputError("chsh needs a two-qubit state")
    value, setting = maximize_chsh(rho, restarts=args.restarts, seed=args.seed)
    violated = value > 2 + args.tol
    payload = {"chsh_max": value, "setting": setting.as_dict(), "violated": violated,
               "restarts": args.restarts}
    lines = [f"chsh_max {_fmt(value)}", f"violates_chsh {str(violated).lower()}"]
    _emit(args, "chsh", payload, lines)
    return EXIT_ENTANGLED if violated else EXIT_OK


def cmd_capacity(args) -> int:
    rho = statefile.load_density(args.path)
    dc = is_dc(rho)
    payload = {
        "capacity": reported_capacity(rho),
        "capacity_raw": dc_capacity(rho),
        "baseline": float(np.log2(rho.dims.d_A)),
        "dc_advantage": dc_advantage(rho),
        "dense_codeable": dc,
    }
    lines = [
        f"capacity {_fmt(payload['capacity'])}",
        f"capacity_raw {_fmt(payload['capacity_raw'])}",
        f"baseline {_fmt(payload['baseline'])}",
        f"dense_codeable {str(dc).lower()}",
    ]
    _emit(args, "capacity", payload, lines)
    return EXIT_ENTANGLED if dc else EXIT_OK


def cmd_schmidt(args) -> int:
    state, _ = statefile.load(args.path)
    if not isinstance(state, PureState):
        raise InputError("schmidt needs a file of kind 'pure'")
    dec = schmidt(state)
    coeffs = dec.coefficients.tolist()
    payload = {"coefficients": coeffs, "rank": dec.rank, "product": dec.rank == 1}
    lines = [f"rank {dec.rank}"] + [f"a_{i} {_fmt(a)}" for i, a in enumerate(coeffs)]
    _emit(args, "schmidt", payload, lines)
    return EXIT_ENTANGLED if dec.rank > 1 else EXIT_OK


def cmd_witness(args) -> int:
    rho = statefile.load_density(args.path)
    W = _load_witness(args.witness_file, rho.dims)
    value = witness_value(W, rho)
    detected = value < -args.tol
    payload = {"witness_value": value, "detected": detected, "decomposable": W.is_decomposable}
    lines = [f"witness_value {_fmt(value)}", f"detected {str(detected).lower()}"]
    _emit(args, "witness", payload, lines)
    return EXIT_ENTANGLED if detected else EXIT_OK


def _generate(args):
    kind = args.kind
    meta = {"name": kind}
    if kind == "bell":
        if args.bell not in BELL_KINDS:
            raise InputError(f"--kind must be one of {BELL_KINDS}")
        meta["bell"] = args.bell
        return bell_state(args.bell), meta
    if kind == "werner":
        if args.p is None:
            raise InputError("werner needs --p")
        meta["p"] = args.p
        return werner(args.p), meta
    if kind == "product":
        meta["index"] = list(args.index)
        return basis_state(args.index[0], args.index[1], args.dims), meta
    if kind == "mixed":
        return maximally_mixed(args.dims), meta
    meta["seed"] = args.seed
    if kind == "random":
        meta["rank"] = args.rank
        return random_density(tuple(args.dims), args.rank, seed=args.seed), meta
    if kind == "separable":
        meta["terms"] = args.terms
        return random_separable(tuple(args.dims), args.terms, seed=args.seed), meta
    raise InputError(f"unknown generator {kind!r}")


def cmd_gen(args) -> int:
    state, meta = _generate(args)
    text = statefile.dumps(state, meta)
    if args.output:
        with open(args.output, "w") as fh:
            fh.write(text + "\n")
    else:
        print(text)
    return EXIT_OK


def _common_flags() -> argparse.ArgumentParser:
    # Global flags are accepted before or after the subcommand. Parent parsers
    # share action objects, so each parser gets a fresh copy.
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--tol", type=float, default=argparse.SUPPRESS,
                        help=f"decision tolerance (default {DEFAULT_TOL:g})")
    common.add_argument("--seed", type=int, default=argparse.SUPPRESS)
    common.add_argument("--json", action="store_true", default=argparse.SUPPRESS)
    common.add_argument("-o", "--output", default=argparse.SUPPRESS)
    return common


def build_parser() -> argparse.ArgumentParser:
    common = _common_flags()
    parser = argparse.ArgumentParser(prog="qsep", parents=[_common_flags()],
                                     description="Entanglement criteria for bipartite states.")
    parser.add_argument("--version", action="version", version=f"qsep {__version__}")
    parser.set_defaults(tol=DEFAULT_TOL, seed=None, json=False, output=None)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("classify", parents=[common], help="run all criteria and assign a class")
    p.add_argument("path")
    p.add_argument("--chsh", action="store_true", help="also maximise the CHSH value (2x2 only)")
    p.add_argument("--restarts", type=int, default=DEFAULT_RESTARTS)
    p.add_argument("--witness-file")
    p.set_defaults(func=cmd_classify)

    for name, test in (("ppt", ppt_test), ("majorization", majorization_test), ("entropy", entropy_test)):
        p = sub.add_parser(name, parents=[common], help=f"{name} criterion")
        p.add_argument("path")
        p.set_defaults(func=_simple_criterion(test, name))

    p = sub.add_parser("chsh", parents=[common], help="maximise the CHSH value")
    p.add_argument("path")
    p.add_argument("--restarts", type=int, default=DEFAULT_RESTARTS)
    p.set_defaults(func=cmd_chsh)

    p = sub.add_parser("capacity", parents=[common], help="dense-coding capacity")
    p.add_argument("path")
    p.set_defaults(func=cmd_capacity)

    p = sub.add_parser("schmidt", parents=[common], help="Schmidt coefficients of a pure state")
    p.add_argument("path")
    p.set_defaults(func=cmd_schmidt)

    p = sub.add_parser("witness", parents=[common], help="evaluate an entanglement witness")
    p.add_argument("path")
    p.add_argument("--witness-file", help="operator file (default: canonical 2x2 witness)")
    p.set_defaults(func=cmd_witness)

    p = sub.add_parser("gen", parents=[common], help="write a state file")
    p.add_argument("kind", choices=("bell", "werner", "random", "separable", "product", "mixed"))
    p.add_argument("--kind", dest="bell", default="psi_minus", help="Bell state name")
    p.add_argument("--p", type=float)
    p.add_argument("--dims", type=int, nargs=2, default=(2, 2))
    p.add_argument("--rank", type=int)
    p.add_argument("--terms", type=int)
    p.add_argument("--index", type=int, nargs=2, default=(0, 0))
    p.set_defaults(func=cmd_gen)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (QsepError, InputError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
