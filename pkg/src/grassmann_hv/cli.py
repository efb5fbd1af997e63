"""Command-line front end.

Exit codes: 0 success, 1 failed check, 2 input/parse error,
3 integration error, 4 non-normalizable model.
"""

from __future__ import annotations

import argparse
import json
import re
import sys
from fractions import Fraction

from .algebra import AlgebraContext, Multivector, mask_indices
from .berezin import (PAIR_NAMES, GrassmannMeasure, IntegrationError, NonNormalizableError,
                      berezin_multi, gaussian_pair_measure, parse_order)
from .classical import (SearchConfig, max_anticorrelation_search, model_state,
                        signed_eta_model)
from .multiparty import CouplingGraph, multiparty_report
from .parsing import ParseError, format_coefficient, format_mv, parse_mv
from .quantum import (CLASSIFY_TOL, average_state, gmat_tensor, spin_state_grassmann,
                      werner_laurent, werner_row, werner_state)
from .scalars import ETA, as_fraction
from .serialize import (coefficient_to_json, dumps, format_float, matrix_to_json,
                        multivector_to_json, rows_to_csv)

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_INPUT = 2
EXIT_INTEGRATION = 3
EXIT_NONNORMALIZABLE = 4

# argparse only treats "-3" and "-.5" as values; also accept "-1/3"
_NEGATIVE_NUMBER = re.compile(r"^-\d+(/\d+)?$|^-\d*\.\d+$")


class CliError(Exception):
    def __init__(self, message: str, code: int):
        super().__init__(message)
        self.code = code


def _rational(text: str) -> Fraction:
    try:
        return as_fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a rational number: {text!r}") from None


def _common(parser: argparse.ArgumentParser, suppress: bool):
    parser._negative_number_matcher = _NEGATIVE_NUMBER
    default = argparse.SUPPRESS if suppress else None
    parser.add_argument("--format", choices=("text", "json", "csv"), default=default)
    parser.add_argument("--out", default=default, help="write the main output to this path")
    parser.add_argument("--seed", type=int, default=argparse.SUPPRESS if suppress else 0)
    parser.add_argument("--tol", type=float,
                        default=argparse.SUPPRESS if suppress else CLASSIFY_TOL)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="grassmann-hv",
                                     description="Grassmann hidden variables and Werner states")
    _common(parser, suppress=False)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("eval", help="evaluate (and optionally integrate) a Grassmann expression")
    p.add_argument("expr")
    p.add_argument("--integrate", default="", help="comma-separated labels, first integrated first")
    p.add_argument("--generators", default=",".join(PAIR_NAMES))
    _common(p, suppress=True)

    p = sub.add_parser("reconstruct", help="check the Werner identity for the Gaussian measure")
    p.add_argument("--perturb", action="store_true", help="negative control: distort the measure")
    _common(p, suppress=True)

    p = sub.add_parser("sweep", help="classify Werner states over a rational grid")
    p.add_argument("--start", type=_rational, default=Fraction(-1))
    p.add_argument("--stop", type=_rational, default=Fraction(1))
    p.add_argument("--step", type=_rational, default=Fraction(1, 12))
    p.add_argument("--eta", type=_rational, action="append", help="classify single values instead")
    _common(p, suppress=True)

    p = sub.add_parser("classical", help="search for the strongest classical anti-correlation")
    p.add_argument("--n-points", type=int, default=4)
    p.add_argument("--restarts", type=int, default=8)
    p.add_argument("--iters", type=int, default=500)
    p.add_argument("--step", type=float, default=0.5)
    p.add_argument("--model-out", help="write the witnessing model JSON here")
    p.add_argument("--convergence", help="write the convergence CSV (iter,best_eta) here")
    _common(p, suppress=True)

    p = sub.add_parser("signed", help="signed-weight model reproducing a Werner state")
    p.add_argument("eta", type=_rational)
    p.add_argument("--model-out", help="write the model JSON here")
    _common(p, suppress=True)

    p = sub.add_parser("multiparty", help="state generated by a coupling graph")
    p.add_argument("graph", nargs="?", help="graph JSON file")
    p.add_argument("--parties", type=int, help="inline graph: number of parties")
    p.add_argument("--coupling", action="append", default=[], metavar="K,L=J",
                   help="inline graph coupling (0-based parties), repeatable")
    _common(p, suppress=True)
    return parser


def _write(path: str, text: str):
    with open(path, "w", encoding="utf-8", newline="") as fh:
        fh.write(text)


def _eval(args) -> str:
    ctx = AlgebraContext(tuple(s.strip() for s in args.generators.split(",") if s.strip()))
    try:
        x = parse_mv(ctx, args.expr)
    except ParseError as exc:
        raise CliError(f"syntax error: {exc}", EXIT_INPUT) from None
    if args.integrate:
        x = berezin_multi(x, parse_order(ctx, args.integrate))
    fmt = args.format or "text"
    if fmt == "json":
        return dumps(multivector_to_json(x))
    if fmt == "csv":
        rows = [["*".join(ctx.names[k] for k in mask_indices(m)), format_coefficient(c)]
                for m, c in x.items()]
        return rows_to_csv(["monomial", "coefficient"], rows)
    return format_mv(x) + "\n"


def perturbed_measure() -> GrassmannMeasure:
    """Gaussian measure plus an eta*a2 a3 b1 b3 term, which breaks M[a1 b2] = 0."""
    m = gaussian_pair_measure()
    ctx = m.ctx
    extra = Multivector(ctx, {ctx.mask_of(["a2", "a3", "b1", "b3"]): ETA})
    return GrassmannMeasure(m.weight + extra, m.order)


def reconstruction_table(perturb: bool = False) -> list[dict]:
    m = perturbed_measure() if perturb else gaussian_pair_measure()
    ctx = m.ctx
    rho = gmat_tensor(spin_state_grassmann(ctx, ["a1", "a2", "a3"]),
                      spin_state_grassmann(ctx, ["b1", "b2", "b3"]))
    got = average_state(m, rho)
    expected = werner_laurent()
    rows = []
    for i in range(4):
        for j in range(4):
            rows.append({"entry": [i, j], "expected": expected[i][j], "got": got[i][j],
                         "pass": got[i][j] == expected[i][j]})
    return rows


def _reconstruct(args) -> tuple[str, int]:
    rows = reconstruction_table(args.perturb)
    n_pass = sum(r["pass"] for r in rows)
    code = EXIT_OK if n_pass == len(rows) else EXIT_FAIL
    fmt = args.format or "text"
    if fmt == "json":
        out = {"entries": [{"entry": r["entry"], "expected": coefficient_to_json(r["expected"]),
                            "got": coefficient_to_json(r["got"]), "pass": r["pass"]} for r in rows],
               "passed": n_pass, "total": len(rows)}
        return dumps(out), code
    if fmt == "csv":
        return rows_to_csv(["row", "col", "expected", "got", "pass"],
                           [[*r["entry"], format_coefficient(r["expected"]), format_coefficient(r["got"]),
                             "PASS" if r["pass"] else "FAIL"] for r in rows]), code
    lines = [f"({r['entry'][0]},{r['entry'][1]}) expected={format_coefficient(r['expected'])} "
             f"got={format_coefficient(r['got'])} {'PASS' if r['pass'] else 'FAIL'}" for r in rows]
    lines.append(f"{n_pass}/{len(rows)} entries PASS")
    return "\n".join(lines) + "\n", code


def sweep_grid(start: Fraction, stop: Fraction, step: Fraction) -> list[Fraction]:
    if step <= 0:
        raise CliError("sweep step must be positive", EXIT_INPUT)
    if start > stop:
        raise CliError("sweep start exceeds stop", EXIT_INPUT)
    n = int((stop - start) / step)
    return [start + k * step for k in range(n + 1)]


def _sweep(args) -> str:
    etas = args.eta if args.eta else sweep_grid(args.start, args.stop, args.step)
    rows = [werner_row(e, args.tol) for e in etas]
    fmt = args.format or "csv"
    if fmt == "json":
        return dumps([{"eta": str(r["eta"]), "min_eig": float(format_float(r["min_eig"])),
                       "min_pt_eig": float(format_float(r["min_pt_eig"])),
                       "class": str(r["class"])} for r in rows])
    table = [[str(r["eta"]), format_float(r["min_eig"]), format_float(r["min_pt_eig"]), str(r["class"])]
             for r in rows]
    if fmt == "csv":
        return rows_to_csv(["eta", "min_eig", "min_pt_eig", "class"], table)
    return "".join(f"{e:>8} {a:>14} {b:>14} {c}\n" for e, a, b, c in table)


def _classical(args) -> str:
    try:
        cfg = SearchConfig(args.n_points, args.restarts, args.iters, args.step, args.seed)
    except ValueError as exc:
        raise CliError(str(exc), EXIT_INPUT) from None
    result = max_anticorrelation_search(cfg)
    conv = rows_to_csv(["iter", "best_eta"], [[t, repr(v)] for t, v in result.history])
    if args.model_out:
        _write(args.model_out, dumps(result.model.to_json()))
    if args.convergence:
        _write(args.convergence, conv)
    fmt = args.format or "text"
    if fmt == "json":
        return dumps({"best_eta": result.best_eta, "witness_eta": str(result.witness_eta),
                      "gap": result.best_eta - float(result.witness_eta),
                      "model": result.model.to_json()})
    if fmt == "csv":
        return conv
    return f"best_eta={result.best_eta!r} witness_eta={result.witness_eta}\n"


def _signed(args) -> tuple[str, int]:
    try:
        model = signed_eta_model(args.eta)
    except ValueError as exc:
        raise CliError(str(exc), EXIT_INPUT) from None
    ok = model_state(model) == werner_state(args.eta)
    summary = f"eta={args.eta} {'reconstructed' if ok else 'NOT reconstructed'}"
    if args.model_out:
        _write(args.model_out, dumps(model.to_json()))
    fmt = args.format or "text"
    code = EXIT_OK if ok else EXIT_FAIL
    if fmt == "json":
        return dumps({"eta": str(args.eta), "reconstructed": ok, "model": model.to_json()}), code
    if fmt == "csv":
        rows = [[*map(str, p.a), *map(str, p.b), str(p.w)] for p in model.support]
        return rows_to_csv(["a1", "a2", "a3", "b1", "b2", "b3", "w"], rows), code
    return summary + "\n", code


def _load_graph(args) -> CouplingGraph:
    try:
        if args.graph:
            with open(args.graph, encoding="utf-8") as fh:
                return CouplingGraph.from_json(json.load(fh))
        if args.parties is None:
            raise CliError("give a graph file or --parties", EXIT_INPUT)
        couplings = {}
        for item in args.coupling:
            pair, j = item.split("=")
            k, l = (int(s) for s in pair.split(","))
            couplings[(k, l)] = as_fraction(j)
        return CouplingGraph(args.parties, couplings)
    except CliError:
        raise
    except (OSError, ValueError, KeyError, TypeError, ZeroDivisionError) as exc:
        raise CliError(f"bad graph input: {exc}", EXIT_INPUT) from None


def _multiparty(args) -> str:
    graph = _load_graph(args)
    try:
        report = multiparty_report(graph)
    except NonNormalizableError as exc:
        raise CliError(str(exc), EXIT_NONNORMALIZABLE) from None
    corr = report["correlations"]
    fmt = args.format or "text"
    if fmt == "json":
        return dumps({"graph": graph.to_json(), "state": matrix_to_json(report["state"]),
                      "correlations": [[str(v) for v in row] for row in corr],
                      "min_eig": report["min_eig"], "trace": str(report["trace"].re)})
    if fmt == "csv":
        return rows_to_csv([""] + [str(l) for l in range(graph.parties)],
                           [[k] + [str(v) for v in row] for k, row in enumerate(corr)])
    lines = [f"parties={graph.parties} trace={report['trace'].re} min_eig={format_float(report['min_eig'])}"]
    for k, row in enumerate(corr):
        lines.append(" ".join(f"{str(v):>6}" for v in row))
    return "\n".join(lines) + "\n"


def run(argv: list[str] | None = None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    handlers = {"eval": _eval, "reconstruct": _reconstruct, "sweep": _sweep,
                "classical": _classical, "signed": _signed, "multiparty": _multiparty}
    try:
        result = handlers[args.command](args)
    except CliError as exc:
        print(f"error: {exc}", file=stderr)
        return exc.code
    except IntegrationError as exc:
        print(f"integration error: {exc}", file=stderr)
        return EXIT_INTEGRATION
    text, code = result if isinstance(result, tuple) else (result, EXIT_OK)
    if args.out:
        _write(args.out, text)
    else:
        stdout.write(text)
    return code


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
