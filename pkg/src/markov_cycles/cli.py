"""Command-line front end.

    markov-cycles analyze chain.json [--json] [--exact] [--tol T]
    markov-cycles synth --regime one-ne --n 5 --seed 7 [-o out.json]
    markov-cycles simulate chain.json --horizon 1e5 --seed 0 --seed 1 --seed 2
    markov-cycles cycles --n 4

Exit status: 0 success, 2 bad input, 3 numerical or feasibility failure.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path

import numpy as np

from . import chain, cyclegraph, cyclespace, linalg, sim, solver1ne, synth
from .errors import InputError, MarkovCyclesError, NumericError, ParseError

EXIT_OK, EXIT_INPUT, EXIT_NUMERIC = 0, 2, 3


@dataclass
class ChainDocument:
    n: int
    q: list
    name: str | None = None
    description: str | None = None
    extra: dict = field(default_factory=dict)

    def to_json(self) -> str:
        doc = {"n": self.n, "q": self.q}
        if self.name is not None:
            doc["name"] = self.name
        if self.description is not None:
            doc["description"] = self.description
        return json.dumps(doc, indent=2) + "\n"


def _parse_entry(x, where: str, diagonal: bool):
    if x is None and diagonal:
        return 0
    if isinstance(x, bool) or not isinstance(x, (int, float, str)):
        raise ParseError(f"{where}: expected a number, got {x!r}")
    if isinstance(x, str):
        try:
            return Fraction(x.strip())
        except ValueError:
            raise ParseError(f"{where}: cannot parse {x!r} as a number") from None
    if isinstance(x, float) and not math.isfinite(x):
        raise ParseError(f"{where}: rate must be finite")
    return x


def parse_json_document(text: str) -> ChainDocument:
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"line {exc.lineno}, column {exc.colno}: {exc.msg}") from None
    if not isinstance(obj, dict):
        raise ParseError("document must be a JSON object with fields 'n' and 'q'")
    if "q" not in obj:
        raise ParseError("missing field 'q'")
    q = obj["q"]
    if not isinstance(q, list) or not q or not all(isinstance(r, list) for r in q):
        raise ParseError("field 'q' must be a non-empty list of rows")
    n = obj.get("n", len(q))
    if isinstance(n, bool) or not isinstance(n, int):
        raise ParseError(f"field 'n' must be an integer, got {n!r}")
    if len(q) != n:
        raise ParseError(f"field 'q' has {len(q)} rows but n = {n}")
    rows = []
    for i, row in enumerate(q, start=1):
        if len(row) != n:
            raise ParseError(f"q[{i}] has {len(row)} entries, expected {n}")
        rows.append([_parse_entry(x, f"q[{i}][{j}]", i == j) for j, x in enumerate(row, start=1)])
    for key in ("name", "description"):
        if key in obj and obj[key] is not None and not isinstance(obj[key], str):
            raise ParseError(f"field '{key}' must be a string")
    extra = {k: v for k, v in obj.items() if k not in ("n", "q", "name", "description")}
    return ChainDocument(n, rows, obj.get("name"), obj.get("description"), extra)


def parse_csv_document(text: str) -> ChainDocument:
    rows = []
    for lineno, row in enumerate(csv.reader(io.StringIO(text)), start=1):
        if not row or all(not c.strip() for c in row):
            continue
        parsed = []
        for j, cell in enumerate(row, start=1):
            cell = cell.strip()
            i = len(rows) + 1
            if cell == "" and i == j:
                parsed.append(0)
                continue
            try:
                parsed.append(Fraction(cell) if "/" in cell else float(cell))
            except ValueError:
                raise ParseError(f"line {lineno}, column {j}: cannot parse {cell!r} as a number") from None
        rows.append(parsed)
    if not rows:
        raise ParseError("empty CSV document")
    n = len(rows)
    for i, row in enumerate(rows, start=1):
        if len(row) != n:
            raise ParseError(f"row {i} has {len(row)} entries, expected {n}")
    return ChainDocument(n, rows)


def load_document(path: str, fmt: str = "auto") -> ChainDocument:
    try:
        text = sys.stdin.read() if path == "-" else Path(path).read_text()
    except OSError as exc:
        raise ParseError(f"{path}: {exc.strerror}") from None
    if fmt == "auto":
        fmt = "csv" if str(path).lower().endswith(".csv") else "json"
    return parse_csv_document(text) if fmt == "csv" else parse_json_document(text)


def document_generator(doc: ChainDocument, exact: bool = False, strict: bool = True) -> chain.Generator:
    exact = exact or any(isinstance(x, Fraction) for row in doc.q for x in row)
    return chain.validate_generator(np.array(doc.q, dtype=object), strict=strict, exact=exact) if exact \
        else chain.validate_generator(np.array(doc.q, dtype=np.float64), strict=strict)


# ---------------------------------------------------------------- formatting


def num(x):
    """JSON value for a scalar: exact rationals become ``"p/q"`` strings."""
    if isinstance(x, Fraction):
        return str(x)
    if isinstance(x, (bool, np.bool_)):
        return bool(x)
    if isinstance(x, (int, np.integer)):
        return int(x)
    return float(x)


def nums(a):
    return [nums(x) for x in a] if isinstance(a, (list, np.ndarray)) else num(a)


def _fmt(x) -> str:
    if isinstance(x, Fraction):
        return str(x)
    if isinstance(x, (int, np.integer)):
        return str(int(x))
    return f"{float(x):.10g}"


def _matrix_text(m) -> str:
    cells = [[_fmt(x) for x in row] for row in m]
    width = max(len(c) for row in cells for c in row)
    return "\n".join("  " + " ".join(c.rjust(width) for c in row) for row in cells)


def _triple(t) -> str:
    return ",".join(str(x) for x in t)


# ------------------------------------------------------------------ analyze


def analyze(g: chain.Generator, tol=None) -> dict:
    """Full report for one generator.  Keys are fixed; inapplicable entries are None."""
    n = g.n
    pi = chain.stationary_distribution(g, tol=tol)
    d_mat = chain.current_matrix(g, pi)
    balanced = chain.is_detailed_balance(g, pi, tol=tol)
    report = {
        "n": n,
        "pi": nums(pi.pi),
        "D": nums(d_mat.d),
        "detailed_balance": bool(balanced),
        "coefficients": None,
        "k_detect": None,
        "one_ne": None,
        "kolmogorov_gap": None,
        "det_delta": None,
    }
    if n < 3:
        return report
    coeffs = cyclespace.decompose(d_mat, tol=tol)
    report["coefficients"] = {_triple(t): num(v) for t, v in coeffs.coeffs.items()}
    hit = cyclespace.detect_k_nonequilibrium(d_mat, tol=tol)
    if hit is not None:
        report["k_detect"] = {"k": hit.k, "d": num(hit.d), "hamiltonian": hit.hamiltonian}
    report["kolmogorov_gap"] = num(chain.kolmogorov_gap(g))
    report["det_delta"] = num(solver1ne.delta_determinant_closed(g))
    try:
        res = solver1ne.solve_one_ne(g, tol=tol)
        report["one_ne"] = {"valid": res.valid, "d": num(res.d), "residual": num(res.residual), "pi": nums(res.pi), "reason": None}
    except NumericError as exc:
        report["one_ne"] = {"valid": False, "d": None, "residual": None, "pi": None, "reason": f"{type(exc).__name__}: {exc}"}
    return report


def verdict(report: dict) -> str:
    if report["detailed_balance"]:
        return "equilibrium"
    if report["one_ne"] and report["one_ne"]["valid"]:
        return "one_ne"
    if report["k_detect"]:
        return f"k_ne (k={report['k_detect']['k']})"
    return "non_equilibrium"


def render_report(report: dict) -> str:
    n = report["n"]
    lines = [f"states: {n}", f"verdict: {verdict(report)}", "", "stationary distribution:"]
    lines += [f"  pi[{i}] = {_fmt(_val(x))}" for i, x in enumerate(report["pi"], start=1)]
    lines += ["", "current matrix D:", _matrix_text([[_val(x) for x in row] for row in report["D"]])]
    if report["coefficients"] is not None:
        lines += ["", "cycle-matrix coefficients:"]
        lines += [f"  d[{t}] = {_fmt(_val(v))}" for t, v in report["coefficients"].items()]
        k = report["k_detect"]
        lines += ["", "k-non-equilibrium: " + (f"k={k['k']} d={_fmt(_val(k['d']))}" + ("" if k["hamiltonian"] else " (not Hamiltonian)") if k else "none")]
        one = report["one_ne"]
        if one["reason"]:
            lines.append(f"1-non-equilibrium: no ({one['reason']})")
        else:
            lines.append(f"1-non-equilibrium: {'yes' if one['valid'] else 'no'}  d={_fmt(_val(one['d']))}  residual={_fmt(_val(one['residual']))}")
        lines.append(f"Kolmogorov gap: {_fmt(_val(report['kolmogorov_gap']))}")
        lines.append(f"det(Delta): {_fmt(_val(report['det_delta']))}")
    return "\n".join(lines) + "\n"


def _val(x):
    return Fraction(x) if isinstance(x, str) else x


# ------------------------------------------------------------------- cycles


def cycles_report(n: int) -> dict:
    indexer = cyclegraph.EdgeIndexer(n)
    report = {
        "n": n,
        "theta": [{"edge": [i, j], "index": indexer(i, j)} for i, j in indexer.edges()],
        "gamma": cyclegraph.incidence_matrix(n).tolist(),
        "basis": [],
        "lambda_minus_transpose": None,
        "lambda_decomposition": None,
    }
    if n >= 3:
        for t, c, m in zip(cyclegraph.basis_triples(n), cyclegraph.basis_cycles(n), cyclespace.cycle_matrix_basis(n)):
            report["basis"].append({"triple": list(t), "cycle": c.tolist(), "matrix": m.tolist()})
        lam = cyclespace.lambda_antisym(n, 1)
        dec = cyclespace.decompose(linalg.exact_array(lam))
        report["lambda_minus_transpose"] = lam.tolist()
        report["lambda_decomposition"] = {_triple(t): num(v) for t, v in dec.coeffs.items()}
    return report


def render_cycles(report: dict) -> str:
    n = report["n"]
    lines = [f"edge index theta (N={n}):"]
    lines += [f"  theta({e['edge'][0]},{e['edge'][1]}) = {e['index']}" for e in report["theta"]]
    lines += ["", "incidence matrix Gamma:", _matrix_text(report["gamma"])]
    for b in report["basis"]:
        t = _triple(b["triple"])
        lines += ["", f"C({t}) = ({', '.join(str(x) for x in b['cycle'])})", f"M({t}) =", _matrix_text(b["matrix"])]
    if report["lambda_decomposition"] is not None:
        terms = [f"{_fmt(_val(v))}*M({t})" for t, v in report["lambda_decomposition"].items() if _val(v) != 0]
        lines += ["", "Lambda - Lambda^T =", _matrix_text(report["lambda_minus_transpose"]), "  = " + " + ".join(terms)]
    return "\n".join(lines) + "\n"


# ----------------------------------------------------------------- simulate


def simulate_report(g: chain.Generator, horizon: float, seeds: list[int], start: int = 1) -> dict:
    gf = g.as_float()
    analytic = chain.current_matrix(gf, chain.stationary_distribution(gf)).d
    runs = []
    for seed in seeds:
        est = sim.empirical_currents(sim.simulate(gf, start, horizon, seed), g.n)
        edges = []
        for i, j in cyclegraph.EdgeIndexer(g.n).edges():
            a, e, se = analytic[i - 1, j - 1], est.j_hat[i - 1, j - 1], est.stderr[i - 1, j - 1]
            z = float((e - a) / se) if se > 0 else (0.0 if e == a else None)
            edges.append({"edge": [i, j], "analytic": float(a), "empirical": float(e), "stderr": float(se), "z": z})
        zs = [abs(x["z"]) for x in edges if x["z"] is not None]
        max_z = max(zs, default=0.0)
        ok = all(x["z"] is not None for x in edges) and max_z <= 3.0
        runs.append({"seed": seed, "edges": edges, "max_abs_z": max_z, "pass": bool(ok)})
    return {"n": g.n, "horizon": horizon, "start": start, "runs": runs, "passing": sum(r["pass"] for r in runs)}


def render_simulation(report: dict) -> str:
    lines = [f"horizon {report['horizon']:g}, start state {report['start']}"]
    for run in report["runs"]:
        lines += ["", f"seed {run['seed']}:", "  edge      analytic     empirical      stderr        z"]
        for e in run["edges"]:
            z = "n/a" if e["z"] is None else f"{e['z']:+.3f}"
            lines.append(f"  {e['edge'][0]:>2}-{e['edge'][1]:<3} {e['analytic']:>12.6g} {e['empirical']:>12.6g} {e['stderr']:>11.3g} {z:>8}")
        lines.append(f"  max |z| = {run['max_abs_z']:.3f}  ({'pass' if run['pass'] else 'FAIL'})")
    lines += ["", f"seeds within 3 standard errors: {report['passing']}/{len(report['runs'])}"]
    return "\n".join(lines) + "\n"


# --------------------------------------------------------------------- main


def _synth_document(args) -> ChainDocument:
    regime = args.regime.replace("-", "_")
    g = synth.random_instance(args.n, regime, args.seed, k=args.k, exact=args.exact)
    name = f"{args.regime}-n{args.n}-seed{args.seed}" + (f"-k{args.k}" if regime == "k_ne" else "")
    return ChainDocument(g.n, nums(g.q), name=name, description=f"synthesized {args.regime} chain")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="markov-cycles", description="Cycle structure of non-equilibrium Markov chains.")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, tol=True):
        p.add_argument("--json", action="store_true", help="machine-readable output")
        p.add_argument("--exact", action="store_true", help="rational arithmetic")
        if tol:
            p.add_argument("--tol", type=float, default=None, help="absolute zero tolerance")

    p = sub.add_parser("analyze", help="stationary currents, decomposition and classification")
    p.add_argument("input", help="chain document (JSON or CSV), '-' for stdin")
    p.add_argument("--format", choices=("auto", "json", "csv"), default="auto")
    p.add_argument("--non-strict", action="store_true", help="allow zero rates")
    common(p)

    p = sub.add_parser("synth", help="write a synthesized chain document")
    p.add_argument("--regime", choices=("equilibrium", "one-ne", "k-ne", "generic"), required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--k", type=int, default=None)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--exact", action="store_true", help="rational rates")
    p.add_argument("-o", "--output", default="-")

    p = sub.add_parser("simulate", help="compare simulated and analytic currents")
    p.add_argument("input")
    p.add_argument("--format", choices=("auto", "json", "csv"), default="auto")
    p.add_argument("--horizon", type=float, default=1e5)
    p.add_argument("--seed", type=int, action="append", dest="seeds")
    p.add_argument("--start", type=int, default=1)
    p.add_argument("--json", action="store_true")

    p = sub.add_parser("cycles", help="print theta, Gamma, basis cycles and cycle matrices")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--json", action="store_true")
    return parser


def _emit(text: str, path: str = "-") -> None:
    if path == "-":
        sys.stdout.write(text)
    else:
        Path(path).write_text(text)


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.command == "analyze":
            doc = load_document(args.input, args.format)
            g = document_generator(doc, exact=args.exact, strict=not args.non_strict)
            report = analyze(g, tol=args.tol)
            _emit(json.dumps(report, indent=2) + "\n" if args.json else render_report(report))
        elif args.command == "synth":
            if args.regime == "k-ne" and args.k is None:
                raise InputError("--regime k-ne needs --k")
            _emit(_synth_document(args).to_json(), args.output)
        elif args.command == "simulate":
            doc = load_document(args.input, args.format)
            report = simulate_report(document_generator(doc), args.horizon, args.seeds or [0, 1, 2], args.start)
            _emit(json.dumps(report, indent=2) + "\n" if args.json else render_simulation(report))
        elif args.command == "cycles":
            report = cycles_report(args.n)
            _emit(json.dumps(report, indent=2) + "\n" if args.json else render_cycles(report))
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except (NumericError, MarkovCyclesError) as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
