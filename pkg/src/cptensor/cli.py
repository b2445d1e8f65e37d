"""Command line interface.

    cptensor check FILE          structural checks
    cptensor decompose FILE      elimination terms, CP factors, residual, bound
    cptensor spectral FILE       eigenpairs and their sign properties
    cptensor duality FILE [B]    pairing with a (sampled) copositive tensor
    cptensor paper-examples      rebuild the six worked examples' factor tables

Exit status is 0 when every requested check passes, 1 when one fails and 2
on usage or input errors.
"""
from __future__ import annotations

import argparse
import hashlib
import json
import sys
from datetime import datetime, timezone
from fractions import Fraction
from pathlib import Path

from . import __version__
from .checks import run_all
from .cone import all_ones, duality_pairing_check
from .core import SymTensor, to_subset
from .elimination import cp_rank_bound, eliminate, to_cp_factors
from .errors import CPTensorError, NegativeCoefficient, NotCopositive, NotStronglySymmetric
from .fileformat import format_value, read_tensor, render_decomposition
from .worked_examples import CASE_NAMES, reproduce_case
from .spectral import IterationConfig, check_cp_spectral_properties

__all__ = ["main", "run_command", "replay"]


def _common_options():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--backend", choices=("rational", "float"), default=None,
                        help="scalar backend (default: rational iff the file is)")
    common.add_argument("--tol", type=float, default=1e-8,
                        help="residual / pairing tolerance (default 1e-8)")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--grid", type=int, default=6, help="simplex grid resolution")
    common.add_argument("--trace", action="store_true", help="print elimination levels")
    common.add_argument("--precision", choices=("table", "full"), default="table")
    common.add_argument("--json", action="store_true", help="machine-readable report")
    common.add_argument("--manifest", metavar="PATH",
                        help="write a run manifest (JSON) to PATH")
    return common


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="cptensor",
        description="Completely positive tensor checks and hierarchical elimination.",
    )
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)
    common = _common_options()
    for name, help_ in (("check", "run the structural checks"),
                        ("decompose", "hierarchical elimination and CP factors"),
                        ("spectral", "H-/Z-eigenpairs and sign properties")):
        p = sub.add_parser(name, parents=[common], help=help_)
        p.add_argument("file")
    p = sub.add_parser("duality", parents=[common], help="CP/copositive pairing")
    p.add_argument("file")
    p.add_argument("copositive", nargs="?",
                   help="tensor file for B (default: all-ones tensor)")
    sub.add_parser("paper-examples", parents=[common],
                   help="reproduce the six worked examples")
    return parser


def _describe(A) -> str:
    kind = "dense symmetric" if isinstance(A, SymTensor) else "strongly symmetric"
    backend = "rational" if A.exact else "float"
    return f"{kind}, m={A.m}, n={A.n}, {len(A)} stored entries, {backend} backend"


def _violation_lines(report, limit=20):
    lines = [f"  {v}" for v in report.violations[:limit]]
    if len(report.violations) > limit:
        lines.append(f"  ... {len(report.violations) - limit} more")
    return lines


def _report_payload(report):
    return {
        "name": report.name,
        "passed": report.passed,
        "violations": [
            {"condition": v.condition, "witness": v.witness, "lhs": v.lhs, "rhs": v.rhs}
            for v in report.violations
        ],
    }


def _strong_symmetry_failure(exc):
    (a, b), (va, vb) = exc.witness, exc.values
    line = (f"NotStronglySymmetric: {tuple(a)} = {format_value(va)} but "
            f"{tuple(b)} = {format_value(vb)}")
    return 1, [line], {"error": "NotStronglySymmetric", "witness": [a, b],
                       "values": [va, vb]}


def _subset_of(A):
    return to_subset(A) if isinstance(A, SymTensor) else A


def cmd_check(args):
    A = read_tensor(args.file, args.backend)
    lines = [f"file: {args.file} ({_describe(A)})"]
    reports = run_all(A)
    for report in reports:
        lines.append(report.summary())
        lines.extend(_violation_lines(report))
    ok = all(r.passed for r in reports)
    if isinstance(A, SymTensor) and not reports[0].passed:
        (a, b) = reports[0].violations[0].witness
        lines.append(f"NotStronglySymmetric: witness {tuple(a)} ~ {tuple(b)}")
    lines.append(f"result: {'PASS' if ok else 'FAIL'}")
    return (0 if ok else 1), lines, {"reports": [_report_payload(r) for r in reports],
                                     "passed": ok}


def cmd_decompose(args):
    A = read_tensor(args.file, args.backend)
    try:
        A = _subset_of(A)
    except NotStronglySymmetric as exc:
        return _strong_symmetry_failure(exc)
    d, trace = eliminate(A, keep_trace=args.trace)
    bound = cp_rank_bound(A.shape)
    lines = [f"file: {args.file} ({_describe(A)})"]
    if args.trace:
        for k, snap in enumerate(trace.snapshots):
            body = ", ".join(f"{set(key)}={format_value(v)}" for key, v in snap.items())
            lines.append(f"A^({k}): {body or '0'}")
    lines.append(f"terms ({len(d)}):")
    lines.extend(render_decomposition(d, "terms").splitlines())
    payload = {
        "terms": [{"coefficient": t.coefficient, "support": t.support} for t in d.terms],
        "residual": trace.residual_norm,
        "bound": bound,
    }
    status = 0
    try:
        text = render_decomposition(d, "factors", args.precision)
        lines.append(f"factors ({len(d)}):")
        lines.extend(text.splitlines())
        payload["factors"] = [line.split(" : ") for line in text.splitlines()]
    except NegativeCoefficient as exc:
        lines.append(f"factors: unavailable ({exc})")
        payload["factors"] = None
        status = 1
    lines.append(f"residual: {trace.residual_norm:g}")
    lines.append(f"rank bound: {bound}")
    lines.append(f"terms within bound: {len(d) <= bound}")
    return status, lines, payload


def cmd_spectral(args):
    A = read_tensor(args.file, args.backend)
    try:
        S = _subset_of(A)
    except NotStronglySymmetric as exc:
        return _strong_symmetry_failure(exc)
    d, _ = eliminate(S)
    try:
        factors = to_cp_factors(d)
    except NegativeCoefficient as exc:
        return 1, [f"no CP factorization certified: {exc}"], {"error": "NegativeCoefficient"}
    cfg = IterationConfig(residual_tol=args.tol, seed=args.seed)
    report = check_cp_spectral_properties(S, factors, cfg, sign_tol=args.tol)
    det = report.details
    lines = [f"file: {args.file} ({_describe(S)})"]
    payload = {"h": [], "z": []}
    for label, pairs, key in (("H", det["h_pairs"], "h"), ("Z", det["z_pairs"], "z")):
        for k, p in enumerate(pairs):
            lines.append(f"{label}[{k}] lambda={p.lam:.10f} residual={p.residual:.2e} "
                         f"iterations={p.iterations}")
            payload[key].append({"lambda": p.lam, "x": p.x.tolist(), "residual": p.residual})
    for label, key in (("H", "h_failures"), ("Z", "z_failures")):
        for p in det[key]:
            lines.append(f"{label} start did not converge (residual {p.residual:.2e})")
    lines.append(report.summary())
    lines.extend(_violation_lines(report))
    payload["report"] = _report_payload(report)
    return (0 if report.passed else 1), lines, payload


def cmd_duality(args):
    A = read_tensor(args.file, args.backend)
    try:
        S = _subset_of(A)
    except NotStronglySymmetric as exc:
        return _strong_symmetry_failure(exc)
    B = read_tensor(args.copositive, args.backend) if args.copositive else all_ones(S.m, S.n)
    if B.shape != S.shape:
        raise CPTensorError(f"B has shape {B.shape}, A has {S.shape}")
    d, _ = eliminate(S)
    lines = [f"file: {args.file} ({_describe(S)})",
             f"B: {args.copositive or 'all-ones tensor'}"]
    try:
        report = duality_pairing_check(d, B, args.grid, seed=args.seed, tol=args.tol)
    except NotCopositive as exc:
        v = exc.verdict
        lines.append(f"B is not copositive: B x^m = {v.value:.6g} at x = "
                     f"{[round(float(t), 6) for t in v.witness]}")
        return 1, lines, {"copositive": False, "value": v.value, "witness": v.witness.tolist()}
    except NegativeCoefficient as exc:
        lines.append(f"no CP factorization certified: {exc}")
        return 1, lines, {"error": "NotCpDecomposition"}
    det = report.details
    verdict = det["verdict"]
    lines.append(f"copositivity: no violation at resolution {verdict.resolution} "
                 f"({verdict.sample_count} points; not a proof)")
    lines.append(f"A . B = {det['pairing']:.10g}")
    lines.append(f"sum_k B u_k^m = {det['by_factors']:.10g}")
    lines.append(report.summary())
    lines.extend(_violation_lines(report))
    return (0 if report.passed else 1), lines, {
        "pairing": det["pairing"], "by_factors": det["by_factors"],
        "grid_points": verdict.sample_count, "report": _report_payload(report)}


def cmd_worked_examples(args):
    backend = args.backend or "rational"
    lines, cases, ok_count = [], [], 0
    for name in CASE_NAMES:
        res = reproduce_case(name, backend)
        ok = not res["mismatches"] and res["residual"] == 0 and len(res["factors"]) <= res["bound"]
        ok_count += ok
        lines.append(f"{name}: {len(res['factors'])} factors, residual {res['residual']:g}, "
                     f"bound {res['bound']}, table {'reproduced' if ok else 'MISMATCH'}")
        if args.trace or not ok:
            lines.extend("  " + line for line in render_decomposition(
                res["decomposition"], "factors", args.precision).splitlines())
        for got, want in res["mismatches"]:
            lines.append(f"  mismatch: got {got} expected {want}")
        cases.append({"name": name, "factors": len(res["factors"]),
                      "residual": res["residual"], "bound": res["bound"], "reproduced": ok})
    lines.append(f"{ok_count}/{len(CASE_NAMES)} tables reproduced")
    return (0 if ok_count == len(CASE_NAMES) else 1), lines, {"cases": cases}


COMMANDS = {
    "check": cmd_check,
    "decompose": cmd_decompose,
    "spectral": cmd_spectral,
    "duality": cmd_duality,
    "paper-examples": cmd_worked_examples,
}


def _jsonable(obj):
    if isinstance(obj, Fraction):
        return str(obj)
    if isinstance(obj, (tuple, set, frozenset)):
        return list(obj)
    return str(obj)


def run_command(argv) -> tuple:
    """Run one command; returns ``(exit_status, report_text)``."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return (exc.code if isinstance(exc.code, int) else 2), ""
    try:
        status, lines, payload = COMMANDS[args.command](args)
    except (CPTensorError, OSError) as exc:
        return 2, f"error: {exc}\n"
    if args.json:
        payload = {"command": args.command, "status": status, **payload}
        text = json.dumps(payload, indent=2, sort_keys=True, default=_jsonable) + "\n"
    else:
        text = "\n".join(lines) + "\n"
    if args.manifest:
        write_manifest(args.manifest, _strip_manifest(list(argv)), args, status, text)
    return status, text


def _strip_manifest(argv):
    out, skip = [], False
    for a in argv:
        if skip:
            skip = False
        elif a == "--manifest":
            skip = True
        elif not a.startswith("--manifest="):
            out.append(a)
    return out


def write_manifest(path, argv, args, status, text):
    manifest = {
        "argv": argv,
        "command": args.command,
        "input": getattr(args, "file", None),
        "backend": args.backend,
        "tol": args.tol,
        "seed": args.seed,
        "grid": args.grid,
        "status": status,
        "output_sha256": hashlib.sha256(text.encode()).hexdigest(),
        "timestamp": datetime.now(timezone.utc).isoformat(),
    }
    Path(path).write_text(json.dumps(manifest, indent=2) + "\n")


def replay(manifest_path) -> tuple:
    """Rerun the command recorded in a manifest; returns ``(status, text, same_output)``."""
    manifest = json.loads(Path(manifest_path).read_text())
    status, text = run_command(manifest["argv"])
    same = hashlib.sha256(text.encode()).hexdigest() == manifest["output_sha256"]
    return status, text, same


def main(argv=None):
    status, text = run_command(sys.argv[1:] if argv is None else argv)
    sys.stdout.write(text)
    return status


if __name__ == "__main__":
    sys.exit(main())
