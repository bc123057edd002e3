"""Command-line interface.

Subcommands::

    knotslope slope PRES --M 1.3            slope of every Riley branch at M
    knotslope scan PRES --samples 25        slopes over a sampled arc of M
    knotslope apoly PRES                    A-polynomial, Newton polygon,
                                            ideal-point slopes
    knotslope verify PRES                   cross-validate pairing slopes
                                            against the log-Gauss map
    knotslope presentation check FILE       parse and validate a presentation

``PRES`` is a bundled name (``trefoil``, ``figure8``) or a file path.
Results are JSON on stdout (``--format csv`` for tabular records).  Exit
codes: 0 success / verification PASS, 1 verification FAIL, 2 bad usage,
unreadable input, or computation errors.
"""

from __future__ import annotations

import argparse
import cmath
import csv
import io
import json
import math
import sys
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path
from random import Random

from . import data as data_mod
from .apoly import (ApolyError, compute_apoly_twobridge_detailed,
                    format_bilaurent, bilaurent_to_json, ideal_point_slopes,
                    ideal_report_to_json, log_gauss, newton_polygon,
                    parse_bilaurent, polygon_to_json)
from .presentation import (KnotPresentation, PresentationError,
                           format_presentation, parse_presentation)
from .representations import (RepresentationError, boundary_data,
                              commutation_residual, is_boundary_parabolic,
                              parabolic_modulus, riley_family)
from .slope import (DegenerateIntersectionError, NotAdmissibleError,
                    SlopeError, compute_slope)


class CLIError(ValueError):
    """Bad command-line input that argparse cannot catch."""


def _pair(z: complex) -> list[float]:
    z = complex(z)
    return [z.real, z.imag]


def _parse_complex(text: str) -> complex:
    text = text.strip().replace(" ", "")
    try:
        if "," in text:
            re_s, im_s = text.split(",", 1)
            z = complex(float(re_s), float(im_s))
        else:
            z = complex(text)
    except ValueError as exc:
        raise CLIError(f"cannot parse complex number {text!r}; "
                       f"use forms like 1.3, 0.9+0.3j, or 0.9,0.3") from exc
    if not (math.isfinite(z.real) and math.isfinite(z.imag)):
        raise CLIError(f"complex number {text!r} is not finite")
    return z


def _load_presentation(name_or_path: str) -> KnotPresentation:
    if data_mod.resolve_builtin(name_or_path) is not None:
        return data_mod.load_builtin(name_or_path)
    path = Path(name_or_path)
    if not path.exists():
        raise CLIError(f"{name_or_path!r} is neither a bundled presentation "
                       f"({', '.join(data_mod.builtin_names())}) nor a file")
    return parse_presentation(path.read_text(encoding="utf-8"))


def _parse_arc(text: str) -> tuple[float, float, float, float]:
    parts = text.split(",")
    if len(parts) != 4:
        raise CLIError(f"--arc expects r0,r1,theta0,theta1; got {text!r}")
    try:
        r0, r1, t0, t1 = (float(p) for p in parts)
    except ValueError as exc:
        raise CLIError(f"--arc values must be numbers: {text!r}") from exc
    if r0 <= 0 or r1 < r0:
        raise CLIError("--arc radii must satisfy 0 < r0 <= r1")
    return r0, r1, t0, t1


def _sample_meridians(n: int, seed: int,
                      arc: tuple[float, float, float, float]) -> list[complex]:
    r0, r1, t0, t1 = arc
    rng = Random(seed)
    return [rng.uniform(r0, r1) * cmath.exp(1j * rng.uniform(t0, t1))
            for _ in range(n)]


# ---------------------------------------------------------------------------
# record construction shared by slope/scan

def _records_at(pres: KnotPresentation, M: complex, tol: float) -> list[dict]:
    base = {"M": _pair(M), "x": _pair(M + 1.0 / M)}
    try:
        reps = riley_family(pres, M, tol=tol)
    except RepresentationError as exc:
        return [dict(base, t=None, root_index=None, L=None, slope=None,
                     verdict="error", residuals={}, error=str(exc))]
    records = []
    for k, rep in enumerate(reps):
        rec = dict(base, t=_pair(rep.riley_t), root_index=k, L=None,
                   slope=None, verdict=None,
                   residuals={"relator": rep.relator_residual(),
                              "commutation": commutation_residual(rep)},
                   error=None)
        try:
            bd = boundary_data(rep, tol=tol)
            rec["L"] = _pair(bd.L)
        except RepresentationError as exc:
            rec["error"] = str(exc)
        try:
            if is_boundary_parabolic(rep, tol):
                rec["slope"] = _pair(parabolic_modulus(rep, tol))
                rec["verdict"] = "parabolic"
            else:
                sv = compute_slope(rep, tol)
                rec["slope"] = sv.as_json_value()
                rec["verdict"] = "admissible"
                rec["residuals"]["peripheral_fit"] = sv.residual
        except NotAdmissibleError as exc:
            rec["verdict"] = "not-admissible"
            rec["error"] = str(exc)
        except DegenerateIntersectionError as exc:
            rec["verdict"] = "degenerate"
            rec["error"] = str(exc)
        except (SlopeError, RepresentationError) as exc:
            rec["verdict"] = "error"
            rec["error"] = str(exc)
        records.append(rec)
    return records


_CSV_COLUMNS = ["M_re", "M_im", "x_re", "x_im", "t_re", "t_im", "root_index",
                "L_re", "L_im", "slope_re", "slope_im", "slope_is_inf",
                "verdict", "residual_relator", "residual_commutation",
                "residual_fit", "error"]


def _records_to_csv(records: list[dict]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf)
    writer.writerow(_CSV_COLUMNS)
    for r in records:
        slope = r.get("slope")
        if slope == "inf":
            s_re, s_im, s_inf = "", "", 1
        elif slope is None:
            s_re, s_im, s_inf = "", "", ""
        else:
            s_re, s_im, s_inf = slope[0], slope[1], 0
        res = r.get("residuals", {})
        row = [
            *(r["M"] if r.get("M") else ["", ""]),
            *(r["x"] if r.get("x") else ["", ""]),
            *(r["t"] if r.get("t") else ["", ""]),
            r.get("root_index", ""),
            *(r["L"] if r.get("L") else ["", ""]),
            s_re, s_im, s_inf,
            r.get("verdict", ""),
            res.get("relator", ""),
            res.get("commutation", ""),
            res.get("peripheral_fit", ""),
            r.get("error") or "",
        ]
        writer.writerow(row)
    return buf.getvalue()


def _emit_records(records: list[dict], fmt: str) -> None:
    if fmt == "csv":
        sys.stdout.write(_records_to_csv(records))
    else:
        print(json.dumps(records, indent=2))


# ---------------------------------------------------------------------------
# subcommands

def _cmd_slope(args) -> int:
    pres = _load_presentation(args.pres)
    M = _parse_complex(args.M)
    if M == 0:
        raise CLIError("meridian eigenvalue must be nonzero")
    records = _records_at(pres, M, args.tol)
    _emit_records(records, args.format)
    return 0


def _cmd_scan(args) -> int:
    if args.samples < 1:
        raise CLIError("--samples must be at least 1")
    pres = _load_presentation(args.pres)
    arc = _parse_arc(args.arc)
    meridians = _sample_meridians(args.samples, args.seed, arc)
    with ThreadPoolExecutor(max_workers=min(8, len(meridians))) as pool:
        chunks = list(pool.map(
            lambda M: _records_at(pres, M, args.tol), meridians))
    records = [rec for chunk in chunks for rec in chunk]
    _emit_records(records, args.format)
    return 0


def _cmd_apoly(args) -> int:
    pres = _load_presentation(args.pres)
    result = compute_apoly_twobridge_detailed(
        pres, with_reducible=args.with_reducible)
    polygon = newton_polygon(result.apoly)
    report = ideal_point_slopes(polygon)
    payload = {
        "polynomial": format_bilaurent(result.apoly),
        "terms": bilaurent_to_json(result.apoly)["terms"],
        "newton_polygon": polygon_to_json(polygon),
        "ideal_slopes": ideal_report_to_json(report),
        "multiplicity_removed": result.multiplicity_removed,
        "includes_reducible": result.includes_reducible,
    }
    print(json.dumps(payload, indent=2))
    return 0


def _read_apoly_arg(text: str):
    if text.startswith("@"):
        path = Path(text[1:])
        if not path.exists():
            raise CLIError(f"A-polynomial file {str(path)!r} not found")
        text = path.read_text(encoding="utf-8")
    return parse_bilaurent(text)


def _cmd_verify(args) -> int:
    if args.samples < 1:
        raise CLIError("--samples must be at least 1")
    pres = _load_presentation(args.pres)
    if args.apoly is not None:
        A = _read_apoly_arg(args.apoly).canonical()
        apoly_source = "supplied"
    else:
        A = compute_apoly_twobridge_detailed(pres).apoly
        apoly_source = "computed"
    arc = _parse_arc(args.arc)
    meridians = _sample_meridians(args.samples, args.seed, arc)

    def check(M: complex) -> list[dict]:
        out = []
        for k, rep in enumerate(riley_family(pres, M, tol=1e-8)):
            entry = {"M": _pair(M), "root_index": k, "t": _pair(rep.riley_t),
                     "ok": False, "error": None, "slope": None,
                     "log_gauss": None, "apoly_residual": None,
                     "relative_deviation": None}
            try:
                if is_boundary_parabolic(rep):
                    entry["error"] = "parabolic sample; no pairing slope"
                    out.append(entry)
                    continue
                sv = compute_slope(rep)
                bd = boundary_data(rep)
                scale = A.abs_evaluate(abs(bd.L), abs(M)) + 1.0
                a_resid = abs(A.evaluate(bd.L, M)) / scale
                entry["apoly_residual"] = a_resid
                lg = log_gauss(A, bd.L, M)
                entry["log_gauss"] = "inf" if lg == math.inf else _pair(lg)
                entry["slope"] = sv.as_json_value()
                if sv.is_infinite or lg == math.inf:
                    dev = 0.0 if (sv.is_infinite and lg == math.inf) else math.inf
                else:
                    dev = abs(complex(sv.reading) - lg) / max(1.0, abs(lg))
                entry["relative_deviation"] = None if dev == math.inf else dev
                entry["ok"] = (dev <= args.tol and a_resid <= args.tol)
            except (SlopeError, RepresentationError, ApolyError) as exc:
                entry["error"] = str(exc)
            out.append(entry)
        return out

    with ThreadPoolExecutor(max_workers=min(8, len(meridians))) as pool:
        chunks = list(pool.map(check, meridians))
    samples = [s for chunk in chunks for s in chunk]
    comparable = [s for s in samples if s["relative_deviation"] is not None]
    max_dev = max((s["relative_deviation"] for s in comparable), default=None)
    max_resid = max((s["apoly_residual"] for s in samples
                     if s["apoly_residual"] is not None), default=None)
    passed = bool(comparable) and all(s["ok"] for s in samples
                                      if s["error"] is None) \
        and all(s["error"] is None for s in samples)
    report = {
        "apoly": format_bilaurent(A),
        "apoly_source": apoly_source,
        "sample_count": len(samples),
        "comparable_count": len(comparable),
        "max_relative_deviation": max_dev,
        "max_apoly_residual": max_resid,
        "tolerance": args.tol,
        "samples": samples,
        "verdict": "PASS" if passed else "FAIL",
    }
    print(json.dumps(report, indent=2))
    print(f"verify: {report['verdict']}", file=sys.stderr)
    return 0 if passed else 1


def _cmd_presentation_check(args) -> int:
    path = Path(args.path)
    if not path.exists():
        raise CLIError(f"file {str(path)!r} not found")
    pres = parse_presentation(path.read_text(encoding="utf-8"))
    weights = pres.validate()
    payload = {
        "ok": True,
        "generators": list(pres.generators),
        "relator_count": len(pres.relators),
        "abelianization": weights,
        "normalized": format_presentation(pres),
    }
    print(json.dumps(payload, indent=2))
    return 0


# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="knotslope",
        description="Boundary slopes of SL(2,C) knot group representations.")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p, with_format=True):
        p.add_argument("pres", help="bundled presentation name "
                       f"({', '.join(data_mod.builtin_names())}) or a file path")
        p.add_argument("--tol", type=float, default=1e-8,
                       help="numerical tolerance (default 1e-8)")
        if with_format:
            p.add_argument("--format", choices=("json", "csv"), default="json",
                           help="output format (default json)")

    p_slope = sub.add_parser("slope", help="slope of each Riley branch at one M")
    add_common(p_slope)
    p_slope.add_argument("--M", required=True,
                         help="meridian eigenvalue, e.g. 1.3 or 0.9+0.3j")
    p_slope.set_defaults(func=_cmd_slope)

    p_scan = sub.add_parser("scan", help="slopes over a sampled arc of M values")
    add_common(p_scan)
    p_scan.add_argument("--samples", type=int, default=25,
                        help="number of meridian samples (default 25)")
    p_scan.add_argument("--seed", type=int, default=0,
                        help="sampling seed (default 0)")
    p_scan.add_argument("--arc", default="1.1,2.0,0.1,1.0",
                        help="sampling region r0,r1,theta0,theta1 for "
                             "M = r*exp(i*theta) (default 1.1,2.0,0.1,1.0)")
    p_scan.set_defaults(func=_cmd_scan)

    p_apoly = sub.add_parser("apoly",
                             help="A-polynomial, Newton polygon, ideal slopes")
    p_apoly.add_argument("pres", help="bundled presentation name or file path")
    p_apoly.add_argument("--with-reducible", action="store_true",
                         help="adjoin the reducible-locus factor L - 1")
    p_apoly.set_defaults(func=_cmd_apoly)

    p_verify = sub.add_parser(
        "verify", help="cross-validate pairing slopes against the log-Gauss "
                       "map of the A-polynomial")
    p_verify.add_argument("pres", help="bundled presentation name or file path")
    p_verify.add_argument("--samples", type=int, default=20,
                          help="number of meridian samples (default 20)")
    p_verify.add_argument("--seed", type=int, default=0,
                          help="sampling seed (default 0)")
    p_verify.add_argument("--arc", default="1.1,2.0,0.1,1.0",
                          help="sampling region r0,r1,theta0,theta1 "
                               "(default 1.1,2.0,0.1,1.0)")
    p_verify.add_argument("--tol", type=float, default=1e-6,
                          help="acceptance tolerance for relative deviation "
                               "and on-curve residual (default 1e-6)")
    p_verify.add_argument("--apoly", default=None,
                          help="use this A-polynomial instead of computing "
                               "one: a term expression, or @FILE")
    p_verify.set_defaults(func=_cmd_verify)

    p_pres = sub.add_parser("presentation", help="presentation utilities")
    pres_sub = p_pres.add_subparsers(dest="presentation_command", required=True)
    p_check = pres_sub.add_parser("check", help="parse and validate a file")
    p_check.add_argument("path", help="presentation file")
    p_check.set_defaults(func=_cmd_presentation_check)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (CLIError, PresentationError, RepresentationError, SlopeError,
            ApolyError, data_mod.DataError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
