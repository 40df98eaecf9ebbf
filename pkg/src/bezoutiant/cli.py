"""Batch front end: problem files in, JSON reports out.

Problem files are JSON with exact rational coefficient strings:

    {
      "a": "1",
      "psi1": ["1"],                       // ascending powers; entries are
      "psi2": ["0", "2"],                  // "p/q" or {"re": .., "im": ..}
      "coeff_class": "rational",
      "rect": {"re_min": -40, "re_max": 40, "im_min": -5, "im_max": 5},
      "grid_n": 64,
      "tol": 1e-10,
      "delta": 1e-3,
      "tasks": ["decide", "zeros"]
    }

Exit codes: 0 success, 1 input error, 2 inconclusive verdict, 3 conflict
between the symbolic verdict and the numerical zero comparison.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import sys
import time
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from . import __version__
from .exact import Poly, parse_rational
from .kernel import (
    ZeroMassError,
    build_kernel,
    build_m_functions,
    normalize_pair,
)
from .operator_lab import convergence_study
from .symbol import (
    COEFF_NONALGEBRAIC,
    COEFF_RATIONAL,
    OUTCOME_COINCIDE,
    OUTCOME_INCONCLUSIVE,
    OUTCOME_NO_COMMON,
    decide,
)
from .transform import closed_form, reflected_transform
from .zeros import SearchRect, compare_zero_sets, locate_zeros

ALL_TASKS = ("decide", "zeros", "kernel", "operator-check")

EXIT_OK = 0
EXIT_INPUT_ERROR = 1
EXIT_INCONCLUSIVE = 2
EXIT_CONFLICT = 3


class SpecError(ValueError):
    """Problem-file validation error, carrying the offending field path."""

    def __init__(self, path: str, message: str):
        super().__init__(f"{path}: {message}")
        self.path = path


@dataclass
class ProblemSpec:
    a: Fraction
    psi1: Poly
    psi2: Poly
    coeff_class: str = COEFF_RATIONAL
    rect: SearchRect = field(default_factory=lambda: SearchRect(-30, 30, -5, 5))
    grid_n: int = 64
    tol: float = 1e-10
    delta: float = 1e-3
    tasks: tuple = ("decide", "zeros")

    @classmethod
    def from_json(cls, obj: dict) -> "ProblemSpec":
        if not isinstance(obj, dict):
            raise SpecError("$", "problem spec must be a JSON object")

        def fail(path, msg):
            raise SpecError(path, msg)

        if "a" not in obj:
            fail("a", "missing")
        try:
            a = parse_rational(str(obj["a"]))
        except ValueError as exc:
            fail("a", str(exc))
        if a <= 0:
            fail("a", "must be positive")

        polys = []
        for key in ("psi1", "psi2"):
            items = obj.get(key)
            if not isinstance(items, list) or not items:
                fail(key, "must be a nonempty coefficient list")
            try:
                polys.append(Poly.from_json(items))
            except ValueError as exc:
                fail(key, str(exc))

        coeff_class = obj.get("coeff_class", COEFF_RATIONAL)
        if coeff_class not in (COEFF_RATIONAL, COEFF_NONALGEBRAIC):
            fail("coeff_class", f"unknown value {coeff_class!r}")

        rect_obj = obj.get("rect", {})
        if not isinstance(rect_obj, dict):
            fail("rect", "must be an object")
        try:
            rect = SearchRect(
                float(rect_obj.get("re_min", -30.0)),
                float(rect_obj.get("re_max", 30.0)),
                float(rect_obj.get("im_min", -5.0)),
                float(rect_obj.get("im_max", 5.0)),
                float(rect_obj.get("boundary_margin", 0.05)),
            )
        except (TypeError, ValueError) as exc:
            fail("rect", str(exc))

        grid_n = obj.get("grid_n", 64)
        if not isinstance(grid_n, int) or grid_n < 16:
            fail("grid_n", "must be an integer >= 16")
        try:
            tol = float(obj.get("tol", 1e-10))
            delta = float(obj.get("delta", 1e-3))
        except (TypeError, ValueError) as exc:
            fail("tol", str(exc))

        tasks = tuple(obj.get("tasks", ["decide", "zeros"]))
        for t in tasks:
            if t not in ALL_TASKS:
                fail("tasks", f"unknown task {t!r} (known: {ALL_TASKS})")

        return cls(a, polys[0], polys[1], coeff_class, rect, grid_n, tol,
                   delta, tasks)


def _load_spec(spec_path) -> ProblemSpec:
    with open(spec_path) as fh:
        try:
            obj = json.load(fh)
        except json.JSONDecodeError as exc:
            raise SpecError("$", f"invalid JSON: {exc}") from None
    return ProblemSpec.from_json(obj)


def _spec_hash(spec_path) -> str:
    with open(spec_path, "rb") as fh:
        return hashlib.sha256(fh.read()).hexdigest()


def run(spec_path, out_path, tasks=None, rect=None, tol=None, grid_n=None):
    """Execute the requested pipeline; returns (report_dict, exit_code)."""
    started = time.monotonic()
    try:
        spec = _load_spec(spec_path)
    except (SpecError, OSError) as exc:
        report = {"error": str(exc)}
        _write_report(report, out_path)
        return report, EXIT_INPUT_ERROR

    if tasks is not None:
        spec.tasks = tuple(tasks)
    if rect is not None:
        spec.rect = rect
    if tol is not None:
        spec.tol = tol
    if grid_n is not None:
        spec.grid_n = grid_n

    report: dict = {"tasks": list(spec.tasks)}
    exit_code = EXIT_OK

    verdict = decide(spec.psi1, spec.psi2, spec.a, spec.coeff_class)
    report["verdict"] = verdict.to_json()
    if verdict.outcome == OUTCOME_INCONCLUSIVE:
        exit_code = EXIT_INCONCLUSIVE

    needs_pair = {"kernel", "operator-check"} & set(spec.tasks)
    if needs_pair and verdict.outcome != OUTCOME_INCONCLUSIVE:
        pair = normalize_pair(spec.psi1, spec.psi2, spec.a)
        mf = build_m_functions(pair)
        kern = build_kernel(pair)
        if "kernel" in spec.tasks:
            report["kernel"] = kern.to_json()
        if "operator-check" in spec.tasks:
            sizes = sorted({32, 64, min(128, max(32, spec.grid_n)), spec.grid_n})
            report["operator"] = convergence_study(pair, kern, mf, sizes=sizes)

    if "zeros" in spec.tasks and verdict.outcome != OUTCOME_INCONCLUSIVE:
        f1 = closed_form(spec.psi1, spec.a)
        f21 = reflected_transform(spec.psi2, spec.a)
        z1 = locate_zeros(f1, spec.rect, spec.tol)
        z21 = locate_zeros(f21, spec.rect, spec.tol)
        comparison = compare_zero_sets(z1, z21, spec.delta)
        report["zero_sets"] = {"F1": z1.to_json(), "F21": z21.to_json()}
        report["comparison"] = comparison.to_json()

        conflict = False
        if verdict.outcome == OUTCOME_NO_COMMON and comparison.has_common:
            conflict = True
        if verdict.outcome == OUTCOME_COINCIDE:
            matched = (
                len(z1.zeros) == len(z21.zeros)
                and all(
                    abs(a.z - b.z) <= spec.delta
                    for a, b in zip(z1.zeros, z21.zeros)
                )
            )
            if not matched:
                conflict = True
        report["conflict"] = conflict
        if conflict:
            exit_code = EXIT_CONFLICT

    report["provenance"] = {
        "tool": f"bezoutiant {__version__}",
        "spec_sha256": _spec_hash(spec_path),
        "timing_s": round(time.monotonic() - started, 6),
    }
    _write_report(report, out_path)
    return report, exit_code


def _write_report(report: dict, out_path) -> None:
    if out_path is None:
        return
    with open(out_path, "w") as fh:
        json.dump(report, fh, indent=2, sort_keys=True)
        fh.write("\n")


def emit_grid(spec_path, csv_path):
    """|F1| and |F21| over a grid_n x grid_n grid of the search rectangle."""
    spec = _load_spec(spec_path)
    f1 = closed_form(spec.psi1, spec.a)
    f21 = reflected_transform(spec.psi2, spec.a)
    res = np.linspace(spec.rect.re_min, spec.rect.re_max, spec.grid_n)
    ims = np.linspace(spec.rect.im_min, spec.rect.im_max, spec.grid_n)
    with open(csv_path, "w") as fh:
        fh.write("re,im,absF1,absF21\n")
        for im in ims:
            z = res + 1j * im
            a1 = np.abs(f1.eval_many(z))
            a2 = np.abs(f21.eval_many(z))
            for r, v1, v2 in zip(res, a1, a2):
                fh.write(f"{float(r)!r},{float(im)!r},{float(v1)!r},{float(v2)!r}\n")
    return EXIT_OK


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="bezoutiant",
        description="Common-zero analysis of exponential transforms of "
                    "polynomial densities.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_decide = sub.add_parser("decide", help="symbolic verdict only")
    p_decide.add_argument("--input", required=True)
    p_decide.add_argument("--output", required=True)

    p_verify = sub.add_parser("verify", help="verdict plus numerical checks")
    p_verify.add_argument("--input", required=True)
    p_verify.add_argument("--output", required=True)
    p_verify.add_argument("--rect", nargs=4, type=float, metavar=("RE_MIN", "RE_MAX", "IM_MIN", "IM_MAX"))
    p_verify.add_argument("--tol", type=float)
    p_verify.add_argument("--grid", type=int)

    p_grid = sub.add_parser("emit-grid", help="CSV of |F1|, |F21| over the rect")
    p_grid.add_argument("--input", required=True)
    p_grid.add_argument("--csv", required=True)

    args = parser.parse_args(argv)
    try:
        if args.command == "decide":
            _, code = run(args.input, args.output, tasks=("decide",))
            return code
        if args.command == "verify":
            rect = SearchRect(*args.rect) if args.rect else None
            _, code = run(args.input, args.output,
                          tasks=("decide", "zeros", "operator-check"),
                          rect=rect, tol=args.tol, grid_n=args.grid)
            return code
        if args.command == "emit-grid":
            return emit_grid(args.input, args.csv)
    except SpecError as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return EXIT_INPUT_ERROR
    return EXIT_INPUT_ERROR


if __name__ == "__main__":
    sys.exit(main())
