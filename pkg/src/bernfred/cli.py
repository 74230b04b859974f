"""Command-line driver: ``verify <suite>`` and ``sweep <target>``.

Exit codes: 0 pass, 1 verification failure, 2 usage error, 3 numerical or I/O error.
"""

from __future__ import annotations

import argparse
import csv
import datetime as _dt
import io
import json
import math
import sys
from fractions import Fraction
from typing import Iterable, Optional, Sequence

import numpy as np

from . import painleve as pv
from . import selector as sel
from . import zeta as zt
from .verify import SUITES, SuiteConfig, VerificationReport, run_suite

EXIT_PASS, EXIT_FAIL, EXIT_USAGE, EXIT_NUMERIC = 0, 1, 2, 3

REPORT_COLUMNS = ("check_id", "status", "measured", "expected", "tolerance", "provenance", "note")
SWEEP_TARGETS = ("sine_det", "selector_det", "det_ratio")


def format_number(value) -> str:
    """17 significant digits, ``.`` decimal point; complex as ``re+imj``."""
    if isinstance(value, str):
        return value
    if isinstance(value, (bool, np.bool_)):
        return str(int(value))
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    if isinstance(value, Fraction):
        value = float(value)
    if isinstance(value, complex) or np.iscomplexobj(value):
        z = complex(value)
        return f"{z.real:.17g}{z.imag:+.17g}j"
    return f"{float(value):.17g}"


def _json_number(value):
    if isinstance(value, str):
        return value
    if isinstance(value, (bool, np.bool_)):
        return int(value)
    if isinstance(value, (int, np.integer)):
        return int(value)
    if isinstance(value, Fraction):
        value = float(value)
    if isinstance(value, complex) or np.iscomplexobj(value):
        z = complex(value)
        return {"re": _json_number(z.real), "im": _json_number(z.imag)}
    x = float(value)
    if not math.isfinite(x):
        return repr(x)
    return x


def _report_row(r: VerificationReport) -> dict:
    return {
        "check_id": r.check_id,
        "status": r.status,
        "measured": r.measured,
        "expected": r.expected,
        "tolerance": r.tolerance,
        "provenance": r.provenance,
        "note": r.note,
    }


def _csv_text(columns: Sequence[str], rows: Iterable[dict]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(columns)
    for row in rows:
        writer.writerow([format_number(row[c]) for c in columns])
    return buf.getvalue()


def render_reports(suite: str, reports: list[VerificationReport], fmt: str, timestamp: Optional[str] = None) -> str:
    rows = [_report_row(r) for r in reports]
    if fmt == "csv":
        text = _csv_text(REPORT_COLUMNS, rows)
        if timestamp:
            text = f"# timestamp {timestamp}\n" + text
        return text
    doc = {"suite": suite}
    if timestamp:
        doc["timestamp"] = timestamp
    doc["checks"] = [{k: _json_number(v) if k in ("measured", "expected", "tolerance") else v for k, v in row.items()} for row in rows]
    return json.dumps(doc, indent=2, sort_keys=False) + "\n"


def render_rows(columns: Sequence[str], rows: list[dict], fmt: str, timestamp: Optional[str] = None) -> str:
    if fmt == "csv":
        text = _csv_text(columns, rows)
        return f"# timestamp {timestamp}\n" + text if timestamp else text
    doc = {"columns": list(columns)}
    if timestamp:
        doc["timestamp"] = timestamp
    doc["rows"] = [{c: _json_number(row[c]) for c in columns} for row in rows]
    return json.dumps(doc, indent=2) + "\n"


# ---------------------------------------------------------------------------
# sweeps


def _arange(start: float, stop: float, step: float) -> np.ndarray:
    if step <= 0 or stop < start:
        raise ValueError("range needs step > 0 and stop >= start")
    count = int(math.floor((stop - start) / step + 1e-9)) + 1
    return start + step * np.arange(count)


def sweep_sine_det(start: float, stop: float, step: float, n_nodes: Optional[int], h: float) -> list[dict]:
    """Columns s, log_det, q, residual_sigma; derivatives use step ``h`` around each s."""
    s_values = _arange(start, stop, step)
    if s_values[0] <= 0:
        raise ValueError("sine_det sweep needs s > 0")
    n = n_nodes or pv.min_nodes(s_values[-1] + h)
    rows = []
    for s in s_values:
        s = float(s)
        hs = min(h, s / 2)
        lm, l0, lp = (pv.sine_log_det(v, n) for v in (s - hs, s, s + hs))
        t = pv.bandwidth_to_interval(s)
        ht = min(2 * h, t / 3)
        rows.append(
            {
                "s": s,
                "log_det": l0,
                "q": -(lp - 2 * l0 + lm) / (hs * hs),
                "residual_sigma": pv.sigma_residual(t, ht, n),
            }
        )
    return rows


def sweep_selector_det(J_values: Sequence[int], lam: float) -> list[dict]:
    rows = []
    for J in J_values:
        d = sel.selector_determinant(int(J), lam)
        rows.append({"J": int(J), "lambda": lam, "det": d, "exp_minus_lambda": math.exp(-lam), "deviation": d - math.exp(-lam)})
    return rows


def sweep_det_ratio(start: float, stop: float, step: float, bc: str) -> list[dict]:
    return [{"lambda": float(v), "bc": bc, "ratio": zt.det_ratio(float(v), bc)} for v in _arange(start, stop, step)]


SWEEP_COLUMNS = {
    "sine_det": ("s", "log_det", "q", "residual_sigma"),
    "selector_det": ("J", "lambda", "det", "exp_minus_lambda", "deviation"),
    "det_ratio": ("lambda", "bc", "ratio"),
}

SWEEP_DEFAULTS = {
    "sine_det": (0.1, 6.0, 0.1),
    "det_ratio": (-4.0, 25.0, 0.5),
}


# ---------------------------------------------------------------------------


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--nodes", type=int, default=None, help="Nystrom node count override")
    p.add_argument("--grid-step", type=float, default=0.02, help="finite-difference step")
    p.add_argument("--s-max", type=float, default=10.0, help="upper end of the asymptotic fit window")
    p.add_argument("--tolerance", type=float, default=None, help="override numeric tolerances")
    p.add_argument("--format", choices=("csv", "json"), default="json")
    p.add_argument("--out", default=None, help="output path (default stdout)")
    p.add_argument("--with-timestamps", action="store_true", help="add a UTC timestamp to reports")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="bernfred", description="Verification suites and parameter sweeps.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    v = sub.add_parser("verify", help="run a verification suite")
    v.add_argument("suite", choices=sorted(SUITES) + ["all"])
    _common(v)
    s = sub.add_parser("sweep", help="tabulate a curve")
    s.add_argument("target", choices=SWEEP_TARGETS)
    _common(s)
    s.add_argument("--start", type=float, default=None)
    s.add_argument("--stop", type=float, default=None)
    s.add_argument("--step", type=float, default=None)
    s.add_argument("--lambda", dest="lam", type=float, default=1.0, help="lambda for selector_det")
    s.add_argument("--J", dest="J_values", type=int, nargs="+", default=None, help="J values for selector_det")
    s.add_argument("--bc", choices=("DD", "NN", "DN", "ND"), default="DD", help="boundary condition for det_ratio")
    return parser


def _emit(text: str, out: Optional[str]) -> None:
    if out is None:
        sys.stdout.write(text)
        sys.stdout.flush()
        return
    with open(out, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(text)


def _timestamp() -> str:
    return _dt.datetime.now(_dt.timezone.utc).replace(microsecond=0).isoformat()


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if isinstance(exc.code, int) else EXIT_USAGE
    stamp = _timestamp() if args.with_timestamps else None
    try:
        if args.command == "verify":
            config = SuiteConfig(args.nodes, args.grid_step, args.s_max, args.tolerance)
            reports, code = run_suite(args.suite, config)
            _emit(render_reports(args.suite, reports, args.format, stamp), args.out)
            return code
        target = args.target
        if target == "selector_det":
            J_values = args.J_values or [2**k for k in range(1, 11)]
            rows = sweep_selector_det(J_values, args.lam)
        else:
            d_start, d_stop, d_step = SWEEP_DEFAULTS[target]
            start = d_start if args.start is None else args.start
            stop = d_stop if args.stop is None else args.stop
            step = d_step if args.step is None else args.step
            if target == "sine_det":
                rows = sweep_sine_det(start, stop, step, args.nodes, args.grid_step)
            else:
                rows = sweep_det_ratio(start, stop, step, args.bc)
        _emit(render_rows(SWEEP_COLUMNS[target], rows, args.format, stamp), args.out)
        return EXIT_PASS
    except ValueError as exc:
        print(f"bernfred: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (ArithmeticError, OSError) as exc:
        print(f"bernfred: error: {exc}", file=sys.stderr)
        return EXIT_NUMERIC


def entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entry()
