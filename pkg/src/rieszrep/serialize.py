"""File formats and report emission.

Complex numbers are ``[re, im]`` pairs, vectors are arrays of pairs, and all
indices in files are 0-based (row ``j`` of ``vectors`` is ``w_{j+1}``).

Problem file::

    {"schema_version": "1", "ambient_dim": M,
     "vectors": [[[re, im], ...], ...], "unit_tol": 1e-10, "rank_tol": 1e-10}

Exp-check file::

    {"domain": {"kind": "interval_union", "intervals": [[a, b], ...]}
               | {"kind": "unit_box", "d": d},
     "frequencies": [[...], ...], "N": n, "a": ..., "a_prime": ..., "delta": ...}

Bounds file: ``{"matrix": [[[re, im], ...], ...]}``.

Reports are JSON with sorted keys and floats printed with 17 significant
digits, so identical inputs give identical bytes and every float re-parses
to the same value.
"""

from __future__ import annotations

import csv
import dataclasses
import io
import json
import math
from dataclasses import dataclass
from typing import Any

import numpy as np

from .coeff import DEFAULT_RANK_TOL, DEFAULT_UNIT_TOL, ReplacementProblem, make_problem
from .errors import ParseError, SchemaVersionUnsupported, ValidationError

SCHEMA_VERSION = "1"
REPORT_SCHEMA_VERSION = "1"
SWEEP_CSV_COLUMNS = ("N", "tilde_A", "tilde_B", "A", "B", "tail_energy")


# ---------------------------------------------------------------- parsing


def load_json(data: bytes | str) -> Any:
    if isinstance(data, bytes):
        try:
            data = data.decode("utf-8")
        except UnicodeDecodeError as exc:
            raise ParseError(f"input is not UTF-8: {exc}") from None
    try:
        return json.loads(data)
    except json.JSONDecodeError as exc:
        raise ParseError(exc.msg, line=exc.lineno) from None


def require(obj: dict, key: str, where: str = ""):
    if not isinstance(obj, dict):
        raise ParseError("expected a JSON object", field=where or None)
    if key not in obj:
        raise ParseError("required field is missing", field=f"{where}{key}")
    return obj[key]


def check_schema(obj: dict) -> None:
    version = obj.get("schema_version", SCHEMA_VERSION)
    if str(version) != SCHEMA_VERSION:
        raise SchemaVersionUnsupported(
            f"schema_version {version!r} is not supported (expected {SCHEMA_VERSION!r})",
            field="schema_version",
        )


def _number(x, field: str) -> float:
    if isinstance(x, bool) or not isinstance(x, (int, float)):
        raise ParseError(f"expected a number, got {x!r}", field=field)
    return float(x)


def parse_complex(x, field: str) -> complex:
    if isinstance(x, (int, float)) and not isinstance(x, bool):
        return complex(float(x), 0.0)
    if not isinstance(x, list) or len(x) != 2:
        raise ParseError(f"expected a [re, im] pair, got {x!r}", field=field)
    return complex(_number(x[0], field), _number(x[1], field))


def parse_complex_rows(rows, field: str) -> list[list[complex]]:
    if not isinstance(rows, list) or not rows:
        raise ParseError("expected a non-empty array of arrays", field=field)
    out = []
    for i, row in enumerate(rows):
        if not isinstance(row, list):
            raise ParseError("expected an array of [re, im] pairs", field=f"{field}[{i}]")
        out.append([parse_complex(x, f"{field}[{i}][{k}]") for k, x in enumerate(row)])
    return out


def encode_complex(z) -> list[float]:
    z = complex(z)
    return [float(z.real), float(z.imag)]


def parse_problem(obj: dict, *, validate: bool = True) -> ReplacementProblem:
    """Problem from a decoded file; ``validate=False`` defers the norm checks."""
    check_schema(obj)
    M = require(obj, "ambient_dim")
    if isinstance(M, bool) or not isinstance(M, int) or M < 1:
        raise ParseError(f"expected a positive integer, got {M!r}", field="ambient_dim")
    rows = parse_complex_rows(require(obj, "vectors"), "vectors")
    for i, row in enumerate(rows):
        if len(row) != M:
            raise ParseError(f"has length {len(row)}, expected ambient_dim={M}", field=f"vectors[{i}]")
    if len(rows) > M:
        raise ParseError(f"{len(rows)} vectors exceed ambient_dim={M}", field="vectors")
    unit_tol = _number(obj.get("unit_tol", DEFAULT_UNIT_TOL), "unit_tol")
    rank_tol = _number(obj.get("rank_tol", DEFAULT_RANK_TOL), "rank_tol")
    return make_problem(rows, M, unit_tol, rank_tol, validate=validate)


def problem_to_dict(problem: ReplacementProblem) -> dict:
    return {
        "schema_version": SCHEMA_VERSION,
        "ambient_dim": int(problem.ambient_dim),
        "vectors": [[encode_complex(z) for z in row] for row in problem.vectors],
        "unit_tol": float(problem.unit_tol),
        "rank_tol": float(problem.rank_tol),
    }


def parse_matrix(obj: dict) -> np.ndarray:
    rows = parse_complex_rows(require(obj, "matrix"), "matrix")
    n = len(rows)
    if any(len(r) != n for r in rows):
        raise ParseError("matrix must be square", field="matrix")
    A = np.array(rows, dtype=complex)
    if not np.all(np.isfinite(A)):
        raise ParseError("matrix entries must be finite", field="matrix")
    return A


@dataclass(frozen=True)
class ExpCheckInput:
    domain: Any
    frequencies: np.ndarray
    N: int
    a: float | None
    a_prime: float | None
    delta: float | None


def parse_exp_check(obj: dict) -> ExpCheckInput:
    from .expbasis import make_domain, unit_box

    check_schema(obj)
    dom = require(obj, "domain")
    kind = require(dom, "kind", "domain.")
    try:
        if kind == "unit_box":
            d = require(dom, "d", "domain.")
            if isinstance(d, bool) or not isinstance(d, int):
                raise ParseError("expected an integer", field="domain.d")
            domain = unit_box(d)
        elif kind == "interval_union":
            domain = make_domain(require(dom, "intervals", "domain."))
        else:
            raise ParseError(f"unknown domain kind {kind!r}", field="domain.kind")
    except ParseError:
        raise
    except ValidationError as exc:
        raise ParseError(str(exc), field="domain") from None

    raw = require(obj, "frequencies")
    if not isinstance(raw, list) or not raw:
        raise ParseError("expected a non-empty array", field="frequencies")
    freqs = []
    for i, f in enumerate(raw):
        vec = f if isinstance(f, list) else [f]
        if len(vec) != domain.d:
            raise ParseError(f"expected a {domain.d}-vector", field=f"frequencies[{i}]")
        freqs.append([_number(x, f"frequencies[{i}]") for x in vec])
    N = require(obj, "N")
    if isinstance(N, bool) or not isinstance(N, int) or not 1 <= N <= len(freqs):
        raise ParseError(f"N must be an integer in 1..{len(freqs)}", field="N")
    params = {}
    for key in ("a", "a_prime", "delta"):
        params[key] = None if obj.get(key) is None else _number(obj[key], key)
    return ExpCheckInput(domain, np.array(freqs, dtype=float), N, **params)


def exp_input_to_dict(inp: ExpCheckInput) -> dict:
    dom = inp.domain
    if dom.kind == "unit_box":
        d = {"kind": "unit_box", "d": dom.d}
    else:
        d = {"kind": "interval_union", "intervals": [list(iv) for iv in dom.intervals]}
    return {
        "domain": d,
        "frequencies": inp.frequencies.tolist(),
        "N": inp.N,
        "a": inp.a,
        "a_prime": inp.a_prime,
        "delta": inp.delta,
    }


# ---------------------------------------------------------------- reports


@dataclass
class Report:
    mode: str
    inputs: dict
    payload: dict
    timing_ms: float | None = None
    schema_version: str = REPORT_SCHEMA_VERSION

    def __post_init__(self):
        # store plain JSON types so a parsed report compares equal to the original
        self.inputs = plain(self.inputs)
        self.payload = plain(self.payload)

    def to_dict(self) -> dict:
        out = {
            "schema_version": self.schema_version,
            "mode": self.mode,
            "inputs": self.inputs,
            "payload": self.payload,
        }
        if self.timing_ms is not None:
            out["timing_ms"] = float(self.timing_ms)
        return out

    @classmethod
    def from_dict(cls, obj: dict) -> "Report":
        return cls(
            mode=obj["mode"],
            inputs=obj["inputs"],
            payload=obj["payload"],
            timing_ms=obj.get("timing_ms"),
            schema_version=obj["schema_version"],
        )


def plain(x):
    """Recursively convert dataclasses, tuples and numpy scalars to JSON types."""
    if dataclasses.is_dataclass(x) and not isinstance(x, type):
        return {f.name: plain(getattr(x, f.name)) for f in dataclasses.fields(x)}
    if isinstance(x, dict):
        return {str(k): plain(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [plain(v) for v in x]
    if isinstance(x, np.ndarray):
        return plain(x.tolist())
    if isinstance(x, (bool, np.bool_)):
        return bool(x)
    if isinstance(x, (int, np.integer)):
        return int(x)
    if isinstance(x, (float, np.floating)):
        return float(x)
    if isinstance(x, complex):
        return encode_complex(x)
    return x


def format_float(x: float) -> str:
    if math.isnan(x):
        return "NaN"
    if math.isinf(x):
        return "Infinity" if x > 0 else "-Infinity"
    s = format(x, ".17g")
    if not any(ch in s for ch in ".en"):
        s += ".0"
    return s


def _dump(x, indent: int, level: int, out: list[str]) -> None:
    pad = " " * (indent * (level + 1))
    end = " " * (indent * level)
    if isinstance(x, dict):
        if not x:
            out.append("{}")
            return
        out.append("{\n")
        for i, key in enumerate(sorted(x)):
            out.append(f"{pad}{json.dumps(key)}: ")
            _dump(x[key], indent, level + 1, out)
            out.append(",\n" if i < len(x) - 1 else "\n")
        out.append(end + "}")
    elif isinstance(x, list):
        if not x:
            out.append("[]")
        elif all(not isinstance(v, (dict, list)) for v in x):
            out.append("[")
            for i, v in enumerate(x):
                if i:
                    out.append(", ")
                _dump(v, indent, level + 1, out)
            out.append("]")
        else:
            out.append("[\n")
            for i, v in enumerate(x):
                out.append(pad)
                _dump(v, indent, level + 1, out)
                out.append(",\n" if i < len(x) - 1 else "\n")
            out.append(end + "]")
    elif isinstance(x, bool) or x is None or isinstance(x, (int, str)):
        out.append(json.dumps(x))
    elif isinstance(x, float):
        out.append(format_float(x))
    else:
        raise TypeError(f"cannot serialize {type(x).__name__}")


def dumps(obj) -> str:
    """Deterministic JSON text (sorted keys, 17-digit floats, trailing newline)."""
    out: list[str] = []
    _dump(plain(obj), 2, 0, out)
    return "".join(out) + "\n"


def _csv_bytes(header, rows) -> bytes:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for row in rows:
        w.writerow([format_float(v) if isinstance(v, float) else v for v in row])
    return buf.getvalue().encode("utf-8")


def report_csv(report: Report) -> bytes:
    p = report.payload
    if report.mode == "sweep":
        rows = []
        for rec, energy in zip(p["per_N"], p["tail_energy"]):
            rows.append(
                [
                    rec["N"],
                    float(rec["tilde"]["lower"]),
                    float(rec["tilde"]["upper"]),
                    float(rec["exact"]["lower"]),
                    float(rec["exact"]["upper"]),
                    float(energy),
                ]
            )
        return _csv_bytes(SWEEP_CSV_COLUMNS, rows)
    if report.mode == "analyze":
        rows = [
            [name, float(fc["lower"]), float(fc["upper"]), fc["degenerate"]]
            for name, fc in p["constants"].items()
            if fc is not None
        ]
        return _csv_bytes(("method", "lower", "upper", "degenerate"), rows)
    if report.mode == "bounds":
        g = p["gershgorin"]
        rows = [
            [i, float(r), float(c), float(s), float(lo), float(hi)]
            for i, (r, c, s, (lo, hi)) in enumerate(zip(g["row_sums"], g["col_sums"], g["s"], g["intervals"]))
        ]
        return _csv_bytes(("row", "R", "C", "s", "lo", "hi"), rows)
    if report.mode == "exp-check":
        cert = p["certificate"]
        return _csv_bytes(("key", "value"), [[k, cert[k]] for k in sorted(cert)])
    raise ValidationError(f"CSV output is not available for mode {report.mode!r}")


def emit_report(report: Report, fmt: str = "json") -> bytes:
    if fmt == "json":
        return dumps(report.to_dict()).encode("utf-8")
    if fmt == "csv":
        return report_csv(report)
    raise ValidationError(f"unknown format {fmt!r}")
