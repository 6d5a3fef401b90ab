"""
Track files, estimate documents and the embedded car-video dataset.

Track file format (UTF-8, LF or CRLF)::

    # units: inches
    t,point_id,y
    0.0,feature1,-3.26
    ...

Lines starting with ``#`` are comments; ``# units: <name>`` is kept as
metadata. ``y`` is already relative to the fixation point.

Estimate documents are JSON; see ``ESTIMATES_SCHEMA`` for the field names.
"""
from __future__ import annotations

import io
import json
import math

import jsonschema
import numpy as np

from .errors import DuplicateTimestamp, EmptyFile, MalformedHeader, NonNumericField
from .numdiff import TrackedTrajectory

HEADER = ("t", "point_id", "y")
FORMAT_NAME = "omegatrack.estimates"
FORMAT_VERSION = 1

# Hand-tracked horizontal positions (inches) of two features on a rotating
# car, sampled every 16 frames of a 30 fps video starting at frame 15.
# Feature 1 has no measurement at frame 175.
TABLE1_FRAMES = tuple(range(15, 176, 16))
TABLE1_DT = 16.0 / 30.0
TABLE1_GROUND_TRUTH_OMEGA = 0.327
TABLE1_Y = {
    "feature1": (-3.26, -3.26, -3.27, -3.14, -3.00, -2.80, -2.51, -2.17, -1.98, -1.69),
    "feature2": (3.31, 3.31, 3.10, 2.79, 2.28, 1.66, 0.98, 0.24, -0.67, -1.42, -1.93),
}


def table1_fixture() -> list[TrackedTrajectory]:
    """The two hand-tracked car features as trajectories (t in s, y in inches)."""
    out = []
    for pid, ys in TABLE1_Y.items():
        t = np.arange(len(ys)) * TABLE1_DT
        out.append(TrackedTrajectory(pid, t, np.array(ys), units="inches"))
    return out


def table1_csv() -> str:
    return write_tracks(table1_fixture(), units="inches")


def _number(tok, lineno):
    try:
        v = float(tok)
    except ValueError:
        raise NonNumericField(lineno, tok) from None
    if not math.isfinite(v):
        raise NonNumericField(lineno, tok)
    return v


def parse_tracks(text: str) -> list[TrackedTrajectory]:
    """Parse a track file into trajectories sorted by point id, then time.

    Raises
    ------
    EmptyFile, MalformedHeader, NonNumericField, DuplicateTimestamp
    """
    if text.startswith("\ufeff"):
        text = text[1:]
    units = None
    header_seen = False
    rows: dict[str, dict[float, float]] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line:
            continue
        if line.startswith("#"):
            key, _, val = line[1:].partition(":")
            if key.strip().lower() == "units" and val.strip():
                units = val.strip()
            continue
        fields = [f.strip() for f in line.split(",")]
        if not header_seen:
            if tuple(fields) != HEADER:
                raise MalformedHeader(f"expected header {','.join(HEADER)!r}, got {line!r}")
            header_seen = True
            continue
        if len(fields) != 3 or not fields[1]:
            raise NonNumericField(lineno, line)
        t = _number(fields[0], lineno)
        pid = fields[1]
        y = _number(fields[2], lineno)
        per_point = rows.setdefault(pid, {})
        if t in per_point:
            raise DuplicateTimestamp(pid, t)
        per_point[t] = y

    if not header_seen:
        raise EmptyFile("no header found")
    if not rows:
        raise EmptyFile("no data rows")
    out = []
    for pid in sorted(rows):
        ts = sorted(rows[pid])
        out.append(TrackedTrajectory(pid, ts, [rows[pid][t] for t in ts], units=units))
    return out


def write_tracks(trajs, units: str | None = None) -> str:
    """Serialise trajectories at full precision (``repr`` floats)."""
    buf = io.StringIO()
    if units is None:
        units = next((tr.units for tr in trajs if tr.units), None)
    if units:
        buf.write(f"# units: {units}\n")
    buf.write(",".join(HEADER) + "\n")
    for tr in sorted(trajs, key=lambda tr: tr.point_id):
        for t, y in zip(tr.t, tr.y):
            buf.write(f"{float(t)!r},{tr.point_id},{float(y)!r}\n")
    return buf.getvalue()


# --- estimate documents ----------------------------------------------------

_num_or_null = {"type": ["number", "null"]}

ESTIMATES_SCHEMA = {
    "type": "object",
    "required": ["format", "version", "direction", "points"],
    "properties": {
        "format": {"const": FORMAT_NAME},
        "version": {"const": FORMAT_VERSION},
        "direction": {"const": "unknown"},
        "config": {"type": "object"},
        "points": {
            "type": "array",
            "items": {
                "type": "object",
                "required": [
                    "point_id", "n_valid", "aggregation",
                    "mean_omega", "median_omega", "std_omega", "samples",
                ],
                "properties": {
                    "point_id": {"type": "string"},
                    "reference_id": {"type": ["string", "null"]},
                    "n_valid": {"type": "integer", "minimum": 0},
                    "aggregation": {"enum": ["mean", "median"]},
                    "mean_omega": {"type": ["number", "null"], "minimum": 0},
                    "median_omega": _num_or_null,
                    "std_omega": _num_or_null,
                    "center_offset": _num_or_null,
                    "samples": {
                        "type": "array",
                        "items": {
                            "type": "object",
                            "required": ["t", "omega_sq", "omega", "valid", "reason"],
                            "properties": {
                                "t": {"type": "number"},
                                "omega_sq": _num_or_null,
                                "omega": _num_or_null,
                                "valid": {"type": "boolean"},
                                "reason": {
                                    "enum": [
                                        "none", "negative_omega_sq",
                                        "near_singular", "missing_derivative",
                                    ]
                                },
                            },
                        },
                    },
                },
            },
        },
        "clusters": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["cluster_id", "omega", "n_members", "members"],
                "properties": {
                    "cluster_id": {"type": "integer"},
                    "omega": {"type": "number"},
                    "n_members": {"type": "integer", "minimum": 1},
                    "members": {"type": "array", "items": {"type": "string"}},
                },
            },
        },
        "outliers": {"type": "array", "items": {"type": "string"}},
    },
}


def _sig6(v):
    if v is None:
        return None
    v = float(v)
    if math.isnan(v):
        return None
    return float(f"{v:.6g}") + 0.0


def estimate_to_dict(est) -> dict:
    doc = {
        "point_id": est.point_id,
        "reference_id": est.reference_id,
        "n_valid": est.n_valid,
        "aggregation": est.aggregation,
        "mean_omega": _sig6(est.mean_omega),
        "median_omega": _sig6(est.median_omega),
        "std_omega": _sig6(est.std_omega),
        "center_offset": _sig6(est.center_offset),
        "samples": [
            {
                "t": _sig6(s.t),
                "omega_sq": _sig6(s.omega_sq),
                "omega": _sig6(s.omega),
                "valid": s.valid,
                "reason": s.invalid_reason,
            }
            for s in est.samples
        ],
    }
    return doc


def write_estimates(estimates, labeling=None, config: dict | None = None) -> str:
    """Render estimates (and optionally a segmentation) as a JSON document.

    The document is validated against ``ESTIMATES_SCHEMA`` before it is
    returned. Numbers carry 6 significant digits.
    """
    doc = {
        "format": FORMAT_NAME,
        "version": FORMAT_VERSION,
        "direction": "unknown",
    }
    if config is not None:
        doc["config"] = config
    doc["points"] = [estimate_to_dict(e) for e in sorted(estimates, key=lambda e: e.point_id)]
    if labeling is not None:
        doc["clusters"] = [
            {
                "cluster_id": cid,
                "omega": _sig6(w),
                "n_members": n,
                "members": sorted(labeling.members(cid)),
            }
            for cid, (w, n) in sorted(labeling.cluster_omegas.items())
        ]
        doc["outliers"] = sorted(labeling.outliers)
    jsonschema.validate(doc, ESTIMATES_SCHEMA)
    return json.dumps(doc, indent=2, allow_nan=False) + "\n"


def read_estimates(text: str) -> dict:
    """Load and schema-check an estimates document."""
    doc = json.loads(text)
    jsonschema.validate(doc, ESTIMATES_SCHEMA)
    return doc


SAMPLE_TABLE_HEADER = ("point_id", "t", "y", "yd", "ydd", "omega_sq", "omega", "valid", "reason")


def write_sample_table(series_list, estimates) -> str:
    """Long-form per-sample table, one row per (point, t); blanks mark absent values."""

    def cell(v):
        return "" if v is None or (isinstance(v, float) and math.isnan(v)) else repr(float(v))

    by_id = {e.point_id: e for e in estimates}
    buf = io.StringIO()
    buf.write(",".join(SAMPLE_TABLE_HEADER) + "\n")
    for s in sorted(series_list, key=lambda s: s.point_id):
        est = by_id[s.point_id]
        for k in range(len(s)):
            buf.write(",".join([
                s.point_id, cell(s.t[k]), cell(s.y[k]), cell(s.yd[k]), cell(s.ydd[k]),
                cell(est.omega_sq[k]), cell(est.omega[k]),
                "1" if est.valid[k] else "0", str(est.reason[k]),
            ]) + "\n")
    return buf.getvalue()
