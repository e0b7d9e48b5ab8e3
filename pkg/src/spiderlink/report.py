"""JSON analysis reports.

Every report is an envelope ``{"schema", "command", "mechanism",
"genericity", "payload"}``.  Output is deterministic: keys are sorted,
floats are written with ``repr`` precision and components come pre-sorted.
"""

import json
import math

import numpy as np

SCHEMA_ID = "spiderlink.report/1"


def _plain(obj):
    """Recursively convert numpy scalars, tuples and dataclass-like values."""
    if isinstance(obj, dict):
        return {str(k): _plain(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_plain(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return [_plain(v) for v in obj.tolist()]
    if isinstance(obj, (bool, np.bool_)):
        return bool(obj)
    if isinstance(obj, (int, np.integer)):
        return int(obj)
    if isinstance(obj, (float, np.floating)):
        v = float(obj)
        if math.isnan(v):
            return None
        if math.isinf(v):
            return "inf" if v > 0 else "-inf"
        return v
    return obj


def genericity_dict(report):
    return {
        "certified": report.certified,
        "codes": report.codes(),
        "violations": [
            {"code": v.code, "severity": v.severity, "witness": _plain(v.witness), "detail": v.detail}
            for v in report.violations
        ],
    }


def workspace_dict(ws):
    return {
        "summary": ws.summary(),
        "circles": [{"leg": c.leg, "center": list(c.center), "radius": c.radius,
                     "eps": [list(sv.eps) for sv in c.sign_vectors]} for c in ws.circles],
        "vertices": [{"point": list(v.point), "circles": list(v.circles)} for v in ws.vertices],
        "arcs": [{"circle": a.circle, "start": a.start, "sweep": a.sweep, "full": a.full,
                  "vertices": list(a.vertices)} for a in ws.arcs],
        "faces": [{"sample": list(f.sample), "holes": f.holes, "punctures": list(f.punctures),
                   "area": f.area, "chi": f.chi} for f in ws.faces],
        "punctures": list(ws.punctures),
        "chi_c": ws.chi_c(),
    }


def envelope(command, mech, genericity=None, payload=None):
    return {
        "schema": SCHEMA_ID,
        "command": command,
        "mechanism": mech.to_document(),
        "genericity": genericity_dict(genericity) if genericity is not None else None,
        "payload": payload if payload is not None else {},
    }


def dumps(report):
    return json.dumps(_plain(report), sort_keys=True, indent=2, allow_nan=False) + "\n"
