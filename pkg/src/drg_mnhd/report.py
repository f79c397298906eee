"""JSON reports: exact values as ``"p/q"`` strings, versioned schema, lossless round trip."""
from __future__ import annotations

import json
from fractions import Fraction
from pathlib import Path
from typing import Any, Dict

from .analysis import MnhdVerdict
from .params import FeasibilityReport
from .quadratic import QuadraticNumber
from .sweep import SweepPoint, SweepResult

SCHEMA = "drg-mnhd/1"


def exact(value) -> Any:
    """Canonical JSON form of an exact number.

    Rationals (including rational-valued quadratic numbers) become ``"p/q"``
    with an explicit denominator; irrational ``a + c*sqrt(r)`` becomes an
    object with the two rational parts and the radicand.
    """
    if isinstance(value, QuadraticNumber):
        if value.is_rational:
            return exact(value.a)
        return {"rational": exact(value.a), "coefficient": exact(value.c), "radicand": value.r}
    if isinstance(value, bool):
        raise TypeError("booleans are not exact numbers")
    if isinstance(value, (int, Fraction)):
        q = Fraction(value)
        return f"{q.numerator}/{q.denominator}"
    raise TypeError(f"cannot serialise {type(value).__name__} as an exact value")


def parse_exact(obj):
    """Inverse of :func:`exact`."""
    if isinstance(obj, dict):
        return QuadraticNumber(parse_exact(obj["rational"]), parse_exact(obj["coefficient"]), obj["radicand"])
    if isinstance(obj, str):
        return Fraction(obj)
    raise TypeError(f"not an exact value: {obj!r}")


def new_report(command: str, **inputs) -> Dict[str, Any]:
    return {"schema": SCHEMA, "command": command, "input": inputs}


def violations(report: FeasibilityReport):
    return [{"id": v.id, "value": exact(v.value)} for v in report.violations]


def verdict_dict(verdict: MnhdVerdict) -> Dict[str, Any]:
    per = {}
    for dist, dv in sorted(verdict.per_distance.items()):
        per[str(dist)] = {
            "case": dv.case,
            "satisfied": list(dv.satisfied),
            "proof_case": dv.proof_case,
            "L_uv": exact(dv.pair.L_uv),
            "L2_uv": exact(dv.pair.L2_uv),
            "deltas": {k: exact(v) for k, v in dv.profile.as_dict().items()},
            "witnesses": {k: exact(v) for k, v in dv.witnesses.items()},
        }
    return {"status": verdict.status, "flags": list(verdict.flags), "distances": per}


def _cases(cases):
    return {str(k): v for k, v in sorted(cases.items())}


def sweep_point_dict(p: SweepPoint) -> Dict[str, Any]:
    out = {
        "params": [exact(x) for x in p.params],
        "status": p.status,
    }
    if p.cases:
        out["cases"] = _cases(p.cases)
    for name in ("violations", "failed_checks", "flags"):
        if getattr(p, name):
            out[name] = list(getattr(p, name))
    if p.witnesses:
        out["witnesses"] = dict(sorted(p.witnesses.items()))
    return out


def sweep_dict(result: SweepResult) -> Dict[str, Any]:
    return {
        "family": result.family,
        "counts": result.counts(),
        "anomalies": [sweep_point_dict(p) for p in result.anomalies],
        "feasible_points": [sweep_point_dict(p) for p in result.feasible],
    }


def without_timing(report: Dict[str, Any]) -> Dict[str, Any]:
    return {k: v for k, v in report.items() if k != "timing"}


def dumps(report: Dict[str, Any]) -> str:
    # floats go out in shortest round-trip form, so loads(dumps(r)) == r exactly
    return json.dumps(report, indent=2, sort_keys=True, allow_nan=False) + "\n"


def loads(text: str) -> Dict[str, Any]:
    data = json.loads(text)
    if data.get("schema") != SCHEMA:
        raise ValueError(f"unsupported report schema {data.get('schema')!r}")
    return data


def write(report: Dict[str, Any], path) -> None:
    Path(path).write_text(dumps(report))


def read(path) -> Dict[str, Any]:
    return loads(Path(path).read_text())
