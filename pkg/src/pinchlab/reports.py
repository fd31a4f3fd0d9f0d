"""Report emission and persistence: deterministic JSON/CSV/text rendering,
content digests (timing excluded), append-only output files."""

from __future__ import annotations

import hashlib
import json
import time
from pathlib import Path

VOLATILE_KEYS = {"wallTime", "timestamp", "outPath", "toolVersion"}


def _strip_volatile(obj):
    if isinstance(obj, dict):
        return {k: _strip_volatile(v) for k, v in sorted(obj.items())
                if k not in VOLATILE_KEYS}
    if isinstance(obj, (list, tuple)):
        return [_strip_volatile(v) for v in obj]
    return obj


def canonical_json(report) -> str:
    return json.dumps(report, sort_keys=True, separators=(",", ":"),
                      default=str)


def report_digest(report) -> str:
    """sha256 of the report content with volatile fields removed."""
    return hashlib.sha256(
        canonical_json(_strip_volatile(report)).encode()).hexdigest()


def emit(report, fmt="json") -> bytes:
    """Deterministic serialization of a report dict."""
    if fmt == "json":
        return (json.dumps(report, sort_keys=True, indent=2, default=str)
                + "\n").encode()
    if fmt == "csv":
        return _emit_csv(report).encode()
    if fmt == "text":
        return _emit_text(report).encode()
    raise ValueError(f"unknown format {fmt!r}")


def _emit_csv(report) -> str:
    lines = []
    if "models" in report:   # literature table
        cols = list(report["models"][0]) if report["models"] else []
        lines.append(",".join(cols))
        for row in report["models"]:
            lines.append(",".join(str(row[c]) for c in cols))
    elif "checks" in report:
        cols = ["n", "eps", "kind", "count", "minGap1", "minGap2"]
        lines.append(",".join(cols))
        for c in report["checks"]:
            flat = dict(c)
            flat.update(c.get("float", {}))
            lines.append(",".join(str(flat.get(k, "")) for k in cols))
    else:
        for k, v in sorted(report.items()):
            lines.append(f"{k},{v}")
    return "\n".join(lines) + "\n"


def _emit_text(report) -> str:
    lines = []
    if "constants" in report:
        lines.append(f"{'constant':<16}{'exact':<24}{'decimal':<12}")
        for name, c in report["constants"].items():
            lines.append(f"{name:<16}{c['exact']:<24}{c['value']:<12.6f}")
        lines.append("")
        if report.get("models"):
            cols = list(report["models"][0])
            widths = [max(len(str(r[c])) for r in report["models"] + [{c: c for c in cols}])
                      + 2 for c in cols]
            lines.append("".join(f"{c:<{w}}" for c, w in zip(cols, widths)))
            for r in report["models"]:
                lines.append("".join(f"{str(r[c]):<{w}}" for c, w in zip(cols, widths)))
    else:
        for k, v in sorted(report.items()):
            lines.append(f"{k}: {json.dumps(v, sort_keys=True, default=str)}")
    return "\n".join(lines) + "\n"


def persist(report, out_dir, stem="report") -> Path:
    """Write a timestamped JSON report; never overwrites existing files."""
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    stamp = time.strftime("%Y%m%dT%H%M%S")
    digest = report_digest(report)[:12]
    for k in range(10_000):
        suffix = "" if k == 0 else f"-{k}"
        path = out / f"{stem}-{stamp}-{digest}{suffix}.json"
        if not path.exists():
            path.write_bytes(emit(report, "json"))
            return path
    raise RuntimeError("could not find a free report filename")
