"""Structured reports: a plain tree of dicts, lists, strings, ints and bools.

``emit`` writes the canonical bytes (sorted keys, two-space indent, ASCII,
trailing newline); ``load`` reads them back, and ``emit(load(b)) == b``.
Polynomials are stored as their canonical text, so coefficients appear as
least nonnegative residues.
"""

from __future__ import annotations

import json

from ..ring import Poly, format_poly

FORMAT = "ciu-report"
VERSION = 1


def new_report() -> dict:
    return {"format": FORMAT, "version": VERSION, "sections": [], "hard_failures": []}


def to_tree(value):
    """Convert results into JSON-ready values."""
    if isinstance(value, Poly):
        return format_poly(value)
    if isinstance(value, bool) or value is None or isinstance(value, (int, str)):
        return value
    if isinstance(value, dict):
        return {str(k): to_tree(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [to_tree(v) for v in value]
    if hasattr(value, "rows") and hasattr(value, "ring"):
        return [[to_tree(e) for e in row] for row in value.rows]
    raise TypeError(f"cannot serialize {type(value).__name__}")


def emit(report: dict) -> bytes:
    text = json.dumps(to_tree(report), sort_keys=True, indent=2, ensure_ascii=True, separators=(",", ": "))
    return (text + "\n").encode("ascii")


def load(data: bytes) -> dict:
    return json.loads(data.decode("ascii"))


# -- human rendering ----------------------------------------------------------------


def render_hf(values) -> list:
    return [f"  t={t:<3} H={v}" for t, v in enumerate(values)]


def _render_value(key, value, indent):
    pad = "  " * indent
    if key.startswith("hf") and isinstance(value, list) and all(type(v) is int for v in value):
        return [f"{pad}{key}:"] + [pad + row for row in render_hf(value)]
    if isinstance(value, dict) and "twists" in value:
        return [f"{pad}{key}: {value['twists']}"]
    if isinstance(value, dict):
        lines = [f"{pad}{key}:"]
        for k in sorted(value):
            lines += _render_value(k, value[k], indent + 1)
        return lines
    if isinstance(value, list) and value and all(isinstance(v, (dict, list)) for v in value):
        lines = [f"{pad}{key}:"]
        for i, v in enumerate(value):
            lines += _render_value(f"[{i}]", v, indent + 1)
        return lines
    if isinstance(value, list):
        return [f"{pad}{key}: " + ", ".join(str(v) for v in value)]
    return [f"{pad}{key}: {value}"]


def render(report: dict) -> str:
    """Readable text: HF tables as degree/value rows, resolutions as twists."""
    report = to_tree(report)
    lines = []
    for sec in report.get("sections", []):
        lines.append(f"== task {sec.get('task')} (line {sec.get('line')}): {sec.get('status')}")
        for key in sorted(sec):
            if key not in ("task", "line", "status"):
                lines += _render_value(key, sec[key], 1)
    failures = report.get("hard_failures", [])
    lines.append(f"hard failures: {len(failures)}")
    lines += [f"  {f}" for f in failures]
    return "\n".join(lines) + "\n"
