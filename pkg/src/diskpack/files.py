"""Versioned JSON file formats for instances, packings, and verification reports.

Serialization is canonical: fixed key order, two-space indentation, floats
printed with 17 significant digits (exact double round-trip), UTF-8, trailing
newline. parse(serialize(x)) == x bit-exactly.
"""

from __future__ import annotations

import hashlib
import json
import math
from dataclasses import dataclass
from typing import Optional, Tuple

from .engine import PackingResult
from .verifier import VerificationReport

INSTANCE_FORMAT_VERSION = 1
PACKING_FORMAT_VERSION = 1


class FileFormatError(ValueError):
    """Malformed or out-of-contract instance/packing document."""


def _fmt(v: float) -> str:
    f = float(v)
    if not math.isfinite(f):
        raise FileFormatError(f"non-finite number not serializable: {v}")
    return format(f, ".17g")


@dataclass(frozen=True)
class InstanceFile:
    radii: Tuple[float, ...]
    container_radius: float = 1.0
    format_version: int = INSTANCE_FORMAT_VERSION

    def normalized_radii(self) -> Tuple[float, ...]:
        """Radii in units of the container radius."""
        if self.container_radius == 1.0:
            return self.radii
        return tuple(r / self.container_radius for r in self.radii)


@dataclass(frozen=True)
class PackingFile:
    instance_digest: str
    placements: Tuple[Tuple[float, float, float], ...]  # (radius, x, y)
    complete: bool
    unplaced: Tuple[float, ...]
    trace: Optional[Tuple[dict, ...]] = None
    format_version: int = PACKING_FORMAT_VERSION


def dumps_instance(inst: InstanceFile) -> str:
    lines = [
        "{",
        f'  "format_version": {inst.format_version},',
        f'  "container_radius": {_fmt(inst.container_radius)},',
        '  "radii": [',
    ]
    for i, r in enumerate(inst.radii):
        comma = "," if i + 1 < len(inst.radii) else ""
        lines.append(f"    {_fmt(r)}{comma}")
    lines.append("  ]")
    lines.append("}")
    return "\n".join(lines) + "\n"


def instance_digest(inst: InstanceFile) -> str:
    """Content hash binding packings to the instance they were produced from."""
    return hashlib.sha256(dumps_instance(inst).encode("utf-8")).hexdigest()


def parse_instance(text: str) -> InstanceFile:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise FileFormatError(f"invalid JSON: {exc}") from exc
    if not isinstance(doc, dict):
        raise FileFormatError("instance document must be a JSON object")
    version = doc.get("format_version")
    if version != INSTANCE_FORMAT_VERSION:
        raise FileFormatError(f"unsupported instance format_version: {version}")
    radii = doc.get("radii")
    if not isinstance(radii, list) or not radii:
        raise FileFormatError("radii must be a nonempty list")
    out = []
    for r in radii:
        if not isinstance(r, (int, float)) or not float(r) > 0.0:
            raise FileFormatError(f"radii must be positive numbers, got {r!r}")
        out.append(float(r))
    cr = float(doc.get("container_radius", 1.0))
    if not (cr > 0.0 and math.isfinite(cr)):
        raise FileFormatError(f"container_radius must be positive, got {cr}")
    return InstanceFile(radii=tuple(out), container_radius=cr, format_version=version)


def _dump_trace_event(ev: dict) -> str:
    # Events are flat dicts of strings/numbers/bools; keys in insertion order.
    parts = []
    for k, v in ev.items():
        if isinstance(v, bool):
            sv = "true" if v else "false"
        elif isinstance(v, str):
            sv = json.dumps(v)
        elif isinstance(v, int):
            sv = str(v)
        elif isinstance(v, float):
            sv = _fmt(v)
        elif isinstance(v, (tuple, list)):
            sv = "[" + ", ".join(_fmt(float(x)) for x in v) + "]"
        else:
            raise FileFormatError(f"unsupported trace value: {v!r}")
        parts.append(f"{json.dumps(k)}: {sv}")
    return "{" + ", ".join(parts) + "}"


def dumps_packing(p: PackingFile) -> str:
    lines = [
        "{",
        f'  "format_version": {p.format_version},',
        f'  "instance_digest": "{p.instance_digest}",',
        f'  "complete": {"true" if p.complete else "false"},',
        '  "placements": [',
    ]
    for i, (r, x, y) in enumerate(p.placements):
        comma = "," if i + 1 < len(p.placements) else ""
        lines.append(
            f'    {{"radius": {_fmt(r)}, "x": {_fmt(x)}, "y": {_fmt(y)}}}{comma}'
        )
    lines.append("  ],")
    unplaced = ", ".join(_fmt(r) for r in p.unplaced)
    if p.trace is None:
        lines.append(f'  "unplaced": [{unplaced}]')
    else:
        lines.append(f'  "unplaced": [{unplaced}],')
        lines.append('  "trace": [')
        for i, ev in enumerate(p.trace):
            comma = "," if i + 1 < len(p.trace) else ""
            lines.append(f"    {_dump_trace_event(ev)}{comma}")
        lines.append("  ]")
    lines.append("}")
    return "\n".join(lines) + "\n"


def parse_packing(text: str) -> PackingFile:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise FileFormatError(f"invalid JSON: {exc}") from exc
    if not isinstance(doc, dict):
        raise FileFormatError("packing document must be a JSON object")
    version = doc.get("format_version")
    if version != PACKING_FORMAT_VERSION:
        raise FileFormatError(f"unsupported packing format_version: {version}")
    digest = doc.get("instance_digest")
    if not isinstance(digest, str):
        raise FileFormatError("instance_digest must be a string")
    placements = []
    for item in doc.get("placements", []):
        try:
            placements.append(
                (float(item["radius"]), float(item["x"]), float(item["y"]))
            )
        except (TypeError, KeyError) as exc:
            raise FileFormatError(f"malformed placement: {item!r}") from exc
    unplaced = tuple(float(v) for v in doc.get("unplaced", []))
    complete = doc.get("complete")
    if not isinstance(complete, bool):
        raise FileFormatError("complete must be a boolean")
    trace = doc.get("trace")
    if trace is not None:
        if not isinstance(trace, list):
            raise FileFormatError("trace must be a list of events")
        trace = tuple(trace)
    return PackingFile(
        instance_digest=digest,
        placements=tuple(placements),
        complete=complete,
        unplaced=unplaced,
        trace=trace,
        format_version=version,
    )


def packing_from_result(
    result: PackingResult, inst: InstanceFile, include_trace: bool = False
) -> PackingFile:
    return PackingFile(
        instance_digest=instance_digest(inst),
        placements=tuple(
            (r, xy[0], xy[1]) for r, xy in result.placements
        ),
        complete=result.complete,
        unplaced=result.unplaced,
        trace=result.phase_trace if include_trace else None,
    )


def dumps_report(report: VerificationReport) -> str:
    lines = [
        "{",
        f'  "valid": {"true" if report.valid else "false"},',
        f'  "density": {_fmt(report.density)},',
        f'  "epsilon": {_fmt(report.epsilon)},',
        '  "violations": [',
    ]
    for i, v in enumerate(report.violations):
        comma = "," if i + 1 < len(report.violations) else ""
        idx = ", ".join(str(j) for j in v.indices)
        lines.append(
            f'    {{"kind": "{v.kind.value}", "indices": [{idx}], '
            f'"magnitude": {_fmt(v.magnitude)}}}{comma}'
        )
    lines.append("  ]")
    lines.append("}")
    return "\n".join(lines) + "\n"
