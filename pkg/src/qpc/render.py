"""Render coordinate tables as JSON, SVG, TikZ or DOT documents.

JSON (schema "qpc-layout/1") is the normative format: it lists every
vertex with role, index and coordinate, plus optional edges and Pauli
overlays, and round-trips byte-identically.  The drawing formats are
derived views with one glyph convention throughout: qubits are circles,
X checks filled squares, Z checks open squares, and operator overlays
colour qubits red (Z), green (Y) or blue (X).

3D tables are flattened by an oblique projection
(x, y, z) -> (x + shear * y, z + y_scale * y); 2D tables must not carry
a projection.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

from .errors import FormatError, PreconditionError
from .products import CoordinateTable

SCHEMA_VERSION = "qpc-layout/1"
PAULI_COLORS = {"Z": "red", "Y": "green", "X": "blue"}
ROLE_ORDER = ("x", "z", "q1", "q2")


@dataclass(frozen=True)
class Oblique:
    """Oblique flattening (x, y, z) -> (x + x_shear*y, z + y_scale*y).

    The defaults 9/20 and 3/10 keep integer lattice points distinct
    until the y extent reaches 20, so desk-scale 3D layouts never get
    coincident glyph centres.
    """

    x_shear: float = 0.45
    y_scale: float = 0.3


@dataclass(frozen=True)
class RenderSpec:
    projection: Oblique | None = None
    scale: float = 12.0
    include_edges: bool = False


@dataclass(frozen=True)
class OperatorOverlay:
    """Pauli letters on (global) qubit indices."""

    paulis: tuple = field(default=())

    @classmethod
    def from_dict(cls, mapping: dict) -> "OperatorOverlay":
        items = tuple(sorted((int(k), v) for k, v in mapping.items()))
        return cls(paulis=items)

    def validate(self, n_qubits: int) -> None:
        for idx, letter in self.paulis:
            if not 0 <= idx < n_qubits:
                raise PreconditionError(
                    f"overlay index {idx} out of range [0, {n_qubits})"
                )
            if letter not in PAULI_COLORS:
                raise PreconditionError(f"unknown Pauli letter {letter!r}")


def _check_projection(table: CoordinateTable, spec: RenderSpec) -> None:
    if table.kind == "3d" and spec.projection is None:
        raise PreconditionError("3D layouts require an oblique projection")
    if table.kind == "2d" and spec.projection is not None:
        raise PreconditionError("2D layouts must not carry a projection")


def _project(coord, spec: RenderSpec):
    if len(coord) == 2:
        return float(coord[0]), float(coord[1])
    x, y, z = coord
    p = spec.projection
    return float(x) + p.x_shear * float(y), float(z) + p.y_scale * float(y)


def _qubit_position(table: CoordinateTable, spec: RenderSpec, index: int):
    q1 = len(table.qubits_q1)
    if index < q1:
        return _project(table.qubits_q1[index], spec)
    return _project(table.qubits_q2[index - q1], spec)


def emit(table: CoordinateTable, spec: RenderSpec, overlays, fmt: str) -> str:
    """Serialise a layout; identical inputs give identical bytes."""
    overlays = tuple(overlays)
    n_qubits = len(table.qubits_q1) + len(table.qubits_q2)
    for overlay in overlays:
        overlay.validate(n_qubits)
    if fmt == "json":
        return _emit_json(table, spec, overlays)
    if fmt == "svg":
        _check_projection(table, spec)
        return _emit_svg(table, spec, overlays)
    if fmt == "tikz":
        _check_projection(table, spec)
        return _emit_tikz(table, spec, overlays)
    if fmt == "dot":
        _check_projection(table, spec)
        return _emit_dot(table, spec)
    raise FormatError(f"unknown output format {fmt!r}")


def _emit_json(table: CoordinateTable, spec: RenderSpec, overlays) -> str:
    vertices = []
    for role in ROLE_ORDER:
        coords = table.families()[role]
        for idx, coord in enumerate(coords):
            vertices.append(
                {"role": role, "index": idx, "coord": [int(c) for c in coord]}
            )
    payload = {
        "version": SCHEMA_VERSION,
        "kind": table.kind,
        "vertices": vertices,
    }
    if spec.include_edges and table.edges:
        payload["edges"] = [
            [[a_role, a_idx], [b_role, b_idx]]
            for (a_role, a_idx), (b_role, b_idx) in table.edges
        ]
    if overlays:
        payload["overlays"] = [
            {"paulis": [[idx, letter] for idx, letter in ov.paulis]}
            for ov in overlays
        ]
    return json.dumps(payload, separators=(",", ":")) + "\n"


def parse_layout(text: str):
    """Inverse of the JSON emitter; returns (table, overlays)."""
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise FormatError(f"invalid JSON: {exc}") from exc
    if data.get("version") != SCHEMA_VERSION:
        raise FormatError(f"unsupported layout version {data.get('version')!r}")
    families = {role: [] for role in ROLE_ORDER}
    for vertex in data.get("vertices", ()):
        role = vertex["role"]
        if role not in families:
            raise FormatError(f"unknown vertex role {role!r}")
        families[role].append((vertex["index"], tuple(vertex["coord"])))
    for role, rows in families.items():
        rows.sort()
        if [i for i, _ in rows] != list(range(len(rows))):
            raise FormatError(f"{role} indices are not contiguous from zero")
    edges = tuple(
        ((a[0], a[1]), (b[0], b[1])) for a, b in data.get("edges", ())
    )
    table = CoordinateTable(
        kind=data["kind"],
        x_checks=tuple(c for _, c in families["x"]),
        z_checks=tuple(c for _, c in families["z"]),
        qubits_q1=tuple(c for _, c in families["q1"]),
        qubits_q2=tuple(c for _, c in families["q2"]),
        edges=edges,
    )
    overlays = tuple(
        OperatorOverlay(paulis=tuple((int(i), s) for i, s in ov["paulis"]))
        for ov in data.get("overlays", ())
    )
    return table, overlays


def line_layout_table(graph) -> CoordinateTable:
    """Classical 1D arrangement of a Tanner graph: checks first, then bits.

    Checks render as X-check glyphs and bits as qubits, so a plain
    classical code can go through the same emitters as a product code.
    """
    from .tanner import TannerGraph

    if not isinstance(graph, TannerGraph):
        raise PreconditionError("line layout needs a Tanner graph")
    edges = tuple(
        (("x", c), ("q1", b)) for (c, b) in sorted(graph.edges)
    )
    return CoordinateTable(
        kind="2d",
        x_checks=tuple((i, 0) for i in range(graph.check_count)),
        z_checks=(),
        qubits_q1=tuple(
            (graph.check_count + j, 0) for j in range(graph.bit_count)
        ),
        qubits_q2=(),
        edges=edges,
    )


def _bounds(points):
    xs = [p[0] for p in points] or [0.0]
    ys = [p[1] for p in points] or [0.0]
    return min(xs), max(xs), min(ys), max(ys)


def _emit_svg(table: CoordinateTable, spec: RenderSpec, overlays) -> str:
    scale = spec.scale
    margin = scale
    projected = {
        role: [_project(c, spec) for c in table.families()[role]]
        for role in ROLE_ORDER
    }
    everything = [p for pts in projected.values() for p in pts]
    x0, x1, y0, y1 = _bounds(everything)
    width = (x1 - x0) * scale + 2 * margin
    height = (y1 - y0) * scale + 2 * margin

    def place(p):
        return (
            (p[0] - x0) * scale + margin,
            (y1 - p[1]) * scale + margin,
        )

    half = scale * 0.22
    lines = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width:.1f}"'
        f' height="{height:.1f}" viewBox="0 0 {width:.1f} {height:.1f}">'
    ]
    if spec.include_edges and table.edges:
        lookup = {
            role: projected[role] for role in ROLE_ORDER
        }
        for (role_a, ia), (role_b, ib) in table.edges:
            xa, ya = place(lookup[role_a][ia])
            xb, yb = place(lookup[role_b][ib])
            lines.append(
                f'<line x1="{xa:.2f}" y1="{ya:.2f}" x2="{xb:.2f}" y2="{yb:.2f}"'
                ' stroke="gray" stroke-width="0.5"/>'
            )
    for idx, p in enumerate(projected["x"]):
        cx, cy = place(p)
        lines.append(
            f'<rect x="{cx - half:.2f}" y="{cy - half:.2f}" width="{2 * half:.2f}"'
            f' height="{2 * half:.2f}" fill="black"><title>x{idx}</title></rect>'
        )
    for idx, p in enumerate(projected["z"]):
        cx, cy = place(p)
        lines.append(
            f'<rect x="{cx - half:.2f}" y="{cy - half:.2f}" width="{2 * half:.2f}"'
            f' height="{2 * half:.2f}" fill="white" stroke="black">'
            f"<title>z{idx}</title></rect>"
        )
    overlay_colors = {}
    for overlay in overlays:
        for qubit, letter in overlay.paulis:
            overlay_colors[qubit] = PAULI_COLORS[letter]
    q1 = len(table.qubits_q1)
    for role, offset in (("q1", 0), ("q2", q1)):
        for idx, p in enumerate(projected[role]):
            cx, cy = place(p)
            color = overlay_colors.get(offset + idx, "black")
            lines.append(
                f'<circle cx="{cx:.2f}" cy="{cy:.2f}" r="{half:.2f}"'
                f' fill="{color}"><title>{role}[{idx}]</title></circle>'
            )
    lines.append("</svg>")
    return "\n".join(lines) + "\n"


def _emit_tikz(table: CoordinateTable, spec: RenderSpec, overlays) -> str:
    projected = {
        role: [_project(c, spec) for c in table.families()[role]]
        for role in ROLE_ORDER
    }
    lines = [
        "\\documentclass[tikz]{standalone}",
        "\\begin{document}",
        "\\begin{tikzpicture}[scale=0.8]",
    ]
    if spec.include_edges and table.edges:
        for (role_a, ia), (role_b, ib) in table.edges:
            xa, ya = projected[role_a][ia]
            xb, yb = projected[role_b][ib]
            lines.append(
                f"\\draw[gray] ({xa:.2f},{ya:.2f}) -- ({xb:.2f},{yb:.2f});"
            )
    for x, y in projected["x"]:
        lines.append(
            f"\\filldraw ({x - 0.1:.2f},{y - 0.1:.2f}) rectangle"
            f" ({x + 0.1:.2f},{y + 0.1:.2f});"
        )
    for x, y in projected["z"]:
        lines.append(
            f"\\draw ({x - 0.1:.2f},{y - 0.1:.2f}) rectangle"
            f" ({x + 0.1:.2f},{y + 0.1:.2f});"
        )
    overlay_colors = {}
    for overlay in overlays:
        for qubit, letter in overlay.paulis:
            overlay_colors[qubit] = PAULI_COLORS[letter]
    q1 = len(table.qubits_q1)
    for role, offset in (("q1", 0), ("q2", q1)):
        for idx, (x, y) in enumerate(projected[role]):
            color = overlay_colors.get(offset + idx)
            if color:
                lines.append(f"\\filldraw[{color}] ({x:.2f},{y:.2f}) circle (3pt);")
            else:
                lines.append(f"\\filldraw ({x:.2f},{y:.2f}) circle (3pt);")
    lines.extend(["\\end{tikzpicture}", "\\end{document}"])
    return "\n".join(lines) + "\n"


def _emit_dot(table: CoordinateTable, spec: RenderSpec) -> str:
    shapes = {"x": "box", "z": "square", "q1": "circle", "q2": "circle"}
    styles = {"x": "filled", "z": "solid", "q1": "solid", "q2": "solid"}
    lines = ["graph layout {"]
    for role in ROLE_ORDER:
        for idx, coord in enumerate(table.families()[role]):
            px, py = _project(coord, spec)
            lines.append(
                f'  "{role}{idx}" [shape={shapes[role]} style={styles[role]}'
                f' pos="{px:.2f},{py:.2f}!"];'
            )
    if spec.include_edges and table.edges:
        for (role_a, ia), (role_b, ib) in table.edges:
            lines.append(f'  "{role_a}{ia}" -- "{role_b}{ib}";')
    lines.append("}")
    return "\n".join(lines) + "\n"
