# SPDX-FileCopyrightText: 2024-present Silvano Cerza <silvanocerza@gmail.com>
#
# SPDX-License-Identifier: AGPL-3.0-or-later
from typing import Dict, List, Sequence

import jinja2

from opsr.settings import SETTINGS

from .lot import LotGraph, NodeKind, OccupancyState

_TEMPLATE = """\
<svg xmlns="http://www.w3.org/2000/svg" width="{{ width }}" height="{{ height }}" viewBox="0 0 {{ width }} {{ height }}">
  <g class="roads" stroke="#9e9e9e" stroke-width="2">
  {%- for road in roads %}
    <line x1="{{ road.x1 }}" y1="{{ road.y1 }}" x2="{{ road.x2 }}" y2="{{ road.y2 }}"/>
  {%- endfor %}
  </g>
  <g class="spaces" stroke="#424242" stroke-width="1">
  {%- for space in spaces %}
    <rect id="{{ space.id }}" class="space {{ space.state }}" x="{{ space.x }}" y="{{ space.y }}" width="{{ space.width }}" height="{{ space.height }}" fill="{{ space.fill }}"/>
  {%- endfor %}
  </g>
  {%- for path in paths %}
  <polyline class="path {{ path.kind }}" points="{{ path.points }}" fill="none" stroke="{{ path.color }}" stroke-width="3"/>
  {%- endfor %}
  <g class="gates">
  {%- for gate in gates %}
    <circle class="{{ gate.kind }}" cx="{{ gate.x }}" cy="{{ gate.y }}" r="6" fill="{{ gate.color }}"/>
  {%- endfor %}
  </g>
  <g class="labels" font-family="sans-serif" font-size="10" text-anchor="middle">
  {%- for label in labels %}
    <text x="{{ label.x }}" y="{{ label.y }}">{{ label.text }}</text>
  {%- endfor %}
  </g>
</svg>
"""

_FILLS = {"occupied": "#757575", "vacant": "none", "recommended": "#66bb6a"}
_GATE_COLORS = {NodeKind.ENTRANCE: "#1e88e5", NodeKind.EXIT: "#e53935"}
_PATH_COLORS = {"drive": "#1e88e5", "walk": "#e53935"}


def _px(value: float) -> str:
    return f"{value:.1f}"


def render_svg(
    graph: LotGraph,
    state: OccupancyState,
    recommended: str | None = None,
    drive_path: Sequence[str] = (),
    walk_path: Sequence[str] = (),
) -> str:
    """
    Draws the lot as SVG: roads as lines, spaces as rectangles filled when
    occupied, the recommended space highlighted and the paths to and from it.
    """
    scale = float(SETTINGS.svg_scale)
    half_w = float(SETTINGS.stall_width) / 2
    half_d = float(SETTINGS.stall_depth) / 2

    def extent(node, axis: str, sign: int) -> float:
        value = node.x if axis == "x" else node.y
        if node.kind != NodeKind.SPACE:
            return value
        return value + sign * (half_w if axis == "x" else half_d)

    min_x = min(extent(n, "x", -1) for n in graph.nodes)
    min_y = min(extent(n, "y", -1) for n in graph.nodes)
    max_x = max(extent(n, "x", 1) for n in graph.nodes)
    max_y = max(extent(n, "y", 1) for n in graph.nodes)

    def to_px(x: float, y: float) -> tuple[str, str]:
        return _px((x - min_x) * scale), _px((y - min_y) * scale)

    roads: List[Dict[str, str]] = []
    for edge in graph.edges:
        a, b = graph.node(edge.a), graph.node(edge.b)
        x1, y1 = to_px(a.x, a.y)
        x2, y2 = to_px(b.x, b.y)
        roads.append({"x1": x1, "y1": y1, "x2": x2, "y2": y2})

    spaces = []
    for space_id in graph.spaces:
        node = graph.node(space_id)
        if space_id == recommended:
            status = "recommended"
        else:
            status = "occupied" if state.occupied[space_id] else "vacant"
        x, y = to_px(node.x - half_w, node.y - half_d)
        spaces.append(
            {
                "id": space_id,
                "state": status,
                "x": x,
                "y": y,
                "width": _px(2 * half_w * scale),
                "height": _px(2 * half_d * scale),
                "fill": _FILLS[status],
            }
        )

    paths = []
    for kind, nodes in (("drive", drive_path), ("walk", walk_path)):
        if len(nodes) < 2:
            continue
        points = " ".join(",".join(to_px(graph.node(n).x, graph.node(n).y)) for n in nodes)
        paths.append({"kind": kind, "points": points, "color": _PATH_COLORS[kind]})

    gates = []
    for node in graph.nodes:
        if node.kind in _GATE_COLORS:
            x, y = to_px(node.x, node.y)
            gates.append(
                {"kind": node.kind.value, "x": x, "y": y, "color": _GATE_COLORS[node.kind]}
            )

    labels = []
    for node in graph.nodes:
        if node.kind != NodeKind.INTERSECTION:
            x, y = to_px(node.x, node.y)
            labels.append({"x": x, "y": y, "text": node.id})

    env = jinja2.Environment(autoescape=True)
    return env.from_string(_TEMPLATE).render(
        width=_px((max_x - min_x) * scale),
        height=_px((max_y - min_y) * scale),
        roads=roads,
        spaces=spaces,
        paths=paths,
        gates=gates,
        labels=labels,
    )
