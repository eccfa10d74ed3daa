"""Link diagrams of ternary tree pairs.

The upper tree is drawn with its leaves on the x-axis at x = 1..2n+1 and
its root above; the lower tree is its mirror image below the axis.  The
two root stems are joined by an outer strand through the origin.  Every
internal node becomes a crossing with four ports::

    upper node          lower node
        N                L  M  R
        |                 \\ | /
        o                   o
      / | \\                 |
     L  M  R                N

The left-right arc passes over and the middle-parent strand under.  The
``positive`` convention swaps over and under at upper-tree nodes whose
first leaf is even and at lower-tree nodes whose first leaf is odd; this
makes every diagram alternating.  Strand connectivity is the same in both
conventions.

Component counting here walks the strands port by port and never looks at
tangled matchings, so it serves as an independent check on them.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .trees import Tree, TreePair

__all__ = [
    "DiagramError", "Port", "Crossing", "Segment", "LinkDiagram", "Trace",
    "build_diagram", "trace_components", "pd_code", "gauss_code",
    "format_pd", "format_gauss", "render", "is_alternating",
]

CONVENTIONS = ("standard", "positive")

# ports in counterclockwise order around a crossing
_CCW = {"+": ("N", "L", "M", "R"), "-": ("N", "R", "M", "L")}

# unit-free port directions seen from the crossing, used for crossing signs
_DIRECTIONS = {
    "+": {"N": (0, 1), "L": (-1, -1), "M": (0, -1), "R": (1, -1)},
    "-": {"N": (0, -1), "L": (-1, 1), "M": (0, 1), "R": (1, 1)},
}

Port = tuple  # (crossing index, port name)


class DiagramError(ValueError):
    """Structurally broken diagram (dangling or doubly used port)."""


@dataclass(frozen=True)
class Crossing:
    index: int
    side: str
    """"+" for a node of the upper tree, "-" for the lower tree."""
    span: tuple[int, int]
    """First and last leaf below the node."""
    position: tuple[float, float]
    over: tuple[str, str]
    under: tuple[str, str]

    def partner(self, port: str) -> str:
        for a, b in (self.over, self.under):
            if port == a:
                return b
            if port == b:
                return a
        raise DiagramError(f"crossing {self.index} has no port {port!r}")


@dataclass(frozen=True)
class Segment:
    """A strand piece between two crossing ports.

    For segments meeting the x-axis ``ends[0]`` is the end above the axis.
    A segment with no ends is a closed loop (the diagram of the identity).
    """

    label: int
    ends: tuple[Optional[Port], Optional[Port]]
    axis_marks: tuple[int, ...]
    points: tuple[tuple[float, float], ...]


@dataclass(frozen=True)
class LinkDiagram:
    crossings: tuple[Crossing, ...]
    segments: tuple[Segment, ...]
    axis_marks: tuple[int, ...]
    convention: str = "standard"


def _layout(t: Tree, side: str, first_index: int, crossings: list, segments: list,
            leaf_ports: dict, sign: int) -> Optional[Port]:
    """Add the crossings of one tree; return the root's stem port (None for a bare leaf)."""
    if not t:
        return None

    def go(node: Tree, lo: int, parent: Optional[Port], parent_pos) -> int:
        # lo = index of the first leaf below node; returns the last one
        idx = len(crossings)
        k = lo
        spans = []
        for child in node:
            hi = k + _leaves(child) - 1
            spans.append((k, hi))
            k = hi + 1
        hi = k - 1
        pos = ((lo + hi) / 2, sign * (hi - lo) / 2)
        crossings.append(None)  # placeholder, filled below
        if parent is not None:
            segments.append((parent, (idx, "N"), (), (parent_pos, pos)))
        for name, child, (clo, chi) in zip("LMR", node, spans):
            if child:
                go(child, clo, (idx, name), pos)
            else:
                leaf_ports[clo] = ((idx, name), pos)
        crossings[idx] = (side, (lo, hi), pos)
        return hi

    go(t, 1, None, None)
    return (first_index, "N")


def _leaves(t: Tree) -> int:
    if not t:
        return 1
    return sum(_leaves(c) for c in t)


def build_diagram(p: TreePair, convention: str = "standard") -> LinkDiagram:
    """The unoriented link diagram of a ternary tree pair."""
    if p.arity != 3:
        raise ValueError("link diagrams are built from ternary tree pairs")
    if convention not in CONVENTIONS:
        raise ValueError(f"unknown convention {convention!r}; use one of {CONVENTIONS}")
    raw_crossings: list = []
    raw_segments: list = []
    upper_leaves: dict = {}
    lower_leaves: dict = {}
    upper_root = _layout(p.plus, "+", 0, raw_crossings, raw_segments, upper_leaves, 1)
    lower_root = _layout(p.minus, "-", len(raw_crossings), raw_crossings, raw_segments, lower_leaves, -1)
    n_leaves = p.leaves

    crossings = []
    for i, (side, span, pos) in enumerate(raw_crossings):
        arc, stem = ("L", "R"), ("M", "N")
        if convention == "positive" and (side == "-") != (span[0] % 2 == 0):
            arc, stem = stem, arc
        crossings.append(Crossing(i, side, span, pos, over=arc, under=stem))

    segments = list(raw_segments)
    if upper_root is None:
        # both trees are single leaves: one circle through 0 and 1
        loop = ((1, 0), (1, 1), (0, 1), (0, 0), (0, -1), (1, -1), (1, 0))
        segments.append((None, None, (0, 1), loop))
    else:
        for i in range(1, n_leaves + 1):
            (up, up_pos), (lp, lp_pos) = upper_leaves[i], lower_leaves[i]
            segments.append((up, lp, (i,), (up_pos, (i, 0), lp_pos)))
        ux, uy = crossings[upper_root[0]].position
        lx, ly = crossings[lower_root[0]].position
        top, bottom = uy + 1, ly - 1
        outer = ((ux, uy), (ux, top), (0, top), (0, 0), (0, bottom), (lx, bottom), (lx, ly))
        segments.append((upper_root, lower_root, (0,), outer))

    segs = tuple(
        Segment(label=j + 1, ends=(a, b), axis_marks=marks,
                points=tuple((float(x), float(y)) for x, y in pts))
        for j, (a, b, marks, pts) in enumerate(segments))
    d = LinkDiagram(tuple(crossings), segs, tuple(range(n_leaves + 1)), convention)
    _check(d)
    return d


def _port_map(d: LinkDiagram) -> dict:
    """(crossing, port) -> (segment index, end index)."""
    used = {}
    for j, s in enumerate(d.segments):
        for e, port in enumerate(s.ends):
            if port is None:
                continue
            if port in used:
                raise DiagramError(f"port {port} used twice")
            used[port] = (j, e)
    return used


def _check(d: LinkDiagram) -> None:
    used = _port_map(d)
    for c in d.crossings:
        for name in c.over + c.under:
            if (c.index, name) not in used:
                raise DiagramError(f"port {name} of crossing {c.index} is dangling")
    if len(used) != 4 * len(d.crossings):
        raise DiagramError("segment ends refer to unknown crossing ports")


# ---------------------------------------------------------------------------
# Tracing
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Trace:
    """Components as oriented segment walks.

    Each step is ``(segment index, forward)``; forward means the segment is
    run from ``ends[0]`` to ``ends[1]``.
    """

    components: tuple[tuple[tuple[int, bool], ...], ...]

    @property
    def count(self) -> int:
        return len(self.components)

    def segment_labels(self, d: LinkDiagram) -> list[list[int]]:
        return [[d.segments[j].label for j, _ in comp] for comp in self.components]


def trace_components(d: LinkDiagram) -> Trace:
    """Walk every strand through the crossings and collect the closed components.

    Components are ordered by their smallest axis mark and each is oriented
    to leave that mark downwards.
    """
    _check(d)
    ports = _port_map(d)
    by_mark = {}
    for j, s in enumerate(d.segments):
        for mark in s.axis_marks:
            by_mark[mark] = j
    seen = [False] * len(d.segments)
    comps = []
    for mark in sorted(by_mark):
        start = by_mark[mark]
        if seen[start]:
            continue
        walk = []
        j, fwd = start, True
        while True:
            if seen[j]:
                if (j, fwd) != (start, True):
                    raise DiagramError(f"segment {d.segments[j].label} reached twice")
                break
            seen[j] = True
            walk.append((j, fwd))
            exit_port = d.segments[j].ends[1 if fwd else 0]
            if exit_port is None:
                continue  # closed loop: next iteration sees it again
            c, name = exit_port
            other = (c, d.crossings[c].partner(name))
            if other not in ports:
                raise DiagramError(f"port {other} is dangling")
            j, e = ports[other]
            fwd = e == 0
        comps.append(tuple(walk))
    if not all(seen):
        # segments away from the axis cannot form a component in these diagrams
        missing = [d.segments[j].label for j, ok in enumerate(seen) if not ok]
        raise DiagramError(f"segments {missing} lie on no component through the axis")
    return Trace(tuple(comps))


# ---------------------------------------------------------------------------
# Codes
# ---------------------------------------------------------------------------

def _oriented(d: LinkDiagram, trace: Trace):
    """Relabel segments 1..k along the orientation; record entry/exit of each port."""
    label = {}
    direction = {}
    k = 0
    for comp in trace.components:
        for j, fwd in comp:
            k += 1
            label[j] = k
            direction[j] = fwd
    incoming = {}
    for j, s in enumerate(d.segments):
        fwd = direction[j]
        if s.ends[1 if fwd else 0] is not None:
            incoming[s.ends[1 if fwd else 0]] = True
        if s.ends[0 if fwd else 1] is not None:
            incoming[s.ends[0 if fwd else 1]] = False
    return label, incoming


def pd_code(d: LinkDiagram, trace: Optional[Trace] = None) -> list[tuple[int, int, int, int]]:
    """PD code: per crossing, segment labels counterclockwise from the incoming under strand."""
    trace = trace or trace_components(d)
    label, incoming = _oriented(d, trace)
    ports = _port_map(d)
    out = []
    for c in d.crossings:
        a, b = c.under
        start = a if incoming[(c.index, a)] else b
        order = _CCW[c.side]
        k = order.index(start)
        cyc = order[k:] + order[:k]
        out.append(tuple(label[ports[(c.index, name)][0]] for name in cyc))
    return out


def _sign(c: Crossing, incoming: dict) -> int:
    dirs = _DIRECTIONS[c.side]

    def strand(pair):
        a, b = pair
        if not incoming[(c.index, a)]:
            a, b = b, a
        (ax, ay), (bx, by) = dirs[a], dirs[b]
        return bx - ax, by - ay

    (ox, oy), (ux, uy) = strand(c.over), strand(c.under)
    cross = ox * uy - oy * ux
    return 1 if cross > 0 else -1


def gauss_code(d: LinkDiagram, trace: Optional[Trace] = None) -> list[list[tuple[str, int, int]]]:
    """Per component, the crossings met in order as (O|U, crossing number, sign).

    Crossings are numbered from 1 in diagram order; the sign uses the
    orientation fixed by the tracer.
    """
    trace = trace or trace_components(d)
    _, incoming = _oriented(d, trace)
    signs = [_sign(c, incoming) for c in d.crossings]
    out = []
    for comp in trace.components:
        seq = []
        for j, fwd in comp:
            port = d.segments[j].ends[1 if fwd else 0]
            if port is None:
                continue
            c, name = port
            kind = "O" if name in d.crossings[c].over else "U"
            seq.append((kind, c + 1, signs[c]))
        out.append(seq)
    return out


def format_pd(code) -> str:
    return "\n".join(f"X({a},{b},{c},{e})" for a, b, c, e in code)


def format_gauss(code) -> str:
    return "\n".join(" ".join(f"{k}{n}{'+' if s > 0 else '-'}" for k, n, s in comp) for comp in code)


def is_alternating(d: LinkDiagram) -> bool:
    """True if every component alternates over and under along the whole link."""
    for comp in gauss_code(d):
        kinds = [k for k, _, _ in comp]
        if any(a == b for a, b in zip(kinds, kinds[1:] + kinds[:1])):
            return False
    return True


# ---------------------------------------------------------------------------
# Rendering
# ---------------------------------------------------------------------------

def _unit(dx: float, dy: float) -> tuple[float, float]:
    r = (dx * dx + dy * dy) ** 0.5
    return dx / r, dy / r


def _over_pieces(d: LinkDiagram, gap: float):
    """For each crossing, the short over-strand polyline that covers the gap."""
    ports = _port_map(d)
    out = []
    for c in d.crossings:
        cx, cy = c.position
        pts = []
        for name in c.over:
            j, e = ports[(c.index, name)]
            path = d.segments[j].points
            nx, ny = path[1] if e == 0 else path[-2]
            ux, uy = _unit(nx - cx, ny - cy)
            pts.append((cx + gap * ux, cy + gap * uy))
        out.append((pts[0], (cx, cy), pts[1]))
    return out


def _bounds(d: LinkDiagram):
    xs = [x for s in d.segments for x, _ in s.points]
    ys = [y for s in d.segments for _, y in s.points]
    return min(xs), max(xs), min(ys), max(ys)


def render(d: LinkDiagram, fmt: str = "svg", scale: float = 40.0, gap: float = 0.25,
           labels: bool = True) -> str:
    """Vector drawing of the diagram as an SVG document or a TikZ picture.

    ``scale`` is pixels per unit for SVG and is divided by 40 to give cm for
    TikZ; ``gap`` is the half-length of the break in under strands.
    """
    if fmt == "svg":
        return _render_svg(d, scale, gap, labels)
    if fmt == "tikz":
        return _render_tikz(d, scale / 40.0, gap, labels)
    raise ValueError(f"unknown format {fmt!r}; use 'svg' or 'tikz'")


def _num(v: float) -> str:
    s = f"{v:.3f}".rstrip("0").rstrip(".")
    return "0" if s in ("-0", "") else s


def _render_svg(d: LinkDiagram, scale: float, gap: float, labels: bool) -> str:
    x0, x1, y0, y1 = _bounds(d)
    margin = 1.0

    def tx(x):
        return _num((x - x0 + margin) * scale)

    def ty(y):
        return _num((y1 - y + margin) * scale)

    def path(pts):
        return "M " + " L ".join(f"{tx(x)} {ty(y)}" for x, y in pts)

    width = _num((x1 - x0 + 2 * margin) * scale)
    height = _num((y1 - y0 + 2 * margin) * scale)
    lw = _num(max(scale / 20, 1.0))
    halo = _num(max(scale / 20, 1.0) * 5)
    lines = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{width}" height="{height}" '
        f'viewBox="0 0 {width} {height}">',
        f'<g class="strands" fill="none" stroke="black" stroke-width="{lw}" '
        'stroke-linejoin="round" stroke-linecap="round">',
    ]
    for s in d.segments:
        closed = " Z" if s.ends == (None, None) else ""
        lines.append(f'<path class="segment" data-label="{s.label}" d="{path(s.points)}{closed}"/>')
    lines.append("</g>")
    lines.append('<g class="crossings" fill="none" stroke-linejoin="round">')
    for c, pts in zip(d.crossings, _over_pieces(d, gap)):
        lines.append(f'<path class="gap" data-crossing="{c.index + 1}" stroke="white" '
                     f'stroke-width="{halo}" d="{path(pts)}"/>')
        lines.append(f'<path class="over" stroke="black" stroke-width="{lw}" d="{path(pts)}"/>')
    lines.append("</g>")
    if labels:
        size = _num(scale * 0.3)
        lines.append(f'<g class="axis-marks" font-family="sans-serif" font-size="{size}" text-anchor="middle">')
        for m in d.axis_marks:
            lines.append(f'<text x="{tx(m + 0.25)}" y="{ty(-0.3)}">{m}</text>')
        lines.append("</g>")
    lines.append("</svg>")
    return "\n".join(lines) + "\n"


def _render_tikz(d: LinkDiagram, unit_cm: float, gap: float, labels: bool) -> str:
    def path(pts):
        return " -- ".join(f"({_num(x)},{_num(y)})" for x, y in pts)

    lines = [
        f"\\begin{{tikzpicture}}[x={_num(unit_cm)}cm, y={_num(unit_cm)}cm, line join=round,",
        "  strand/.style={thick}, gap/.style={white, line width=4pt}]",
    ]
    for s in d.segments:
        closed = " -- cycle" if s.ends == (None, None) else ""
        lines.append(f"\\draw[strand] {path(s.points)}{closed}; % segment {s.label}")
    for c, pts in zip(d.crossings, _over_pieces(d, gap)):
        lines.append(f"\\draw[gap] {path(pts)}; % crossing {c.index + 1}")
        lines.append(f"\\draw[strand] {path(pts)};")
    if labels:
        for m in d.axis_marks:
            lines.append(f"\\node[font=\\tiny] at ({_num(m + 0.25)},-0.3) {{{m}}};")
    lines.append("\\end{tikzpicture}")
    return "\n".join(lines) + "\n"
