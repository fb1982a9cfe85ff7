"""Deterministic SVG figures of Ford circles, extraction lines, lattice regions and approximation curves.

The unit square maps onto a viewbox of RENDER_DEFAULTS["viewbox"] units with the
y-axis flipped. Coordinates are computed as exact fractions and formatted once,
so repeated renders are byte-identical.
"""

import math
import xml.etree.ElementTree as ET
from fractions import Fraction

from fordseq import approx, counting, sequences
from fordseq.constants import APPROXIMATIONS, RENDER_DEFAULTS, RENDER_KINDS
from fordseq.errors import DomainError
from fordseq.geometry import OriginLine, ReducedFraction, circle_of

SVG_NS = "http://www.w3.org/2000/svg"
SIZE = RENDER_DEFAULTS["viewbox"]

STYLES = {
    "circle": {"fill": "none", "stroke": "#7f7f7f", "stroke-width": str(RENDER_DEFAULTS["stroke_width"])},
    "touched": {"fill": "#f2b134", "stroke": "#b35900", "stroke-width": str(RENDER_DEFAULTS["highlight_stroke_width"])},
    "line": {"stroke": "#1f4e9c", "stroke-width": str(RENDER_DEFAULTS["highlight_stroke_width"])},
    "boundary": {"fill": "none", "stroke": "#c0392b", "stroke-width": str(RENDER_DEFAULTS["stroke_width"])},
    "hyperbola": {
        "fill": "none",
        "stroke": "#000000",
        "stroke-dasharray": "6 4",
        "stroke-width": str(RENDER_DEFAULTS["stroke_width"]),
    },
    "lattice-point": {"fill": "#1f4e9c"},
    "exact": {"fill": "none", "stroke": "#000000", "stroke-width": str(RENDER_DEFAULTS["highlight_stroke_width"])},
    "a1": {"fill": "none", "stroke": "#c0392b", "stroke-width": str(RENDER_DEFAULTS["stroke_width"])},
    "a2": {"fill": "none", "stroke": "#1f4e9c", "stroke-width": str(RENDER_DEFAULTS["stroke_width"])},
    "a3": {"fill": "none", "stroke": "#2e8b57", "stroke-width": str(RENDER_DEFAULTS["stroke_width"])},
}


def _fmt(value: Fraction | int | float) -> str:
    return format(float(value), ".6g")


def _x(x: Fraction) -> str:
    return _fmt(x * SIZE)


def _y(y: Fraction) -> str:
    return _fmt((1 - y) * SIZE)


def _root() -> ET.Element:
    return ET.Element(
        "svg",
        {
            "xmlns": SVG_NS,
            "width": str(SIZE),
            "height": str(SIZE),
            "viewBox": f"0 0 {SIZE} {SIZE}",
        },
    )


def _add_circle(parent: ET.Element, f: ReducedFraction, css_class: str) -> None:
    circle = circle_of(f)
    attributes = {
        "class": css_class,
        "cx": _x(circle.center_x),
        "cy": _y(circle.center_y),
        "r": _fmt(circle.radius * SIZE),
        "data-fraction": str(f),
    }
    attributes.update(STYLES[css_class])
    ET.SubElement(parent, "circle", attributes)


def _fractions_up_to(qmax: int) -> list[ReducedFraction]:
    return sorted(ReducedFraction(p, q) for q in range(1, qmax + 1) for p in range(q + 1) if math.gcd(p, q) == 1)


def _serialize(root: ET.Element) -> bytes:
    return b'<?xml version="1.0" encoding="UTF-8"?>\n' + ET.tostring(root, encoding="utf-8", xml_declaration=False) + b"\n"


def render_circles(qmax: int) -> bytes:
    """All Ford circles in [0, 1] with denominator <= qmax."""
    if qmax < 1:
        raise DomainError(f"qmax must be a positive integer, got {qmax}")
    root = _root()
    group = ET.SubElement(root, "g", {"id": "circles"})
    for f in _fractions_up_to(qmax):
        _add_circle(group, f, "circle")
    return _serialize(root)


def render_line(m: int, qmax: int) -> bytes:
    """Ford circles with y = x/m drawn over them; circles of F_{1/m} are highlighted."""
    touched = sequences.extract_origin(m).fractions
    touched_set = set(touched)

    root = _root()
    background = ET.SubElement(root, "g", {"id": "circles"})
    for f in _fractions_up_to(qmax):
        if f not in touched_set:
            _add_circle(background, f, "circle")

    highlighted = ET.SubElement(root, "g", {"id": "touched"})
    for f in touched:
        _add_circle(highlighted, f, "touched")

    attributes = {
        "class": "line",
        "x1": _x(Fraction(0)),
        "y1": _y(Fraction(0)),
        "x2": _x(Fraction(1)),
        "y2": _y(Fraction(1, m)),
    }
    attributes.update(STYLES["line"])
    ET.SubElement(root, "line", attributes)
    return _serialize(root)


def render_lattice(m: int) -> bytes:
    """Lattice points (p, q) of F_{1/m} (0/1 excluded) with the boundaries q = p and q = m/p.

    The p-axis spans [0, s + 1] and the q-axis [0, m + 1], each scaled to the viewbox.
    """
    s = counting.s_of(m)
    p_span = Fraction(s + 1)
    q_span = Fraction(m + 1)
    radius = str(RENDER_DEFAULTS["point_radius"])

    def point(p: Fraction, q: Fraction) -> tuple[str, str]:
        return _x(p / p_span), _y(q / q_span)

    root = _root()
    diagonal = " ".join(",".join(point(Fraction(v), Fraction(v))) for v in (1, s + 1))
    ET.SubElement(root, "polyline", {"class": "boundary", "points": diagonal, **STYLES["boundary"]})

    samples = RENDER_DEFAULTS["curve_samples"]
    curve = []
    for i in range(samples):
        p = 1 + Fraction(i * s, samples - 1)
        curve.append(",".join(point(p, m / p)))
    ET.SubElement(root, "polyline", {"class": "hyperbola", "points": " ".join(curve), **STYLES["hyperbola"]})

    points = ET.SubElement(root, "g", {"id": "lattice"})
    for f in sequences.extract_origin(m).fractions:
        if f.p == 0:
            continue
        cx, cy = point(Fraction(f.p), Fraction(f.q))
        attributes = {"class": "lattice-point", "cx": cx, "cy": cy, "r": radius, "data-fraction": str(f)}
        attributes.update(STYLES["lattice-point"])
        ET.SubElement(points, "circle", attributes)
    return _serialize(root)


def render_approximations(m_from: int, m_to: int, step: int = 1) -> bytes:
    """Exact |F_{1/m}| and a1, a2, a3 over m = m_from, m_from + step, ..., <= m_to as polylines.

    The m-axis spans [m_from, m_to] and the value axis [0, the largest plotted value].

    Raises:
        DomainError: If m_from < 2, m_from > m_to or step < 1
    """
    summary = approx.error_report(m_from, m_to, step)
    span = max(m_to - m_from, 1)
    top = max(max(r.exact, *(float(v) for v in r.values)) for r in summary.reports)
    series: dict[str, list[float]] = {"exact": [float(r.exact) for r in summary.reports]}
    for i, name in enumerate(APPROXIMATIONS):
        series[name] = [float(r.values[i]) for r in summary.reports]

    root = _root()
    group = ET.SubElement(root, "g", {"id": "approx", "data-m-from": str(m_from), "data-m-to": str(m_to)})
    for name, values in series.items():
        points = " ".join(
            f"{_x(Fraction(r.m - m_from, span))},{_fmt((1 - value / top) * SIZE)}"
            for r, value in zip(summary.reports, values, strict=True)
        )
        ET.SubElement(group, "polyline", {"class": name, "points": points, **STYLES[name]})
    return _serialize(root)


def render(
    kind: str,
    m: int | None = None,
    qmax: int = RENDER_DEFAULTS["qmax"],
    m_from: int | None = None,
    m_to: int | None = None,
    step: int = 1,
) -> bytes:
    """Render one of RENDER_KINDS as SVG bytes.

    circles, line and lattice take m; approx takes the range m_from..m_to by step.

    Raises:
        DomainError: For an unknown kind, a missing parameter or an out-of-domain value
    """
    if kind not in RENDER_KINDS:
        raise DomainError(f"Unknown figure kind {kind!r}; expected one of {RENDER_KINDS}")
    if kind == "approx":
        if m_from is None or m_to is None:
            raise DomainError("The approx figure needs m_from and m_to")
        return render_approximations(m_from, m_to, step)

    if m is None:
        raise DomainError(f"The {kind} figure needs m")
    OriginLine(m)
    match kind:
        case "circles":
            return render_circles(qmax)
        case "line":
            return render_line(m, qmax)
    return render_lattice(m)
