"""SVG rendering of layered drawings and a matplotlib figure of the bounds table.

Rendering is one-way: exact coordinates are projected to pixels for display
and nothing computed here feeds back into verification.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Sequence

from .model import LayeredDrawing

# 26 distinguishable colours: enough for every upper bound up to n = 100
DEFAULT_PALETTE = (
    "#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd", "#8c564b", "#e377c2",
    "#7f7f7f", "#bcbd22", "#17becf", "#393b79", "#637939", "#8c6d31", "#843c39",
    "#7b4173", "#3182bd", "#e6550d", "#31a354", "#756bb1", "#636363", "#6baed6",
    "#fd8d3c", "#74c476", "#9e9ac8", "#969696", "#ad494a",
)


@dataclass(frozen=True)
class RenderStyle:
    width: int = 800
    height: int = 800
    palette: Sequence[str] = field(default=DEFAULT_PALETTE)
    vertex_radius: float = 4.0
    stroke_width: float = 1.5
    margin: Fraction = Fraction(1, 20)

    def colour(self, layer: int) -> str:
        return self.palette[layer % len(self.palette)]


def _fmt(v: Fraction) -> str:
    """Fixed 10^-3 px precision, trailing zeros trimmed, no negative zero."""
    q = round(v * 1000)
    whole, frac = divmod(abs(q), 1000)
    s = f"{whole}.{frac:03d}".rstrip("0").rstrip(".")
    return f"-{s}" if q < 0 else s


def _projector(drawing: LayeredDrawing, style: RenderStyle):
    pts = drawing.points
    if not pts:
        return lambda p: (Fraction(0), Fraction(0))
    xs = [p.x for p in pts]
    ys = [p.y for p in pts]
    span = max(max(xs) - min(xs), max(ys) - min(ys)) or Fraction(1)
    usable_w = style.width * (1 - 2 * style.margin)
    usable_h = style.height * (1 - 2 * style.margin)
    scale = min(usable_w, usable_h) / span
    cx = (min(xs) + max(xs)) / 2
    cy = (min(ys) + max(ys)) / 2

    def project(p):
        # SVG's y axis points down
        return (Fraction(style.width, 2) + (p.x - cx) * scale,
                Fraction(style.height, 2) - (p.y - cy) * scale)

    return project


def render_svg(drawing: LayeredDrawing, style: RenderStyle | None = None,
               layers: Sequence[int] | None = None) -> str:
    """One ``<g>`` per layer, each stroked in its palette colour, then the vertices."""
    style = style or RenderStyle()
    project = _projector(drawing, style)
    xy = [project(p) for p in drawing.points]
    shown = range(drawing.layer_count) if layers is None else layers
    out = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{style.width}" '
        f'height="{style.height}" viewBox="0 0 {style.width} {style.height}">',
        f'<title>{drawing.graph.label}, {drawing.layer_count} layers</title>',
        '<rect width="100%" height="100%" fill="white"/>',
    ]
    for layer in shown:
        out.append(
            f'<g id="layer-{layer}" stroke="{style.colour(layer)}" '
            f'stroke-width="{style.stroke_width}" fill="none">'
        )
        for u, v, lay in drawing.edges:
            if lay != layer:
                continue
            (x1, y1), (x2, y2) = xy[u], xy[v]
            out.append(f'<line x1="{_fmt(x1)}" y1="{_fmt(y1)}" x2="{_fmt(x2)}" y2="{_fmt(y2)}"/>')
        out.append("</g>")
    out.append('<g id="vertices" fill="black" stroke="none">')
    for i, (x, y) in enumerate(xy):
        out.append(f'<circle id="v{i}" cx="{_fmt(x)}" cy="{_fmt(y)}" r="{style.vertex_radius}"/>')
    out.append("</g>")
    out.append("</svg>")
    return "\n".join(out) + "\n"


def write_svg(drawing: LayeredDrawing, path: str | Path, style: RenderStyle | None = None,
              split_layers: bool = False) -> list[Path]:
    """Write the combined SVG, or with ``split_layers`` one file per layer (``stem-layerK.svg``)."""
    path = Path(path)
    if not split_layers:
        path.write_text(render_svg(drawing, style))
        return [path]
    written = []
    for layer in range(drawing.layer_count):
        target = path.with_name(f"{path.stem}-layer{layer}{path.suffix or '.svg'}")
        target.write_text(render_svg(drawing, style, layers=[layer]))
        written.append(target)
    return written


def plot_bounds(rows, path: str | Path) -> Path:
    """Step plot of the lower and upper bounds against n, saved to ``path``."""
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    ns = [r.n for r in rows]
    fig, ax = plt.subplots(figsize=(6.4, 4.0))
    ax.step(ns, [r.upper for r in rows], where="mid", label="upper (two rings)", color="#d62728")
    ax.step(ns, [r.lower for r in rows], where="mid", label="lower", color="#1f77b4")
    special = [r for r in rows if r.lower_source.value == "K15Theorem"]
    if special:
        ax.plot([r.n for r in special], [r.lower for r in special], "o", color="black",
                label="K15 case analysis")
    ax.set_xlabel("n")
    ax.set_ylabel("layers")
    ax.set_title("Geometric thickness of $K_n$: bounds")
    ax.legend(loc="upper left", frameon=False)
    ax.grid(alpha=0.3)
    fig.tight_layout()
    path = Path(path)
    fig.savefig(path)
    plt.close(fig)
    return path
