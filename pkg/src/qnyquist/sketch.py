"""Qualitative Nyquist sketch: a drawing description and its SVG rendering.

:func:`build_sketch` turns a report plus a sweep into a
:class:`SketchDocument`.  Every annotated element carries the key of the
report field it comes from (``"endpoints.start"``, ``"behaviors.exit"``,
``"crossings.points[0]"`` ...), so the drawing can be traced back to the
analysis.  Near finite endpoints the local archetype shape is drawn from
the Delta signs, since a sweep alone squeezes that detail into a few pixels.
"""

import csv
from dataclasses import dataclass, field
from typing import List, Optional, Sequence, Tuple

import matplotlib
import numpy as np
from matplotlib.backends.backend_svg import FigureCanvasSVG
from matplotlib.figure import Figure

from .classify import ApproachAxis, EndpointBehavior
from .features import SweepSample, default_omega_range, sweep
from .report import QualitativeReport
from .xfer import ModulusKind, Which

TABLE_COLUMNS = ("omega", "re", "im", "modulus", "phase_unwrapped")


@dataclass(frozen=True)
class Marker:
    key: str
    label: str
    point: complex


@dataclass(frozen=True)
class Arrow:
    key: str
    origin: complex
    direction: complex  # unit vector
    length: float


@dataclass(frozen=True)
class Glyph:
    key: str
    text: str
    anchor: Optional[complex]  # None for an endpoint at infinity
    # local archetype shape next to the anchor, in plot coordinates
    template: Tuple[complex, ...] = ()


@dataclass(frozen=True)
class AsymptoteLine:
    key: str
    abscissa: float


@dataclass
class SketchDocument:
    title: str
    samples: List[SweepSample]
    markers: List[Marker] = field(default_factory=list)
    glyphs: List[Glyph] = field(default_factory=list)
    arrows: List[Arrow] = field(default_factory=list)
    asymptote: Optional[AsymptoteLine] = None
    crossings: List[Marker] = field(default_factory=list)
    view: Tuple[float, float, float, float] = (-1.0, 1.0, -1.0, 1.0)
    single_point: bool = False

    def keys(self) -> List[str]:
        out = [m.key for m in self.markers] + [g.key for g in self.glyphs]
        out += [a.key for a in self.arrows] + [c.key for c in self.crossings]
        if self.asymptote is not None:
            out.append(self.asymptote.key)
        return out


def _view(points: Sequence[complex], curve: np.ndarray, margin: float = 0.12):
    """Bounding box of the anchors plus the part of the curve near them.

    Far-away sweep samples (near a pole at the origin, say) are left out:
    the box covers samples within twice the largest anchor distance.
    """
    anchors = np.array(list(points) + [0j])
    reach = float(np.max(np.abs(anchors)))
    finite = curve[np.isfinite(curve)]
    if finite.size:
        typical = float(np.median(np.abs(finite)))
        reach = max(reach, typical)
        near = finite[np.abs(finite) <= 2 * reach]
        anchors = np.concatenate([anchors, near])
    if reach == 0:
        reach = 1.0
    x0, x1 = float(anchors.real.min()), float(anchors.real.max())
    y0, y1 = float(anchors.imag.min()), float(anchors.imag.max())
    span = max(x1 - x0, y1 - y0, 1e-3 * reach)
    pad = margin * span
    cx, cy = (x0 + x1) / 2, (y0 + y1) / 2
    half = span / 2 + pad
    return (cx - half, cx + half, cy - half, cy + half)


def _template(point: complex, behavior: EndpointBehavior, size: float) -> Tuple[complex, ...]:
    """Local shape ``P (1 + Dh t^h +/- j Dk t^k)`` with unit-size coefficients."""
    if behavior.approach_axis is ApproachAxis.DEGENERATE or point == 0:
        return ()
    k, h = behavior.k_odd, behavior.h_even
    sk = 0 if behavior.delta_k is None else (1 if behavior.delta_k > 0 else -1)
    sh = 0 if behavior.delta_h is None else (1 if behavior.delta_h > 0 else -1)
    if behavior.end is Which.END:
        sk = -sk
    if sk == 0:
        return ()
    unit = point / abs(point)
    t = np.linspace(0.0, 1.0, 24)
    even = sh * t ** (h or 2) if h is not None else 0 * t
    local = even + 1j * sk * t**k
    return tuple(complex(point + size * unit * z) for z in local)


def _describe(which: str, b: EndpointBehavior) -> str:
    parts = [which]
    if b.archetype is not None:
        parts.append(f"archetype {b.archetype}")
    axis = {
        ApproachAxis.PERPENDICULAR_TO_REAL: "perpendicular",
        ApproachAxis.PARALLEL_TO_REAL: "parallel",
        ApproachAxis.DEGENERATE: "on axis",
    }[b.approach_axis]
    return f"{' '.join(parts)} ({axis}, {b.phase_sense.value})"


def build_sketch(
    report: QualitativeReport,
    omega_range: Optional[Tuple[float, float]] = None,
    samples_per_decade: int = 60,
) -> SketchDocument:
    tf = report.tf
    title = f"G(s) = {report.source_text or tf}"
    start_pt, end_pt = report.start.point(), report.end.point()

    if tf.is_constant():
        value = complex(tf.frequency_response(1.0))
        sample = SweepSample(1.0, value, abs(value), report.start.phase_radians)
        half = max(1.0, abs(value))
        return SketchDocument(
            title=title,
            samples=[sample],
            markers=[Marker("endpoints.start", "P0 = P∞", value)],
            view=(value.real - half, value.real + half, -half, half),
            single_point=True,
        )

    lo, hi = omega_range or default_omega_range(tf)
    samples = sweep(tf, lo, hi, samples_per_decade)
    curve = np.array([s.value for s in samples])

    markers = []
    anchors = []
    for key, label, pt in (("endpoints.start", "P0", start_pt), ("endpoints.end", "P∞", end_pt)):
        if pt is not None:
            markers.append(Marker(key, label, pt))
            anchors.append(pt)
    crossings = []
    for i, c in enumerate(report.crossings or []):
        pt = complex(c.real_value, 0.0)
        crossings.append(Marker(f"crossings.points[{i}]", f"w={c.omega:.4g}", pt))
        anchors.append(pt)
    asym = None
    if report.asymptote is not None:
        asym = AsymptoteLine("asymptote", float(report.asymptote.abscissa))
        anchors.append(complex(asym.abscissa, 0.0))

    view = _view(anchors, curve)
    size = 0.08 * (view[1] - view[0])

    glyphs = []
    for key, which, b, summary, pt in (
        ("behaviors.exit", "exit", report.exit, report.start, start_pt),
        ("behaviors.entry", "entry", report.entry, report.end, end_pt),
    ):
        template = ()
        if summary.modulus_kind is ModulusKind.FINITE:
            template = _template(pt, b, size)
        glyphs.append(Glyph(key, _describe(which, b), pt, template))

    arrows = []
    for key, tangent, pt in (
        ("tangents.start", report.start_tangent, start_pt),
        ("tangents.end", report.end_tangent, end_pt),
    ):
        if tangent is None or pt is None:
            continue
        origin = pt if tangent.end is Which.START else pt - size * tangent.direction
        arrows.append(Arrow(key, origin, tangent.direction, size))

    return SketchDocument(
        title=title,
        samples=samples,
        markers=markers,
        glyphs=glyphs,
        arrows=arrows,
        asymptote=asym,
        crossings=crossings,
        view=view,
    )


def _flow_arrows(ax, curve, view, count=4):
    x0, x1, y0, y1 = view
    inside = np.nonzero(
        (curve.real > x0) & (curve.real < x1) & (curve.imag > y0) & (curve.imag < y1)
    )[0]
    if inside.size < 2 * count:
        return
    for idx in inside[np.linspace(0, inside.size - 2, count + 2)[1:-1].astype(int)]:
        a, b = curve[idx], curve[idx + 1]
        if a == b:
            continue
        ax.annotate(
            "",
            xy=(b.real, b.imag),
            xytext=(a.real, a.imag),
            arrowprops={"arrowstyle": "-|>", "color": "C0", "lw": 1, "mutation_scale": 14},
        )


def render_svg(doc: SketchDocument, path) -> None:
    """Draw ``doc`` into an SVG file (deterministic output for equal input)."""
    with matplotlib.rc_context({"svg.hashsalt": "qnyquist", "svg.fonttype": "none"}):
        fig = Figure(figsize=(6.4, 6.4))
        FigureCanvasSVG(fig)
        ax = fig.add_subplot()
        x0, x1, y0, y1 = doc.view
        ax.axhline(0.0, color="0.6", lw=0.8)
        ax.axvline(0.0, color="0.6", lw=0.8)

        if doc.single_point:
            p = doc.samples[0].value
            ax.plot([p.real], [p.imag], "o", color="C0", ms=8)
        else:
            curve = np.array([s.value for s in doc.samples])
            ax.plot(curve.real, curve.imag, color="C0", lw=1.6, label="G(jw), w > 0")
            _flow_arrows(ax, curve, doc.view)

        if doc.asymptote is not None:
            a = doc.asymptote.abscissa
            ax.axvline(a, color="C3", ls="--", lw=1.0, label=f"asymptote Re = {a:.4g}")

        for m in doc.markers:
            ax.plot([m.point.real], [m.point.imag], "o", color="k", ms=5, zorder=5)
            ax.annotate(m.label, (m.point.real, m.point.imag), textcoords="offset points",
                        xytext=(6, 6), fontsize=10)
        for c in doc.crossings:
            ax.plot([c.point.real], [c.point.imag], "x", color="C2", ms=8, mew=2, zorder=5)
            ax.annotate(c.label, (c.point.real, c.point.imag), textcoords="offset points",
                        xytext=(4, -14), fontsize=8, color="C2")
        for g in doc.glyphs:
            if g.template:
                t = np.array(g.template)
                ax.plot(t.real, t.imag, color="C1", lw=2.4, alpha=0.7)
        for a in doc.arrows:
            tip = a.origin + a.length * a.direction
            ax.annotate("", xy=(tip.real, tip.imag), xytext=(a.origin.real, a.origin.imag),
                        arrowprops={"arrowstyle": "->", "color": "C3", "lw": 1.4})

        notes = "\n".join(g.text for g in doc.glyphs)
        if notes:
            ax.text(0.02, 0.02, notes, transform=ax.transAxes, fontsize=8, va="bottom",
                    bbox={"boxstyle": "round", "fc": "white", "ec": "0.7"})
        ax.set_xlim(x0, x1)
        ax.set_ylim(y0, y1)
        ax.set_aspect("equal", adjustable="box")
        ax.set_xlabel("Re")
        ax.set_ylabel("Im")
        ax.set_title(doc.title, fontsize=9)
        if ax.get_legend_handles_labels()[0]:
            ax.legend(loc="upper right", fontsize=8)
        fig.savefig(path, format="svg", metadata={"Date": None})


def write_table(samples: Sequence[SweepSample], path) -> None:
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(TABLE_COLUMNS)
        for s in samples:
            w.writerow([repr(s.omega), repr(s.value.real), repr(s.value.imag),
                        repr(s.modulus), repr(s.phase_unwrapped)])


def read_table(path) -> List[SweepSample]:
    with open(path, newline="") as fh:
        rows = list(csv.DictReader(fh))
    return [
        SweepSample(float(r["omega"]), complex(float(r["re"]), float(r["im"])),
                    float(r["modulus"]), float(r["phase_unwrapped"]))
        for r in rows
    ]
