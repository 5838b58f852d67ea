"""The full qualitative analysis of one transfer function, as one document.

:func:`build_report` only gathers outputs of the analysis modules; nothing
is computed here.  Exact rationals are written as strings (``"27/16"``) with
float mirrors next to them for plotting consumers.  Readers ignore unknown
fields, and the body carries no timestamps, so the JSON form is
deterministic for a given input.
"""

import json
from dataclasses import dataclass, field
from typing import List, Optional

from . import __version__
from .classify import (
    EndpointBehavior,
    LiftedBehavior,
    classify_entry,
    classify_exit,
    lift_to_gbar,
)
from .errors import DegenerateOnAxis
from .features import (
    CROSSING_METHOD,
    Asymptote,
    AxisCrossing,
    TangentVector,
    asymptote_abscissa,
    real_axis_crossings,
    tangent_vectors,
)
from .taylor import DeltaTauSeries, delta_tau_series
from .xfer import (
    EndpointSummary,
    TransferFunction,
    dualize,
    endpoints,
    format_tf,
    from_document,
    to_document,
)

SCHEMA_VERSION = 1
TOOL = "qnyquist"


@dataclass(frozen=True)
class Notice:
    kind: str  # "degenerate" trips --strict; "caveat" is informational
    code: str
    message: str

    def to_dict(self) -> dict:
        return {"kind": self.kind, "code": self.code, "message": self.message}

    @classmethod
    def from_dict(cls, d: dict) -> "Notice":
        return cls(d["kind"], d["code"], d["message"])


@dataclass(frozen=True)
class QualitativeReport:
    tf: TransferFunction
    # text as given by the user, if any; the normalized form is format_tf(tf)
    source_text: Optional[str]
    start: EndpointSummary
    end: EndpointSummary
    start_series: DeltaTauSeries
    end_series: DeltaTauSeries
    exit: EndpointBehavior
    entry: EndpointBehavior
    exit_lifted: LiftedBehavior
    entry_lifted: LiftedBehavior
    # None when the response is real everywhere (no isolated crossings)
    crossings: Optional[List[AxisCrossing]]
    asymptote: Optional[Asymptote]
    start_tangent: Optional[TangentVector]
    end_tangent: Optional[TangentVector]
    notices: List[Notice] = field(default_factory=list)
    metadata: dict = field(default_factory=dict)

    @property
    def is_degenerate(self) -> bool:
        return any(n.kind == "degenerate" for n in self.notices)

    def to_dict(self) -> dict:
        crossings = None if self.crossings is None else [c.to_dict() for c in self.crossings]
        return {
            "schema_version": SCHEMA_VERSION,
            "metadata": dict(self.metadata),
            "input": {
                "expression": format_tf(self.tf),
                "source_text": self.source_text,
                "document": to_document(self.tf),
            },
            "endpoints": {"start": self.start.to_dict(), "end": self.end.to_dict()},
            "delta_tables": {
                "start": self.start_series.to_dict(),
                "end": self.end_series.to_dict(),
            },
            "behaviors": {
                "exit": self.exit.to_dict(),
                "entry": self.entry.to_dict(),
                "exit_lifted": self.exit_lifted.to_dict(),
                "entry_lifted": self.entry_lifted.to_dict(),
            },
            "crossings": {"method": CROSSING_METHOD, "points": crossings},
            "asymptote": None if self.asymptote is None else self.asymptote.to_dict(),
            "tangents": {
                "start": None if self.start_tangent is None else self.start_tangent.to_dict(),
                "end": None if self.end_tangent is None else self.end_tangent.to_dict(),
            },
            "notices": [n.to_dict() for n in self.notices],
        }

    def to_json(self, indent: int = 2) -> str:
        return json.dumps(self.to_dict(), indent=indent)

    @classmethod
    def from_dict(cls, d: dict) -> "QualitativeReport":
        version = d.get("schema_version", SCHEMA_VERSION)
        if version > SCHEMA_VERSION:
            raise ValueError(f"report schema {version} is newer than supported ({SCHEMA_VERSION})")
        pts = d["crossings"]["points"]
        tangents = d.get("tangents", {})
        asym = d.get("asymptote")
        return cls(
            tf=from_document(d["input"]["document"]),
            source_text=d["input"].get("source_text"),
            start=EndpointSummary.from_dict(d["endpoints"]["start"]),
            end=EndpointSummary.from_dict(d["endpoints"]["end"]),
            start_series=DeltaTauSeries.from_dict(d["delta_tables"]["start"]),
            end_series=DeltaTauSeries.from_dict(d["delta_tables"]["end"]),
            exit=EndpointBehavior.from_dict(d["behaviors"]["exit"]),
            entry=EndpointBehavior.from_dict(d["behaviors"]["entry"]),
            exit_lifted=LiftedBehavior.from_dict(d["behaviors"]["exit_lifted"]),
            entry_lifted=LiftedBehavior.from_dict(d["behaviors"]["entry_lifted"]),
            crossings=None if pts is None else [AxisCrossing.from_dict(p) for p in pts],
            asymptote=None if asym is None else Asymptote.from_dict(asym),
            start_tangent=None
            if tangents.get("start") is None
            else TangentVector.from_dict(tangents["start"]),
            end_tangent=None
            if tangents.get("end") is None
            else TangentVector.from_dict(tangents["end"]),
            notices=[Notice.from_dict(n) for n in d.get("notices", [])],
            metadata=dict(d.get("metadata", {})),
        )

    @classmethod
    def from_json(cls, text: str) -> "QualitativeReport":
        return cls.from_dict(json.loads(text))


def _notices(tf, series, exit_b, entry_b, crossings) -> List[Notice]:
    out = []
    if tf.is_constant():
        out.append(
            Notice("degenerate", "constant", "constant transfer function: the plot is a single point")
        )
        return out
    if series.degenerate_imag:
        out.append(
            Notice("degenerate", "real_response", "G(jw) is real at every frequency")
        )
    if series.degenerate_modulus:
        out.append(
            Notice("degenerate", "constant_modulus", "|G(jw)| is constant (all-pass factor)")
        )
    if crossings is None and not series.degenerate_imag:
        out.append(
            Notice("degenerate", "on_axis", "the full response is real at every frequency")
        )
    for b, where in ((exit_b, "start"), (entry_b, "end")):
        if b.modulus_borderline and not series.degenerate_modulus:
            agree = b.modulus_trend_exact is b.modulus_trend
            out.append(
                Notice(
                    "caveat",
                    f"modulus_borderline_{where}",
                    f"modulus trend at the {where} point comes from the even-term rule "
                    f"where the odd term is not of higher order; exact trend is "
                    f"{b.modulus_trend_exact.value}" + ("" if agree else " (differs)"),
                )
            )
    return out


def build_report(
    tf: TransferFunction, order: Optional[int] = None, expression: Optional[str] = None
) -> QualitativeReport:
    """Run every analysis on ``tf`` and collect the results.

    ``order`` overrides the Taylor truncation used for the printed tables;
    first nonzero indices are exact regardless.
    """
    start, end = endpoints(tf)
    dual = dualize(tf)
    s_series = delta_tau_series(tf, order)
    e_series = delta_tau_series(dual, order)
    exit_b = classify_exit(tf, s_series)
    entry_b = classify_entry(tf, e_series)
    try:
        crossings = real_axis_crossings(tf)
    except DegenerateOnAxis:
        crossings = None
    t0, t1 = tangent_vectors(tf)
    return QualitativeReport(
        tf=tf,
        source_text=expression,
        start=start,
        end=end,
        start_series=s_series,
        end_series=e_series,
        exit=exit_b,
        entry=entry_b,
        exit_lifted=lift_to_gbar(exit_b, tf),
        entry_lifted=lift_to_gbar(entry_b, tf),
        crossings=crossings,
        asymptote=asymptote_abscissa(tf),
        start_tangent=t0,
        end_tangent=t1,
        notices=_notices(tf, s_series, exit_b, entry_b, crossings),
        metadata={"tool": TOOL, "version": __version__},
    )
