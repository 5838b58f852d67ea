"""Qualitative Nyquist plots from the Taylor coefficients of a transfer function."""

__version__ = "0.1.0"

from .classify import (  # noqa: E402
    ApproachAxis,
    EndpointBehavior,
    LiftedBehavior,
    ModulusTrend,
    PhaseSense,
    approach_direction,
    classify_entry,
    classify_exit,
    lift_to_gbar,
)
from .errors import (  # noqa: E402
    DegenerateOnAxis,
    HypothesisViolated,
    NyquistError,
    OddIndexRequired,
    ParseError,
    ZeroConstantDenominator,
    ZeroDenominator,
    ZeroNumerator,
)
from .features import (  # noqa: E402
    Asymptote,
    AxisCrossing,
    TangentVector,
    asymptote_abscissa,
    default_omega_range,
    real_axis_crossings,
    sweep,
    tangent_vectors,
)
from .poly import Polynomial, PowerSeries, series_div  # noqa: E402
from .taylor import (  # noqa: E402
    DeltaTauSeries,
    delta_tau_series,
    delta_tau_via_nabla,
    g_all,
    g_odd,
    nabla_k,
)
from .xfer import (  # noqa: E402
    EndpointSummary,
    ModulusKind,
    TransferFunction,
    Which,
    dualize,
    endpoints,
    format_tf,
    from_document,
    parse_tf,
    to_document,
)
