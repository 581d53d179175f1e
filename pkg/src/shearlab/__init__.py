"""Numerical verification laboratory for explicit shear-flow weak solutions of 3d Euler."""
from .errors import (
    ConfigInvalid,
    DegenerateData,
    ExpansionOrderTooHigh,
    ExperimentFailed,
    InvalidBackground,
    InvalidParameters,
    NonDifferentiableProfile,
    QuadratureUnderResolved,
    ShearlabError,
    TooCloseToSheet,
    ZeroMode,
)
from .field import ShearFlow, eval_velocity, eval_velocity_gradient, eval_vorticity
from .profiles import Cusp, PiecewiseConstant, Sampled, SinInverse, Step, Trig, profile_from_spec

__version__ = "0.1.0"
