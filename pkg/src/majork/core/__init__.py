from .affine import PiecewiseAffine, affine_region
from .intervals import Interval, IntervalSet, closed_open
from .io import load_seq, seq_from_json, seq_to_json
from .scalar import INF, TAU, Mode, Scalar, parse_scalar
from .seq import (
    Seq,
    head_power_sum,
    head_sum,
    rearrange,
    tail_power_sum,
    total_power_sum,
)
from .stepfn import Profile, StepFn, step_integral, step_power

__all__ = [
    "INF", "TAU", "Interval", "IntervalSet", "Mode", "PiecewiseAffine", "Profile",
    "Scalar", "Seq", "StepFn", "affine_region", "closed_open", "head_power_sum",
    "head_sum", "load_seq", "parse_scalar", "rearrange", "seq_from_json",
    "seq_to_json", "step_integral", "step_power", "tail_power_sum", "total_power_sum",
]
