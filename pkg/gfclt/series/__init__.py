from .truncated import (
    TruncatedSeries2,
    borel_z,
    dy,
    dz,
    eval_y,
    inverse_borel_z,
    ps_div,
    ps_exp,
    ps_log1p,
    ps_mul,
    ps_reciprocal,
    ps_sqrt,
    shift_y,
    theta,
)
from .uni import UniSeries
