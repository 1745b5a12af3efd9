from .asymptotics import DecayFitReport, LevyReport, decay_rate_check, levy_check, principal_errors
from .coeffs import PhiSequence, cauchy_z_derivs, kernel_dz, phi_by_quadrature, phi_by_series
from .limits import LimitParams, compute_limits, finite_diff_partials, finite_difference_jet
from .singularity import Singularity, TaylorFitReport, log_b_taylor, principal_part_phi, track_root
