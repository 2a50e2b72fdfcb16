"""Exponentially improved asymptotics of Kummer's function on its Stokes line."""
from .bigeval import PrecisionPolicy, big_gamma, kummer_m, terminant_on_stokes
from .exactseries import GammaPoly, LaurentSeries, PowerSeries, g_polys, ghat_check, tau_series
from .stokes import (
    KummerParams,
    StokesReport,
    TruncationChoice,
    algebraic_h,
    choose_m0,
    coeff_a,
    coeff_b,
    residual_f,
    stokes_report,
    terminant_consistency,
)
from .wright import WrightParams, wright_c_coeffs, wright_integral, wright_multiplier, wright_series

__version__ = "0.1.0"
