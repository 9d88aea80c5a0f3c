"""Threshold singularities of 1D gapless models from universal formfactors."""

from .channels import (
    Branch,
    ChannelKind,
    ChannelSpec,
    DegenerateChannelError,
    ExponentSet,
    LuttingerParams,
    OmegaSign,
    all_channels,
    epsilon_lower,
    epsilon_upper,
    exponents_for_channel,
    threshold_energy,
)
from .formfactors import (
    GammaPoleError,
    LogSignedValue,
    ParticleHoleConfig,
    enumerate_configs,
    formfactor,
    hole_channel_configs,
    shift_reduction_check,
    smooth_factor_f,
    smooth_factor_f_asymptotic,
    sum_rule_bruteforce,
    sum_rule_closed,
)
from .spectral import (
    BinSpec,
    FitWindowError,
    Histogram,
    PowerLawFit,
    SpectralPoint,
    ThresholdNotIntegrableError,
    amplitude_ratio,
    c0_from_prefactor,
    channel_normalization,
    continuum_hole,
    continuum_particle,
    continuum_particle_via_kdep,
    default_bins,
    drift_velocity,
    dsf_step,
    finite_L_sum,
    kdep_formfactor,
    power_fit,
    prefactor_from_c0,
    resolve_ff_norm,
)

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]
