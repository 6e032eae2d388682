from .mcmc import abc_mcmc
from .particles import (
    Checkpoint,
    ParticleSet,
    RunTrace,
    SamplerConfig,
    ScheduleWarning,
    ToleranceSchedule,
    checkpoint_iterations,
    resample,
)
from .prc import abc_prc_corrected, abc_prc_uncorrected, power_posterior_reference
from .rejection import abc_rejection

__all__ = [
    "Checkpoint",
    "ParticleSet",
    "RunTrace",
    "SamplerConfig",
    "ScheduleWarning",
    "ToleranceSchedule",
    "abc_mcmc",
    "abc_prc_corrected",
    "abc_prc_uncorrected",
    "abc_rejection",
    "checkpoint_iterations",
    "power_posterior_reference",
    "resample",
]
