"""Likelihood-free inference for a Gaussian mean: rejection ABC, ABC-MCMC and
sequential ABC-PRC with and without kernel-density weight correction."""

from .diagnostics import ConvergenceTrace, build_trace, ks_statistic, posterior_stats
from .errors import (
    ABCError,
    BudgetExceededError,
    DegenerateWeightsError,
    InvalidInputError,
    ScheduleParseError,
)
from .kernels import GaussianKernel, corrected_weights, kernel_density, perturb
from .model import (
    GaussianModelSpec,
    PosteriorSummary,
    UniformPrior,
    analytic_posterior,
    distance,
    simulate_summary,
    summarize,
)
from .rng import RandomStream, derive, next_gaussian, next_uniform
from .samplers import (
    ParticleSet,
    RunTrace,
    SamplerConfig,
    ToleranceSchedule,
    abc_mcmc,
    abc_prc_corrected,
    abc_prc_uncorrected,
    abc_rejection,
    power_posterior_reference,
    resample,
)

__version__ = "0.1.0"
