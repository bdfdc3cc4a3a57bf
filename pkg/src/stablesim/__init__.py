"""Simulation and validation of strictly stable and max-stable random vectors
built on the series representation over Poisson arrivals."""

from .analytic import (
    NonPositiveArgument,
    STParams1D,
    StableParams1D,
    c_alpha,
    cauchy_cdf,
    convert_measure,
    convert_parametrization,
    ex1_joint_cdf,
    ex2_joint_cdf,
    ex2_marginal_scale,
    ex3_joint_cdf,
    ex3_ray_mass,
    law_from_params1d,
    max_joint_cdf,
    max_marginal_cdf,
    psi_alpha,
    stable_cf,
    tail_constants,
)
from .arrivals import ArrivalStream, make_rng, next_gamma, radius, spawn_rngs
from .kernels import BACKEND
from .samplers import (
    DegenerateMarginal,
    MaxStableLaw,
    SampleBatch,
    StableLaw,
    TruncationExceeded,
    UnsupportedRegime,
    marginal_scales,
    sample_batch,
    sample_doa_batch,
    sample_doa_sum,
    sample_max_stable,
    sample_max_stable_fixed_k,
    sample_stable,
    tau_first_hit_batch,
)
from .spectral import (
    SpectralMeasure,
    Sphere,
    SphereSubset,
    check_strict_stability,
    check_symmetry,
    contains_directions,
    marginal_alpha_moment,
    measure_from_json,
    measure_of,
    measure_to_json,
    sample_direction,
    sample_directions,
)
from .stats import (
    HistogramGrid,
    TailEstimate,
    TauLawCheck,
    ecdf_eval,
    ecf_eval,
    histogram2d,
    ks_one_sample,
    ks_two_sample,
    tail_measure_estimate,
    tau_law_check,
)

__version__ = "0.1.0"
