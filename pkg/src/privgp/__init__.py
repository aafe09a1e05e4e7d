"""Privacy-aware Gaussian-process regression.

Add correlated synthetic noise to training responses so that a released GP
model cannot predict protected outputs more precisely than a chosen
variance floor, while spending as little noise (in trace) as possible.
"""

from .errors import (FormatError, InvalidInput, InvalidTolerance, InvalidXi, NotIntegrable,
                     NotPositiveDefinite, NotPSD, PrivGPError, StageError)
from .gp import Dataset, GPModel, fit_constant_mean_and_variance, log_marginal_likelihood, posterior
from .kernels import KernelSpec, fourier, gram, scaled, sqexp, validate_pair
from .linalg import psd_part, sym_eigen
from .pipeline import PipelineConfig, ReleasedModel, load, release, run, save
from .privacy import (PrivacySpec, SensitiveRegion, check_privacy, compute_noise, diagonal_noise,
                      gram_g_finite, gram_g_grid, gram_g_uniform_stationary, noise_from_gram,
                      single_sensitive_noise, strong_noise, weak_noise)
from .sampling import obfuscate, sample_noise

__version__ = "0.1.0"
