"""Exception hierarchy shared by all privgp modules."""

import numpy as np


class PrivGPError(Exception):
    """Base class for every error raised by privgp."""

    code = "privgp_error"


class InvalidInput(PrivGPError, ValueError):
    code = "invalid_input"


class NotPositiveDefinite(PrivGPError, np.linalg.LinAlgError):
    code = "not_positive_definite"


class NotPSD(PrivGPError, ValueError):
    code = "not_psd"


class InvalidTolerance(InvalidInput):
    """A privacy tolerance is outside ``(0, K(s, s))``."""

    code = "invalid_tolerance"


class InvalidXi(InvalidInput):
    """A target covariance is not PSD or does not leave ``K_SS - Xi`` positive definite."""

    code = "invalid_xi"


class NotIntegrable(PrivGPError, ValueError):
    """The whole-space inner-product integral diverges for this kernel pair."""

    code = "not_integrable"


class FormatError(PrivGPError, ValueError):
    """A serialized artifact is malformed, tampered with, or of the wrong version."""

    code = "format_error"


class StageError(PrivGPError):
    """Wraps an error raised inside one stage of the release pipeline."""

    code = "stage_error"

    def __init__(self, stage, cause):
        super().__init__(f"[{stage}] {type(cause).__name__}: {cause}")
        self.stage = stage
        self.cause = cause
