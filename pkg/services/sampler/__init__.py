from .estimator import estimate_moments, gaussian_limit_report
from .haar import TraceSampler, haar_sample_trace, haar_unitary

__all__ = [
    "TraceSampler",
    "estimate_moments",
    "gaussian_limit_report",
    "haar_sample_trace",
    "haar_unitary",
]
