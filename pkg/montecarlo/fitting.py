"""Weighted least-squares exponent fits of -ln p_hat against delay."""

import logging

import numpy as np
import statsmodels.api as sm

from models.data_models import ErrorCurve, ExponentFit
from utils.errors import InsufficientDataError

logger = logging.getLogger(__name__)

# Points with fewer errors than this are too noisy to fit.
MIN_FIT_ERRORS = 10
MIN_FIT_POINTS = 3


def fit_exponent(curve: ErrorCurve, min_errors: int = MIN_FIT_ERRORS) -> ExponentFit:
    """
    Fit -ln p_hat(d) = intercept + slope·d, weighting each point by its errors.

    Raises:
        InsufficientDataError: If fewer than 3 points have ``min_errors`` errors
    """
    usable = [p for p in curve.points if p.errors >= min_errors]
    dropped = len(curve.points) - len(usable)
    if dropped:
        logger.warning(f"Dropping {dropped} curve point(s) with fewer than {min_errors} errors")
    if len(usable) < MIN_FIT_POINTS:
        raise InsufficientDataError(
            f"Only {len(usable)} point(s) with at least {min_errors} errors; need {MIN_FIT_POINTS}"
        )

    d = np.array([p.d for p in usable], dtype=np.float64)
    y = -np.log(np.array([p.p_hat for p in usable]))
    weights = np.array([p.errors for p in usable], dtype=np.float64)

    results = sm.WLS(y, sm.add_constant(d, has_constant="add"), weights=weights).fit()
    intercept, slope = (float(v) for v in results.params)
    stderr = float(results.bse[1])
    logger.info(f"Fitted slope {slope:.4f} ± {stderr:.4f} from {len(usable)} points")
    return ExponentFit(slope=slope, intercept=intercept, stderr=stderr, points_used=len(usable))
