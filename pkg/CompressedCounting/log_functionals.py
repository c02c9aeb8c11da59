#  Copyright 2026 The CompressedCounting Authors
#
#  Licensed under the Apache License, Version 2.0 (the "License");
#  you may not use this file except in compliance with the License.
#  You may obtain a copy of the License at
#
#      http://www.apache.org/licenses/LICENSE-2.0
#
#  Unless required by applicable law or agreed to in writing, software
#  distributed under the License is distributed on an "AS IS" BASIS,
#  WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
#  See the License for the specific language governing permissions and
#  limitations under the License.
# ******************************************************************************
#
# File: log_functionals.py
#
# Initially created by the CompressedCounting team / July 2026
#
# Logarithmic norm sum_i log A[i] and logarithmic distance
# sum_i log|A[i] - B[i]| from the alpha-th moment at small alpha:
#
#    (D/alpha) log(F_(alpha)/D) -> sum_i log A[i]   (alpha -> 0)
#
# with D the number of (strictly positive) entries. The approximation error
# is of order alpha.
#
# History:
#
# 2026-07-02:
#  - initial version
#
# 2026-08-21:
#  - Tail bounds of the log norm with harmonic or geometric mean constants.
#
# ******************************************************************************

import math
from dataclasses import dataclass
from typing import Optional

from CompressedCounting.cc_errors import CConfigError, CDegenerateInputError, CDomainError
from CompressedCounting.complexity_bounds import TailSide, solve_tail, tail_probability
from CompressedCounting.estimators import EstimatorId, estimate_hm_c, estimate_sym_gm
from CompressedCounting.stable_sampler import AlphaParam, ProjectionKind

LOG_FUNCTIONAL_ALPHA_MAX = 0.1
DEFAULT_LOG_ALPHA = 0.01

@dataclass(frozen=True)
class LogNormEstimate:
   """
Estimate of a logarithmic norm (or distance) of a signal with ``dimension``
non-zero entries. The tail bounds refer to the moment domain event
``F_hat >= (1+eps) F`` resp. ``F_hat <= (1-eps) F`` with the transformed
deviations and are only set when requested.
   """
   value: float
   alpha_used: float
   dimension: int
   moment_estimate: float
   bound_right: Optional[float] = None
   bound_left: Optional[float] = None

def _check_dimension(dimension):
   if isinstance(dimension, bool) or not isinstance(dimension, int) or dimension < 1:
      raise CDomainError(f"dimension must be a positive integer, got {dimension!r}")
   return dimension

def _check_log_alpha(alpha):
   oAlpha = AlphaParam.of(alpha)
   if oAlpha.alpha > LOG_FUNCTIONAL_ALPHA_MAX:
      raise CConfigError(f"log functionals require alpha <= {LOG_FUNCTIONAL_ALPHA_MAX}, got {oAlpha.alpha}")
   return oAlpha

def log_norm_from_moment(moment_estimate, alpha, dimension):
   """
Log transform ``(D/alpha) log(F/D)`` of a moment (estimate).

**Arguments:**

*  ``moment_estimate``

   / *Condition*: required / *Type*: float /

   Exact or estimated moment ``F_(alpha)``, positive.

*  ``alpha``

   / *Condition*: required / *Type*: float /

   Moment order, small and positive.

*  ``dimension``

   / *Condition*: required / *Type*: int /

   Number of strictly positive signal entries.

**Returns:**

*  ``fLogNorm``

   / *Type*: float /
   """
   iDimension = _check_dimension(dimension)
   fAlpha = float(alpha)
   if not (fAlpha > 0.0):
      raise CDomainError(f"alpha must be positive, got {alpha!r}")
   fMoment = float(moment_estimate)
   if not (fMoment > 0.0) or not math.isfinite(fMoment):
      raise CDegenerateInputError(f"log norm needs a positive finite moment, got {moment_estimate!r}")
   return iDimension / fAlpha * math.log(fMoment / iDimension)

def log_norm_tail_bounds(alpha, epsilon, dimension, f_alpha_hint, k, estimator="hm"):
   """
Tail probability bounds of the log norm estimate from ``k`` samples.

The log norm deviates by ``eps D/alpha`` when the moment estimate deviates
by the factor ``(F/D)^eps``; the bounds are

   right: ``exp(-k ((F/D)^eps - 1)^2 / G_R)``
   left:  ``exp(-k (1 - (D/F)^eps)^2 / G_L)``

with ``G_R``/``G_L`` solved at the transformed deviations. A transformed
deviation which is not positive gives the trivial bound 1.

**Arguments:**

*  ``alpha``

   / *Condition*: required / *Type*: AlphaParam or float /

*  ``epsilon``

   / *Condition*: required / *Type*: float /

*  ``dimension``

   / *Condition*: required / *Type*: int /

*  ``f_alpha_hint``

   / *Condition*: required / *Type*: float /

   (Estimated) moment ``F_(alpha)``.

*  ``k``

   / *Condition*: required / *Type*: int /

   Number of samples of the sketch.

*  ``estimator``

   / *Condition*: optional / *Type*: str / *Default*: 'hm' /

   ``hm`` for the harmonic mean constants, ``gm_b`` for the geometric mean
   constants.

**Returns:**

*  ``(fRight, fLeft)``

   / *Type*: tuple /
   """
   oAlpha = AlphaParam.of(alpha)
   iDimension = _check_dimension(dimension)
   fEpsilon = float(epsilon)
   if not (fEpsilon > 0.0):
      raise CDomainError(f"epsilon must be positive, got {epsilon!r}")
   fMoment = float(f_alpha_hint)
   if not (fMoment > 0.0) or not math.isfinite(fMoment):
      raise CDegenerateInputError(f"moment hint must be positive and finite, got {f_alpha_hint!r}")
   fLogRatio = math.log(fMoment / iDimension)

   fBoundRight = 1.0
   fRightDeviation = math.expm1(fEpsilon * fLogRatio)
   if fRightDeviation > 0.0:
      oReport = solve_tail(oAlpha, fRightDeviation, TailSide.RIGHT, estimator)
      fBoundRight = tail_probability(oReport, k)

   fBoundLeft = 1.0
   fLeftDeviation = -math.expm1(-fEpsilon * fLogRatio)
   if fLeftDeviation > 0.0:
      oReport = solve_tail(oAlpha, fLeftDeviation, TailSide.LEFT, estimator)
      fBoundLeft = tail_probability(oReport, k)
   return fBoundRight, fBoundLeft

def estimate_log_norm(sketch, dimension, epsilon=None):
   """
Logarithmic norm ``sum_i log A[i]`` of a strictly positive signal from a
skewed sketch with ``alpha <= 0.1`` (bias corrected harmonic mean).

The signal entries must all be strictly positive; this cannot be verified
from the sketch. With ``epsilon`` the harmonic mean tail bounds for the
sketch size are attached, computed from the estimated moment.

**Arguments:**

*  ``sketch``

   / *Condition*: required / *Type*: CSketch /

*  ``dimension``

   / *Condition*: required / *Type*: int /

*  ``epsilon``

   / *Condition*: optional / *Type*: float / *Default*: None /

**Returns:**

*  ``oEstimate``

   / *Type*: LogNormEstimate /
   """
   oConfig = sketch.config
   if oConfig.kind is not ProjectionKind.SKEWED:
      raise CConfigError("log norm estimation requires a skewed sketch")
   oAlpha = _check_log_alpha(oConfig.alpha)
   oMoment = estimate_hm_c(sketch.samples(), oAlpha)
   fValue = log_norm_from_moment(oMoment.value, oAlpha.alpha, dimension)
   fBoundRight = fBoundLeft = None
   if epsilon is not None:
      fBoundRight, fBoundLeft = log_norm_tail_bounds(oAlpha, epsilon, dimension, oMoment.value,
                                                     oConfig.k, EstimatorId.HM)
   return LogNormEstimate(fValue, oAlpha.alpha, dimension, oMoment.value, fBoundRight, fBoundLeft)

def estimate_log_distance(sketch_a_minus_b, dimension):
   """
Logarithmic distance ``sum_i log|A[i] - B[i]|`` from a symmetric sketch of
the difference stream (updates of ``B`` ingested with negated increments).
   """
   oConfig = sketch_a_minus_b.config
   if oConfig.kind is not ProjectionKind.SYMMETRIC:
      raise CConfigError("log distance estimation requires a symmetric sketch")
   oAlpha = _check_log_alpha(oConfig.alpha)
   oMoment = estimate_sym_gm(sketch_a_minus_b.samples(), oAlpha)
   fValue = log_norm_from_moment(oMoment.value, oAlpha.alpha, dimension)
   return LogNormEstimate(fValue, oAlpha.alpha, dimension, oMoment.value)
