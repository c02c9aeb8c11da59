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
# File: estimators.py
#
# Initially created by the CompressedCounting team / June 2026
#
# Estimators of the frequency moment F from the k samples of a sketch:
#
#   GM     unbiased geometric mean            prod|x_j|^(alpha/k) / D_gm
#   GM_B   asymptotic geometric mean          exp(gamma_e(alpha-1)) cos(kappa pi/2) prod|x_j|^(alpha/k)
#   HM     harmonic mean (alpha < 1)          k cos(alpha pi/2)/Gamma(1+alpha) / sum|x_j|^-alpha
#   HM_C   bias corrected harmonic mean       HM (1 - V_hm/k)
#   SYM_GM geometric mean of symmetric projections
#
# Products and powers are evaluated in log-space, sums with math.fsum so
# that every estimator is an exact symmetric function of the samples.
#
# History:
#
# 2026-06-05:
#  - initial version
#
# 2026-09-03:
#  - Add exact finite k variance of the geometric mean for any skewness.
#
# ******************************************************************************

import math
from dataclasses import dataclass
from enum import Enum

import numpy as np

from CompressedCounting.cc_errors import (CDegenerateInputError, CDomainError,
                                          CUnsupportedEstimatorError)
from CompressedCounting.logger import Logger
from CompressedCounting.special_functions import EULER_GAMMA, ln_gamma
from CompressedCounting.stable_sampler import AlphaParam, ProjectionKind, fractional_moment

class EstimatorId(Enum):
   GM = "gm"
   GM_B = "gm_b"
   HM = "hm"
   HM_C = "hm_c"
   SYM_GM = "sym_gm"

   @classmethod
   def of(cls, value):
      if isinstance(value, EstimatorId):
         return value
      try:
         return cls(str(value).strip().lower())
      except ValueError:
         raise CUnsupportedEstimatorError(f"Estimator '{value}' is not supported, "
                                          f"use one of {[oId.value for oId in cls]}")

@dataclass(frozen=True)
class Estimate:
   """
Point estimate of the frequency moment.

``asymptotic_stderr`` is ``value * sqrt(V/k)`` with the leading order
variance factor ``V`` of the estimator. ``degenerate`` is set when the samples
contain exact zeros (a degenerate or empty stream) or values outside the
double range.
   """
   value: float
   estimator_id: EstimatorId
   alpha: AlphaParam
   k: int
   asymptotic_stderr: float
   degenerate: bool = False

def _prepare_samples(samples):
   arSamples = np.asarray(samples, dtype=np.float64).ravel()
   if arSamples.size < 2:
      raise CDomainError(f"at least 2 samples are required, got {arSamples.size}")
   if np.any(np.isnan(arSamples)):
      raise CDegenerateInputError("samples contain NaN values")
   return arSamples

def _make_estimate(fValue, oId, oAlpha, iK, fVarianceFactor, bDegenerate=False):
   if math.isfinite(fValue):
      fStderr = fValue * math.sqrt(fVarianceFactor / iK)
   else:
      fStderr = math.inf
   return Estimate(fValue, oId, oAlpha, iK, fStderr, bDegenerate)

def _geometric_mean_estimate(arSamples, oAlpha, fLogConstant, oId, fVarianceFactor):
   """
exp(log constant + (alpha/k) sum log|x_j|) with the zero/overflow short cuts.
   """
   iK = arSamples.size
   arAbs = np.abs(arSamples)
   if np.any(arAbs == 0.0):
      return _make_estimate(0.0, oId, oAlpha, iK, fVarianceFactor, True)
   if np.any(np.isinf(arAbs)):
      return _make_estimate(math.inf, oId, oAlpha, iK, fVarianceFactor, True)
   fLogSum = math.fsum(np.log(arAbs))
   fValue = math.exp(fLogConstant + (oAlpha.alpha / iK) * fLogSum)
   return _make_estimate(fValue, oId, oAlpha, iK, fVarianceFactor)

def _log_stable_bracket(fAlpha, fKappa, iK):
   return iK * (math.log(math.cos(fKappa * math.pi / (2.0 * iK)))
                + math.log(2.0 / math.pi)
                + math.log(math.sin(math.pi * fAlpha / (2.0 * iK)))
                + ln_gamma(1.0 - 1.0 / iK)
                + ln_gamma(fAlpha / iK))

def _check_k(k):
   if isinstance(k, bool) or not isinstance(k, (int, np.integer)) or k < 2:
      raise CDomainError(f"k must be an integer >= 2, got {k!r}")
   return int(k)

def gm_limit_bracket(alpha, k):
   """
``[cos(kappa pi/2k) (2/pi) Γ(alpha/k) Γ(1-1/k) sin(pi alpha/2k)]^k``.

Decreases monotonically in ``k`` towards ``exp(-gamma_e (alpha-1))``.
   """
   oAlpha = AlphaParam.of(alpha)
   return math.exp(_log_stable_bracket(oAlpha.alpha, oAlpha.kappa, _check_k(k)))

def log_gm_denominator(alpha, k):
   oAlpha = AlphaParam.of(alpha)
   iK = _check_k(k)
   return (_log_stable_bracket(oAlpha.alpha, oAlpha.kappa, iK)
           - math.log(math.cos(oAlpha.kappa * math.pi / 2.0)))

def gm_denominator(alpha, k):
   """
Unbiasing constant of the geometric mean estimator

``D_gm = cos^k(kappa pi/2k) / cos(kappa pi/2) * [(2/pi) sin(pi alpha/2k) Γ(1-1/k) Γ(alpha/k)]^k``

computed in log-space.

**Arguments:**

*  ``alpha``

   / *Condition*: required / *Type*: AlphaParam or float /

*  ``k``

   / *Condition*: required / *Type*: int /

   Number of samples, at least 2.

**Returns:**

*  ``D_gm``

   / *Type*: float /
   """
   return math.exp(log_gm_denominator(alpha, k))

def log_sym_gm_denominator(alpha, k):
   oAlpha = AlphaParam.of(alpha)
   iK = _check_k(k)
   return iK * (math.log(2.0 / math.pi)
                + math.log(math.sin(math.pi * oAlpha.alpha / (2.0 * iK)))
                + ln_gamma(1.0 - 1.0 / iK)
                + ln_gamma(oAlpha.alpha / iK))

def sym_gm_denominator(alpha, k):
   """
``D_sym = [(2/pi) sin(pi alpha/2k) Γ(1-1/k) Γ(alpha/k)]^k``, the unbiasing
constant for symmetric projections.
   """
   return math.exp(log_sym_gm_denominator(alpha, k))

def variance_factor_gm(alpha):
   """
Asymptotic variance factor ``(pi^2/12)(alpha^2 + 2 - 3 kappa^2)`` of the
geometric mean estimators: ``Var = V F^2 / k``.
   """
   oAlpha = AlphaParam.of(alpha)
   return (math.pi ** 2 / 12.0) * (oAlpha.alpha ** 2 + 2.0 - 3.0 * oAlpha.kappa ** 2)

def variance_factor_sym_gm(alpha):
   """
Asymptotic variance factor ``(pi^2/12)(alpha^2 + 2)`` of the geometric mean
estimator on symmetric projections.
   """
   oAlpha = AlphaParam.of(alpha)
   return (math.pi ** 2 / 12.0) * (oAlpha.alpha ** 2 + 2.0)

def variance_factor_hm(alpha):
   """
Variance factor ``2 Γ^2(1+alpha)/Γ(1+2 alpha) - 1`` of the bias corrected
harmonic mean estimator (``alpha < 1`` only).
   """
   oAlpha = _require_alpha_below_one(alpha, "harmonic mean")
   fAlpha = oAlpha.alpha
   return 2.0 * math.exp(2.0 * ln_gamma(1.0 + fAlpha) - ln_gamma(1.0 + 2.0 * fAlpha)) - 1.0

def variance_gm_exact(alpha, k, beta=1.0):
   """
Exact relative variance ``Var(F_gm)/F^2 = M(2 alpha/k)^k / M(alpha/k)^2k - 1``
of the unbiased geometric mean estimator for finite ``k``, where ``M`` is the
fractional moment of ``S(alpha, beta, 1)``.

For ``alpha < 1`` the variance decreases with the skewness ``beta``, so
``beta = 1`` is the best choice.

**Arguments:**

*  ``alpha``

   / *Condition*: required / *Type*: AlphaParam or float /

*  ``k``

   / *Condition*: required / *Type*: int /

   Number of samples, at least 3 (the second moment needs ``2 alpha/k < alpha``).

*  ``beta``

   / *Condition*: optional / *Type*: float / *Default*: 1.0 /

**Returns:**

*  ``variance``

   / *Type*: float /
   """
   oAlpha = AlphaParam.of(alpha)
   iK = _check_k(k)
   if iK < 3:
      raise CDomainError("the geometric mean estimator has finite variance only for k >= 3")
   fLam = oAlpha.alpha / iK
   fLogRatio = (iK * math.log(fractional_moment(oAlpha, beta, 2.0 * fLam))
                - 2.0 * iK * math.log(fractional_moment(oAlpha, beta, fLam)))
   return math.expm1(fLogRatio)

def estimate_gm(samples, alpha):
   """
Unbiased geometric mean estimator ``prod|x_j|^(alpha/k) / D_gm`` (skewed
projections).

An exact zero sample short-circuits the estimate to 0 with ``degenerate`` set.

**Arguments:**

*  ``samples``

   / *Condition*: required / *Type*: sequence of float /

   Sketch accumulators, at least 2.

*  ``alpha``

   / *Condition*: required / *Type*: AlphaParam or float /

**Returns:**

*  ``oEstimate``

   / *Type*: Estimate /
   """
   oAlpha = AlphaParam.of(alpha)
   arSamples = _prepare_samples(samples)
   fLogConstant = -log_gm_denominator(oAlpha, arSamples.size)
   return _geometric_mean_estimate(arSamples, oAlpha, fLogConstant, EstimatorId.GM,
                                   variance_factor_gm(oAlpha))

def estimate_gm_b(samples, alpha):
   """
Asymptotic geometric mean estimator
``exp(gamma_e (alpha-1)) cos(kappa pi/2) prod|x_j|^(alpha/k)``; biased for
finite ``k``, carries the geometric mean tail bounds.
   """
   oAlpha = AlphaParam.of(alpha)
   arSamples = _prepare_samples(samples)
   fLogConstant = (EULER_GAMMA * (oAlpha.alpha - 1.0)
                   + math.log(math.cos(oAlpha.kappa * math.pi / 2.0)))
   return _geometric_mean_estimate(arSamples, oAlpha, fLogConstant, EstimatorId.GM_B,
                                   variance_factor_gm(oAlpha))

def estimate_sym_gm(samples, alpha):
   """
Unbiased geometric mean estimator for symmetric projections,
``prod|x_j|^(alpha/k) / D_sym``.
   """
   oAlpha = AlphaParam.of(alpha)
   arSamples = _prepare_samples(samples)
   fLogConstant = -log_sym_gm_denominator(oAlpha, arSamples.size)
   return _geometric_mean_estimate(arSamples, oAlpha, fLogConstant, EstimatorId.SYM_GM,
                                   variance_factor_sym_gm(oAlpha))

def _require_alpha_below_one(alpha, sEstimator):
   oAlpha = AlphaParam.of(alpha)
   if oAlpha.alpha >= 1.0:
      raise CUnsupportedEstimatorError(f"The {sEstimator} estimator requires alpha < 1, got {oAlpha.alpha}")
   return oAlpha

def _harmonic_mean_estimate(samples, alpha, oId):
   oAlpha = _require_alpha_below_one(alpha, "harmonic mean")
   arSamples = _prepare_samples(samples)
   iK = arSamples.size
   fAlpha = oAlpha.alpha
   fVarianceFactor = variance_factor_hm(oAlpha)
   arAbs = np.abs(arSamples)
   if np.any(arAbs == 0.0):
      return None, _make_estimate(0.0, oId, oAlpha, iK, fVarianceFactor, True)
   # |x|^-alpha of an infinite sample is 0
   with np.errstate(over='ignore'):
      fInverseSum = math.fsum(np.exp(-fAlpha * np.log(arAbs)))
   bDegenerate = bool(np.any(np.isinf(arAbs)))
   if fInverseSum == 0.0:
      return None, _make_estimate(math.inf, oId, oAlpha, iK, fVarianceFactor, True)
   fValue = iK * math.cos(fAlpha * math.pi / 2.0) / math.exp(ln_gamma(1.0 + fAlpha)) / fInverseSum
   return fValue, _make_estimate(fValue, oId, oAlpha, iK, fVarianceFactor, bDegenerate)

def estimate_hm(samples, alpha):
   """
Harmonic mean estimator ``k cos(alpha pi/2)/Γ(1+alpha) / sum|x_j|^-alpha``
(skewed projections, ``alpha < 1``).

**Arguments:**

*  ``samples``

   / *Condition*: required / *Type*: sequence of float /

*  ``alpha``

   / *Condition*: required / *Type*: AlphaParam or float /

   Moment order below 1.

**Returns:**

*  ``oEstimate``

   / *Type*: Estimate /
   """
   _, oEstimate = _harmonic_mean_estimate(samples, alpha, EstimatorId.HM)
   return oEstimate

def estimate_hm_c(samples, alpha):
   """
Bias corrected harmonic mean estimator ``HM (1 - (2Γ^2(1+alpha)/Γ(1+2alpha) - 1)/k)``,
bias O(1/k^2).
   """
   fValue, oEstimate = _harmonic_mean_estimate(samples, alpha, EstimatorId.HM_C)
   if fValue is None:
      return oEstimate
   fCorrected = fValue * (1.0 - variance_factor_hm(oEstimate.alpha) / oEstimate.k)
   return _make_estimate(fCorrected, EstimatorId.HM_C, oEstimate.alpha, oEstimate.k,
                         variance_factor_hm(oEstimate.alpha), oEstimate.degenerate)

ESTIMATOR_FUNCTIONS = {
   EstimatorId.GM     : estimate_gm,
   EstimatorId.GM_B   : estimate_gm_b,
   EstimatorId.HM     : estimate_hm,
   EstimatorId.HM_C   : estimate_hm_c,
   EstimatorId.SYM_GM : estimate_sym_gm,
}

def resolve_estimator(estimator, alpha, kind):
   """
Estimator for a sketch of the given ``alpha`` and projection ``kind``.

``auto`` selects ``sym_gm`` for symmetric projections, ``hm_c`` for skewed
projections with ``alpha < 1`` and ``gm`` otherwise.
   """
   oAlpha = AlphaParam.of(alpha)
   oKind = ProjectionKind.of(kind)
   if estimator is None or str(estimator).strip().lower() == "auto":
      if oKind is ProjectionKind.SYMMETRIC:
         return EstimatorId.SYM_GM
      return EstimatorId.HM_C if oAlpha.alpha < 1.0 else EstimatorId.GM
   oId = EstimatorId.of(estimator)
   if oId is EstimatorId.SYM_GM and oKind is not ProjectionKind.SYMMETRIC:
      raise CUnsupportedEstimatorError("The sym_gm estimator requires symmetric projections")
   if oId is not EstimatorId.SYM_GM and oKind is not ProjectionKind.SKEWED:
      raise CUnsupportedEstimatorError(f"The {oId.value} estimator requires skewed projections")
   if oId in (EstimatorId.HM, EstimatorId.HM_C):
      _require_alpha_below_one(oAlpha, "harmonic mean")
   return oId

def estimate(sketch, estimator="auto"):
   """
Estimate the frequency moment of the signal summarised by ``sketch``.

**Arguments:**

*  ``sketch``

   / *Condition*: required / *Type*: CSketch /

*  ``estimator``

   / *Condition*: optional / *Type*: str or EstimatorId / *Default*: 'auto' /

**Returns:**

*  ``oEstimate``

   / *Type*: Estimate /
   """
   oConfig = sketch.config
   oId = resolve_estimator(estimator, oConfig.alpha, oConfig.kind)
   oEstimate = ESTIMATOR_FUNCTIONS[oId](sketch.samples(), oConfig.alpha)
   if oEstimate.degenerate:
      Logger.log_warning(f"Degenerate sketch for estimator '{oId.value}' "
                         f"(zero or non-finite accumulators), estimate is {oEstimate.value}")
   return oEstimate
