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
# File: applications.py
#
# Initially created by the CompressedCounting team / July 2026
#
# Method of moments for the gamma distribution shape theta: for X ~ Gamma(theta, 1)
#
#    E X^alpha = Γ(alpha+theta)/Γ(theta)
#
# so an alpha-th moment estimate (1/D) sum_k x_k^alpha determines theta.
#
# History:
#
# 2026-07-15:
#  - initial version
#
# ******************************************************************************

import math
import sys

from scipy import optimize as scipy_optimize
from scipy import special as scipy_special

from CompressedCounting.cc_errors import CDomainError, CSolverError

THETA_BRACKET = (1e-8, 1e8)
THETA_LIMITS = (1e-300, 1e300)
THETA_RTOL = 1e-10

def _check_positive(value, sName):
   try:
      fValue = float(value)
   except (TypeError, ValueError):
      raise CDomainError(f"{sName} must be a real number, got {value!r}")
   if not (fValue > 0.0) or not math.isfinite(fValue):
      raise CDomainError(f"{sName} must be positive and finite, got {value!r}")
   return fValue

def log_moment_map(theta, alpha):
   """
``log(Γ(alpha+theta)/Γ(theta))``, strictly increasing in ``theta``.
   """
   return float(scipy_special.gammaln(alpha + theta) - scipy_special.gammaln(theta))

def gamma_shape_from_moment(moment_mean, alpha):
   """
Shape ``theta`` with ``Γ(alpha+theta)/Γ(theta) = moment_mean``.

The equation is solved in ``log theta`` with the bracket ``[1e-8, 1e8]``,
expanded geometrically when the root lies outside.

**Arguments:**

*  ``moment_mean``

   / *Condition*: required / *Type*: float /

   Mean of ``x^alpha`` over the samples, positive.

*  ``alpha``

   / *Condition*: required / *Type*: float /

   Moment order, positive.

**Returns:**

*  ``fTheta``

   / *Type*: float /
   """
   fMoment = _check_positive(moment_mean, "moment_mean")
   fAlpha = _check_positive(alpha, "alpha")
   fTarget = math.log(fMoment)

   def fnEquation(fLogTheta):
      return log_moment_map(math.exp(fLogTheta), fAlpha) - fTarget

   fLower, fUpper = THETA_BRACKET
   while fnEquation(math.log(fLower)) > 0.0:
      fLower *= 1e-4
      if fLower < THETA_LIMITS[0]:
         raise CDomainError(f"no positive shape for moment_mean={fMoment}, alpha={fAlpha}")
   while fnEquation(math.log(fUpper)) < 0.0:
      fUpper *= 1e4
      if fUpper > THETA_LIMITS[1]:
         raise CDomainError(f"no positive shape for moment_mean={fMoment}, alpha={fAlpha}")

   try:
      fLogTheta = scipy_optimize.brentq(fnEquation, math.log(fLower), math.log(fUpper),
                                        xtol=1e-15, rtol=4.0 * sys.float_info.epsilon, maxiter=200)
   except (ValueError, RuntimeError) as reason:
      raise CSolverError(f"shape search failed: {reason}",
                         {"moment_mean": fMoment, "alpha": fAlpha})
   # residual of the log equation is the relative residual of the moment map
   fResidual = fnEquation(fLogTheta)
   if abs(fResidual) > THETA_RTOL:
      raise CSolverError("shape equation residual too large",
                         {"moment_mean": fMoment, "alpha": fAlpha, "residual": fResidual})
   return math.exp(fLogTheta)

def gamma_shape_variance(theta, alpha, dimension):
   """
Delta method variance of the shape estimate from ``dimension`` samples:

   ``(1/D) (Γ(2alpha+theta)Γ(theta)/Γ(alpha+theta)^2 - 1) / (ψ(alpha+theta) - ψ(theta))^2``

**Arguments:**

*  ``theta``

   / *Condition*: required / *Type*: float /

*  ``alpha``

   / *Condition*: required / *Type*: float /

*  ``dimension``

   / *Condition*: required / *Type*: int /

**Returns:**

*  ``fVariance``

   / *Type*: float /
   """
   fTheta = _check_positive(theta, "theta")
   fAlpha = _check_positive(alpha, "alpha")
   if isinstance(dimension, bool) or not isinstance(dimension, int) or dimension < 1:
      raise CDomainError(f"dimension must be a positive integer, got {dimension!r}")
   fExcess = math.expm1(scipy_special.gammaln(2.0 * fAlpha + fTheta) + scipy_special.gammaln(fTheta)
                        - 2.0 * scipy_special.gammaln(fAlpha + fTheta))
   fSlope = scipy_special.digamma(fAlpha + fTheta) - scipy_special.digamma(fTheta)
   return float(fExcess / (fSlope * fSlope) / dimension)
