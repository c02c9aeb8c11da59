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
# File: complexity_bounds.py
#
# Initially created by the CompressedCounting team / June 2026
#
# Exponential tail bounds
#
#    Pr(F_hat >= (1+eps) F) <= exp(-k eps^2 / G_R)
#    Pr(F_hat <= (1-eps) F) <= exp(-k eps^2 / G_L)
#
# for the asymptotic geometric mean estimator (GM_B) and the harmonic mean
# estimator (HM), and the sample size k = G/eps^2 log(2/delta) which
# guarantees a relative error below eps with probability 1-delta.
#
# The constants come from Chernoff bounds optimised over the moment order:
#  - GM_B: root C of the optimality equation of the log moment bound,
#          searched in (0, 1) (right), (0, 1/alpha) (left, alpha > 1) or
#          (0, inf) in log-space (left, alpha < 1),
#  - HM:   root t of M'(s)/M(s) = 1/(1 +- eps) for the moment generating
#          function M(s) = sum_m Γ(1+alpha)^m / Γ(1+m alpha) s^m of the
#          normalised negative moments.
#
# Expressions which cancel near C = 0 are rewritten with the recurrences
# Γ(1+x) = x Γ(x) and ψ(1+x) = ψ(x) + 1/x.
#
# History:
#
# 2026-06-12:
#  - initial version
#
# 2026-07-30:
#  - Harmonic mean bounds with adaptive series truncation.
#
# 2026-09-14:
#  - Left tail search for alpha < 1 in log-space up to exp(700).
#
# 2026-10-18:
#  - Right tail of the harmonic mean bounds from the Laplace integral of M(-t)
#    for large t, where the alternating series cancels.
#
# ******************************************************************************

import math
from dataclasses import dataclass
from enum import Enum

import numpy as np
from scipy import integrate as scipy_integrate
from scipy import optimize as scipy_optimize
from scipy import special as scipy_special

from CompressedCounting.cc_errors import (CDomainError, CRateOverflowError, CRegimeError,
                                          CSeriesDivergenceError, CSolverError,
                                          CUnsupportedEstimatorError)
from CompressedCounting.estimators import EstimatorId, variance_factor_gm
from CompressedCounting.logger import Logger
from CompressedCounting.special_functions import EULER_GAMMA
from CompressedCounting.stable_sampler import AlphaParam

ROOT_XTOL = 1e-14
ROOT_RTOL = 4.0 * np.finfo(float).eps
ROOT_MAXITER = 200
RESIDUAL_TOL = 1e-10

# smallest C probed when bracketing; the optimality equations have their
# C -> 0 limit there to double precision
C_FLOOR = 1e-12
BRACKET_STEPS = 12

# left tail, alpha < 1: log C_L grows like -log(1-eps)/delta
LOG_C_MAX = 700.0

HM_SERIES_RTOL = 1e-14
HM_SERIES_MAX_TERMS = 100000
HM_SERIES_CHUNK = 512
HM_PRECISION_TOL = 1e-10
HM_T_DOUBLINGS = 60
HM_T_BISECTIONS = 40

# alternating side: beyond this argument Γ(1+alpha)|s| the series cancels
# and M(-t) is taken from its Laplace integral
HM_LAPLACE_SWITCH = 1.0
HM_QUAD_RTOL = 1e-13
HM_QUAD_LIMIT = 200

class TailSide(Enum):
   RIGHT = "right"
   LEFT = "left"

   @classmethod
   def of(cls, value):
      if isinstance(value, TailSide):
         return value
      try:
         return cls(str(value).strip().lower())
      except ValueError:
         raise CDomainError(f"tail side must be 'right' or 'left', got {value!r}")

@dataclass(frozen=True)
class TailBoundReport:
   """
Solved tail bound constant.

``C`` is the optimal moment order (``C_R``/``C_L``) for ``GM_B`` and the
optimal argument ``t*`` of the moment generating function for ``HM``;
``exponent_rate = eps^2 / G`` is the rate of the bound ``exp(-k rate)``.
``residual`` is the value of the optimality equation at the root.
   """
   alpha: AlphaParam
   epsilon: float
   side: TailSide
   estimator: EstimatorId
   C: float
   G: float
   exponent_rate: float
   residual: float = 0.0
   iterations: int = 0

@dataclass(frozen=True)
class SamplePlan:
   """
Sample size ``k = ceil(G/eps^2 log(2/delta))`` (at least 2) with
``G = max(G_R, G_L)``.
   """
   alpha: AlphaParam
   epsilon: float
   delta: float
   estimator: EstimatorId
   G: float
   G_R: float
   G_L: float
   k: int

# --------------------------------------------------------------------------------------------------------------
# common helpers

def _check_epsilon(epsilon, side):
   try:
      fEpsilon = float(epsilon)
   except (TypeError, ValueError):
      raise CDomainError(f"epsilon must be a real number, got {epsilon!r}")
   if not math.isfinite(fEpsilon) or fEpsilon <= 0.0:
      raise CDomainError(f"epsilon must be positive, got {epsilon!r}")
   if side is TailSide.LEFT and fEpsilon >= 1.0:
      raise CDomainError(f"left tail requires 0 < epsilon < 1, got {fEpsilon}")
   return fEpsilon

def _find_root(fnEquation, fLower, fUpper, sName):
   """
Brent's bracketing root search (bisection with secant/inverse quadratic
steps) with residual check.
   """
   fLowerValue = fnEquation(fLower)
   fUpperValue = fnEquation(fUpper)
   dDiagnostics = {"equation": sName, "lower": fLower, "upper": fUpper,
                   "f_lower": fLowerValue, "f_upper": fUpperValue}
   if not (math.isfinite(fLowerValue) and math.isfinite(fUpperValue)) or fLowerValue * fUpperValue > 0.0:
      raise CSolverError(f"root of {sName} is not bracketed", dDiagnostics)
   try:
      fRoot, oResult = scipy_optimize.brentq(fnEquation, fLower, fUpper, xtol=ROOT_XTOL,
                                             rtol=ROOT_RTOL, maxiter=ROOT_MAXITER,
                                             full_output=True, disp=False)
   except (ValueError, RuntimeError) as reason:
      raise CSolverError(f"root search for {sName} failed: {reason}", dDiagnostics)
   if not oResult.converged:
      dDiagnostics["iterations"] = oResult.iterations
      raise CSolverError(f"root search for {sName} did not converge", dDiagnostics)
   fResidual = fnEquation(fRoot)
   if not abs(fResidual) <= RESIDUAL_TOL:
      dDiagnostics.update(root=fRoot, residual=fResidual)
      raise CSolverError(f"residual of {sName} exceeds {RESIDUAL_TOL}", dDiagnostics)
   return fRoot, fResidual, oResult.iterations

def _first_with_sign(fnEquation, lCandidates, iSign):
   """
First candidate where the equation is finite and has sign ``iSign``, or None.
   """
   for fCandidate in lCandidates:
      fValue = fnEquation(fCandidate)
      if math.isfinite(fValue) and fValue * iSign > 0.0:
         return fCandidate
   return None

def _one_minus_z_cot_z(fZ):
   """
``1 - z cot z`` for ``0 < z < pi``; series for small ``z``.
   """
   if fZ < 1e-3:
      fZ2 = fZ * fZ
      return fZ2 / 3.0 + fZ2 * fZ2 / 45.0
   return 1.0 - fZ / math.tan(fZ)

def _log_sinc(fZ):
   """
``log(sin z / z)`` for ``0 <= z < pi``.
   """
   return math.log(np.sinc(fZ / math.pi))

# --------------------------------------------------------------------------------------------------------------
# geometric mean (GM_B) bounds

def _gm_right_equation(oAlpha, fEpsilon):
   fAlpha = oAlpha.alpha
   fKappa = oAlpha.kappa
   fConst = math.log1p(fEpsilon) - EULER_GAMMA * (fAlpha - 1.0)
   def fnEquation(fC):
      fZ = 0.5 * math.pi * fAlpha * fC
      return (fConst
              + 0.5 * math.pi * fKappa * math.tan(0.5 * math.pi * fKappa * fC)
              + _one_minus_z_cot_z(fZ) / fC
              - fAlpha * scipy_special.digamma(1.0 + fAlpha * fC)
              + scipy_special.digamma(1.0 - fC))
   return fnEquation

def _gm_right_rate(oAlpha, fEpsilon, fC):
   fAlpha = oAlpha.alpha
   fKappa = oAlpha.kappa
   fLogMoment = (math.log(math.cos(0.5 * math.pi * fKappa * fC))
                 + scipy_special.gammaln(1.0 - fC)
                 + scipy_special.gammaln(1.0 + fAlpha * fC)
                 + _log_sinc(0.5 * math.pi * fAlpha * fC))
   return fC * (math.log1p(fEpsilon) - EULER_GAMMA * (fAlpha - 1.0)) - fLogMoment

def _gm_left_equation(oAlpha, fEpsilon):
   fAlpha = oAlpha.alpha
   fKappa = oAlpha.kappa
   fConst = math.log1p(-fEpsilon) - EULER_GAMMA * (fAlpha - 1.0)
   bWithTan = fAlpha > 1.0
   def fnEquation(fC):
      fValue = (fConst
                - fAlpha * scipy_special.digamma(1.0 + fAlpha * fC)
                + scipy_special.digamma(1.0 + fC))
      if bWithTan:
         # for alpha < 1 kappa = alpha and both tangent terms cancel
         fValue += (0.5 * math.pi * fAlpha * math.tan(0.5 * math.pi * fAlpha * fC)
                    - 0.5 * math.pi * fKappa * math.tan(0.5 * math.pi * fKappa * fC))
      return fValue
   return fnEquation

def _gm_left_rate(oAlpha, fEpsilon, fC):
   fAlpha = oAlpha.alpha
   fRate = (fC * (EULER_GAMMA * (fAlpha - 1.0) - math.log1p(-fEpsilon))
            + scipy_special.gammaln(1.0 + fAlpha * fC)
            - scipy_special.gammaln(1.0 + fC))
   if fAlpha > 1.0:
      fRate += (math.log(math.cos(0.5 * math.pi * fAlpha * fC))
                - math.log(math.cos(0.5 * math.pi * oAlpha.kappa * fC)))
   return fRate

def gm_right_initial_guess(alpha, epsilon, k=None):
   """
Closed form starting point ``log(1+eps) / ((2+alpha^2-3kappa^2) pi^2/12) + 1/(2k)``
of the right tail moment order (``1/(2k)`` only when ``k`` is given).
   """
   oAlpha = AlphaParam.of(alpha)
   fEpsilon = _check_epsilon(epsilon, TailSide.RIGHT)
   fGuess = math.log1p(fEpsilon) / variance_factor_gm(oAlpha)
   if k is not None:
      fGuess += 1.0 / (2.0 * k)
   return fGuess

def gm_right_log_bound(alpha, epsilon, t, k):
   """
Logarithm of the right tail Chernoff bound of ``GM_B`` for moment order
``t`` (``0 < t < k``) and ``k`` samples; convex in ``t``, minimised at
``t = k C_R``.
   """
   oAlpha = AlphaParam.of(alpha)
   fEpsilon = _check_epsilon(epsilon, TailSide.RIGHT)
   if not (0.0 < t < k):
      raise CDomainError(f"moment order t must be in (0, k), got t={t}, k={k}")
   return -k * _gm_right_rate(oAlpha, fEpsilon, t / k)

def solve_gm_right(alpha, epsilon):
   """
Right tail constant ``G_R`` of the asymptotic geometric mean estimator.

Solves the optimality equation for ``C_R`` in ``(0, 1)`` and returns the
maximised rate ``eps^2 / G_R``.

**Arguments:**

*  ``alpha``

   / *Condition*: required / *Type*: AlphaParam or float /

*  ``epsilon``

   / *Condition*: required / *Type*: float /

   Relative deviation, positive.

**Returns:**

*  ``oReport``

   / *Type*: TailBoundReport /
   """
   oAlpha = AlphaParam.of(alpha)
   fEpsilon = _check_epsilon(epsilon, TailSide.RIGHT)
   fnEquation = _gm_right_equation(oAlpha, fEpsilon)

   fLower = C_FLOOR
   fUpper = _first_with_sign(fnEquation, [1.0 - 10.0 ** -m for m in range(1, BRACKET_STEPS + 1)], -1)
   if fUpper is None:
      raise CSolverError("right tail equation has no sign change in (0, 1)",
                         {"alpha": oAlpha.alpha, "epsilon": fEpsilon,
                          "f_near_one": fnEquation(1.0 - 10.0 ** -BRACKET_STEPS)})
   fGuess = gm_right_initial_guess(oAlpha, fEpsilon)
   if fLower < fGuess < fUpper:
      fGuessValue = fnEquation(fGuess)
      if fGuessValue > 0.0:
         fLower = fGuess
      elif fGuessValue < 0.0:
         fUpper = fGuess

   fC, fResidual, iIterations = _find_root(fnEquation, fLower, fUpper, "right tail equation")
   fRate = _gm_right_rate(oAlpha, fEpsilon, fC)
   return _make_report(oAlpha, fEpsilon, TailSide.RIGHT, EstimatorId.GM_B, fC, fRate, fResidual, iIterations)

def solve_gm_left(alpha, epsilon):
   """
Left tail constant ``G_L`` of the asymptotic geometric mean estimator.

For ``alpha > 1`` the root ``C_L`` lies in ``(0, 1/alpha)``. For ``alpha < 1``
it can be huge (``log C_L`` grows like ``-log(1-eps)/delta``); the search
runs in ``log C`` up to ``LOG_C_MAX`` and raises ``CRateOverflowError``
beyond.

**Arguments:**

*  ``alpha``

   / *Condition*: required / *Type*: AlphaParam or float /

*  ``epsilon``

   / *Condition*: required / *Type*: float /

   Relative deviation in (0, 1).

**Returns:**

*  ``oReport``

   / *Type*: TailBoundReport /
   """
   oAlpha = AlphaParam.of(alpha)
   fEpsilon = _check_epsilon(epsilon, TailSide.LEFT)
   fnEquation = _gm_left_equation(oAlpha, fEpsilon)
   fAlpha = oAlpha.alpha

   if fAlpha > 1.0:
      lCandidates = [(1.0 - 10.0 ** -m) / fAlpha for m in range(1, BRACKET_STEPS + 1)]
      fUpper = _first_with_sign(fnEquation, lCandidates, 1)
      if fUpper is None:
         raise CSolverError("left tail equation has no sign change in (0, 1/alpha)",
                            {"alpha": fAlpha, "epsilon": fEpsilon})
      fC, fResidual, iIterations = _find_root(fnEquation, C_FLOOR, fUpper, "left tail equation")
   else:
      def fnLogEquation(fLogC):
         return fnEquation(math.exp(fLogC))
      fLogLower = math.log(C_FLOOR)
      fLogUpper = None
      fLogCandidate = 0.0
      fStep = 1.0
      while fLogUpper is None:
         fValue = fnLogEquation(fLogCandidate)
         if fValue > 0.0:
            fLogUpper = fLogCandidate
         elif fLogCandidate >= LOG_C_MAX:
            raise CRateOverflowError("left tail moment order exceeds the double range",
                                     {"alpha": fAlpha, "epsilon": fEpsilon,
                                      "log_c": fLogCandidate, "f": fValue})
         else:
            fLogLower = fLogCandidate
            fLogCandidate = min(fLogCandidate + fStep, LOG_C_MAX)
            fStep *= 2.0
      fLogC, fResidual, iIterations = _find_root(fnLogEquation, fLogLower, fLogUpper, "left tail equation")
      fC = math.exp(fLogC)
   fRate = _gm_left_rate(oAlpha, fEpsilon, fC)
   return _make_report(oAlpha, fEpsilon, TailSide.LEFT, EstimatorId.GM_B, fC, fRate, fResidual, iIterations)

def _make_report(oAlpha, fEpsilon, oSide, oEstimator, fC, fRate, fResidual, iIterations):
   if not (math.isfinite(fRate) and fRate > 0.0):
      raise CSolverError("tail bound rate is not positive",
                         {"alpha": oAlpha.alpha, "epsilon": fEpsilon, "side": oSide.value,
                          "root": fC, "rate": fRate})
   return TailBoundReport(oAlpha, fEpsilon, oSide, oEstimator, fC,
                          fEpsilon * fEpsilon / fRate, fRate, fResidual, iIterations)

def _delta_of(alpha):
   if isinstance(alpha, AlphaParam):
      return alpha.alpha, alpha.delta
   fAlpha = float(alpha)
   if not (0.0 < fAlpha <= 2.0):
      raise CDomainError(f"alpha must be in (0, 2], got {alpha!r}")
   return fAlpha, abs(fAlpha - 1.0)

def gm_rate_approx(alpha, epsilon, side):
   """
Small ``delta = |alpha-1|`` closed forms of the geometric mean constants:

* right:               ``eps^2 / (log(1+eps) - 2 sqrt(delta log(1+eps)))``
* left, alpha > 1:     ``eps^2 / (-log(1-eps) - 2 sqrt(-2 delta log(1-eps)))``
* left, alpha < 1:     ``eps^2 / (delta exp(-log(1-eps)/delta - 1 - gamma_e))``

``alpha = 1`` is accepted and gives the ``delta -> 0`` limit (left side from
above).

**Arguments:**

*  ``alpha``

   / *Condition*: required / *Type*: AlphaParam or float /

*  ``epsilon``

   / *Condition*: required / *Type*: float /

*  ``side``

   / *Condition*: required / *Type*: TailSide or str /

**Returns:**

*  ``G``

   / *Type*: float /
   """
   oSide = TailSide.of(side)
   fEpsilon = _check_epsilon(epsilon, oSide)
   fAlpha, fDelta = _delta_of(alpha)
   if oSide is TailSide.RIGHT:
      fLog = math.log1p(fEpsilon)
      fDenominator = fLog - 2.0 * math.sqrt(fDelta * fLog)
   elif fAlpha >= 1.0:
      fLog = -math.log1p(-fEpsilon)
      fDenominator = fLog - 2.0 * math.sqrt(2.0 * fDelta * fLog)
   else:
      fLogG = (2.0 * math.log(fEpsilon) - math.log(fDelta)
               + math.log1p(-fEpsilon) / fDelta + 1.0 + EULER_GAMMA)
      return math.exp(fLogG)
   if fDenominator <= 0.0:
      raise CRegimeError(f"closed form rate is out of regime for delta={fDelta}, epsilon={fEpsilon} "
                         f"({oSide.value} side)")
   return fEpsilon * fEpsilon / fDenominator

def gm_root_approx(alpha, epsilon, side):
   """
Small ``delta`` approximations of the optimal moment orders:
``C_R = 1 - sqrt(delta/log(1+eps))``, ``C_L = 1 - sqrt(2 delta/(-log(1-eps)))``
for ``alpha > 1`` and ``log C_L = -log(1-eps)/delta - 1 - gamma_e`` for
``alpha < 1``.
   """
   oSide = TailSide.of(side)
   fEpsilon = _check_epsilon(epsilon, oSide)
   fAlpha, fDelta = _delta_of(alpha)
   if oSide is TailSide.RIGHT:
      return 1.0 - math.sqrt(fDelta / math.log1p(fEpsilon))
   if fAlpha >= 1.0:
      return 1.0 - math.sqrt(2.0 * fDelta / -math.log1p(-fEpsilon))
   return math.exp(-math.log1p(-fEpsilon) / fDelta - 1.0 - EULER_GAMMA)

# --------------------------------------------------------------------------------------------------------------
# harmonic mean (HM) bounds

def _hm_log_coefficients(fAlpha, iStart, iStop):
   arM = np.arange(iStart, iStop, dtype=np.float64)
   return arM, arM * scipy_special.gammaln(1.0 + fAlpha) - scipy_special.gammaln(1.0 + arM * fAlpha)

def _hm_mgf_laplace(fAlpha, fT):
   """
``M(-t)`` and ``M'(-t)/M(-t)`` from the Laplace representation of the
Mittag-Leffler function. With ``x = Γ(1+alpha) t``

   ``M(-t) = sin(alpha pi)/(alpha pi) ∫ exp(-(x u)^(1/alpha)) / (u^2 + 2u cos(alpha pi) + 1) du``

over ``u > 0``. Both integrands are positive, so nothing cancels for large ``t``.
   """
   fX = math.exp(scipy_special.gammaln(1.0 + fAlpha)) * fT
   fLogX = math.log(fX)
   fCos = math.cos(math.pi * fAlpha)

   def fnPower(fU):
      # (x u)^(1/alpha), clipped where exp(-.) underflows anyway
      if fU <= 0.0:
         return 0.0
      return math.exp(min((fLogX + math.log(fU)) / fAlpha, 700.0))

   def fnLaplace(fU):
      return math.exp(-fnPower(fU)) / (fU * fU + 2.0 * fU * fCos + 1.0)

   def fnWeighted(fU):
      fPower = fnPower(fU)
      return fPower * math.exp(-fPower) / (fU * fU + 2.0 * fU * fCos + 1.0)

   # the exponential falls off at u = 1/x, the kernel peaks at u = 1
   lEdges = [0.0, 1.0 / fX, 1.0, math.inf] if fX > 1.0 else [0.0, 1.0, math.inf]
   lIntegrals = []
   for fnIntegrand in (fnLaplace, fnWeighted):
      fTotal = 0.0
      for fLower, fUpper in zip(lEdges[:-1], lEdges[1:]):
         # later segments only need accuracy relative to the mass already found
         fTotal += scipy_integrate.quad(fnIntegrand, fLower, fUpper, epsabs=1e-3 * HM_QUAD_RTOL * fTotal,
                                        epsrel=HM_QUAD_RTOL, limit=HM_QUAD_LIMIT)[0]
      lIntegrals.append(fTotal)
   fLaplace, fWeighted = lIntegrals
   if not (fLaplace > 0.0 and math.isfinite(fLaplace)):
      raise CSolverError("Laplace integral of the moment generating function failed",
                         {"alpha": fAlpha, "s": -fT, "integral": fLaplace})
   fLogM = math.log(math.sin(math.pi * fAlpha) / (math.pi * fAlpha)) + math.log(fLaplace)
   # d/dx (x u)^(1/alpha) = (x u)^(1/alpha) / (alpha x)
   fRatio = math.exp(scipy_special.gammaln(1.0 + fAlpha)) * fWeighted / (fAlpha * fX * fLaplace)
   return fLogM, fRatio

def hm_mgf(alpha, s):
   """
Moment generating function ``M(s) = sum_m Γ(1+alpha)^m / Γ(1+m alpha) s^m``
of ``Γ(1+alpha) cos(alpha pi/2) |Z|^-alpha`` and its log derivative.

Terms are added until ``|term| < 1e-14 |partial sum|`` on the decreasing
part of the series, with a cap of ``HM_SERIES_MAX_TERMS`` terms. Negative
``s`` give an alternating series whose cancellation is monitored; once
``Γ(1+alpha)|s|`` exceeds ``HM_LAPLACE_SWITCH`` the value comes from the
Laplace integral instead, which is accurate for any ``s < 0``.

**Arguments:**

*  ``alpha``

   / *Condition*: required / *Type*: AlphaParam or float /

   Moment order below 1.

*  ``s``

   / *Condition*: required / *Type*: float /

**Returns:**

*  ``(log_m, ratio)``

   / *Type*: tuple /

   ``log M(s)`` and ``M'(s)/M(s)``.
   """
   oAlpha = AlphaParam.of(alpha)
   if oAlpha.alpha >= 1.0:
      raise CUnsupportedEstimatorError("harmonic mean bounds require alpha < 1")
   fAlpha = oAlpha.alpha
   fS = float(s)
   if fS == 0.0:
      return 0.0, 1.0
   fLogAbsS = math.log(abs(fS))
   bAlternating = fS < 0.0
   if bAlternating and math.exp(scipy_special.gammaln(1.0 + fAlpha)) * -fS > HM_LAPLACE_SWITCH:
      return _hm_mgf_laplace(fAlpha, -fS)

   lM = []
   lLogTerms = []
   iCount = 0
   while True:
      if iCount >= HM_SERIES_MAX_TERMS:
         raise CSeriesDivergenceError("moment generating function series did not converge",
                                      {"alpha": fAlpha, "s": fS, "terms": iCount})
      iStop = min(iCount + HM_SERIES_CHUNK, HM_SERIES_MAX_TERMS)
      arM, arLogCoefficients = _hm_log_coefficients(fAlpha, iCount, iStop)
      lM.append(arM)
      lLogTerms.append(arLogCoefficients + arM * fLogAbsS)
      iCount = iStop
      arLogTerms = np.concatenate(lLogTerms)
      fLogLast = arLogTerms[-1]
      if fLogLast >= arLogTerms[-2]:
         continue
      if bAlternating:
         fLogMax = float(np.max(arLogTerms))
         if fLogMax > 700.0:
            raise CSeriesDivergenceError("alternating series terms overflow",
                                         {"alpha": fAlpha, "s": fS, "log_max_term": fLogMax})
         arM = np.concatenate(lM)
         arSigns = np.where(arM % 2.0 == 0.0, 1.0, -1.0)
         fSum = math.fsum(arSigns * np.exp(arLogTerms))
         if fSum <= 0.0 or iCount * np.finfo(float).eps * math.exp(fLogMax) > HM_PRECISION_TOL * fSum:
            raise CSeriesDivergenceError("alternating series lost its precision",
                                         {"alpha": fAlpha, "s": fS, "sum": fSum,
                                          "log_max_term": fLogMax})
         if fLogLast < math.log(HM_SERIES_RTOL * fSum):
            # m c_m s^(m-1) = -m (-1)^m c_m |s|^m / |s|
            fDerivative = math.fsum(-arSigns[1:] * arM[1:] * np.exp(arLogTerms[1:])) / abs(fS)
            return math.log(fSum), fDerivative / fSum
      else:
         fLogSum = float(scipy_special.logsumexp(arLogTerms))
         if fLogLast < math.log(HM_SERIES_RTOL) + fLogSum:
            arM = np.concatenate(lM)
            fLogDerivative = float(scipy_special.logsumexp(np.log(arM[1:]) + arLogTerms[1:])) - fLogAbsS
            return fLogSum, math.exp(fLogDerivative - fLogSum)

def _hm_equation(oAlpha, fEpsilon, oSide):
   if oSide is TailSide.RIGHT:
      fTarget = 1.0 / (1.0 + fEpsilon)
      def fnEquation(fT):
         return hm_mgf(oAlpha, -fT)[1] - fTarget
   else:
      fTarget = 1.0 / (1.0 - fEpsilon)
      def fnEquation(fT):
         return fTarget - hm_mgf(oAlpha, fT)[1]
   return fnEquation

def _hm_upper_bracket(fnEquation, dDiagnostics):
   """
Smallest doubling of t where the equation turns negative. When the series
cannot be evaluated at a candidate, the bracket is shrunk towards the last
good point.
   """
   fGood = 0.0
   fCandidate = 1.0
   for _ in range(HM_T_DOUBLINGS):
      try:
         fValue = fnEquation(fCandidate)
      except CSeriesDivergenceError:
         fValue = None
      if fValue is None:
         fBad = fCandidate
         for _ in range(HM_T_BISECTIONS):
            fMiddle = 0.5 * (fGood + fBad)
            try:
               fValue = fnEquation(fMiddle)
            except CSeriesDivergenceError:
               fBad = fMiddle
               continue
            if fValue < 0.0:
               return fGood, fMiddle
            fGood = fMiddle
         dDiagnostics.update(last_good_t=fGood, first_bad_t=fBad)
         raise CSolverError("no root inside the convergence region of the series", dDiagnostics)
      if fValue < 0.0:
         return fGood, fCandidate
      fGood = fCandidate
      fCandidate *= 2.0
   dDiagnostics["last_t"] = fGood
   raise CSolverError("no sign change of the series equation found", dDiagnostics)

def _solve_hm(alpha, epsilon, oSide):
   oAlpha = AlphaParam.of(alpha)
   if oAlpha.alpha >= 1.0:
      raise CUnsupportedEstimatorError(f"harmonic mean bounds require alpha < 1, got {oAlpha.alpha}")
   fEpsilon = _check_epsilon(epsilon, oSide)
   fnEquation = _hm_equation(oAlpha, fEpsilon, oSide)
   dDiagnostics = {"alpha": oAlpha.alpha, "epsilon": fEpsilon, "side": oSide.value}
   fLower, fUpper = _hm_upper_bracket(fnEquation, dDiagnostics)
   fT, fResidual, iIterations = _find_root(fnEquation, fLower, fUpper, f"{oSide.value} series equation")
   if oSide is TailSide.RIGHT:
      fRate = -hm_mgf(oAlpha, -fT)[0] - fT / (1.0 + fEpsilon)
   else:
      fRate = -hm_mgf(oAlpha, fT)[0] + fT / (1.0 - fEpsilon)
   return _make_report(oAlpha, fEpsilon, oSide, EstimatorId.HM, fT, fRate, fResidual, iIterations)

def solve_hm_right(alpha, epsilon):
   """
Right tail constant ``G_R`` of the harmonic mean estimator (``alpha < 1``).

``t*`` solves ``M'(-t)/M(-t) = 1/(1+eps)``; the rate is
``-log M(-t*) - t*/(1+eps)``.
   """
   return _solve_hm(alpha, epsilon, TailSide.RIGHT)

def solve_hm_left(alpha, epsilon):
   """
Left tail constant ``G_L`` of the harmonic mean estimator (``alpha < 1``).

``t*`` solves ``M'(t)/M(t) = 1/(1-eps)``; the rate is
``-log M(t*) + t*/(1-eps)``.
   """
   return _solve_hm(alpha, epsilon, TailSide.LEFT)

# --------------------------------------------------------------------------------------------------------------
# bounds and planning

def _bound_estimator(estimator):
   """
Estimator whose tail machinery is used: geometric mean variants use the
GM_B constants, harmonic mean variants the HM constants.
   """
   oId = EstimatorId.of(estimator)
   if oId in (EstimatorId.GM, EstimatorId.GM_B):
      return EstimatorId.GM_B
   if oId in (EstimatorId.HM, EstimatorId.HM_C):
      return EstimatorId.HM
   raise CUnsupportedEstimatorError(f"no tail bounds for estimator '{oId.value}'")

def solve_tail(alpha, epsilon, side, estimator="gm_b"):
   """
Tail bound report for one side and estimator family.
   """
   oSide = TailSide.of(side)
   if _bound_estimator(estimator) is EstimatorId.GM_B:
      return solve_gm_right(alpha, epsilon) if oSide is TailSide.RIGHT else solve_gm_left(alpha, epsilon)
   return solve_hm_right(alpha, epsilon) if oSide is TailSide.RIGHT else solve_hm_left(alpha, epsilon)

def tail_bounds(alpha, epsilon, estimator="gm_b"):
   """
Right and left tail reports. The left report is None for ``epsilon >= 1``.
   """
   oRight = solve_tail(alpha, epsilon, TailSide.RIGHT, estimator)
   oLeft = None
   if float(epsilon) < 1.0:
      oLeft = solve_tail(alpha, epsilon, TailSide.LEFT, estimator)
   return oRight, oLeft

def tail_probability(report, k):
   """
Bound ``exp(-k eps^2/G)`` on the tail probability for ``k`` samples.
   """
   if k <= 0:
      raise CDomainError(f"k must be positive, got {k}")
   return math.exp(-k * report.exponent_rate)

def plan_samples(alpha, epsilon, delta, estimator="gm_b"):
   """
Number of samples ``k`` such that ``Pr(|F_hat - F| >= eps F) <= delta``.

A left tail root outside the double range (``alpha < 1`` close to 1) means
the left tail constant is negligible; it is then taken as 0 and a warning is
logged.

**Arguments:**

*  ``alpha``

   / *Condition*: required / *Type*: AlphaParam or float /

*  ``epsilon``

   / *Condition*: required / *Type*: float /

   Relative error in (0, 1).

*  ``delta``

   / *Condition*: required / *Type*: float /

   Failure probability in (0, 1).

*  ``estimator``

   / *Condition*: optional / *Type*: str / *Default*: 'gm_b' /

   ``gm``/``gm_b`` for the geometric mean constants, ``hm``/``hm_c`` for the
   harmonic mean constants.

**Returns:**

*  ``oPlan``

   / *Type*: SamplePlan /
   """
   oAlpha = AlphaParam.of(alpha)
   fEpsilon = _check_epsilon(epsilon, TailSide.LEFT)
   try:
      fDelta = float(delta)
   except (TypeError, ValueError):
      raise CDomainError(f"delta must be a real number, got {delta!r}")
   if not (0.0 < fDelta < 1.0):
      raise CDomainError(f"delta must be in (0, 1), got {delta!r}")
   oEstimator = _bound_estimator(estimator)

   fGRight = solve_tail(oAlpha, fEpsilon, TailSide.RIGHT, oEstimator).G
   try:
      fGLeft = solve_tail(oAlpha, fEpsilon, TailSide.LEFT, oEstimator).G
   except CRateOverflowError as reason:
      Logger.log_warning(f"Left tail constant treated as negligible: {reason}")
      fGLeft = 0.0
   fG = max(fGRight, fGLeft)
   iK = max(2, int(math.ceil(fG / (fEpsilon * fEpsilon) * math.log(2.0 / fDelta))))
   return SamplePlan(oAlpha, fEpsilon, fDelta, oEstimator, fG, fGRight, fGLeft, iK)
