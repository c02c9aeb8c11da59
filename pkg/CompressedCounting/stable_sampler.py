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
# File: stable_sampler.py
#
# Initially created by the CompressedCounting team / June 2026
#
# Stable random variates S(alpha, beta, F) with characteristic function
#
#    exp(-F|t|^alpha (1 - i beta sign(t) tan(pi alpha/2)))
#
# for beta = 1 (skewed) and beta = 0 (symmetric), generated with the
# Chambers-Mallows-Stuck transform, and the lazily generated projection
# matrix R (D x k) whose rows are derived from a keyed Philox counter based
# bit generator: row i of R is a pure function of (master seed, i).
#
# History:
#
# 2026-06-02:
#  - initial version
#
# 2026-07-10:
#  - Generate a whole projection row per generator call, add LRU row cache.
#
# 2026-09-01:
#  - Add closed form fractional moments as validation oracle.
#
# ******************************************************************************

import math
import functools
from dataclasses import dataclass
from enum import Enum

import numpy as np
from scipy import special as scipy_special

from CompressedCounting.cc_errors import CConfigError, CDomainError, CInputError

UINT64_LIMIT = 2**64

# smallest uniform returned by the generator after clipping; keeps the
# uniforms inside the open interval (0, 1)
UNIFORM_FLOOR = 2.0**-54

PROJECTION_ROW_CACHE_SIZE = 4096

@dataclass(frozen=True)
class AlphaParam:
   """
Validated moment order ``alpha`` with the derived constants ``kappa`` and
``delta``.

``0 < alpha <= 2`` and ``alpha != 1``. ``kappa = alpha`` for ``alpha < 1`` and
``kappa = 2 - alpha`` for ``alpha > 1``; ``delta = |alpha - 1|``.
   """
   alpha: float

   def __post_init__(self):
      try:
         fAlpha = float(self.alpha)
      except (TypeError, ValueError):
         raise CConfigError(f"alpha must be a real number, got {self.alpha!r}")
      if not math.isfinite(fAlpha) or not (0.0 < fAlpha <= 2.0):
         raise CConfigError(f"alpha must be in (0, 2], got {fAlpha!r}")
      if fAlpha == 1.0:
         raise CConfigError("alpha = 1 is not supported by stable projections, "
                            "the first moment only needs a plain counter")
      object.__setattr__(self, 'alpha', fAlpha)

   @property
   def kappa(self):
      if self.alpha < 1.0:
         return self.alpha
      return 2.0 - self.alpha

   @property
   def delta(self):
      return abs(self.alpha - 1.0)

   @classmethod
   def of(cls, value):
      if isinstance(value, AlphaParam):
         return value
      return cls(value)

class ProjectionKind(Enum):
   """
Skewness of the projection entries: ``SKEWED`` (beta = 1) for moment
estimation, ``SYMMETRIC`` (beta = 0) for the logarithmic distance.
   """
   SKEWED = "skewed"
   SYMMETRIC = "symmetric"

   @property
   def beta(self):
      return 1.0 if self is ProjectionKind.SKEWED else 0.0

   @classmethod
   def of(cls, value):
      if isinstance(value, ProjectionKind):
         return value
      try:
         return cls(str(value).strip().lower())
      except ValueError:
         lNames = [oKind.value for oKind in cls]
         raise CConfigError(f"Projection kind '{value}' is not supported, use one of {lNames}")

@dataclass(frozen=True)
class SeedSpec:
   """
64 bit master seed of the projection matrix.
   """
   master_seed: int

   def __post_init__(self):
      if isinstance(self.master_seed, bool) or not isinstance(self.master_seed, (int, np.integer)):
         raise CConfigError(f"seed must be an integer, got {self.master_seed!r}")
      iSeed = int(self.master_seed)
      if not (0 <= iSeed < UINT64_LIMIT):
         raise CConfigError(f"seed must be an unsigned 64 bit integer, got {iSeed}")
      object.__setattr__(self, 'master_seed', iSeed)

   @classmethod
   def of(cls, value):
      if isinstance(value, SeedSpec):
         return value
      return cls(value)

def _transform_constants(fAlpha, fBeta):
   """
Shift ``B`` and log scale ``log S`` of the Chambers-Mallows-Stuck transform.
   """
   if fBeta == 0.0:
      return 0.0, 0.0
   fBetaTan = fBeta * math.tan(0.5 * math.pi * fAlpha)
   fShift = math.atan(fBetaTan) / fAlpha
   fLogScale = math.log1p(fBetaTan * fBetaTan) / (2.0 * fAlpha)
   return fShift, fLogScale

def sample_stable(alpha, kind, uniform, exponential):
   """
Chambers-Mallows-Stuck transform of a uniform angle and a unit exponential
into a ``S(alpha, beta, 1)`` variate.

The transform is evaluated in log-space. For very small ``alpha`` the
magnitude of the variate can exceed the double range, such values are
returned as ``inf``.

**Arguments:**

*  ``alpha``

   / *Condition*: required / *Type*: AlphaParam or float /

   Stability index.

*  ``kind``

   / *Condition*: required / *Type*: ProjectionKind or str /

   ``skewed`` (beta = 1) or ``symmetric`` (beta = 0).

*  ``uniform``

   / *Condition*: required / *Type*: float or numpy array /

   Angle(s) uniformly distributed in (-pi/2, pi/2).

*  ``exponential``

   / *Condition*: required / *Type*: float or numpy array /

   Positive unit exponential variate(s).

**Returns:**

*  ``value``

   / *Type*: float or numpy array /

   Stable variate(s); strictly positive for ``alpha < 1`` and ``skewed``.
   """
   fAlpha = AlphaParam.of(alpha).alpha
   fBeta = ProjectionKind.of(kind).beta
   fShift, fLogScale = _transform_constants(fAlpha, fBeta)

   arAngle = np.asarray(uniform, dtype=np.float64)
   arExp = np.asarray(exponential, dtype=np.float64)
   with np.errstate(over='ignore', divide='ignore', invalid='ignore'):
      arArg = fAlpha * (arAngle + fShift)
      arSin = np.sin(arArg)
      arLogAbs = (fLogScale
                  + np.log(np.abs(arSin))
                  - np.log(np.cos(arAngle)) / fAlpha
                  + ((1.0 - fAlpha) / fAlpha) * (np.log(np.cos(arAngle - arArg)) - np.log(arExp)))
      arValue = np.sign(arSin) * np.exp(arLogAbs)
   if np.ndim(arValue) == 0:
      return float(arValue)
   return arValue

def _uniforms_to_variates(fAlpha, oKind, arU1, arU2):
   arU1 = np.maximum(arU1, UNIFORM_FLOOR)
   arU2 = np.maximum(arU2, UNIFORM_FLOOR)
   arAngle = math.pi * (arU1 - 0.5)
   arExp = -np.log(arU2)
   return sample_stable(fAlpha, oKind, arAngle, arExp)

def sample_stable_array(alpha, kind, size, rng, scale=1.0):
   """
Vectorised i.i.d. draws from ``S(alpha, beta, scale)`` using a numpy
``Generator``. Used for Monte-Carlo experiments where the samples of a sketch
of a signal with moment ``scale`` are drawn directly.

**Arguments:**

*  ``alpha``

   / *Condition*: required / *Type*: AlphaParam or float /

*  ``kind``

   / *Condition*: required / *Type*: ProjectionKind or str /

*  ``size``

   / *Condition*: required / *Type*: int or tuple /

   Output shape.

*  ``rng``

   / *Condition*: required / *Type*: numpy.random.Generator /

*  ``scale``

   / *Condition*: optional / *Type*: float / *Default*: 1.0 /

   Scale parameter F (the frequency moment of the projected signal).

**Returns:**

*  ``samples``

   / *Type*: numpy array /
   """
   oAlpha = AlphaParam.of(alpha)
   oKind = ProjectionKind.of(kind)
   if scale <= 0.0:
      raise CDomainError(f"scale must be positive, got {scale!r}")
   tSize = (size,) if isinstance(size, (int, np.integer)) else tuple(size)
   arUniforms = rng.random((2,) + tSize)
   arSamples = _uniforms_to_variates(oAlpha.alpha, oKind, arUniforms[0], arUniforms[1])
   return arSamples * scale ** (1.0 / oAlpha.alpha)

@functools.lru_cache(maxsize=PROJECTION_ROW_CACHE_SIZE)
def _cached_projection_row(iSeed, iRow, iK, fAlpha, oKind):
   # key = master seed, counter word 1 = row index: rows never share a block
   oGenerator = np.random.Generator(np.random.Philox(key=iSeed, counter=iRow << 64))
   arUniforms = oGenerator.random(2 * iK).reshape(iK, 2)
   arRow = np.asarray(_uniforms_to_variates(fAlpha, oKind, arUniforms[:, 0], arUniforms[:, 1]),
                      dtype=np.float64)
   arRow.setflags(write=False)
   return arRow

def _check_index(index, sName):
   if isinstance(index, bool) or not isinstance(index, (int, np.integer)):
      raise CInputError(f"{sName} must be an integer, got {index!r}")
   iIndex = int(index)
   if not (0 <= iIndex < UINT64_LIMIT):
      raise CInputError(f"{sName} must be an unsigned 64 bit integer, got {iIndex}")
   return iIndex

def projection_row(seed, row, k, alpha, kind):
   """
Entries ``r_row,0 .. r_row,k-1`` of the projection matrix.

Column ``j`` consumes the uniforms ``2j`` and ``2j+1`` of the row stream, so an
entry does not depend on ``k``. The returned array is read-only and shared
with the row cache.

**Arguments:**

*  ``seed``

   / *Condition*: required / *Type*: SeedSpec or int /

*  ``row``

   / *Condition*: required / *Type*: int /

   Signal index ``i`` (unsigned 64 bit).

*  ``k``

   / *Condition*: required / *Type*: int /

   Number of columns.

*  ``alpha``

   / *Condition*: required / *Type*: AlphaParam or float /

*  ``kind``

   / *Condition*: required / *Type*: ProjectionKind or str /

**Returns:**

*  ``arRow``

   / *Type*: numpy array /
   """
   oSeed = SeedSpec.of(seed)
   iRow = _check_index(row, "row")
   iK = _check_index(k, "k")
   if iK < 1:
      raise CConfigError(f"k must be positive, got {iK}")
   return _cached_projection_row(oSeed.master_seed, iRow, iK,
                                 AlphaParam.of(alpha).alpha, ProjectionKind.of(kind))

def projection_entry(seed, row, column, alpha, kind):
   """
Single entry ``r_row,column`` of the projection matrix, distributed
``S(alpha, beta, 1)``. Deterministic in ``(seed, row, column)``.
   """
   iColumn = _check_index(column, "column")
   return float(projection_row(seed, row, iColumn + 1, alpha, kind)[iColumn])

def fractional_moment(alpha, beta, lam, scale=1.0):
   """
Closed form of ``E|Z|^lam`` for ``Z ~ S(alpha, beta, scale)``.

For ``beta = 1`` and ``alpha < 1`` the positive support form
``Γ(1-lam/alpha) / (cos^(lam/alpha)(alpha pi/2) Γ(1-lam))`` is used, valid for
every ``lam < alpha``. Otherwise the general skewness form is used, valid for
``-1 < lam < alpha``.

**Arguments:**

*  ``alpha``

   / *Condition*: required / *Type*: AlphaParam or float /

*  ``beta``

   / *Condition*: required / *Type*: float /

   Skewness in [0, 1].

*  ``lam``

   / *Condition*: required / *Type*: float /

   Moment order.

*  ``scale``

   / *Condition*: optional / *Type*: float / *Default*: 1.0 /

**Returns:**

*  ``moment``

   / *Type*: float /
   """
   fAlpha = AlphaParam.of(alpha).alpha
   fBeta = float(beta)
   fLam = float(lam)
   if not (0.0 <= fBeta <= 1.0):
      raise CDomainError(f"beta must be in [0, 1], got {fBeta!r}")
   if scale <= 0.0:
      raise CDomainError(f"scale must be positive, got {scale!r}")
   if fLam == 0.0:
      return 1.0
   fRatio = fLam / fAlpha
   fScale = scale ** fRatio

   if fBeta == 1.0 and fAlpha < 1.0:
      if fLam >= fAlpha:
         raise CDomainError(f"moment of order {fLam} does not exist for alpha={fAlpha}")
      fLog = (scipy_special.gammaln(1.0 - fRatio)
              - fRatio * math.log(math.cos(0.5 * math.pi * fAlpha))
              - scipy_special.gammaln(1.0 - fLam))
      return fScale * math.exp(fLog)

   if not (-1.0 < fLam < fAlpha):
      raise CDomainError(f"moment of order {fLam} requires -1 < lam < alpha={fAlpha}")
   fBetaTan = fBeta * math.tan(0.5 * math.pi * fAlpha)
   fSkew = math.cos(fRatio * math.atan(fBetaTan)) * (1.0 + fBetaTan * fBetaTan) ** (0.5 * fRatio)
   fValue = (fSkew * (2.0 / math.pi) * math.sin(0.5 * math.pi * fLam)
             * scipy_special.gamma(1.0 - fRatio) * scipy_special.gamma(fLam))
   return fScale * float(fValue)
