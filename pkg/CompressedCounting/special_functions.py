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
# File: special_functions.py
#
# Initially created by the CompressedCounting team / June 2026
#
# Real valued gamma family functions used by the moment formulas, the
# estimator constants and the tail bound equations. Thin checked wrappers
# around scipy.special; only positive arguments occur in this package.
#
# History:
#
# 2026-06-02:
#  - initial version
#
# ******************************************************************************

import numpy as np
from scipy import special as scipy_special

from CompressedCounting.cc_errors import CDomainError

EULER_GAMMA = 0.5772156649015329

def _check_positive(x, sFunction):
   arX = np.asarray(x, dtype=np.float64)
   if not np.all(arX > 0.0):
      raise CDomainError(f"{sFunction} requires positive arguments, got {x!r}")
   return arX

def _as_result(arValue):
   if np.ndim(arValue) == 0:
      return float(arValue)
   return arValue

def ln_gamma(x):
   """
Natural logarithm of the gamma function.

**Arguments:**

*  ``x``

   / *Condition*: required / *Type*: float or numpy array /

   Positive argument(s).

**Returns:**

*  ``value``

   / *Type*: float or numpy array /

   log Γ(x).
   """
   return _as_result(scipy_special.gammaln(_check_positive(x, "ln_gamma")))

def gamma(x):
   """
Gamma function Γ(x) for positive arguments.

Small arguments (for example ``α/k`` in the geometric mean constant) are fine,
large arguments overflow to ``inf``; formulas in this package which can hit
large arguments work with ``ln_gamma`` instead.
   """
   return _as_result(scipy_special.gamma(_check_positive(x, "gamma")))

def digamma(x):
   """
Digamma function ψ(x) = Γ'(x)/Γ(x) for positive arguments.

**Arguments:**

*  ``x``

   / *Condition*: required / *Type*: float or numpy array /

   Positive argument(s).

**Returns:**

*  ``value``

   / *Type*: float or numpy array /

   ψ(x).
   """
   return _as_result(scipy_special.digamma(_check_positive(x, "digamma")))

def euler_gamma():
   """
Euler's constant γ_e.
   """
   return EULER_GAMMA
