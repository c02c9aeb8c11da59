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
# File: reference_oracle.py
#
# Initially created by the CompressedCounting team / June 2026
#
# Exact brute force values on the materialised signal. Used as ground truth
# by the tests and by the CLI compare command.
#
# History:
#
# 2026-06-05:
#  - initial version
#
# ******************************************************************************

import math
from collections import defaultdict

from CompressedCounting.cc_errors import CDomainError, CModelViolationError
from CompressedCounting.cc_sketch import StreamUpdate

def replay(updates):
   """
Final signal ``A[i] = sum of increments of index i`` as sparse dict.

Increments per index are added with ``math.fsum`` so that the result does
not depend on the update order; exact zeros are pruned.

**Arguments:**

*  ``updates``

   / *Condition*: required / *Type*: iterable of StreamUpdate or (index, increment) /

**Returns:**

*  ``dSignal``

   / *Type*: dict /
   """
   dIncrements = defaultdict(list)
   for oUpdate in updates:
      if not isinstance(oUpdate, StreamUpdate):
         oUpdate = StreamUpdate(*oUpdate)
      dIncrements[oUpdate.index].append(oUpdate.increment)
   dSignal = {}
   for iIndex, lIncrements in dIncrements.items():
      fValue = math.fsum(lIncrements)
      if fValue != 0.0:
         dSignal[iIndex] = fValue
   return dSignal

def negative_entries(signal):
   return sorted(iIndex for iIndex, fValue in signal.items() if fValue < 0.0)

def exact_moment(signal, alpha):
   """
``F_(alpha) = sum_i A[i]^alpha`` over the non-zero entries.

Raises ``CModelViolationError`` for a negative entry: moments are only
defined for signals which are non-negative at evaluation time.
   """
   fAlpha = float(alpha)
   if not (fAlpha > 0.0):
      raise CDomainError(f"alpha must be positive, got {alpha!r}")
   lNegative = negative_entries(signal)
   if lNegative:
      raise CModelViolationError(f"signal has {len(lNegative)} negative entries (first index {lNegative[0]})")
   return math.fsum(fValue ** fAlpha for fValue in signal.values() if fValue != 0.0)

def exact_log_norm(signal):
   """
``sum_i log A[i]``; every entry must be strictly positive.
   """
   lValues = list(signal.values())
   if any(not (fValue > 0.0) for fValue in lValues):
      raise CDomainError("log norm requires strictly positive entries")
   return math.fsum(math.log(fValue) for fValue in lValues)

def exact_log_distance(a, b):
   """
``sum_i log|A[i] - B[i]|`` over the indices present in either signal; the
differences must be non-zero.
   """
   lDifferences = [a.get(iIndex, 0.0) - b.get(iIndex, 0.0) for iIndex in set(a) | set(b)]
   if any(fValue == 0.0 for fValue in lDifferences):
      raise CDomainError("log distance requires non-zero differences")
   return math.fsum(math.log(abs(fValue)) for fValue in lDifferences)
