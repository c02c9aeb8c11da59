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
# File: cc_sketch.py
#
# Initially created by the CompressedCounting team / June 2026
#
# Streaming summary of a Turnstile stream: k accumulators
#
#    x_j = sum_i r_ij * A_t[i]
#
# maintained update by update. The sketch is a linear function of the
# signal, so sketches with identical configuration merge by addition.
#
# The signal must be non-negative at evaluation time for the moment
# estimators to be meaningful. This cannot be checked from the sketch and is
# a precondition of the caller.
#
# History:
#
# 2026-06-02:
#  - initial version
#
# 2026-07-10:
#  - Canonical JSON record with hex encoded accumulators.
#
# ******************************************************************************

import json
import math
from dataclasses import dataclass

import numpy as np

from CompressedCounting.cc_errors import CConfigError, CInputError, CMergeError
from CompressedCounting.stable_sampler import (AlphaParam, ProjectionKind, SeedSpec,
                                               UINT64_LIMIT, projection_row)

SKETCH_RECORD_VERSION = 1

SKETCH_RECORD_KEYS = ("version", "alpha", "k", "seed", "kind", "accumulators", "update_count")

@dataclass(frozen=True)
class SketchConfig:
   """
Projection parameters of a sketch: moment order, number of samples ``k``
(at least 2), master seed and projection kind.
   """
   alpha: AlphaParam
   k: int
   seed: SeedSpec
   kind: ProjectionKind = ProjectionKind.SKEWED

   def __post_init__(self):
      object.__setattr__(self, 'alpha', AlphaParam.of(self.alpha))
      object.__setattr__(self, 'seed', SeedSpec.of(self.seed))
      object.__setattr__(self, 'kind', ProjectionKind.of(self.kind))
      if isinstance(self.k, bool) or not isinstance(self.k, (int, np.integer)):
         raise CConfigError(f"k must be an integer, got {self.k!r}")
      if int(self.k) < 2:
         raise CConfigError(f"k must be at least 2, got {self.k}")
      object.__setattr__(self, 'k', int(self.k))

@dataclass(frozen=True)
class StreamUpdate:
   """
One Turnstile event ``(i_t, I_t)``: the signal entry ``index`` changes by the
signed ``increment``.
   """
   index: int
   increment: float

   def __post_init__(self):
      if isinstance(self.index, bool) or not isinstance(self.index, (int, np.integer)):
         raise CInputError(f"index must be an integer, got {self.index!r}")
      iIndex = int(self.index)
      if not (0 <= iIndex < UINT64_LIMIT):
         raise CInputError(f"index must be an unsigned 64 bit integer, got {iIndex}")
      try:
         fIncrement = float(self.increment)
      except (TypeError, ValueError):
         raise CInputError(f"increment must be a real number, got {self.increment!r}")
      if not math.isfinite(fIncrement):
         raise CInputError(f"increment must be finite, got {fIncrement!r}")
      object.__setattr__(self, 'index', iIndex)
      object.__setattr__(self, 'increment', fIncrement)

   @classmethod
   def from_record(cls, dRecord):
      """
Create an update from a stream record ``{"i": <index>, "delta": <increment>}``.
      """
      if not isinstance(dRecord, dict) or "i" not in dRecord or "delta" not in dRecord:
         raise CInputError(f"stream record must be an object with keys 'i' and 'delta', got {dRecord!r}")
      if isinstance(dRecord["delta"], (bool, str)) or dRecord["delta"] is None:
         raise CInputError(f"'delta' must be a number, got {dRecord['delta']!r}")
      return cls(dRecord["i"], dRecord["delta"])

   def negated(self):
      return StreamUpdate(self.index, -self.increment)

class CSketch():
   """
Compressed Counting sketch: ``k`` accumulators of the projected signal.

Every accumulator of a non-negative signal with moment ``F`` is a
``S(alpha, beta, F)`` sample. A sketch has a single writer; concurrent
ingestion uses one sketch per shard and ``merge``.
   """

   def __init__(self, oConfig):
      if not isinstance(oConfig, SketchConfig):
         raise CConfigError(f"SketchConfig expected, got {type(oConfig).__name__}")
      self.__oConfig = oConfig
      self.__arAccumulators = np.zeros(oConfig.k, dtype=np.float64)
      self.__iUpdateCount = 0

   @property
   def config(self):
      return self.__oConfig

   @property
   def update_count(self):
      return self.__iUpdateCount

   def samples(self):
      """
Accumulators ``x_1 .. x_k`` as read-only array.
      """
      arSamples = self.__arAccumulators.copy()
      arSamples.setflags(write=False)
      return arSamples

   def update(self, update, increment=None):
      """
Apply one Turnstile event: ``x_j += r_(index, j) * increment`` for all ``j``.

**Arguments:**

*  ``update``

   / *Condition*: required / *Type*: StreamUpdate or int /

   The update, or the signal index when ``increment`` is given.

*  ``increment``

   / *Condition*: optional / *Type*: float / *Default*: None /

   Signed increment, only together with an integer index.

**Returns:**

*  ``self``

   / *Type*: CSketch /
      """
      if not isinstance(update, StreamUpdate):
         update = StreamUpdate(update, increment)
      oConfig = self.__oConfig
      arRow = projection_row(oConfig.seed, update.index, oConfig.k, oConfig.alpha, oConfig.kind)
      self.__arAccumulators += arRow * update.increment
      self.__iUpdateCount += 1
      return self

   def update_many(self, updates):
      """
Apply a sequence of updates in order.
      """
      for oUpdate in updates:
         self.update(oUpdate)
      return self

   def merge(self, other):
      """
Entrywise sum of two sketches with identical configuration.

**Arguments:**

*  ``other``

   / *Condition*: required / *Type*: CSketch /

**Returns:**

*  ``oMerged``

   / *Type*: CSketch /

   New sketch; the operands are not modified.
      """
      if not isinstance(other, CSketch):
         raise CMergeError(f"cannot merge a sketch with {type(other).__name__}")
      if other.config != self.__oConfig:
         raise CMergeError(f"sketch configurations differ: {self.__oConfig} != {other.config}")
      oMerged = CSketch(self.__oConfig)
      oMerged.__arAccumulators = self.__arAccumulators + other.__arAccumulators
      oMerged.__iUpdateCount = self.__iUpdateCount + other.__iUpdateCount
      return oMerged

   def to_record(self):
      """
Self describing record of the sketch. Accumulators are hex encoded so that
the record round-trips bit-exactly.
      """
      oConfig = self.__oConfig
      return {
         "version"      : SKETCH_RECORD_VERSION,
         "alpha"        : oConfig.alpha.alpha,
         "k"            : oConfig.k,
         "seed"         : oConfig.seed.master_seed,
         "kind"         : oConfig.kind.value,
         "accumulators" : [float(x).hex() for x in self.__arAccumulators],
         "update_count" : self.__iUpdateCount,
      }

   @classmethod
   def from_record(cls, dRecord):
      """
Restore a sketch from ``to_record`` output.
      """
      if not isinstance(dRecord, dict):
         raise CInputError("sketch record must be a JSON object")
      lMissing = [sKey for sKey in SKETCH_RECORD_KEYS if sKey not in dRecord]
      if lMissing:
         raise CInputError(f"sketch record misses key(s) {lMissing}")
      if dRecord["version"] != SKETCH_RECORD_VERSION:
         raise CInputError(f"sketch record version {dRecord['version']!r} is not supported")
      oConfig = SketchConfig(dRecord["alpha"], dRecord["k"], dRecord["seed"], dRecord["kind"])
      lAccumulators = dRecord["accumulators"]
      if not isinstance(lAccumulators, list) or len(lAccumulators) != oConfig.k:
         raise CInputError(f"sketch record must hold {oConfig.k} accumulators")
      try:
         arAccumulators = np.array([float.fromhex(sValue) for sValue in lAccumulators], dtype=np.float64)
      except (TypeError, ValueError) as reason:
         raise CInputError(f"invalid accumulator encoding: {reason}")
      iUpdateCount = dRecord["update_count"]
      if isinstance(iUpdateCount, bool) or not isinstance(iUpdateCount, int) or iUpdateCount < 0:
         raise CInputError(f"update_count must be a non-negative integer, got {iUpdateCount!r}")
      oSketch = cls(oConfig)
      oSketch.__arAccumulators = arAccumulators
      oSketch.__iUpdateCount = iUpdateCount
      return oSketch

   def dumps(self):
      """
Canonical JSON text of the sketch record (sorted keys, no whitespace).
      """
      return json.dumps(self.to_record(), sort_keys=True, separators=(",", ":"))

   @classmethod
   def loads(cls, sText):
      try:
         dRecord = json.loads(sText)
      except ValueError as reason:
         raise CInputError(f"sketch file is not valid JSON: {reason}")
      return cls.from_record(dRecord)

   def __eq__(self, other):
      if not isinstance(other, CSketch):
         return NotImplemented
      return (self.__oConfig == other.__oConfig
              and self.__iUpdateCount == other.__iUpdateCount
              and np.array_equal(self.__arAccumulators, other.__arAccumulators))

   __hash__ = None

   def __repr__(self):
      return (f"CSketch(alpha={self.__oConfig.alpha.alpha}, k={self.__oConfig.k}, "
              f"kind={self.__oConfig.kind.value}, update_count={self.__iUpdateCount})")

def new_sketch(config):
   """
Empty sketch (all accumulators exactly zero) for ``config``.
   """
   return CSketch(config)

def update(sketch, u):
   return sketch.update(u)

def merge(a, b):
   return a.merge(b)

def samples(sketch):
   return sketch.samples()
