# --------------------------------------------------------------------------------------------------------------
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
# --------------------------------------------------------------------------------------------------------------
#
# test_CEstimators.py
#
# 18.10.2026
#
# --------------------------------------------------------------------------------------------------------------

import math

import numpy as np
import pytest

from CompressedCounting.cc_errors import CDegenerateInputError, CDomainError, CUnsupportedEstimatorError
from CompressedCounting.cc_sketch import CSketch, SketchConfig
from CompressedCounting.estimators import (EstimatorId, estimate, estimate_gm, estimate_gm_b, estimate_hm,
                                           estimate_hm_c, estimate_sym_gm, gm_denominator, gm_limit_bracket,
                                           resolve_estimator, sym_gm_denominator, variance_factor_gm,
                                           variance_factor_hm, variance_factor_sym_gm, variance_gm_exact)
from CompressedCounting.reference_oracle import exact_moment
from CompressedCounting.special_functions import EULER_GAMMA
from CompressedCounting.stable_sampler import sample_stable_array

# --------------------------------------------------------------------------------------------------------------

def sketch_samples(fAlpha, kind, iSketches, iK, fMoment, iSeed):
   return sample_stable_array(fAlpha, kind, (iSketches, iK), np.random.default_rng(iSeed), scale=fMoment)

class Test_CEstimators:
   """Geometric and harmonic mean estimators"""

   # --------------------------------------------------------------------------------------------------------------
   #TM***
   @pytest.mark.parametrize(
      "Description", ["bracketed constant decreases to its limit",]
   )
   def test_estimators_1_limit_bracket(self, Description):
      for fAlpha in (0.5, 1.5):
         lValues = [gm_limit_bracket(fAlpha, 2 ** iPower) for iPower in range(2, 13)]
         assert all(fNext < fPrevious for fPrevious, fNext in zip(lValues, lValues[1:]))
         assert lValues[-1] == pytest.approx(math.exp(-EULER_GAMMA * (fAlpha - 1.0)), abs=1e-3)
   # eof def test_estimators_1_limit_bracket(self, Description):

   # --------------------------------------------------------------------------------------------------------------
   #TM***
   @pytest.mark.parametrize(
      "Description", ["unbiasing constants and variance factors",]
   )
   def test_estimators_2_constants(self, Description):
      fAlpha = 0.5
      assert gm_denominator(fAlpha, 4096) == pytest.approx(
         math.exp(-EULER_GAMMA * (fAlpha - 1.0)) / math.cos(fAlpha * math.pi / 2.0), rel=1e-3)
      assert sym_gm_denominator(1.5, 4096) == pytest.approx(math.exp(-EULER_GAMMA * 0.5), rel=1e-3)
      assert variance_factor_hm(0.5) == pytest.approx(math.pi / 2.0 - 1.0, rel=1e-13)
      assert variance_factor_sym_gm(0.5) == pytest.approx(math.pi ** 2 / 12.0 * 2.25, rel=1e-14)
      assert variance_factor_gm(0.5) == pytest.approx(math.pi ** 2 / 12.0 * 1.5, rel=1e-14)
      assert variance_factor_gm(1.5) == pytest.approx(math.pi ** 2 / 12.0 * 3.5, rel=1e-14)
      assert variance_factor_gm(0.99) < 0.05
      with pytest.raises(CUnsupportedEstimatorError):
         variance_factor_hm(1.5)
      with pytest.raises(CDomainError):
         gm_denominator(0.5, 1)
   # eof def test_estimators_2_constants(self, Description):

   # --------------------------------------------------------------------------------------------------------------
   #TM***
   @pytest.mark.parametrize(
      "Description", ["exact finite k variance",]
   )
   def test_estimators_3_exact_variance(self, Description):
      for fAlpha in (0.5, 1.5):
         assert 2000 * variance_gm_exact(fAlpha, 2000) == pytest.approx(variance_factor_gm(fAlpha), rel=0.03)
      # skewed projections are optimal for alpha < 1
      lVariances = [variance_gm_exact(0.5, 20, fBeta) for fBeta in (0.0, 0.5, 1.0)]
      assert lVariances[0] > lVariances[1] > lVariances[2] > 0.0
      assert 2000 * variance_gm_exact(0.5, 2000, 0.0) == pytest.approx(variance_factor_sym_gm(0.5), rel=0.03)
      with pytest.raises(CDomainError):
         variance_gm_exact(0.5, 2)
   # eof def test_estimators_3_exact_variance(self, Description):

   # --------------------------------------------------------------------------------------------------------------
   #TM***
   @pytest.mark.parametrize(
      "Description", ["estimates scale with the alpha-th power of the signal",]
   )
   def test_estimators_4_scaling(self, Description):
      arSamples = sketch_samples(0.5, "skewed", 1, 50, 1.0, 11)[0]
      for fnEstimator in (estimate_gm, estimate_gm_b, estimate_hm, estimate_hm_c):
         fBase = fnEstimator(arSamples, 0.5).value
         assert fnEstimator(arSamples * 9.0, 0.5).value == pytest.approx(3.0 * fBase, rel=1e-12)
      arSymmetric = sketch_samples(1.5, "symmetric", 1, 50, 1.0, 12)[0]
      fBase = estimate_sym_gm(arSymmetric, 1.5).value
      assert estimate_sym_gm(-arSymmetric * 4.0, 1.5).value == pytest.approx(4.0 ** 1.5 * fBase, rel=1e-12)
   # eof def test_estimators_4_scaling(self, Description):

   # --------------------------------------------------------------------------------------------------------------
   #TM***
   @pytest.mark.parametrize(
      "Description", ["degenerate and invalid samples",]
   )
   def test_estimators_5_degenerate(self, Description):
      oEstimate = estimate_gm(np.zeros(10), 0.5)
      assert oEstimate.value == 0.0 and oEstimate.degenerate
      oEstimate = estimate_hm_c(np.array([1.0, 0.0, 2.0]), 0.5)
      assert oEstimate.value == 0.0 and oEstimate.degenerate
      oEstimate = estimate_gm_b(np.array([1.0, math.inf]), 1.5)
      assert oEstimate.value == math.inf and oEstimate.degenerate
      oEstimate = estimate_hm(np.array([1.0, math.inf, 1.0]), 0.5)
      assert math.isfinite(oEstimate.value) and oEstimate.degenerate
      assert not estimate_hm(np.array([1.0, 2.0, 1.0]), 0.5).degenerate
      with pytest.raises(CDegenerateInputError):
         estimate_gm(np.array([1.0, math.nan]), 0.5)
      with pytest.raises(CDomainError):
         estimate_gm(np.array([1.0]), 0.5)
      with pytest.raises(CUnsupportedEstimatorError):
         estimate_hm(np.ones(10), 1.5)
   # eof def test_estimators_5_degenerate(self, Description):

   # --------------------------------------------------------------------------------------------------------------
   #TM***
   @pytest.mark.parametrize(
      "Description", ["estimator selection",]
   )
   def test_estimators_6_resolve(self, Description):
      assert resolve_estimator("auto", 0.5, "skewed") is EstimatorId.HM_C
      assert resolve_estimator(None, 1.5, "skewed") is EstimatorId.GM
      assert resolve_estimator("auto", 0.5, "symmetric") is EstimatorId.SYM_GM
      assert resolve_estimator("GM_B", 1.5, "skewed") is EstimatorId.GM_B
      with pytest.raises(CUnsupportedEstimatorError):
         resolve_estimator("hm", 1.5, "skewed")
      with pytest.raises(CUnsupportedEstimatorError):
         resolve_estimator("sym_gm", 0.5, "skewed")
      with pytest.raises(CUnsupportedEstimatorError):
         resolve_estimator("gm", 0.5, "symmetric")
      with pytest.raises(CUnsupportedEstimatorError):
         resolve_estimator("median", 0.5, "skewed")
   # eof def test_estimators_6_resolve(self, Description):

   # --------------------------------------------------------------------------------------------------------------
   #TM***
   @pytest.mark.parametrize(
      "Description", ["estimate of a real sketch against the exact moment",]
   )
   def test_estimators_7_sketch_estimate(self, Description):
      dSignal = {iIndex: float(1 + iIndex % 7) for iIndex in range(300)}
      oSketch = CSketch(SketchConfig(0.5, 400, 20260618))
      for iIndex, fValue in dSignal.items():
         oSketch.update(iIndex, fValue)
      fExact = exact_moment(dSignal, 0.5)
      oEstimate = estimate(oSketch)
      assert oEstimate.estimator_id is EstimatorId.HM_C
      assert oEstimate.k == 400
      # 5 asymptotic standard errors
      assert abs(oEstimate.value - fExact) <= 5.0 * fExact * math.sqrt(variance_factor_hm(0.5) / 400)
      assert oEstimate.asymptotic_stderr == pytest.approx(oEstimate.value * math.sqrt(variance_factor_hm(0.5) / 400))
      assert estimate(CSketch(SketchConfig(0.5, 10, 1))).degenerate
   # eof def test_estimators_7_sketch_estimate(self, Description):

   # --------------------------------------------------------------------------------------------------------------
   #TM***
   @pytest.mark.montecarlo
   @pytest.mark.parametrize(
      "Description", ["geometric mean estimator is unbiased",]
   )
   def test_estimators_8_unbiased(self, Description):
      fMoment = 1000.0
      for iSeed, fAlpha in enumerate((0.5, 0.9, 1.1, 1.5)):
         arSketches = sketch_samples(fAlpha, "skewed", 4000, 100, fMoment, 100 + iSeed)
         arEstimates = np.array([estimate_gm(arRow, fAlpha).value for arRow in arSketches])
         fStderr = np.std(arEstimates, ddof=1) / math.sqrt(arEstimates.size)
         assert abs(np.mean(arEstimates) - fMoment) <= 4.0 * fStderr, f"alpha={fAlpha}"
   # eof def test_estimators_8_unbiased(self, Description):

   # --------------------------------------------------------------------------------------------------------------
   #TM***
   @pytest.mark.montecarlo
   @pytest.mark.parametrize(
      "Description", ["empirical variances match the variance factors",]
   )
   def test_estimators_9_variance(self, Description):
      iK = 100
      for iSeed, fAlpha in enumerate((0.25, 0.5, 0.75, 0.9, 1.1, 1.5, 2.0)):
         arSketches = sketch_samples(fAlpha, "skewed", 4000, iK, 1.0, 200 + iSeed)
         arGm = np.array([estimate_gm(arRow, fAlpha).value for arRow in arSketches])
         assert iK * np.var(arGm, ddof=1) == pytest.approx(iK * variance_gm_exact(fAlpha, iK), rel=0.15)
         if fAlpha < 1.0:
            arHm = np.array([estimate_hm_c(arRow, fAlpha).value for arRow in arSketches])
            assert iK * np.var(arHm, ddof=1) == pytest.approx(variance_factor_hm(fAlpha), rel=0.15)
      # variance collapses close to alpha = 1
      iK = 500
      arSketches = sketch_samples(0.99, "skewed", 2000, iK, 1.0, 300)
      arGm = np.array([estimate_gm(arRow, 0.99).value for arRow in arSketches])
      assert iK * np.var(arGm, ddof=1) < 0.05
   # eof def test_estimators_9_variance(self, Description):

# eof class Test_CEstimators

# --------------------------------------------------------------------------------------------------------------
