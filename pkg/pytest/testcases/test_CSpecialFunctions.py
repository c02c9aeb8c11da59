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
# test_CSpecialFunctions.py
#
# 18.10.2026
#
# --------------------------------------------------------------------------------------------------------------

import math

import numpy as np
import pytest

from CompressedCounting.cc_errors import CDomainError
from CompressedCounting.special_functions import EULER_GAMMA, digamma, euler_gamma, gamma, ln_gamma

# --------------------------------------------------------------------------------------------------------------

class Test_CSpecialFunctions:
   """Gamma family wrappers"""

   # --------------------------------------------------------------------------------------------------------------
   #TM***
   @pytest.mark.parametrize(
      "Description", ["ln_gamma matches factorials and half integers",]
   )
   def test_special_1_ln_gamma_values(self, Description):
      assert ln_gamma(1.0) == pytest.approx(0.0, abs=1e-15)
      assert ln_gamma(5.0) == pytest.approx(math.log(24.0), rel=1e-14)
      assert ln_gamma(0.5) == pytest.approx(0.5 * math.log(math.pi), rel=1e-14)
      assert ln_gamma(200.0) == pytest.approx(math.lgamma(200.0), rel=1e-14)
      assert isinstance(ln_gamma(3.0), float)
   # eof def test_special_1_ln_gamma_values(self, Description):

   # --------------------------------------------------------------------------------------------------------------
   #TM***
   @pytest.mark.parametrize(
      "Description", ["gamma and digamma identities",]
   )
   def test_special_2_gamma_digamma(self, Description):
      assert gamma(0.5) == pytest.approx(math.sqrt(math.pi), rel=1e-14)
      assert gamma(1e-3) * 1e-3 == pytest.approx(math.gamma(1.001), rel=1e-12)
      assert digamma(1.0) == pytest.approx(-EULER_GAMMA, rel=1e-14)
      assert euler_gamma() == EULER_GAMMA
      for fX in (0.01, 0.3, 1.7, 12.5):
         assert digamma(fX + 1.0) - digamma(fX) == pytest.approx(1.0 / fX, rel=1e-12)
   # eof def test_special_2_gamma_digamma(self, Description):

   # --------------------------------------------------------------------------------------------------------------
   #TM***
   @pytest.mark.parametrize(
      "Description", ["array arguments keep their shape",]
   )
   def test_special_3_arrays(self, Description):
      arValues = ln_gamma(np.array([1.0, 2.0, 3.0]))
      assert isinstance(arValues, np.ndarray)
      np.testing.assert_allclose(arValues, [0.0, 0.0, math.log(2.0)], atol=1e-15)
   # eof def test_special_3_arrays(self, Description):

   # --------------------------------------------------------------------------------------------------------------
   #TM***
   @pytest.mark.parametrize(
      "Description", ["non-positive and NaN arguments raise a domain error",]
   )
   def test_special_4_domain(self, Description):
      for fnFunction in (ln_gamma, gamma, digamma):
         with pytest.raises(CDomainError):
            fnFunction(0.0)
         with pytest.raises(CDomainError):
            fnFunction(-2.5)
         with pytest.raises(CDomainError):
            fnFunction(float("nan"))
      with pytest.raises(CDomainError):
         ln_gamma(np.array([1.0, -1.0]))
   # eof def test_special_4_domain(self, Description):

   # --------------------------------------------------------------------------------------------------------------
   #TM***
   @pytest.mark.parametrize(
      "Description", ["recurrence, reflection and derivative identities",]
   )
   def test_special_5_identities(self, Description):
      for fX in np.linspace(0.1, 100.0, 200):
         assert abs(ln_gamma(fX + 1.0) - ln_gamma(fX) - math.log(fX)) <= 1e-10
      for fZ in np.linspace(0.01, 0.99, 99):
         fProduct = math.exp(ln_gamma(fZ) + ln_gamma(1.0 - fZ))
         assert fProduct == pytest.approx(math.pi / math.sin(math.pi * fZ), rel=1e-9)
      fH = 1e-6
      for fX in np.linspace(0.5, 50.0, 100):
         fDifference = (ln_gamma(fX + fH) - ln_gamma(fX - fH)) / (2.0 * fH)
         assert abs(fDifference - digamma(fX)) <= 1e-5
   # eof def test_special_5_identities(self, Description):

# eof class Test_CSpecialFunctions

# --------------------------------------------------------------------------------------------------------------
