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
# test_CBasics.py
#
# 18.10.2026
#
# --------------------------------------------------------------------------------------------------------------

import json
import os
import subprocess
import sys

import numpy as np
import pytest

from CompressedCounting.cc_sketch import CSketch
from CompressedCounting.complexity_bounds import plan_samples, solve_hm_right
from CompressedCounting.estimators import estimate
from CompressedCounting.version import VERSION

REPOSITORY_ROOT = os.path.abspath(os.path.join(os.path.dirname(__file__), "..", ".."))

# --------------------------------------------------------------------------------------------------------------

def run_cli(lArgs):
   lCmdLineParts = [sys.executable, "-m", "CompressedCounting"] + [str(sArg) for sArg in lArgs]
   print(f"(debug) sCmdLine: {' '.join(lCmdLineParts)}")
   return subprocess.run(lCmdLineParts, cwd=REPOSITORY_ROOT, capture_output=True, text=True)

def write_stream(oPath, lUpdates):
   with open(oPath, 'w', encoding='utf-8') as f:
      for iIndex, fIncrement in lUpdates:
         f.write(json.dumps({"i": iIndex, "delta": fIncrement}) + "\n")
   return oPath

def positive_stream(iCount=500, iSeed=1):
   oRng = np.random.default_rng(iSeed)
   return [(int(oRng.integers(0, 50)), float(oRng.uniform(0.5, 5.0))) for _ in range(iCount)]

@pytest.mark.cli
class Test_CBasics:
   """Command line tests"""

   # --------------------------------------------------------------------------------------------------------------
   #TM***
   @pytest.mark.parametrize(
      "Description", ["Command line test",]
   )
   def test_cmd_line_1_get_version(self, Description):
      """pytest 'CBasics'"""
      oResult = run_cli(["-v"])
      assert oResult.returncode == 0
      assert VERSION in oResult.stdout
   # eof def test_cmd_line_1_get_version(self, Description):

   # --------------------------------------------------------------------------------------------------------------
   #TM***
   @pytest.mark.parametrize(
      "Description", ["sketch of an empty stream is deterministic",]
   )
   def test_cmd_line_2_empty_sketch(self, Description, tmp_path):
      sStream = write_stream(tmp_path / "empty.jsonl", [])
      lArgs = ["sketch", sStream, "--alpha", "0.5", "--k", "10", "--seed", "3"]
      oFirst = run_cli(lArgs)
      oSecond = run_cli(lArgs)
      assert oFirst.returncode == 0
      assert oFirst.stdout == oSecond.stdout
      oSketch = CSketch.loads(oFirst.stdout)
      assert oSketch.config.k == 10 and not np.any(oSketch.samples())

      sSketchFile = tmp_path / "empty.json"
      sSketchFile.write_text(oFirst.stdout, encoding='utf-8')
      oResult = run_cli(["estimate", sSketchFile])
      assert oResult.returncode == 0
      dRecord = json.loads(oResult.stdout)
      assert dRecord["estimate"] == 0.0 and dRecord["degenerate"]
   # eof def test_cmd_line_2_empty_sketch(self, Description, tmp_path):

   # --------------------------------------------------------------------------------------------------------------
   #TM***
   @pytest.mark.parametrize(
      "Description", ["alpha = 1 is the plain counter",]
   )
   def test_cmd_line_3_counter(self, Description, tmp_path):
      sStream = write_stream(tmp_path / "stream.jsonl", [(1, 2.5), (2, -1.0), (1, 0.25)])
      oResult = run_cli(["sketch", sStream, "--counter"])
      assert oResult.returncode == 0
      assert json.loads(oResult.stdout) == 1.75
      oResult = run_cli(["sketch", sStream, "--alpha", "1"])
      assert oResult.returncode == 2
      assert "--counter" in oResult.stderr
   # eof def test_cmd_line_3_counter(self, Description, tmp_path):

   # --------------------------------------------------------------------------------------------------------------
   #TM***
   @pytest.mark.parametrize(
      "Description", ["malformed input and configuration exit with code 2",]
   )
   def test_cmd_line_4_input_errors(self, Description, tmp_path):
      sStream = tmp_path / "broken.jsonl"
      sStream.write_text('{"i": 1, "delta": 1.0}\n{"i": 1, "delta": \n', encoding='utf-8')
      oResult = run_cli(["sketch", sStream, "--alpha", "0.5"])
      assert oResult.returncode == 2
      assert "broken.jsonl:2:" in oResult.stderr
      assert run_cli(["sketch", tmp_path / "missing.jsonl", "--alpha", "0.5"]).returncode == 2

      sGood = write_stream(tmp_path / "stream.jsonl", [(1, 1.0)])
      for dConfig in ({"alpha": "0.5"}, {"alpha": 0.5, "colour": "red"}, [0.5]):
         sConfig = tmp_path / "config.json"
         sConfig.write_text(json.dumps(dConfig), encoding='utf-8')
         assert run_cli(["sketch", sGood, "--config", sConfig]).returncode == 2
      assert run_cli(["sketch", sGood, "--alpha", "2.5"]).returncode == 2
   # eof def test_cmd_line_4_input_errors(self, Description, tmp_path):

   # --------------------------------------------------------------------------------------------------------------
   #TM***
   @pytest.mark.parametrize(
      "Description", ["estimate command matches the library and the configuration file",]
   )
   def test_cmd_line_5_estimate(self, Description, tmp_path):
      sStream = write_stream(tmp_path / "stream.jsonl", positive_stream())
      sConfig = tmp_path / "config.json"
      sConfig.write_text(json.dumps({"alpha": 0.5, "k": 64, "seed": 11}), encoding='utf-8')
      sSketchFile = tmp_path / "sketch.json"
      oResult = run_cli(["sketch", sStream, "--config", sConfig, "--out", sSketchFile])
      assert oResult.returncode == 0
      oSketch = CSketch.loads(sSketchFile.read_text(encoding='utf-8'))
      assert oSketch.config.k == 64 and oSketch.config.seed.master_seed == 11

      for sEstimator in ("auto", "gm", "hm"):
         oResult = run_cli(["estimate", sSketchFile, "--estimator", sEstimator])
         assert oResult.returncode == 0
         dRecord = json.loads(oResult.stdout)
         oEstimate = estimate(oSketch, sEstimator)
         assert dRecord["estimate"] == oEstimate.value
         assert dRecord["estimator"] == oEstimate.estimator_id.value
      assert run_cli(["estimate", sSketchFile, "--estimator", "sym_gm"]).returncode == 2
   # eof def test_cmd_line_5_estimate(self, Description, tmp_path):

   # --------------------------------------------------------------------------------------------------------------
   #TM***
   @pytest.mark.parametrize(
      "Description", ["sharded ingestion equals single sketch",]
   )
   def test_cmd_line_6_shards(self, Description, tmp_path):
      sStream = write_stream(tmp_path / "stream.jsonl", positive_stream(2000, 2))
      lArgs = ["sketch", sStream, "--alpha", "1.5", "--k", "32", "--seed", "5"]
      oSingle = run_cli(lArgs)
      oSharded = run_cli(lArgs + ["--shards", "4"])
      assert oSingle.returncode == 0 and oSharded.returncode == 0
      oSingleSketch = CSketch.loads(oSingle.stdout)
      oShardedSketch = CSketch.loads(oSharded.stdout)
      assert oShardedSketch.config == oSingleSketch.config
      np.testing.assert_allclose(oShardedSketch.samples(), oSingleSketch.samples(), rtol=1e-9)
   # eof def test_cmd_line_6_shards(self, Description, tmp_path):

   # --------------------------------------------------------------------------------------------------------------
   #TM***
   @pytest.mark.parametrize(
      "Description", ["plan and bounds commands",]
   )
   def test_cmd_line_7_plan_bounds(self, Description):
      oResult = run_cli(["plan", "--alpha", "0.999", "--epsilon", "0.1", "--delta", "0.05"])
      assert oResult.returncode == 0
      dRecord = json.loads(oResult.stdout)
      oPlan = plan_samples(0.999, 0.1, 0.05)
      assert dRecord["k"] == oPlan.k
      assert dRecord["G"] == pytest.approx(oPlan.G, rel=1e-12)
      assert dRecord["estimator"] == "gm_b"

      oResult = run_cli(["bounds", "--alpha", "0.9", "--epsilon", "0.2", "--k", "100"])
      assert oResult.returncode == 0
      dRecord = json.loads(oResult.stdout)
      for sSide in ("right", "left"):
         assert dRecord[sSide]["side"] == sSide
         assert dRecord[sSide]["exponent_rate"] > 0.0
         assert 0.0 < dRecord[sSide]["probability_bound"] < 1.0
      dRecord = json.loads(run_cli(["bounds", "--alpha", "0.5", "--epsilon", "1.5"]).stdout)
      assert dRecord["left"] is None
      assert run_cli(["plan", "--epsilon", "0.1"]).returncode == 2
   # eof def test_cmd_line_7_plan_bounds(self, Description):

   # --------------------------------------------------------------------------------------------------------------
   #TM***
   @pytest.mark.parametrize(
      "Description", ["compare reports model violations with exit code 3",]
   )
   def test_cmd_line_8_compare(self, Description, tmp_path):
      sStream = write_stream(tmp_path / "stream.jsonl", positive_stream())
      oResult = run_cli(["compare", sStream, "--alpha", "0.5", "--k", "200"])
      assert oResult.returncode == 0
      dRecord = json.loads(oResult.stdout)
      assert not dRecord["model_violation"]
      assert dRecord["estimator"] == "hm_c"
      assert dRecord["relative_error"] < 0.5

      sNegative = write_stream(tmp_path / "negative.jsonl", [(1, 2.0), (2, 1.0), (2, -3.0)])
      oResult = run_cli(["compare", sNegative, "--alpha", "0.5"])
      assert oResult.returncode == 3
      assert json.loads(oResult.stdout)["model_violation"] is True

      assert run_cli(["compare", sStream, "--functional", "logdist"]).returncode == 2
   # eof def test_cmd_line_8_compare(self, Description, tmp_path):

   # --------------------------------------------------------------------------------------------------------------
   #TM***
   @pytest.mark.parametrize(
      "Description", ["log norm, log distance and gamma shape commands",]
   )
   def test_cmd_line_9_applications(self, Description, tmp_path):
      sStream = write_stream(tmp_path / "stream.jsonl", [(iIndex, 2.0) for iIndex in range(20)])
      sMinus = write_stream(tmp_path / "minus.jsonl", [(iIndex, 1.0) for iIndex in range(20)])
      sSketchFile = tmp_path / "sketch.json"
      assert run_cli(["sketch", sStream, "--alpha", "0.05", "--k", "50", "--out", sSketchFile]).returncode == 0
      oResult = run_cli(["lognorm", sSketchFile, "--dimension", "20"])
      assert oResult.returncode == 0
      dRecord = json.loads(oResult.stdout)
      assert dRecord["alpha"] == 0.05 and dRecord["dimension"] == 20

      sDiffFile = tmp_path / "diff.json"
      oResult = run_cli(["sketch", sStream, "--minus", sMinus, "--alpha", "0.05", "--k", "50",
                         "--kind", "symmetric", "--out", sDiffFile])
      assert oResult.returncode == 0
      assert run_cli(["logdist", sDiffFile, "--dimension", "20"]).returncode == 0
      assert run_cli(["logdist", sSketchFile, "--dimension", "20"]).returncode == 2

      oResult = run_cli(["compare", sStream, "--functional", "lognorm", "--k", "50"])
      assert oResult.returncode == 0
      assert json.loads(oResult.stdout)["alpha"] == 0.01

      oResult = run_cli(["gamma-shape", "--moment-mean", "2", "--alpha", "1", "--dimension", "1000"])
      assert oResult.returncode == 0
      dRecord = json.loads(oResult.stdout)
      assert dRecord["theta"] == pytest.approx(2.0, rel=1e-10)
      assert dRecord["variance"] == pytest.approx(0.002, rel=1e-9)
   # eof def test_cmd_line_9_applications(self, Description, tmp_path):

   # --------------------------------------------------------------------------------------------------------------
   #TM***
   @pytest.mark.parametrize(
      "Description", ["log norm epsilon follows flag, configuration file, unset",]
   )
   def test_cmd_line_10_lognorm_epsilon(self, Description, tmp_path):
      sStream = write_stream(tmp_path / "stream.jsonl", [(iIndex, 2.0) for iIndex in range(20)])
      sSketchFile = tmp_path / "sketch.json"
      assert run_cli(["sketch", sStream, "--alpha", "0.05", "--k", "50", "--out", sSketchFile]).returncode == 0
      dRecord = json.loads(run_cli(["lognorm", sSketchFile, "--dimension", "20"]).stdout)
      assert dRecord["bound_right"] is None and dRecord["bound_left"] is None

      sConfig = tmp_path / "config.json"
      sConfig.write_text(json.dumps({"epsilon": 1.0}), encoding='utf-8')
      oResult = run_cli(["lognorm", sSketchFile, "--dimension", "20", "--config", sConfig])
      assert oResult.returncode == 0
      dRecord = json.loads(oResult.stdout)
      assert 0.0 < dRecord["bound_right"] <= 1.0 and 0.0 < dRecord["bound_left"] <= 1.0

      sConfig.write_text(json.dumps({"epsilon": -1.0}), encoding='utf-8')
      assert run_cli(["lognorm", sSketchFile, "--dimension", "20", "--config", sConfig]).returncode == 2
      oResult = run_cli(["lognorm", sSketchFile, "--dimension", "20", "--config", sConfig, "--epsilon", "1.0"])
      assert oResult.returncode == 0
      assert json.loads(oResult.stdout)["bound_right"] == dRecord["bound_right"]
   # eof def test_cmd_line_10_lognorm_epsilon(self, Description, tmp_path):

   # --------------------------------------------------------------------------------------------------------------
   #TM***
   @pytest.mark.parametrize(
      "Description", ["harmonic mean bounds for a large right deviation",]
   )
   def test_cmd_line_11_hm_bounds(self, Description):
      oResult = run_cli(["bounds", "--alpha", "0.5", "--epsilon", "3", "--estimator", "hm"])
      assert oResult.returncode == 0
      dRecord = json.loads(oResult.stdout)
      assert dRecord["right"]["estimator"] == "hm"
      assert dRecord["right"]["G"] == pytest.approx(solve_hm_right(0.5, 3.0).G, rel=1e-12)
      assert dRecord["left"] is None
   # eof def test_cmd_line_11_hm_bounds(self, Description):

   # --------------------------------------------------------------------------------------------------------------
   #TM***
   @pytest.mark.parametrize(
      "Description", ["repository configuration provides the setup values",]
   )
   def test_cmd_line_12_repository_config(self, Description):
      from config.CRepositoryConfig import CRepositoryConfig
      oRepositoryConfig = CRepositoryConfig(os.path.join(REPOSITORY_ROOT, "setup.py"))
      assert oRepositoryConfig.Get('PACKAGEVERSION') == VERSION
      assert os.path.isfile(oRepositoryConfig.Get('README_MD'))
      assert oRepositoryConfig.Get('PACKAGENAME') == "CompressedCounting"
      assert oRepositoryConfig.Get('PACKAGESOURCEFOLDER') is None
   # eof def test_cmd_line_12_repository_config(self, Description):

# eof class Test_CBasics

# --------------------------------------------------------------------------------------------------------------
