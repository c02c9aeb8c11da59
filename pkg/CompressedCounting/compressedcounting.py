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
# File: compressedcounting.py
#
# Initially created by the CompressedCounting team / June 2026
#
# Command line front end: ingest JSONL update streams into sketches, estimate
# moments, plan sample sizes, report tail bounds and compare estimates with
# the exact values of the replayed stream.
#
# JSON results are written to stdout (or --out), log messages to stderr.
#
# History:
#
# 2026-06-20:
#  - initial version
#
# 2026-08-03:
#  - Add --shards: round-robin ingestion into merged sketches.
#  - Add --config: json configuration file validated by CONFIG_SCHEMA.
#
# 2026-09-02:
#  - Add lognorm, logdist and gamma-shape commands, compare --functional.
#
# ******************************************************************************

import argparse
import json
import math
import os
import sys
from concurrent.futures import ThreadPoolExecutor

from CompressedCounting.applications import gamma_shape_from_moment, gamma_shape_variance
from CompressedCounting.cc_errors import (CCError, CConfigError, CInputError, EXIT_INPUT_ERROR,
                                          EXIT_MODEL_VIOLATION, EXIT_SUCCESS)
from CompressedCounting.cc_sketch import CSketch, SketchConfig, StreamUpdate
from CompressedCounting.complexity_bounds import plan_samples, tail_bounds, tail_probability
from CompressedCounting.estimators import estimate
from CompressedCounting.log_functionals import (DEFAULT_LOG_ALPHA, estimate_log_distance,
                                                estimate_log_norm)
from CompressedCounting.logger import Logger
from CompressedCounting.reference_oracle import (exact_log_distance, exact_log_norm, exact_moment,
                                                 negative_entries, replay)
from CompressedCounting.version import VERSION, VERSION_DATE

CONFIG_SCHEMA = {
   "alpha"     : [int, float],
   "k"         : int,
   "seed"      : int,
   "kind"      : str,
   "estimator" : str,
   "epsilon"   : [int, float],
   "delta"     : float,
   "shards"    : int,
   "dimension" : int
}

DEFAULT_CONFIG = {
   "alpha"     : None,
   "k"         : 100,
   "seed"      : 0,
   "kind"      : "skewed",
   "estimator" : "auto",
   "epsilon"   : 0.1,
   "delta"     : 0.05,
   "shards"    : 1,
   "dimension" : None
}

FUNCTIONALS = ("moment", "lognorm", "logdist")

def is_valid_config(dConfig, dSchema=CONFIG_SCHEMA, bExitOnFail=True):
   """
Validate the json configuration base on given schema.

Default schema supports below information:

.. code:: python

   CONFIG_SCHEMA = {
      "alpha"     : [int, float],
      "k"         : int,
      "seed"      : int,
      "kind"      : str,
      "estimator" : str,
      "epsilon"   : [int, float],
      "delta"     : float,
      "shards"    : int,
      "dimension" : int
   }

**Arguments:**

*  ``dConfig``

   / *Condition*: required / *Type*: dict /

   Json configuration object to be verified.

*  ``dSchema``

   / *Condition*: optional / *Type*: dict / *Default*: CONFIG_SCHEMA /

   Schema for the validation.

*  ``bExitOnFail``

   / *Condition*: optional / *Type*: bool / *Default*: True /

   If True, exit tool in case the validation is fail.

**Returns:**

*  ``bValid``

   / *Type*: bool /

   True if the given json configuration data is valid.
   """
   if not isinstance(dConfig, dict):
      Logger.log_error("Configuration json file must contain an object.", fatal_error=bExitOnFail)
      return False
   bValid = True
   for key in dConfig:
      if key in dSchema.keys():
         # List of support types
         if isinstance(dSchema[key], list):
            if type(dConfig[key]) not in dSchema[key]:
               bValid = False
         # Fixed type
         else:
            if type(dConfig[key]) != dSchema[key]:
               bValid = False

         if not bValid:
            Logger.log_error(f"Value of '{key}' has wrong type '{type(dConfig[key])}' in configuration json file.",
                             fatal_error=bExitOnFail)
            break

      else:
         bValid = False
         Logger.log_error(f"Information '{key}' is not supported in configuration json file.",
                          fatal_error=bExitOnFail)
         break

   return bValid

def process_config_file(config_file):
   """
Parse the json configuration file given by ``--config``.

Values of the configuration file have lower priority than command line
arguments and higher priority than ``DEFAULT_CONFIG``.

**Arguments:**

*  ``config_file``

   / *Condition*: required / *Type*: str /

   Path to configuration file.

**Returns:**

*  ``dConfig``

   / *Type*: dict /

   Configuration object.
   """
   if not os.path.isfile(config_file):
      Logger.log_error(f"The provided config file is not existing: '{config_file}'", fatal_error=True)
   with open(config_file, encoding='utf-8') as f:
      try:
         dConfig = json.load(f)
      except Exception as reason:
         Logger.log_error(f"Cannot parse the json file '{config_file}'. Reason: {reason}",
                          fatal_error=True)

   if not is_valid_config(dConfig, bExitOnFail=False):
      Logger.log_error(f"Error in configuration file '{config_file}'.", fatal_error=True)
   return dConfig

def get_setting(args, dConfig, sKey, bUseDefault=True):
   """
Value of ``sKey`` by priority: command line, configuration file, default.
With ``bUseDefault=False`` an unset value is None.
   """
   value = getattr(args, sKey, None)
   if value is not None:
      return value
   if sKey in dConfig:
      return dConfig[sKey]
   return DEFAULT_CONFIG[sKey] if bUseDefault else None

def __process_commandline(lArgs=None):
   """
Process provided argument(s) from command line.

Available commands:

   - `sketch` : build a sketch from a JSONL update stream (or the plain sum with `--counter`).
   - `estimate` : estimate the moment from a sketch file.
   - `plan` : sample size for relative error `epsilon` with probability `1-delta`.
   - `bounds` : right and left tail bound constants.
   - `compare` : estimate versus exact value of the replayed stream.
   - `lognorm` / `logdist` : logarithmic norm / distance from a sketch file.
   - `gamma-shape` : gamma shape parameter from a moment estimate.

Every command accepts `--config`, `--logfile` and `--quiet`.

**Arguments:**

*  ``lArgs``

   / *Condition*: optional / *Type*: list / *Default*: None /

   Arguments to parse instead of ``sys.argv``.

**Returns:**

   / *Type*: `Namespace` object /
   """
   PROG_NAME = "CompressedCounting (frequency moments of Turnstile streams)"
   PROG_DESC = "CompressedCounting estimates alpha-th frequency moments of data streams "+\
               "with skewed stable random projections."

   cmdParser = argparse.ArgumentParser(prog=PROG_NAME, description=PROG_DESC)
   cmdParser.add_argument('-v', '--version', action='version',
                          version=f'v{VERSION} ({VERSION_DATE})',
                          help='version of CompressedCounting.')

   cmdCommon = argparse.ArgumentParser(add_help=False)
   cmdCommon.add_argument('--config', type=str,
                          help='configuration json file (alpha, k, seed, kind, estimator, epsilon, delta, shards, dimension).')
   cmdCommon.add_argument('--logfile', type=str,
                          help='append log messages to this file.')
   cmdCommon.add_argument('--quiet', action="store_true",
                          help='if set, only warnings and errors are logged.')
   cmdCommon.add_argument('--out', type=str,
                          help='write the result to this file instead of stdout.')

   cmdSketchArgs = argparse.ArgumentParser(add_help=False)
   cmdSketchArgs.add_argument('--alpha', type=float, help='moment order in (0, 2].')
   cmdSketchArgs.add_argument('--k', type=int, help='number of samples (default: 100).')
   cmdSketchArgs.add_argument('--seed', type=int, help='master seed of the projections (default: 0).')
   cmdSketchArgs.add_argument('--kind', type=str, choices=["skewed", "symmetric"],
                              help='projection kind (default: skewed).')
   cmdSketchArgs.add_argument('--shards', type=int,
                              help='split the input round-robin into N sketches merged at the end (default: 1).')
   cmdSketchArgs.add_argument('--minus', type=str,
                              help='second JSONL stream ingested with negated increments.')

   oSubParsers = cmdParser.add_subparsers(dest="command", required=True)

   cmdSketch = oSubParsers.add_parser('sketch', parents=[cmdCommon, cmdSketchArgs],
                                      help='build a sketch from a JSONL update stream.')
   cmdSketch.add_argument('input', type=str, help="JSONL update stream, '-' for stdin.")
   cmdSketch.add_argument('--counter', action="store_true",
                          help='alpha = 1: write the plain running sum of the increments.')

   cmdEstimate = oSubParsers.add_parser('estimate', parents=[cmdCommon],
                                        help='estimate the frequency moment from a sketch file.')
   cmdEstimate.add_argument('sketchfile', type=str, help='sketch file written by the sketch command.')
   cmdEstimate.add_argument('--estimator', type=str, choices=["auto", "gm", "gm_b", "hm", "hm_c", "sym_gm"],
                            help='estimator (default: auto).')

   for sCommand, sHelp in (('plan', 'number of samples for relative error epsilon with probability 1-delta.'),
                           ('bounds', 'right and left tail bound constants.')):
      cmdPlan = oSubParsers.add_parser(sCommand, parents=[cmdCommon], help=sHelp)
      cmdPlan.add_argument('--alpha', type=float, help='moment order in (0, 2].')
      cmdPlan.add_argument('--epsilon', type=float, help='relative error (default: 0.1).')
      cmdPlan.add_argument('--estimator', type=str, choices=["auto", "gm", "gm_b", "hm", "hm_c"],
                           help='tail bound constants, auto uses gm_b (default: auto).')
      if sCommand == 'plan':
         cmdPlan.add_argument('--delta', type=float, help='failure probability (default: 0.05).')
      else:
         cmdPlan.add_argument('--k', type=int, help='also report the probability bounds for k samples.')

   cmdCompare = oSubParsers.add_parser('compare', parents=[cmdCommon, cmdSketchArgs],
                                       help='estimate versus exact value of the replayed stream.')
   cmdCompare.add_argument('input', type=str, help="JSONL update stream, '-' for stdin.")
   cmdCompare.add_argument('--estimator', type=str, choices=["auto", "gm", "gm_b", "hm", "hm_c", "sym_gm"],
                           help='estimator for --functional moment (default: auto).')
   cmdCompare.add_argument('--functional', type=str, choices=FUNCTIONALS, default="moment",
                           help='moment (default), lognorm or logdist (requires --minus).')

   for sCommand, sHelp in (('lognorm', 'logarithmic norm from a skewed sketch with alpha <= 0.1.'),
                           ('logdist', 'logarithmic distance from a symmetric difference sketch.')):
      cmdLog = oSubParsers.add_parser(sCommand, parents=[cmdCommon], help=sHelp)
      cmdLog.add_argument('sketchfile', type=str, help='sketch file written by the sketch command.')
      cmdLog.add_argument('--dimension', type=int, help='number of non-zero signal entries.')
      if sCommand == 'lognorm':
         cmdLog.add_argument('--epsilon', type=float, help='attach tail bounds for this deviation.')

   cmdGamma = oSubParsers.add_parser('gamma-shape', parents=[cmdCommon],
                                     help='gamma shape parameter from an alpha-th moment estimate.')
   cmdGamma.add_argument('--moment-mean', dest='moment_mean', type=float, required=True,
                         help='mean of x^alpha over the samples.')
   cmdGamma.add_argument('--alpha', type=float, help='moment order, positive.')
   cmdGamma.add_argument('--dimension', type=int,
                         help='number of samples, adds the delta method variance.')

   return cmdParser.parse_args(lArgs)

def read_updates(sPath, bNegate=False):
   """
Parse a JSONL update stream, one ``{"i": <index>, "delta": <increment>}``
per line. Blank lines are skipped.

**Arguments:**

*  ``sPath``

   / *Condition*: required / *Type*: str /

   Path to the stream file, ``-`` for stdin.

*  ``bNegate``

   / *Condition*: optional / *Type*: bool / *Default*: False /

   Negate every increment.

**Returns:**

*  ``lUpdates``

   / *Type*: list /

   List of StreamUpdate.
   """
   if sPath != '-' and not os.path.isfile(sPath):
      raise CInputError(f"The provided stream file is not existing: '{sPath}'")
   lUpdates = []
   oFile = sys.stdin if sPath == '-' else open(sPath, encoding='utf-8')
   try:
      for iLine, sLine in enumerate(oFile, start=1):
         if sLine.strip() == '':
            continue
         try:
            oUpdate = StreamUpdate.from_record(json.loads(sLine))
         except (ValueError, CInputError) as reason:
            raise CInputError(f"{sPath}:{iLine}: {reason}")
         lUpdates.append(oUpdate.negated() if bNegate else oUpdate)
   finally:
      if oFile is not sys.stdin:
         oFile.close()
   return lUpdates

def build_sketch(oConfig, lUpdates, iShards=1):
   """
Ingest the updates into a sketch. With ``iShards > 1`` the updates are
distributed round-robin to one sketch per shard, ingested in worker threads
and merged in shard order.
   """
   if iShards < 1:
      raise CConfigError(f"shards must be positive, got {iShards}")
   if iShards == 1:
      return CSketch(oConfig).update_many(lUpdates)
   with ThreadPoolExecutor(max_workers=iShards) as oExecutor:
      lSketches = list(oExecutor.map(lambda iShard: CSketch(oConfig).update_many(lUpdates[iShard::iShards]),
                                     range(iShards)))
   oSketch = lSketches[0]
   for oShard in lSketches[1:]:
      oSketch = oSketch.merge(oShard)
   return oSketch

def _json_number(value):
   if value is None:
      return None
   fValue = float(value)
   return fValue if math.isfinite(fValue) else None

def write_result(args, oResult):
   """
Write a JSON document (sorted keys) or a preformatted text to ``--out`` or stdout.
   """
   if isinstance(oResult, str):
      sText = oResult
   else:
      sText = json.dumps(oResult, sort_keys=True, allow_nan=False)
   if args.out:
      with open(args.out, 'w', encoding='utf-8') as f:
         f.write(sText + "\n")
   else:
      sys.stdout.write(sText + "\n")
      sys.stdout.flush()

def load_sketch(sPath):
   if not os.path.isfile(sPath):
      raise CInputError(f"The provided sketch file is not existing: '{sPath}'")
   with open(sPath, encoding='utf-8') as f:
      return CSketch.loads(f.read())

def _required(args, dConfig, sKey):
   value = get_setting(args, dConfig, sKey)
   if value is None:
      raise CConfigError(f"'{sKey}' is required (command line or --config)")
   return value

def _sketch_config(args, dConfig, kind=None, alpha=None):
   fAlpha = alpha if alpha is not None else _required(args, dConfig, "alpha")
   if float(fAlpha) == 1.0:
      raise CConfigError("alpha = 1 is the plain sum of the stream, use 'sketch --counter'")
   return SketchConfig(float(fAlpha), get_setting(args, dConfig, "k"), get_setting(args, dConfig, "seed"),
                       kind if kind is not None else get_setting(args, dConfig, "kind"))

def _stream_updates(args):
   lUpdates = read_updates(args.input)
   if args.minus is not None:
      lUpdates += read_updates(args.minus, bNegate=True)
   return lUpdates

def cmd_sketch(args, dConfig):
   lUpdates = _stream_updates(args)
   if args.counter:
      Logger.log(f"Counter of {len(lUpdates)} updates")
      write_result(args, json.dumps(math.fsum(oUpdate.increment for oUpdate in lUpdates)))
      return EXIT_SUCCESS
   oConfig = _sketch_config(args, dConfig)
   oSketch = build_sketch(oConfig, lUpdates, get_setting(args, dConfig, "shards"))
   Logger.log(f"Sketch of {len(lUpdates)} updates: {oSketch!r}")
   write_result(args, oSketch.dumps())
   return EXIT_SUCCESS

def _estimate_record(oEstimate):
   return {
      "estimate"   : _json_number(oEstimate.value),
      "estimator"  : oEstimate.estimator_id.value,
      "alpha"      : oEstimate.alpha.alpha,
      "k"          : oEstimate.k,
      "stderr"     : _json_number(oEstimate.asymptotic_stderr),
      "degenerate" : oEstimate.degenerate,
   }

def cmd_estimate(args, dConfig):
   oSketch = load_sketch(args.sketchfile)
   oEstimate = estimate(oSketch, get_setting(args, dConfig, "estimator"))
   write_result(args, _estimate_record(oEstimate))
   return EXIT_SUCCESS

def _bound_estimator(args, dConfig):
   sEstimator = get_setting(args, dConfig, "estimator")
   return "gm_b" if sEstimator == "auto" else sEstimator

def cmd_plan(args, dConfig):
   oPlan = plan_samples(_required(args, dConfig, "alpha"), get_setting(args, dConfig, "epsilon"),
                        get_setting(args, dConfig, "delta"), _bound_estimator(args, dConfig))
   write_result(args, {
      "alpha"     : oPlan.alpha.alpha,
      "epsilon"   : oPlan.epsilon,
      "delta"     : oPlan.delta,
      "estimator" : oPlan.estimator.value,
      "G"         : oPlan.G,
      "G_R"       : oPlan.G_R,
      "G_L"       : oPlan.G_L,
      "k"         : oPlan.k,
   })
   return EXIT_SUCCESS

def _report_record(oReport, iK):
   if oReport is None:
      return None
   dRecord = {
      "alpha"         : oReport.alpha.alpha,
      "epsilon"       : oReport.epsilon,
      "side"          : oReport.side.value,
      "estimator"     : oReport.estimator.value,
      "C"             : oReport.C,
      "G"             : oReport.G,
      "exponent_rate" : oReport.exponent_rate,
      "residual"      : oReport.residual,
      "iterations"    : oReport.iterations,
   }
   if iK is not None:
      dRecord["probability_bound"] = tail_probability(oReport, iK)
   return dRecord

def cmd_bounds(args, dConfig):
   iK = args.k
   oRight, oLeft = tail_bounds(_required(args, dConfig, "alpha"), get_setting(args, dConfig, "epsilon"),
                               _bound_estimator(args, dConfig))
   write_result(args, {"right": _report_record(oRight, iK), "left": _report_record(oLeft, iK)})
   return EXIT_SUCCESS

def _relative_error(fEstimate, fExact):
   if fEstimate is None or fExact is None or fExact == 0.0:
      return None
   return _json_number(abs(fEstimate - fExact) / abs(fExact))

def cmd_compare(args, dConfig):
   """
Sketch the stream, replay it exactly and compare. A negative final entry is
a model violation: the result is written with ``model_violation`` set and
the command exits with code 3.
   """
   sFunctional = args.functional
   if sFunctional == "logdist" and args.minus is None:
      raise CConfigError("compare --functional logdist requires --minus")
   lUpdates = read_updates(args.input)
   lMinus = read_updates(args.minus, bNegate=True) if args.minus is not None else []
   dSignal = replay(lUpdates + lMinus)

   fAlpha = get_setting(args, dConfig, "alpha")
   if sFunctional == "moment":
      sKind = None
      fAlpha = _required(args, dConfig, "alpha")
   else:
      sKind = "skewed" if sFunctional == "lognorm" else "symmetric"
      fAlpha = DEFAULT_LOG_ALPHA if fAlpha is None else fAlpha
   oConfig = _sketch_config(args, dConfig, kind=sKind, alpha=fAlpha)
   iDimension = len(dSignal)
   dResult = {
      "functional"      : sFunctional,
      "alpha"           : oConfig.alpha.alpha,
      "k"               : oConfig.k,
      "dimension"       : iDimension,
      "exact"           : None,
      "estimate"        : None,
      "relative_error"  : None,
      "model_violation" : False,
   }

   lNegative = negative_entries(dSignal)
   if sFunctional != "logdist" and lNegative:
      dResult["model_violation"] = True
      write_result(args, dResult)
      Logger.log_error(f"Signal has {len(lNegative)} negative entries at evaluation time "
                       f"(first index {lNegative[0]}), no estimate is trusted",
                       fatal_error=True, exit_code=EXIT_MODEL_VIOLATION)

   oSketch = build_sketch(oConfig, lUpdates + lMinus, get_setting(args, dConfig, "shards"))
   if sFunctional == "moment":
      fExact = exact_moment(dSignal, oConfig.alpha.alpha)
      oEstimate = estimate(oSketch, get_setting(args, dConfig, "estimator"))
      fEstimate = _json_number(oEstimate.value)
      dResult["estimator"] = oEstimate.estimator_id.value
   elif sFunctional == "lognorm":
      fExact = exact_log_norm(dSignal)
      fEstimate = estimate_log_norm(oSketch, iDimension).value
   else:
      fExact = exact_log_distance(replay(lUpdates), replay(oUpdate.negated() for oUpdate in lMinus))
      fEstimate = estimate_log_distance(oSketch, iDimension).value
   dResult.update(exact=fExact, estimate=fEstimate, relative_error=_relative_error(fEstimate, fExact))
   write_result(args, dResult)
   return EXIT_SUCCESS

def cmd_lognorm(args, dConfig):
   oSketch = load_sketch(args.sketchfile)
   oEstimate = estimate_log_norm(oSketch, _required(args, dConfig, "dimension"),
                                 get_setting(args, dConfig, "epsilon", bUseDefault=False))
   write_result(args, {
      "value"           : oEstimate.value,
      "alpha"           : oEstimate.alpha_used,
      "dimension"       : oEstimate.dimension,
      "moment_estimate" : oEstimate.moment_estimate,
      "bound_right"     : oEstimate.bound_right,
      "bound_left"      : oEstimate.bound_left,
   })
   return EXIT_SUCCESS

def cmd_logdist(args, dConfig):
   oSketch = load_sketch(args.sketchfile)
   oEstimate = estimate_log_distance(oSketch, _required(args, dConfig, "dimension"))
   write_result(args, {
      "value"           : oEstimate.value,
      "alpha"           : oEstimate.alpha_used,
      "dimension"       : oEstimate.dimension,
      "moment_estimate" : oEstimate.moment_estimate,
   })
   return EXIT_SUCCESS

def cmd_gamma_shape(args, dConfig):
   fAlpha = _required(args, dConfig, "alpha")
   fTheta = gamma_shape_from_moment(args.moment_mean, fAlpha)
   dResult = {"theta": fTheta, "alpha": float(fAlpha), "moment_mean": args.moment_mean}
   iDimension = get_setting(args, dConfig, "dimension")
   if iDimension is not None:
      dResult["dimension"] = iDimension
      dResult["variance"] = gamma_shape_variance(fTheta, fAlpha, iDimension)
   write_result(args, dResult)
   return EXIT_SUCCESS

COMMANDS = {
   "sketch"      : cmd_sketch,
   "estimate"    : cmd_estimate,
   "plan"        : cmd_plan,
   "bounds"      : cmd_bounds,
   "compare"     : cmd_compare,
   "lognorm"     : cmd_lognorm,
   "logdist"     : cmd_logdist,
   "gamma-shape" : cmd_gamma_shape,
}

def CompressedCounting(args=None):
   """
Entry point of the ``CompressedCounting`` command line tool.

Flow:

1. Process provided arguments from command line.
2. Read the optional configuration file.
3. Run the command and write its JSON result.

Library errors terminate the tool with their exit code: 2 for input and
configuration errors, 3 for model violations, 4 for solver failures.

**Arguments:**

*  ``args``

   / *Condition*: optional / *Type*: list / *Default*: None /

   Command line arguments, ``sys.argv[1:]`` if None.

**Returns:**

*  ``iExitCode``

   / *Type*: int /
   """
   args = __process_commandline(args)
   Logger.config(output_logfile=args.logfile, quiet=args.quiet)

   dConfig = {}
   if args.config is not None:
      dConfig = process_config_file(args.config)

   try:
      return COMMANDS[args.command](args, dConfig)
   except CCError as reason:
      Logger.log_error(reason, fatal_error=True, exit_code=reason.exit_code)
   except OSError as reason:
      Logger.log_error(f"Cannot access file: {reason}", fatal_error=True, exit_code=EXIT_INPUT_ERROR)
