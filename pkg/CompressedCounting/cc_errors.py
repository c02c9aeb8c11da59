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
# File: cc_errors.py
#
# Initially created by the CompressedCounting team / June 2026
#
# Exception classes of the CompressedCounting package. Every class carries the
# process exit code used by the command line tool when the error terminates it.
#
# History:
#
# 2026-06-02:
#  - initial version
#
# 2026-09-14:
#  - Add CRateOverflowError for left tail roots outside the float range.
#
# ******************************************************************************

EXIT_SUCCESS         = 0
EXIT_INPUT_ERROR     = 2
EXIT_MODEL_VIOLATION = 3
EXIT_SOLVER_FAILURE  = 4

class CCError(Exception):
   """
Base class of all errors raised by the CompressedCounting package.
   """
   exit_code = EXIT_INPUT_ERROR

class CConfigError(CCError):
   """Invalid moment order, sketch configuration or command line configuration."""

class CDomainError(CCError):
   """Argument outside the mathematical domain of a function."""

class CInputError(CCError):
   """Malformed stream data (bad JSON line, non-finite increment, ...)."""

class CMergeError(CCError):
   """Sketches with different configurations cannot be merged."""

class CUnsupportedEstimatorError(CCError):
   """The requested estimator is not defined for the moment order or projection kind."""

class CDegenerateInputError(CCError):
   """Degenerate data, e.g. a zero moment estimate passed to a log transform."""

class CRegimeError(CCError):
   """Asymptotic closed form evaluated outside the regime where it is defined."""

class CModelViolationError(CCError):
   """Signal has a negative entry at evaluation time."""
   exit_code = EXIT_MODEL_VIOLATION

class CSolverError(CCError):
   """
Root finding failed. ``diagnostics`` keeps the bracket and function values
which were seen when giving up.
   """
   exit_code = EXIT_SOLVER_FAILURE

   def __init__(self, msg, diagnostics=None):
      super().__init__(msg)
      self.diagnostics = dict(diagnostics or {})

   def __str__(self):
      sMsg = super().__str__()
      if self.diagnostics:
         sDetails = ", ".join(f"{key}={value!r}" for key, value in sorted(self.diagnostics.items()))
         sMsg = f"{sMsg} ({sDetails})"
      return sMsg

class CSeriesDivergenceError(CSolverError):
   """Moment generating function series did not converge at the requested point."""

class CRateOverflowError(CSolverError):
   """Left tail optimum lies beyond the range of double precision numbers."""
