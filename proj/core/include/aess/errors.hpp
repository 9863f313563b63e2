// Copyright 2026 The aess Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <stdexcept>
#include <string>

namespace aess {

/// Base of every error raised by the library. Numeric failures derive from
/// NumericError so the CLI can map them to a distinct exit code.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class NumericError : public Error {
 public:
  using Error::Error;
};

#define AESS_DEFINE_ERROR(Name, Base) \
  class Name : public Base {          \
   public:                            \
    using Base::Base;                 \
  }

// Instances and input files.
AESS_DEFINE_ERROR(SyntaxError, Error);
AESS_DEFINE_ERROR(NotThreeSat, Error);
AESS_DEFINE_ERROR(InvalidParams, Error);
AESS_DEFINE_ERROR(TooLarge, Error);
AESS_DEFINE_ERROR(Exhausted, Error);

// Operator construction.
AESS_DEFINE_ERROR(DimensionOverflow, Error);
AESS_DEFINE_ERROR(ShapeMismatch, Error);
AESS_DEFINE_ERROR(LeakageError, Error);
AESS_DEFINE_ERROR(KindMismatch, Error);

// Spectral analysis.
AESS_DEFINE_ERROR(ConvergenceFailure, NumericError);
AESS_DEFINE_ERROR(ResidualTooLarge, NumericError);
AESS_DEFINE_ERROR(NearDefective, NumericError);
AESS_DEFINE_ERROR(NoSteadyState, NumericError);
AESS_DEFINE_ERROR(OverlapSaturated, NumericError);
AESS_DEFINE_ERROR(DegenerateCase, NumericError);
AESS_DEFINE_ERROR(ComplexLambda1, NumericError);

// Exceptional-point search.
AESS_DEFINE_ERROR(NoSignChange, NumericError);
AESS_DEFINE_ERROR(TrackingLost, NumericError);

// Dynamics.
AESS_DEFINE_ERROR(StepTooLarge, Error);
AESS_DEFINE_ERROR(ConservationViolated, NumericError);
AESS_DEFINE_ERROR(NoSeparation, NumericError);

// Scaling fits.
AESS_DEFINE_ERROR(FitFailure, NumericError);

#undef AESS_DEFINE_ERROR

}  // namespace aess
