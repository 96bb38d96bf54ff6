// Copyright 2026 The puresteady Authors
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

#ifndef PURESTEADY_ERRORS_HPP
#define PURESTEADY_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace puresteady {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Operand shapes do not fit together.
class DimensionError : public Error {
 public:
  using Error::Error;
};

/// An input violates a documented invariant (non-Hermitian H, eta out of range, ...).
class ValidationError : public Error {
 public:
  using Error::Error;
};

/// A numerical routine did not converge or produced an inconsistent answer.
class NumericalError : public Error {
 public:
  using Error::Error;
};

/// No steady state could be produced within tolerance.
class InfeasibleError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

/// A stochastic step left the state too far outside the PSD cone.
class StepQualityError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

/// A problem file or command line could not be understood.
class ParseError : public Error {
 public:
  using Error::Error;
};

}  // namespace puresteady

#endif  // PURESTEADY_ERRORS_HPP
