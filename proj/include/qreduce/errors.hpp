// Copyright 2026 The qreduce authors
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

#ifndef QREDUCE_ERRORS_HPP
#define QREDUCE_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace qreduce {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A matrix fails the invariants of the operator class it was presented as
// (not Hermitian, not PSD, not unit trace, not idempotent, not unitary, ...).
class InvalidOperator : public Error {
 public:
  using Error::Error;
};

// Operand dimensions do not match.
class DimensionError : public Error {
 public:
  using Error::Error;
};

// A family of superoperators violates the distribution invariants
// (an entry maps some state to a non-positive operator, or the effects
// do not sum to the identity).
class InvalidDistribution : public Error {
 public:
  using Error::Error;
};

// A superoperator or distribution is not compatible with the observable
// it was paired with.
class NotCompatible : public Error {
 public:
  using Error::Error;
};

// An operation requiring rank-1 spectral projections received a
// degenerate observable.
class DegenerateObservable : public Error {
 public:
  using Error::Error;
};

class CountMismatch : public Error {
 public:
  using Error::Error;
};

// The Choi matrix has a negative eigenvalue where complete positivity
// was required.
class NotCP : public Error {
 public:
  using Error::Error;
};

// A state action does not respect mixtures, so it admits no linear
// extension.
class InconsistentAction : public Error {
 public:
  using Error::Error;
};

class NotIsometry : public Error {
 public:
  using Error::Error;
};

class ZeroProbability : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  using Error::Error;
};

}  // namespace qreduce

#endif  // QREDUCE_ERRORS_HPP
