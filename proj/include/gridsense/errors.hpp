// Copyright 2026 The gridsense Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef GRIDSENSE_ERRORS_HPP
#define GRIDSENSE_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace gridsense {

class Error : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

// Bad input: maps to CLI exit code 1.
class ValidationError : public Error {
   public:
    using Error::Error;
};

class DimensionMismatch : public ValidationError {
   public:
    using ValidationError::ValidationError;
};

class ResourceLimitError : public ValidationError {
   public:
    using ValidationError::ValidationError;
};

// Numerical failure: maps to CLI exit code 2.
class NumericalError : public Error {
   public:
    using Error::Error;
};

class TruncationError : public NumericalError {
   public:
    using NumericalError::NumericalError;
};

class UndefinedPhaseError : public NumericalError {
   public:
    using NumericalError::NumericalError;
};

class IntegratorError : public NumericalError {
   public:
    using NumericalError::NumericalError;
};

}  // namespace gridsense

#endif
