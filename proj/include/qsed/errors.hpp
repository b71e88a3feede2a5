// Copyright 2026 The qse-decode Authors
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

#pragma once

#include <stdexcept>
#include <string>

namespace qsed {

/// Base of every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Operands live on registers of different sizes.
class DimensionError : public Error {
 public:
  using Error::Error;
};

/// A request exceeds the dense-simulation budget.
class ResourceError : public Error {
 public:
  using Error::Error;
};

/// Out-of-range or otherwise invalid scalar argument.
class ArgumentError : public Error {
 public:
  using Error::Error;
};

/// Malformed Pauli label, coefficient, or input file.
class ParseError : public Error {
 public:
  using Error::Error;
};

/// A code definition violates a stabilizer-code invariant.
class ValidationError : public Error {
 public:
  using Error::Error;
};

/// Two correctable errors share a syndrome.
class AmbiguityError : public Error {
 public:
  using Error::Error;
};

/// A caller-side precondition (commutation, Hermiticity) does not hold.
class ContractError : public Error {
 public:
  using Error::Error;
};

/// The state has (numerically) no weight in the projected space.
class NoSupportError : public Error {
 public:
  using Error::Error;
};

/// Canonical diagonalization discarded every direction.
class EmptySubspaceError : public Error {
 public:
  using Error::Error;
};

/// Logical state preparation failed.
class PreparationError : public Error {
 public:
  using Error::Error;
};

}  // namespace qsed
