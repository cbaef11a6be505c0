// Copyright 2026 The romlift Authors
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

#include <cstdint>
#include <stdexcept>
#include <string>

namespace romlift {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Register sizes, wire lists or signatures that do not line up.
class DimensionError : public Error {
  public:
    using Error::Error;
};

/// A layer matrix that is not unitary, or a state whose norm drifted.
class UnitarityError : public Error {
  public:
    using Error::Error;
};

/// Two partial functions disagree on a point where both are defined.
class ConflictError : public Error {
  public:
    ConflictError(std::uint32_t point, const std::string &what)
        : Error(what), point_(point) {
    }
    std::uint32_t point() const {
        return point_;
    }

  private:
    std::uint32_t point_;
};

/// An exact enumeration would visit more items than the configured budget.
class BudgetExceeded : public Error {
  public:
    using Error::Error;
};

/// A conditional distribution was requested on an empty conditioning event.
class UndefinedDistribution : public Error {
  public:
    using Error::Error;
};

/// A canonical output has probability below 1 - delta.
class DeterminismViolation : public Error {
  public:
    using Error::Error;
};

/// A classical PRG procedure broke its fixed query-count contract.
class QueryCountError : public Error {
  public:
    using Error::Error;
};

/// Malformed input file. `line` is 1-based, 0 when not applicable.
class ParseError : public Error {
  public:
    ParseError(const std::string &what, int line = 0)
        : Error(line > 0 ? "line " + std::to_string(line) + ": " + what : what), line_(line) {
    }
    int line() const {
        return line_;
    }

  private:
    int line_;
};

}  // namespace romlift
