// Copyright 2026 The BOPT-VQE Authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at

//     http://www.apache.org/licenses/LICENSE-2.0

// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
/**
 * @file
 * Exception types shared by every module.
 */
#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace bopt {

/// Base class of all errors raised by the library.
class Error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Malformed Hamiltonian text. Carries the 1-based line number (0 = file).
class ParseError : public Error {
  public:
    ParseError(std::size_t line, const std::string &what)
        : Error("line " + std::to_string(line) + ": " + what), line_(line) {}
    [[nodiscard]] std::size_t line() const noexcept { return line_; }

  private:
    std::size_t line_;
};

/// A problem size exceeds a memory guard.
class SizeError : public Error {
  public:
    using Error::Error;
};

/// Mismatched dimensions or invalid arguments.
class DimensionError : public Error {
  public:
    using Error::Error;
};

/// Invalid run or experiment configuration.
class ConfigError : public Error {
  public:
    using Error::Error;
};

/// Hyperparameter fitting could not produce a positive-definite model.
class FitError : public Error {
  public:
    using Error::Error;
};

/// Stochastic training diverged.
class TrainingError : public Error {
  public:
    TrainingError(std::size_t step, const std::string &what)
        : Error("step " + std::to_string(step) + ": " + what), step_(step) {}
    [[nodiscard]] std::size_t step() const noexcept { return step_; }

  private:
    std::size_t step_;
};

/// Inconsistent or unpaired data files.
class DataError : public Error {
  public:
    using Error::Error;
};

} // namespace bopt
