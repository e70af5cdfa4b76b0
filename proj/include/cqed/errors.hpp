// Copyright 2026 The cqed-teleport Authors
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

#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>

namespace cqed {

/// Root of every error thrown by the library.
class Error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Invalid argument: wrong layout, empty subsystem set, non-normalized input.
class ArgumentError : public Error {
  public:
    using Error::Error;
};

/// A Hilbert-space layout that cannot host the requested object.
class LayoutError : public ArgumentError {
  public:
    using ArgumentError::ArgumentError;
};

/// Probability mass outside the subspace a measurement or decomposition covers.
class StateSupportError : public Error {
  public:
    using Error::Error;
};

/// A formula evaluated at a pole (zero detuning in a denominator).
class SingularityError : public Error {
  public:
    using Error::Error;
};

/// Physically impossible parameters, e.g. T2 > 2 T1.
class UnphysicalInputError : public Error {
  public:
    using Error::Error;
};

/// Device configuration does not support the requested operation.
class ConfigurationError : public Error {
  public:
    using Error::Error;
};

/// Integrator step budget exhausted.
class BudgetError : public Error {
  public:
    using Error::Error;
};

/// Integrated density matrix lost positivity beyond tolerance.
class IntegrationQualityError : public Error {
  public:
    using Error::Error;
};

/// Sinusoid fit failed; carries the residual of the best attempt.
class FitError : public Error {
  public:
    FitError(const std::string &what, double rms_residual)
        : Error(what), rms_residual_(rms_residual) {}
    double rms_residual() const noexcept { return rms_residual_; }

  private:
    double rms_residual_;
};

/// Scenario file could not be parsed or failed validation. The message
/// names the offending field or the parse position.
class ConfigError : public Error {
  public:
    using Error::Error;
};

/// Result or config file could not be read or written.
class IoError : public Error {
  public:
    using Error::Error;
};

/// A module error raised inside one scenario trial. The message is prefixed
/// with the trial (and sweep) index; `kind()` keeps the original type name.
class TrialError : public Error {
  public:
    TrialError(const std::string &what, std::size_t trial, std::string kind)
        : Error(what), trial_(trial), kind_(std::move(kind)) {}
    std::size_t trial() const noexcept { return trial_; }
    const std::string &kind() const noexcept { return kind_; }

  private:
    std::size_t trial_;
    std::string kind_;
};

} // namespace cqed
