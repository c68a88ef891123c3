// SPDX-License-Identifier: Apache-2.0
//
// diffbeam: differential beamformer design for planar arrays of first-order elements
// Copyright (C) 2026 The diffbeam Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#pragma once

#include <cstddef>
#include <limits>
#include <stdexcept>
#include <string>

namespace diffbeam {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidInput : public Error {
 public:
  using Error::Error;
};

/// Random geometry sampling exhausted its rejection budget.
class InfeasibleGeometry : public Error {
 public:
  using Error::Error;
};

/// Pattern coefficients sum to zero: the pattern has a null at its own look direction.
class DegeneratePattern : public Error {
 public:
  using Error::Error;
};

/// The modal system is numerically rank deficient.
class RankDeficientSystem : public Error {
 public:
  RankDeficientSystem(const std::string& what, double condition,
                      double frequency_hz = std::numeric_limits<double>::quiet_NaN())
      : Error(what), condition_(condition), frequency_hz_(frequency_hz) {}

  /// Ratio of smallest to largest eigenvalue of the (row-equilibrated) Gram matrix.
  double condition() const noexcept { return condition_; }
  /// Offending design frequency, NaN when the solve was not tied to a frequency.
  double frequency_hz() const noexcept { return frequency_hz_; }

 private:
  double condition_;
  double frequency_hz_;
};

class OutOfRange : public Error {
 public:
  using Error::Error;
};

class InvalidFilter : public Error {
 public:
  using Error::Error;
};

/// Every Monte Carlo trial failed.
class AggregateFailure : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::string field, std::size_t line = 0)
      : Error(what), field_(std::move(field)), line_(line) {}

  const std::string& field() const noexcept { return field_; }
  /// 1-based line of the offending input, 0 when unknown.
  std::size_t line() const noexcept { return line_; }

 private:
  std::string field_;
  std::size_t line_;
};

/// Inputs that are individually valid but do not belong together
/// (for instance a filter designed for a different geometry).
class InconsistentInput : public Error {
 public:
  using Error::Error;
};

}  // namespace diffbeam
