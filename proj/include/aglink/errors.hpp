// SPDX-License-Identifier: Apache-2.0
//
// aglink — air-to-ground cellular link modeling toolkit
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

#pragma once

#include <stdexcept>
#include <string>

namespace aglink {

/// Base class for every error raised by the library. Subclasses signal
/// invalid inputs or degenerate data; logic bugs use the std exceptions.
class Error : public std::runtime_error {
  public:
    explicit Error(const std::string &msg) : std::runtime_error(msg) {}
};

/// UAV and BS positions are (numerically) co-located, geometry undefined.
class DegenerateGeometry : public Error {
  public:
    using Error::Error;
};

/// A value is outside the mathematical domain of an operation.
class DomainError : public Error {
  public:
    using Error::Error;
};

/// Malformed text input (CSV row, JSON document). Carries the row number
/// when one is known.
class ParseError : public Error {
  public:
    explicit ParseError(const std::string &msg, long row = -1)
        : Error(row >= 0 ? msg + " (row " + std::to_string(row) + ")" : msg), row_(row) {}
    long row() const { return row_; }

  private:
    long row_;
};

/// A required column is missing from a tabular input.
class SchemaError : public Error {
  public:
    using Error::Error;
};

/// A named KPI column exists but carries no values.
class MissingColumn : public Error {
  public:
    using Error::Error;
};

/// Requested KPI name is not part of the canonical schema.
class UnknownKpi : public Error {
  public:
    using Error::Error;
};

/// Measured/predicted vectors differ in length.
class LengthMismatch : public Error {
  public:
    using Error::Error;
};

/// Two flight logs cannot be aligned by position or time.
class NoOverlap : public Error {
  public:
    using Error::Error;
};

/// Least-squares design matrix is numerically singular.
class RankDeficient : public Error {
  public:
    using Error::Error;
};

/// Pooled class covariance is numerically singular.
class SingularCovariance : public Error {
  public:
    using Error::Error;
};

/// Training loss diverged to a non-finite value.
class NonFinite : public Error {
  public:
    using Error::Error;
};

/// Trajectory specification has degenerate parameters.
class BadSpec : public Error {
  public:
    using Error::Error;
};

} // namespace aglink
