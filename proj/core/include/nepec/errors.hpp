// Copyright 2026 The nepec authors
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

#ifndef NEPEC_ERRORS_HPP
#define NEPEC_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace nepec {

/// Invalid input: violated precondition, out-of-range parameter, bad matrix.
class ValidationError : public std::invalid_argument {
  public:
    explicit ValidationError(const std::string& what) : std::invalid_argument(what) {}
};

class DimensionMismatchError : public ValidationError {
  public:
    explicit DimensionMismatchError(const std::string& what) : ValidationError(what) {}
};

/// The L1-minimization has no solution over the given operation basis.
class InfeasibleRepresentationError : public std::runtime_error {
  public:
    explicit InfeasibleRepresentationError(const std::string& what) : std::runtime_error(what) {}
};

/// Sign-splitting a representation with no negative coefficients: the
/// negative part is empty and the error channel is undefined.
class DegenerateSplitError : public std::runtime_error {
  public:
    explicit DegenerateSplitError(const std::string& what) : std::runtime_error(what) {}
};

/// A quantity that must be real (up to roundoff) came out with a large
/// imaginary residue, or an internal cross-check failed.
class NumericalConsistencyError : public std::runtime_error {
  public:
    explicit NumericalConsistencyError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace nepec

#endif
