// Copyright (c) 2026 the mev developers.
// All rights reserved.
//
// mev is licensed under the Apache License, Version 2.0 (the "License").
// You may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0.
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef MEV_ERRORS_HPP
#define MEV_ERRORS_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace mev {

// Bad or inconsistent input data: malformed files, impossible records,
// series too short to support the requested analysis.
class DataError : public std::runtime_error {
 public:
  explicit DataError(const std::string& what) : std::runtime_error(what) {}
};

// A malformed row in a text input. Remembers the 1-based line number.
class ParseError : public DataError {
 public:
  ParseError(std::size_t line, const std::string& what)
      : DataError("line " + std::to_string(line) + ": " + what), line_(line) {}

  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

// A numerical procedure failed to produce a usable result: solver
// non-convergence, inversion of a degenerate model, and the like.
class NumericError : public std::runtime_error {
 public:
  explicit NumericError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace mev

#endif  // MEV_ERRORS_HPP
