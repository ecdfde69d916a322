// Copyright 2026 The emu-roster Authors
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

#ifndef EMU_ERROR_H_
#define EMU_ERROR_H_

#include <stdexcept>
#include <string>

namespace emu {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed or inconsistent input text. `line` and `column` are 1-based;
// zero means "not tied to a location" (e.g. a whole-file invariant).
class ParseError : public Error {
 public:
  ParseError(int line, int column, const std::string& message);

  int line() const { return line_; }
  int column() const { return column_; }

 private:
  int line_;
  int column_;
};

// No feasible circulation could be produced.
class InfeasibleError : public Error {
 public:
  using Error::Error;
};

// Instance exceeds the exact oracle's size limit.
class TooLargeError : public Error {
 public:
  using Error::Error;
};

// An operation that requires a valid plan was handed an invalid one.
class InvalidPlanError : public Error {
 public:
  using Error::Error;
};

}  // namespace emu

#endif  // EMU_ERROR_H_
