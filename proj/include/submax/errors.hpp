// Copyright 2026 The Authors.
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

#ifndef SUBMAX_ERRORS_HPP_
#define SUBMAX_ERRORS_HPP_

#include <stdexcept>
#include <string>

namespace submax {

// Base of every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A precondition on an argument failed (dimension mismatch, bad index,
// non-finite input, invalid configuration).
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

// An exhaustive routine would exceed its oracle-call budget.
class LimitExceeded : public Error {
 public:
  using Error::Error;
};

// Malformed file contents.
class ParseError : public Error {
 public:
  using Error::Error;
};

}  // namespace submax

#endif  // SUBMAX_ERRORS_HPP_
