// Copyright 2026 The Hintguard Authors. All Rights Reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef HINTGUARD_ERROR_HPP_
#define HINTGUARD_ERROR_HPP_

#include <stdexcept>
#include <string>

namespace hintguard {

// Base for every error raised by the library. The CLI maps these to exit
// code 2 (data error).
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// File could not be opened, read or written.
class IoError : public Error {
 public:
  using Error::Error;
};

// Input bytes or text are malformed (bad PNG, bad CSV, bad manifest).
class FormatError : public Error {
 public:
  using Error::Error;
};

// A precondition on an argument does not hold.
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

}  // namespace hintguard

#endif  // HINTGUARD_ERROR_HPP_
