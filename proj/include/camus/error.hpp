// Copyright 2026 The camus-bench Authors. All Rights Reserved.
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

#pragma once

#include <stdexcept>
#include <string>

namespace camus {

/// Base class for every error raised by the engine. The CLI maps any
/// camus::Error to exit code 2 (data/format error).
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed or unsupported file content; `key()` names the offending
/// header key or CSV column when one applies.
class FormatError : public Error {
 public:
  explicit FormatError(const std::string& message, std::string key = {})
      : Error(message), key_(std::move(key)) {}
  const std::string& key() const noexcept { return key_; }

 private:
  std::string key_;
};

/// Raw payload size disagrees with the declared image size.
class TruncationError : public Error {
 public:
  using Error::Error;
};

/// Value outside its documented domain (e.g. label > 3 in strict mode).
class ValidationError : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

/// Two grids that must share dimensions or spacing do not.
class ShapeError : public Error {
 public:
  using Error::Error;
};

/// Region or contour too small to define a boundary or an axis.
class DegenerateError : public Error {
 public:
  using Error::Error;
};

/// Argument outside the mathematical domain of an operation.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Paired inputs whose keys or lengths do not line up.
class MismatchError : public Error {
 public:
  using Error::Error;
};

class MissingReferenceError : public Error {
 public:
  using Error::Error;
};

}  // namespace camus
