// Copyright 2026 the peergrade authors
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

namespace peergrade {

// Base of every error raised by the library. The CLI maps subclasses onto
// exit codes: ValidationError family -> 3, everything else -> 4.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Input data or configuration violates a documented contract.
class ValidationError : public Error {
 public:
  using Error::Error;
};

/// The same (user, item) or {user, user} pair was supplied twice.
class DuplicateEntryError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

/// Malformed or schema-violating configuration document.
class ConfigError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

/// Malformed input file; message carries file and line.
class ParseError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

/// Tensor dimensions disagree.
class ShapeError : public Error {
 public:
  using Error::Error;
};

/// Filesystem failure (missing file, unwritable path).
class IoError : public Error {
 public:
  using Error::Error;
};

/// Training diverged.
class TrainingError : public Error {
 public:
  using Error::Error;
};

}  // namespace peergrade
