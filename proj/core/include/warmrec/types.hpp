// Copyright 2026 The warmrec Authors.
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

#include <set>
#include <stdexcept>
#include <string>

namespace warmrec {

/// Normalized page identifier (URL path without query or fragment).
using Page = std::string;

/// Ordered set of pages. Ordering is lexicographic, which every module
/// relies on for deterministic output.
using PageSet = std::set<Page>;

/// Base class of all errors raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Input that is structurally valid but semantically unusable
/// (e.g. zero sessions after filtering).
class DataError : public Error {
 public:
  using Error::Error;
};

/// Input could not be read or written.
class IoError : public Error {
 public:
  using Error::Error;
};

/// Out-of-range configuration or parameter value.
class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace warmrec
