// Copyright 2026 The audiolab Authors
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

#include <cstddef>
#include <stdexcept>
#include <string>

namespace audiolab {

// Root of every exception the library throws.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Numeric / domain errors.
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

// Window/hop combination whose accumulated window energy vanishes somewhere.
class NonInvertibleConfig : public Error {
 public:
  using Error::Error;
};

class DegenerateFilterbank : public Error {
 public:
  using Error::Error;
};

class UnsupportedSize : public Error {
 public:
  using Error::Error;
};

// Effect-chain and other textual parse failures. `position` is the index of
// the offending token.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t position)
      : Error(what), position_(position) {}
  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

// Container / file-format errors.
class FormatError : public Error {
 public:
  using Error::Error;
};

class MalformedContainer : public FormatError {
 public:
  using FormatError::FormatError;
};

class TruncatedPayload : public FormatError {
 public:
  TruncatedPayload(std::size_t expected, std::size_t found)
      : FormatError("truncated payload: expected " + std::to_string(expected) +
                    " bytes, found " + std::to_string(found)),
        expected_(expected),
        found_(found) {}
  std::size_t expected() const noexcept { return expected_; }
  std::size_t found() const noexcept { return found_; }

 private:
  std::size_t expected_;
  std::size_t found_;
};

class UnsupportedEncoding : public FormatError {
 public:
  using FormatError::FormatError;
};

class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace audiolab
