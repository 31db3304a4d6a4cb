// Copyright 2026 The diacres Authors
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

#ifndef DIACRES_ERROR_H_
#define DIACRES_ERROR_H_

#include <cstddef>
#include <stdexcept>
#include <string>

namespace diacres {

// Base of every error raised by the library. The CLI maps subclasses to
// process exit codes: ParamError -> 1, DataError -> 2, ModelError -> 3.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Invalid argument or parameter value.
class ParamError : public Error {
 public:
  using Error::Error;
};

// Malformed or inconsistent input data.
class DataError : public Error {
 public:
  using Error::Error;
};

// Invalid UTF-8; carries the byte offset of the first bad sequence.
class DecodeError : public DataError {
 public:
  DecodeError(std::size_t offset, const std::string& reason)
      : DataError(reason + " at byte " + std::to_string(offset)),
        offset_(offset),
        reason_(reason) {}
  std::size_t offset() const { return offset_; }
  const std::string& reason() const { return reason_; }

 private:
  std::size_t offset_;
  std::string reason_;
};

// Parse failure in a serialized file; line is 1-based.
class ParseError : public DataError {
 public:
  ParseError(std::size_t line, const std::string& what)
      : DataError("line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

// Model is missing, degenerate or cannot answer the query.
class ModelError : public Error {
 public:
  using Error::Error;
};

}  // namespace diacres

#endif  // DIACRES_ERROR_H_
