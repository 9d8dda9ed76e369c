// Copyright 2026 The mrtk Authors.
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

#ifndef MRTK_ERRORS_H_
#define MRTK_ERRORS_H_

#include <stdexcept>
#include <string>

namespace mrtk {

// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A concept or relation id that does not exist.
class NotFoundError : public Error {
 public:
  using Error::Error;
};

// A token index outside [0, |tokens|).
class RangeError : public Error {
 public:
  using Error::Error;
};

// Malformed argument, e.g. an empty concept name.
class InvalidArgumentError : public Error {
 public:
  using Error::Error;
};

// A mutation or loaded value that would break a graph invariant.
class InvariantError : public Error {
 public:
  using Error::Error;
};

// Penman syntax error with a 1-based source position.
class ParseError : public Error {
 public:
  ParseError(const std::string &message, int line, int column)
      : Error(std::to_string(line) + ":" + std::to_string(column) + ": " +
              message),
        line_(line),
        column_(column) {}

  int line() const { return line_; }
  int column() const { return column_; }

 private:
  int line_;
  int column_;
};

// Annotation JSON that does not follow the schema. The message starts with
// the path of the offending value, e.g. "graphs[0].concepts.c1.name".
class SchemaError : public Error {
 public:
  using Error::Error;
};

// Missing or unreadable resource files.
class ResourceError : public Error {
 public:
  using Error::Error;
};

}  // namespace mrtk

#endif  // MRTK_ERRORS_H_
