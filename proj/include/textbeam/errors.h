// Copyright 2026 The textbeam Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef TEXTBEAM_ERRORS_H_
#define TEXTBEAM_ERRORS_H_

#include <stdexcept>
#include <string>

namespace textbeam {

// Failure talking to a model or provider process. Aborts the current attack.
class TransportError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A peer answered, but the answer broke the line protocol or its invariants
// (bad JSON, id mismatch, probabilities that do not sum to one).
class ProtocolError : public TransportError {
 public:
  using TransportError::TransportError;
};

// Bad configuration value or unreadable input file.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A referenced file does not exist or cannot be opened.
class MissingFileError : public ConfigError {
 public:
  explicit MissingFileError(const std::string& path)
      : ConfigError("cannot open file: " + path), path_(path) {}
  const std::string& path() const { return path_; }

 private:
  std::string path_;
};

// The exhaustive search space exceeds its configured cap.
class SearchLimitError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace textbeam

#endif  // TEXTBEAM_ERRORS_H_
