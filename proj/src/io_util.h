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

#ifndef TEXTBEAM_SRC_IO_UTIL_H_
#define TEXTBEAM_SRC_IO_UTIL_H_

#include <string>
#include <string_view>
#include <vector>

namespace textbeam::internal {

// Reads every line of a UTF-8 text file, stripping '\r'. Throws
// MissingFileError when the file cannot be opened.
std::vector<std::string> ReadLines(const std::string& path);

std::string_view TrimAscii(std::string_view s);

std::vector<std::string> Split(std::string_view s, char delimiter);

// Whitespace-separated fields.
std::vector<std::string> SplitFields(std::string_view s);

// Strict numeric parse; throws ConfigError mentioning `context`.
double ParseDouble(std::string_view s, std::string_view context);
long long ParseInt(std::string_view s, std::string_view context);

}  // namespace textbeam::internal

#endif  // TEXTBEAM_SRC_IO_UTIL_H_
