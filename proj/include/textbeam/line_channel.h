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

#ifndef TEXTBEAM_LINE_CHANNEL_H_
#define TEXTBEAM_LINE_CHANNEL_H_

#include <sys/types.h>

#include <string>

namespace textbeam {

// A child process driven over newline-delimited stdin/stdout. The command is
// run through /bin/sh -c. Not thread-safe; owners serialize access.
class LineChannel {
 public:
  explicit LineChannel(const std::string& command);
  ~LineChannel();

  LineChannel(const LineChannel&) = delete;
  LineChannel& operator=(const LineChannel&) = delete;

  // Writes `line` plus '\n' and blocks until one full response line arrives.
  // Throws TransportError on write failure or when the process closes its
  // output.
  std::string Exchange(const std::string& line);

  const std::string& command() const { return command_; }

 private:
  void WriteAll(const std::string& data);
  std::string ReadLine();

  std::string command_;
  pid_t pid_ = -1;
  int to_child_ = -1;
  int from_child_ = -1;
  std::string pending_;
};

}  // namespace textbeam

#endif  // TEXTBEAM_LINE_CHANNEL_H_
