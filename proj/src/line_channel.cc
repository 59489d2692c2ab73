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

#include "textbeam/line_channel.h"

#include <fcntl.h>
#include <signal.h>
#include <sys/wait.h>
#include <unistd.h>

#include <cerrno>
#include <cstring>

#include "textbeam/errors.h"

namespace textbeam {
namespace {

std::string Errno(const char* what) {
  return std::string(what) + ": " + std::strerror(errno);
}

}  // namespace

LineChannel::LineChannel(const std::string& command) : command_(command) {
  // A dead peer must surface as EPIPE, not kill the attacker.
  ::signal(SIGPIPE, SIG_IGN);

  int in_pipe[2];
  int out_pipe[2];
  if (::pipe2(in_pipe, O_CLOEXEC) != 0) throw TransportError(Errno("pipe"));
  if (::pipe2(out_pipe, O_CLOEXEC) != 0) {
    ::close(in_pipe[0]);
    ::close(in_pipe[1]);
    throw TransportError(Errno("pipe"));
  }
  pid_ = ::fork();
  if (pid_ < 0) {
    for (int fd : {in_pipe[0], in_pipe[1], out_pipe[0], out_pipe[1]}) {
      ::close(fd);
    }
    throw TransportError(Errno("fork"));
  }
  if (pid_ == 0) {
    ::dup2(in_pipe[0], STDIN_FILENO);
    ::dup2(out_pipe[1], STDOUT_FILENO);
    ::execl("/bin/sh", "sh", "-c", command.c_str(),
            static_cast<char*>(nullptr));
    ::_exit(127);
  }
  ::close(in_pipe[0]);
  ::close(out_pipe[1]);
  to_child_ = in_pipe[1];
  from_child_ = out_pipe[0];
}

LineChannel::~LineChannel() {
  if (to_child_ >= 0) ::close(to_child_);
  if (from_child_ >= 0) ::close(from_child_);
  if (pid_ > 0) {
    int status = 0;
    ::waitpid(pid_, &status, 0);
  }
}

std::string LineChannel::Exchange(const std::string& line) {
  WriteAll(line + "\n");
  return ReadLine();
}

void LineChannel::WriteAll(const std::string& data) {
  std::size_t written = 0;
  while (written < data.size()) {
    ssize_t n =
        ::write(to_child_, data.data() + written, data.size() - written);
    if (n < 0) {
      if (errno == EINTR) continue;
      throw TransportError(Errno(("write to '" + command_ + "'").c_str()));
    }
    written += static_cast<std::size_t>(n);
  }
}

std::string LineChannel::ReadLine() {
  for (;;) {
    std::size_t newline = pending_.find('\n');
    if (newline != std::string::npos) {
      std::string line = pending_.substr(0, newline);
      pending_.erase(0, newline + 1);
      return line;
    }
    char buffer[4096];
    ssize_t n = ::read(from_child_, buffer, sizeof(buffer));
    if (n < 0) {
      if (errno == EINTR) continue;
      throw TransportError(Errno(("read from '" + command_ + "'").c_str()));
    }
    if (n == 0) {
      throw TransportError("process '" + command_ +
                           "' closed its output before responding");
    }
    pending_.append(buffer, static_cast<std::size_t>(n));
  }
}

}  // namespace textbeam
