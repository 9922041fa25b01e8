// Copyright 2026 The Evoproof Authors.
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

#include <fcntl.h>
#include <poll.h>
#include <signal.h>
#include <sys/wait.h>
#include <unistd.h>

#include <cerrno>
#include <cstdlib>
#include <cstring>
#include <mutex>

#include "evoproof/coq.hpp"

namespace evoproof::coq {

namespace {

using Clock = std::chrono::steady_clock;

void ignore_sigpipe() {
  static std::once_flag once;
  std::call_once(once, [] { ::signal(SIGPIPE, SIG_IGN); });
}

std::vector<char*> make_argv(const std::string& exe,
                             const std::vector<std::string>& args) {
  std::vector<char*> argv;
  argv.push_back(const_cast<char*>(exe.c_str()));
  for (const auto& a : args) argv.push_back(const_cast<char*>(a.c_str()));
  argv.push_back(nullptr);
  return argv;
}

Clock::duration seconds(double s) {
  return std::chrono::duration_cast<Clock::duration>(std::chrono::duration<double>(s));
}

}  // namespace

// A child with stdin piped from us and stdout+stderr piped back.
class ChildProcess {
 public:
  ChildProcess(const std::string& exe, const std::vector<std::string>& args) {
    ignore_sigpipe();
    int in[2], out[2], err[2];
    if (::pipe2(in, O_CLOEXEC) != 0 || ::pipe2(out, O_CLOEXEC) != 0 ||
        ::pipe2(err, O_CLOEXEC) != 0)
      throw SessionError(std::string("pipe: ") + std::strerror(errno));
    auto argv = make_argv(exe, args);
    pid_ = ::fork();
    if (pid_ < 0) throw SessionError(std::string("fork: ") + std::strerror(errno));
    if (pid_ == 0) {
      ::dup2(in[0], 0);
      ::dup2(out[1], 1);
      ::dup2(out[1], 2);
      ::execvp(argv[0], argv.data());
      const int e = errno;
      [[maybe_unused]] auto n = ::write(err[1], &e, sizeof e);
      ::_exit(127);
    }
    ::close(in[0]);
    ::close(out[1]);
    ::close(err[1]);
    in_ = in[1];
    out_ = out[0];
    int e = 0;
    const auto n = ::read(err[0], &e, sizeof e);
    ::close(err[0]);
    if (n == static_cast<ssize_t>(sizeof e)) {
      reap();
      throw SessionError("cannot execute '" + exe + "': " + std::strerror(e));
    }
  }

  ~ChildProcess() { kill(); }

  bool running() const { return pid_ > 0; }

  bool write_all(const std::string& data) {
    std::size_t done = 0;
    while (done < data.size()) {
      const auto n = ::write(in_, data.data() + done, data.size() - done);
      if (n < 0) {
        if (errno == EINTR) continue;
        return false;
      }
      done += static_cast<std::size_t>(n);
    }
    return true;
  }

  enum class ReadStatus { ok, timeout, eof };

  // Reads until `marker` shows up; `out` receives everything before it. An
  // empty marker reads to end of output.
  ReadStatus read_until(const std::string& marker, Clock::time_point deadline,
                        std::string& out) {
    for (;;) {
      const auto pos = marker.empty() ? std::string::npos : buffer_.find(marker);
      if (pos != std::string::npos) {
        out = buffer_.substr(0, pos);
        buffer_.erase(0, pos + marker.size());
        return ReadStatus::ok;
      }
      const auto left = std::chrono::duration_cast<std::chrono::milliseconds>(
          deadline - Clock::now());
      if (left.count() <= 0) {
        out = buffer_;
        return ReadStatus::timeout;
      }
      pollfd p{out_, POLLIN, 0};
      const int r = ::poll(&p, 1, static_cast<int>(left.count()));
      if (r < 0 && errno == EINTR) continue;
      if (r == 0) continue;
      char chunk[4096];
      const auto n = ::read(out_, chunk, sizeof chunk);
      if (n < 0 && errno == EINTR) continue;
      if (n <= 0) {
        out = buffer_;
        buffer_.clear();
        return marker.empty() ? ReadStatus::ok : ReadStatus::eof;
      }
      buffer_.append(chunk, static_cast<std::size_t>(n));
    }
  }

  // Drains output until EOF or deadline; used for the version probe.
  std::string read_all(Clock::time_point deadline) {
    std::string out;
    if (read_until({}, deadline, out) == ReadStatus::timeout) kill();
    return out;
  }

  int wait_exit() {
    int status = 0;
    if (pid_ > 0 && ::waitpid(pid_, &status, 0) == pid_) {
      pid_ = -1;
      close_fds();
      return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    }
    return -1;
  }

  void kill() {
    if (pid_ > 0) {
      ::kill(pid_, SIGKILL);
      reap();
    }
    close_fds();
  }

 private:
  void reap() {
    if (pid_ > 0) {
      int status = 0;
      ::waitpid(pid_, &status, 0);
      pid_ = -1;
    }
  }

  void close_fds() {
    if (in_ >= 0) ::close(in_);
    if (out_ >= 0) ::close(out_);
    in_ = out_ = -1;
  }

  pid_t pid_ = -1;
  int in_ = -1;
  int out_ = -1;
  std::string buffer_;
};

const char* to_string(Classification c) {
  switch (c) {
    case Classification::passed: return "passed";
    case Classification::failed: return "failed";
    case Classification::completion_signal: return "completion_signal";
  }
  return "?";
}

std::string resolve_executable(const std::string& flag_value) {
  if (!flag_value.empty()) return flag_value;
  if (const char* env = std::getenv("EVOPROOF_COQTOP"); env && *env) return env;
  return "coqtop";
}

Classification classify(const SessionConfig& cfg, const std::string& raw) {
  for (const auto& p : cfg.completion_patterns)
    if (raw.find(p) != std::string::npos) return Classification::completion_signal;
  for (const auto& p : cfg.error_patterns)
    if (raw.find(p) != std::string::npos) return Classification::failed;
  return Classification::passed;
}

std::string probe_version(const SessionConfig& cfg) {
  ChildProcess proc(cfg.executable, cfg.version_arguments);
  const auto out = proc.read_all(Clock::now() + seconds(std::max(10.0, cfg.step_timeout_seconds)));
  const int code = proc.wait_exit();
  if (code != 0)
    throw SessionError("version probe of '" + cfg.executable + "' exited with status " +
                       std::to_string(code) + ": " + out);
  const auto nl = out.find('\n');
  auto line = out.substr(0, nl);
  if (line.empty()) throw SessionError("version probe of '" + cfg.executable + "' printed nothing");
  return line;
}

std::vector<std::string> preamble_sentences(const std::vector<std::string>& lines) {
  std::vector<std::string> out;
  std::string current;
  for (const auto& raw : lines) {
    const auto e = raw.find_last_not_of(" \t\r");
    if (e == std::string::npos) continue;
    const auto b = raw.find_first_not_of(" \t");
    const auto line = raw.substr(b, e + 1 - b);
    if (!current.empty()) current += ' ';
    current += line;
    if (line.back() == '.') {
      out.push_back(std::move(current));
      current.clear();
    }
  }
  if (!current.empty()) out.push_back(std::move(current));
  return out;
}

Session::Session(SessionConfig cfg) : cfg_(std::move(cfg)) {
  proc_ = std::make_unique<ChildProcess>(cfg_.executable, cfg_.arguments);
  std::string banner;
  const auto startup = std::max(10.0, 4 * cfg_.step_timeout_seconds);
  const auto st = proc_->read_until(cfg_.prompt_marker, Clock::now() + seconds(startup), banner);
  if (st != ChildProcess::ReadStatus::ok)
    throw SessionError("'" + cfg_.executable + "' did not reach its prompt: " + banner);
  for (const auto& sentence : preamble_sentences(cfg_.preamble)) {
    const auto reply = submit(sentence);
    if (reply.timed_out || reply.died || reply.classification != Classification::passed)
      throw SessionError("preamble sentence '" + sentence + "' failed: " + reply.raw);
  }
}

Session::~Session() = default;

bool Session::alive() const { return proc_ && proc_->running(); }

Reply Session::submit(const std::string& sentence) {
  Reply reply;
  if (!alive() || !proc_->write_all(sentence + "\n")) {
    reply.died = true;
    reply.classification = Classification::failed;
    return reply;
  }
  std::string raw;
  const auto st = proc_->read_until(
      cfg_.prompt_marker, Clock::now() + seconds(cfg_.step_timeout_seconds), raw);
  // Drop the opening half of an emacs-style prompt.
  if (const auto p = raw.rfind("<prompt>"); p != std::string::npos) raw.erase(p);
  reply.raw = raw;
  if (st == ChildProcess::ReadStatus::timeout) {
    reply.timed_out = true;
    reply.classification = Classification::failed;
    proc_->kill();
    return reply;
  }
  if (st == ChildProcess::ReadStatus::eof) {
    reply.died = true;
    reply.classification = Classification::failed;
    proc_->kill();
    return reply;
  }
  reply.classification = classify(cfg_, raw);
  return reply;
}

std::unique_ptr<Session> SessionPool::acquire(const std::vector<std::string>& preamble) {
  {
    std::lock_guard lock(mu_);
    for (auto it = idle_.begin(); it != idle_.end(); ++it) {
      if ((*it)->preamble() == preamble) {
        auto s = std::move(*it);
        idle_.erase(it);
        return s;
      }
    }
  }
  SessionConfig cfg = base_;
  cfg.preamble = preamble;
  return std::make_unique<Session>(std::move(cfg));
}

void SessionPool::release(std::unique_ptr<Session> s) {
  if (!s || !s->alive() || s->uses() >= base_.recycle_after) return;
  std::lock_guard lock(mu_);
  idle_.push_back(std::move(s));
}

}  // namespace evoproof::coq
