// src/asr_hook.cc

// Copyright 2026  The mixswitch Authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// THIS CODE IS PROVIDED *AS IS* BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY
// KIND, EITHER EXPRESS OR IMPLIED, INCLUDING WITHOUT LIMITATION ANY IMPLIED
// WARRANTIES OR CONDITIONS OF TITLE, FITNESS FOR A PARTICULAR PURPOSE,
// MERCHANTABLITY OR NON-INFRINGEMENT.
// See the Apache 2 License for the specific language governing permissions and
// limitations under the License.

#include "mixswitch/asr_hook.h"

#include <fcntl.h>
#include <poll.h>
#include <signal.h>
#include <sys/wait.h>
#include <unistd.h>

#include <atomic>
#include <cctype>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <stdexcept>
#include <string>

#include "mixswitch/wav.h"

namespace mixswitch {

namespace {

constexpr char kPlaceholder[] = "{audio}";

std::string SubstitutePath(const std::string &tmpl, const std::string &path) {
  const size_t first = tmpl.find(kPlaceholder);
  if (first == std::string::npos ||
      tmpl.find(kPlaceholder, first + 1) != std::string::npos) {
    throw std::invalid_argument(
        "asr template must contain exactly one {audio} placeholder");
  }
  std::string cmd = tmpl;
  cmd.replace(first, sizeof(kPlaceholder) - 1, path);
  return cmd;
}

// Runs `command` through the shell, capturing stdout, killing the process
// group past the deadline.
std::string RunWithTimeout(const std::string &command, double timeout_s) {
  int pipe_fd[2];
  if (pipe(pipe_fd) != 0) throw std::runtime_error("asr failed: pipe");

  const pid_t pid = fork();
  if (pid < 0) {
    close(pipe_fd[0]);
    close(pipe_fd[1]);
    throw std::runtime_error("asr failed: fork");
  }
  if (pid == 0) {
    setpgid(0, 0);
    dup2(pipe_fd[1], STDOUT_FILENO);
    close(pipe_fd[0]);
    close(pipe_fd[1]);
    execl("/bin/sh", "sh", "-c", command.c_str(), static_cast<char *>(nullptr));
    _exit(127);
  }

  close(pipe_fd[1]);
  std::string output;
  const auto deadline =
      std::chrono::steady_clock::now() + std::chrono::duration<double>(timeout_s);
  bool timed_out = false;
  char buf[4096];
  for (;;) {
    const auto now = std::chrono::steady_clock::now();
    const long remaining_ms =
        std::chrono::duration_cast<std::chrono::milliseconds>(deadline - now).count();
    if (remaining_ms <= 0) {
      timed_out = true;
      break;
    }
    struct pollfd pfd = {pipe_fd[0], POLLIN, 0};
    const int rc = poll(&pfd, 1, static_cast<int>(std::min(remaining_ms, 100L)));
    if (rc > 0) {
      const ssize_t n = read(pipe_fd[0], buf, sizeof(buf));
      if (n > 0) {
        output.append(buf, static_cast<size_t>(n));
      } else {
        break;  // EOF
      }
    } else if (rc < 0 && errno != EINTR) {
      break;
    }
  }
  close(pipe_fd[0]);

  if (timed_out) {
    kill(-pid, SIGKILL);
    int status = 0;
    waitpid(pid, &status, 0);
    throw std::runtime_error("asr timeout");
  }

  int status = 0;
  waitpid(pid, &status, 0);
  if (!WIFEXITED(status) || WEXITSTATUS(status) != 0) {
    throw std::runtime_error("asr failed: command exited with status " +
                             std::to_string(WIFEXITED(status) ? WEXITSTATUS(status) : -1));
  }
  return output;
}

std::string Normalize(const std::string &text, TranscriptNormalizer normalizer) {
  if (normalizer == TranscriptNormalizer::kNone) {
    // Trailing newline from the command is not part of the hypothesis.
    std::string out = text;
    while (!out.empty() && (out.back() == '\n' || out.back() == '\r')) out.pop_back();
    return out;
  }
  std::string out;
  out.reserve(text.size());
  for (char c : text) {
    if (!std::isspace(static_cast<unsigned char>(c))) out.push_back(c);
  }
  return out;
}

std::string TempWavPath(const std::string &workdir) {
  static std::atomic<uint64_t> counter{0};
  const uint64_t id = counter.fetch_add(1);
  return (std::filesystem::path(workdir) /
          ("asr_" + std::to_string(getpid()) + "_" + std::to_string(id) + ".wav"))
      .string();
}

}  // namespace

std::string RunAsr(const AsrHook &hook, const AudioBuffer &audio,
                   const std::string &workdir) {
  if (hook.timeout_s <= 0) throw std::invalid_argument("asr timeout must be positive");
  std::filesystem::create_directories(workdir);
  const std::string wav_path = TempWavPath(workdir);
  SaveWav(audio, wav_path, WavFormat::kPcm16);
  std::string transcript;
  try {
    transcript = RunWithTimeout(SubstitutePath(hook.command_template, wav_path),
                                hook.timeout_s);
  } catch (...) {
    std::error_code ec;
    std::filesystem::remove(wav_path, ec);
    throw;
  }
  std::error_code ec;
  std::filesystem::remove(wav_path, ec);
  return Normalize(transcript, hook.normalizer);
}

}  // namespace mixswitch
