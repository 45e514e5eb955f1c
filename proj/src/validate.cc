// Copyright 2026 The Solmorph Authors
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

#include "solmorph/validate.h"

#include <fcntl.h>
#include <poll.h>
#include <signal.h>
#include <spawn.h>
#include <sys/wait.h>
#include <unistd.h>

#include <atomic>
#include <cctype>
#include <cerrno>
#include <chrono>
#include <cstdlib>
#include <fstream>
#include <regex>
#include <sstream>
#include <thread>

#include "solmorph/lexer.h"
#include "solmorph/parser.h"

extern char** environ;

namespace solmorph {
namespace {

bool Overlaps(const Span& s, const SpliceLines& splice) {
  return s.Valid() && s.first_line <= splice.last_line &&
         splice.first_line <= s.last_line;
}

bool Inside(const Span& s, const SpliceLines& splice) {
  return splice.first_line <= s.first_line && s.last_line <= splice.last_line;
}

bool Encloses(const Span& s, const SpliceLines& splice) {
  return s.first_line < splice.first_line && splice.last_line < s.last_line;
}

std::string Describe(const SpliceLines& splice) {
  return "lines " + std::to_string(splice.first_line) + "-" +
         std::to_string(splice.last_line);
}

// Returns an error message, or empty when the splice is well placed.
std::string CheckSplice(const SourceUnit& unit, const SpliceLines& splice) {
  bool placed = false;
  for (const TopLevelItem& item : unit.items) {
    if (const auto* raw = std::get_if<RawRegion>(&item.node)) {
      if (Overlaps(raw->span, splice) && !Inside(raw->span, splice)) {
        return "raw region crosses injected " + Describe(splice);
      }
      continue;
    }
    const auto& contract = std::get<ContractDef>(item.node);
    if (!Overlaps(contract.span, splice)) {
      continue;
    }
    if (!Encloses(contract.span, splice)) {
      return "contract " + contract.name + " crosses injected " +
             Describe(splice);
    }
    for (const Member& m : contract.members) {
      Span span = m.span();
      if (!Overlaps(span, splice) || Inside(span, splice)) {
        continue;
      }
      const auto* fn = m.As<FunctionDef>();
      if (splice.kind == FragmentKind::kFunctionLevel || fn == nullptr ||
          !Encloses(span, splice)) {
        return "member at line " + std::to_string(span.first_line) +
               " crosses injected " + Describe(splice);
      }
      for (const StmtPtr& s : fn->body->As<Block>()->statements) {
        if (Overlaps(s->span, splice) && !Inside(s->span, splice)) {
          return "statement at line " + std::to_string(s->span.first_line) +
                 " crosses injected " + Describe(splice);
        }
      }
      placed = true;
    }
    if (splice.kind == FragmentKind::kFunctionLevel) {
      placed = true;
    }
  }
  if (!placed) {
    return std::string("injected ") + Describe(splice) + " not inside a " +
           (splice.kind == FragmentKind::kFunctionLevel ? "contract"
                                                        : "function") +
           " body";
  }
  return "";
}

std::string ShellQuote(const std::string& s) {
  std::string out = "'";
  for (char c : s) {
    if (c == '\'') {
      out += "'\\''";
    } else {
      out += c;
    }
  }
  return out + "'";
}

struct CommandResult {
  int exit_code = -1;
  bool timed_out = false;
  std::string out;
  std::string err;
};

CommandResult RunCommand(const std::string& command, int timeout_secs) {
  int out_pipe[2];
  int err_pipe[2];
  if (pipe(out_pipe) != 0 || pipe(err_pipe) != 0) {
    throw std::runtime_error("pipe failed");
  }
  posix_spawn_file_actions_t actions;
  posix_spawn_file_actions_init(&actions);
  posix_spawn_file_actions_addopen(&actions, STDIN_FILENO, "/dev/null",
                                   O_RDONLY, 0);
  posix_spawn_file_actions_adddup2(&actions, out_pipe[1], STDOUT_FILENO);
  posix_spawn_file_actions_adddup2(&actions, err_pipe[1], STDERR_FILENO);
  for (int fd : {out_pipe[0], out_pipe[1], err_pipe[0], err_pipe[1]}) {
    posix_spawn_file_actions_addclose(&actions, fd);
  }
  posix_spawnattr_t attr;
  posix_spawnattr_init(&attr);
  posix_spawnattr_setflags(&attr, POSIX_SPAWN_SETPGROUP);
  posix_spawnattr_setpgroup(&attr, 0);

  std::string shell = "/bin/sh";
  std::string flag = "-c";
  std::string cmd = command;
  char* argv[] = {shell.data(), flag.data(), cmd.data(), nullptr};
  pid_t pid = 0;
  int rc = posix_spawn(&pid, "/bin/sh", &actions, &attr, argv, environ);
  posix_spawn_file_actions_destroy(&actions);
  posix_spawnattr_destroy(&attr);
  close(out_pipe[1]);
  close(err_pipe[1]);
  CommandResult result;
  if (rc != 0) {
    close(out_pipe[0]);
    close(err_pipe[0]);
    result.exit_code = 127;
    result.err = "cannot start /bin/sh";
    return result;
  }

  auto deadline = std::chrono::steady_clock::now() +
                  std::chrono::seconds(timeout_secs);
  pollfd fds[2] = {{out_pipe[0], POLLIN, 0}, {err_pipe[0], POLLIN, 0}};
  std::string* sinks[2] = {&result.out, &result.err};
  int open_fds = 2;
  char buffer[4096];
  while (open_fds > 0) {
    auto left = std::chrono::duration_cast<std::chrono::milliseconds>(
                    deadline - std::chrono::steady_clock::now())
                    .count();
    if (left <= 0) {
      result.timed_out = true;
      break;
    }
    int ready = poll(fds, 2, static_cast<int>(std::min<long long>(left, 1000)));
    if (ready < 0 && errno != EINTR) {
      break;
    }
    for (int i = 0; i < 2; ++i) {
      if (fds[i].fd < 0 || (fds[i].revents & (POLLIN | POLLHUP)) == 0) {
        continue;
      }
      ssize_t n = read(fds[i].fd, buffer, sizeof(buffer));
      if (n > 0) {
        sinks[i]->append(buffer, static_cast<std::size_t>(n));
      } else {
        close(fds[i].fd);
        fds[i].fd = -1;
        --open_fds;
      }
    }
  }
  int status = 0;
  while (!result.timed_out) {
    pid_t done = waitpid(pid, &status, WNOHANG);
    if (done == pid) {
      break;
    }
    if (std::chrono::steady_clock::now() >= deadline) {
      result.timed_out = true;
      break;
    }
    std::this_thread::sleep_for(std::chrono::milliseconds(5));
  }
  if (result.timed_out) {
    kill(-pid, SIGKILL);
    waitpid(pid, &status, 0);
  }
  for (const pollfd& p : fds) {
    if (p.fd >= 0) {
      close(p.fd);
    }
  }
  if (!result.timed_out) {
    result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status)
                                         : 128 + WTERMSIG(status);
  }
  return result;
}

std::vector<Diagnostic> ParseDiagnostics(const std::string& err) {
  static const std::regex kLocation(R"(-->\s*[^:\s]+:(\d+):\d+)");
  static const std::regex kInline(R"(:(\d+):\d+:\s*(\w*Error|Warning|error|warning))");
  std::vector<std::string> lines;
  std::istringstream in(err);
  for (std::string line; std::getline(in, line);) {
    lines.push_back(line);
  }
  std::vector<Diagnostic> out;
  for (std::size_t i = 0; i < lines.size(); ++i) {
    const std::string& line = lines[i];
    std::smatch m;
    bool error = line.find("Error") != std::string::npos ||
                 line.starts_with("error");
    bool warning = line.starts_with("Warning") || line.starts_with("warning");
    if (!error && !warning) {
      continue;
    }
    Diagnostic d{error ? "error" : "warning", line, 0};
    if (std::regex_search(line, m, kInline)) {
      d.line = std::stoi(m[1]);
    } else {
      for (std::size_t j = i + 1; j < lines.size() && j <= i + 3; ++j) {
        if (std::regex_search(lines[j], m, kLocation)) {
          d.line = std::stoi(m[1]);
          break;
        }
      }
    }
    out.push_back(std::move(d));
  }
  return out;
}

std::string ReadText(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw std::runtime_error("cannot read " + path.string());
  }
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

ValidationOutcome CheckSyntax(std::string file, std::string_view text,
                              const std::optional<SpliceLines>& splice) {
  ValidationOutcome outcome;
  outcome.file = std::move(file);
  try {
    SourceUnit unit = Parse(text);
    if (unit.Contracts().empty()) {
      outcome.diagnostics.push_back({"error", "no contract definition", 0});
      return outcome;
    }
    if (splice) {
      std::string problem = CheckSplice(unit, *splice);
      if (!problem.empty()) {
        outcome.diagnostics.push_back({"error", problem, splice->first_line});
        return outcome;
      }
    }
    outcome.syntax_ok = true;
  } catch (const ParseError& e) {
    outcome.diagnostics.push_back({"error", e.what(), e.line()});
  }
  return outcome;
}

CompilerConfig WithEnvironment(CompilerConfig config) {
  if (const char* env = std::getenv("SOLMORPH_COMPILER"); env && *env) {
    config.command = env;
  }
  return config;
}

std::string ExpandCommand(std::string_view command_template,
                          const std::filesystem::path& file) {
  std::string out(command_template);
  std::string quoted = ShellQuote(file.string());
  bool substituted = false;
  for (std::size_t at = out.find("{file}"); at != std::string::npos;
       at = out.find("{file}", at + quoted.size())) {
    out.replace(at, 6, quoted);
    substituted = true;
  }
  if (!substituted) {
    out += " " + quoted;
  }
  return out;
}

ValidationOutcome CompileCheck(const std::filesystem::path& file,
                               const CompilerConfig& config,
                               ValidationOutcome syntax) {
  ValidationOutcome outcome = std::move(syntax);
  if (!outcome.syntax_ok || !config.Configured()) {
    return outcome;
  }
  CommandResult r =
      RunCommand(ExpandCommand(config.command, file), config.timeout_secs);
  if (r.timed_out) {
    outcome.compile_ok = false;
    outcome.diagnostics.push_back(
        {"error",
         "compiler timed out after " + std::to_string(config.timeout_secs) +
             " s",
         0});
    return outcome;
  }
  if (r.exit_code == 127) {
    outcome.compile_ok = false;
    outcome.diagnostics.push_back(
        {"error", "compiler not found: " + config.command, 0});
    return outcome;
  }
  outcome.compile_ok = r.exit_code == 0;
  std::vector<Diagnostic> found = ParseDiagnostics(r.err);
  if (!*outcome.compile_ok && found.empty()) {
    std::string message = r.err.substr(0, 2000);
    while (!message.empty() && std::isspace(static_cast<unsigned char>(
                                   message.back()))) {
      message.pop_back();
    }
    if (message.empty()) {
      message = "compiler exited with status " + std::to_string(r.exit_code);
    }
    found.push_back({"error", message, 0});
  }
  outcome.diagnostics.insert(outcome.diagnostics.end(), found.begin(),
                             found.end());
  return outcome;
}

std::optional<std::string> CompilerVersion(const CompilerConfig& config) {
  if (!config.Configured()) {
    return std::nullopt;
  }
  std::string command = config.version_command;
  if (command.empty()) {
    std::istringstream in(config.command);
    std::string program;
    in >> program;
    command = program + " --version";
  }
  CommandResult r = RunCommand(command, config.timeout_secs);
  if (r.timed_out || r.exit_code != 0) {
    return std::nullopt;
  }
  std::istringstream in(r.out.empty() ? r.err : r.out);
  std::string line, last;
  while (std::getline(in, line)) {
    if (!line.empty()) {
      last = line;
    }
  }
  if (last.empty()) {
    return std::nullopt;
  }
  return last;
}

std::vector<ValidationOutcome> ValidateFiles(
    const std::vector<FileToValidate>& files, const CompilerConfig& config) {
  std::vector<ValidationOutcome> out(files.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < files.size(); i = next++) {
      const FileToValidate& f = files[i];
      ValidationOutcome syntax;
      try {
        syntax = CheckSyntax(f.path.filename().string(), ReadText(f.path),
                             f.splice);
      } catch (const std::exception& e) {
        syntax.file = f.path.filename().string();
        syntax.diagnostics.push_back({"error", e.what(), 0});
      }
      out[i] = CompileCheck(f.path, config, std::move(syntax));
    }
  };
  int workers = std::max(1, std::min<int>(config.parallelism,
                                          static_cast<int>(files.size())));
  std::vector<std::thread> pool;
  for (int i = 1; i < workers; ++i) {
    pool.emplace_back(worker);
  }
  worker();
  for (std::thread& t : pool) {
    t.join();
  }
  return out;
}

}  // namespace solmorph
