// Running external SAT solvers on a formula: write a temporary DIMACS
// file, spawn the solver through /bin/sh, enforce a wall-clock timeout,
// and parse the standard "s ..." / "v ..." output lines.
#pragma once

#include <sys/types.h>
#include <sys/wait.h>

#include <csignal>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <chrono>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include <fcntl.h>
#include <unistd.h>

#include "cardenc/cnf.hpp"
#include "cardenc/dimacs.hpp"
#include "cardenc/solve.hpp"

namespace cardenc {

struct SpawnError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct SolverOutputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct ModelCheckFailed : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// How to invoke an external solver.  `{file}` in the command template is
/// replaced by the DIMACS path and `{seed}` by the run seed.
struct SolverCommand {
  std::string command;  // e.g. "minisat {file}" or "kissat -q {file}"
  std::string sat_pattern = "s SATISFIABLE";
  std::string unsat_pattern = "s UNSATISFIABLE";
  double timeout_s = 0.0;  // 0 = no limit
};

struct ExternalResult {
  SolveStatus status = SolveStatus::Timeout;
  std::vector<bool> model;  // 1-based, only meaningful when Sat
  double wall_time = 0.0;
  int exit_code = -1;
  std::string output;
};

namespace detail {

inline std::string substitute_placeholders(std::string cmd,
                                           const std::string& file,
                                           unsigned seed) {
  auto replace_all = [&cmd](const std::string& key, const std::string& val) {
    std::size_t at = 0;
    while ((at = cmd.find(key, at)) != std::string::npos) {
      cmd.replace(at, key.size(), val);
      at += val.size();
    }
  };
  replace_all("{file}", file);
  replace_all("{seed}", std::to_string(seed));
  return cmd;
}

struct TempFile {
  std::string path;
  explicit TempFile(const std::string& contents) {
    char tmpl[] = "/tmp/cardenc-XXXXXX";
    const int fd = ::mkstemp(tmpl);
    if (fd < 0) throw SpawnError("mkstemp failed");
    path = tmpl;
    const char* data = contents.data();
    std::size_t left = contents.size();
    while (left > 0) {
      const ssize_t wrote = ::write(fd, data, left);
      if (wrote <= 0) {
        ::close(fd);
        throw SpawnError("failed to write temporary DIMACS file");
      }
      data += wrote;
      left -= static_cast<std::size_t>(wrote);
    }
    ::close(fd);
  }
  ~TempFile() { ::unlink(path.c_str()); }
  TempFile(const TempFile&) = delete;
  TempFile& operator=(const TempFile&) = delete;
};

// Spawns `sh -c cmd`, captures stdout, enforces the timeout by SIGKILL.
// Returns {exit_code, timed_out, output}.
struct RunOutput {
  int exit_code = -1;
  bool timed_out = false;
  std::string output;
  double wall_time = 0.0;
};

inline RunOutput run_command(const std::string& cmd, double timeout_s) {
  int pipefd[2];
  if (::pipe(pipefd) != 0) throw SpawnError("pipe failed");

  const auto start = std::chrono::steady_clock::now();
  const pid_t pid = ::fork();
  if (pid < 0) {
    ::close(pipefd[0]);
    ::close(pipefd[1]);
    throw SpawnError("fork failed");
  }
  if (pid == 0) {
    ::dup2(pipefd[1], STDOUT_FILENO);
    ::dup2(pipefd[1], STDERR_FILENO);
    ::close(pipefd[0]);
    ::close(pipefd[1]);
    ::execl("/bin/sh", "sh", "-c", cmd.c_str(), (char*)nullptr);
    _exit(127);
  }
  ::close(pipefd[1]);
  ::fcntl(pipefd[0], F_SETFL, O_NONBLOCK);

  RunOutput out;
  std::string buf;
  char chunk[4096];
  bool child_done = false;
  int status = 0;

  for (;;) {
    for (;;) {
      const ssize_t got = ::read(pipefd[0], chunk, sizeof(chunk));
      if (got > 0) buf.append(chunk, static_cast<std::size_t>(got));
      else break;
    }
    if (!child_done) {
      const pid_t w = ::waitpid(pid, &status, WNOHANG);
      if (w == pid) child_done = true;
    }
    if (child_done) {
      // Drain anything still buffered in the pipe.
      for (;;) {
        const ssize_t got = ::read(pipefd[0], chunk, sizeof(chunk));
        if (got > 0) buf.append(chunk, static_cast<std::size_t>(got));
        else break;
      }
      break;
    }
    const double elapsed =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
            .count();
    if (timeout_s > 0 && elapsed > timeout_s) {
      ::kill(pid, SIGKILL);
      ::waitpid(pid, &status, 0);
      out.timed_out = true;
      break;
    }
    std::this_thread::sleep_for(std::chrono::milliseconds(2));
  }
  ::close(pipefd[0]);

  out.wall_time =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
          .count();
  out.output = std::move(buf);
  if (!out.timed_out && WIFEXITED(status)) out.exit_code = WEXITSTATUS(status);
  return out;
}

inline std::vector<bool> parse_v_lines(const std::string& output, int nvars) {
  std::vector<bool> model(nvars + 1, false);
  std::istringstream in(output);
  std::string line;
  bool saw_any = false;
  while (std::getline(in, line)) {
    if (line.rfind("v ", 0) != 0 && line != "v") continue;
    saw_any = true;
    std::istringstream ls(line.substr(1));
    long lit = 0;
    while (ls >> lit) {
      if (lit == 0) continue;
      const long v = lit > 0 ? lit : -lit;
      if (v <= nvars) model[static_cast<std::size_t>(v)] = lit > 0;
    }
  }
  if (!saw_any)
    throw SolverOutputError("solver reported SAT but printed no v-lines");
  return model;
}

}  // namespace detail

/// Runs an external solver on `f`.  A reported SAT model is re-checked
/// against the formula locally; failures raise ModelCheckFailed.
inline ExternalResult run_external(const Formula& f, const SolverCommand& sc,
                                   unsigned seed = 0) {
  const detail::TempFile tmp(write_dimacs(f));
  const std::string cmd =
      detail::substitute_placeholders(sc.command, tmp.path, seed);
  const detail::RunOutput run = detail::run_command(cmd, sc.timeout_s);

  ExternalResult res;
  res.wall_time = run.wall_time;
  res.exit_code = run.exit_code;
  res.output = run.output;
  if (run.timed_out) {
    res.status = SolveStatus::Timeout;
    return res;
  }

  const bool says_sat = run.output.find(sc.sat_pattern) != std::string::npos;
  const bool says_unsat =
      run.output.find(sc.unsat_pattern) != std::string::npos;
  // "s SATISFIABLE" is a substring of "s UNSATISFIABLE", so UNSAT wins.
  if (says_unsat || run.exit_code == 20) {
    res.status = SolveStatus::Unsat;
    return res;
  }
  if (says_sat || run.exit_code == 10) {
    res.status = SolveStatus::Sat;
    res.model = detail::parse_v_lines(run.output, f.num_vars());
    if (!check_model(f, res.model))
      throw ModelCheckFailed("external solver model does not satisfy the formula");
    return res;
  }
  throw SolverOutputError("could not determine solver verdict (exit code " +
                          std::to_string(run.exit_code) + ")");
}

}  // namespace cardenc
