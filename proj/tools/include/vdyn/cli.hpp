#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "vdyn/json_io.hpp"

namespace vdyn::cli {

enum ExitCode : int { kPass = 0, kSuiteFailure = 1, kInvalid = 2, kExhausted = 3 };

struct SuiteConfig {
  std::uint64_t seed = 0;
  std::optional<std::size_t> trials;  // overrides every suite's default count
  std::size_t max_word_len = 8;
  std::size_t max_window = 4;
  std::size_t max_depth = 12;
  std::size_t retry_budget = 32;
  double time_limit = 300;
  std::size_t jobs = 1;
  bool with_timing = false;

  /// Throws ValidationError when a count is zero or out of range.
  void validate() const;
  Json to_json() const;
};

struct FailureExample {
  std::size_t trial = 0;
  std::uint64_t seed = 0;
  std::string detail;
};

struct SuiteResult {
  std::string name;
  std::size_t trials = 0;
  std::size_t failures = 0;
  std::vector<FailureExample> examples;
  bool timed_out = false;
  double wall_seconds = 0;
};

struct Report {
  Json config;
  std::vector<SuiteResult> suites;

  bool passed() const;
  int exit_code() const;
  /// Wall times appear only when `with_timing` is set so that reports for a
  /// fixed config are byte-identical.
  Json to_json(bool with_timing) const;
  static Report from_json(const Json& j);
};

/// Suite names in run order.
const std::vector<std::string>& suite_names();

Report cmd_verify(const SuiteConfig& config);
/// Runs a subset of suites by name, keeping run order.
Report run_suites(const SuiteConfig& config, const std::vector<std::string>& names);

struct EvalResult {
  std::string bits;
  Point image;
};

/// First n bits of f(x) via the transducer rule, checked against the
/// prefix of the direct image. Throws std::logic_error if they differ.
EvalResult cmd_eval(const VElement& f, const Point& x, std::size_t n);

struct SteerResult {
  std::vector<Move> moves;
  Configuration final_config;
  std::vector<bool> memberships;

  bool all_landed() const;
  Json to_json() const;
};

/// Instance: {"sites": [...], "values": [...], "targets": [...]}.
SteerResult cmd_steer(const Json& instance, std::size_t retry_budget, std::uint64_t seed);

/// Plain-text rendering; returns the exit code.
int cmd_report(const Json& report, std::ostream& out);

}  // namespace vdyn::cli
