#include <algorithm>
#include <ostream>
#include <stdexcept>

#include "vdyn/cli.hpp"
#include "vdyn/errors.hpp"
#include "vdyn/induced.hpp"

namespace vdyn::cli {

namespace {

const Json& require(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) {
    throw ValidationError(std::string("report: missing field '") + key + "'");
  }
  return j.at(key);
}

template <class T>
T require_as(const Json& j, const char* key) {
  try {
    return require(j, key).get<T>();
  } catch (const Json::type_error&) {
    throw ValidationError(std::string("report: field '") + key + "' has the wrong type");
  }
}

}  // namespace

bool Report::passed() const {
  if (suites.empty()) return false;
  return std::all_of(suites.begin(), suites.end(),
                     [](const SuiteResult& s) { return s.failures == 0 && !s.timed_out; });
}

int Report::exit_code() const {
  if (suites.empty()) return kSuiteFailure;
  for (const auto& s : suites) {
    if (s.failures > 0) return kSuiteFailure;
  }
  for (const auto& s : suites) {
    if (s.timed_out) return kExhausted;
  }
  return kPass;
}

Json Report::to_json(bool with_timing) const {
  Json out_suites = Json::array();
  for (const auto& s : suites) {
    Json examples = Json::array();
    for (const auto& e : s.examples) {
      examples.push_back(Json{{"trial", e.trial}, {"seed", e.seed}, {"detail", e.detail}});
    }
    Json js{{"name", s.name},
            {"trials", s.trials},
            {"failures", s.failures},
            {"failure_examples", examples},
            {"timed_out", s.timed_out}};
    if (with_timing) js["wall_seconds"] = s.wall_seconds;
    out_suites.push_back(js);
  }
  return Json{{"config", config}, {"suites", out_suites}, {"passed", passed()}};
}

Report Report::from_json(const Json& j) {
  Report r;
  r.config = require(j, "config");
  const Json& suites = require(j, "suites");
  if (!suites.is_array()) throw ValidationError("report: 'suites' must be an array");
  for (const auto& s : suites) {
    SuiteResult res;
    res.name = require_as<std::string>(s, "name");
    res.trials = require_as<std::size_t>(s, "trials");
    res.failures = require_as<std::size_t>(s, "failures");
    res.timed_out = require_as<bool>(s, "timed_out");
    if (s.contains("wall_seconds")) res.wall_seconds = require_as<double>(s, "wall_seconds");
    const Json& examples = require(s, "failure_examples");
    if (!examples.is_array()) throw ValidationError("report: 'failure_examples' must be an array");
    for (const auto& e : examples) {
      res.examples.push_back({require_as<std::size_t>(e, "trial"),
                              require_as<std::uint64_t>(e, "seed"),
                              require_as<std::string>(e, "detail")});
    }
    r.suites.push_back(std::move(res));
  }
  return r;
}

EvalResult cmd_eval(const VElement& f, const Point& x, std::size_t n) {
  EvalResult out{std::string(), v_act_point(f, x)};
  for (std::size_t i = 0; i < n; ++i) out.bits.push_back(v_eval_bit(f, x, i) ? '1' : '0');
  if (out.bits != point_prefix(out.image, n).str()) {
    throw std::logic_error("transducer bits " + out.bits + " disagree with image " +
                           out.image.to_string());
  }
  return out;
}

bool SteerResult::all_landed() const {
  return std::all_of(memberships.begin(), memberships.end(), [](bool b) { return b; });
}

Json SteerResult::to_json() const {
  Json values = Json::array();
  for (const auto& v : final_config.values) values.push_back(to_json_value(v));
  return Json{{"moves", to_json_value(moves)},
              {"certificate",
               {{"final_values", values},
                {"memberships", memberships},
                {"all_landed", all_landed()}}}};
}

SteerResult cmd_steer(const Json& instance, std::size_t retry_budget, std::uint64_t seed) {
  const Configuration c = configuration_from_json(instance);
  std::vector<BinaryWord> targets;
  const Json& jt = instance.contains("targets") ? instance.at("targets") : Json();
  if (!jt.is_array()) throw ValidationError("instance: 'targets' must be an array");
  for (const auto& t : jt) targets.push_back(binary_word_from_json(t));

  const VHom dhom = default_d_hom();
  SteerResult out;
  out.moves = steer_to_target(c, targets, dhom, {retry_budget, seed});
  out.final_config = apply_moves(out.moves, c, dhom);
  out.memberships = target_memberships(out.final_config, targets);
  return out;
}

int cmd_report(const Json& j, std::ostream& out) {
  const Report r = Report::from_json(j);
  if (r.suites.empty()) {
    out << "NO SUITES RUN\n";
    return kSuiteFailure;
  }
  if (r.config.is_object() && r.config.contains("seed")) {
    out << "master seed " << r.config.at("seed").dump() << "\n";
  }
  std::size_t failed = 0;
  for (const auto& s : r.suites) {
    const char* tag = s.failures > 0 ? "FAIL" : s.timed_out ? "TIMEOUT" : "PASS";
    if (s.failures > 0 || s.timed_out) ++failed;
    out << "[" << tag << "] " << s.name << ": " << s.trials << " trials, " << s.failures
        << " failures";
    if (s.timed_out) out << ", timed out";
    out << "\n";
    for (const auto& e : s.examples) {
      out << "    suite " << s.name << " trial " << e.trial << " seed " << e.seed << ": "
          << e.detail << "\n";
    }
  }
  if (failed == 0) {
    out << "ALL SUITES PASSED\n";
  } else {
    out << failed << " OF " << r.suites.size() << " SUITES FAILED\n";
  }
  return r.exit_code();
}

}  // namespace vdyn::cli
