#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "vdyn/cli.hpp"
#include "vdyn/errors.hpp"

using namespace vdyn;
using namespace vdyn::cli;

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ValidationError("cannot write " + path);
  out << text;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Thompson's group V, witness synthesis and induced dynamics on X^D"};
  app.require_subcommand(1);

  SuiteConfig cfg;
  std::size_t trials = 0;
  std::vector<std::string> only;
  std::string out_path;
  auto* verify = app.add_subcommand("verify", "Run the verification suites and emit a JSON report");
  verify->add_option("--seed", cfg.seed, "Master seed");
  auto* trials_opt = verify->add_option("--trials", trials, "Trials per suite (overrides defaults)");
  verify->add_option("--max-word-len", cfg.max_word_len, "Word length for the freeness check");
  verify->add_option("--max-window", cfg.max_window, "Maximum window size");
  verify->add_option("--max-depth", cfg.max_depth, "Maximum depth of random elements");
  verify->add_option("--budget", cfg.retry_budget, "Retry budget for separation");
  verify->add_option("--time-limit", cfg.time_limit, "Wall-clock limit in seconds");
  verify->add_option("--jobs", cfg.jobs, "Suites run concurrently");
  verify->add_flag("--with-timing", cfg.with_timing, "Include wall times in the report");
  verify->add_option("--suite", only, "Run only the named suites");
  verify->add_option("--out", out_path, "Report file (default: stdout)");

  std::string elem_path, point_text;
  std::size_t bits = 0;
  auto* eval = app.add_subcommand("eval", "Evaluate an element on an eventually periodic point");
  eval->add_option("--elem", elem_path, "Element JSON file")->required();
  eval->add_option("--point", point_text, "Point, e.g. 1(01)")->required();
  eval->add_option("--bits", bits, "Number of output bits")->required();

  std::string in_path;
  std::size_t budget = 32;
  std::uint64_t steer_seed = 0;
  auto* steer = app.add_subcommand("steer", "Steer a configuration into target cylinders");
  steer->add_option("--in", in_path, "Instance JSON file")->required();
  steer->add_option("--out", out_path, "Output JSON file")->required();
  steer->add_option("--budget", budget, "Retry budget per collision");
  steer->add_option("--seed", steer_seed, "Seed for retries");

  auto* report = app.add_subcommand("report", "Render a JSON report as text");
  report->add_option("--in", in_path, "Report JSON file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kPass : kInvalid;
  }

  try {
    if (*verify) {
      if (trials_opt->count() > 0) cfg.trials = trials;
      const Report r = only.empty() ? cmd_verify(cfg) : run_suites(cfg, only);
      const std::string text = r.to_json(cfg.with_timing).dump(2) + "\n";
      if (out_path.empty()) {
        std::cout << text;
      } else {
        write_file(out_path, text);
        cmd_report(r.to_json(cfg.with_timing), std::cout);
      }
      return r.exit_code();
    }
    if (*eval) {
      const VElement f = velement_from_json(parse_json_text(read_file(elem_path)));
      const EvalResult res = cmd_eval(f, parse_point(point_text), bits);
      std::cout << Json{{"bits", res.bits}, {"image", res.image.to_string()}}.dump() << "\n";
      return kPass;
    }
    if (*steer) {
      try {
        const SteerResult res = cmd_steer(parse_json_text(read_file(in_path)), budget, steer_seed);
        write_file(out_path, res.to_json().dump(2) + "\n");
        return res.all_landed() ? kPass : kSuiteFailure;
      } catch (const BudgetExhausted& e) {
        write_file(out_path, Json{{"error", "budget exhausted"}, {"detail", e.what()}}.dump(2) + "\n");
        throw;
      }
    }
    if (*report) return cmd_report(parse_json_text(read_file(in_path)), std::cout);
  } catch (const ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInvalid;
  } catch (const BudgetExhausted& e) {
    std::cerr << "budget exhausted: " << e.what() << "\n";
    return kExhausted;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kSuiteFailure;
  }
  return kPass;
}
