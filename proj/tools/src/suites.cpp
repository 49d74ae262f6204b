#include <atomic>
#include <chrono>
#include <functional>
#include <algorithm>
#include <map>
#include <set>
#include <thread>

#include "vdyn/cli.hpp"
#include "vdyn/errors.hpp"
#include "vdyn/induced.hpp"

namespace vdyn::cli {

namespace {

using Clock = std::chrono::steady_clock;
using Failure = std::optional<std::string>;
using Trial = std::function<Failure(Rng&, std::size_t trial, const SuiteConfig&)>;
using Runner = std::function<SuiteResult(const SuiteConfig&, std::size_t index, Clock::time_point)>;

constexpr std::size_t kMaxExamples = 5;

struct Suite {
  std::string name;
  Runner run;
};

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

void record(SuiteResult& r, std::size_t trial, std::uint64_t seed, Failure failure) {
  ++r.trials;
  if (!failure) return;
  ++r.failures;
  if (r.examples.size() < kMaxExamples) r.examples.push_back({trial, seed, std::move(*failure)});
}

Runner sampled(std::string name, std::size_t default_trials, Trial trial) {
  return [name = std::move(name), default_trials, trial = std::move(trial)](
             const SuiteConfig& cfg, std::size_t index, Clock::time_point deadline) {
    SuiteResult r{name};
    const auto start = Clock::now();
    const std::size_t n = cfg.trials.value_or(default_trials);
    for (std::size_t t = 0; t < n; ++t) {
      if (Clock::now() > deadline) {
        r.timed_out = true;
        break;
      }
      const std::uint64_t seed = derive_seed(cfg.seed, index, t);
      Rng rng(seed);
      Failure failure;
      try {
        failure = trial(rng, t, cfg);
      } catch (const std::exception& e) {
        failure = std::string("exception: ") + e.what();
      }
      record(r, t, seed, std::move(failure));
    }
    r.wall_seconds = seconds_since(start);
    return r;
  };
}

std::string dump(const Json& j) { return j.dump(); }

BinaryWord random_binary_word(std::size_t max_len, Rng& rng) {
  BinaryWord w;
  const std::size_t len = rng.below(max_len + 1);
  for (std::size_t i = 0; i < len; ++i) w.push_back(rng.coin());
  return w;
}

FreeWord random_free_word(Alphabet alphabet, std::size_t max_len, Rng& rng) {
  static constexpr Generator ab_gens[] = {Generator::a1, Generator::a2, Generator::b1,
                                          Generator::b2};
  std::vector<Letter> letters;
  const std::size_t len = rng.below(max_len + 1);
  for (std::size_t i = 0; i < len; ++i) {
    Generator g = Generator::d1;
    switch (alphabet) {
      case Alphabet::AB:
        g = ab_gens[rng.below(4)];
        break;
      case Alphabet::C:
        g = rng.coin() ? Generator::c1 : Generator::c2;
        break;
      case Alphabet::D:
        g = rng.coin() ? Generator::d1 : Generator::d2;
        break;
    }
    letters.push_back({g, rng.coin() ? 1 : -1});
  }
  return FreeWord(alphabet, letters);
}

std::vector<Point> distinct_points(std::size_t n, Rng& rng) {
  std::set<Point> seen;
  std::vector<Point> out;
  while (out.size() < n) {
    Point p = random_point(8, rng);
    if (seen.insert(p).second) out.push_back(std::move(p));
  }
  return out;
}

Window random_window(std::size_t max_sites, Rng& rng) {
  std::set<FreeWord> seen;
  std::vector<FreeWord> sites;
  const std::size_t n = rng.between(1, max_sites);
  while (sites.size() < n) {
    FreeWord w = random_free_word(Alphabet::D, 3, rng);
    if (seen.insert(w).second) sites.push_back(std::move(w));
  }
  return Window(std::move(sites));
}

VElement random_element(const SuiteConfig& cfg, Rng& rng) {
  return v_random(rng.between(1, cfg.max_depth), rng);
}

bool in_cylinder(const Point& x, const BinaryWord& w) { return point_prefix(x, w.size()) == w; }

// Acts by an arbitrary (not necessarily reduced) pair list.
class PairAction {
 public:
  explicit PairAction(const std::vector<VPair>& pairs) {
    std::vector<BinaryWord> us;
    for (const auto& p : pairs) {
      us.push_back(p.u);
      to_[p.u] = p.v;
    }
    domain_ = PrefixCode(us);
  }

  Point operator()(const Point& x) const {
    const auto i = domain_.prefix_index(point_prefix(x, domain_.max_length()));
    const BinaryWord& u = domain_.words().at(*i);
    return x.drop(u.size()).prepend(to_.at(u));
  }

 private:
  PrefixCode domain_;
  std::map<BinaryWord, BinaryWord> to_;
};

Failure words_trial(Rng& rng, std::size_t, const SuiteConfig&) {
  const PrefixCode a = random_complete_code(rng.between(1, 32), 6, rng);
  const PrefixCode b = random_complete_code(rng.between(1, 32), 6, rng);
  const PrefixCode r = refine_common(a, b);
  if (!kraft_is_complete(r)) return "refinement not complete: " + dump(to_json_value(r));
  for (const auto& w : r.words()) {
    if (!a.prefix_index(w) || !b.prefix_index(w)) {
      return "refinement word " + w.str() + " does not extend both codes";
    }
  }
  const std::size_t m = r.size() + rng.below(16);
  const PrefixCode s = subdivide_to_size(r, m);
  if (s.size() != m || !kraft_is_complete(s)) return "subdivision to " + std::to_string(m) + " failed";

  const Point x = random_point(8, rng);
  if (point_normalize(x.preperiod(), x.period()) != x) return "normalization not idempotent at " + x.to_string();
  const std::size_t k = rng.below(12);
  if (x.drop(k).prepend(point_prefix(x, k)) != x) return "shift round trip failed at " + x.to_string();

  std::vector<BinaryWord> chosen;
  for (const auto& w : a.words()) {
    if (rng.coin()) chosen.push_back(w);
  }
  const CylinderSet c = cylinderset_reduce(chosen);
  const CylinderSet comp = set_complement(c);
  if (set_union(c, comp) != CylinderSet::whole() || !are_disjoint(c, comp)) {
    return "complement law fails for " + dump(to_json_value(c));
  }
  bool member = false;
  for (const auto& w : chosen) member = member || in_cylinder(x, w);
  if (c.contains(x) != member) return "membership of " + x.to_string() + " disagrees";
  return std::nullopt;
}

Failure group_law_trial(Rng& rng, std::size_t, const SuiteConfig& cfg) {
  const VElement f = random_element(cfg, rng);
  const VElement g = random_element(cfg, rng);
  const VElement h = random_element(cfg, rng);
  const VElement one;
  if (v_compose(f, v_compose(g, h)) != v_compose(v_compose(f, g), h)) {
    return "associativity fails for " + dump(to_json_value(f));
  }
  if (v_compose(one, f) != f || v_compose(f, one) != f) return "identity law fails";
  if (!v_is_identity(v_compose(f, v_invert(f))) || !v_is_identity(v_compose(v_invert(f), f))) {
    return "inverse law fails for " + dump(to_json_value(f));
  }

  // Split some pairs (u,v) into (u0,v0),(u1,v1): same map, new presentation.
  std::vector<VPair> pairs = f.pairs();
  const std::size_t splits = rng.between(1, 3);
  for (std::size_t s = 0; s < splits; ++s) {
    const std::size_t i = rng.below(pairs.size());
    const VPair p = pairs[i];
    pairs[i] = {p.u.child(0), p.v.child(0)};
    pairs.push_back({p.u.child(1), p.v.child(1)});
  }
  if (v_from_pairs(pairs) != f) return "reduction of a split presentation differs";
  const PairAction split(pairs);
  for (int t = 0; t < 100; ++t) {
    const Point x = random_point(8, rng);
    if (split(x) != v_act_point(f, x)) return "split presentation acts differently at " + x.to_string();
  }
  return std::nullopt;
}

Failure transducer_trial(Rng& rng, std::size_t, const SuiteConfig& cfg) {
  const VElement f = random_element(cfg, rng);
  const Point x = random_point(8, rng);
  const Point y = v_act_point(f, x);
  for (std::size_t n = 0; n < 64; ++n) {
    if (v_eval_bit(f, x, n) != y.bit(n)) {
      return "bit " + std::to_string(n) + " of f(" + x.to_string() + ") differs for " +
             dump(to_json_value(f));
    }
  }
  return std::nullopt;
}

CylinderSet cyl(std::initializer_list<const char*> ws) {
  std::vector<BinaryWord> v;
  for (const char* w : ws) v.emplace_back(w);
  return cylinderset_reduce(v);
}

Failure pingpong_trial(Rng& rng, std::size_t trial, const SuiteConfig&) {
  const auto [a, b] = pingpong_generators();
  if (trial == 0) {
    if (v_order(a) != 2) return std::string("a does not have order 2");
    if (v_order(b) != 3) return std::string("b does not have order 3");
    if (!is_subset(v_image_of_cylinderset(a, cyl({"10", "11"})), cyl({"0"}))) {
      return std::string("a([10] ∪ [11]) is not inside [0]");
    }
    const CylinderSet b_images = set_union(v_image_of_cylinderset(b, cyl({"0"})),
                                           v_image_of_cylinderset(v_power(b, 2), cyl({"0"})));
    if (!is_subset(b_images, cyl({"10", "11"}))) return std::string("b[0] ∪ b²[0] is not inside [10] ∪ [11]");
    for (const VElement& x : default_free_images()) {
      if (v_is_identity(x)) return std::string("a commutator image is trivial");
    }
  }
  const Point x = random_point(8, rng);
  if (x.bit(0) == 1 && v_act_point(a, x).bit(0) != 0) return "a moves " + x.to_string() + " outside [0]";
  if (x.bit(0) == 0) {
    for (const VElement& g : {b, v_invert(b)}) {
      if (v_act_point(g, x).bit(0) != 1) return "b^±1 moves " + x.to_string() + " outside [1]";
    }
  }
  return std::nullopt;
}

SuiteResult freeness_suite(const SuiteConfig& cfg, std::size_t, Clock::time_point) {
  SuiteResult r{"freeness"};
  const auto start = Clock::now();
  const FreenessResult res = freeness_search(default_d_hom(), cfg.max_word_len);
  r.trials = res.words_checked;
  if (res.relator) {
    r.failures = 1;
    r.examples.push_back({0, cfg.seed, "relator " + res.relator->to_string()});
  } else if (res.words_checked != reduced_word_count(cfg.max_word_len)) {
    r.failures = 1;
    r.examples.push_back({0, cfg.seed, "enumeration checked " + std::to_string(res.words_checked) + " words"});
  }
  r.wall_seconds = seconds_since(start);
  return r;
}

Failure antidiagonal_trial(Rng& rng, std::size_t, const SuiteConfig&) {
  const std::vector<Point> pts = distinct_points(rng.between(1, 6), rng);
  std::vector<BinaryWord> targets;
  for (std::size_t i = 0; i < pts.size(); ++i) targets.push_back(random_binary_word(8, rng));
  const VElement g = antidiagonal_witness(pts, targets);
  for (std::size_t i = 0; i < pts.size(); ++i) {
    if (!in_cylinder(v_act_point(g, pts[i]), targets[i])) {
      return pts[i].to_string() + " misses target " + targets[i].str();
    }
  }
  return std::nullopt;
}

Failure expansivity_trial(Rng& rng, std::size_t, const SuiteConfig&) {
  const auto pts = distinct_points(2, rng);
  const VElement g = expansivity_witness(pts[0], pts[1]);
  if (v_act_point(g, pts[0]).bit(0) != 0 || v_act_point(g, pts[1]).bit(0) != 1) {
    return "no separation of " + pts[0].to_string() + " and " + pts[1].to_string();
  }
  return std::nullopt;
}

Failure centerless_trial(Rng& rng, std::size_t, const SuiteConfig& cfg) {
  VElement f;
  while (v_is_identity(f)) f = random_element(cfg, rng);
  const auto [g, x] = centerless_witness(f);
  if (v_act_point(g, v_act_point(f, x)) == v_act_point(f, v_act_point(g, x))) {
    return "witness commutes at " + x.to_string() + " for " + dump(to_json_value(f));
  }
  return std::nullopt;
}

Failure steering_trial(Rng& rng, std::size_t, const SuiteConfig& cfg) {
  const Window w = random_window(cfg.max_window, rng);
  // Fewer distinct values than sites forces a collision whenever n ≥ 2.
  const std::size_t n = w.size();
  const auto pool = distinct_points(n > 1 ? rng.between(1, n - 1) : 1, rng);
  Configuration c{w, {}};
  for (std::size_t i = 0; i < n; ++i) c.values.push_back(pool[rng.below(pool.size())]);
  std::vector<BinaryWord> targets;
  for (std::size_t i = 0; i < n; ++i) targets.push_back(random_binary_word(6, rng));

  const VHom dhom = default_d_hom();
  const auto moves = steer_to_target(c, targets, dhom, {cfg.retry_budget, rng.next()});
  const auto landed = target_memberships(apply_moves(moves, c, dhom), targets);
  for (std::size_t i = 0; i < n; ++i) {
    if (!landed[i]) return "site " + std::to_string(i) + " misses its target in " + dump(to_json_value(c));
  }
  return std::nullopt;
}

Failure action_law_trial(Rng& rng, std::size_t, const SuiteConfig& cfg) {
  const InducedAction action = InducedAction::default_instance();
  const Window w = random_window(cfg.max_window, rng);
  Configuration c{w, {}};
  for (std::size_t i = 0; i < w.size(); ++i) c.values.push_back(random_point(8, rng));

  // h = ε: the element acts as its letters do, rightmost first.
  const FreeWord k = random_free_word(Alphabet::AB, 6, rng);
  const SemidirectElement g{k, random_free_word(Alphabet::C, 2, rng), FreeWord(Alphabet::D)};
  std::vector<Move> moves;
  for (auto it = k.letters().rbegin(); it != k.letters().rend(); ++it) {
    moves.push_back({is_a_generator(it->gen) ? Role::A : Role::B, action.ab.image(*it)});
  }
  if (apply_group_element(g, c, action) != apply_moves(moves, c, action.d)) {
    return "letterwise moves disagree with " + dump(to_json_value(g));
  }

  const SemidirectElement g1{random_free_word(Alphabet::AB, 4, rng),
                             random_free_word(Alphabet::C, 2, rng),
                             random_free_word(Alphabet::D, 2, rng)};
  const SemidirectElement g2{random_free_word(Alphabet::AB, 4, rng),
                             random_free_word(Alphabet::C, 2, rng),
                             random_free_word(Alphabet::D, 2, rng)};
  const auto stepwise = apply_group_element(g2, apply_group_element(g1, c, action), action);
  const auto product = apply_group_element(semidirect_mul(g2, g1, action.letters), c, action);
  if (stepwise != product) {
    return "composition law fails for " + dump(to_json_value(g2)) + " after " + dump(to_json_value(g1));
  }
  return std::nullopt;
}

const std::vector<Suite>& suites() {
  static const std::vector<Suite> all{
      {"words-and-codes", sampled("words-and-codes", 1000, words_trial)},
      {"v-group-laws", sampled("v-group-laws", 1000, group_law_trial)},
      {"transducer", sampled("transducer", 1000, transducer_trial)},
      {"ping-pong", sampled("ping-pong", 100, pingpong_trial)},
      {"freeness", freeness_suite},
      {"antidiagonal", sampled("antidiagonal", 500, antidiagonal_trial)},
      {"expansivity", sampled("expansivity", 200, expansivity_trial)},
      {"centerless", sampled("centerless", 100, centerless_trial)},
      {"steering", sampled("steering", 200, steering_trial)},
      {"action-law", sampled("action-law", 200, action_law_trial)},
  };
  return all;
}

}  // namespace

void SuiteConfig::validate() const {
  auto positive = [](std::size_t v, const char* what) {
    if (v == 0) throw ValidationError(std::string(what) + " must be at least 1");
  };
  if (trials) positive(*trials, "trials");
  positive(max_word_len, "max_word_len");
  positive(max_window, "max_window");
  positive(max_depth, "max_depth");
  positive(retry_budget, "retry_budget");
  positive(jobs, "jobs");
  if (max_depth > 20) throw ValidationError("max_depth must be at most 20");
  if (!(time_limit > 0)) throw ValidationError("time_limit must be positive");
}

Json SuiteConfig::to_json() const {
  return Json{{"seed", seed},
              {"trials", trials ? Json(*trials) : Json(nullptr)},
              {"max_word_len", max_word_len},
              {"max_window", max_window},
              {"max_depth", max_depth},
              {"retry_budget", retry_budget},
              {"time_limit", time_limit}};
}

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> out;
    for (const auto& s : suites()) out.push_back(s.name);
    return out;
  }();
  return names;
}

Report run_suites(const SuiteConfig& config, const std::vector<std::string>& names) {
  config.validate();
  std::vector<std::size_t> chosen;
  for (std::size_t i = 0; i < suites().size(); ++i) {
    if (std::find(names.begin(), names.end(), suites()[i].name) != names.end()) chosen.push_back(i);
  }
  for (const auto& n : names) {
    if (std::find(suite_names().begin(), suite_names().end(), n) == suite_names().end()) {
      throw ValidationError("unknown suite '" + n + "'");
    }
  }

  const auto deadline =
      Clock::now() + std::chrono::duration_cast<Clock::duration>(
                         std::chrono::duration<double>(config.time_limit));
  Report report{config.to_json(), std::vector<SuiteResult>(chosen.size())};
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t k; (k = next++) < chosen.size();) {
      report.suites[k] = suites()[chosen[k]].run(config, chosen[k], deadline);
    }
  };
  std::vector<std::jthread> pool;
  for (std::size_t t = 1; t < std::min(config.jobs, chosen.size()); ++t) pool.emplace_back(worker);
  worker();
  pool.clear();
  return report;
}

Report cmd_verify(const SuiteConfig& config) { return run_suites(config, suite_names()); }

}  // namespace vdyn::cli
