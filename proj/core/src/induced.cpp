#include "vdyn/induced.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

#include "vdyn/errors.hpp"

namespace vdyn {

// -------------------------------------------------------------------- Window

Window::Window(std::vector<FreeWord> sites) : sites_(std::move(sites)) {
  std::set<FreeWord> seen;
  for (const auto& s : sites_) {
    if (s.alphabet() != Alphabet::D) throw ValidationError("window sites must be D-words");
    if (!seen.insert(s).second) {
      throw ValidationError("duplicate site '" + s.to_string() + "' in window");
    }
  }
}

std::optional<std::size_t> Window::index_of(const FreeWord& site) const {
  for (std::size_t i = 0; i < sites_.size(); ++i) {
    if (sites_[i] == site) return i;
  }
  return std::nullopt;
}

void Configuration::validate() const {
  if (values.size() != window.size()) {
    throw ValidationError("configuration has " + std::to_string(values.size()) +
                          " values for " + std::to_string(window.size()) + " sites");
  }
}

std::size_t Configuration::colliding_pairs() const {
  std::size_t n = 0;
  for (std::size_t i = 0; i < values.size(); ++i) {
    for (std::size_t j = i + 1; j < values.size(); ++j) n += values[i] == values[j];
  }
  return n;
}

std::optional<std::pair<std::size_t, std::size_t>> Configuration::first_collision() const {
  for (std::size_t i = 0; i < values.size(); ++i) {
    for (std::size_t j = i + 1; j < values.size(); ++j) {
      if (values[i] == values[j]) return std::pair{i, j};
    }
  }
  return std::nullopt;
}

// --------------------------------------------------------------------- moves

namespace {

struct Conjugator {
  VElement w;
  VElement w_inv;
};

Conjugator conjugator_of(const VHom& dhom, const FreeWord& site) {
  VElement w = hom_eval(dhom, site);
  VElement w_inv = v_invert(w);
  return {std::move(w), std::move(w_inv)};
}

}  // namespace

Configuration apply_move(const Move& m, const Configuration& c, const VHom& dhom) {
  c.validate();
  Configuration out = c;
  for (std::size_t i = 0; i < out.values.size(); ++i) {
    if (m.role == Role::A) {
      out.values[i] = v_act_point(m.elem, c.values[i]);
      continue;
    }
    const Conjugator k = conjugator_of(dhom, c.window.sites()[i]);
    out.values[i] = v_act_point(k.w_inv, v_act_point(m.elem, v_act_point(k.w, c.values[i])));
  }
  return out;
}

Configuration apply_moves(const std::vector<Move>& moves, Configuration c, const VHom& dhom) {
  for (const Move& m : moves) c = apply_move(m, c, dhom);
  return c;
}

InducedAction InducedAction::make(VHom ab, DLetterMap letters) {
  if (ab.alphabet() != Alphabet::AB) throw ValidationError("A∗B images must be over AB");
  VHom d = d_hom_from(ab, letters);
  return {std::move(ab), letters, std::move(d)};
}

InducedAction InducedAction::default_instance() { return make(default_ab_hom()); }

namespace {

Point act_at_site(const SemidirectElement& g, const FreeWord& r, const Point& old,
                  const InducedAction& action) {
  const FreeWord twisted = psi_apply(word_inv(r), g.k_ab, action.letters);
  return v_act_point(hom_eval(action.ab, twisted), old);
}

}  // namespace

Configuration apply_group_element(const SemidirectElement& g, const Configuration& c,
                                  const InducedAction& action) {
  g.validate();
  c.validate();
  std::vector<FreeWord> shifted;
  shifted.reserve(c.window.size());
  for (const auto& s : c.window.sites()) shifted.push_back(word_mul(g.h, s));
  Configuration out{Window(std::move(shifted)), {}};
  out.values.reserve(c.values.size());
  for (std::size_t t = 0; t < c.values.size(); ++t) {
    out.values.push_back(act_at_site(g, out.window.sites()[t], c.values[t], action));
  }
  return out;
}

Configuration apply_group_element_on(const SemidirectElement& g, const Configuration& c,
                                     const Window& target, const InducedAction& action) {
  g.validate();
  c.validate();
  const FreeWord h_inv = word_inv(g.h);
  Configuration out{target, {}};
  out.values.reserve(target.size());
  for (const auto& r : target.sites()) {
    const auto src = c.window.index_of(word_mul(h_inv, r));
    if (!src) {
      throw ValidationError("window not closed under the shift by h⁻¹: missing site '" +
                            word_mul(h_inv, r).to_string() + "'");
    }
    out.values.push_back(act_at_site(g, r, c.values[*src], action));
  }
  return out;
}

// ----------------------------------------------------------------- witnesses

namespace {

std::size_t ceil_log2(std::size_t n) {
  std::size_t k = 0;
  while ((std::size_t{1} << k) < n) ++k;
  return k;
}

std::size_t gcd_size(std::size_t a, std::size_t b) {
  while (b != 0) {
    a %= b;
    std::swap(a, b);
  }
  return a;
}

// Index of the first bit where two distinct points differ.
std::size_t first_difference(const Point& x, const Point& y) {
  const std::size_t px = x.period().size();
  const std::size_t py = y.period().size();
  const std::size_t bound = std::max(x.preperiod().size(), y.preperiod().size()) +
                            px / gcd_size(px, py) * py;
  for (std::size_t n = 0; n < bound; ++n) {
    if (x.bit(n) != y.bit(n)) return n;
  }
  throw std::logic_error("first_difference called on equal points");
}

BinaryWord binary_suffix(BinaryWord stem, std::uint64_t value, std::size_t bits) {
  for (std::size_t i = bits; i-- > 0;) {
    stem.push_back(i < 64 ? static_cast<int>((value >> i) & 1) : 0);
  }
  return stem;
}

}  // namespace

VElement antidiagonal_witness(std::span<const Point> points,
                              std::span<const BinaryWord> targets) {
  const std::size_t n = points.size();
  if (n == 0) throw ValidationError("antidiagonal witness needs at least one point");
  if (targets.size() != n) {
    throw ValidationError("got " + std::to_string(n) + " points but " +
                          std::to_string(targets.size()) + " targets");
  }
  std::size_t k = 0;
  for (const auto& t : targets) k = std::max(k, t.size());
  k += ceil_log2(n + 1);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (points[i] == points[j]) {
        throw ValidationError("points must be pairwise distinct; " + points[i].to_string() +
                              " repeats");
      }
      k = std::max(k, first_difference(points[i], points[j]) + 1);
    }
  }

  // v_i: the k-prefixes. u_i: smallest unused length-k extension of target i.
  std::vector<BinaryWord> heads;
  std::vector<BinaryWord> slots;
  std::set<BinaryWord> used;
  for (std::size_t i = 0; i < n; ++i) {
    heads.push_back(points[i].prefix(k));
    const std::size_t free_bits = k - targets[i].size();
    for (std::uint64_t j = 0;; ++j) {
      BinaryWord u = binary_suffix(targets[i], j, free_bits);
      if (used.insert(u).second) {
        slots.push_back(std::move(u));
        break;
      }
    }
  }

  // Both k-prefix sets leave part of the space uncovered (n·2^-k < 1), so
  // their complements are nonempty and the smaller one can be split to match.
  std::vector<BinaryWord> dom_rest = set_complement(cylinderset_reduce(heads)).words();
  std::vector<BinaryWord> ran_rest = set_complement(cylinderset_reduce(slots)).words();
  if (dom_rest.size() < ran_rest.size()) {
    dom_rest = subdivide_words(std::move(dom_rest), ran_rest.size());
  } else {
    ran_rest = subdivide_words(std::move(ran_rest), dom_rest.size());
  }

  std::vector<VPair> pairs;
  pairs.reserve(n + dom_rest.size());
  for (std::size_t i = 0; i < n; ++i) pairs.push_back({heads[i], slots[i]});
  for (std::size_t i = 0; i < dom_rest.size(); ++i) pairs.push_back({dom_rest[i], ran_rest[i]});
  VElement g = v_from_pairs(pairs);

  for (std::size_t i = 0; i < n; ++i) {
    if (!v_act_point(g, points[i]).prefix(targets[i].size()).str().starts_with(
            targets[i].str())) {
      throw std::logic_error("antidiagonal witness failed its own check");
    }
  }
  return g;
}

VElement expansivity_witness(const Point& x, const Point& y) {
  if (x == y) throw ValidationError("expansivity witness needs two distinct points");
  const std::vector<Point> pts{x, y};
  const std::vector<BinaryWord> sides{BinaryWord("0"), BinaryWord("1")};
  return antidiagonal_witness(pts, sides);
}

CenterlessWitness centerless_witness(const VElement& f) {
  if (v_is_identity(f)) throw ValidationError("the identity commutes with everything");
  // x ∈ [c] and y = f(x) ∈ f([c]), which misses [c]. Sending both x and y
  // into [c] gives gf(x) ∈ [c] but fg(x) ∈ f([c]).
  const Point x = v_moved_point(f);
  const Point y = v_act_point(f, x);
  const BinaryWord c = v_displaced_cylinder(f);
  const std::vector<Point> pts{y, x};
  const std::vector<BinaryWord> into{c.child(0), c.child(1)};
  VElement g = antidiagonal_witness(pts, into);
  if (v_act_point(g, v_act_point(f, x)) == v_act_point(f, v_act_point(g, x))) {
    throw std::logic_error("centerless witness failed its own check");
  }
  return {std::move(g), x};
}

// ---------------------------------------------------------------- separation

namespace {

std::vector<VElement> fixed_candidates() {
  const auto [a, b] = pingpong_generators();
  const VElement b2 = v_compose(b, b);
  return {a, b, b2, v_compose(a, b), v_compose(b, a)};
}

// W_{f'}⁻¹ ∘ β⁻¹ ∘ W_{f'} ∘ W_f⁻¹ ∘ β ∘ W_f; y is separated iff this moves y.
VElement separation_element(const VElement& beta, const Conjugator& at_i,
                            const Conjugator& at_j) {
  const VElement beta_inv = v_invert(beta);
  VElement g = v_compose(beta, at_i.w);
  g = v_compose(at_i.w_inv, g);
  g = v_compose(at_j.w, g);
  g = v_compose(beta_inv, g);
  return v_compose(at_j.w_inv, g);
}

BinaryWord random_extension(BinaryWord stem, std::size_t bits, Rng& rng) {
  for (std::size_t i = 0; i < bits; ++i) stem.push_back(rng.coin());
  return stem;
}

// Distinct words of length depth outside [avoid]: lexicographically first
// ones when rng is null, random ones otherwise.
std::vector<BinaryWord> fresh_cylinders(std::size_t count, std::size_t depth,
                                        const BinaryWord& avoid, Rng* rng) {
  std::vector<BinaryWord> out;
  std::set<BinaryWord> taken;
  std::uint64_t next = 0;
  while (out.size() < count) {
    BinaryWord w = rng ? random_extension(BinaryWord{}, depth, *rng)
                       : binary_suffix(BinaryWord{}, next++, depth);
    if (avoid.is_prefix_of(w) || !taken.insert(w).second) continue;
    out.push_back(std::move(w));
  }
  return out;
}

bool keeps_distinct_pairs(const Configuration& before, const Configuration& after) {
  for (std::size_t p = 0; p < before.values.size(); ++p) {
    for (std::size_t q = p + 1; q < before.values.size(); ++q) {
      if (before.values[p] != before.values[q] && after.values[p] == after.values[q]) {
        return false;
      }
    }
  }
  return true;
}

}  // namespace

std::vector<Move> separate_collision(const Configuration& c, std::size_t i, std::size_t j,
                                     const VHom& dhom, const SteeringOptions& options) {
  c.validate();
  if (i >= c.values.size() || j >= c.values.size()) {
    throw ValidationError("site index out of range");
  }
  if (i == j) throw ValidationError("collision needs two different sites");
  if (c.values[i] != c.values[j]) {
    throw ValidationError("sites " + std::to_string(i) + " and " + std::to_string(j) +
                          " do not collide");
  }
  if (options.retry_budget == 0) throw ValidationError("retry budget must be positive");

  Rng rng(mix64(options.seed));
  const Conjugator at_i = conjugator_of(dhom, c.window.sites()[i]);
  const Conjugator at_j = conjugator_of(dhom, c.window.sites()[j]);

  // Find β whose separation element has nonempty support.
  std::optional<VElement> beta;
  std::optional<VElement> separator;
  const auto fixed = fixed_candidates();
  for (std::size_t t = 0; t < fixed.size() + options.retry_budget && !beta; ++t) {
    VElement cand = t < fixed.size() ? fixed[t]
                                     : v_random(std::min<std::size_t>(2 + t / 4, 8), rng);
    VElement sep = separation_element(cand, at_i, at_j);
    if (!v_is_identity(sep)) {
      beta = std::move(cand);
      separator = std::move(sep);
    }
  }
  if (!beta) {
    throw BudgetExhausted("no B-move separates sites '" + c.window.sites()[i].to_string() +
                          "' and '" + c.window.sites()[j].to_string() + "' within budget");
  }
  const BinaryWord c0 = v_displaced_cylinder(*separator);

  std::vector<Point> distinct = c.values;
  std::sort(distinct.begin(), distinct.end());
  distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
  const std::size_t others = distinct.size() - 1;

  for (std::size_t attempt = 0; attempt < options.retry_budget; ++attempt) {
    Rng* draw = attempt == 0 ? nullptr : &rng;
    const std::size_t depth = c0.size() + ceil_log2(others + 2) + 2 * attempt;
    std::vector<BinaryWord> fresh = fresh_cylinders(others, depth, c0, draw);
    std::vector<BinaryWord> targets;
    targets.reserve(distinct.size());
    for (const Point& v : distinct) {
      if (v == c.values[i]) {
        targets.push_back(draw ? random_extension(c0, 2 * attempt, rng) : c0);
      } else {
        targets.push_back(std::move(fresh.back()));
        fresh.pop_back();
      }
    }
    std::vector<Move> moves{{Role::A, antidiagonal_witness(distinct, targets)},
                            {Role::B, *beta}};
    const Configuration after = apply_moves(moves, c, dhom);
    if (after.values[i] != after.values[j] && keeps_distinct_pairs(c, after)) return moves;
  }
  throw BudgetExhausted("separating sites " + std::to_string(i) + " and " + std::to_string(j) +
                        " introduced new collisions in all " +
                        std::to_string(options.retry_budget) + " attempts");
}

std::vector<bool> target_memberships(const Configuration& c,
                                     const std::vector<BinaryWord>& targets) {
  c.validate();
  if (targets.size() != c.values.size()) {
    throw ValidationError("need one target per site");
  }
  std::vector<bool> out;
  out.reserve(targets.size());
  for (std::size_t i = 0; i < targets.size(); ++i) {
    out.push_back(targets[i].is_prefix_of(c.values[i].prefix(targets[i].size())));
  }
  return out;
}

std::vector<Move> steer_to_target(const Configuration& c, const std::vector<BinaryWord>& targets,
                                  const VHom& dhom, const SteeringOptions& options) {
  c.validate();
  if (targets.size() != c.values.size()) throw ValidationError("need one target per site");

  std::vector<Move> moves;
  Configuration cur = c;
  std::uint64_t round = 0;
  while (auto hit = cur.first_collision()) {
    SteeringOptions sub = options;
    sub.seed = derive_seed(options.seed, 0x73746565ULL, round++);
    auto step = separate_collision(cur, hit->first, hit->second, dhom, sub);
    cur = apply_moves(step, std::move(cur), dhom);
    moves.insert(moves.end(), step.begin(), step.end());
  }

  const auto landed = target_memberships(cur, targets);
  if (std::find(landed.begin(), landed.end(), false) != landed.end()) {
    Move last{Role::A, antidiagonal_witness(cur.values, targets)};
    cur = apply_move(last, cur, dhom);
    moves.push_back(std::move(last));
  }

  const auto final_check = target_memberships(apply_moves(moves, c, dhom), targets);
  if (std::find(final_check.begin(), final_check.end(), false) != final_check.end()) {
    throw std::logic_error("steering replay missed a target");
  }
  return moves;
}

}  // namespace vdyn
