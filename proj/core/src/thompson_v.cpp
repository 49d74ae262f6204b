#include "vdyn/thompson_v.hpp"

#include <algorithm>
#include <numeric>

#include "vdyn/errors.hpp"

namespace vdyn {

namespace {

bool mergeable(const VPair& lo, const VPair& hi) {
  return !hi.u.empty() && hi.u.back() == 1 && lo.u == hi.u.sibling() && !hi.v.empty() &&
         hi.v.back() == 1 && lo.v == hi.v.sibling();
}

}  // namespace

VElement::VElement() : VElement(canonical_from_pairs({VPair{}})) {}

VElement canonical_from_pairs(std::vector<VPair> pairs) {
  std::sort(pairs.begin(), pairs.end(),
            [](const VPair& x, const VPair& y) { return x.u < y.u; });
  // Siblings p0, p1 are adjacent in domain order; merges can cascade.
  std::vector<VPair> stack;
  stack.reserve(pairs.size());
  for (auto& p : pairs) {
    stack.push_back(std::move(p));
    while (stack.size() >= 2 && mergeable(stack[stack.size() - 2], stack.back())) {
      VPair merged{stack.back().u.parent(), stack.back().v.parent()};
      stack.pop_back();
      stack.back() = std::move(merged);
    }
  }

  VElement out{VElement::Unset{}};
  out.pairs_ = std::move(stack);
  std::vector<BinaryWord> dom;
  std::vector<BinaryWord> ran;
  dom.reserve(out.pairs_.size());
  ran.reserve(out.pairs_.size());
  for (const auto& p : out.pairs_) {
    dom.push_back(p.u);
    ran.push_back(p.v);
  }
  out.domain_ = PrefixCode(std::move(dom));
  out.range_ = PrefixCode(std::move(ran));
  out.range_to_pair_.resize(out.pairs_.size());
  for (std::size_t i = 0; i < out.pairs_.size(); ++i) {
    out.range_to_pair_[out.range_.index_of(out.pairs_[i].v)] = i;
  }
  return out;
}

VElement v_make(const PrefixCode& domain, const PrefixCode& range,
                const std::vector<std::pair<std::size_t, std::size_t>>& bijection) {
  if (!kraft_is_complete(domain)) {
    throw ValidationError("domain is not a complete prefix code (Kraft sum " +
                          kraft_sum_string(domain) + ")");
  }
  if (!kraft_is_complete(range)) {
    throw ValidationError("range is not a complete prefix code (Kraft sum " +
                          kraft_sum_string(range) + ")");
  }
  if (domain.size() != range.size()) {
    throw ValidationError("domain and range codes differ in cardinality (" +
                          std::to_string(domain.size()) + " vs " +
                          std::to_string(range.size()) + ")");
  }
  const std::size_t n = domain.size();
  if (bijection.size() != n) throw ValidationError("bijection does not cover the domain code");
  std::vector<bool> seen_dom(n, false);
  std::vector<bool> seen_ran(n, false);
  std::vector<VPair> pairs;
  pairs.reserve(n);
  for (auto [i, j] : bijection) {
    if (i >= n || j >= n || seen_dom[i] || seen_ran[j]) {
      throw ValidationError("index map is not a bijection between the codes");
    }
    seen_dom[i] = seen_ran[j] = true;
    pairs.push_back({domain.words()[i], range.words()[j]});
  }
  return canonical_from_pairs(std::move(pairs));
}

VElement v_from_pairs(const std::vector<VPair>& pairs) {
  std::vector<BinaryWord> dom;
  std::vector<BinaryWord> ran;
  for (const auto& p : pairs) {
    dom.push_back(p.u);
    ran.push_back(p.v);
  }
  PrefixCode domain(dom);
  PrefixCode range(ran);
  if (domain.size() != pairs.size() || range.size() != pairs.size()) {
    throw ValidationError("repeated word in element presentation");
  }
  std::vector<std::pair<std::size_t, std::size_t>> bij;
  bij.reserve(pairs.size());
  for (const auto& p : pairs) bij.emplace_back(domain.index_of(p.u), range.index_of(p.v));
  return v_make(domain, range, bij);
}

VElement v_compose(const VElement& g, const VElement& f) {
  // Refine f's range against g's domain; each common word w = r·s = e·t
  // yields the pair f⁻¹(r)·s ↦ g(e)·t.
  const PrefixCode common = refine_common(f.range(), g.domain());
  std::vector<VPair> pairs;
  pairs.reserve(common.size());
  for (const auto& w : common.words()) {
    const std::size_t r = *f.range().prefix_index(w);
    const VPair& fp = f.pairs()[f.pair_of_range(r)];
    const VPair& gp = g.pairs()[*g.domain().prefix_index(w)];
    pairs.push_back({fp.u + w.drop(fp.v.size()), gp.v + w.drop(gp.u.size())});
  }
  return canonical_from_pairs(std::move(pairs));
}

VElement v_invert(const VElement& f) {
  std::vector<VPair> pairs;
  pairs.reserve(f.size());
  for (const auto& p : f.pairs()) pairs.push_back({p.v, p.u});
  return canonical_from_pairs(std::move(pairs));
}

VElement v_power(const VElement& f, std::size_t n) {
  VElement acc;
  VElement base = f;
  while (n > 0) {
    if (n & 1) acc = v_compose(acc, base);
    n >>= 1;
    if (n > 0) base = v_compose(base, base);
  }
  return acc;
}

Point v_act_point(const VElement& f, const Point& x) {
  const BinaryWord head = x.prefix(f.domain().max_length());
  const VPair& p = f.pairs()[*f.domain().prefix_index(head)];
  return x.drop(p.u.size()).prepend(p.v);
}

int v_eval_bit(const VElement& f, const Point& x, std::size_t n) {
  const BinaryWord head = x.prefix(f.domain().max_length());
  const VPair& p = f.pairs()[*f.domain().prefix_index(head)];
  if (n < p.v.size()) return p.v.bit(n);
  return x.bit(n - p.v.size() + p.u.size());
}

CylinderSet v_image_of_cylinderset(const VElement& f, const CylinderSet& s) {
  std::vector<BinaryWord> out;
  for (const auto& w : s.words()) {
    if (auto i = f.domain().prefix_index(w)) {
      const VPair& p = f.pairs()[*i];
      out.push_back(p.v + w.drop(p.u.size()));
    } else {
      auto [first, last] = f.domain().extensions(w);
      for (std::size_t k = first; k < last; ++k) out.push_back(f.pairs()[k].v);
    }
  }
  return cylinderset_reduce(std::move(out));
}

BinaryWord v_displaced_cylinder(const VElement& f) {
  for (const auto& p : f.pairs()) {
    if (p.u == p.v) continue;
    if (!p.u.comparable_with(p.v)) return p.u;
    // One word extends the other by s; step off s at its first letter.
    const BinaryWord s = p.u.size() < p.v.size() ? p.v.drop(p.u.size()) : p.u.drop(p.v.size());
    return p.u.child(1 - s.bit(0));
  }
  throw ValidationError("the identity displaces no cylinder");
}

Point v_moved_point(const VElement& f) {
  return point_normalize(v_displaced_cylinder(f), BinaryWord("0"));
}

bool v_is_identity(const VElement& f) {
  return f.size() == 1 && f.pairs()[0].u.empty() && f.pairs()[0].v.empty();
}

bool v_equals(const VElement& f, const VElement& g) { return f == g; }

std::optional<std::size_t> v_order(const VElement& f, std::size_t bound) {
  VElement acc = f;
  for (std::size_t n = 1; n <= bound; ++n) {
    if (v_is_identity(acc)) return n;
    acc = v_compose(f, acc);
  }
  return std::nullopt;
}

PingPong pingpong_generators() {
  const BinaryWord w0("0"), w1("1"), w10("10"), w11("11");
  return {v_from_pairs({{w0, w1}, {w1, w0}}),
          v_from_pairs({{w0, w10}, {w10, w11}, {w11, w0}})};
}

PrefixCode random_complete_code(std::size_t m, std::size_t depth, Rng& rng) {
  std::vector<BinaryWord> leaves{BinaryWord{}};
  std::vector<std::size_t> splittable;
  while (leaves.size() < m) {
    splittable.clear();
    for (std::size_t i = 0; i < leaves.size(); ++i) {
      if (leaves[i].size() < depth) splittable.push_back(i);
    }
    if (splittable.empty()) throw ValidationError("code size exceeds 2^depth");
    const std::size_t i = splittable[rng.below(splittable.size())];
    BinaryWord w = leaves[i];
    leaves[i] = w.child(0);
    leaves.push_back(w.child(1));
  }
  return PrefixCode(std::move(leaves));
}

VElement v_random(std::size_t depth, Rng& rng) {
  if (depth == 0) throw ValidationError("random element depth must be at least 1");
  if (depth > 20) throw ValidationError("random element depth is capped at 20");
  const std::size_t m = rng.between(1, std::size_t{1} << depth);
  const PrefixCode domain = random_complete_code(m, depth, rng);
  const PrefixCode range = random_complete_code(m, depth, rng);
  std::vector<std::size_t> perm(m);
  std::iota(perm.begin(), perm.end(), 0);
  for (std::size_t i = m; i > 1; --i) std::swap(perm[i - 1], perm[rng.below(i)]);
  std::vector<std::pair<std::size_t, std::size_t>> bij;
  bij.reserve(m);
  for (std::size_t i = 0; i < m; ++i) bij.emplace_back(i, perm[i]);
  return v_make(domain, range, bij);
}

Point random_point(std::size_t max_total, Rng& rng) {
  const std::size_t total = rng.between(1, std::max<std::size_t>(max_total, 1));
  const std::size_t per_len = rng.between(1, total);
  BinaryWord pre, per;
  for (std::size_t i = 0; i < total - per_len; ++i) pre.push_back(rng.coin());
  for (std::size_t i = 0; i < per_len; ++i) per.push_back(rng.coin());
  return point_normalize(std::move(pre), std::move(per));
}

}  // namespace vdyn
