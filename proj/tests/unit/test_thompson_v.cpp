#include <doctest.h>

#include "oracles.hpp"
#include "vdyn/errors.hpp"
#include "vdyn/thompson_v.hpp"

using namespace vdyn;

namespace {

VElement element(std::initializer_list<std::pair<const char*, const char*>> ps) {
  std::vector<VPair> pairs;
  for (auto [u, v] : ps) pairs.push_back({BinaryWord(u), BinaryWord(v)});
  return v_from_pairs(pairs);
}

using RawPairs = std::vector<std::pair<std::string, std::string>>;

RawPairs raw(const VElement& f) {
  RawPairs out;
  for (const auto& p : f.pairs()) out.emplace_back(p.u.str(), p.v.str());
  return out;
}

// Prefix replacement straight from the definition, on strings. Returns the
// image as (pre, per).
std::pair<std::string, std::string> act_by_definition(const RawPairs& pairs,
                                                      const std::string& pre,
                                                      const std::string& per) {
  for (const auto& [u, v] : pairs) {
    bool match = true;
    for (std::size_t i = 0; i < u.size() && match; ++i) {
      match = oracle::bit_of(pre, per, i) == u[i] - '0';
    }
    if (!match) continue;
    std::string tail;
    // Unroll far enough that the remaining tail starts inside the period.
    const std::size_t unrolled = std::max(pre.size(), u.size()) + per.size();
    for (std::size_t i = u.size(); i < unrolled; ++i) {
      tail += static_cast<char>('0' + oracle::bit_of(pre, per, i));
    }
    std::string rotated;
    for (std::size_t i = 0; i < per.size(); ++i) {
      rotated += static_cast<char>('0' + oracle::bit_of(pre, per, unrolled + i));
    }
    return {v + tail, rotated};
  }
  FAIL("no domain word matches");
  return {};
}

bool agrees_with_definition(const RawPairs& pairs, const VElement& f, const Point& x) {
  const auto [pre, per] = act_by_definition(pairs, x.preperiod().str(), x.period().str());
  const Point y = v_act_point(f, x);
  return oracle::same_sequence(pre, per, y.preperiod().str(), y.period().str());
}

// Splits random pairs (u ↦ v) into (u0 ↦ v0, u1 ↦ v1).
std::vector<VPair> unreduce(const VElement& f, std::size_t splits, Rng& rng) {
  std::vector<VPair> pairs = f.pairs();
  for (std::size_t s = 0; s < splits; ++s) {
    const std::size_t k = rng.below(pairs.size());
    const VPair p = pairs[k];
    pairs[k] = {p.u.child(0), p.v.child(0)};
    pairs.push_back({p.u.child(1), p.v.child(1)});
  }
  return pairs;
}

}  // namespace

TEST_CASE("v_make") {
  const auto [a, b] = pingpong_generators();
  const auto dom = PrefixCode({BinaryWord("0"), BinaryWord("1")});
  CHECK_EQ(v_make(dom, dom, {{0, 1}, {1, 0}}), a);
  CHECK_EQ(raw(a), RawPairs{{"0", "1"}, {"1", "0"}});

  // {00,01,1} → {10,11,0} reduces to the swap.
  const auto dom3 = PrefixCode({BinaryWord("00"), BinaryWord("01"), BinaryWord("1")});
  const auto ran3 = PrefixCode({BinaryWord("10"), BinaryWord("11"), BinaryWord("0")});
  // ran3 is stored sorted: 0, 10, 11.
  CHECK_EQ(v_make(dom3, ran3, {{0, 1}, {1, 2}, {2, 0}}), a);

  const VElement id = v_make(dom, dom, {{0, 0}, {1, 1}});
  CHECK(v_is_identity(id));
  CHECK_EQ(raw(id), RawPairs{{"", ""}});

  SUBCASE("errors") {
    const auto half = PrefixCode({BinaryWord("0")});
    CHECK_THROWS_AS(v_make(half, half, {{0, 0}}), ValidationError);
    CHECK_THROWS_AS(v_make(dom, dom3, {{0, 0}, {1, 1}}), ValidationError);
    CHECK_THROWS_AS(v_make(dom, dom, {{0, 0}, {1, 0}}), ValidationError);
    CHECK_THROWS_AS(v_make(dom, dom, {{0, 0}}), ValidationError);
  }
}

TEST_CASE("composition and inversion") {
  const auto [a, b] = pingpong_generators();
  const VElement id;
  CHECK_EQ(v_compose(a, a), id);
  CHECK_EQ(v_compose(b, v_compose(b, b)), id);
  CHECK_EQ(v_invert(a), a);
  CHECK_EQ(raw(v_invert(b)), RawPairs{{"0", "11"}, {"10", "0"}, {"11", "10"}});
  CHECK_EQ(v_invert(id), id);
  CHECK(v_equals(v_compose(b, b), v_invert(b)));
  CHECK_FALSE(v_equals(a, b));
  CHECK_EQ(v_power(b, 3), id);
  CHECK_EQ(v_power(a, 0), id);

  Rng rng(101);
  for (int t = 0; t < 100; ++t) {
    const VElement f = v_random(rng.between(1, 6), rng);
    CHECK_EQ(v_compose(id, f), f);
    CHECK_EQ(v_compose(f, id), f);
    CHECK(v_is_identity(v_compose(f, v_invert(f))));
  }
}

TEST_CASE("composition agrees with sequential action by definition") {
  Rng rng(202);
  for (int t = 0; t < 300; ++t) {
    const VElement f = v_random(rng.between(1, 5), rng);
    const VElement g = v_random(rng.between(1, 5), rng);
    const VElement gf = v_compose(g, f);
    for (int k = 0; k < 5; ++k) {
      const Point x = random_point(8, rng);
      // Two applications by the definition vs one by the composed element.
      const auto [p1, q1] = act_by_definition(raw(f), x.preperiod().str(), x.period().str());
      const auto [p2, q2] = act_by_definition(raw(g), p1, q1);
      const Point y = v_act_point(gf, x);
      CHECK(oracle::same_sequence(p2, q2, y.preperiod().str(), y.period().str()));
    }
  }
}

TEST_CASE("v_act_point") {
  const auto [a, b] = pingpong_generators();
  CHECK_EQ(v_act_point(a, parse_point("(0)")), parse_point("1(0)"));
  const Point bx = v_act_point(b, parse_point("(0)"));
  CHECK_EQ(bx.preperiod().str(), "1");
  CHECK_EQ(bx.period().str(), "0");
  Rng rng(7);
  for (int t = 0; t < 50; ++t) {
    const Point x = random_point(8, rng);
    CHECK_EQ(v_act_point(VElement{}, x), x);
    const VElement f = v_random(rng.between(1, 6), rng);
    CHECK(agrees_with_definition(raw(f), f, x));
  }
}

TEST_CASE("v_eval_bit") {
  const auto [a, b] = pingpong_generators();
  const Point zero = parse_point("(0)");
  CHECK_EQ(v_eval_bit(b, zero, 0), 1);
  CHECK_EQ(v_eval_bit(b, zero, 5), 0);

  Rng rng(9);
  for (int t = 0; t < 1000; ++t) {
    const VElement f = v_random(rng.between(1, 6), rng);
    const Point x = random_point(8, rng);
    const std::size_t n = rng.below(64);
    CHECK_EQ(v_eval_bit(f, x, n), point_prefix(v_act_point(f, x), n + 1).bit(n));
  }
}

TEST_CASE("v_image_of_cylinderset") {
  const auto [a, b] = pingpong_generators();
  const auto B = cylinderset_reduce({BinaryWord("10"), BinaryWord("11")});
  const auto A = cylinderset_reduce({BinaryWord("0")});
  CHECK_EQ(v_image_of_cylinderset(a, B), A);
  CHECK_EQ(oracle::strs(v_image_of_cylinderset(b, A).words()), std::vector<std::string>{"10"});
  CHECK_EQ(oracle::strs(v_image_of_cylinderset(v_compose(b, b), A).words()),
           std::vector<std::string>{"11"});
  CHECK_EQ(v_image_of_cylinderset(VElement{}, B), B);

  SUBCASE("image contains exactly the images of member points") {
    Rng rng(31);
    for (int t = 0; t < 200; ++t) {
      const VElement f = v_random(rng.between(1, 5), rng);
      const auto code = random_complete_code(rng.between(1, 12), 5, rng);
      std::vector<BinaryWord> ws;
      for (const auto& w : code.words()) {
        if (rng.coin()) ws.push_back(w);
      }
      const CylinderSet s = cylinderset_reduce(ws);
      const CylinderSet img = v_image_of_cylinderset(f, s);
      for (int k = 0; k < 10; ++k) {
        const Point x = random_point(8, rng);
        CHECK_EQ(s.contains(x), img.contains(v_act_point(f, x)));
      }
    }
  }
}

TEST_CASE("displaced cylinders and moved points") {
  const auto [a, b] = pingpong_generators();
  CHECK_EQ(v_displaced_cylinder(a).str(), "0");
  CHECK_EQ(v_displaced_cylinder(b).str(), "0");
  const VElement f = element({{"0", "01"}, {"10", "00"}, {"11", "1"}});
  CHECK_EQ(v_displaced_cylinder(f).str(), "00");
  CHECK_EQ(oracle::strs(v_image_of_cylinderset(f, cylinderset_reduce({BinaryWord("00")})).words()),
           std::vector<std::string>{"010"});
  CHECK_THROWS_AS(v_displaced_cylinder(VElement{}), ValidationError);

  CHECK_EQ(v_moved_point(a), parse_point("(0)"));
  CHECK_EQ(v_moved_point(b), parse_point("(0)"));
  const VElement b2 = v_compose(b, b);
  CHECK_EQ(v_moved_point(b2), parse_point("(0)"));
  CHECK_EQ(v_act_point(b2, parse_point("(0)")), parse_point("11(0)"));
  CHECK_THROWS_AS(v_moved_point(VElement{}), ValidationError);

  SUBCASE("displacement contract on random elements") {
    Rng rng(41);
    for (int t = 0; t < 500; ++t) {
      const VElement g = v_random(rng.between(1, 6), rng);
      if (v_is_identity(g)) continue;
      const BinaryWord c = v_displaced_cylinder(g);
      const auto cyl = cylinderset_reduce({c});
      CHECK(are_disjoint(v_image_of_cylinderset(g, cyl), cyl));
      const Point x = v_moved_point(g);
      CHECK_NE(v_act_point(g, x), x);
    }
  }
}

TEST_CASE("ping-pong generators") {
  const auto [a, b] = pingpong_generators();
  CHECK_EQ(raw(a), RawPairs{{"0", "1"}, {"1", "0"}});
  CHECK_EQ(raw(b), RawPairs{{"0", "10"}, {"10", "11"}, {"11", "0"}});
  CHECK_EQ(v_order(a), std::optional<std::size_t>(2));
  CHECK_EQ(v_order(b), std::optional<std::size_t>(3));
  const auto A = cylinderset_reduce({BinaryWord("0")});
  const auto B = cylinderset_reduce({BinaryWord("10"), BinaryWord("11")});
  CHECK(is_subset(v_image_of_cylinderset(a, B), A));
  CHECK(is_subset(set_union(v_image_of_cylinderset(b, A),
                            v_image_of_cylinderset(v_compose(b, b), A)),
                  B));
}

TEST_CASE("v_random") {
  Rng r1(99), r2(99);
  CHECK_EQ(v_random(5, r1), v_random(5, r2));
  CHECK_THROWS_AS(v_random(0, r1), ValidationError);
  Rng rng(1);
  for (int t = 0; t < 1000; ++t) {
    const VElement f = v_random(rng.between(1, 5), rng);
    CHECK(kraft_is_complete(f.domain()));
    CHECK(kraft_is_complete(f.range()));
    CHECK(v_is_identity(v_compose(f, v_invert(f))));
  }
}

TEST_CASE("group laws and action law") {
  Rng rng(2024);
  for (int t = 0; t < 300; ++t) {
    const VElement f = v_random(rng.between(1, 5), rng);
    const VElement g = v_random(rng.between(1, 5), rng);
    const VElement h = v_random(rng.between(1, 5), rng);
    CHECK_EQ(v_compose(f, v_compose(g, h)), v_compose(v_compose(f, g), h));
    CHECK(v_is_identity(v_compose(v_invert(f), f)));
    const Point x = random_point(8, rng);
    CHECK_EQ(v_act_point(v_compose(g, f), x), v_act_point(g, v_act_point(f, x)));
  }
}

TEST_CASE("reduction soundness") {
  Rng rng(77);
  for (int t = 0; t < 200; ++t) {
    const VElement f = v_random(rng.between(1, 5), rng);
    const auto loose = unreduce(f, rng.between(1, 6), rng);
    CHECK_EQ(v_from_pairs(loose), f);
    RawPairs loose_raw;
    for (const auto& p : loose) loose_raw.emplace_back(p.u.str(), p.v.str());
    for (int k = 0; k < 20; ++k) CHECK(agrees_with_definition(loose_raw, f, random_point(8, rng)));
  }
}

TEST_CASE("canonical inequality is witnessed pointwise") {
  Rng rng(88);
  for (int t = 0; t < 300; ++t) {
    const VElement f = v_random(rng.between(1, 3), rng);
    const VElement g = v_random(rng.between(1, 3), rng);
    if (f == g) continue;
    const VElement d = v_compose(f, v_invert(g));
    // d moves x means f(g⁻¹x) ≠ g(g⁻¹x).
    const Point x = v_act_point(v_invert(g), v_moved_point(d));
    CHECK_NE(v_act_point(f, x), v_act_point(g, x));
  }
}
