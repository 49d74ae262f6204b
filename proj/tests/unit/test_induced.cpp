#include <doctest.h>

#include <set>

#include "vdyn/errors.hpp"
#include "vdyn/induced.hpp"

using namespace vdyn;

namespace {

FreeWord dw(std::vector<std::string> tokens) { return FreeWord::parse(Alphabet::D, tokens); }
FreeWord ab(std::vector<std::string> tokens) { return FreeWord::parse(Alphabet::AB, tokens); }

Configuration config(std::vector<FreeWord> sites, std::vector<const char*> values) {
  Configuration c{Window(std::move(sites)), {}};
  for (const char* v : values) c.values.push_back(parse_point(v));
  return c;
}

std::vector<BinaryWord> targets(std::initializer_list<const char*> ws) {
  std::vector<BinaryWord> out;
  for (const char* w : ws) out.emplace_back(w);
  return out;
}

bool lands(const VElement& g, const std::vector<Point>& pts, const std::vector<BinaryWord>& ts) {
  for (std::size_t i = 0; i < pts.size(); ++i) {
    if (!ts[i].is_prefix_of(v_act_point(g, pts[i]).prefix(ts[i].size()))) return false;
  }
  return true;
}

FreeWord random_d_word(std::size_t max_len, Rng& rng) {
  std::vector<Letter> letters;
  const std::size_t len = rng.below(max_len + 1);
  for (std::size_t i = 0; i < len; ++i) {
    letters.push_back({rng.coin() ? Generator::d1 : Generator::d2, rng.coin() ? 1 : -1});
  }
  return FreeWord(Alphabet::D, letters);
}

FreeWord random_ab_word(std::size_t max_len, Rng& rng) {
  static constexpr Generator gens[] = {Generator::a1, Generator::a2, Generator::b1,
                                       Generator::b2};
  std::vector<Letter> letters;
  const std::size_t len = rng.below(max_len + 1);
  for (std::size_t i = 0; i < len; ++i) letters.push_back({gens[rng.below(4)], rng.coin() ? 1 : -1});
  return FreeWord(Alphabet::AB, letters);
}

Window random_window(std::size_t max_sites, Rng& rng) {
  std::set<FreeWord> seen;
  std::vector<FreeWord> sites;
  const std::size_t n = rng.between(1, max_sites);
  while (sites.size() < n) {
    FreeWord w = random_d_word(3, rng);
    if (seen.insert(w).second) sites.push_back(w);
  }
  return Window(sites);
}

}  // namespace

TEST_CASE("windows and configurations") {
  CHECK_THROWS_AS(Window({dw({"d1"}), dw({"d1"})}), ValidationError);
  CHECK_THROWS_AS(Window({ab({"a1"})}), ValidationError);
  Configuration c{Window({dw({})}), {}};
  CHECK_THROWS_AS(c.validate(), ValidationError);
  const auto cc = config({dw({}), dw({"d1"}), dw({"d2"})}, {"(0)", "(0)", "(0)"});
  CHECK_EQ(cc.colliding_pairs(), 3);
  CHECK_EQ(cc.first_collision(), std::optional(std::pair<std::size_t, std::size_t>{0, 1}));
}

TEST_CASE("apply_move") {
  const auto [a, b] = pingpong_generators();
  const VHom dhom = default_d_hom();
  const auto c = config({dw({}), dw({"d1"})}, {"(0)", "(0)"});

  const auto moved = apply_move({Role::A, a}, c, dhom);
  CHECK_EQ(moved.values[0], parse_point("1(0)"));
  CHECK_EQ(moved.values[1], parse_point("1(0)"));

  const auto twisted = apply_move({Role::B, b}, c, dhom);
  CHECK_EQ(twisted.values[0], v_act_point(b, parse_point("(0)")));
  const VElement x1 = hom_eval(dhom, dw({"d1"}));
  const Point expect =
      v_act_point(v_invert(x1), v_act_point(b, v_act_point(x1, parse_point("(0)"))));
  CHECK_EQ(twisted.values[1], expect);
  CHECK_EQ(twisted.values[1],
           v_act_point(v_compose(v_invert(x1), v_compose(b, x1)), parse_point("(0)")));
}

TEST_CASE("apply_group_element") {
  const InducedAction act = InducedAction::default_instance();
  Rng rng(3);
  for (int t = 0; t < 50; ++t) {
    const Window w = random_window(4, rng);
    Configuration c{w, {}};
    for (std::size_t i = 0; i < w.size(); ++i) c.values.push_back(random_point(8, rng));

    CHECK_EQ(apply_group_element(SemidirectElement{}, c, act), c);
    const SemidirectElement only_c{FreeWord(Alphabet::AB), FreeWord::parse(Alphabet::C, {"c1"}),
                                   FreeWord(Alphabet::D)};
    CHECK_EQ(apply_group_element(only_c, c, act), c);

    for (const char* tok : {"a1", "a2^-1", "b1", "b2^-1"}) {
      const FreeWord k = ab({tok});
      const SemidirectElement g{k, FreeWord(Alphabet::C), FreeWord(Alphabet::D)};
      const Role role = is_a_generator(k.letters()[0].gen) ? Role::A : Role::B;
      CHECK_EQ(apply_group_element(g, c, act),
               apply_move({role, hom_eval(act.ab, k)}, c, act.d));
    }
  }
}

TEST_CASE("induced action is an action") {
  const InducedAction act = InducedAction::default_instance();
  Rng rng(5);
  for (int t = 0; t < 100; ++t) {
    const Window w = random_window(4, rng);
    Configuration c{w, {}};
    for (std::size_t i = 0; i < w.size(); ++i) c.values.push_back(random_point(8, rng));
    const SemidirectElement g{random_ab_word(4, rng), FreeWord(Alphabet::C),
                              random_d_word(2, rng)};
    const SemidirectElement g2{random_ab_word(4, rng), FreeWord(Alphabet::C),
                               random_d_word(2, rng)};
    const auto two_steps = apply_group_element(g2, apply_group_element(g, c, act), act);
    const auto one_step = apply_group_element(semidirect_mul(g2, g), c, act);
    CHECK_EQ(two_steps, one_step);
  }
}

TEST_CASE("apply_group_element_on checks closure") {
  const InducedAction act = InducedAction::default_instance();
  const auto c = config({dw({}), dw({"d1"})}, {"(0)", "(1)"});
  const SemidirectElement shift{FreeWord(Alphabet::AB), FreeWord(Alphabet::C), dw({"d1"})};
  CHECK_THROWS_AS(apply_group_element_on(shift, c, c.window, act), ValidationError);
  // Target window {d1} pulls back to site ε.
  const auto out = apply_group_element_on(shift, c, Window({dw({"d1"})}), act);
  CHECK_EQ(out.values[0], parse_point("(0)"));
  CHECK_EQ(apply_group_element(shift, c, act).window, Window({dw({"d1"}), dw({"d1", "d1"})}));
}

TEST_CASE("antidiagonal_witness") {
  const auto [a, b] = pingpong_generators();
  std::vector<Point> two{parse_point("(0)"), parse_point("(1)")};
  auto ts = targets({"1", "0"});
  CHECK(lands(antidiagonal_witness(two, ts), two, ts));
  CHECK(lands(a, two, ts));

  std::vector<Point> one{parse_point("(0)")};
  auto t11 = targets({"11"});
  CHECK(lands(antidiagonal_witness(one, t11), one, t11));

  Rng rng(17);
  for (int t = 0; t < 300; ++t) {
    std::set<Point> pts;
    const std::size_t n = rng.between(1, 6);
    while (pts.size() < n) pts.insert(random_point(8, rng));
    std::vector<Point> pv(pts.begin(), pts.end());
    std::vector<BinaryWord> tv;
    for (std::size_t i = 0; i < n; ++i) {
      BinaryWord w;
      const std::size_t len = rng.below(9);
      for (std::size_t k = 0; k < len; ++k) w.push_back(rng.coin());
      tv.push_back(w);
    }
    CHECK(lands(antidiagonal_witness(pv, tv), pv, tv));
    // Equal targets are allowed.
    std::vector<BinaryWord> same(n, BinaryWord("0"));
    CHECK(lands(antidiagonal_witness(pv, same), pv, same));
  }

  std::vector<Point> dup{parse_point("(0)"), parse_point("0(0)")};
  CHECK_THROWS_AS(antidiagonal_witness(dup, targets({"0", "1"})), ValidationError);
  CHECK_THROWS_AS(antidiagonal_witness(two, targets({"0"})), ValidationError);
  CHECK_THROWS_AS(antidiagonal_witness(std::vector<Point>{}, targets({})), ValidationError);
}

TEST_CASE("expansivity_witness") {
  const Point x = parse_point("(0)");
  for (const Point& y : {parse_point("(1)"), parse_point("(01)"), parse_point("00001(0)")}) {
    const VElement g = expansivity_witness(x, y);
    CHECK_EQ(v_act_point(g, x).bit(0), 0);
    CHECK_EQ(v_act_point(g, y).bit(0), 1);
  }
  CHECK_THROWS_AS(expansivity_witness(x, x), ValidationError);
}

TEST_CASE("centerless_witness") {
  const auto [a, b] = pingpong_generators();
  const Point zero = parse_point("(0)");
  // b and a fail to commute at 0^ω: ba·0^ω = 110^ω, ab·0^ω = 0^ω.
  CHECK_EQ(v_act_point(b, v_act_point(a, zero)), parse_point("11(0)"));
  CHECK_EQ(v_act_point(a, v_act_point(b, zero)), zero);

  for (const VElement& f : {a, b, v_compose(a, b)}) {
    const auto [g, x] = centerless_witness(f);
    CHECK_NE(v_act_point(g, v_act_point(f, x)), v_act_point(f, v_act_point(g, x)));
  }
  CHECK_THROWS_AS(centerless_witness(VElement{}), ValidationError);

  Rng rng(21);
  for (int t = 0; t < 100; ++t) {
    const VElement f = v_random(rng.between(1, 6), rng);
    if (v_is_identity(f)) continue;
    const auto [g, x] = centerless_witness(f);
    CHECK_NE(v_act_point(g, v_act_point(f, x)), v_act_point(f, v_act_point(g, x)));
  }
}

TEST_CASE("separate_collision") {
  const VHom dhom = default_d_hom();
  SUBCASE("two sites") {
    const auto c = config({dw({}), dw({"d1"})}, {"(0)", "(0)"});
    const auto moves = separate_collision(c, 0, 1, dhom);
    REQUIRE_EQ(moves.size(), 2);
    CHECK_EQ(moves[0].role, Role::A);
    CHECK_EQ(moves[1].role, Role::B);
    const auto after = apply_moves(moves, c, dhom);
    CHECK_NE(after.values[0], after.values[1]);
  }
  SUBCASE("three sites, one distinct value") {
    const auto c = config({dw({}), dw({"d1"}), dw({"d2"})}, {"(0)", "(0)", "1(0)"});
    const auto after = apply_moves(separate_collision(c, 0, 1, dhom), c, dhom);
    CHECK_EQ(after.colliding_pairs(), 0);
  }
  SUBCASE("errors") {
    const auto c = config({dw({}), dw({"d1"})}, {"(0)", "(1)"});
    CHECK_THROWS_AS(separate_collision(c, 0, 0, dhom), ValidationError);
    CHECK_THROWS_AS(separate_collision(c, 0, 1, dhom), ValidationError);
    CHECK_THROWS_AS(separate_collision(c, 0, 5, dhom), ValidationError);
  }
  SUBCASE("never adds collisions, always removes the chosen one") {
    Rng rng(33);
    for (int t = 0; t < 60; ++t) {
      const Window w = random_window(4, rng);
      if (w.size() < 2) continue;
      Configuration c{w, {}};
      const Point shared = random_point(8, rng);
      for (std::size_t i = 0; i < w.size(); ++i) {
        c.values.push_back(rng.coin() ? shared : random_point(8, rng));
      }
      c.values[0] = c.values[1] = shared;
      const std::size_t before = c.colliding_pairs();
      const auto after = apply_moves(separate_collision(c, 0, 1, dhom, {32, rng.next()}), c, dhom);
      CHECK_NE(after.values[0], after.values[1]);
      CHECK_LT(after.colliding_pairs(), before);
      for (std::size_t p = 0; p < c.values.size(); ++p) {
        for (std::size_t q = p + 1; q < c.values.size(); ++q) {
          if (c.values[p] != c.values[q]) CHECK_NE(after.values[p], after.values[q]);
        }
      }
    }
  }
}

TEST_CASE("steer_to_target") {
  const VHom dhom = default_d_hom();
  SUBCASE("already in place") {
    const auto c = config({dw({}), dw({"d1"})}, {"(0)", "(1)"});
    const auto moves = steer_to_target(c, targets({"0", "1"}), dhom);
    CHECK(moves.empty());
  }
  SUBCASE("one collision") {
    const auto c = config({dw({}), dw({"d1"})}, {"(0)", "(0)"});
    const auto ts = targets({"0", "1"});
    const auto moves = steer_to_target(c, ts, dhom);
    CHECK_LE(moves.size(), 3);
    const auto land = target_memberships(apply_moves(moves, c, dhom), ts);
    CHECK(land[0]);
    CHECK(land[1]);
  }
  SUBCASE("four sites with two collision pairs") {
    Rng rng(8);
    for (int t = 0; t < 20; ++t) {
      const auto c = config({dw({}), dw({"d1"}), dw({"d2", "d1^-1"}), dw({"d1", "d1", "d2"})},
                            {"(0)", "(0)", "1(01)", "1(01)"});
      std::vector<BinaryWord> ts;
      for (int i = 0; i < 4; ++i) {
        BinaryWord w;
        for (int k = 0; k < 6; ++k) w.push_back(rng.coin());
        ts.push_back(w);
      }
      const auto moves = steer_to_target(c, ts, dhom, {32, rng.next()});
      for (bool ok : target_memberships(apply_moves(moves, c, dhom), ts)) CHECK(ok);
    }
  }
  SUBCASE("empty window") {
    const Configuration c{};
    CHECK(steer_to_target(c, {}, dhom).empty());
  }
  CHECK_THROWS_AS(steer_to_target(config({dw({})}, {"(0)"}), {}, dhom), ValidationError);
}
