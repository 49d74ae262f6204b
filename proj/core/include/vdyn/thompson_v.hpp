#pragma once

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "vdyn/rng.hpp"
#include "vdyn/words.hpp"

namespace vdyn {

/// One prefix replacement u·x ↦ v·x.
struct VPair {
  BinaryWord u;
  BinaryWord v;

  friend bool operator==(const VPair&, const VPair&) = default;
};

/// An element of Thompson's group V: a bijection between two complete prefix
/// codes, acting on Cantor space by prefix replacement.
///
/// Always held in canonical reduced form: pairs sorted by domain word and no
/// pair of the shape (p0 ↦ q0, p1 ↦ q1) left unmerged. Reduced forms are
/// unique, so operator== decides equality in V.
class VElement {
 public:
  /// The identity, {(ε, ε)}.
  VElement();

  const std::vector<VPair>& pairs() const { return pairs_; }
  std::size_t size() const { return pairs_.size(); }
  const PrefixCode& domain() const { return domain_; }
  const PrefixCode& range() const { return range_; }
  /// Index into pairs() of the pair whose range word is range().words()[i].
  std::size_t pair_of_range(std::size_t i) const { return range_to_pair_[i]; }

  friend bool operator==(const VElement& a, const VElement& b) { return a.pairs_ == b.pairs_; }

 private:
  friend VElement canonical_from_pairs(std::vector<VPair> pairs);
  struct Unset {};
  explicit VElement(Unset) {}

  std::vector<VPair> pairs_;
  PrefixCode domain_;
  PrefixCode range_;
  std::vector<std::size_t> range_to_pair_;
};

/// Reduces an already valid presentation. Callers outside this module
/// should go through v_make / v_from_pairs, which validate first.
VElement canonical_from_pairs(std::vector<VPair> pairs);

/// Element mapping domain.words()[i] to range.words()[j] for each (i, j) in
/// bijection. Throws ValidationError on an incomplete code, a cardinality
/// mismatch or a bijection that is not one.
VElement v_make(const PrefixCode& domain, const PrefixCode& range,
                const std::vector<std::pair<std::size_t, std::size_t>>& bijection);

/// Element from explicit (u, v) pairs, validated like v_make.
VElement v_from_pairs(const std::vector<VPair>& pairs);

/// g ∘ f: first f, then g.
VElement v_compose(const VElement& g, const VElement& f);
VElement v_invert(const VElement& f);
/// f^n for n ≥ 0.
VElement v_power(const VElement& f, std::size_t n);

Point v_act_point(const VElement& f, const Point& x);

/// Bit n of f(x), computed the way a transducer would: read enough input
/// bits to find the domain prefix u, emit from v = f(u), then copy input.
int v_eval_bit(const VElement& f, const Point& x, std::size_t n);

CylinderSet v_image_of_cylinderset(const VElement& f, const CylinderSet& s);

/// A word c with f([c]) ∩ [c] = ∅. Throws ValidationError for the identity.
BinaryWord v_displaced_cylinder(const VElement& f);
/// A point moved by f. Throws ValidationError for the identity.
Point v_moved_point(const VElement& f);

bool v_is_identity(const VElement& f);
bool v_equals(const VElement& f, const VElement& g);

/// Smallest n in [1, bound] with f^n = 1, if any.
std::optional<std::size_t> v_order(const VElement& f, std::size_t bound = 12);

struct PingPong {
  VElement a;  // swaps the first bit
  VElement b;  // the 3-cycle 0x → 10x → 11x → 0x
};
PingPong pingpong_generators();

/// Random element: two independent random complete codes of the same random
/// size m ≤ 2^depth (words of length ≤ depth) and a uniform bijection.
VElement v_random(std::size_t depth, Rng& rng);

/// Random complete code of exactly m words, each of length ≤ depth.
PrefixCode random_complete_code(std::size_t m, std::size_t depth, Rng& rng);

/// Random point pre·per^ω with |pre| + |per| ≤ max_total.
Point random_point(std::size_t max_total, Rng& rng);

}  // namespace vdyn
