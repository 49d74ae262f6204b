#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "vdyn/groups.hpp"
#include "vdyn/thompson_v.hpp"
#include "vdyn/words.hpp"

namespace vdyn {

/// Finitely many distinct sites of the induced system X^D, each a reduced
/// D-word.
class Window {
 public:
  Window() = default;
  /// Throws ValidationError on a non-D word or a repeated site.
  explicit Window(std::vector<FreeWord> sites);

  const std::vector<FreeWord>& sites() const { return sites_; }
  std::size_t size() const { return sites_.size(); }
  std::optional<std::size_t> index_of(const FreeWord& site) const;

  friend bool operator==(const Window&, const Window&) = default;

 private:
  std::vector<FreeWord> sites_;
};

/// One point of Cantor space per window site.
struct Configuration {
  Window window;
  std::vector<Point> values;

  /// Throws ValidationError when the lengths disagree.
  void validate() const;
  /// Number of index pairs i < j with equal values.
  std::size_t colliding_pairs() const;
  /// First colliding pair in index order.
  std::optional<std::pair<std::size_t, std::size_t>> first_collision() const;

  friend bool operator==(const Configuration&, const Configuration&) = default;
};

enum class Role { A, B };

/// A generator-level move of A∗B on X^D. A-moves act diagonally; a B-move
/// with element b acts at site f by W_f⁻¹ ∘ b ∘ W_f, W_f the image of f.
struct Move {
  Role role = Role::A;
  VElement elem;

  friend bool operator==(const Move&, const Move&) = default;
};

Configuration apply_move(const Move& m, const Configuration& c, const VHom& dhom);
Configuration apply_moves(const std::vector<Move>& moves, Configuration c, const VHom& dhom);

/// V-images for A∗B together with the D-letter map used by ψ.
struct InducedAction {
  VHom ab;
  DLetterMap letters;
  VHom d;  // d_hom_from(ab, letters)

  static InducedAction make(VHom ab, DLetterMap letters = {});
  static InducedAction default_instance();
};

/// (k_ab, k_c, h) acting on the configuration: site r of the result carries
/// φ_{r⁻¹}(k_ab) applied to the old value at h⁻¹r. The result lives on the
/// shifted window h·W, listed in the order of the input sites. C acts
/// trivially.
Configuration apply_group_element(const SemidirectElement& g, const Configuration& c,
                                  const InducedAction& action);

/// As above but evaluated on a caller-chosen window. Throws ValidationError
/// when some h⁻¹r of the target window is not a site of c.
Configuration apply_group_element_on(const SemidirectElement& g, const Configuration& c,
                                     const Window& target, const InducedAction& action);

/// g ∈ V with g·points[i] ∈ [targets[i]] for every i. The points must be
/// pairwise distinct. The result is checked by evaluation before returning.
VElement antidiagonal_witness(std::span<const Point> points,
                              std::span<const BinaryWord> targets);

/// g with g·x ∈ [0] and g·y ∈ [1]. Requires x ≠ y.
VElement expansivity_witness(const Point& x, const Point& y);

struct CenterlessWitness {
  VElement g;
  Point x;
};

/// (g, x) with g(f(x)) ≠ f(g(x)). Requires f ≠ 1.
CenterlessWitness centerless_witness(const VElement& f);

struct SteeringOptions {
  std::size_t retry_budget = 32;
  std::uint64_t seed = 0;
};

/// Two moves (an A-move, then a B-move) after which the values at sites i and
/// j differ and every pair of values that differed still differs. Throws
/// ValidationError when i, j do not collide, BudgetExhausted when the retry
/// budget runs out.
std::vector<Move> separate_collision(const Configuration& c, std::size_t i, std::size_t j,
                                     const VHom& dhom, const SteeringOptions& options = {});

/// Moves whose replay lands every value in its target cylinder.
std::vector<Move> steer_to_target(const Configuration& c, const std::vector<BinaryWord>& targets,
                                  const VHom& dhom, const SteeringOptions& options = {});

/// Replay check used by certificates: per-site membership of the replayed
/// values in their targets.
std::vector<bool> target_memberships(const Configuration& c,
                                     const std::vector<BinaryWord>& targets);

}  // namespace vdyn
