#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "vdyn/thompson_v.hpp"

namespace vdyn {

// Free generators of the groups in ((A∗B)×C)⋊D, all of rank two.
enum class Generator : std::uint8_t { a1, a2, b1, b2, c1, c2, d1, d2 };

/// Which free group a word lives in. AB covers A∗B, so plain A-words and
/// B-words are AB-words over a subset of the letters.
enum class Alphabet : std::uint8_t { AB, C, D };

Alphabet alphabet_of(Generator g);
bool is_a_generator(Generator g);
bool is_b_generator(Generator g);
std::string_view generator_name(Generator g);
std::string_view alphabet_name(Alphabet a);

struct Letter {
  Generator gen;
  int exp;  // +1 or -1

  Letter inverse() const { return {gen, -exp}; }
  friend bool operator==(const Letter&, const Letter&) = default;
  friend auto operator<=>(const Letter&, const Letter&) = default;
};

/// "a1", "b2^-1".
std::string letter_token(Letter l);
Letter parse_letter(std::string_view token);

/// A freely reduced word in one of the free groups.
class FreeWord {
 public:
  explicit FreeWord(Alphabet alphabet = Alphabet::D) : alphabet_(alphabet) {}
  /// Reduces the letters. Throws ValidationError if a letter is not in the
  /// alphabet or an exponent is not ±1.
  FreeWord(Alphabet alphabet, const std::vector<Letter>& letters);

  static FreeWord parse(Alphabet alphabet, const std::vector<std::string>& tokens);

  Alphabet alphabet() const { return alphabet_; }
  const std::vector<Letter>& letters() const { return letters_; }
  std::size_t size() const { return letters_.size(); }
  bool empty() const { return letters_.empty(); }

  std::vector<std::string> tokens() const;
  /// Space-separated tokens, or "ε" for the empty word.
  std::string to_string() const;

  friend bool operator==(const FreeWord&, const FreeWord&) = default;
  friend auto operator<=>(const FreeWord&, const FreeWord&) = default;

 private:
  Alphabet alphabet_;
  std::vector<Letter> letters_;
};

FreeWord word_reduce(Alphabet alphabet, const std::vector<Letter>& letters);
/// Throws ValidationError when the alphabets differ.
FreeWord word_mul(const FreeWord& x, const FreeWord& y);
FreeWord word_inv(const FreeWord& w);

/// How D-letters are read as B-letters. Default d_i ↦ b_i.
struct DLetterMap {
  Generator d1_to = Generator::b1;
  Generator d2_to = Generator::b2;
};

/// The D-word d rewritten over B-letters.
FreeWord d_to_b(const FreeWord& d, const DLetterMap& map = {});

/// The automorphism ψ_d of A∗B: A-letters fixed, each B-letter conjugated
/// by W_d, the image of d over B-letters.
FreeWord psi_apply(const FreeWord& d, const FreeWord& w, const DLetterMap& map = {});

/// Normal form (k, h) with k = (k_ab, k_c) ∈ (A∗B)×C and h ∈ D.
struct SemidirectElement {
  FreeWord k_ab{Alphabet::AB};
  FreeWord k_c{Alphabet::C};
  FreeWord h{Alphabet::D};

  /// Throws ValidationError if a component has the wrong alphabet.
  void validate() const;
  friend bool operator==(const SemidirectElement&, const SemidirectElement&) = default;
};

/// (k, h)(k', h') = (k ψ_h(k'), hh'); D acts trivially on C.
SemidirectElement semidirect_mul(const SemidirectElement& x, const SemidirectElement& y,
                                 const DLetterMap& map = {});
SemidirectElement semidirect_inv(const SemidirectElement& x, const DLetterMap& map = {});

/// Assignment of V images to the generators of one alphabet.
class VHom {
 public:
  VHom() = default;
  /// Throws ValidationError if a generator is outside the alphabet.
  VHom(Alphabet alphabet, const std::map<Generator, VElement>& images);

  Alphabet alphabet() const { return alphabet_; }
  bool covers(Generator g) const { return images_.count(g) != 0; }
  /// Throws ValidationError for an uncovered generator.
  const VElement& image(Letter l) const;

 private:
  Alphabet alphabet_ = Alphabet::D;
  std::map<Generator, std::array<VElement, 2>> images_;  // {g, g⁻¹}
};

/// Image of a word: letters act right to left, so hom(l₁l₂) = hom(l₁)∘hom(l₂).
VElement hom_eval(const VHom& hom, const FreeWord& w);

/// Outcome of the bounded freeness search.
struct FreenessResult {
  bool free = true;
  std::size_t words_checked = 0;
  std::optional<FreeWord> relator;  // first word found with identity image
};

/// Checks every nonempty reduced word of length ≤ max_len for a
/// non-identity image, depth first in token order.
FreenessResult freeness_search(const VHom& hom, std::size_t max_len);
bool freeness_check(const VHom& hom, std::size_t max_len);

/// Number of nonempty reduced words of length ≤ len in a free group of rank 2.
std::size_t reduced_word_count(std::size_t len);

/// g h g⁻¹ h⁻¹.
VElement v_commutator(const VElement& g, const VElement& h);

/// The standard free pair [a,b], [a,b²] in ⟨a, b⟩ ≅ ℤ₂∗ℤ₃.
std::array<VElement, 2> default_free_images();

/// a1 ↦ a, a2 ↦ b, b1 ↦ [a,b], b2 ↦ [a,b²].
VHom default_ab_hom();
/// D-letters through the letter map into the B-images of ab.
VHom d_hom_from(const VHom& ab, const DLetterMap& map = {});
/// d1 ↦ [a,b], d2 ↦ [a,b²].
VHom default_d_hom();

}  // namespace vdyn
