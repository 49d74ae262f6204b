#include "vdyn/groups.hpp"

#include <functional>

#include "vdyn/errors.hpp"

namespace vdyn {

namespace {

constexpr std::array<std::string_view, 8> kGeneratorNames = {"a1", "a2", "b1", "b2",
                                                             "c1", "c2", "d1", "d2"};

std::array<Generator, 2> generators_of(Alphabet a) {
  switch (a) {
    case Alphabet::C:
      return {Generator::c1, Generator::c2};
    case Alphabet::D:
      return {Generator::d1, Generator::d2};
    case Alphabet::AB:
      break;
  }
  throw ValidationError("alphabet AB has rank four");
}

}  // namespace

Alphabet alphabet_of(Generator g) {
  switch (g) {
    case Generator::c1:
    case Generator::c2:
      return Alphabet::C;
    case Generator::d1:
    case Generator::d2:
      return Alphabet::D;
    default:
      return Alphabet::AB;
  }
}

bool is_a_generator(Generator g) { return g == Generator::a1 || g == Generator::a2; }
bool is_b_generator(Generator g) { return g == Generator::b1 || g == Generator::b2; }

std::string_view generator_name(Generator g) {
  return kGeneratorNames[static_cast<std::size_t>(g)];
}

std::string_view alphabet_name(Alphabet a) {
  switch (a) {
    case Alphabet::AB:
      return "AB";
    case Alphabet::C:
      return "C";
    case Alphabet::D:
      return "D";
  }
  return "?";
}

std::string letter_token(Letter l) {
  std::string s(generator_name(l.gen));
  if (l.exp < 0) s += "^-1";
  return s;
}

Letter parse_letter(std::string_view token) {
  int exp = 1;
  std::string_view name = token;
  if (auto caret = token.find('^'); caret != std::string_view::npos) {
    const auto power = token.substr(caret + 1);
    if (power == "-1") {
      exp = -1;
    } else if (power != "1") {
      throw ValidationError("bad exponent in letter '" + std::string(token) + "'");
    }
    name = token.substr(0, caret);
  }
  for (std::size_t i = 0; i < kGeneratorNames.size(); ++i) {
    if (kGeneratorNames[i] == name) return {static_cast<Generator>(i), exp};
  }
  throw ValidationError("unknown generator in letter '" + std::string(token) + "'");
}

// ------------------------------------------------------------------ FreeWord

FreeWord::FreeWord(Alphabet alphabet, const std::vector<Letter>& letters) : alphabet_(alphabet) {
  for (const Letter& l : letters) {
    if (alphabet_of(l.gen) != alphabet) {
      throw ValidationError("letter " + letter_token(l) + " is not in alphabet " +
                            std::string(alphabet_name(alphabet)));
    }
    if (l.exp != 1 && l.exp != -1) throw ValidationError("letter exponent must be +1 or -1");
    if (!letters_.empty() && letters_.back() == l.inverse()) {
      letters_.pop_back();
    } else {
      letters_.push_back(l);
    }
  }
}

FreeWord FreeWord::parse(Alphabet alphabet, const std::vector<std::string>& tokens) {
  std::vector<Letter> letters;
  letters.reserve(tokens.size());
  for (const auto& t : tokens) letters.push_back(parse_letter(t));
  return FreeWord(alphabet, letters);
}

std::vector<std::string> FreeWord::tokens() const {
  std::vector<std::string> out;
  out.reserve(letters_.size());
  for (const Letter& l : letters_) out.push_back(letter_token(l));
  return out;
}

std::string FreeWord::to_string() const {
  if (letters_.empty()) return "ε";
  std::string s;
  for (const Letter& l : letters_) {
    if (!s.empty()) s += ' ';
    s += letter_token(l);
  }
  return s;
}

FreeWord word_reduce(Alphabet alphabet, const std::vector<Letter>& letters) {
  return FreeWord(alphabet, letters);
}

FreeWord word_mul(const FreeWord& x, const FreeWord& y) {
  if (x.alphabet() != y.alphabet()) {
    throw ValidationError("cannot multiply words over alphabets " +
                          std::string(alphabet_name(x.alphabet())) + " and " +
                          std::string(alphabet_name(y.alphabet())));
  }
  std::vector<Letter> letters = x.letters();
  letters.insert(letters.end(), y.letters().begin(), y.letters().end());
  return FreeWord(x.alphabet(), letters);
}

FreeWord word_inv(const FreeWord& w) {
  std::vector<Letter> letters;
  letters.reserve(w.size());
  for (auto it = w.letters().rbegin(); it != w.letters().rend(); ++it) {
    letters.push_back(it->inverse());
  }
  return FreeWord(w.alphabet(), letters);
}

// ------------------------------------------------------------ ψ and (k, h)

FreeWord d_to_b(const FreeWord& d, const DLetterMap& map) {
  if (d.alphabet() != Alphabet::D) throw ValidationError("expected a D-word");
  if (!is_b_generator(map.d1_to) || !is_b_generator(map.d2_to)) {
    throw ValidationError("D-letter map must target B-letters");
  }
  std::vector<Letter> letters;
  letters.reserve(d.size());
  for (const Letter& l : d.letters()) {
    letters.push_back({l.gen == Generator::d1 ? map.d1_to : map.d2_to, l.exp});
  }
  return FreeWord(Alphabet::AB, letters);
}

FreeWord psi_apply(const FreeWord& d, const FreeWord& w, const DLetterMap& map) {
  if (w.alphabet() != Alphabet::AB) throw ValidationError("ψ acts on AB-words");
  const FreeWord conj = d_to_b(d, map);
  const FreeWord conj_inv = word_inv(conj);
  std::vector<Letter> letters;
  for (const Letter& l : w.letters()) {
    if (is_a_generator(l.gen)) {
      letters.push_back(l);
      continue;
    }
    letters.insert(letters.end(), conj.letters().begin(), conj.letters().end());
    letters.push_back(l);
    letters.insert(letters.end(), conj_inv.letters().begin(), conj_inv.letters().end());
  }
  return FreeWord(Alphabet::AB, letters);
}

void SemidirectElement::validate() const {
  if (k_ab.alphabet() != Alphabet::AB || k_c.alphabet() != Alphabet::C ||
      h.alphabet() != Alphabet::D) {
    throw ValidationError("semidirect element components must be over AB, C and D");
  }
}

SemidirectElement semidirect_mul(const SemidirectElement& x, const SemidirectElement& y,
                                 const DLetterMap& map) {
  x.validate();
  y.validate();
  return {word_mul(x.k_ab, psi_apply(x.h, y.k_ab, map)), word_mul(x.k_c, y.k_c),
          word_mul(x.h, y.h)};
}

SemidirectElement semidirect_inv(const SemidirectElement& x, const DLetterMap& map) {
  x.validate();
  const FreeWord h_inv = word_inv(x.h);
  return {psi_apply(h_inv, word_inv(x.k_ab), map), word_inv(x.k_c), h_inv};
}

// ---------------------------------------------------------------------- VHom

VHom::VHom(Alphabet alphabet, const std::map<Generator, VElement>& images)
    : alphabet_(alphabet) {
  for (const auto& [g, img] : images) {
    if (alphabet_of(g) != alphabet) {
      throw ValidationError("generator " + std::string(generator_name(g)) +
                            " is not in alphabet " + std::string(alphabet_name(alphabet)));
    }
    images_[g] = {img, v_invert(img)};
  }
}

const VElement& VHom::image(Letter l) const {
  auto it = images_.find(l.gen);
  if (it == images_.end()) {
    throw ValidationError("homomorphism has no image for generator " +
                          std::string(generator_name(l.gen)));
  }
  return it->second[l.exp > 0 ? 0 : 1];
}

VElement hom_eval(const VHom& hom, const FreeWord& w) {
  if (w.alphabet() != hom.alphabet()) {
    throw ValidationError("word over " + std::string(alphabet_name(w.alphabet())) +
                          " given to a homomorphism on " +
                          std::string(alphabet_name(hom.alphabet())));
  }
  VElement acc;
  for (const Letter& l : w.letters()) acc = v_compose(acc, hom.image(l));
  return acc;
}

FreenessResult freeness_search(const VHom& hom, std::size_t max_len) {
  if (hom.alphabet() == Alphabet::AB) throw ValidationError("freeness is checked on rank two");
  const auto gens = generators_of(hom.alphabet());
  const std::array<Letter, 4> letters = {Letter{gens[0], 1}, Letter{gens[0], -1},
                                         Letter{gens[1], 1}, Letter{gens[1], -1}};
  FreenessResult result;
  std::vector<Letter> path;
  // Images of prefixes are extended one letter at a time.
  std::function<bool(const VElement&)> extend = [&](const VElement& prefix_image) {
    if (path.size() == max_len) return true;
    for (const Letter& l : letters) {
      if (!path.empty() && path.back() == l.inverse()) continue;
      path.push_back(l);
      const VElement img = v_compose(prefix_image, hom.image(l));
      ++result.words_checked;
      if (v_is_identity(img)) {
        result.free = false;
        result.relator = FreeWord(hom.alphabet(), path);
        return false;
      }
      if (!extend(img)) return false;
      path.pop_back();
    }
    return true;
  };
  extend(VElement{});
  return result;
}

bool freeness_check(const VHom& hom, std::size_t max_len) {
  return freeness_search(hom, max_len).free;
}

std::size_t reduced_word_count(std::size_t len) {
  std::size_t total = 0;
  std::size_t level = 4;
  for (std::size_t n = 1; n <= len; ++n) {
    total += level;
    level *= 3;
  }
  return total;
}

// ------------------------------------------------------------ default maps

VElement v_commutator(const VElement& g, const VElement& h) {
  return v_compose(v_compose(g, h), v_compose(v_invert(g), v_invert(h)));
}

std::array<VElement, 2> default_free_images() {
  const auto [a, b] = pingpong_generators();
  return {v_commutator(a, b), v_commutator(a, v_compose(b, b))};
}

VHom default_ab_hom() {
  const auto [a, b] = pingpong_generators();
  const auto x = default_free_images();
  return VHom(Alphabet::AB, {{Generator::a1, a},
                             {Generator::a2, b},
                             {Generator::b1, x[0]},
                             {Generator::b2, x[1]}});
}

VHom d_hom_from(const VHom& ab, const DLetterMap& map) {
  return VHom(Alphabet::D, {{Generator::d1, ab.image({map.d1_to, 1})},
                            {Generator::d2, ab.image({map.d2_to, 1})}});
}

VHom default_d_hom() { return d_hom_from(default_ab_hom()); }

}  // namespace vdyn
