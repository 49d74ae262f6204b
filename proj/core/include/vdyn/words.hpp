#pragma once

#include <compare>
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace vdyn {

/// A finite word over {0,1}. Identified with the cylinder [w] of all
/// sequences starting with w; the empty word is the whole space.
class BinaryWord {
 public:
  BinaryWord() = default;
  /// Throws ValidationError on any character other than '0' or '1'.
  explicit BinaryWord(std::string_view bits);

  std::size_t size() const { return bits_.size(); }
  bool empty() const { return bits_.empty(); }
  int bit(std::size_t i) const { return bits_[i] - '0'; }
  int back() const { return bits_.back() - '0'; }
  const std::string& str() const { return bits_; }

  bool is_prefix_of(const BinaryWord& other) const;
  /// True when one of the two is a prefix of the other (the cylinders meet).
  bool comparable_with(const BinaryWord& other) const;

  BinaryWord child(int b) const;
  BinaryWord parent() const;
  BinaryWord sibling() const;
  BinaryWord prefix(std::size_t n) const;
  BinaryWord drop(std::size_t n) const;

  void push_back(int b) { bits_.push_back(static_cast<char>('0' + b)); }
  void pop_back() { bits_.pop_back(); }

  BinaryWord& operator+=(const BinaryWord& rhs) {
    bits_ += rhs.bits_;
    return *this;
  }
  friend BinaryWord operator+(BinaryWord lhs, const BinaryWord& rhs) {
    lhs += rhs;
    return lhs;
  }

  friend bool operator==(const BinaryWord&, const BinaryWord&) = default;
  friend std::strong_ordering operator<=>(const BinaryWord& a, const BinaryWord& b) {
    return a.bits_.compare(b.bits_) <=> 0;
  }

 private:
  std::string bits_;
};

/// An eventually periodic point pre·per^ω of Cantor space, always held in
/// canonical form: the period is primitive and the preperiod is as short as
/// possible. Equality of Points is equality of the sequences they denote.
class Point {
 public:
  /// The point 0^ω.
  Point() : per_("0") {}

  const BinaryWord& preperiod() const { return pre_; }
  const BinaryWord& period() const { return per_; }

  int bit(std::size_t n) const;
  BinaryWord prefix(std::size_t n) const;
  /// The point with its first n bits removed.
  Point drop(std::size_t n) const;
  /// The point w·x.
  Point prepend(const BinaryWord& w) const;

  /// "pre(per)", e.g. "1(0)" for 1·0^ω.
  std::string to_string() const;

  friend bool operator==(const Point&, const Point&) = default;
  friend std::strong_ordering operator<=>(const Point& a, const Point& b) {
    if (auto c = a.pre_ <=> b.pre_; c != 0) return c;
    return a.per_ <=> b.per_;
  }

 private:
  Point(BinaryWord pre, BinaryWord per) : pre_(std::move(pre)), per_(std::move(per)) {}
  friend Point point_normalize(BinaryWord pre, BinaryWord per);

  BinaryWord pre_;
  BinaryWord per_;
};

/// Canonical point for pre·per^ω. Throws ValidationError on an empty period.
Point point_normalize(BinaryWord pre, BinaryWord per);

/// Parses "pre(per)"; a bare word w is read as w·0^ω.
Point parse_point(std::string_view text);

/// First n bits of x.
BinaryWord point_prefix(const Point& x, std::size_t n);

/// A finite antichain of binary words, kept in lexicographic order.
class PrefixCode {
 public:
  PrefixCode() = default;
  /// Throws ValidationError if the words do not form an antichain.
  explicit PrefixCode(std::vector<BinaryWord> words);
  static PrefixCode whole() { return PrefixCode({BinaryWord{}}); }

  const std::vector<BinaryWord>& words() const { return words_; }
  std::size_t size() const { return words_.size(); }
  bool empty() const { return words_.empty(); }
  std::size_t max_length() const;
  bool contains(const BinaryWord& w) const;
  std::size_t index_of(const BinaryWord& w) const;

  /// The code word that is a prefix of w (w itself included), if any.
  std::optional<std::size_t> prefix_index(const BinaryWord& w) const;
  /// Index range [first, last) of the code words having w as a prefix.
  std::pair<std::size_t, std::size_t> extensions(const BinaryWord& w) const;

  friend bool operator==(const PrefixCode&, const PrefixCode&) = default;

 private:
  std::vector<BinaryWord> words_;
};

/// Exact Kraft test: the cylinders of the code cover the whole space.
bool kraft_is_complete(const PrefixCode& code);
/// Kraft sum rendered as a reduced fraction when small enough to print.
std::string kraft_sum_string(const PrefixCode& code);

/// Coarsest complete code refining both inputs. Both must be complete.
PrefixCode refine_common(const PrefixCode& a, const PrefixCode& b);

/// Refines a complete code to exactly m words by repeatedly splitting the
/// lexicographically smallest word among the shortest ones.
PrefixCode subdivide_to_size(const PrefixCode& code, std::size_t m);

/// Same splitting rule applied to an arbitrary antichain (used where only
/// part of a code may be split).
std::vector<BinaryWord> subdivide_words(std::vector<BinaryWord> words, std::size_t m);

/// A clopen set, as the canonical reduced antichain of cylinders whose
/// union it is. No two words are siblings; words are sorted.
class CylinderSet {
 public:
  CylinderSet() = default;
  static CylinderSet whole();

  const std::vector<BinaryWord>& words() const { return words_; }
  bool empty() const { return words_.empty(); }
  bool contains(const Point& x) const;
  /// [w] is a subset of the set.
  bool covers(const BinaryWord& w) const;

  friend bool operator==(const CylinderSet&, const CylinderSet&) = default;

 private:
  friend CylinderSet cylinderset_reduce(std::vector<BinaryWord> words);
  std::vector<BinaryWord> words_;
};

/// Canonical form of the union of the given cylinders. The words must form
/// an antichain.
CylinderSet cylinderset_reduce(std::vector<BinaryWord> words);

CylinderSet set_union(const CylinderSet& a, const CylinderSet& b);
CylinderSet set_intersection(const CylinderSet& a, const CylinderSet& b);
CylinderSet set_complement(const CylinderSet& a);
bool is_subset(const CylinderSet& a, const CylinderSet& b);
bool are_disjoint(const CylinderSet& a, const CylinderSet& b);

}  // namespace vdyn
