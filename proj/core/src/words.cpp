#include "vdyn/words.hpp"

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <set>

#include "vdyn/errors.hpp"

namespace vdyn {

// ---------------------------------------------------------------- BinaryWord

BinaryWord::BinaryWord(std::string_view bits) : bits_(bits) {
  for (char c : bits_) {
    if (c != '0' && c != '1') {
      throw ValidationError("binary word '" + bits_ + "' contains a symbol other than 0/1");
    }
  }
}

bool BinaryWord::is_prefix_of(const BinaryWord& other) const {
  return bits_.size() <= other.bits_.size() &&
         other.bits_.compare(0, bits_.size(), bits_) == 0;
}

bool BinaryWord::comparable_with(const BinaryWord& other) const {
  return is_prefix_of(other) || other.is_prefix_of(*this);
}

BinaryWord BinaryWord::child(int b) const {
  BinaryWord w = *this;
  w.push_back(b);
  return w;
}

BinaryWord BinaryWord::parent() const {
  BinaryWord w = *this;
  w.pop_back();
  return w;
}

BinaryWord BinaryWord::sibling() const {
  BinaryWord w = *this;
  w.bits_.back() = w.bits_.back() == '0' ? '1' : '0';
  return w;
}

BinaryWord BinaryWord::prefix(std::size_t n) const {
  BinaryWord w;
  w.bits_ = bits_.substr(0, n);
  return w;
}

BinaryWord BinaryWord::drop(std::size_t n) const {
  BinaryWord w;
  w.bits_ = n >= bits_.size() ? std::string{} : bits_.substr(n);
  return w;
}

// --------------------------------------------------------------------- Point

namespace {

// Length of the primitive root of a nonempty word.
std::size_t primitive_root_length(const std::string& s) {
  const std::size_t n = s.size();
  for (std::size_t d = 1; d < n; ++d) {
    if (n % d != 0) continue;
    bool ok = true;
    for (std::size_t i = d; i < n && ok; ++i) ok = s[i] == s[i - d];
    if (ok) return d;
  }
  return n;
}

}  // namespace

Point point_normalize(BinaryWord pre, BinaryWord per) {
  if (per.empty()) throw ValidationError("point period must be nonempty");
  per = per.prefix(primitive_root_length(per.str()));
  // Absorb trailing preperiod letters into a rotation of the period.
  std::string p = per.str();
  while (!pre.empty() && pre.back() == p.back() - '0') {
    pre.pop_back();
    std::rotate(p.rbegin(), p.rbegin() + 1, p.rend());
  }
  return Point(std::move(pre), BinaryWord(p));
}

int Point::bit(std::size_t n) const {
  if (n < pre_.size()) return pre_.bit(n);
  return per_.bit((n - pre_.size()) % per_.size());
}

BinaryWord Point::prefix(std::size_t n) const {
  BinaryWord w = pre_.prefix(n);
  while (w.size() < n) w.push_back(bit(w.size()));
  return w;
}

Point Point::drop(std::size_t n) const {
  if (n <= pre_.size()) return Point(pre_.drop(n), per_);
  const std::size_t shift = (n - pre_.size()) % per_.size();
  return Point(BinaryWord{}, per_.drop(shift) + per_.prefix(shift));
}

Point Point::prepend(const BinaryWord& w) const { return point_normalize(w + pre_, per_); }

std::string Point::to_string() const { return pre_.str() + "(" + per_.str() + ")"; }

Point parse_point(std::string_view text) {
  const auto open = text.find('(');
  if (open == std::string_view::npos) {
    return point_normalize(BinaryWord(text), BinaryWord("0"));
  }
  if (text.empty() || text.back() != ')') {
    throw ValidationError("point '" + std::string(text) + "' is not of the form pre(per)");
  }
  return point_normalize(BinaryWord(text.substr(0, open)),
                         BinaryWord(text.substr(open + 1, text.size() - open - 2)));
}

BinaryWord point_prefix(const Point& x, std::size_t n) { return x.prefix(n); }

// ---------------------------------------------------------------- PrefixCode

PrefixCode::PrefixCode(std::vector<BinaryWord> words) : words_(std::move(words)) {
  std::sort(words_.begin(), words_.end());
  // In lexicographic order a prefix is immediately followed by its extensions,
  // so checking neighbours suffices.
  for (std::size_t i = 1; i < words_.size(); ++i) {
    if (words_[i - 1].is_prefix_of(words_[i])) {
      throw ValidationError("not a prefix code: '" + words_[i - 1].str() +
                            "' is a prefix of '" + words_[i].str() + "'");
    }
  }
}

std::size_t PrefixCode::max_length() const {
  std::size_t m = 0;
  for (const auto& w : words_) m = std::max(m, w.size());
  return m;
}

bool PrefixCode::contains(const BinaryWord& w) const {
  return std::binary_search(words_.begin(), words_.end(), w);
}

std::size_t PrefixCode::index_of(const BinaryWord& w) const {
  auto it = std::lower_bound(words_.begin(), words_.end(), w);
  if (it == words_.end() || *it != w) {
    throw ValidationError("word '" + w.str() + "' is not in the code");
  }
  return static_cast<std::size_t>(it - words_.begin());
}

std::optional<std::size_t> PrefixCode::prefix_index(const BinaryWord& w) const {
  // A code word that prefixes w is the greatest code word not above w.
  auto it = std::upper_bound(words_.begin(), words_.end(), w);
  if (it == words_.begin()) return std::nullopt;
  --it;
  if (!it->is_prefix_of(w)) return std::nullopt;
  return static_cast<std::size_t>(it - words_.begin());
}

std::pair<std::size_t, std::size_t> PrefixCode::extensions(const BinaryWord& w) const {
  auto first = std::lower_bound(words_.begin(), words_.end(), w);
  auto last = first;
  while (last != words_.end() && w.is_prefix_of(*last)) ++last;
  return {static_cast<std::size_t>(first - words_.begin()),
          static_cast<std::size_t>(last - words_.begin())};
}

namespace {

// Σ 2^(L-|u|) over the code, as a little-endian multi-limb integer.
struct KraftNumerator {
  std::size_t depth = 0;
  std::vector<std::uint64_t> limbs;

  explicit KraftNumerator(const PrefixCode& code) : depth(code.max_length()) {
    limbs.assign(depth / 64 + 2, 0);
    for (const auto& w : code.words()) add_power(depth - w.size());
  }

  void add_power(std::size_t p) {
    std::size_t limb = p / 64;
    std::uint64_t carry = std::uint64_t{1} << (p % 64);
    while (carry != 0) {
      const std::uint64_t before = limbs[limb];
      limbs[limb] += carry;
      carry = limbs[limb] < before ? 1 : 0;
      ++limb;
    }
  }

  bool equals_power(std::size_t p) const {
    for (std::size_t i = 0; i < limbs.size(); ++i) {
      const std::uint64_t want = i == p / 64 ? std::uint64_t{1} << (p % 64) : 0;
      if (limbs[i] != want) return false;
    }
    return true;
  }
};

}  // namespace

bool kraft_is_complete(const PrefixCode& code) {
  if (code.empty()) return false;
  KraftNumerator sum(code);
  return sum.equals_power(sum.depth);
}

std::string kraft_sum_string(const PrefixCode& code) {
  if (code.empty()) return "0";
  KraftNumerator sum(code);
  if (sum.depth > 62) return kraft_is_complete(code) ? "1" : "< 1";
  std::uint64_t num = sum.limbs[0];
  std::uint64_t den = std::uint64_t{1} << sum.depth;
  const std::uint64_t g = std::gcd(num, den);
  num /= g;
  den /= g;
  if (den == 1) return std::to_string(num);
  return std::to_string(num) + "/" + std::to_string(den);
}

namespace {

void require_complete(const PrefixCode& code, const char* what) {
  if (!kraft_is_complete(code)) {
    throw ValidationError(std::string(what) + " is not a complete prefix code (Kraft sum " +
                          kraft_sum_string(code) + ")");
  }
}

}  // namespace

PrefixCode refine_common(const PrefixCode& a, const PrefixCode& b) {
  require_complete(a, "first code");
  require_complete(b, "second code");
  // Leaves of the union of the two code trees.
  std::vector<BinaryWord> out;
  out.reserve(a.size() + b.size());
  for (const auto& u : a.words()) {
    if (b.prefix_index(u)) out.push_back(u);
  }
  for (const auto& v : b.words()) {
    auto i = a.prefix_index(v);
    if (i && a.words()[*i] != v) out.push_back(v);
  }
  return PrefixCode(std::move(out));
}

std::vector<BinaryWord> subdivide_words(std::vector<BinaryWord> words, std::size_t m) {
  if (m < words.size()) {
    throw ValidationError("cannot subdivide " + std::to_string(words.size()) +
                          " words down to " + std::to_string(m));
  }
  if (words.empty() && m > 0) throw ValidationError("cannot subdivide an empty set of words");
  auto by_length = [](const BinaryWord& x, const BinaryWord& y) {
    if (x.size() != y.size()) return x.size() < y.size();
    return x < y;
  };
  std::set<BinaryWord, decltype(by_length)> pending(words.begin(), words.end(), by_length);
  while (pending.size() < m) {
    auto shortest = pending.begin();
    BinaryWord w = *shortest;
    pending.erase(shortest);
    pending.insert(w.child(0));
    pending.insert(w.child(1));
  }
  std::vector<BinaryWord> out(pending.begin(), pending.end());
  std::sort(out.begin(), out.end());
  return out;
}

PrefixCode subdivide_to_size(const PrefixCode& code, std::size_t m) {
  require_complete(code, "code");
  return PrefixCode(subdivide_words(code.words(), m));
}

// --------------------------------------------------------------- CylinderSet

CylinderSet CylinderSet::whole() { return cylinderset_reduce({BinaryWord{}}); }

bool CylinderSet::contains(const Point& x) const {
  // Reduced words are distinct cylinders; the longest one bounds the lookup.
  std::size_t depth = 0;
  for (const auto& w : words_) depth = std::max(depth, w.size());
  const BinaryWord head = x.prefix(depth);
  auto it = std::upper_bound(words_.begin(), words_.end(), head);
  return it != words_.begin() && std::prev(it)->is_prefix_of(head);
}

bool CylinderSet::covers(const BinaryWord& w) const {
  // In reduced form a covered cylinder always has a prefix in the set.
  auto it = std::upper_bound(words_.begin(), words_.end(), w);
  return it != words_.begin() && std::prev(it)->is_prefix_of(w);
}

CylinderSet cylinderset_reduce(std::vector<BinaryWord> words) {
  PrefixCode checked(std::move(words));  // validates and sorts
  std::vector<BinaryWord> stack;
  stack.reserve(checked.size());
  for (const auto& w : checked.words()) {
    stack.push_back(w);
    // A sibling pair is adjacent in sorted order; merging may cascade upward.
    while (stack.size() >= 2) {
      const auto& hi = stack[stack.size() - 1];
      const auto& lo = stack[stack.size() - 2];
      if (hi.empty() || hi.back() != 1 || lo != hi.sibling()) break;
      BinaryWord parent = hi.parent();
      stack.pop_back();
      stack.back() = std::move(parent);
    }
  }
  CylinderSet out;
  out.words_ = std::move(stack);
  return out;
}

CylinderSet set_union(const CylinderSet& a, const CylinderSet& b) {
  std::vector<BinaryWord> out;
  for (const auto& w : a.words()) {
    if (!b.covers(w)) out.push_back(w);
  }
  for (const auto& w : b.words()) {
    if (!a.covers(w)) out.push_back(w);
  }
  // Words equal in both were dropped twice.
  for (const auto& w : a.words()) {
    if (std::binary_search(b.words().begin(), b.words().end(), w)) out.push_back(w);
  }
  return cylinderset_reduce(std::move(out));
}

CylinderSet set_intersection(const CylinderSet& a, const CylinderSet& b) {
  std::vector<BinaryWord> out;
  for (const auto& u : a.words()) {
    for (const auto& v : b.words()) {
      if (u.is_prefix_of(v)) {
        out.push_back(v);
      } else if (v.is_prefix_of(u)) {
        out.push_back(u);
      }
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return cylinderset_reduce(std::move(out));
}

namespace {

void complement_below(const BinaryWord& prefix, std::vector<BinaryWord>::const_iterator first,
                      std::vector<BinaryWord>::const_iterator last,
                      std::vector<BinaryWord>& out) {
  if (first == last) {
    out.push_back(prefix);
    return;
  }
  if (*first == prefix) return;
  const BinaryWord left = prefix.child(0);
  auto mid = first;
  while (mid != last && left.is_prefix_of(*mid)) ++mid;
  complement_below(left, first, mid, out);
  complement_below(prefix.child(1), mid, last, out);
}

}  // namespace

CylinderSet set_complement(const CylinderSet& a) {
  std::vector<BinaryWord> out;
  complement_below(BinaryWord{}, a.words().begin(), a.words().end(), out);
  return cylinderset_reduce(std::move(out));
}

bool is_subset(const CylinderSet& a, const CylinderSet& b) {
  return std::all_of(a.words().begin(), a.words().end(),
                     [&](const BinaryWord& w) { return b.covers(w); });
}

bool are_disjoint(const CylinderSet& a, const CylinderSet& b) {
  return set_intersection(a, b).empty();
}

}  // namespace vdyn
