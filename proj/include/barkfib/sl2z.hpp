#pragma once
// Exact SL(2,Z) arithmetic over the generators s0 = [[1,1],[0,1]] and
// s2 = [[1,0],[-1,1]].

#include <cstdint>
#include <cstdlib>
#include <functional>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace barkfib {

using Int = std::int64_t;

namespace checked {

inline Int add(Int a, Int b) {
  Int r;
  if (__builtin_add_overflow(a, b, &r)) throw std::overflow_error("integer overflow in addition");
  return r;
}

inline Int sub(Int a, Int b) {
  Int r;
  if (__builtin_sub_overflow(a, b, &r)) throw std::overflow_error("integer overflow in subtraction");
  return r;
}

inline Int mul(Int a, Int b) {
  Int r;
  if (__builtin_mul_overflow(a, b, &r)) throw std::overflow_error("integer overflow in multiplication");
  return r;
}

inline Int neg(Int a) { return sub(0, a); }

}  // namespace checked

/// A 2x2 integer matrix of determinant one.
class Mat2 {
 public:
  /// Identity.
  constexpr Mat2() noexcept = default;

  Mat2(Int a, Int b, Int c, Int d) : a_(a), b_(b), c_(c), d_(d) {
    if (checked::sub(checked::mul(a, d), checked::mul(b, c)) != 1) {
      std::ostringstream os;
      os << "matrix [[" << a << "," << b << "],[" << c << "," << d << "]] is not in SL(2,Z)";
      throw std::invalid_argument(os.str());
    }
  }

  static Mat2 identity() noexcept { return Mat2(); }
  static Mat2 minus_identity() { return Mat2(-1, 0, 0, -1); }

  Int a() const noexcept { return a_; }
  Int b() const noexcept { return b_; }
  Int c() const noexcept { return c_; }
  Int d() const noexcept { return d_; }

  friend bool operator==(const Mat2&, const Mat2&) = default;

  friend Mat2 operator*(const Mat2& x, const Mat2& y) {
    using namespace checked;
    Mat2 r;
    r.a_ = add(mul(x.a_, y.a_), mul(x.b_, y.c_));
    r.b_ = add(mul(x.a_, y.b_), mul(x.b_, y.d_));
    r.c_ = add(mul(x.c_, y.a_), mul(x.d_, y.c_));
    r.d_ = add(mul(x.c_, y.b_), mul(x.d_, y.d_));
    return r;
  }

  Mat2 operator-() const {
    Mat2 r;
    r.a_ = checked::neg(a_);
    r.b_ = checked::neg(b_);
    r.c_ = checked::neg(c_);
    r.d_ = checked::neg(d_);
    return r;
  }

  std::string str() const {
    std::ostringstream os;
    os << "[[" << a_ << "," << b_ << "],[" << c_ << "," << d_ << "]]";
    return os.str();
  }

 private:
  Int a_ = 1, b_ = 0, c_ = 0, d_ = 1;
};

inline Mat2 mul(const Mat2& x, const Mat2& y) { return x * y; }

inline Mat2 inverse(const Mat2& m) {
  return Mat2(m.d(), checked::neg(m.b()), checked::neg(m.c()), m.a());
}

/// g * m * g^-1
inline Mat2 conj(const Mat2& m, const Mat2& g) { return g * m * inverse(g); }

inline Int trace(const Mat2& m) { return checked::add(m.a(), m.d()); }

inline Mat2 power(const Mat2& m, Int e) {
  Mat2 base = e < 0 ? inverse(m) : m;
  std::uint64_t k = e < 0 ? static_cast<std::uint64_t>(-(e + 1)) + 1 : static_cast<std::uint64_t>(e);
  Mat2 r;
  while (k) {
    if (k & 1U) r = r * base;
    k >>= 1U;
    if (k) base = base * base;
  }
  return r;
}

enum class Gen { S0, S2 };

inline Mat2 generator(Gen g) { return g == Gen::S0 ? Mat2(1, 1, 0, 1) : Mat2(1, 0, -1, 1); }

/// s0^e, computed in closed form.
inline Mat2 generator_power(Gen g, Int e) {
  return g == Gen::S0 ? Mat2(1, e, 0, 1) : Mat2(1, 0, checked::neg(e), 1);
}

struct Letter {
  Gen gen;
  Int exp;
  friend bool operator==(const Letter&, const Letter&) = default;
};

/// A product of generator powers, read left to right. Kept normalized:
/// no zero exponents and no two adjacent letters on the same generator.
class Word {
 public:
  Word() = default;
  explicit Word(std::vector<Letter> letters) {
    for (const auto& l : letters) push(l.gen, l.exp);
  }

  static Word of(Gen g, Int e = 1) {
    Word w;
    w.push(g, e);
    return w;
  }

  /// Appends g^e, merging with the last letter when possible.
  Word& push(Gen g, Int e) {
    if (e == 0) return *this;
    if (!letters_.empty() && letters_.back().gen == g) {
      letters_.back().exp = checked::add(letters_.back().exp, e);
      if (letters_.back().exp == 0) letters_.pop_back();
    } else {
      letters_.push_back({g, e});
    }
    return *this;
  }

  Word& operator*=(const Word& rhs) {
    for (const auto& l : rhs.letters_) push(l.gen, l.exp);
    return *this;
  }
  friend Word operator*(Word lhs, const Word& rhs) { return lhs *= rhs; }

  Word pow(Int k) const {
    Word base = k < 0 ? inverse() : *this;
    Word r;
    for (Int i = 0; i < (k < 0 ? -k : k); ++i) r *= base;
    return r;
  }

  Word inverse() const {
    Word r;
    for (auto it = letters_.rbegin(); it != letters_.rend(); ++it) r.push(it->gen, checked::neg(it->exp));
    return r;
  }

  const std::vector<Letter>& letters() const noexcept { return letters_; }
  bool empty() const noexcept { return letters_.empty(); }
  std::size_t length() const noexcept { return letters_.size(); }

  /// Number of generator letters with exponents expanded.
  Int letter_count() const noexcept {
    Int n = 0;
    for (const auto& l : letters_) n += l.exp < 0 ? -l.exp : l.exp;
    return n;
  }

  friend bool operator==(const Word&, const Word&) = default;

  /// Text form: "s0^3 s2^-2 s0"; the empty word prints as "1".
  std::string str() const {
    if (letters_.empty()) return "1";
    std::ostringstream os;
    for (std::size_t i = 0; i < letters_.size(); ++i) {
      if (i) os << ' ';
      os << (letters_[i].gen == Gen::S0 ? "s0" : "s2");
      if (letters_[i].exp != 1) os << '^' << letters_[i].exp;
    }
    return os.str();
  }

 private:
  std::vector<Letter> letters_;
};

inline Mat2 eval_word(const Word& w) {
  Mat2 r;
  for (const auto& l : w.letters()) r = r * generator_power(l.gen, l.exp);
  return r;
}

/// Parses "s0^3 s2^-2 s0". Whitespace separated; "1" or "" is the empty word.
inline Word parse_word(std::string_view text) {
  Word w;
  std::string s(text);
  std::istringstream is(s);
  std::string tok;
  while (is >> tok) {
    if (tok == "1") continue;
    if (tok.size() < 2 || tok[0] != 's' || (tok[1] != '0' && tok[1] != '2'))
      throw std::invalid_argument("bad word token '" + tok + "'");
    Gen g = tok[1] == '0' ? Gen::S0 : Gen::S2;
    Int e = 1;
    if (tok.size() > 2) {
      if (tok[2] != '^' || tok.size() == 3) throw std::invalid_argument("bad word token '" + tok + "'");
      std::size_t used = 0;
      try {
        e = std::stoll(tok.substr(3), &used);
      } catch (const std::exception&) {
        throw std::invalid_argument("bad exponent in '" + tok + "'");
      }
      if (used != tok.size() - 3) throw std::invalid_argument("bad exponent in '" + tok + "'");
    }
    w.push(g, e);
  }
  return w;
}

/// Some word over s0, s2 evaluating to m. Euclidean reduction of the first
/// column; the spelling is valid but not canonical.
inline Word word_of(const Mat2& m) {
  // ops accumulates L with L * m upper triangular.
  Word ops;
  Mat2 cur = m;
  while (cur.c() != 0) {
    if (cur.a() == 0) {
      // b = s0 s2 s0 swaps the rows up to sign, leaving c = 0
      const Word b = Word::of(Gen::S0) * Word::of(Gen::S2) * Word::of(Gen::S0);
      ops = b * ops;
      cur = eval_word(b) * cur;
      continue;
    }
    Int aa = cur.a() < 0 ? -cur.a() : cur.a();
    Int cc = cur.c() < 0 ? -cur.c() : cur.c();
    if (aa >= cc) {
      Int q = cur.a() / cur.c();
      ops = Word::of(Gen::S0, -q) * ops;
      cur = generator_power(Gen::S0, -q) * cur;
    } else {
      Int q = cur.c() / cur.a();
      ops = Word::of(Gen::S2, q) * ops;
      cur = generator_power(Gen::S2, q) * cur;
    }
  }
  // cur = [[e, b], [0, e]] with e = +-1.
  Word rest;
  if (cur.a() == 1) {
    rest = Word::of(Gen::S0, cur.b());
  } else {
    // -I = (s0 s2)^3
    Word a3 = (Word::of(Gen::S0) * Word::of(Gen::S2)).pow(3);
    rest = a3 * Word::of(Gen::S0, checked::neg(cur.b()));
  }
  return ops.inverse() * rest;
}

struct Mat2Hash {
  std::size_t operator()(const Mat2& m) const noexcept {
    std::size_t h = std::hash<Int>{}(m.a());
    for (Int v : {m.b(), m.c(), m.d()}) h ^= std::hash<Int>{}(v) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    return h;
  }
};

}  // namespace barkfib
