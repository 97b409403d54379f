#pragma once
// Kodaira fiber types, their Euler numbers and standard monodromies, and
// classification of SL(2,Z) elements into Kodaira conjugacy classes.

#include <barkfib/sl2z.hpp>

#include <compare>
#include <cctype>
#include <optional>
#include <string>
#include <string_view>

namespace barkfib {

enum class Kind { I, II, III, IV, IStar, IIStar, IIIStar, IVStar };

/// A Kodaira fiber type. `n` is only meaningful for I and IStar.
/// Multiplicity is carried for mI_n / mI_n^* but monodromy never sees it.
struct FiberClass {
  Kind kind = Kind::I;
  int n = 0;
  int multiplicity = 1;

  static FiberClass I(int n, int m = 1) { return {Kind::I, n, m}; }
  static FiberClass IStar(int n, int m = 1) { return {Kind::IStar, n, m}; }
  static FiberClass II() { return {Kind::II, 0, 1}; }
  static FiberClass III() { return {Kind::III, 0, 1}; }
  static FiberClass IV() { return {Kind::IV, 0, 1}; }
  static FiberClass IIStar() { return {Kind::IIStar, 0, 1}; }
  static FiberClass IIIStar() { return {Kind::IIIStar, 0, 1}; }
  static FiberClass IVStar() { return {Kind::IVStar, 0, 1}; }

  bool has_index() const noexcept { return kind == Kind::I || kind == Kind::IStar; }
  bool is_smooth() const noexcept { return kind == Kind::I && n == 0 && multiplicity == 1; }
  bool is_elliptic() const noexcept { return !has_index(); }

  FiberClass reduced() const noexcept { return {kind, has_index() ? n : 0, 1}; }

  friend bool operator==(const FiberClass&, const FiberClass&) = default;
  friend auto operator<=>(const FiberClass&, const FiberClass&) = default;

  /// Compact form: "I5", "I2*", "II", "III*", "2I3".
  std::string str() const {
    std::string s = multiplicity != 1 ? std::to_string(multiplicity) : "";
    switch (kind) {
      case Kind::I: return s + "I" + std::to_string(n);
      case Kind::IStar: return s + "I" + std::to_string(n) + "*";
      case Kind::II: return s + "II";
      case Kind::III: return s + "III";
      case Kind::IV: return s + "IV";
      case Kind::IIStar: return s + "II*";
      case Kind::IIIStar: return s + "III*";
      case Kind::IVStar: return s + "IV*";
    }
    return s;
  }
};

/// Grammar: [m] I n ['*'] | II['*'] | III['*'] | IV['*'].
inline FiberClass parse_fiber(std::string_view text) {
  auto fail = [&]() -> FiberClass { throw std::invalid_argument("bad fiber class '" + std::string(text) + "'"); };
  std::size_t i = 0;
  int mult = 1;
  if (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
    mult = 0;
    while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
      mult = mult * 10 + (text[i] - '0');
      if (mult > 1000000) return fail();
      ++i;
    }
    if (mult < 1) return fail();
  }
  std::string_view rest = text.substr(i);
  if (rest.empty()) return fail();
  bool star = rest.back() == '*';
  if (star) rest.remove_suffix(1);
  if (rest == "II" || rest == "III" || rest == "IV") {
    if (mult != 1) return fail();
    if (rest == "II") return star ? FiberClass::IIStar() : FiberClass::II();
    if (rest == "III") return star ? FiberClass::IIIStar() : FiberClass::III();
    return star ? FiberClass::IVStar() : FiberClass::IV();
  }
  if (rest.size() < 2 || rest[0] != 'I') return fail();
  int n = 0;
  for (std::size_t k = 1; k < rest.size(); ++k) {
    if (!std::isdigit(static_cast<unsigned char>(rest[k]))) return fail();
    n = n * 10 + (rest[k] - '0');
    if (n > 1000000) return fail();
  }
  return star ? FiberClass::IStar(n, mult) : FiberClass::I(n, mult);
}

/// Euler number of the underlying reduced curve.
inline int euler(const FiberClass& f) noexcept {
  switch (f.kind) {
    case Kind::I: return f.n;
    case Kind::II: return 2;
    case Kind::III: return 3;
    case Kind::IV: return 4;
    case Kind::IStar: return 6 + f.n;
    case Kind::IIStar: return 10;
    case Kind::IIIStar: return 9;
    case Kind::IVStar: return 8;
  }
  return 0;
}

/// Standard monodromy as a word in s0, s2. The letter count equals the
/// Euler number.
inline Word standard_word(const FiberClass& f) {
  const Word s0 = Word::of(Gen::S0), s2 = Word::of(Gen::S2);
  const Word a = s0 * s2;
  switch (f.kind) {
    case Kind::I: return Word::of(Gen::S0, f.n);
    case Kind::II: return a;
    case Kind::III: return a * s0;
    case Kind::IV: return a * a;
    case Kind::IStar: return a.pow(3) * Word::of(Gen::S0, f.n);
    case Kind::IIStar: return a.pow(5);
    case Kind::IIIStar: return a.pow(4) * s0;
    case Kind::IVStar: return a.pow(4);
  }
  return {};
}

inline Mat2 standard_monodromy(const FiberClass& f) { return eval_word(standard_word(f)); }

namespace detail {

/// Signed index n of a parabolic matrix I + N (N nonzero nilpotent), so that
/// m is conjugate to [[1,n],[0,1]].
inline Int parabolic_index(const Mat2& m) {
  Int p = checked::sub(m.a(), 1), q = m.b(), r = m.c(), s = checked::sub(m.d(), 1);
  auto abs = [](Int v) { return v < 0 ? checked::neg(v) : v; };
  Int g = std::gcd(std::gcd(abs(p), abs(q)), std::gcd(abs(r), abs(s)));
  if (r != 0) return r < 0 ? g : -g;
  return q > 0 ? g : -g;
}

}  // namespace detail

/// The Kodaira class whose standard monodromy is SL(2,Z)-conjugate to m, or
/// nullopt when m is in no Kodaira class.
inline std::optional<FiberClass> classify(const Mat2& m) {
  const Int tr = trace(m);
  if (tr == 2) {
    if (m == Mat2::identity()) return FiberClass::I(0);
    Int n = detail::parabolic_index(m);
    if (n > 0 && n <= 1000000) return FiberClass::I(static_cast<int>(n));
    return std::nullopt;
  }
  if (tr == -2) {
    if (m == Mat2::minus_identity()) return FiberClass::IStar(0);
    Int n = detail::parabolic_index(-m);
    if (n > 0 && n <= 1000000) return FiberClass::IStar(static_cast<int>(n));
    return std::nullopt;
  }
  // For elliptic elements the sign of the lower-left entry is a conjugacy
  // invariant; it is nonzero because |trace| < 2.
  const bool positive = m.c() > 0;
  switch (tr) {
    case 1: return positive ? FiberClass::IIStar() : FiberClass::II();
    case 0: return positive ? FiberClass::IIIStar() : FiberClass::III();
    case -1: return positive ? FiberClass::IVStar() : FiberClass::IV();
    default: return std::nullopt;
  }
}

}  // namespace barkfib
