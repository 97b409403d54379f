#pragma once
// Euler accounting for splittings, trace obstructions to monodromy
// decompositions, and explicit factorization witnesses.

#include <barkfib/kodaira.hpp>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

namespace barkfib {

using FiberMultiset = std::vector<FiberClass>;

/// Display and tie-break order for subordinate classes: III, II, then I_n
/// with larger n first. Remaining kinds follow.
inline auto subordinate_key(const FiberClass& f) {
  int rank = 0;
  switch (f.kind) {
    case Kind::III: rank = 0; break;
    case Kind::II: rank = 1; break;
    case Kind::I: rank = 2; break;
    case Kind::IV: rank = 3; break;
    case Kind::IStar: rank = 4; break;
    case Kind::IIStar: rank = 5; break;
    case Kind::IIIStar: rank = 6; break;
    case Kind::IVStar: rank = 7; break;
  }
  return std::tuple{rank, -f.n, f.multiplicity};
}

inline FiberMultiset canonical(FiberMultiset ms) {
  std::sort(ms.begin(), ms.end(),
            [](const FiberClass& x, const FiberClass& y) { return subordinate_key(x) < subordinate_key(y); });
  return ms;
}

inline bool multiset_less(const FiberMultiset& x, const FiberMultiset& y) {
  if (x.size() != y.size()) return x.size() < y.size();
  return std::lexicographical_compare(
      x.begin(), x.end(), y.begin(), y.end(),
      [](const FiberClass& p, const FiberClass& q) { return subordinate_key(p) < subordinate_key(q); });
}

inline std::string multiset_str(const FiberMultiset& ms) {
  if (ms.empty()) return "-";
  std::string s;
  for (std::size_t i = 0; i < ms.size(); ++i) s += (i ? " + " : "") + ms[i].str();
  return s;
}

inline int euler_sum(const FiberMultiset& ms) {
  int e = 0;
  for (const auto& f : ms) e += euler(f);
  return e;
}

/// Total Euler number carried by the subordinate fibers. For genus g the
/// accounting is e(X0) - 2(1-g) = sum of e(X_i) - 2(1-g) over all fibers;
/// the main fiber's term is subtracted.
inline int euler_deficit(const FiberClass& original, const FiberClass& main, int genus = 1) {
  if (genus < 1) throw std::invalid_argument("genus must be at least 1");
  const int shift = 2 * (1 - genus);
  const int deficit = (euler(original) - shift) - (euler(main) - shift);
  if (deficit < 0)
    throw std::invalid_argument("main fiber " + main.str() + " has larger Euler number than " + original.str());
  return deficit;
}

/// All multisets of admissible subordinate classes (I_n with n >= 1, II,
/// III) whose Euler numbers sum to `deficit`, ordered by size and then by
/// subordinate_key.
inline std::vector<FiberMultiset> enumerate_multisets(int deficit) {
  if (deficit < 1) throw std::invalid_argument("deficit must be positive");
  // Admissible classes in key order.
  std::vector<FiberClass> pool{FiberClass::III(), FiberClass::II()};
  for (int n = deficit; n >= 1; --n) pool.push_back(FiberClass::I(n));

  std::vector<FiberMultiset> out;
  FiberMultiset cur;
  auto rec = [&](auto&& self, std::size_t start, int remaining) -> void {
    if (remaining == 0) {
      out.push_back(cur);
      return;
    }
    for (std::size_t i = start; i < pool.size(); ++i) {
      int e = euler(pool[i]);
      if (e > remaining) continue;
      cur.push_back(pool[i]);
      self(self, i, remaining - e);
      cur.pop_back();
    }
  };
  rec(rec, 0, deficit);
  std::sort(out.begin(), out.end(), multiset_less);
  return out;
}

enum class Verdict { Forbidden, Undecided };

inline const char* verdict_str(Verdict v) { return v == Verdict::Forbidden ? "forbidden" : "undecided"; }

struct ObstructionResult {
  Verdict verdict = Verdict::Undecided;
  std::string rule;
  std::string detail;
};

/// Necessary condition on the lower-left entry c of any SL(2,Z) conjugate of
/// the standard monodromy of f. Conjugates of s0^n have c = -n*g^2; those of
/// -s0^n have c = n*g^2; for elliptic classes c is nonzero with a sign fixed
/// by the class.
inline bool lower_left_admissible(const FiberClass& f, Int c) {
  auto is_square = [](Int v) {
    if (v < 0) return false;
    auto r = static_cast<Int>(std::llround(std::sqrt(static_cast<double>(v))));
    for (Int k = std::max<Int>(0, r - 2); k <= r + 2; ++k)
      if (k * k == v) return true;
    return false;
  };
  switch (f.kind) {
    case Kind::I:
      if (f.n == 0) return c == 0;
      return c <= 0 && (-c) % f.n == 0 && is_square(-c / f.n);
    case Kind::IStar:
      if (f.n == 0) return c == 0;
      return c >= 0 && c % f.n == 0 && is_square(c / f.n);
    case Kind::II:
    case Kind::III:
    case Kind::IV: return c < 0;
    case Kind::IIStar:
    case Kind::IIIStar:
    case Kind::IVStar: return c > 0;
  }
  return false;
}

/// target -> I_k + other. Conjugating so that the I_k factor is exactly s0^k,
/// the other factor A = [[a,b],[c,d]] satisfies Tr(target) = Tr(A) + k*c, and
/// c is the lower-left entry of both A and the product. Forbidden when no
/// integer c exists or the forced c is impossible for either class.
inline ObstructionResult obstruction_I_k_pair(const FiberClass& target, int k, const FiberClass& other) {
  if (k < 1) throw std::invalid_argument("k must be positive");
  const Int tt = trace(standard_monodromy(target));
  const Int to = trace(standard_monodromy(other));
  ObstructionResult r;
  r.rule = "I_k pair trace congruence";
  const Int diff = tt - to;
  if (diff % k != 0) {
    r.verdict = Verdict::Forbidden;
    r.detail = "Tr(" + other.str() + ")=" + std::to_string(to) + " is not congruent to Tr(" + target.str() +
               ")=" + std::to_string(tt) + " mod " + std::to_string(k);
    return r;
  }
  const Int c = diff / k;
  if (!lower_left_admissible(other, c) || !lower_left_admissible(target, c)) {
    r.verdict = Verdict::Forbidden;
    r.detail = "forced lower-left entry c=" + std::to_string(c) + " is impossible for " +
               (!lower_left_admissible(other, c) ? other.str() : target.str());
    return r;
  }
  r.detail = "lower-left entry c=" + std::to_string(c) + " admissible";
  return r;
}

inline bool is_central_target(const FiberClass& target) {
  return standard_monodromy(target) == Mat2::minus_identity();
}

/// -I -> x1 + x2 forces A1 = -A2^{-1}, hence Tr(x1) = -Tr(x2).
inline ObstructionResult obstruction_central_pair(const FiberClass& target, const FiberClass& x1,
                                                  const FiberClass& x2) {
  if (!is_central_target(target)) throw std::invalid_argument(target.str() + " does not have central monodromy");
  const Int t1 = trace(standard_monodromy(x1)), t2 = trace(standard_monodromy(x2));
  ObstructionResult r;
  r.rule = "central pair trace";
  if (t1 != -t2) {
    r.verdict = Verdict::Forbidden;
    r.detail = "Tr(" + x1.str() + ")=" + std::to_string(t1) + " != -Tr(" + x2.str() + ")=" + std::to_string(-t2);
  } else {
    r.detail = "traces are opposite";
  }
  return r;
}

/// -I -> I_k + x1 + x2: s0^k A1 = -A2^{-1} in either order, so
/// Tr(x1) + k*c = -Tr(x2) for an integer c.
inline ObstructionResult obstruction_central_triple_I_k(const FiberClass& target, int k, const FiberClass& x1,
                                                        const FiberClass& x2) {
  if (!is_central_target(target)) throw std::invalid_argument(target.str() + " does not have central monodromy");
  if (k < 1) throw std::invalid_argument("k must be positive");
  const Int t1 = trace(standard_monodromy(x1)), t2 = trace(standard_monodromy(x2));
  ObstructionResult r;
  r.rule = "central triple trace congruence";
  if ((t1 + t2) % k != 0) {
    r.verdict = Verdict::Forbidden;
    r.detail = std::to_string(k) + " does not divide Tr(" + x1.str() + ")+Tr(" + x2.str() +
               ")=" + std::to_string(t1 + t2);
  } else {
    r.detail = std::to_string(k) + " divides Tr(" + x1.str() + ")+Tr(" + x2.str() + ")";
  }
  return r;
}

/// Every obstruction whose hypotheses match `target -> parts`.
inline std::vector<ObstructionResult> applicable_obstructions(const FiberClass& target, const FiberMultiset& parts) {
  std::vector<ObstructionResult> out;
  auto is_Ik = [](const FiberClass& f) { return f.kind == Kind::I && f.n >= 1 && f.multiplicity == 1; };
  if (parts.size() == 2) {
    for (int i = 0; i < 2; ++i) {
      if (is_Ik(parts[i]) && (i == 0 || !(parts[0] == parts[1])))
        out.push_back(obstruction_I_k_pair(target, parts[i].n, parts[1 - i]));
    }
    if (is_central_target(target)) out.push_back(obstruction_central_pair(target, parts[0], parts[1]));
  } else if (parts.size() == 3 && is_central_target(target)) {
    for (int i = 0; i < 3; ++i) {
      if (!is_Ik(parts[i])) continue;
      const auto& x1 = parts[(i + 1) % 3];
      const auto& x2 = parts[(i + 2) % 3];
      out.push_back(obstruction_central_triple_I_k(target, parts[i].n, x1, x2));
    }
  }
  return out;
}

inline bool is_forbidden(const std::vector<ObstructionResult>& rs) {
  return std::any_of(rs.begin(), rs.end(), [](const auto& r) { return r.verdict == Verdict::Forbidden; });
}

struct WitnessFactor {
  FiberClass base;
  Word conjugator;
};

/// target's standard monodromy as an ordered product of conjugated standard
/// monodromies.
struct FactorizationWitness {
  std::vector<WitnessFactor> factors;
  FiberClass target;

  Mat2 product() const {
    Mat2 p;
    for (const auto& f : factors) p = p * conj(standard_monodromy(f.base), eval_word(f.conjugator));
    return p;
  }

  FiberMultiset parts() const {
    FiberMultiset ms;
    for (const auto& f : factors) ms.push_back(f.base);
    return canonical(ms);
  }

  std::string str() const {
    std::string s = target.str() + " =";
    for (const auto& f : factors) {
      s += " A[" + f.base.str() + "]";
      if (!f.conjugator.empty()) s += "^(" + f.conjugator.str() + ")";
    }
    return s;
  }
};

inline bool verify_witness(const FactorizationWitness& w) {
  try {
    return w.product() == standard_monodromy(w.target);
  } catch (const std::overflow_error&) {
    return false;
  }
}

class SearchBudgetExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct SearchOptions {
  int max_conj_len = 8;
  int max_exp = 8;
  std::uint64_t node_budget = 10'000'000;
  std::size_t max_table_entries = 2'000'000;
};

namespace detail {

/// All normalized words of length <= len with exponents in [-e, e], shortest first.
inline std::vector<Word> conjugator_words(int len, int e, std::uint64_t& nodes, std::uint64_t budget) {
  std::vector<Word> out{Word{}};
  std::vector<Word> frontier{Word{}};
  for (int l = 1; l <= len; ++l) {
    std::vector<Word> next;
    for (const auto& w : frontier) {
      for (Gen g : {Gen::S0, Gen::S2}) {
        if (!w.empty() && w.letters().back().gen == g) continue;
        for (Int x = -e; x <= e; ++x) {
          if (x == 0) continue;
          if (++nodes > budget) throw SearchBudgetExceeded("factorization search exceeded node budget");
          Word v = w;
          v.push(g, x);
          next.push_back(std::move(v));
        }
      }
    }
    out.insert(out.end(), next.begin(), next.end());
    frontier = std::move(next);
  }
  return out;
}

struct ConjugateTable {
  std::vector<Mat2> mats;
  std::vector<Word> words;
};

inline ConjugateTable conjugates(const FiberClass& f, const std::vector<Word>& words) {
  ConjugateTable t;
  std::unordered_map<Mat2, std::size_t, Mat2Hash> seen;
  const Mat2 base = standard_monodromy(f);
  for (const auto& w : words) {
    try {
      Mat2 m = conj(base, eval_word(w));
      if (seen.emplace(m, t.mats.size()).second) {
        t.mats.push_back(m);
        t.words.push_back(w);
      }
    } catch (const std::overflow_error&) {
    }
  }
  return t;
}

}  // namespace detail

/// Exhaustive search for a factorization of target into conjugates of the
/// given parts, with conjugator words bounded by `opt`. Bounds grow
/// iteratively so short witnesses are found first. nullopt is not a proof of
/// impossibility.
inline std::optional<FactorizationWitness> search_factorization(const FiberClass& target, FiberMultiset parts,
                                                                const SearchOptions& opt = {}) {
  if (opt.max_conj_len < 0 || opt.max_exp < 0) throw std::invalid_argument("search bounds must be nonnegative");
  if (parts.empty()) {
    if (standard_monodromy(target) == Mat2::identity()) return FactorizationWitness{{}, target};
    return std::nullopt;
  }
  std::sort(parts.begin(), parts.end());
  const Mat2 goal = standard_monodromy(target);
  std::uint64_t nodes = 0;
  auto tick = [&]() {
    if (++nodes > opt.node_budget) throw SearchBudgetExceeded("factorization search exceeded node budget");
  };

  const int top = std::max(opt.max_conj_len, opt.max_exp);
  int prev_len = -1, prev_exp = -1;
  for (int level = 0; level <= top; ++level) {
    const int len = std::min(level, opt.max_conj_len);
    const int e = std::min(std::max(level, 1), std::max(opt.max_exp, 1));
    if (len == prev_len && e == prev_exp) continue;
    prev_len = len;
    prev_exp = e;
    if (opt.max_exp == 0 && len > 0) break;

    const auto words = detail::conjugator_words(len, e, nodes, opt.node_budget);
    std::vector<FiberClass> distinct;
    std::vector<detail::ConjugateTable> tables;
    for (const auto& p : parts) {
      if (std::find(distinct.begin(), distinct.end(), p) != distinct.end()) continue;
      distinct.push_back(p);
      tables.push_back(detail::conjugates(p, words));
      nodes += tables.back().mats.size();
      if (nodes > opt.node_budget) throw SearchBudgetExceeded("factorization search exceeded node budget");
    }
    auto table_of = [&](const FiberClass& f) -> const detail::ConjugateTable& {
      return tables[std::find(distinct.begin(), distinct.end(), f) - distinct.begin()];
    };

    std::vector<FiberClass> order = parts;
    do {
      const std::size_t n = order.size();
      const std::size_t half = n / 2;
      // Right half: every product of conjugates of order[half..n).
      std::unordered_map<Mat2, std::vector<std::uint32_t>, Mat2Hash> right;
      std::vector<std::uint32_t> pick(n, 0);
      auto build_right = [&](auto&& self, std::size_t i, const Mat2& acc) -> void {
        if (i == n) {
          if (right.size() >= opt.max_table_entries)
            throw SearchBudgetExceeded("factorization search exceeded table capacity");
          right.emplace(acc, std::vector<std::uint32_t>(pick.begin() + half, pick.end()));
          return;
        }
        const auto& t = table_of(order[i]);
        for (std::uint32_t j = 0; j < t.mats.size(); ++j) {
          tick();
          pick[i] = j;
          try {
            self(self, i + 1, acc * t.mats[j]);
          } catch (const std::overflow_error&) {
          }
        }
      };
      build_right(build_right, half, Mat2::identity());

      std::optional<FactorizationWitness> found;
      auto walk_left = [&](auto&& self, std::size_t i, const Mat2& acc) -> bool {
        if (i == half) {
          tick();
          try {
            auto it = right.find(inverse(acc) * goal);
            if (it == right.end()) return false;
            FactorizationWitness w{{}, target};
            for (std::size_t k = 0; k < n; ++k) {
              std::uint32_t j = k < half ? pick[k] : it->second[k - half];
              w.factors.push_back({order[k], table_of(order[k]).words[j]});
            }
            if (!verify_witness(w)) return false;
            found = std::move(w);
            return true;
          } catch (const std::overflow_error&) {
            return false;
          }
        }
        const auto& t = table_of(order[i]);
        for (std::uint32_t j = 0; j < t.mats.size(); ++j) {
          tick();
          pick[i] = j;
          try {
            if (self(self, i + 1, acc * t.mats[j])) return true;
          } catch (const std::overflow_error&) {
          }
        }
        return false;
      };
      if (walk_left(walk_left, 0, Mat2::identity())) return found;
    } while (std::next_permutation(order.begin(), order.end()));
  }
  return std::nullopt;
}

/// A factorization identity taken from the standard splittability tables,
/// stored in conjugator form.
struct NamedIdentity {
  std::string name;
  FactorizationWitness witness;
};

namespace detail {

inline WitnessFactor wf(const char* base, const char* conj = "") { return {parse_fiber(base), parse_word(conj)}; }

}  // namespace detail

/// The splittability identities for II, III, IV, II*, III*, IV*, I0* and
/// I_n* (n = 1..6). Conjugation convention: A^g = g A g^-1.
inline std::vector<NamedIdentity> splittability_identities() {
  using detail::wf;
  auto id = [](const char* target, std::vector<WitnessFactor> fs) {
    FactorizationWitness w{std::move(fs), parse_fiber(target)};
    return NamedIdentity{target + std::string(" -> ") + multiset_str(w.parts()), w};
  };
  std::vector<NamedIdentity> t{
      id("II", {wf("I1"), wf("I1", "s0 s2")}),
      id("III", {wf("II"), wf("I1")}),
      id("III", {wf("I2"), wf("I1", "s2")}),
      id("IV", {wf("II"), wf("II")}),
      id("IV", {wf("I2"), wf("II", "s2")}),
      id("IV", {wf("III"), wf("I1", "s0 s2")}),
      id("IV", {wf("I3"), wf("I1", "s2")}),
      id("II*", {wf("IV*"), wf("II")}),
      id("II*", {wf("I2*"), wf("I1", "s2"), wf("I1", "s0 s2")}),
      id("II*", {wf("I5"), wf("I1", "s2"), wf("I1"), wf("I1", "s0 s2"), wf("I1", "s0 s2"), wf("I1")}),
      id("II*", {wf("I8"), wf("I1", "s0^-1 s2"), wf("I1", "s0^-1 s2^-2")}),
      id("III*", {wf("I1*", "s2^-1"), wf("I2")}),
      id("III*", {wf("I0*"), wf("I1"), wf("I1", "s0 s2"), wf("I1")}),
      id("III*", {wf("I7"), wf("I1", "s0^-4 s2"), wf("I1", "s0^-1 s2")}),
      id("III*", {wf("I6"), wf("II", "s0^-4 s2"), wf("I1", "s0^-1 s2")}),
      id("III*", {wf("I6"), wf("I1", "s0^-2 s2"), wf("I2", "s2")}),
      id("IV*", {wf("I0*"), wf("I1"), wf("I1", "s0 s2")}),
      id("IV*", {wf("I6"), wf("I1", "s0^-3 s2"), wf("I1", "s2")}),
      id("I0*", {wf("I4"), wf("I1", "s0^-1 s2"), wf("I1", "s0 s2")}),
      id("I0*", {wf("I3"), wf("II", "s0^-1 s2"), wf("I1", "s0 s2")}),
  };
  for (int n = 1; n <= 6; ++n) {
    std::string target = "I" + std::to_string(n) + "*";
    std::string big = "I" + std::to_string(n + 4);
    t.push_back(id(target.c_str(), {wf("I1", "s0 s2"), wf("I1", "s0^3 s2"), wf(big.c_str())}));
  }
  return t;
}

/// The decompositions ruled out by trace arguments, as (target, parts).
inline std::vector<std::pair<FiberClass, FiberMultiset>> known_forbidden_decompositions(int n_star = 1) {
  auto F = [](const char* s) { return parse_fiber(s); };
  const FiberClass in_star = FiberClass::IStar(n_star);
  const FiberClass big = FiberClass::I(n_star + 4);
  return {
      {F("IV"), {F("I2"), F("I2")}},
      {F("II*"), {F("I8"), F("II")}},
      {F("II*"), {F("I8"), F("I2")}},
      {F("III*"), {F("I7"), F("II")}},
      {F("III*"), {F("I7"), F("I2")}},
      {F("III*"), {F("I6"), F("III")}},
      {F("III*"), {F("I6"), F("I3")}},
      {F("IV*"), {F("I6"), F("II")}},
      {F("IV*"), {F("I6"), F("I2")}},
      {F("I0*"), {F("I4"), F("II")}},
      {F("I0*"), {F("I4"), F("I2")}},
      {F("I0*"), {F("I3"), F("III")}},
      {F("I0*"), {F("I3"), F("I3")}},
      {F("I0*"), {F("I3"), F("I2"), F("I1")}},
      {in_star, {big, F("II")}},
      {in_star, {big, F("I2")}},
  };
}

}  // namespace barkfib
