#pragma once
// Stellar singular fibers X0 = m0*Theta0 + sum of branches, subbranches and
// their A_l / B_l / C_l types, core sections, and simple crusts.

#include <barkfib/sl2z.hpp>

#include <algorithm>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace barkfib {

/// m0 > m1 > ... > m_lambda > 0, attached to a core of multiplicity m0.
struct Branch {
  Int core_mult = 1;
  std::vector<Int> mults;

  int length() const noexcept { return static_cast<int>(mults.size()); }

  /// m_i with m_0 the core multiplicity and m_{lambda+1} = 0.
  Int m(int i) const {
    if (i == 0) return core_mult;
    if (i >= 1 && i <= length()) return mults[static_cast<std::size_t>(i - 1)];
    if (i == length() + 1) return 0;
    throw std::out_of_range("branch index " + std::to_string(i));
  }

  /// r_i = (m_{i-1} + m_{i+1}) / m_i; only meaningful for valid branches.
  Int r(int i) const { return (m(i - 1) + m(i + 1)) / m(i); }

  friend bool operator==(const Branch&, const Branch&) = default;
};

/// Branch condition: strictly decreasing positive multiplicities and every r_i an
/// integer greater than one.
inline bool validate_branch(const Branch& b) {
  if (b.core_mult <= 0 || b.mults.empty()) return false;
  Int prev = b.core_mult;
  for (Int x : b.mults) {
    if (x <= 0 || x >= prev) return false;
    prev = x;
  }
  for (int i = 1; i <= b.length(); ++i) {
    Int s = b.m(i - 1) + b.m(i + 1);
    if (s % b.m(i) != 0 || s / b.m(i) <= 1) return false;
  }
  return true;
}

struct StellarFiber {
  std::string name;
  Int core_mult = 1;
  int core_genus = 0;
  std::vector<std::vector<Int>> branches;

  Branch branch(std::size_t j) const { return {core_mult, branches.at(j)}; }
  std::size_t num_branches() const noexcept { return branches.size(); }

  Int sum_first_mults() const {
    Int s = 0;
    for (const auto& b : branches) s += b.at(0);
    return s;
  }
};

/// Empty when X0 is a valid stellar fiber; otherwise a list of problems.
inline std::vector<std::string> validate_stellar(const StellarFiber& x) {
  std::vector<std::string> errs;
  if (x.core_mult <= 0) errs.push_back("core multiplicity must be positive");
  if (x.core_genus < 0) errs.push_back("core genus must be nonnegative");
  if (x.branches.empty()) errs.push_back("at least one branch is required");
  for (std::size_t j = 0; j < x.branches.size(); ++j)
    if (!validate_branch(x.branch(j))) errs.push_back("branch " + std::to_string(j + 1) + " violates the branch condition");
  if (errs.empty() && x.sum_first_mults() % x.core_mult != 0)
    errs.push_back("sum of first branch multiplicities is not divisible by the core multiplicity");
  return errs;
}

/// n0*Delta0 + n1*Theta1 + ... + n_nu*Theta_nu inside a fringed branch.
struct Subbranch {
  Int n0 = 1;
  std::vector<Int> values;
  Branch parent;

  int nu() const noexcept { return static_cast<int>(values.size()); }

  /// n_i with n_0 = n0; n_{nu+1} is the sentinel.
  Int n(int i) const;
};

/// n_{nu+1} := r_nu n_nu - n_{nu-1}, or 0 when nu = 0.
inline Int extend_subbranch(const Subbranch& sb) {
  const int nu = sb.nu();
  if (nu == 0) return 0;
  const Int prev = nu == 1 ? sb.n0 : sb.values[static_cast<std::size_t>(nu - 2)];
  return checked::sub(checked::mul(sb.parent.r(nu), sb.values.back()), prev);
}

inline Int Subbranch::n(int i) const {
  if (i == 0) return n0;
  if (i >= 1 && i <= nu()) return values[static_cast<std::size_t>(i - 1)];
  if (i == nu() + 1) return extend_subbranch(*this);
  throw std::out_of_range("subbranch index " + std::to_string(i));
}

inline bool validate_subbranch(const Subbranch& sb) {
  if (!validate_branch(sb.parent) || sb.n0 <= 0) return false;
  if (sb.nu() > sb.parent.length()) return false;
  for (int i = 1; i <= sb.nu(); ++i)
    if (sb.n(i) <= 0 || sb.n(i) > sb.parent.m(i)) return false;
  for (int i = 1; i + 1 <= sb.nu(); ++i)
    if (sb.n(i + 1) != sb.parent.r(i) * sb.n(i) - sb.n(i - 1)) return false;
  return true;
}

enum class SubbranchType { A, B, C };

inline const char* subbranch_type_str(SubbranchType t) {
  switch (t) {
    case SubbranchType::A: return "A";
    case SubbranchType::B: return "B";
    case SubbranchType::C: return "C";
  }
  return "?";
}

/// Every type among A_l, B_l, C_l that sb satisfies. Empty means sb cannot
/// appear in a simple crust of barking multiplicity l.
inline std::vector<SubbranchType> classify_subbranch(const Subbranch& sb, Int l) {
  if (l <= 0) throw std::invalid_argument("barking multiplicity must be positive");
  std::vector<SubbranchType> out;
  for (int i = 0; i <= sb.nu(); ++i)
    if (l * sb.n(i) > sb.parent.m(i)) return out;
  const int nu = sb.nu();
  const Int next = extend_subbranch(sb);
  if (next <= 0) out.push_back(SubbranchType::A);
  if (sb.n(nu) == 1 && sb.parent.m(nu) == l) out.push_back(SubbranchType::B);
  if (sb.n(nu) == next) {
    Int gap = sb.parent.m(nu) - sb.parent.m(nu + 1);
    if (gap != 0 && l % gap == 0) out.push_back(SubbranchType::C);
  }
  return out;
}

/// m0 n1 = n0 m1; a subbranch with nu = 0 is never proportional.
inline bool is_proportional(const Subbranch& sb) {
  if (sb.nu() == 0) return false;
  return sb.parent.core_mult * sb.values.front() == sb.n0 * sb.parent.mults.front();
}

struct CoreSection {
  bool exists = false;
  /// Degree of the zero divisor D of the core section; valid when exists.
  Int zero_degree = 0;
  /// r0 and r0' as exact fractions num/den.
  Int r0_num = 0, r0_den = 1, r0p_num = 0, r0p_den = 1;
};

/// Core section existence on a rational core: exists iff r0 <= r0', with
/// deg D = n0 (r0' - r0). first_values holds n1 of each subbranch (0 for
/// nu = 0).
inline CoreSection core_section_exists(const StellarFiber& x, Int n0, const std::vector<Int>& first_values) {
  if (x.core_genus != 0) throw std::invalid_argument("core section criterion needs a rational core (genus 0)");
  if (first_values.size() != x.num_branches()) throw std::invalid_argument("one first value per branch is required");
  if (n0 <= 0) throw std::invalid_argument("n0 must be positive");
  Int sum_n1 = 0;
  for (Int v : first_values) sum_n1 += v;
  const Int sum_m1 = x.sum_first_mults();
  CoreSection cs;
  cs.r0_num = sum_m1;
  cs.r0_den = x.core_mult;
  cs.r0p_num = sum_n1;
  cs.r0p_den = n0;
  // r0 <= r0'  <=>  sum_m1 * n0 <= sum_n1 * m0
  cs.exists = checked::mul(sum_m1, n0) <= checked::mul(sum_n1, x.core_mult);
  if (cs.exists) {
    const Int num = checked::sub(checked::mul(sum_n1, x.core_mult), checked::mul(n0, sum_m1));
    if (num % x.core_mult != 0) throw std::invalid_argument("core degree is not integral; fiber data is inconsistent");
    cs.zero_degree = num / x.core_mult;
  }
  return cs;
}

struct SimpleCrust {
  Int n0 = 1;
  std::vector<std::vector<Int>> subbranches;
  Int l = 1;

  friend bool operator==(const SimpleCrust&, const SimpleCrust&) = default;

  Subbranch subbranch(const StellarFiber& x, std::size_t j) const { return {n0, subbranches.at(j), x.branch(j)}; }

  std::vector<Int> first_values() const {
    std::vector<Int> v;
    for (const auto& s : subbranches) v.push_back(s.empty() ? 0 : s.front());
    return v;
  }
};

/// Empty when Y is a simple crust of X0 with multiplicity Y.l.
inline std::vector<std::string> validate_simple_crust(const StellarFiber& x, const SimpleCrust& y) {
  std::vector<std::string> errs = validate_stellar(x);
  if (!errs.empty()) return errs;
  if (y.l <= 0) errs.push_back("barking multiplicity must be positive");
  if (y.n0 <= 0 || y.n0 >= x.core_mult) errs.push_back("need 0 < n0 < m0");
  if (y.subbranches.size() != x.num_branches()) {
    errs.push_back("one subbranch per branch is required");
    return errs;
  }
  if (!errs.empty()) return errs;
  for (std::size_t j = 0; j < x.num_branches(); ++j) {
    auto sb = y.subbranch(x, j);
    if (!validate_subbranch(sb))
      errs.push_back("subbranch " + std::to_string(j + 1) + " is not a subbranch");
    else if (classify_subbranch(sb, y.l).empty())
      errs.push_back("subbranch " + std::to_string(j + 1) + " is not of type A, B or C");
  }
  if (x.core_genus == 0 && !core_section_exists(x, y.n0, y.first_values()).exists)
    errs.push_back("no core section (r0 > r0')");
  return errs;
}

namespace detail {

/// All subbranches of `parent` with the given n0, in order of (nu, n1).
inline std::vector<std::vector<Int>> subbranch_candidates(const Branch& parent, Int n0) {
  std::vector<std::vector<Int>> out{{}};
  for (int nu = 1; nu <= parent.length(); ++nu) {
    for (Int n1 = 1; n1 <= parent.m(1); ++n1) {
      std::vector<Int> vals{n1};
      bool ok = true;
      Int prev = n0, cur = n1;
      for (int i = 1; i < nu; ++i) {
        Int next = parent.r(i) * cur - prev;
        if (next <= 0 || next > parent.m(i + 1)) {
          ok = false;
          break;
        }
        vals.push_back(next);
        prev = cur;
        cur = next;
      }
      if (ok) out.push_back(std::move(vals));
    }
  }
  return out;
}

}  // namespace detail

/// Every simple crust of X0 with barking multiplicity l, ordered by n0 and
/// then lexicographically by the per-branch choice (nu, n1).
inline std::vector<SimpleCrust> enumerate_simple_crusts(const StellarFiber& x, Int l) {
  if (auto errs = validate_stellar(x); !errs.empty()) throw std::invalid_argument(errs.front());
  if (l <= 0) throw std::invalid_argument("barking multiplicity must be positive");
  std::vector<SimpleCrust> out;
  const std::size_t h = x.num_branches();
  for (Int n0 = 1; n0 < x.core_mult; ++n0) {
    std::vector<std::vector<std::vector<Int>>> choices(h);
    for (std::size_t j = 0; j < h; ++j) {
      for (auto& vals : detail::subbranch_candidates(x.branch(j), n0)) {
        Subbranch sb{n0, vals, x.branch(j)};
        if (!classify_subbranch(sb, l).empty()) choices[j].push_back(std::move(vals));
      }
    }
    if (std::any_of(choices.begin(), choices.end(), [](const auto& c) { return c.empty(); })) continue;
    std::vector<std::size_t> idx(h, 0);
    bool done = false;
    while (!done) {
      SimpleCrust y{n0, {}, l};
      for (std::size_t j = 0; j < h; ++j) y.subbranches.push_back(choices[j][idx[j]]);
      if (x.core_genus != 0 || core_section_exists(x, n0, y.first_values()).exists) out.push_back(std::move(y));
      // odometer over per-branch choices
      std::size_t j = h;
      while (true) {
        if (j == 0) {
          done = true;
          break;
        }
        --j;
        if (++idx[j] < choices[j].size()) break;
        idx[j] = 0;
      }
    }
  }
  return out;
}

}  // namespace barkfib
