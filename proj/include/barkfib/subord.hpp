#pragma once
// Subordinate fiber counts from crust data and the final splitting report:
// Euler accounting, trace obstructions, and counting laws combined.

#include <barkfib/crust.hpp>
#include <barkfib/splitting.hpp>

#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace barkfib {

struct CoreInvariantInput {
  int h = 0;
  int v = 0;
  int k = 0;
  int g0 = 0;
  std::vector<Int> ord_terms;
};

/// chi = (h - v) + k + (2 g0 - 2) - sum ord_terms.
inline Int core_invariant(const CoreInvariantInput& in) {
  if (in.v != static_cast<int>(in.ord_terms.size()))
    throw std::invalid_argument("need one order term per proportional subbranch");
  Int chi = Int{in.h} - in.v + in.k + (2 * Int{in.g0} - 2);
  for (Int o : in.ord_terms) chi -= o;
  return chi;
}

enum class Location { NearCore, NearProportionalEdge };
enum class Basis { Chi1, ProportionalChi0, General };

inline const char* location_str(Location l) { return l == Location::NearCore ? "near_core" : "near_proportional_edge"; }
inline const char* basis_str(Basis b) {
  switch (b) {
    case Basis::Chi1: return "chi1";
    case Basis::ProportionalChi0: return "proportional_chi0";
    case Basis::General: return "general";
  }
  return "?";
}

struct SubordinateProfile {
  Int num_fibers = 0;
  Int sings_per_fiber = 0;
  Location location = Location::NearCore;
  Basis basis = Basis::General;
};

/// A counting hypothesis does not hold; `condition` names the failed one.
class HypothesisViolation : public std::invalid_argument {
 public:
  HypothesisViolation(std::string condition, const std::string& what)
      : std::invalid_argument(what), condition_(std::move(condition)) {}
  const std::string& condition() const noexcept { return condition_; }

 private:
  std::string condition_;
};

/// Number of subordinate fibers with singularities and singularities per
/// fiber, for a rational core with three branches, a core section without
/// zeros, and at most one proportional subbranch.
inline SubordinateProfile predict_counts(const StellarFiber& x, const SimpleCrust& y) {
  if (auto errs = validate_simple_crust(x, y); !errs.empty())
    throw std::invalid_argument("not a simple crust: " + errs.front());
  if (x.core_genus != 0) throw HypothesisViolation("rational_core", "core is not a projective line");
  if (x.num_branches() != 3) throw HypothesisViolation("three_branches", "core does not carry exactly three branches");
  if (core_section_exists(x, y.n0, y.first_values()).zero_degree != 0)
    throw HypothesisViolation("no_core_zero", "core section has zeros (r0 < r0')");
  std::vector<std::size_t> prop;
  for (std::size_t j = 0; j < x.num_branches(); ++j)
    if (is_proportional(y.subbranch(x, j))) prop.push_back(j);
  if (prop.size() > 1) throw HypothesisViolation("at_most_one_proportional", "more than one proportional subbranch");

  SubordinateProfile p;
  if (prop.empty()) {
    const Int g = std::gcd(x.core_mult, y.n0);
    p.num_fibers = y.n0 / g;
    p.sings_per_fiber = g;
    p.location = Location::NearCore;
    p.basis = Basis::Chi1;
  } else {
    const auto sb = y.subbranch(x, prop.front());
    const Int m = sb.parent.m(sb.nu()), n = sb.n(sb.nu());
    const Int g = std::gcd(m, n);
    p.num_fibers = n / g;
    p.sings_per_fiber = g;
    p.location = Location::NearProportionalEdge;
    p.basis = Basis::ProportionalChi0;
  }
  return p;
}

/// Upper bounds (fibers, singularities per fiber) near the core: (n0bar chi,
/// (n0 / n0bar) chi), with negative chi treated as zero.
inline std::pair<Int, Int> count_bounds(const CoreInvariantInput& in, Int m0, Int n0) {
  if (m0 <= 0 || n0 <= 0) throw std::invalid_argument("m0 and n0 must be positive");
  const Int chi = std::max<Int>(0, core_invariant(in));
  const Int g = std::gcd(m0, n0);
  return {(n0 / g) * chi, g * chi};
}

/// Subordinate multisets compatible with a profile: each fiber carries
/// sings_per_fiber A-singularities, Milnor numbers sum to the deficit, and a
/// fiber is I_sigma (all nodes), II (one cusp) or III (one tacnode).
inline std::vector<FiberMultiset> determine_types(const SubordinateProfile& p, Int deficit) {
  if (p.num_fibers < 1 || p.sings_per_fiber < 1) throw std::invalid_argument("profile needs at least one singularity");
  if (deficit < p.num_fibers * p.sings_per_fiber)
    throw std::invalid_argument("deficit is smaller than the number of singularities");
  std::vector<FiberMultiset> out;
  if (p.sings_per_fiber >= 2) {
    if (p.num_fibers * p.sings_per_fiber == deficit)
      out.push_back(FiberMultiset(static_cast<std::size_t>(p.num_fibers),
                                  FiberClass::I(static_cast<int>(p.sings_per_fiber))));
  } else {
    // one singularity per fiber, Milnor number 1, 2 or 3
    for (Int a3 = 0; 3 * a3 <= deficit && a3 <= p.num_fibers; ++a3)
      for (Int a2 = 0; a3 + a2 <= p.num_fibers; ++a2) {
        Int a1 = p.num_fibers - a3 - a2;
        if (a1 + 2 * a2 + 3 * a3 != deficit) continue;
        FiberMultiset ms;
        ms.insert(ms.end(), static_cast<std::size_t>(a3), FiberClass::III());
        ms.insert(ms.end(), static_cast<std::size_t>(a2), FiberClass::II());
        ms.insert(ms.end(), static_cast<std::size_t>(a1), FiberClass::I(1));
        out.push_back(canonical(ms));
      }
  }
  if (out.empty()) throw std::invalid_argument("no distribution of Milnor numbers fits the deficit");
  std::sort(out.begin(), out.end(), multiset_less);
  return out;
}

struct CandidateEvidence {
  FiberMultiset candidate;
  bool excluded = false;
  /// "obstruction" (proof), "count" (crust counting law) or "retained".
  std::string basis;
  std::vector<std::string> notes;
};

struct SplittingReport {
  std::string id;
  FiberClass original;
  FiberClass main;
  int deficit = 0;
  std::optional<SubordinateProfile> profile;
  std::vector<CandidateEvidence> candidates;
  std::vector<FiberMultiset> determined;
  std::vector<std::string> evidence;

  bool ambiguous() const noexcept { return determined.size() > 1; }
};

struct CrustInput {
  StellarFiber fiber;
  SimpleCrust crust;
};

/// Euler deficit, candidate enumeration, obstruction filtering, and (when a
/// crust satisfying the counting hypotheses is supplied) refinement by the
/// counting law.
inline SplittingReport full_report(const FiberClass& original, const FiberClass& main,
                                   const std::optional<CrustInput>& crust = std::nullopt) {
  SplittingReport r;
  r.original = original;
  r.main = main;
  r.deficit = euler_deficit(original, main);
  if (r.deficit == 0) throw std::invalid_argument("main fiber has the same Euler number as the original");
  r.evidence.push_back("euler: e(" + original.str() + ") - e(" + main.str() + ") = " + std::to_string(r.deficit));

  std::optional<std::vector<FiberMultiset>> counted;
  if (crust) {
    try {
      r.profile = predict_counts(crust->fiber, crust->crust);
      counted = determine_types(*r.profile, r.deficit);
      r.evidence.push_back("count: " + std::to_string(r.profile->num_fibers) + " subordinate fiber(s) x " +
                           std::to_string(r.profile->sings_per_fiber) + " singularit" +
                           (r.profile->sings_per_fiber == 1 ? "y" : "ies") + " (" + basis_str(r.profile->basis) +
                           ", n0=" + std::to_string(crust->crust.n0) + ")");
    } catch (const HypothesisViolation& e) {
      r.evidence.push_back(std::string("count: hypothesis '") + e.condition() + "' fails; counting law not applied");
    }
  } else {
    r.evidence.push_back("count: no simple crust data; deficit and obstructions only");
  }

  for (auto& ms : enumerate_multisets(r.deficit)) {
    CandidateEvidence ce;
    ce.candidate = ms;
    FiberMultiset whole = ms;
    whole.push_back(main);
    auto obs = applicable_obstructions(original, canonical(whole));
    for (const auto& o : obs) {
      if (o.verdict == Verdict::Forbidden) {
        ce.excluded = true;
        ce.basis = "obstruction";
        ce.notes.push_back(o.rule + ": " + o.detail);
      }
    }
    if (!ce.excluded && counted) {
      bool ok = std::find(counted->begin(), counted->end(), ms) != counted->end();
      if (!ok) {
        ce.excluded = true;
        ce.basis = "count";
        ce.notes.push_back("incompatible with " + std::to_string(r.profile->num_fibers) + " x " +
                           std::to_string(r.profile->sings_per_fiber) + " A-singularities");
      }
    }
    if (!ce.excluded) {
      ce.basis = "retained";
      for (const auto& o : obs) ce.notes.push_back(o.rule + ": " + o.detail);
      if (counted) ce.notes.push_back("matches crust count");
      r.determined.push_back(ms);
    }
    r.candidates.push_back(std::move(ce));
  }
  return r;
}

}  // namespace barkfib
