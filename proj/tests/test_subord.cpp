#include <barkfib/io.hpp>
#include <barkfib/subord.hpp>

#include <gtest/gtest.h>

using namespace barkfib;

namespace {

FiberClass F(const char* s) { return parse_fiber(s); }

const Fixture& fixture() {
  static const Fixture fx = load_fixture(BARKFIB_FIXTURE_DIR "/elliptic_barking.json");
  return fx;
}

/// Singularity count of a subordinate fiber made of A-singularities: I_n has
/// n nodes, II one cusp, III one tacnode.
std::optional<Int> a_sing_count(const FiberClass& f) {
  if (f.kind == Kind::I && f.n > 0) return f.n;
  if (f.kind == Kind::II || f.kind == Kind::III) return 1;
  return std::nullopt;
}

std::vector<FiberMultiset> types_oracle(const SubordinateProfile& p, int deficit) {
  std::vector<FiberMultiset> out;
  for (const auto& ms : enumerate_multisets(deficit)) {
    if (static_cast<Int>(ms.size()) != p.num_fibers) continue;
    bool ok = true;
    for (const auto& f : ms) ok = ok && a_sing_count(f) == p.sings_per_fiber;
    if (ok) out.push_back(ms);
  }
  return out;
}

}  // namespace

TEST(CoreInvariant, Examples) {
  EXPECT_EQ(core_invariant({3, 0, 0, 0, {}}), 1);
  EXPECT_EQ(core_invariant({3, 1, 0, 0, {0}}), 0);
  EXPECT_EQ(core_invariant({1, 0, 0, 1, {}}), 1);
  EXPECT_EQ(core_invariant({4, 1, 2, 0, {1}}), 2);
  EXPECT_THROW(core_invariant({3, 1, 0, 0, {}}), std::invalid_argument);
}

TEST(CountBounds, Examples) {
  EXPECT_EQ(count_bounds({3, 0, 0, 0, {}}, 6, 5), std::make_pair(Int{5}, Int{1}));
  EXPECT_EQ(count_bounds({3, 1, 0, 0, {0}}, 6, 5), std::make_pair(Int{0}, Int{0}));
  EXPECT_EQ(count_bounds({4, 0, 0, 0, {}}, 4, 2), std::make_pair(Int{2}, Int{4}));
  EXPECT_EQ(count_bounds({1, 0, 0, 0, {}}, 4, 2), std::make_pair(Int{0}, Int{0}));
}

TEST(PredictCounts, FixtureCrusts) {
  int checked = 0;
  for (const auto& c : fixture().cases) {
    if (!c.crust || !c.expected_counts) continue;
    auto p = predict_counts(c.crust->fiber, c.crust->crust);
    EXPECT_EQ(std::make_pair(p.num_fibers, p.sings_per_fiber), *c.expected_counts) << c.id;
    ++checked;
  }
  EXPECT_EQ(checked, 9);
}

TEST(PredictCounts, ProductEqualsN) {
  // exhaustive over every crust satisfying the hypotheses
  for (const auto& [name, x] : fixture().stellar) {
    for (Int l = 1; l <= 3; ++l)
      for (const auto& y : enumerate_simple_crusts(x, l)) {
        SubordinateProfile p;
        try {
          p = predict_counts(x, y);
        } catch (const HypothesisViolation&) {
          continue;
        }
        if (p.basis == Basis::Chi1) {
          EXPECT_EQ(p.num_fibers * p.sings_per_fiber, y.n0) << name;
          EXPECT_EQ(p.location, Location::NearCore);
        } else {
          EXPECT_EQ(p.location, Location::NearProportionalEdge);
          bool found = false;
          for (std::size_t j = 0; j < x.num_branches(); ++j) {
            auto sb = y.subbranch(x, j);
            if (is_proportional(sb)) found = p.num_fibers * p.sings_per_fiber == sb.n(sb.nu());
          }
          EXPECT_TRUE(found) << name;
        }
      }
  }
}

TEST(PredictCounts, HypothesisViolations) {
  const auto& ii = fixture().stellar.at("II*");
  int with_zero = 0;
  for (const auto& [name, x] : fixture().stellar) {
    if (x.num_branches() != 3) continue;
    for (Int l = 1; l <= 2; ++l)
      for (const auto& y : enumerate_simple_crusts(x, l)) {
        if (core_section_exists(x, y.n0, y.first_values()).zero_degree == 0) continue;
        ++with_zero;
        try {
          predict_counts(x, y);
          ADD_FAILURE() << name << " n0=" << y.n0;
        } catch (const HypothesisViolation& e) {
          EXPECT_EQ(e.condition(), "no_core_zero");
        }
      }
  }
  EXPECT_GT(with_zero, 10);
  const auto& i0 = fixture().stellar.at("I0*");
  auto ys = enumerate_simple_crusts(i0, 1);
  ASSERT_FALSE(ys.empty());
  try {
    predict_counts(i0, ys.front());
    FAIL();
  } catch (const HypothesisViolation& e) {
    EXPECT_EQ(e.condition(), "three_branches");
  }
  EXPECT_THROW(predict_counts(ii, {5, {{5}, {3}, {2}}, 1}), std::invalid_argument);
}

TEST(DetermineTypes, Examples) {
  auto one = [](Int f, Int s, Int d) { return determine_types({f, s, Location::NearCore, Basis::Chi1}, d); };
  EXPECT_EQ(one(1, 1, 2), std::vector<FiberMultiset>{{F("II")}});
  EXPECT_EQ(one(2, 1, 2), (std::vector<FiberMultiset>{{F("I1"), F("I1")}}));
  EXPECT_EQ(one(1, 2, 2), std::vector<FiberMultiset>{{F("I2")}});
  EXPECT_EQ(one(5, 1, 5), std::vector<FiberMultiset>{FiberMultiset(5, F("I1"))});
  EXPECT_EQ(one(1, 1, 3), std::vector<FiberMultiset>{{F("III")}});
  EXPECT_EQ(one(2, 1, 3).size(), 1u);
  EXPECT_THROW(one(3, 1, 2), std::invalid_argument);
  EXPECT_THROW(one(1, 1, 4), std::invalid_argument);
  EXPECT_THROW(one(1, 2, 3), std::invalid_argument);
}

TEST(DetermineTypes, MatchesOracle) {
  for (Int f = 1; f <= 5; ++f)
    for (Int s = 1; s <= 4; ++s)
      for (int d = static_cast<int>(f * s); d <= 12; ++d) {
        SubordinateProfile p{f, s, Location::NearCore, Basis::Chi1};
        auto want = types_oracle(p, d);
        if (want.empty()) {
          EXPECT_THROW(determine_types(p, d), std::invalid_argument);
          continue;
        }
        auto got = determine_types(p, d);
        EXPECT_EQ(got, want) << f << "x" << s << " d=" << d;
        for (const auto& ms : got) EXPECT_EQ(euler_sum(ms), d);
      }
}

TEST(FullReport, FixtureCases) {
  const auto& fx = fixture();
  EXPECT_EQ(fx.cases.size(), 45u);
  int ambiguous = 0;
  for (const auto& c : fx.cases) {
    auto r = full_report(c.original, c.main, c.crust);
    EXPECT_EQ(r.determined, c.expected) << c.id;
    if (r.ambiguous()) ++ambiguous;
    // determined sets are obstruction-filtered enumerations
    auto all = enumerate_multisets(r.deficit);
    for (const auto& ms : r.determined) {
      EXPECT_NE(std::find(all.begin(), all.end(), ms), all.end());
      FiberMultiset whole = ms;
      whole.push_back(c.main);
      EXPECT_FALSE(is_forbidden(applicable_obstructions(c.original, canonical(whole)))) << c.id;
    }
    if (r.deficit == 1) {
      EXPECT_EQ(r.determined, std::vector<FiberMultiset>{{F("I1")}}) << c.id;
    }
  }
  EXPECT_EQ(ambiguous, 4);
}

TEST(FullReport, AmbiguityExamples) {
  auto r = full_report(F("IV"), F("I2"));
  EXPECT_EQ(r.determined, (std::vector<FiberMultiset>{{F("II")}, {F("I1"), F("I1")}}));
  bool i2_obstructed = false;
  for (const auto& c : r.candidates)
    if (c.candidate == FiberMultiset{F("I2")}) i2_obstructed = c.excluded && c.basis == "obstruction";
  EXPECT_TRUE(i2_obstructed);

  r = full_report(F("I0*"), F("I3"));
  EXPECT_EQ(r.determined,
            (std::vector<FiberMultiset>{{F("II"), F("I1")}, {F("I1"), F("I1"), F("I1")}}));
  EXPECT_TRUE(r.ambiguous());
}

TEST(FullReport, CountRefinement) {
  const auto& fx = fixture();
  // II* -> I5 leaves many candidates without the crust
  auto bare = full_report(F("II*"), F("I5"));
  EXPECT_GT(bare.determined.size(), 1u);
  const auto& ii = fx.stellar.at("II*");
  auto r = full_report(F("II*"), F("I5"), CrustInput{ii, {5, {{5}, {3, 1}, {2}}, 1}});
  EXPECT_EQ(r.determined, std::vector<FiberMultiset>{FiberMultiset(5, F("I1"))});
  ASSERT_TRUE(r.profile.has_value());
  EXPECT_EQ(r.profile->basis, Basis::Chi1);
  EXPECT_THROW(full_report(F("II"), F("II")), std::invalid_argument);
}
