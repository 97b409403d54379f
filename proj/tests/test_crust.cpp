#include <barkfib/crust.hpp>

#include <gtest/gtest.h>

#include <set>

using namespace barkfib;

namespace {

StellarFiber fiber(Int m0, std::vector<std::vector<Int>> br) { return {"", m0, 0, std::move(br)}; }

const StellarFiber kIIStar = fiber(6, {{5, 4, 3, 2, 1}, {4, 2}, {3}});
const StellarFiber kIIIStar = fiber(4, {{3, 2, 1}, {3, 2, 1}, {2}});
const StellarFiber kIVStar = fiber(3, {{2, 1}, {2, 1}, {2, 1}});
const StellarFiber kI0Star = fiber(2, {{1}, {1}, {1}, {1}});
const StellarFiber kII = fiber(6, {{3}, {2}, {1}});
const StellarFiber kIII = fiber(4, {{2}, {1}, {1}});
const StellarFiber kIV = fiber(3, {{1}, {1}, {1}});

std::set<SubbranchType> types(Subbranch sb, Int l) {
  auto v = classify_subbranch(sb, l);
  return {v.begin(), v.end()};
}

/// Independent enumeration: every vector (n1..n_nu) with entries in [1, m_i]
/// is generated, and the recurrence is checked afterwards.
std::vector<std::vector<Int>> brute_subbranches(const Branch& b, Int n0) {
  std::vector<std::vector<Int>> out{{}};
  std::vector<std::vector<Int>> frontier{{}};
  for (int nu = 1; nu <= b.length(); ++nu) {
    std::vector<std::vector<Int>> next;
    for (const auto& v : frontier)
      for (Int x = 1; x <= b.m(nu); ++x) {
        auto w = v;
        w.push_back(x);
        next.push_back(w);
      }
    frontier = next;
    for (const auto& v : frontier) {
      bool ok = true;
      for (int i = 1; i + 1 <= nu; ++i) {
        Int prev = i == 1 ? n0 : v[static_cast<std::size_t>(i - 2)];
        if (v[static_cast<std::size_t>(i)] != b.r(i) * v[static_cast<std::size_t>(i - 1)] - prev) ok = false;
      }
      if (ok) out.push_back(v);
    }
  }
  return out;
}

}  // namespace

TEST(Branch, Validation) {
  EXPECT_TRUE(validate_branch({6, {5, 4, 3, 2, 1}}));
  EXPECT_TRUE(validate_branch({2, {1}}));
  EXPECT_EQ(Branch({2, {1}}).r(1), 2);
  EXPECT_FALSE(validate_branch({5, {3}}));
  EXPECT_FALSE(validate_branch({3, {3}}));
  EXPECT_FALSE(validate_branch({3, {}}));
  for (int r = 1; r <= 5; ++r) EXPECT_EQ(Branch({6, {5, 4, 3, 2, 1}}).r(r), 2);
}

TEST(Stellar, FixturesAreValid) {
  for (const auto& x : {kIIStar, kIIIStar, kIVStar, kI0Star, kII, kIII, kIV}) EXPECT_TRUE(validate_stellar(x).empty());
  EXPECT_FALSE(validate_stellar(fiber(6, {{5}, {4}})).empty());
  EXPECT_FALSE(validate_stellar(fiber(6, {})).empty());
}

TEST(Subbranch, Extend) {
  EXPECT_EQ(extend_subbranch({2, {1}, {6, {3}}}), 0);
  EXPECT_EQ(extend_subbranch({2, {}, {6, {3}}}), 0);
  EXPECT_EQ(extend_subbranch({1, {1}, {2, {1}}}), 1);
  EXPECT_EQ(extend_subbranch({5, {4, 3}, {6, {5, 4, 3, 2, 1}}}), 2);
}

TEST(Subbranch, Classify) {
  EXPECT_EQ(types({2, {1}, {6, {3}}}, 1), std::set<SubbranchType>{SubbranchType::A});
  // n_nu = 1 = n_{nu+1} and m1 - m2 = 3 divides 3, so C3 holds alongside B3
  EXPECT_EQ(types({1, {1}, {6, {3}}}, 3), (std::set<SubbranchType>{SubbranchType::B, SubbranchType::C}));
  EXPECT_EQ(types({1, {1}, {2, {1}}}, 1), (std::set<SubbranchType>{SubbranchType::B, SubbranchType::C}));
  // bound l n0 <= m0 fails
  EXPECT_TRUE(classify_subbranch({2, {1}, {2, {1}}}, 2).empty());
  EXPECT_THROW(classify_subbranch({1, {1}, {2, {1}}}, 0), std::invalid_argument);
}

TEST(Subbranch, Proportional) {
  EXPECT_TRUE(is_proportional({2, {1}, {2, {1}}}));
  EXPECT_TRUE(is_proportional({2, {1}, {6, {3}}}));
  EXPECT_FALSE(is_proportional({1, {1}, {6, {3}}}));
  EXPECT_FALSE(is_proportional({2, {}, {6, {3}}}));
}

TEST(CoreSection, Examples) {
  auto cs = core_section_exists(kIIStar, 1, {1, 1, 0});
  EXPECT_TRUE(cs.exists);
  EXPECT_EQ(cs.zero_degree, 0);
  EXPECT_FALSE(core_section_exists(kIIStar, 1, {1, 0, 0}).exists);
  cs = core_section_exists(kIVStar, 2, {2, 1, 1});
  EXPECT_TRUE(cs.exists);
  EXPECT_EQ(cs.zero_degree, 0);
  cs = core_section_exists(kIVStar, 1, {1, 1, 1});
  EXPECT_TRUE(cs.exists);
  EXPECT_EQ(cs.zero_degree, 1);
  StellarFiber g1 = kIVStar;
  g1.core_genus = 1;
  EXPECT_THROW(core_section_exists(g1, 1, {1, 1, 1}), std::invalid_argument);
}

TEST(Crusts, ExhaustiveInvariants) {
  for (const auto& x : {kIIStar, kIIIStar, kIVStar, kI0Star, kII, kIII, kIV}) {
    for (Int l = 1; l <= x.core_mult + 1; ++l) {
      auto ys = enumerate_simple_crusts(x, l);
      if (l > x.core_mult) {
        EXPECT_TRUE(ys.empty());
      }
      for (const auto& y : ys) {
        EXPECT_TRUE(validate_simple_crust(x, y).empty());
        EXPECT_LT(y.n0, x.core_mult);
        EXPECT_TRUE(core_section_exists(x, y.n0, y.first_values()).exists);
        for (std::size_t j = 0; j < x.num_branches(); ++j) {
          auto sb = y.subbranch(x, j);
          if (is_proportional(sb)) {
            EXPECT_EQ(sb.nu(), sb.parent.length());
            auto t = types(sb, l);
            EXPECT_TRUE(t.count(SubbranchType::A));
            for (int i = 1; i <= sb.nu(); ++i) EXPECT_EQ(sb.n(i) * x.core_mult, y.n0 * sb.parent.m(i));
          }
          for (int i = 1; i + 1 <= sb.nu(); ++i) EXPECT_EQ(sb.n(i + 1), sb.parent.r(i) * sb.n(i) - sb.n(i - 1));
        }
      }
    }
  }
}

TEST(Crusts, AgreesWithBruteForce) {
  for (const auto& x : {kIIStar, kIIIStar, kIVStar, kI0Star, kII, kIII, kIV}) {
    for (Int l = 1; l <= 3; ++l) {
      std::vector<SimpleCrust> brute;
      for (Int n0 = 1; n0 < x.core_mult; ++n0) {
        std::vector<std::vector<std::vector<Int>>> per(x.num_branches());
        for (std::size_t j = 0; j < x.num_branches(); ++j)
          for (auto& v : brute_subbranches(x.branch(j), n0))
            if (!classify_subbranch({n0, v, x.branch(j)}, l).empty()) per[j].push_back(v);
        std::vector<SimpleCrust> partial{{n0, {}, l}};
        for (const auto& choices : per) {
          std::vector<SimpleCrust> next;
          for (const auto& p : partial)
            for (const auto& c : choices) {
              auto q = p;
              q.subbranches.push_back(c);
              next.push_back(q);
            }
          partial = next;
        }
        for (const auto& y : partial)
          if (validate_simple_crust(x, y).empty()) brute.push_back(y);
      }
      auto got = enumerate_simple_crusts(x, l);
      auto key = [](const SimpleCrust& y) { return std::make_pair(y.n0, y.subbranches); };
      std::set<std::pair<Int, std::vector<std::vector<Int>>>> a, b;
      for (const auto& y : got) a.insert(key(y));
      for (const auto& y : brute) b.insert(key(y));
      EXPECT_EQ(a, b);
      EXPECT_EQ(a.size(), got.size());
    }
  }
}

TEST(Crusts, KnownCrustsAreEnumerated) {
  auto has = [](const StellarFiber& x, SimpleCrust y) {
    auto ys = enumerate_simple_crusts(x, y.l);
    return std::find(ys.begin(), ys.end(), y) != ys.end();
  };
  EXPECT_TRUE(has(kIIStar, {5, {{5}, {3, 1}, {2}}, 1}));
  EXPECT_TRUE(has(kIIStar, {2, {{2}, {1}, {1}}, 1}));
  EXPECT_TRUE(has(kIIStar, {4, {{4}, {2}, {2}}, 1}));
  EXPECT_TRUE(has(kIIIStar, {2, {{2}, {2}, {}}, 1}));
  EXPECT_TRUE(has(kIIIStar, {3, {{3}, {2, 1}, {1}}, 1}));
  EXPECT_TRUE(has(kIII, {2, {{}, {1}, {1}}, 1}));
  EXPECT_TRUE(has(kIV, {2, {{1}, {1}, {}}, 1}));
  EXPECT_TRUE(has(kIVStar, {2, {{2}, {2}, {}}, 1}));
  EXPECT_FALSE(enumerate_simple_crusts(kI0Star, 1).empty());
}

TEST(Crusts, ValidationMessages) {
  EXPECT_FALSE(validate_simple_crust(kIIStar, {6, {{5}, {4}, {3}}, 1}).empty());
  EXPECT_FALSE(validate_simple_crust(kIIStar, {5, {{5}, {3, 1}}, 1}).empty());
  EXPECT_FALSE(validate_simple_crust(kIIStar, {1, {{1}, {}, {}}, 1}).empty());
}
