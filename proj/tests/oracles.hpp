#pragma once
// Independent oracles shared by the unit tests and the acceptance runner.

#include <barkfib/localmodel.hpp>

#include <Eigen/Dense>

#include <optional>
#include <random>
#include <vector>

namespace barkfib::oracle {


inline std::vector<LocalCurveSpec> grid() {
  std::vector<LocalCurveSpec> out;
  for (cplx tc : {cplx(1.0, 0.0), cplx(0.7, -1.3)})
    for (int l = 1; l <= 2; ++l)
      for (int n = 1; n <= 4; ++n)
        for (int m = l * n + 1; m <= 8; ++m) {
          LocalCurveSpec s;
          s.m = m;
          s.n = n;
          s.l = l;
          s.t = tc;
          s.c = cplx(1.0, 0.25);
          out.push_back(s);
        }
  return out;
}

/// Sylvester determinant of two polynomials (coefficients low to high).
inline cplx sylvester_resultant(const Poly& p, const Poly& q) {
  const int dp = poly_degree(p), dq = poly_degree(q);
  const int n = dp + dq;
  Eigen::MatrixXcd S = Eigen::MatrixXcd::Zero(n, n);
  for (int r = 0; r < dq; ++r)
    for (int i = 0; i <= dp; ++i) S(r, r + i) = p[static_cast<std::size_t>(dp - i)];
  for (int r = 0; r < dp; ++r)
    for (int i = 0; i <= dq; ++i) S(dq + r, r + i) = q[static_cast<std::size_t>(dq - i)];
  return S.partialPivLu().determinant();
}

/// Nonzero singular values of s for the model with c1 = 0, from the resultant
/// in the reduced variable u = zeta^g, where the curve reads
/// G(u) = u^a (u^nbar + t c)^l = s with a = (m - l n)/g.
inline std::vector<cplx> resultant_oracle(const LocalCurveSpec& sp) {
  const int g = std::gcd(sp.m, sp.n), a = (sp.m - sp.l * sp.n) / g, nb = sp.n / g;
  const cplx tc = sp.t * sp.c;
  Poly base(static_cast<std::size_t>(nb) + 1, 0.0);
  base[0] = tc;
  base[static_cast<std::size_t>(nb)] = 1.0;
  Poly G(static_cast<std::size_t>(a) + 1, 0.0);
  G[static_cast<std::size_t>(a)] = 1.0;
  for (int i = 0; i < sp.l; ++i) G = poly_mul(G, base);
  const Poly dG = poly_derivative(G);
  const int mb = poly_degree(G);  // = mbar
  // R(s) has degree mb - 1; interpolate on a circle by DFT
  const int N = mb;
  const double r = 1.0;
  std::vector<cplx> vals(static_cast<std::size_t>(N));
  for (int k = 0; k < N; ++k) {
    cplx s = std::polar(r, 2 * M_PI * k / N);
    Poly Gs = G;
    Gs[0] -= s;
    vals[static_cast<std::size_t>(k)] = sylvester_resultant(Gs, dG);
  }
  Poly R(static_cast<std::size_t>(N), 0.0);
  for (int j = 0; j < N; ++j) {
    cplx acc = 0.0;
    for (int k = 0; k < N; ++k) acc += vals[static_cast<std::size_t>(k)] * std::polar(1.0, -2 * M_PI * j * k / N);
    R[static_cast<std::size_t>(j)] = acc / static_cast<double>(N) / std::pow(r, j);
  }
  // s = 0 is a root of order a - 1 + nbar (l - 1)
  const int drop = a - 1 + nb * (sp.l - 1);
  Poly Q(R.begin() + drop, R.end());
  std::vector<cplx> out;
  for (const auto& root : poly_roots(Q)) out.push_back(root.value);
  return out;
}

inline bool contains(const std::vector<cplx>& v, cplx z, double rel) {
  return std::any_of(v.begin(), v.end(), [&](cplx w) { return std::abs(w - z) <= rel * (1.0 + std::abs(z)); });
}

struct RandomConfig {
  CoreSectionData data;
  long chi = 0;
};

/// Rational core with three attach points (one possibly at infinity), simple
/// extra zeros of tau, and consistent divisor degrees.
inline std::optional<RandomConfig> random_config(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> m0d(2, 7);
  std::uniform_real_distribution<double> pos(-2.0, 2.0);
  RandomConfig rc;
  auto& d = rc.data;
  d.m0 = m0d(rng);
  d.n0 = std::uniform_int_distribution<int>(1, d.m0 - 1)(rng);
  std::uniform_int_distribution<int> m1d(1, d.m0 - 1);
  long sum_m1 = 0, sum_n1 = 0;
  int v = 0;
  const bool use_inf = std::bernoulli_distribution(0.5)(rng);
  for (int j = 0; j < 3; ++j) {
    AttachPoint a;
    if (!(use_inf && j == 0)) a.point = cplx(pos(rng), pos(rng));
    a.m1 = m1d(rng);
    a.n1 = std::uniform_int_distribution<int>(0, a.m1)(rng);
    if (d.n0 * a.m1 == d.m0 * a.n1) ++v;
    sum_m1 += a.m1;
    sum_n1 += a.n1;
    d.attach.push_back(a);
  }
  if (sum_m1 % d.m0 != 0 || v > 1) return std::nullopt;
  const long k = sum_n1 - d.n0 * sum_m1 / d.m0;
  if (k < 0 || k > 6) return std::nullopt;
  for (long i = 0; i < k; ++i) d.extra_zeros.push_back({cplx(pos(rng), pos(rng)), 1});
  rc.chi = 3 - v + k - 2;
  if (rc.chi < 1) return std::nullopt;
  return rc;
}

/// Zeros of omega/dz = sum c_j / (z - x_j) away from every divisor point,
/// with the order at infinity from the degree count.
inline std::pair<std::vector<cplx>, int> omega_oracle(const CoreSectionData& d) {
  std::vector<std::pair<cplx, double>> terms;
  std::vector<cplx> special;
  for (const auto& a : d.attach)
    if (a.point) {
      special.push_back(*a.point);
      double c = static_cast<double>(d.n0) * a.m1 - static_cast<double>(d.m0) * a.n1;
      if (c != 0) terms.push_back({*a.point, c});
    }
  for (const auto& z : d.extra_zeros)
    if (z.point) {
      special.push_back(*z.point);
      terms.push_back({*z.point, static_cast<double>(d.m0) * z.order});
    }
  Poly P{0.0};
  for (std::size_t j = 0; j < terms.size(); ++j) {
    Poly t{terms[j].second};
    for (std::size_t i = 0; i < terms.size(); ++i)
      if (i != j) t = poly_mul(t, Poly{-terms[i].first, 1.0});
    P = poly_add(P, t);
  }
  const double nn = poly_norm(P);
  while (!P.empty() && std::abs(P.back()) <= 1e-10 * nn) P.pop_back();
  std::vector<cplx> out;
  for (auto z : detail::companion_roots(P))
    if (!contains(special, z, 1e-6)) out.push_back(z);
  bool inf_special = std::any_of(d.attach.begin(), d.attach.end(), [](const auto& a) { return !a.point; });
  int inf_order = inf_special ? 0 : static_cast<int>(terms.size()) - 2 - poly_degree(P);
  return {out, inf_order};
}

}  // namespace barkfib::oracle
