#pragma once
// Floating-point checks of the local singularity criteria: singular values of
// the hypersurface model z^{m'-ln'} zeta^{m-ln} (z^{n'} zeta^n + t h)^l = s,
// and essential zeros of K = n0 sigma' tau + m0 sigma tau' on a rational core.

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cctype>
#include <cmath>
#include <complex>
#include <cstdio>
#include <functional>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace barkfib {

using cplx = std::complex<double>;

/// Coefficients, lowest degree first.
using Poly = std::vector<cplx>;

inline cplx ipow(cplx x, long e) {
  if (e < 0) return 1.0 / ipow(x, -e);
  cplx r = 1.0;
  while (e) {
    if (e & 1) r *= x;
    x *= x;
    e >>= 1;
  }
  return r;
}

inline void poly_trim(Poly& p) {
  while (!p.empty() && p.back() == cplx{}) p.pop_back();
}

inline int poly_degree(const Poly& p) {
  for (int i = static_cast<int>(p.size()) - 1; i >= 0; --i)
    if (p[static_cast<std::size_t>(i)] != cplx{}) return i;
  return -1;
}

inline cplx poly_eval(const Poly& p, cplx z) {
  cplx r = 0.0;
  for (auto it = p.rbegin(); it != p.rend(); ++it) r = r * z + *it;
  return r;
}

inline Poly poly_derivative(const Poly& p) {
  Poly d;
  for (std::size_t i = 1; i < p.size(); ++i) d.push_back(p[i] * static_cast<double>(i));
  return d;
}

inline Poly poly_mul(const Poly& a, const Poly& b) {
  if (a.empty() || b.empty()) return {};
  Poly r(a.size() + b.size() - 1, 0.0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  return r;
}

inline Poly poly_add(Poly a, const Poly& b) {
  if (a.size() < b.size()) a.resize(b.size(), 0.0);
  for (std::size_t i = 0; i < b.size(); ++i) a[i] += b[i];
  return a;
}

inline Poly poly_scale(Poly a, cplx k) {
  for (auto& c : a) c *= k;
  return a;
}

/// (z - r)^e
inline Poly poly_linear_power(cplx r, int e) {
  Poly p{1.0};
  for (int i = 0; i < e; ++i) p = poly_mul(p, Poly{-r, 1.0});
  return p;
}

/// Divides p by (z - r) by synthetic division; the remainder is dropped.
inline Poly poly_deflate(const Poly& p, cplx r) {
  const int d = poly_degree(p);
  if (d < 1) return {};
  Poly q(static_cast<std::size_t>(d), 0.0);
  cplx carry = p[static_cast<std::size_t>(d)];
  for (int i = d - 1; i >= 0; --i) {
    q[static_cast<std::size_t>(i)] = carry;
    carry = p[static_cast<std::size_t>(i)] + carry * r;
  }
  return q;
}

inline double poly_norm(const Poly& p) {
  double s = 0;
  for (auto c : p) s = std::max(s, std::abs(c));
  return s;
}

struct Root {
  cplx value;
  int multiplicity = 1;
};

namespace detail {

/// Up to three Newton steps, each kept only if it reduces |p|.
inline cplx newton_polish(const Poly& p, const Poly& dp, cplx r) {
  for (int it = 0; it < 3; ++it) {
    cplx f = poly_eval(p, r), fp = poly_eval(dp, r);
    if (std::abs(fp) < 1e-300) break;
    cplx cand = r - f / fp;
    if (!(std::abs(poly_eval(p, cand)) < std::abs(f))) break;
    r = cand;
  }
  return r;
}

/// Roots as companion-matrix eigenvalues, optionally Newton-polished.
inline std::vector<cplx> companion_roots(const Poly& p, bool polish = true) {
  const int d = poly_degree(p);
  if (d < 1) return {};
  const cplx lead = p[static_cast<std::size_t>(d)];
  Eigen::MatrixXcd c = Eigen::MatrixXcd::Zero(d, d);
  for (int i = 1; i < d; ++i) c(i, i - 1) = 1.0;
  for (int i = 0; i < d; ++i) c(i, d - 1) = -p[static_cast<std::size_t>(i)] / lead;
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(c, false);
  if (es.info() != Eigen::Success) throw std::runtime_error("eigenvalue iteration failed");
  std::vector<cplx> roots(es.eigenvalues().data(), es.eigenvalues().data() + d);
  if (polish) {
    const Poly dp = poly_derivative(p);
    for (auto& r : roots) r = newton_polish(p, dp, r);
  }
  return roots;
}

/// True when p and its first k-1 derivatives all vanish at z (relative to the
/// coefficient scale), i.e. z is numerically a root of multiplicity >= k.
inline bool vanishes_to_order(const Poly& p, cplx z, int k, double tol) {
  Poly q = p;
  const double scale = std::max(1.0, std::abs(z));
  for (int j = 0; j < k; ++j) {
    double bound = 0;
    for (std::size_t i = 0; i < q.size(); ++i) bound += std::abs(q[i]) * std::pow(scale, static_cast<double>(i));
    if (std::abs(poly_eval(q, z)) > tol * std::max(bound, 1e-300)) return false;
    q = poly_derivative(q);
  }
  return true;
}

}  // namespace detail

/// Roots with multiplicities. Eigenvalues closer than 1e-7 (relative) are
/// merged; wider groups up to `cluster_radius` are merged only when the
/// derivative test confirms a multiple root at their centroid.
inline std::vector<Root> poly_roots(const Poly& p, double cluster_radius = 1e-2) {
  // clusters are formed from unpolished eigenvalues, whose mean stays accurate
  // near a multiple root where Newton steps drift
  auto raw = detail::companion_roots(p, false);
  std::vector<Root> out;
  std::vector<bool> used(raw.size(), false);
  auto close = [](cplx a, cplx b, double rel) { return std::abs(a - b) <= rel * (1.0 + std::abs(a)); };
  // tight clusters
  std::vector<std::vector<cplx>> groups;
  for (std::size_t i = 0; i < raw.size(); ++i) {
    if (used[i]) continue;
    std::vector<cplx> g{raw[i]};
    used[i] = true;
    for (std::size_t j = i + 1; j < raw.size(); ++j)
      if (!used[j] && close(raw[i], raw[j], 1e-7)) {
        g.push_back(raw[j]);
        used[j] = true;
      }
    groups.push_back(std::move(g));
  }
  auto centroid = [](const std::vector<cplx>& g) {
    cplx s = 0.0;
    for (auto z : g) s += z;
    return s / static_cast<double>(g.size());
  };
  // loose merge of connected neighbourhoods, confirmed by derivatives
  std::vector<std::size_t> comp(groups.size());
  std::iota(comp.begin(), comp.end(), std::size_t{0});
  std::function<std::size_t(std::size_t)> find = [&](std::size_t i) { return comp[i] == i ? i : comp[i] = find(comp[i]); };
  for (std::size_t i = 0; i < groups.size(); ++i)
    for (std::size_t j = i + 1; j < groups.size(); ++j)
      if (close(centroid(groups[i]), centroid(groups[j]), cluster_radius)) comp[find(j)] = find(i);
  std::vector<std::vector<cplx>> merged;
  for (std::size_t i = 0; i < groups.size(); ++i) {
    if (find(i) != i) continue;
    std::vector<std::size_t> members;
    std::vector<cplx> u;
    for (std::size_t j = 0; j < groups.size(); ++j)
      if (find(j) == i) {
        members.push_back(j);
        u.insert(u.end(), groups[j].begin(), groups[j].end());
      }
    if (members.size() == 1 || detail::vanishes_to_order(p, centroid(u), static_cast<int>(u.size()), 1e-9))
      merged.push_back(std::move(u));
    else
      for (std::size_t j : members) merged.push_back(groups[j]);
  }
  groups = std::move(merged);
  const Poly dp = poly_derivative(p);
  for (const auto& g : groups)
    out.push_back({g.size() == 1 ? detail::newton_polish(p, dp, g[0]) : centroid(g), static_cast<int>(g.size())});
  std::sort(out.begin(), out.end(), [](const Root& a, const Root& b) {
    if (a.value.real() != b.value.real()) return a.value.real() < b.value.real();
    return a.value.imag() < b.value.imag();
  });
  return out;
}

/// Parses "1", "-2.5", "3i", "1+0i", "1.5e-3-2i".
inline cplx parse_complex(const std::string& text) {
  std::string s;
  for (char ch : text)
    if (!std::isspace(static_cast<unsigned char>(ch))) s += ch;
  if (s.empty()) throw std::invalid_argument("empty complex number");
  auto num = [&](const std::string& t) {
    if (t.empty() || t == "+") return 1.0;
    if (t == "-") return -1.0;
    std::size_t used = 0;
    double v = 0;
    try {
      v = std::stod(t, &used);
    } catch (const std::exception&) {
      throw std::invalid_argument("bad complex number '" + text + "'");
    }
    if (used != t.size()) throw std::invalid_argument("bad complex number '" + text + "'");
    return v;
  };
  if (s.back() != 'i') return {num(s), 0.0};
  s.pop_back();
  // split at the last sign not following an exponent marker
  std::size_t cut = std::string::npos;
  for (std::size_t i = s.size(); i-- > 1;)
    if ((s[i] == '+' || s[i] == '-') && s[i - 1] != 'e' && s[i - 1] != 'E') {
      cut = i;
      break;
    }
  if (cut == std::string::npos) return {0.0, num(s)};
  return {num(s.substr(0, cut)), num(s.substr(cut))};
}

inline std::string format_complex(cplx z) {
  char buf[96];
  std::snprintf(buf, sizeof buf, "%.17g%+.17gi", z.real(), z.imag());
  return buf;
}

/// h(z, zeta) = c + c1 z^{pp} zeta^p. Only c = h(0,0) affects the singular
/// locus on z = 0 when pp >= 2; c1 makes the transverse direction nondegenerate.
struct LocalCurveSpec {
  int m = 1, n = 1, l = 1;
  int mp = 0, np = 0;
  cplx t = 1.0;
  cplx c = 1.0;
  int d = 1;
  cplx c1 = 0.0;
  int p = 1, pp = 2;

  int g() const { return std::gcd(m, n); }
  int mbar() const { return m / g(); }
  int nbar() const { return n / g(); }
};

inline void validate_local_spec(const LocalCurveSpec& s) {
  if (s.m <= 0 || s.n <= 0 || s.l <= 0) throw std::invalid_argument("m, n, l must be positive");
  if (s.m - s.l * s.n <= 0) throw std::invalid_argument("need m - l n > 0");
  if (s.mp < 0 || s.np < 0 || s.mp - s.l * s.np < 0) throw std::invalid_argument("need m' - l n' >= 0");
  if (s.d <= 0) throw std::invalid_argument("d must be positive");
  if (s.p < 0 || s.pp < 2) throw std::invalid_argument("h model needs p >= 0 and p' >= 2");
}

struct LocalValue {
  cplx f, fz, fzeta;
};

/// F = z^{m'-ln'} zeta^{m-ln} (z^{n'} zeta^n + t h)^l - s and its gradient.
inline LocalValue local_eval(const LocalCurveSpec& sp, cplx z, cplx zeta, cplx s) {
  const cplx td = ipow(sp.t, sp.d);
  const long a = sp.mp - static_cast<long>(sp.l) * sp.np, b = sp.m - static_cast<long>(sp.l) * sp.n;
  const cplx h = sp.c + sp.c1 * ipow(z, sp.pp) * ipow(zeta, sp.p);
  const cplx hz = sp.c1 * static_cast<double>(sp.pp) * ipow(z, sp.pp - 1) * ipow(zeta, sp.p);
  const cplx hzeta = sp.p == 0 ? cplx{} : sp.c1 * ipow(z, sp.pp) * static_cast<double>(sp.p) * ipow(zeta, sp.p - 1);
  const cplx q = ipow(z, sp.np) * ipow(zeta, sp.n) + td * h;
  const cplx qz = (sp.np == 0 ? cplx{} : static_cast<double>(sp.np) * ipow(z, sp.np - 1) * ipow(zeta, sp.n)) + td * hz;
  const cplx qzeta = ipow(z, sp.np) * static_cast<double>(sp.n) * ipow(zeta, sp.n - 1) + td * hzeta;
  const cplx P = ipow(z, a) * ipow(zeta, b);
  const cplx Pz = a == 0 ? cplx{} : static_cast<double>(a) * ipow(z, a - 1) * ipow(zeta, b);
  const cplx Pzeta = ipow(z, a) * static_cast<double>(b) * ipow(zeta, b - 1);
  const cplx ql = ipow(q, sp.l), ql1 = ipow(q, sp.l - 1);
  LocalValue v;
  v.f = P * ql - s;
  v.fz = Pz * ql + P * static_cast<double>(sp.l) * ql1 * qz;
  v.fzeta = Pzeta * ql + P * static_cast<double>(sp.l) * ql1 * qzeta;
  return v;
}

/// Scale used in residual bounds.
inline double local_scale(const LocalCurveSpec& sp, cplx s) {
  return std::abs(ipow(sp.t, sp.d) * sp.c) + std::abs(s) + std::abs(sp.c1);
}

/// All nbar values s != 0 for which the fiber F = 0 is singular, when
/// m' = n' = 0, t != 0 and c != 0.
inline std::vector<cplx> singular_s_values(const LocalCurveSpec& sp) {
  validate_local_spec(sp);
  if (sp.mp != 0 || sp.np != 0)
    throw std::domain_error("singular values need m' = n' = 0; otherwise only s = 0 is singular");
  const cplx tc = ipow(sp.t, sp.d) * sp.c;
  if (tc == cplx{}) throw std::domain_error("t c = 0: only s = 0 is singular");
  const int L = sp.l, mb = sp.mbar(), nb = sp.nbar();
  const double ln = static_cast<double>(L) * sp.n;
  const cplx w = (ln - sp.m) / sp.m * tc;
  // s^nbar = w^mbar (ln / (ln - m))^{l nbar}
  const cplx rhs = ipow(w, mb) * std::pow(ln / (ln - sp.m), static_cast<double>(L) * nb);
  std::vector<cplx> out;
  const double rad = std::pow(std::abs(rhs), 1.0 / nb);
  const double arg = std::arg(rhs);
  for (int k = 0; k < nb; ++k) out.push_back(std::polar(rad, (arg + 2 * M_PI * k) / nb));
  return out;
}

struct SingularPoint {
  cplx z, zeta;
  double residual_f = 0, residual_fz = 0, residual_fzeta = 0;
};

class VerificationFailure : public std::runtime_error {
 public:
  VerificationFailure(const std::string& what, std::vector<SingularPoint> pts)
      : std::runtime_error(what), points(std::move(pts)) {}
  std::vector<SingularPoint> points;
};

constexpr double kResidualTol = 1e-9;

/// Singular points (0, zeta) on the fiber over s, zeta^n = (ln - m)/m t c.
/// Each is checked to satisfy |F|, |F_z|, |F_zeta| <= 1e-9 (1 + scale).
inline std::vector<SingularPoint> singular_points(const LocalCurveSpec& sp, cplx s) {
  validate_local_spec(sp);
  if (sp.mp != 0 || sp.np != 0) throw std::domain_error("singular points need m' = n' = 0");
  const cplx tc = ipow(sp.t, sp.d) * sp.c;
  const double ln = static_cast<double>(sp.l) * sp.n;
  const cplx w = (ln - sp.m) / sp.m * tc;
  const double rad = std::pow(std::abs(w), 1.0 / sp.n);
  const double tol = kResidualTol * (1.0 + local_scale(sp, s));
  std::vector<SingularPoint> out, bad;
  for (int k = 0; k < sp.n; ++k) {
    cplx zeta = std::polar(rad, (std::arg(w) + 2 * M_PI * k) / sp.n);
    auto v = local_eval(sp, 0.0, zeta, s);
    // on the fiber over s: F(0, zeta) = 0 up to the same tolerance
    if (std::abs(v.f) > 1e-6 * (1.0 + std::abs(s))) continue;
    SingularPoint pt{0.0, zeta, std::abs(v.f), std::abs(v.fz), std::abs(v.fzeta)};
    if (pt.residual_f > tol || pt.residual_fz > tol || pt.residual_fzeta > tol)
      bad.push_back(pt);
    else
      out.push_back(pt);
  }
  if (!bad.empty()) throw VerificationFailure("singular point residual above tolerance", bad);
  return out;
}

enum class SingType { A1, Degenerate };

inline const char* sing_type_str(SingType t) { return t == SingType::A1 ? "A1" : "degenerate"; }

/// Node test from Hessian entries (f_xx, f_xy, f_yy).
inline SingType hessian_sing_type(cplx fxx, cplx fxy, cplx fyy, double tol = 1e-6) {
  const cplx det = fxx * fyy - fxy * fxy;
  const double scale = std::max({std::abs(fxx), std::abs(fxy), std::abs(fyy), 1.0});
  return std::abs(det) > tol * scale * scale ? SingType::A1 : SingType::Degenerate;
}

/// Hessian of the local model at (z, zeta) by central differences of the
/// analytic gradient.
inline SingType local_sing_type(const LocalCurveSpec& sp, cplx z, cplx zeta, cplx s) {
  const double h = 1e-5 * (1.0 + std::abs(zeta));
  auto gz1 = local_eval(sp, z + h, zeta, s), gz0 = local_eval(sp, z - h, zeta, s);
  auto gw1 = local_eval(sp, z, zeta + h, s), gw0 = local_eval(sp, z, zeta - h, s);
  const cplx fzz = (gz1.fz - gz0.fz) / (2 * h);
  const cplx fzw = (gw1.fz - gw0.fz) / (2 * h);
  const cplx fww = (gw1.fzeta - gw0.fzeta) / (2 * h);
  return hessian_sing_type(fzz, fzw, fww);
}

/// A point of the core P^1; nullopt is infinity.
using CorePoint = std::optional<cplx>;

struct AttachPoint {
  CorePoint point;
  int m1 = 1;
  int n1 = 0;
};

struct ExtraZero {
  CorePoint point;
  int order = 1;
};

/// div(sigma) = sum m1 p, div(tau) = -sum n1 p + D.
struct CoreSectionData {
  std::vector<AttachPoint> attach;
  std::vector<ExtraZero> extra_zeros;
  int m0 = 1, n0 = 1, l = 1;
};

/// Empty when deg div(tau) = -n0 r0 holds exactly; otherwise the mismatch.
inline std::vector<std::string> validate_core_data(const CoreSectionData& d) {
  std::vector<std::string> errs;
  long sum_m1 = 0, sum_n1 = 0, sum_a = 0;
  for (const auto& a : d.attach) {
    if (a.m1 <= 0 || a.n1 < 0) errs.push_back("attach orders must be m1 > 0, n1 >= 0");
    sum_m1 += a.m1;
    sum_n1 += a.n1;
  }
  for (const auto& z : d.extra_zeros) {
    if (z.order <= 0) errs.push_back("zero orders must be positive");
    sum_a += z.order;
  }
  if (d.m0 <= 0 || d.n0 <= 0) errs.push_back("m0 and n0 must be positive");
  // deg div(tau) = sum a - sum n1 must equal -n0 sum m1 / m0
  if (errs.empty() && (sum_a - sum_n1) * d.m0 != -static_cast<long>(d.n0) * sum_m1)
    errs.push_back("degree mismatch: deg div(tau) != -n0 r0");
  return errs;
}

struct EssentialZero {
  CorePoint point;
  int multiplicity = 1;
};

/// A zero of omega = n0 dsigma/sigma + m0 dtau/tau. `special` marks zeros at
/// points where sigma or tau vanishes or has a pole; the rest are essential.
struct OmegaZero {
  CorePoint point;
  int multiplicity = 1;
  bool special = false;
};

namespace detail {

struct SpecialPoint {
  cplx z;
  int sigma_ord = 0;
  int tau_ord = 0;
};

/// Distinct finite points carrying sigma or tau divisor data; the data at
/// infinity is accumulated separately.
inline std::vector<SpecialPoint> finite_special_points(const CoreSectionData& d, double tol, SpecialPoint& inf) {
  std::vector<SpecialPoint> pts;
  inf = {};
  auto add = [&](const CorePoint& p, int so, int to) {
    if (!p) {
      inf.sigma_ord += so;
      inf.tau_ord += to;
      return;
    }
    for (auto& q : pts)
      if (std::abs(q.z - *p) <= tol * (1.0 + std::abs(*p))) {
        q.sigma_ord += so;
        q.tau_ord += to;
        return;
      }
    pts.push_back({*p, so, to});
  };
  for (const auto& a : d.attach) add(a.point, a.m1, -a.n1);
  for (const auto& z : d.extra_zeros) add(z.point, 0, z.order);
  return pts;
}

}  // namespace detail

/// Zeros of omega on P^1, found as zeros of the numerator of
/// K = n0 sigma' tau + m0 sigma tau' after removing the factors K acquires at
/// the divisor points. sigma and tau are monic on the affine chart; infinity
/// is handled by a degree count.
inline std::vector<OmegaZero> omega_zeros(const CoreSectionData& d, double point_tol = 1e-9) {
  if (d.m0 <= 0 || d.n0 <= 0) throw std::invalid_argument("m0 and n0 must be positive");
  detail::SpecialPoint inf;
  const auto pts = detail::finite_special_points(d, point_tol, inf);
  // sigma = S, tau = A / B
  Poly S{1.0}, A{1.0}, B{1.0};
  for (const auto& p : pts) {
    S = poly_mul(S, poly_linear_power(p.z, p.sigma_ord));
    if (p.tau_ord > 0) A = poly_mul(A, poly_linear_power(p.z, p.tau_ord));
    if (p.tau_ord < 0) B = poly_mul(B, poly_linear_power(p.z, -p.tau_ord));
  }
  const double n0 = d.n0, m0 = d.m0;
  Poly N = poly_add(poly_scale(poly_mul(poly_mul(poly_derivative(S), A), B), n0),
                    poly_scale(poly_mul(S, poly_add(poly_mul(poly_derivative(A), B),
                                                    poly_scale(poly_mul(A, poly_derivative(B)), -1.0))),
                               m0));
  // ord_x N = s + |e| - 1 when the residue n0 s + m0 e is nonzero, and at
  // least s + |e| otherwise.
  int poles = 0;
  long residue_sum = 0;
  for (const auto& p : pts) {
    const long res = static_cast<long>(d.n0) * p.sigma_ord + static_cast<long>(d.m0) * p.tau_ord;
    residue_sum += res;
    const int e = p.sigma_ord + std::abs(p.tau_ord) - (res != 0 ? 1 : 0);
    for (int i = 0; i < e; ++i) N = poly_deflate(N, p.z);
    if (res != 0) ++poles;
  }
  // What is left is the numerator of omega over prod (z - x): degree at most
  // poles - 1, and at most poles - 2 when the residue at infinity vanishes.
  const int max_deg = residue_sum == 0 ? poles - 2 : poles - 1;
  if (static_cast<int>(N.size()) > max_deg + 1) N.resize(static_cast<std::size_t>(std::max(max_deg + 1, 0)));
  const double nn = poly_norm(N);
  while (!N.empty() && std::abs(N.back()) <= 1e-10 * nn) N.pop_back();

  std::vector<OmegaZero> out;
  int finite_count = 0;
  for (const auto& r : poly_roots(N)) {
    finite_count += r.multiplicity;
    bool special = std::any_of(pts.begin(), pts.end(), [&](const auto& p) {
      return std::abs(p.z - r.value) <= 1e-6 * (1.0 + std::abs(p.z));
    });
    out.push_back({r.value, r.multiplicity, special});
  }
  const int ord_inf = poles - finite_count - 2;
  if (residue_sum == 0 && ord_inf > 0) out.push_back({std::nullopt, ord_inf, inf.sigma_ord != 0 || inf.tau_ord != 0});
  return out;
}

/// Essential zeros: zeros of K where sigma and tau are finite and nonzero.
inline std::vector<EssentialZero> essential_zeros(const CoreSectionData& d, double point_tol = 1e-9) {
  std::vector<EssentialZero> out;
  for (const auto& z : omega_zeros(d, point_tol))
    if (!z.special) out.push_back({z.point, z.multiplicity});
  return out;
}

inline int essential_zero_count(const std::vector<EssentialZero>& zs, bool with_multiplicity = false) {
  int n = 0;
  for (const auto& z : zs) n += with_multiplicity ? z.multiplicity : 1;
  return n;
}

/// Inputs of the core invariant read off divisor data on a rational core: h
/// attach points, v proportional ones (n0 m1 = m0 n1), k distinct zeros of
/// tau, and the order of omega at each proportional attach point.
struct CoreCounts {
  int h = 0, v = 0, k = 0;
  std::vector<long> ord_terms;

  long chi() const {
    long c = h - v + k - 2;
    for (long o : ord_terms) c -= o;
    return c;
  }
};

inline CoreCounts core_counts(const CoreSectionData& d, double point_tol = 1e-9) {
  CoreCounts cc;
  cc.h = static_cast<int>(d.attach.size());
  std::vector<CorePoint> zs;
  for (const auto& z : d.extra_zeros) {
    bool dup = std::any_of(zs.begin(), zs.end(), [&](const CorePoint& q) {
      if (!q || !z.point) return !q && !z.point;
      return std::abs(*q - *z.point) <= point_tol * (1.0 + std::abs(*q));
    });
    if (!dup) zs.push_back(z.point);
  }
  cc.k = static_cast<int>(zs.size());
  const auto oz = omega_zeros(d, point_tol);
  for (const auto& a : d.attach) {
    if (static_cast<long>(d.n0) * a.m1 != static_cast<long>(d.m0) * a.n1) continue;
    ++cc.v;
    long ord = 0;
    for (const auto& z : oz) {
      bool same = (!z.point && !a.point) ||
                  (z.point && a.point && std::abs(*z.point - *a.point) <= 1e-6 * (1.0 + std::abs(*a.point)));
      if (same) ord += z.multiplicity;
    }
    cc.ord_terms.push_back(ord);
  }
  return cc;
}

/// sigma(z) and tau(z) in the monic affine normalization.
inline std::pair<cplx, cplx> sigma_tau(const CoreSectionData& d, cplx z) {
  cplx s = 1.0, t = 1.0;
  for (const auto& a : d.attach)
    if (a.point) {
      s *= ipow(z - *a.point, a.m1);
      t *= ipow(z - *a.point, -a.n1);
    }
  for (const auto& q : d.extra_zeros)
    if (q.point) t *= ipow(z - *q.point, q.order);
  return {s, t};
}

struct CoreSValues {
  std::vector<cplx> s_values;
  int kappa_bar = 0;
};

/// Solutions s of s^{n0bar} = (l n0/(l n0 - m0))^{l n0bar} sigma^{n0bar}
/// ((l n0 - m0)/m0)^{m0bar} t^{d m0bar} tau^{m0bar} over the finite
/// essential zeros; kappa_bar counts distinct sigma^{n0bar} tau^{m0bar}.
inline CoreSValues subordinate_s_from_core(const CoreSectionData& d, cplx t, const std::vector<EssentialZero>& zeros,
                                           int deform_exp = 1) {
  if (t == cplx{}) throw std::invalid_argument("t must be nonzero");
  const int g = std::gcd(d.m0, d.n0);
  const int mb = d.m0 / g, nb = d.n0 / g;
  const double ln0 = static_cast<double>(d.l) * d.n0;
  if (ln0 == d.m0) throw std::invalid_argument("l n0 must differ from m0");
  std::vector<cplx> invariants;
  for (const auto& z : zeros) {
    if (!z.point) continue;
    auto [sg, ta] = sigma_tau(d, *z.point);
    cplx inv = ipow(sg, nb) * ipow(ta, mb);
    bool seen = std::any_of(invariants.begin(), invariants.end(),
                            [&](cplx u) { return std::abs(u - inv) <= 1e-7 * (1.0 + std::abs(inv)); });
    if (!seen) invariants.push_back(inv);
  }
  CoreSValues out;
  out.kappa_bar = static_cast<int>(invariants.size());
  for (cplx inv : invariants) {
    cplx rhs = std::pow(cplx(ln0 / (ln0 - d.m0)), static_cast<double>(d.l) * nb) * inv *
               ipow(cplx((ln0 - d.m0) / d.m0), mb) * ipow(t, static_cast<long>(deform_exp) * mb);
    const double rad = std::pow(std::abs(rhs), 1.0 / nb);
    for (int k = 0; k < nb; ++k) out.s_values.push_back(std::polar(rad, (std::arg(rhs) + 2 * M_PI * k) / nb));
  }
  return out;
}

}  // namespace barkfib
