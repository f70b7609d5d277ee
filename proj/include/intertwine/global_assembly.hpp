#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <functional>
#include <map>
#include <vector>

#include "arch_intertwine.hpp"
#include "errors.hpp"
#include "numerics.hpp"
#include "padic_local.hpp"

namespace intertwine {

namespace detail {

// eta(z) = sum (-1)^{k} (k+1)^{-z} with Cohen-Villegas-Zagier weights of order n.
inline cplx eta_accelerated(cplx z, int n) {
  std::vector<double> d(static_cast<std::size_t>(n) + 1);
  double term = 1.0, acc = 1.0;
  d[0] = 1.0;
  for (int i = 0; i < n; ++i) {
    term *= 4.0 * (n + i) * (n - i) / ((2.0 * i + 1.0) * (2.0 * i + 2.0));
    acc += term;
    d[static_cast<std::size_t>(i) + 1] = acc;
  }
  const double dn = d[static_cast<std::size_t>(n)];
  cplx sum = 0.0;
  for (int k = 0; k < n; ++k) {
    const double wgt = (dn - d[static_cast<std::size_t>(k)]) / dn;
    sum += neg1pow(k) * wgt * std::exp(-z * std::log(k + 1.0));
  }
  return sum;
}

// Truncation error is below 1e-17 |Gamma(z)|^{-1}-scaled; the order grows with |Im z| and -Re z.
inline int eta_order(cplx z) {
  const double t = std::abs(z.imag());
  const double extra = std::max(0.0, 0.5 - z.real()) * std::log(t + 2.0);
  return static_cast<int>(std::ceil((0.5 * pi * t + extra + 42.0) / std::log(3.0 + std::sqrt(8.0)))) + 4;
}

// Mean of f over the circle |w - z| = r; exact for f analytic on the closed disc.
template <class F>
cplx circle_mean(F&& f, cplx z, double r, int points = 32) {
  cplx acc = 0.0;
  for (int j = 0; j < points; ++j) acc += f(z + std::polar(r, 2.0 * pi * j / points));
  return acc / static_cast<double>(points);
}

// Neville extrapolation to h = 0 of values v_j sampled at h_j.
inline cplx extrapolate_zero(const std::vector<double>& h, std::vector<cplx> v) {
  const std::size_t m = h.size();
  for (std::size_t k = 1; k < m; ++k)
    for (std::size_t j = m - 1; j >= k; --j) {
      v[j] = (h[j - k] * v[j] - h[j] * v[j - 1]) / (h[j - k] - h[j]);
      if (j == k) break;
    }
  return v[m - 1];
}

}  // namespace detail

// Riemann zeta for z != 1, via eta(z) / (1 - 2^{1-z}).
inline cplx riemann_zeta(cplx z) {
  if (z == cplx(1.0, 0.0)) throw PoleError("zeta has a pole at 1");
  const cplx den = 1.0 - std::exp((1.0 - z) * std::log(2.0));
  // removable zeros of den on Re z = 1 away from z = 1
  if (std::abs(den) < 1e-3 && std::abs(z - 1.0) > 0.5)
    return detail::circle_mean([](cplx w) { return riemann_zeta(w); }, z, 0.1);
  return detail::eta_accelerated(z, detail::eta_order(z)) / den;
}

// Lambda(z) = Gamma_R(z) zeta(z).
inline cplx completed_zeta(cplx z) {
  if (std::abs(z) < 1e-15 || std::abs(z - 1.0) < 1e-15) throw PoleError("Lambda has poles at 0 and 1");
  // Gamma_R poles at -2k cancel against trivial zeros; Lambda is analytic there.
  if (z.real() < -1.0) {
    const double k = std::round(-z.real() / 2.0);
    const cplx center(-2.0 * k, 0.0);
    if (k >= 1.0 && std::abs(z - center) < 0.1)
      return detail::circle_mean([](cplx w) { return completed_zeta(w); }, z, 0.3);
  }
  return gamma_factor(GammaFactorKind::Real, z) * riemann_zeta(z);
}

// lim_{h->0} h Lambda(z0 + h), by extrapolation along real h.
inline cplx completed_zeta_residue(double z0) {
  std::vector<double> h;
  std::vector<cplx> v;
  for (int j = 0; j < 8; ++j) {
    const double hj = 0.2 / std::pow(2.0, j);
    h.push_back(hj);
    v.push_back(hj * completed_zeta(z0 + hj));
  }
  return detail::extrapolate_zero(h, v);
}

// -Res_{z=0} Lambda / (2 Lambda(2)); the residue stands for Lambda^*(0).
inline double residue_constant() {
  return -completed_zeta_residue(0.0).real() / (2.0 * completed_zeta(2.0).real());
}

inline cplx completed_zeta_log_derivative(cplx z, double h = 1e-4) {
  const cplx d = (completed_zeta(z + h) - completed_zeta(z - h)) / (2.0 * h);
  return d / completed_zeta(z);
}

// Lambda(z) - 1/(z-1), analytic near z = 1.
inline cplx completed_zeta_regular(cplx z) {
  auto r = [](cplx w) { return completed_zeta(w) - 1.0 / (w - 1.0); };
  if (std::abs(z - 1.0) < 0.05) return detail::circle_mean(r, z, 0.25);
  return r(z);
}

// mu_Q(s) = Lambda(1 - 2s) / Lambda(1 + 2s); mu_Q(0) = -1.
inline cplx mu_field(cplx s) {
  if (std::abs(s) < 0.02) {
    const cplx t = 2.0 * s;
    return (-1.0 + t * completed_zeta_regular(1.0 - t)) / (1.0 + t * completed_zeta_regular(1.0 + t));
  }
  return completed_zeta(1.0 - 2.0 * s) / completed_zeta(1.0 + 2.0 * s);
}

// n_inf at the real place, n_p at finite primes; absent primes carry n_p = 0.
struct GlobalKType {
  int n_inf = 0;
  std::map<std::int64_t, int> n_p;
};

// s = iy; mu is the global twist exponent, normalized to 0.
struct GlobalSpectralPoint {
  double y = 0.0;
  double mu = 0.0;
};

inline void check_global_ktype(const GlobalKType& k) {
  check_arch_admissible({Place::RealPlace, 0.0, 0, 0.0}, k.n_inf);
  for (auto [p, n] : k.n_p) {
    padic::check_prime(p);
    if (n < 0) throw RangeError("finite level must be >= 0");
  }
}

inline cplx mu_global(cplx s, const GlobalKType& k) {
  check_global_ktype(k);
  cplx v = mu_field(s) * mu_arch({Place::RealPlace, 0.0, 0, s}, k.n_inf).value;
  for (auto [p, n] : k.n_p) {
    if (n == 0) continue;
    const FiniteParams f{p, s, 0.0, MultChar::trivial(p), MultChar::trivial(p), AddChar{p, 0}};
    v *= mu_finite(f, n);
  }
  return v;
}

inline cplx mu_global(const GlobalSpectralPoint& pt, const GlobalKType& k) {
  if (pt.mu != 0.0) throw DomainError("global twist exponent is normalized to 0");
  return mu_global(cplx(0.0, pt.y), k);
}

// d/ds by a fourth-order central difference along the imaginary direction.
inline cplx mu_global_derivative(cplx s, const GlobalKType& k, double h = 1e-3) {
  auto f = [&](double t) { return mu_global(s + I * t, k); };
  return (-f(2.0 * h) + 8.0 * f(h) - 8.0 * f(-h) + f(-2.0 * h)) / (12.0 * I * h);
}

inline double laplace_eigenvalue(Place place, double y, double mu, int n, int n0) {
  check_arch_admissible({place, mu, n0, 0.0}, n);
  const double base = (1.0 + (2.0 * y + mu) * (2.0 * y + mu)) / 4.0;
  if (place == Place::ComplexPlace) return base + (2.0 * n * (n + 2.0) - 1.0 * n0 * n0) / 4.0;
  return base + n * n / 2.0;
}

// ||Lambda^c E(s; f)||^2 off the unitary axis.
inline double maass_selberg(cplx s, double c, double normf, double normMf, cplx pairing, double mu_char,
                            bool selfdual) {
  const double sg = s.real();
  if (sg == 0.0) throw DomainError("maass_selberg requires Re s != 0");
  if (!(c > 1.0)) throw DomainError("maass_selberg requires c > 1");
  double v = (normf * normf * std::pow(c, 2.0 * sg) - normMf * normMf * std::pow(c, -2.0 * sg)) / (2.0 * sg);
  if (selfdual) {
    const double den = 2.0 * s.imag() + mu_char;
    if (den == 0.0) throw DivisionByZero("selfdual term at 2 Im s + mu = 0");
    v += 2.0 * (pairing * std::exp(I * den * std::log(c))).imag() / den;
  }
  return v;
}

// Scalar unitary model M(s) e = mu(s) e with |mu(iy)| = 1; <e, M e> = conj(mu).
inline double maass_selberg_onaxis(double y, double c, cplx mu_value, cplx mu_prime, bool selfdual) {
  const double lc = std::log(c);
  double v = 2.0 * lc - (mu_prime / mu_value).real();
  if (selfdual) {
    if (std::abs(y) > 1e-8)
      v += (std::exp(2.0 * I * y * lc) * std::conj(mu_value)).imag() / y;
    else
      v += 2.0 * lc * mu_value.real() - mu_prime.real();
  }
  return v;
}

// Richardson limit sigma -> 0 of g(sigma) on a geometric grid (ratio sigmas[j]/sigmas[j+1] constant).
inline double richardson_limit(const std::function<double(double)>& g, const std::vector<double>& sigmas) {
  std::vector<cplx> v;
  for (double sg : sigmas) v.push_back(g(sg));
  return detail::extrapolate_zero(sigmas, v).real();
}

struct MaassSelbergCheck {
  double off_axis_limit = 0.0;
  double on_axis = 0.0;
  double abs_diff = 0.0;
};

inline MaassSelbergCheck maass_selberg_consistency(double y, double c, const GlobalKType& k, bool selfdual,
                                                   const std::vector<double>& sigmas = {1e-2, 1e-3, 1e-4}) {
  auto off = [&](double sg) {
    const cplx s(sg, y);
    const cplx m = mu_global(s, k);
    return maass_selberg(s, c, 1.0, std::abs(m), std::conj(m), 0.0, selfdual);
  };
  MaassSelbergCheck r;
  r.off_axis_limit = richardson_limit(off, sigmas);
  const cplx s(0.0, y);
  r.on_axis = maass_selberg_onaxis(y, c, mu_global(s, k), mu_global_derivative(s, k), selfdual);
  r.abs_diff = std::abs(r.off_axis_limit - r.on_axis);
  return r;
}

// Ht(w n(x)) via a rotation killing the lower-left entry of [[0,-1],[1,x]].
inline double height_wn_real(double x) {
  const double r = std::hypot(1.0, x);
  const double c = x / r, s = -1.0 / r;
  // g * [[c,-s],[s,c]]
  const double a11 = -s, a21 = c + x * s, a22 = -s + x * c;
  if (std::abs(a21) > 1e-12 * r) throw ToleranceNotMet("Iwasawa reduction failed");
  return std::abs(a11 / a22);
}

// Complex place: unitary columns (x,-1)/r, (1, conj x)/r; |.|_C is the square of the modulus.
inline double height_wn_complex(cplx x) {
  const double r = std::sqrt(1.0 + std::norm(x));
  const cplx u11 = x / r, u21 = -1.0 / r, u12 = 1.0 / r, u22 = std::conj(x) / r;
  const cplx a11 = -u21, a21 = u11 + x * u21, a22 = u12 + x * u22;
  if (std::abs(a21) > 1e-12 * r) throw ToleranceNotMet("Iwasawa reduction failed");
  return std::norm(a11 / a22);
}

inline double height_wn_real_closed(double x) { return 1.0 / (1.0 + x * x); }
inline double height_wn_complex_closed(cplx x) { return 1.0 / ((1.0 + std::norm(x)) * (1.0 + std::norm(x))); }

// x = num/den in Q_p: Ht = max(1, |x|_p)^{-2}.
inline double height_wn_padic(std::int64_t p, std::int64_t num, std::int64_t den) {
  padic::check_prime(p, true);
  if (den == 0) throw DomainError("denominator is zero");
  if (num == 0) return 1.0;
  const int v = padic::valuation(num, p) - padic::valuation(den, p);
  return v >= 0 ? 1.0 : std::pow(static_cast<double>(p), 2.0 * v);
}

inline bool height_bound_check(double ht) { return ht <= 1.0 + 1e-15; }

// (1 + lambda)^{2-2A} for the trivial-character K-type n at a single archimedean place.
inline double sobolev_term(Place place, double y, int n, int A) {
  return std::pow(1.0 + laplace_eigenvalue(place, y, 0.0, n, 0), 2.0 - 2.0 * A);
}

// sum over admissible n with |n| <= n_max of int_0^{y_max} (1 + lambda)^{2-2A} dy.
inline double sobolev_weight_sum(int A, double y_max, int n_max, Place place = Place::RealPlace) {
  if (A < 2) throw DomainError("sobolev_weight_sum requires A >= 2");
  const int panels = std::max(1, static_cast<int>(std::ceil(y_max)));
  std::vector<std::pair<double, double>> nodes;
  for (int j = 0; j < panels; ++j) {
    auto g = gauss_legendre(16, y_max * j / panels, y_max * (j + 1) / panels);
    nodes.insert(nodes.end(), g.begin(), g.end());
  }
  const int n_lo = place == Place::RealPlace ? -n_max : 0;
  double total = 0.0;
  for (int n = n_lo; n <= n_max; ++n) {
    if (n % 2 != 0) continue;
    double acc = 0.0;
    for (auto [y, w] : nodes) acc += w * sobolev_term(place, y, n, A);
    total += acc;
  }
  return total;
}

struct SobolevCauchy {
  std::vector<double> sums;
  bool cauchy = false;  // differences shrink and the last is below rel_tol
};

// Cutoffs (y_max, n_max) / 2^k for k = doublings..0.
inline SobolevCauchy sobolev_cauchy(int A, double y_max, int n_max, int doublings, Place place = Place::RealPlace,
                                    double rel_tol = 1e-2) {
  SobolevCauchy r;
  for (int k = doublings; k >= 0; --k) {
    const double sc = std::pow(2.0, -k);
    r.sums.push_back(sobolev_weight_sum(A, y_max * sc, static_cast<int>(std::lround(n_max * sc)), place));
  }
  r.cauchy = r.sums.size() >= 3;
  for (std::size_t j = 2; j < r.sums.size(); ++j)
    if (std::abs(r.sums[j] - r.sums[j - 1]) >= std::abs(r.sums[j - 1] - r.sums[j - 2])) r.cauchy = false;
  if (r.sums.size() >= 2) {
    const double last = std::abs(r.sums.back() - r.sums[r.sums.size() - 2]) / std::abs(r.sums.back());
    if (!(last < rel_tol)) r.cauchy = false;
  }
  return r;
}

// Least-squares slope of log term against log n for n in [n_lo, n_hi] (even n).
inline double sobolev_n_slope(Place place, int A, double y, int n_lo, int n_hi) {
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  int m = 0;
  for (int n = n_lo + (n_lo % 2); n <= n_hi; n += 2) {
    const double lx = std::log(static_cast<double>(n)), ly = std::log(sobolev_term(place, y, n, A));
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
    ++m;
  }
  return (m * sxy - sx * sy) / (m * sxx - sx * sx);
}

}  // namespace intertwine
