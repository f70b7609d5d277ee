#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <functional>
#include <numbers>
#include <utility>
#include <vector>

#include "errors.hpp"

namespace intertwine {

using cplx = std::complex<double>;

inline constexpr double pi = std::numbers::pi;
inline constexpr cplx I{0.0, 1.0};

enum class GammaFactorKind { Real, Complex };

struct QuadratureSpec {
  double abs_tol = 1e-13;
  double rel_tol = 1e-13;
  int max_subdivisions = 12;  // number of step halvings
};

namespace detail {

inline bool is_pole(cplx z) {
  if (z.imag() != 0.0) return false;
  double r = z.real();
  return r <= 0.0 && r == std::floor(r);
}

// Stirling series after shifting |z| >= 16; B_{2k} / (2k (2k-1)) for k = 1..10.
inline constexpr std::array<double, 10> stirling_c = {
    1.0 / 12.0,          -1.0 / 360.0,         1.0 / 1260.0,        -1.0 / 1680.0,
    1.0 / 1188.0,        -691.0 / 360360.0,    1.0 / 156.0,         -3617.0 / 122400.0,
    43867.0 / 244188.0,  -174611.0 / 125400.0};

inline cplx log_gamma_right(cplx z) {
  cplx shift = 1.0;
  while (std::abs(z) < 16.0) {
    shift *= z;
    z += 1.0;
  }
  const cplx inv = 1.0 / z, inv2 = inv * inv;
  cplx series = 0.0, pw = inv;
  for (double c : stirling_c) {
    series += c * pw;
    pw *= inv2;
  }
  return (z - 0.5) * std::log(z) - z + 0.5 * std::log(2.0 * pi) + series - std::log(shift);
}

}  // namespace detail

// log Gamma up to a multiple of 2 pi i; exp() of it is Gamma.
inline cplx complex_log_gamma(cplx z) {
  if (detail::is_pole(z)) throw PoleError("Gamma pole at " + std::to_string(z.real()));
  if (z.real() >= 0.5) return detail::log_gamma_right(z);
  return std::log(pi) - std::log(std::sin(pi * z)) - detail::log_gamma_right(1.0 - z);
}

inline cplx complex_gamma(cplx z) {
  if (detail::is_pole(z)) throw PoleError("Gamma pole at " + std::to_string(z.real()));
  if (z.imag() == 0.0) return std::tgamma(z.real());
  if (z.real() >= 0.5) return std::exp(detail::log_gamma_right(z));
  return pi / (std::sin(pi * z) * std::exp(detail::log_gamma_right(1.0 - z)));
}

// Gamma_R(s) = pi^{-s/2} Gamma(s/2),  Gamma_C(s) = 2 (2 pi)^{-s} Gamma(s).
inline cplx log_gamma_factor(GammaFactorKind kind, cplx s) {
  if (kind == GammaFactorKind::Real) return -0.5 * s * std::log(pi) + complex_log_gamma(0.5 * s);
  return std::log(2.0) - s * std::log(2.0 * pi) + complex_log_gamma(s);
}

inline cplx gamma_factor(GammaFactorKind kind, cplx s) {
  if (kind == GammaFactorKind::Real) return std::pow(pi, -0.5 * s) * complex_gamma(0.5 * s);
  return 2.0 * std::pow(2.0 * pi, -s) * complex_gamma(s);
}

// Trapezoid on the whole line with step halving. g must decay at least
// exponentially in |u|; [-umax, umax] carries all representable mass.
template <class G>
cplx trapezoid_line(G&& g, double umax, const QuadratureSpec& spec) {
  double h = 0.5;
  cplx sum = g(0.0);
  for (double u = h; u <= umax; u += h) sum += g(u) + g(-u);
  cplx prev = sum * h;
  for (int level = 1; level <= spec.max_subdivisions; ++level) {
    h *= 0.5;
    for (double u = h; u <= umax; u += 2.0 * h) sum += g(u) + g(-u);
    cplx cur = sum * h;
    double err = std::abs(cur - prev);
    if (!std::isfinite(err)) throw ToleranceNotMet("non-finite integrand");
    if (err <= std::max(spec.abs_tol, spec.rel_tol * std::abs(cur)) && level >= 2) return cur;
    prev = cur;
  }
  throw ToleranceNotMet("trapezoid did not converge");
}

// int_0^inf f(r) dr by the exp-sinh map r = exp(pi/2 sinh t).
// log r is confined to [-50, 50]; f must be written so that it stays finite there.
template <class F>
cplx quad_halfline(F&& f, const QuadratureSpec& spec = {}) {
  constexpr double log_r_max = 50.0;
  const double tmax = std::asinh(log_r_max * 2.0 / pi);
  auto g = [&](double t) -> cplx {
    double lr = 0.5 * pi * std::sinh(t);
    double r = std::exp(lr);
    return cplx(f(r)) * r * 0.5 * pi * std::cosh(t);
  };
  return trapezoid_line(g, tmax, spec);
}

// K_nu(y) = 1/2 int_0^inf e^{-y(t+1/t)} t^nu dt/t = 1/2 int_R e^{-2y cosh u + nu u} du.
inline cplx bessel_k(cplx nu, double y, const QuadratureSpec& spec = {}) {
  if (!(y > 0.0)) throw DomainError("bessel_k requires y > 0");
  // beyond umax the exponent is below -745 for every |Re nu| < 2y sinh(umax)/umax.
  double umax = std::acosh(std::max(1.0, 800.0 / (2.0 * y))) + 1.0;
  while (2.0 * y * std::cosh(umax) - std::abs(nu.real()) * umax < 800.0) umax += 0.5;
  auto g = [&](double u) -> cplx { return std::exp(-2.0 * y * std::cosh(u) + nu * u); };
  return 0.5 * trapezoid_line(g, umax, spec);
}

// K_{C,a}(w) = 4 K_w(a),  K_{R,a}(w) = 2 K_{w/2}(a).
inline cplx kernel_ka(GammaFactorKind kind, double a, cplx w, const QuadratureSpec& spec = {}) {
  if (!(a >= 1.0 && a < 2.0)) throw DomainError("kernel_ka requires a in [1,2)");
  if (kind == GammaFactorKind::Complex) return 4.0 * bessel_k(w, a, spec);
  return 2.0 * bessel_k(0.5 * w, a, spec);
}

// Gauss-Legendre nodes and weights on [a, b].
inline std::vector<std::pair<double, double>> gauss_legendre(int n, double a, double b) {
  std::vector<std::pair<double, double>> out(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    double x = std::cos(pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; ++k) {
        double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    double p0 = 1.0, p1 = x;
    for (int k = 2; k <= n; ++k) {
      double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
      p0 = p1;
      p1 = p2;
    }
    dp = n * (x * p1 - p0) / (x * x - 1.0);
    double w = 2.0 / ((1.0 - x * x) * dp * dp);
    out[static_cast<std::size_t>(i)] = {0.5 * (b - a) * x + 0.5 * (b + a), 0.5 * (b - a) * w};
  }
  return out;
}

inline double binom(int n, int k) {
  if (k < 0 || k > n || n < 0) return 0.0;
  double r = 1.0;
  for (int j = 1; j <= k; ++j) r = r * (n - k + j) / j;
  return std::round(r);
}

inline cplx ipow(int k) {
  switch (((k % 4) + 4) % 4) {
    case 0: return {1.0, 0.0};
    case 1: return {0.0, 1.0};
    case 2: return {-1.0, 0.0};
    default: return {0.0, -1.0};
  }
}

inline double neg1pow(int k) { return (k % 2 == 0) ? 1.0 : -1.0; }

}  // namespace intertwine
