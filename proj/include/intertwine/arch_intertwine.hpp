#pragma once

#include <cmath>
#include <complex>
#include <cstdlib>
#include <string>
#include <vector>

#include "compact_harmonics.hpp"
#include "numerics.hpp"
#include "schwartz_symbolic.hpp"

namespace intertwine {

enum class Place { RealPlace, ComplexPlace };

struct ArchParams {
  Place place = Place::ComplexPlace;
  double mu = 0.0;  // twist exponent of omega^{-1} xi^2
  int n0 = 0;       // complex: angular weight; real: parity in {0,1}
  cplx s = 0.0;
};

struct ArchEigenvalue {
  cplx value;
  int n = 0;
  ArchParams params;
  bool normalized = true;
};

inline void check_arch_admissible(const ArchParams& p, int n) {
  if (p.place == Place::ComplexPlace) {
    if (n < std::abs(p.n0)) throw RangeError("complex place requires n >= |n0|");
    if ((n - p.n0) % 2 != 0) throw ParityError("complex place requires n = n0 mod 2");
  } else {
    if (p.n0 != 0 && p.n0 != 1) throw RangeError("real place requires n0 in {0,1}");
    if (std::abs(n) < p.n0) throw RangeError("real place requires |n| >= n0");
    if ((n - p.n0) % 2 != 0) throw ParityError("real place requires n = n0 mod 2");
  }
}

// Local archimedean L-factor of the twist character, log form.
// sign = +1 for omega^{-1} xi^2, -1 for its inverse.
inline cplx log_l_arch(const ArchParams& p, cplx z, int sign) {
  const cplx shift = static_cast<double>(sign) * I * p.mu;
  if (p.place == Place::ComplexPlace)
    return log_gamma_factor(GammaFactorKind::Complex, z + shift + std::abs(p.n0) / 2.0);
  return log_gamma_factor(GammaFactorKind::Real, z + shift + static_cast<double>(p.n0));
}

namespace detail {

inline cplx mu_arch_modulus_part(const ArchParams& p, int n) {
  const cplx s = p.s, t = I * p.mu;
  if (p.place == Place::ComplexPlace) {
    const auto G = GammaFactorKind::Complex;
    return std::exp(log_l_arch(p, 1.0 + 2.0 * s, +1) - log_l_arch(p, 1.0 - 2.0 * s, -1) +
                    log_gamma_factor(G, 1.0 - 2.0 * s - t + n / 2.0) -
                    log_gamma_factor(G, 1.0 + 2.0 * s + t + n / 2.0));
  }
  const auto G = GammaFactorKind::Real;
  const double m = std::abs(n);
  return std::exp(log_l_arch(p, 1.0 + 2.0 * s, +1) - log_l_arch(p, 1.0 - 2.0 * s, -1) +
                  log_gamma_factor(G, 1.0 - 2.0 * s - t + m) -
                  log_gamma_factor(G, 1.0 + 2.0 * s + t + m));
}

inline cplx real_sign(int n) { return neg1pow((std::abs(n) - n) / 2); }

}  // namespace detail

// Eigenvalue of the normalized operator on e(s; n, k). The complex-place phase is i^{n0},
// the value carried by the transform of the basic section.
inline ArchEigenvalue mu_arch(const ArchParams& p, int n) {
  check_arch_admissible(p, n);
  cplx v = detail::mu_arch_modulus_part(p, n);
  v *= (p.place == Place::ComplexPlace) ? ipow(p.n0) : detail::real_sign(n);
  return {v, n, p, true};
}

// Same Gamma ratio with the phase 1/i^{n0} exactly as displayed in the closed form.
inline cplx mu_arch_printed(const ArchParams& p, int n) {
  check_arch_admissible(p, n);
  cplx v = detail::mu_arch_modulus_part(p, n);
  return v * ((p.place == Place::ComplexPlace) ? ipow(-p.n0) : 1.0 / detail::real_sign(n));
}

// Finite-product form, valid for every s off the poles.
inline cplx mu_arch_product(const ArchParams& p, int n) {
  check_arch_admissible(p, n);
  cplx acc = 1.0;
  if (p.place == Place::ComplexPlace) {
    const cplx w = 2.0 * p.s + I * p.mu;
    for (int k = 0; k < (n - std::abs(p.n0)) / 2; ++k) {
      const double a = 1.0 + std::abs(p.n0) / 2.0 + k;
      acc *= (a - w) / (a + w);
    }
    return ipow(p.n0) * acc;
  }
  const cplx w = p.s + I * p.mu / 2.0;
  for (int j = 0; j < (std::abs(n) - p.n0) / 2; ++j) {
    const double b = (1.0 + p.n0) / 2.0 + j;
    acc *= (b - w) / (b + w);
  }
  return detail::real_sign(n) * acc;
}

// d/ds log mu(s; n) from the product form.
inline cplx mu_arch_log_derivative(const ArchParams& p, int n) {
  check_arch_admissible(p, n);
  cplx acc = 0.0;
  if (p.place == Place::ComplexPlace) {
    const cplx w = 2.0 * p.s + I * p.mu;
    for (int k = 0; k < (n - std::abs(p.n0)) / 2; ++k) {
      const double a = 1.0 + std::abs(p.n0) / 2.0 + k;
      acc -= 4.0 * a / (a * a - w * w);
    }
    return acc;
  }
  const cplx w = p.s + I * p.mu / 2.0;
  for (int j = 0; j < (std::abs(n) - p.n0) / 2; ++j) {
    const double b = (1.0 + p.n0) / 2.0 + j;
    acc -= 2.0 * b / (b * b - w * w);
  }
  return acc;
}

struct ArchDerivative {
  cplx exact;
  cplx finite_difference;
};

// mu'(s) = d mu / ds; the finite difference steps along the imaginary axis.
inline ArchDerivative mu_arch_derivative(const ArchParams& p, int n, double h = 1e-5) {
  if (!(h >= 1e-6 && h <= 1e-4)) throw DomainError("finite-difference step must lie in [1e-6, 1e-4]");
  ArchDerivative d;
  d.exact = mu_arch(p, n).value * mu_arch_log_derivative(p, n);
  ArchParams up = p, dn = p;
  up.s += I * h;
  dn.s -= I * h;
  d.finite_difference = (mu_arch(up, n).value - mu_arch(dn, n).value) / (2.0 * I * h);
  return d;
}

inline double mu_arch_derivative_bound(const ArchParams& p, int n) {
  check_arch_admissible(p, n);
  if (p.place == Place::ComplexPlace) {
    const double a = std::abs(p.n0);
    if (n == std::abs(p.n0)) return 0.0;
    return 4.0 * (2.0 / (a + 2.0) + std::log(n / (a + 2.0)));
  }
  if (std::abs(n) == p.n0) return 0.0;
  return 2.0 * (2.0 / (p.n0 + 1.0) + std::log((std::abs(n) - 1.0) / (p.n0 + 1.0)));
}

// f_Phi(s; kappa) = (2/pi) int_0^inf int_0^{2pi} Phi(r e^{i a} (-conj z2, conj z1)) e^{i n0 a} r^{2+4s+2i mu} da dr/r.
template <class C>
cplx tate_section_complex(const PolyGaussian4<C>& phi, const ArchParams& p, const SU2Point& kappa,
                          const QuadratureSpec& spec = {}) {
  const SU2Point row = w_inv_times(kappa);
  const int m = 2 * (phi.total_degree() + std::abs(p.n0)) + 4;
  const cplx expo = 1.0 + 4.0 * p.s + 2.0 * I * p.mu;  // includes the dr/r -> dr shift
  auto radial = [&](double r) -> cplx {
    cplx ang = 0.0;
    for (int j = 0; j < m; ++j) {
      const double a = 2.0 * pi * j / m;
      const cplx e = std::polar(r, a);
      ang += evaluate_h(phi, e * row.z1, e * row.z2) * std::polar(1.0, p.n0 * a);
    }
    return ang / static_cast<double>(m) * std::exp(expo * std::log(r));
  };
  return 4.0 * quad_halfline(radial, spec);
}

// f_Phi(s; kappa) = int_{R^x} Phi(t i e^{i alpha}) sgn(t)^{n0} |t|^{1+2s+i mu} d^x t.
template <class C>
cplx tate_section_real(const PolyGaussian2<C>& phi, const ArchParams& p, double alpha,
                       const QuadratureSpec& spec = {}) {
  const cplx v = I * std::polar(1.0, alpha);
  const cplx expo = 2.0 * p.s + I * p.mu;
  const double sgn = neg1pow(p.n0);
  auto radial = [&](double r) -> cplx {
    return (evaluate_c(phi, r * v) + sgn * evaluate_c(phi, -r * v)) * std::exp(expo * std::log(r));
  };
  return quad_halfline(radial, spec);
}

// Closed form on the basic section: Gamma_C(1 + 2s + i mu + n/2) e~_{n,0}^{n0}(kappa).
inline cplx tate_section_closed_complex(const ArchParams& p, int n, const SU2Point& kappa) {
  check_arch_admissible(p, n);
  const cplx g = gamma_factor(GammaFactorKind::Complex, 1.0 + 2.0 * p.s + I * p.mu + n / 2.0);
  return g * harmonic_su2(p.n0, n, 0).poly(kappa.as_vars());
}

inline cplx tate_section_closed_real(const ArchParams& p, int n, double alpha) {
  check_arch_admissible(p, n);
  const cplx g = gamma_factor(GammaFactorKind::Real, 1.0 + 2.0 * p.s + I * p.mu + static_cast<double>(std::abs(n)));
  return g * std::polar(1.0, n * alpha);
}

inline ArchParams swapped(const ArchParams& p) {
  ArchParams q = p;
  q.s = -p.s;
  q.mu = -p.mu;
  if (p.place == Place::ComplexPlace) q.n0 = -p.n0;
  return q;
}

namespace detail {

inline cplx consistent_ratio(const std::vector<cplx>& r, double tol) {
  for (const auto& x : r)
    if (std::abs(x - r.front()) > tol * std::max(1.0, std::abs(r.front())))
      throw InconsistentRatio("oracle ratio depends on the sample point");
  cplx acc = 0.0;
  for (const auto& x : r) acc += x;
  return acc / static_cast<double>(r.size());
}

}  // namespace detail

// Independent eigenvalue: build the section, transform it symbolically, integrate both Tate
// sections by quadrature, divide by the K-type values and the local L-factor ratio.
// For the complex place k selects e~_{n,k} (k in {0,1}); the k=1 section is R(X+) P / n.
inline cplx mu_arch_oracle(const ArchParams& p, int n, const std::vector<SU2Point>& kappas, int k = 0,
                           double tol = 1e-8) {
  check_arch_admissible(p, n);
  if (p.place != Place::ComplexPlace) throw DomainError("use mu_arch_oracle_real for the real place");
  auto P = section_complex(p.n0, n);
  for (int j = 0; j < k; ++j)
    P = lie_act_su2(LieGen::Xplus, P) * PiSeries(GaussRational(Rational(1, n - j)));
  const auto Phat = fourier_hat_h(P);
  const ArchParams q = swapped(p);
  const auto e_src = harmonic_su2(p.n0, n, k).poly;
  const auto e_dst = harmonic_su2(q.n0, n, k).poly;
  const cplx lratio = std::exp(log_l_arch(p, 1.0 + 2.0 * p.s, +1) - log_l_arch(p, 1.0 - 2.0 * p.s, -1));
  std::vector<cplx> ratios;
  for (const auto& kap : kappas) {
    const cplx src = tate_section_complex(P, p, kap) / e_src(kap.as_vars());
    const cplx dst = tate_section_complex(Phat, q, kap) / e_dst(kap.as_vars());
    ratios.push_back(lratio * dst / src);
  }
  return detail::consistent_ratio(ratios, tol);
}

inline cplx mu_arch_oracle_real(const ArchParams& p, int n, const std::vector<double>& alphas,
                                double tol = 1e-8) {
  check_arch_admissible(p, n);
  if (p.place != Place::RealPlace) throw DomainError("use mu_arch_oracle for the complex place");
  const auto P = section_real(n);
  const auto Phat = fourier_hat_c(P);
  const ArchParams q = swapped(p);
  const cplx lratio = std::exp(log_l_arch(p, 1.0 + 2.0 * p.s, +1) - log_l_arch(p, 1.0 - 2.0 * p.s, -1));
  std::vector<cplx> ratios;
  for (double a : alphas) {
    const cplx e = std::polar(1.0, n * a);
    ratios.push_back(lratio * (tate_section_real(Phat, q, a) / e) / (tate_section_real(P, p, a) / e));
  }
  return detail::consistent_ratio(ratios, tol);
}

}  // namespace intertwine
