#pragma once

#include <cmath>
#include <map>
#include <vector>

#include "numerics.hpp"

namespace intertwine {

// sum_n c_n x^n e^{-a x^2}
struct PolyGaussian1D {
  std::map<int, cplx> coefficients;
  double a = pi;

  cplx operator()(double x) const {
    cplx acc = 0.0;
    int top = coefficients.empty() ? 0 : coefficients.rbegin()->first;
    for (int n = top; n >= 0; --n) {
      acc *= x;
      auto f = coefficients.find(n);
      if (f != coefficients.end()) acc += f->second;
    }
    return acc * std::exp(-a * x * x);
  }

  PolyGaussian1D reflected() const {
    PolyGaussian1D r{{}, a};
    for (auto [n, c] : coefficients) r.coefficients[n] = neg1pow(n) * c;
    return r;
  }
};

namespace detail {

// p(x) e^{-b x^2} -> (i/2pi) d/dx of it, polynomial part only.
inline std::vector<cplx> ft_step(const std::vector<cplx>& p, double b) {
  std::vector<cplx> q(p.size() + 1, 0.0);
  for (std::size_t k = 1; k < p.size(); ++k) q[k - 1] += static_cast<double>(k) * p[k];
  for (std::size_t k = 0; k < p.size(); ++k) q[k + 1] -= 2.0 * b * p[k];
  for (auto& c : q) c *= I / (2.0 * pi);
  return q;
}

}  // namespace detail

// Kernel e^{-2 pi i x xi}. x^n <-> (i/2pi)^n d^n/dxi^n; width a -> pi^2/a.
inline PolyGaussian1D ft_1d(const PolyGaussian1D& f) {
  const double b = pi * pi / f.a;
  PolyGaussian1D out{{}, b};
  int top = f.coefficients.empty() ? 0 : f.coefficients.rbegin()->first;
  std::vector<cplx> acc(static_cast<std::size_t>(top) + 1, 0.0);
  std::vector<cplx> p{std::sqrt(pi / f.a)};
  for (int n = 0; n <= top; ++n) {
    auto it = f.coefficients.find(n);
    if (it != f.coefficients.end())
      for (std::size_t k = 0; k < p.size(); ++k) acc[k] += it->second * p[k];
    p = detail::ft_step(p, b);
  }
  for (std::size_t k = 0; k < acc.size(); ++k)
    if (acc[k] != 0.0) out.coefficients[static_cast<int>(k)] = acc[k];
  return out;
}

inline PolyGaussian1D dirac_family(double eps) {
  if (!(eps > 0.0)) throw DomainError("dirac_family requires eps > 0");
  return PolyGaussian1D{{{0, cplx(1.0 / eps)}}, pi / (eps * eps)};
}

// int_R g(x) dx for Gaussian-decaying g of width a.
template <class G>
cplx integrate_line(G&& g, double a, const QuadratureSpec& spec = {}) {
  double umax = std::sqrt(760.0 / a) + 2.0;
  return trapezoid_line(g, umax, spec);
}

inline double l2_norm_sq(const PolyGaussian1D& f) {
  auto g = [&](double x) -> cplx { return std::norm(f(x)); };
  return integrate_line(g, 2.0 * f.a).real();
}

// Uniform samples values[i] = f(x0 + i dx).
struct SampledFunction {
  double x0 = -4.0;
  double dx = 0.01;
  std::vector<double> values;

  double x(std::size_t i) const { return x0 + static_cast<double>(i) * dx; }

  template <class F>
  static SampledFunction on_grid(F&& f, double lo, double hi, double dx) {
    SampledFunction s{lo, dx, {}};
    auto n = static_cast<std::size_t>(std::llround((hi - lo) / dx));
    s.values.resize(n + 1);
    for (std::size_t i = 0; i <= n; ++i) s.values[i] = f(s.x(i));
    return s;
  }
};

// Discrete || f * v_eps - f ||_p on the sample grid.
inline double mollify_deficit(const SampledFunction& f, double eps, double p) {
  if (!(eps > 0.0)) throw DomainError("mollify_deficit requires eps > 0");
  if (!(p >= 1.0)) throw DomainError("mollify_deficit requires p >= 1");
  if (f.dx > eps / 4.0 * (1.0 + 1e-12)) throw GridTooCoarse("grid spacing exceeds eps/4");
  const std::size_t n = f.values.size();
  const double c = 1.0 / eps, w = pi / (eps * eps);
  std::vector<double> kern(n);
  for (std::size_t k = 0; k < n; ++k) {
    double d = static_cast<double>(k) * f.dx;
    kern[k] = c * std::exp(-w * d * d);
  }
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    double conv = 0.0;
    for (std::size_t j = 0; j < n; ++j)
      conv += f.values[j] * kern[i > j ? i - j : j - i];
    conv *= f.dx;
    acc += std::pow(std::abs(conv - f.values[i]), p);
  }
  return std::pow(acc * f.dx, 1.0 / p);
}

// sup over xi in [-xi_max, xi_max] of |xi|^n |h^(xi)|, h^ by the grid Riemann sum.
inline double decay_check(const SampledFunction& h, int n, double xi_max = 20.0, int xi_count = 801) {
  double best = 0.0;
  for (int k = 0; k < xi_count; ++k) {
    double xi = -xi_max + 2.0 * xi_max * k / (xi_count - 1);
    cplx acc = 0.0;
    for (std::size_t j = 0; j < h.values.size(); ++j)
      acc += h.values[j] * std::exp(-2.0 * pi * I * h.x(j) * xi);
    acc *= h.dx;
    best = std::max(best, std::pow(std::abs(xi), n) * std::abs(acc));
  }
  return best;
}

}  // namespace intertwine
