#pragma once

#include <cmath>
#include <complex>
#include <string>

#include "numerics.hpp"
#include "poly.hpp"

namespace intertwine {

using ExactPoly4 = Poly<GaussRational, 4>;
using ExactPoly2 = Poly<GaussRational, 2>;

struct SU2Point {
  cplx z1{1.0, 0.0};
  cplx z2{0.0, 0.0};

  SU2Point() = default;
  SU2Point(cplx a, cplx b) : z1(a), z2(b) {
    if (std::abs(std::norm(z1) + std::norm(z2) - 1.0) > 1e-14)
      throw DomainError("SU2Point off the unit sphere");
  }

  // Quaternion matrix [[z1, z2], [-conj z2, conj z1]].
  std::array<cplx, 4> as_vars() const { return {z1, z2, std::conj(z1), std::conj(z2)}; }

  static SU2Point hopf(double theta, double phi1, double phi2) {
    return {std::polar(std::cos(theta), phi1), std::polar(std::sin(theta), phi2)};
  }
};

inline SU2Point operator*(const SU2Point& a, const SU2Point& b) {
  cplx z1 = a.z1 * b.z1 - a.z2 * std::conj(b.z2);
  cplx z2 = a.z1 * b.z2 + a.z2 * std::conj(b.z1);
  double r = std::sqrt(std::norm(z1) + std::norm(z2));
  return {z1 / r, z2 / r};
}

struct HarmonicSU2 {
  int n0 = 0;
  int n = 0;
  int k = 0;
  ExactPoly4 poly;
};

inline void check_su2_indices(int n0, int n, int k) {
  if (n < std::abs(n0) || k < 0 || k > n)
    throw RangeError("harmonic index out of range: n0=" + std::to_string(n0) + " n=" +
                     std::to_string(n) + " k=" + std::to_string(k));
  if ((n - n0) % 2 != 0) throw ParityError("n and n0 must have equal parity");
}

inline HarmonicSU2 harmonic_su2(int n0, int n, int k) {
  check_su2_indices(n0, n, k);
  const int a = (n + n0) / 2, b = (n - n0) / 2;
  HarmonicSU2 h{n0, n, k, {}};
  const Rational inv(1, static_cast<std::int64_t>(binom(n, k)));
  for (int j = 0; j <= k; ++j) {
    if (j > a || k - j > b) continue;
    auto c = static_cast<std::int64_t>(neg1pow(k - j) * binom(a, j) * binom(b, k - j));
    h.poly.add({a - j, j, k - j, b - (k - j)}, GaussRational(inv * Rational(c)));
  }
  return h;
}

enum class LieGen { LH, RH, Xplus, Xminus };

template <class C>
Poly<C, 4> lie_act_su2(LieGen gen, const Poly<C, 4>& p) {
  using S = Scalar<C>;
  const C i = S::from(GaussRational::i());
  const C mi = S::from(-GaussRational::i());
  auto zd = [&](std::size_t v, std::size_t d) { return p.derivative(d).times_var(v); };
  switch (gen) {
    case LieGen::LH:
      return mi * (zd(Z1, Z1) - zd(ZB1, ZB1) + zd(Z2, Z2) - zd(ZB2, ZB2));
    case LieGen::RH:
      return i * (zd(Z1, Z1) - zd(ZB1, ZB1) - zd(Z2, Z2) + zd(ZB2, ZB2));
    case LieGen::Xplus:
      return zd(Z2, Z1) - zd(ZB1, ZB2);
    case LieGen::Xminus:
      return zd(Z1, Z2) - zd(ZB2, ZB1);
  }
  return {};
}

// Squared L2 norm of e~_{n,k}^{n0} under the probability Haar measure.
inline double norm_su2_closed(int n0, int n, int k) {
  check_su2_indices(n0, n, k);
  return 1.0 / ((n + 1) * binom(n, k) * binom(n, (n - n0) / 2));
}

// Integral against probability Haar measure in Hopf coordinates:
// dkappa = (2 pi^2)^{-1} sin(theta) cos(theta) dtheta dphi1 dphi2.
template <class F>
cplx haar_integrate_su2_fixed(F&& f, int n_theta, int n_phi) {
  auto nodes = gauss_legendre(n_theta, 0.0, pi / 2.0);
  const double h = 2.0 * pi / n_phi;
  cplx acc = 0.0;
  for (const auto& [t, w] : nodes) {
    cplx ring = 0.0;
    for (int a = 0; a < n_phi; ++a)
      for (int b = 0; b < n_phi; ++b) ring += f(SU2Point::hopf(t, a * h, b * h));
    acc += w * std::sin(t) * std::cos(t) * ring * h * h;
  }
  return acc / (2.0 * pi * pi);
}

template <class F>
cplx haar_integrate_su2(F&& f, const QuadratureSpec& spec = {}, int n_theta = 12, int n_phi = 16) {
  cplx prev = haar_integrate_su2_fixed(f, n_theta, n_phi);
  for (int level = 0; level < spec.max_subdivisions; ++level) {
    n_theta *= 2;
    n_phi *= 2;
    cplx cur = haar_integrate_su2_fixed(f, n_theta, n_phi);
    if (std::abs(cur - prev) <= std::max(spec.abs_tol, spec.rel_tol * std::abs(cur))) return cur;
    prev = cur;
    if (n_phi > 512) break;
  }
  throw ToleranceNotMet("Haar quadrature on SU2 did not converge");
}

struct HarmonicSO2 {
  int n = 0;
  ExactPoly2 poly;
};

inline HarmonicSO2 harmonic_so2(int n) {
  HarmonicSO2 h{n, {}};
  h.poly.add(n >= 0 ? ExactPoly2::Exponent{n, 0} : ExactPoly2::Exponent{0, -n}, GaussRational(1));
  return h;
}

// (2 pi)^{-1} int_0^{2 pi} f(e^{i alpha}) d alpha; exact for trigonometric degree < n.
template <class F>
cplx haar_integrate_so2(F&& f, int n = 64) {
  cplx acc = 0.0;
  for (int j = 0; j < n; ++j) acc += f(std::polar(1.0, 2.0 * pi * j / n));
  return acc / static_cast<double>(n);
}

}  // namespace intertwine
