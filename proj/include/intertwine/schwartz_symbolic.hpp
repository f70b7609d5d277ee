#pragma once

#include <cmath>
#include <complex>

#include "compact_harmonics.hpp"
#include "poly.hpp"

namespace intertwine {

// Polynomial part of an element of S_P(H); the factor e^{-2 pi (|z1|^2 + |z2|^2)} is implicit.
template <class C = PiSeries>
using PolyGaussian4 = Poly<C, 4>;

// Polynomial part of an element of S_P(C); the factor e^{-pi |z|^2} is implicit.
template <class C = PiSeries>
using PolyGaussian2 = Poly<C, 2>;

inline GaussRational gauss_ipow(int k) {
  switch (((k % 4) + 4) % 4) {
    case 0: return GaussRational(1);
    case 1: return GaussRational::i();
    case 2: return GaussRational(-1);
    default: return -GaussRational::i();
  }
}

namespace detail {

inline std::size_t conj_var4(std::size_t v) { return (v + 2) % 4; }
inline std::size_t conj_var2(std::size_t v) { return 1 - v; }

// d/d(var) of p * e^{-2 pi (z1 zb1 + z2 zb2)}, divided by the Gaussian.
template <class C>
Poly<C, 4> gauss_d4(const Poly<C, 4>& p, std::size_t var) {
  using S = Scalar<C>;
  const C two_pi = S::from(GaussRational(2)) * S::pi_pow(1);
  return p.derivative(var) - two_pi * p.times_var(conj_var4(var));
}

// d/d(var) of p * e^{-pi z zb}, divided by the Gaussian.
template <class C>
Poly<C, 2> gauss_d2(const Poly<C, 2>& p, std::size_t var) {
  using S = Scalar<C>;
  return p.derivative(var) - S::pi_pow(1) * p.times_var(conj_var2(var));
}

}  // namespace detail

// Kernel e^{-2 pi i (z1 u2 - z2 u1 + zb1 ub2 - zb2 ub1)}, du = Tate measure.
// Multiplication rules: u1 -> (2 pi i)^{-1} d2, u2 -> -(2 pi i)^{-1} d1,
// ub1 -> (2 pi i)^{-1} db2, ub2 -> -(2 pi i)^{-1} db1, applied to the fixed Gaussian.
template <class C>
Poly<C, 4> fourier_hat_h(const Poly<C, 4>& phi) {
  using S = Scalar<C>;
  const C inv_2pi_i = S::from(GaussRational(Rational(0), Rational(-1, 2))) * S::pi_pow(-1);
  Poly<C, 4> out;
  for (const auto& [e, c] : phi.terms()) {
    auto q = Poly<C, 4>::constant(c);
    for (int j = 0; j < e[Z1]; ++j) q = inv_2pi_i * detail::gauss_d4(q, Z2);
    for (int j = 0; j < e[Z2]; ++j) q = -(inv_2pi_i * detail::gauss_d4(q, Z1));
    for (int j = 0; j < e[ZB1]; ++j) q = inv_2pi_i * detail::gauss_d4(q, ZB2);
    for (int j = 0; j < e[ZB2]; ++j) q = -(inv_2pi_i * detail::gauss_d4(q, ZB1));
    out = out + q;
  }
  return out;
}

// Kernel e^{-pi (u zb - ub z)}, du = Lebesgue on R^2.
// Multiplication rules: u -> -pi^{-1} db, ub -> pi^{-1} d.
template <class C>
Poly<C, 2> fourier_hat_c(const Poly<C, 2>& phi) {
  using S = Scalar<C>;
  const C inv_pi = S::pi_pow(-1);
  Poly<C, 2> out;
  for (const auto& [e, c] : phi.terms()) {
    auto q = Poly<C, 2>::constant(c);
    for (int j = 0; j < e[Z]; ++j) q = -(inv_pi * detail::gauss_d2(q, ZB));
    for (int j = 0; j < e[ZB]; ++j) q = inv_pi * detail::gauss_d2(q, Z);
    out = out + q;
  }
  return out;
}

// (kappa . Phi)(z) = Phi(z . kappa) with kappa = [[a, b], [-conj b, conj a]].
inline Poly<cplx, 4> k_act(const SU2Point& kappa, const Poly<cplx, 4>& phi) {
  using P = Poly<cplx, 4>;
  const cplx a = kappa.z1, b = kappa.z2;
  auto lin = [](cplx c1, std::size_t v1, cplx c2, std::size_t v2) {
    P r;
    P::Exponent e1{}, e2{};
    e1[v1] = 1;
    e2[v2] = 1;
    r.add(e1, c1);
    r.add(e2, c2);
    return r;
  };
  const std::array<P, 4> image = {
      lin(a, Z1, -std::conj(b), Z2), lin(b, Z1, std::conj(a), Z2),
      lin(std::conj(a), ZB1, -b, ZB2), lin(std::conj(b), ZB1, a, ZB2)};
  P out;
  for (const auto& [e, c] : phi.terms()) {
    auto term = P::constant(c);
    for (std::size_t v = 0; v < 4; ++v) term = term * pow(image[v], e[v]);
    out = out + term;
  }
  return out;
}

// (kappa . Phi)(z) = Phi(z e^{i alpha}) for kappa the rotation by alpha.
inline Poly<cplx, 2> k_act(double alpha, const Poly<cplx, 2>& phi) {
  Poly<cplx, 2> out;
  for (const auto& [e, c] : phi.terms()) out.add(e, c * std::polar(1.0, alpha * (e[Z] - e[ZB])));
  return out;
}

template <class C>
cplx evaluate_h(const Poly<C, 4>& phi, cplx z1, cplx z2) {
  return phi({z1, z2, std::conj(z1), std::conj(z2)}) *
         std::exp(-2.0 * pi * (std::norm(z1) + std::norm(z2)));
}

template <class C>
cplx evaluate_c(const Poly<C, 2>& phi, cplx z) {
  return phi({z, std::conj(z)}) * std::exp(-pi * std::norm(z));
}

template <class C>
cplx restrict_sphere(const Poly<C, 4>& phi, const SU2Point& kappa) {
  return evaluate_h(phi, kappa.z1, kappa.z2);
}

// P = (-1)^{(n-n0)/2} z1^{(n-n0)/2} zb2^{(n+n0)/2}, so that P(w^{-1} kappa) = e^{-2 pi} e~_{n,0}^{n0}(kappa).
inline PolyGaussian4<> section_complex(int n0, int n) {
  check_su2_indices(n0, n, 0);
  const int b = (n - n0) / 2, a = (n + n0) / 2;
  return PolyGaussian4<>::monomial({b, 0, 0, a}, PiSeries(GaussRational(static_cast<std::int64_t>(neg1pow(b)))));
}

// P = (-i)^n z^{(|n|+n)/2} zb^{(|n|-n)/2}, so that P(w^{-1} kappa) = e^{-pi} e_n(kappa).
inline PolyGaussian2<> section_real(int n) {
  const int m = std::abs(n);
  return PolyGaussian2<>::monomial({(m + n) / 2, (m - n) / 2}, PiSeries(gauss_ipow(-n)));
}

// w^{-1} kappa for kappa in SU2: first row (-conj z2, conj z1).
inline SU2Point w_inv_times(const SU2Point& k) { return {-std::conj(k.z2), std::conj(k.z1)}; }

}  // namespace intertwine
