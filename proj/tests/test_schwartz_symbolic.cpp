#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "intertwine/schwartz_symbolic.hpp"

using namespace intertwine;

namespace {

SU2Point random_su2(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> t(0.0, pi / 2.0), p(0.0, 2.0 * pi);
  return SU2Point::hopf(t(rng), p(rng), p(rng));
}

PolyGaussian4<> random_phi4(std::mt19937_64& rng, int max_exp, int terms) {
  std::uniform_int_distribution<int> e(0, max_exp), c(-5, 5);
  PolyGaussian4<> phi;
  for (int j = 0; j < terms; ++j)
    phi.add({e(rng), e(rng), e(rng), e(rng)}, PiSeries(GaussRational(Rational(c(rng)), Rational(c(rng)))));
  return phi;
}

// Direct quadrature of int Phi(u) e^{-2 pi i (z1 u2 - z2 u1 + cc)} du, du = 4 d^4x, trapezoid step h.
cplx hat_h_quadrature(const Poly<cplx, 4>& phi, cplx z1, cplx z2) {
  const double h = 0.2, lim = 3.0;
  const int m = static_cast<int>(std::lround(lim / h));
  std::vector<double> g(2 * m + 1);
  for (int j = -m; j <= m; ++j) g[j + m] = std::exp(-2.0 * pi * (j * h) * (j * h));
  cplx acc = 0.0;
  for (int a = -m; a <= m; ++a)
    for (int b = -m; b <= m; ++b)
      for (int c = -m; c <= m; ++c)
        for (int d = -m; d <= m; ++d) {
          const cplx u1(a * h, b * h), u2(c * h, d * h);
          const double w = g[a + m] * g[b + m] * g[c + m] * g[d + m];
          if (w < 1e-18) continue;
          const double ph = 2.0 * (z1 * u2 - z2 * u1).real();
          acc += w * phi({u1, u2, std::conj(u1), std::conj(u2)}) * std::polar(1.0, -2.0 * pi * ph);
        }
  return 4.0 * acc * std::pow(h, 4);
}

// Direct quadrature of int Phi(u) e^{-pi (u zb - ub z)} du, Lebesgue du.
cplx hat_c_quadrature(const Poly<cplx, 2>& phi, cplx z) {
  const double h = 0.1, lim = 5.0;
  const int m = static_cast<int>(std::lround(lim / h));
  cplx acc = 0.0;
  for (int a = -m; a <= m; ++a)
    for (int b = -m; b <= m; ++b) {
      const cplx u(a * h, b * h);
      const cplx arg = -pi * (u * std::conj(z) - std::conj(u) * z);
      acc += phi({u, std::conj(u)}) * std::exp(arg - pi * std::norm(u));
    }
  return acc * h * h;
}

}  // namespace

TEST_CASE("Gaussian is fixed") {
  auto p0 = PolyGaussian4<>::constant(PiSeries(1));
  CHECK(fourier_hat_h(p0) == p0);
  auto q0 = PolyGaussian2<>::constant(PiSeries(1));
  CHECK(fourier_hat_c(q0) == q0);
  const std::array<std::pair<cplx, cplx>, 5> pts = {{{0.0, 0.0}, {0.3, -0.2}, {cplx(0.1, 0.4), 0.5},
                                                     {cplx(-0.6, 0.2), cplx(0.1, 0.1)}, {0.0, cplx(0.0, 0.7)}}};
  auto one = Poly<cplx, 4>::constant(1.0);
  for (auto [z1, z2] : pts)
    CHECK(std::abs(hat_h_quadrature(one, z1, z2) - std::exp(-2.0 * pi * (std::norm(z1) + std::norm(z2)))) < 1e-6);
}

TEST_CASE("fourier_hat_h against quadrature") {
  std::vector<Poly<cplx, 4>> cases;
  cases.push_back(Poly<cplx, 4>::monomial({0, 0, 0, 1}, 1.0));
  cases.push_back(Poly<cplx, 4>::monomial({1, 1, 0, 0}, 1.0));
  auto mixed = Poly<cplx, 4>::monomial({2, 0, 1, 1}, cplx(0.5, -1.0));
  mixed.add({0, 1, 1, 0}, 2.0);
  cases.push_back(mixed);
  const cplx z1(0.3, -0.1), z2(-0.2, 0.25);
  for (const auto& phi : cases) {
    auto hat = fourier_hat_h(phi);
    CHECK(std::abs(evaluate_h(hat, z1, z2) - hat_h_quadrature(phi, z1, z2)) < 1e-6);
  }
}

TEST_CASE("section transform phase") {
  // (zb2 P0)^ = -i z1 P0: independent of the symbolic rules, by quadrature.
  auto zb2 = Poly<cplx, 4>::monomial({0, 0, 0, 1}, 1.0);
  const cplx z1(0.35, 0.2), z2(-0.15, 0.1);
  const cplx quad = hat_h_quadrature(zb2, z1, z2);
  const cplx expect = -I * z1 * std::exp(-2.0 * pi * (std::norm(z1) + std::norm(z2)));
  CHECK(std::abs(quad - expect) < 1e-6);
  for (int n = 0; n <= 5; ++n)
    for (int n0 = -n; n0 <= n; n0 += 2) {
      auto p = section_complex(n0, n);
      const int a = (n + n0) / 2, b = (n - n0) / 2;
      PiSeries c(gauss_ipow(n0) * GaussRational(static_cast<std::int64_t>(neg1pow(a))));
      CHECK(fourier_hat_h(p) == PolyGaussian4<>::monomial({a, 0, 0, b}, c));
    }
}

TEST_CASE("involution is exact") {
  std::mt19937_64 rng(21);
  for (int trial = 0; trial < 6; ++trial) {
    auto phi = random_phi4(rng, 3, 4);
    CHECK(fourier_hat_h(fourier_hat_h(phi)) == phi);
  }
  for (int n = -6; n <= 6; ++n) {
    auto p = section_real(n);
    CHECK(fourier_hat_c(fourier_hat_c(p)) == p);
  }
  PolyGaussian2<> mix;
  mix.add({3, 2}, PiSeries(GaussRational(Rational(2), Rational(-1))));
  mix.add({0, 4}, PiSeries(7));
  CHECK(fourier_hat_c(fourier_hat_c(mix)) == mix);
}

TEST_CASE("fourier_hat_c against quadrature") {
  const cplx z(0.3, -0.45);
  for (int n : {-2, -1, 0, 1, 3}) {
    auto p = section_real(n).to_complex();
    auto hat = fourier_hat_c(p);
    CHECK(std::abs(evaluate_c(hat, z) - hat_c_quadrature(p, z)) < 1e-9);
  }
  // P = (-i)^n P_n maps to (-1)^{(|n|-n)/2} P.
  for (int n = -4; n <= 4; ++n) {
    auto p = section_real(n);
    const GaussRational sign(static_cast<std::int64_t>(neg1pow((std::abs(n) - n) / 2)));
    CHECK(fourier_hat_c(p) == PiSeries(sign) * p);
  }
}

TEST_CASE("K-equivariance") {
  std::mt19937_64 rng(4);
  for (int trial = 0; trial < 5; ++trial) {
    auto kappa = random_su2(rng);
    auto phi = random_phi4(rng, 2, 5).to_complex();
    auto lhs = fourier_hat_h(k_act(kappa, phi));
    auto rhs = k_act(kappa, fourier_hat_h(phi));
    CHECK(max_coeff_diff(lhs, rhs) < 1e-11);
  }
  std::uniform_real_distribution<double> ang(0.0, 2.0 * pi);
  for (int trial = 0; trial < 5; ++trial) {
    const double alpha = ang(rng);
    auto phi = section_real(trial - 2).to_complex();
    phi.add({2, 1}, cplx(0.5, 0.25));
    CHECK(max_coeff_diff(fourier_hat_c(k_act(alpha, phi)), k_act(alpha, fourier_hat_c(phi))) < 1e-12);
  }
  auto phi = random_phi4(rng, 2, 3).to_complex();
  CHECK(max_coeff_diff(k_act(SU2Point(), phi), phi) == 0.0);
}

TEST_CASE("torus character of the section") {
  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> ang(0.0, 2.0 * pi);
  for (int n = 0; n <= 4; ++n)
    for (int n0 = -n; n0 <= n; n0 += 2) {
      auto p = section_complex(n0, n);
      auto k = random_su2(rng);
      const double alpha = ang(rng);
      // first row of diag(e^{i alpha}, e^{-i alpha}) kappa
      SU2Point tk(std::polar(1.0, alpha) * k.z1, std::polar(1.0, alpha) * k.z2);
      CHECK(std::abs(restrict_sphere(p, tk) - std::polar(1.0, -n0 * alpha) * restrict_sphere(p, k)) < 1e-13);
    }
}

TEST_CASE("restriction to the sphere") {
  std::mt19937_64 rng(17);
  const double g = std::exp(-2.0 * pi);
  CHECK(std::abs(restrict_sphere(PolyGaussian4<>::constant(PiSeries(1)), random_su2(rng)) - g) < 1e-16);
  for (int n = 0; n <= 4; ++n)
    for (int n0 = -n; n0 <= n; n0 += 2)
      for (int t = 0; t < 5; ++t) {
        auto k = random_su2(rng);
        const cplx e = harmonic_su2(n0, n, 0).poly(k.as_vars());
        CHECK(std::abs(restrict_sphere(section_complex(n0, n), w_inv_times(k)) - g * e) < 1e-15);
      }
  auto a = section_complex(0, 2), b = section_complex(2, 4);
  auto k = random_su2(rng);
  CHECK(std::abs(restrict_sphere(a + PiSeries(3) * b, k) - restrict_sphere(a, k) - 3.0 * restrict_sphere(b, k)) <
        1e-15);
}
