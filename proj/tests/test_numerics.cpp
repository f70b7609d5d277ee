#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "intertwine/numerics.hpp"

using namespace intertwine;

namespace {

// Second integral form: int_0^inf e^{-y(t^2 + t^{-2})} t^{2 nu} dt / t, through the generic half-line rule.
cplx bessel_k_squared_form(cplx nu, double y) {
  return quad_halfline([&](double t) {
    const double lt = std::log(t);
    return std::exp(-y * (t * t + 1.0 / (t * t)) + (2.0 * nu - 1.0) * lt);
  });
}

}  // namespace

TEST_CASE("gamma factor conventions") {
  CHECK(std::abs(gamma_factor(GammaFactorKind::Complex, 1.0) - 1.0 / pi) < 1e-15);
  CHECK(std::abs(gamma_factor(GammaFactorKind::Real, 2.0) - 1.0 / pi) < 1e-15);
  CHECK(std::abs(gamma_factor(GammaFactorKind::Complex, 2.0) - 1.0 / (2.0 * pi * pi)) < 1e-15);
  // 4 int_0^inf e^{-2 pi r^2} r^{2+n} dr/r at n = 2 (s = 0, twist 0).
  const cplx radial = 4.0 * quad_halfline([](double r) { return std::exp(-2.0 * pi * r * r) * r * r * r; });
  CHECK(std::abs(radial - gamma_factor(GammaFactorKind::Complex, 2.0)) < 1e-14);
  // 2 int_0^inf e^{-pi r^2} r^{1+|n|} dr/r at n = 1.
  const cplx real_radial = 2.0 * quad_halfline([](double r) { return std::exp(-pi * r * r) * r; });
  CHECK(std::abs(real_radial - gamma_factor(GammaFactorKind::Real, 2.0)) < 1e-14);
}

TEST_CASE("complex Gamma against reference values") {
  CHECK(std::abs(complex_gamma(5.0) - 24.0) < 1e-12);
  CHECK(std::abs(complex_gamma(0.5) - std::sqrt(pi)) < 1e-14);
  // reflection region
  CHECK(std::abs(complex_gamma(-0.5) + 2.0 * std::sqrt(pi)) < 1e-13);
  // |Gamma(1/2 + i y)|^2 = pi / cosh(pi y)
  for (double y : {0.3, 2.0, 7.5}) {
    const double lhs = std::norm(complex_gamma(cplx(0.5, y)));
    CHECK(std::abs(lhs / (pi / std::cosh(pi * y)) - 1.0) < 1e-13);
  }
  CHECK_THROWS_AS(complex_gamma(0.0), PoleError);
  CHECK_THROWS_AS(complex_gamma(-3.0), PoleError);
  CHECK_THROWS_AS(gamma_factor(GammaFactorKind::Real, -2.0), PoleError);
}

TEST_CASE("Gamma_C recursion") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> re(0.2, 4.0), im(-10.0, 10.0);
  for (int j = 0; j < 50; ++j) {
    const cplx s(re(rng), im(rng));
    const cplx lhs = gamma_factor(GammaFactorKind::Complex, s + 1.0);
    const cplx rhs = s / (2.0 * pi) * gamma_factor(GammaFactorKind::Complex, s);
    CHECK(std::abs(lhs - rhs) <= 1e-13 * std::abs(rhs));
  }
}

TEST_CASE("half-line quadrature") {
  CHECK(std::abs(quad_halfline([](double r) { return std::exp(-r * r) * r * r * r; }) - 0.5) < 1e-14);
  CHECK(std::abs(quad_halfline([](double r) { return std::exp(-2.0 * pi * r * r) * r; }) - 1.0 / (4.0 * pi)) <
        1e-15);
  const cplx k0 = quad_halfline([](double t) { return std::exp(-(t + 1.0 / t)) / t; });
  CHECK(std::abs(k0 - 2.0 * bessel_k(0.0, 1.0)) < 1e-13);
  CHECK(std::abs(k0 - 0.227787745499066871305) < 1e-13);
}

TEST_CASE("Bessel K values and representations") {
  CHECK(std::abs(bessel_k(0.5, 1.0) - std::sqrt(pi / 4.0) * std::exp(-2.0)) < 1e-14);
  CHECK(std::abs(bessel_k(0.0, 2.0) - 0.0111596760858530242697) < 1e-14);
  CHECK(std::abs(bessel_k(0.0, 2.0) - bessel_k_squared_form(0.0, 2.0)) < 1e-10);
  CHECK(std::abs(bessel_k(0.5, 1.0) - bessel_k_squared_form(0.5, 1.0)) < 1e-10);
  const cplx ref(0.0186362575851580777522, 0.0127711522179848953078);
  CHECK(std::abs(bessel_k(cplx(1.0, 2.0), 1.5) - ref) < 1e-13);
  CHECK_THROWS_AS(bessel_k(0.0, 0.0), DomainError);
}

TEST_CASE("Bessel K symmetry in nu") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> nr(-3.0, 3.0), ni(-5.0, 5.0), yy(0.2, 4.0);
  for (int j = 0; j < 20; ++j) {
    const cplx nu(nr(rng), ni(rng));
    const double y = yy(rng);
    const cplx a = bessel_k(nu, y), b = bessel_k(-nu, y);
    CHECK(std::abs(a - b) <= 1e-12 * std::max(1.0, std::abs(a)));
  }
}

TEST_CASE("kernel K_a") {
  CHECK(std::abs(kernel_ka(GammaFactorKind::Complex, 1.0, 1.0) - 4.0 * 0.139865881816522427285) < 1e-13);
  CHECK(std::abs(kernel_ka(GammaFactorKind::Real, 1.0, 1.0) - 2.0 * std::sqrt(pi / 4.0) * std::exp(-2.0)) <
        1e-14);
  // direct quadrature of 4 int e^{-a(r^2 + r^-2)} r^{2w} dr/r
  const double a = 1.5;
  const cplx w(1.0, 2.0);
  const cplx direct = 4.0 * quad_halfline([&](double r) {
    return std::exp(-a * (r * r + 1.0 / (r * r)) + (2.0 * w - 1.0) * std::log(r));
  });
  CHECK(std::abs(kernel_ka(GammaFactorKind::Complex, a, w) - direct) < 1e-9);
  CHECK_THROWS_AS(kernel_ka(GammaFactorKind::Real, 2.0, 1.0), DomainError);
}

TEST_CASE("Gauss-Legendre integrates polynomials exactly") {
  auto nodes = gauss_legendre(10, 0.0, 2.0);
  double acc = 0.0;
  for (auto [x, w] : nodes) acc += w * std::pow(x, 19);
  CHECK(std::abs(acc - std::pow(2.0, 20) / 20.0) < 1e-8);
}
