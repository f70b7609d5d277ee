#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "intertwine/arch_intertwine.hpp"

using namespace intertwine;

namespace {

SU2Point random_su2(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> t(0.1, pi / 2.0 - 0.1), p(0.0, 2.0 * pi);
  return SU2Point::hopf(t(rng), p(rng), p(rng));
}

std::vector<SU2Point> sample_kappas(std::mt19937_64& rng, int count) {
  std::vector<SU2Point> out;
  for (int j = 0; j < count; ++j) out.push_back(random_su2(rng));
  return out;
}

ArchParams cpx(cplx s, int n0 = 0, double mu = 0.0) { return {Place::ComplexPlace, mu, n0, s}; }
ArchParams rl(cplx s, int n0 = 0, double mu = 0.0) { return {Place::RealPlace, mu, n0, s}; }

}  // namespace

TEST_CASE("Tate section closed form") {
  const auto p0 = PolyGaussian4<>::constant(PiSeries(1));
  const SU2Point id;
  CHECK(std::abs(tate_section_complex(p0, cpx(0.0), id) - 1.0 / pi) < 1e-12);
  CHECK(std::abs(tate_section_closed_complex(cpx(0.0), 0, id) - 1.0 / pi) < 1e-15);
  CHECK(std::abs(tate_section_closed_complex(cpx(0.0), 2, id)) == 0.0);
  const SU2Point k(1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0));
  const cplx expect = 1.0 / (2.0 * pi * pi) * 0.5;
  CHECK(std::abs(tate_section_closed_complex(cpx(0.0), 2, k) - expect) < 1e-15);
  CHECK(std::abs(tate_section_complex(section_complex(0, 2), cpx(0.0), k) - expect) < 1e-12);

  std::mt19937_64 rng(31);
  std::uniform_real_distribution<double> y(-3.0, 3.0), mu(-1.0, 1.0);
  std::uniform_int_distribution<int> nn(0, 4);
  for (int trial = 0; trial < 10; ++trial) {
    const int n = nn(rng);
    std::uniform_int_distribution<int> pick(0, n);
    const int n0 = -n + 2 * pick(rng);
    const ArchParams p = cpx(cplx(0.3, y(rng)), n0, mu(rng));
    const auto kap = random_su2(rng);
    const cplx q = tate_section_complex(section_complex(n0, n), p, kap);
    const cplx c = tate_section_closed_complex(p, n, kap);
    CHECK(std::abs(q - c) < 1e-8);
  }
  for (int n = -3; n <= 3; ++n) {
    const ArchParams p = rl(cplx(0.3, 1.1), std::abs(n) % 2, 0.4);
    const double alpha = 0.7;
    CHECK(std::abs(tate_section_real(section_real(n), p, alpha) - tate_section_closed_real(p, n, alpha)) < 1e-10);
  }
}

TEST_CASE("closed-form eigenvalue examples") {
  for (double y : {0.0, 0.7, -2.5}) CHECK(std::abs(mu_arch(cpx(cplx(0.0, y), 2), 2).value + 1.0) < 1e-13);
  CHECK(std::abs(mu_arch(cpx(0.0), 2).value - 1.0) < 1e-13);
  const double y = 0.8;
  const auto R = GammaFactorKind::Real;
  const cplx expect = gamma_factor(R, 1.0 - 2.0 * I * y + 2.0) / gamma_factor(R, 1.0 + 2.0 * I * y + 2.0) *
                      gamma_factor(R, 1.0 + 2.0 * I * y) / gamma_factor(R, 1.0 - 2.0 * I * y);
  const cplx got = mu_arch(rl(I * y), 2).value;
  CHECK(std::abs(got - expect) < 1e-13);
  CHECK(std::abs(std::abs(got) - 1.0) < 1e-13);
  CHECK_THROWS_AS(mu_arch(cpx(0.0, 1), 2), ParityError);
  CHECK_THROWS_AS(mu_arch(cpx(0.0, 3), 1), RangeError);
  CHECK_THROWS_AS(mu_arch(rl(0.0, 1), 2), ParityError);
  CHECK_THROWS_AS(mu_arch(cpx(0.5), 0), PoleError);
}

TEST_CASE("unitarity and product form") {
  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> y(-20.0, 20.0), mu(-5.0, 5.0);
  std::uniform_int_distribution<int> nn(0, 10);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = nn(rng);
    std::uniform_int_distribution<int> pick(0, n);
    const ArchParams p = cpx(I * y(rng), -n + 2 * pick(rng), mu(rng));
    const cplx v = mu_arch(p, n).value;
    CHECK(std::abs(std::abs(v) - 1.0) < 1e-12);
    CHECK(std::abs(v - mu_arch_product(p, n)) < 1e-12);
    const int m = nn(rng) - 5;
    const ArchParams q = rl(I * y(rng), std::abs(m) % 2, mu(rng));
    const cplx w = mu_arch(q, m).value;
    CHECK(std::abs(std::abs(w) - 1.0) < 1e-12);
    CHECK(std::abs(w - mu_arch_product(q, m)) < 1e-12);
  }
}

TEST_CASE("printed phase differs for odd n0") {
  for (int n0 = -3; n0 <= 3; ++n0) {
    const ArchParams p = cpx(cplx(0.1, 0.4), n0, 0.3);
    const int n = std::abs(n0) + 2;
    const cplx ratio = mu_arch_printed(p, n) / mu_arch(p, n).value;
    CHECK(std::abs(ratio - neg1pow(n0)) < 1e-13);
  }
}

TEST_CASE("oracle agrees with the closed form") {
  std::mt19937_64 rng(77);
  const auto kaps = sample_kappas(rng, 3);
  CHECK(std::abs(mu_arch_oracle(cpx(0.3), 0, kaps) - mu_arch(cpx(0.3), 0).value) < 1e-8);
  CHECK(std::abs(mu_arch_oracle(cpx(0.25), 2, kaps) - mu_arch(cpx(0.25), 2).value) < 1e-8);
  CHECK(std::abs(mu_arch_oracle_real(rl(0.25, 1), 1, {0.3, 1.9}) - mu_arch(rl(0.25, 1), 1).value) < 1e-8);
  for (int n0 : {-1, 1, 2}) {
    const ArchParams p = cpx(cplx(0.15, 0.6), n0, 0.35);
    const int n = std::abs(n0) + 2;
    CHECK(std::abs(mu_arch_oracle(p, n, kaps) - mu_arch(p, n).value) < 1e-8);
  }
  for (int n : {-3, -2, 0, 2, 4}) {
    const ArchParams p = rl(cplx(-0.2, 0.9), std::abs(n) % 2, -0.5);
    CHECK(std::abs(mu_arch_oracle_real(p, n, {0.1, 2.2, 4.0}) - mu_arch(p, n).value) < 1e-8);
  }
}

TEST_CASE("eigenvalue is k-independent") {
  std::mt19937_64 rng(78);
  const auto kaps = sample_kappas(rng, 3);
  for (auto [n0, n] : {std::pair{0, 2}, std::pair{1, 3}, std::pair{-2, 4}}) {
    const ArchParams p = cpx(cplx(0.2, -0.3), n0, 0.1);
    const cplx k0 = mu_arch_oracle(p, n, kaps, 0);
    const cplx k1 = mu_arch_oracle(p, n, kaps, 1);
    CHECK(std::abs(k0 - k1) < 1e-8);
  }
}

TEST_CASE("derivative") {
  for (int n0 : {-2, 0, 3}) {
    const auto d = mu_arch_derivative(cpx(I * 0.4, n0, 0.2), std::abs(n0));
    CHECK(d.exact == 0.0);
    CHECK(mu_arch_derivative_bound(cpx(0.0, n0), std::abs(n0)) == 0.0);
  }
  const auto d4 = mu_arch_derivative(cpx(0.0), 4);
  CHECK(std::abs(d4.exact + 6.0 * mu_arch(cpx(0.0), 4).value) < 1e-13);
  CHECK(std::abs(std::abs(d4.exact) - 6.0) < 1e-13);
  CHECK(mu_arch_derivative_bound(cpx(0.0), 4) == doctest::Approx(4.0 * (1.0 + std::log(2.0))));

  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> y(-10.0, 10.0), mu(-3.0, 3.0);
  std::uniform_int_distribution<int> nn(0, 8);
  for (int trial = 0; trial < 10; ++trial) {
    const int n = nn(rng);
    std::uniform_int_distribution<int> pick(0, n);
    const ArchParams p = cpx(I * y(rng), -n + 2 * pick(rng), mu(rng));
    const auto d = mu_arch_derivative(p, n);
    CHECK(std::abs(d.exact - d.finite_difference) < 1e-5);
    const int m = nn(rng) - 4;
    const ArchParams q = rl(I * y(rng), std::abs(m) % 2, mu(rng));
    const auto e = mu_arch_derivative(q, m);
    CHECK(std::abs(e.exact - e.finite_difference) < 1e-5);
  }
  for (int trial = 0; trial < 100; ++trial) {
    const int n = nn(rng);
    std::uniform_int_distribution<int> pick(0, n);
    const ArchParams p = cpx(I * y(rng), -n + 2 * pick(rng), mu(rng));
    CHECK(std::abs(mu_arch_derivative(p, n).exact) <= mu_arch_derivative_bound(p, n) + 1e-12);
    const int m = nn(rng) - 4;
    const ArchParams q = rl(I * y(rng), std::abs(m) % 2, mu(rng));
    CHECK(std::abs(mu_arch_derivative(q, m).exact) <= mu_arch_derivative_bound(q, m) + 1e-12);
  }
  CHECK_THROWS_AS(mu_arch_derivative(cpx(0.0), 2, 1e-3), DomainError);
}
