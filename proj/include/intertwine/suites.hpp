#pragma once

#include <chrono>
#include <cstdint>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "arch_intertwine.hpp"
#include "classical_line.hpp"
#include "compact_harmonics.hpp"
#include "global_assembly.hpp"
#include "padic_local.hpp"
#include "report.hpp"

namespace intertwine {

inline const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"arch", "padic", "harmonics", "global", "classical"};
  return names;
}

inline std::map<std::string, double> default_tolerances() {
  return {{"arch", 1e-8}, {"padic", 1e-10}, {"harmonics", 1e-6}, {"global", 1e-6}, {"classical", 1e-10}};
}

namespace suite_detail {

inline std::string pad(int j) {
  std::string s = std::to_string(j);
  return std::string(s.size() < 3 ? 3 - s.size() : 0, '0') + s;
}

inline nlohmann::json cjson(cplx z) { return {z.real(), z.imag()}; }

inline std::vector<MultChar> primitive(std::int64_t p, int m) {
  std::vector<MultChar> out;
  for (const auto& c : MultChar::all_mod(p, m))
    if (c.conductor() == m) out.push_back(c);
  return out;
}

}  // namespace suite_detail

inline Report run_suite_harmonics(std::uint64_t seed, double tol) {
  using suite_detail::pad;
  Report r{"harmonics", seed, 0.0, {}};
  struct Idx {
    int n0, n, k;
  };
  std::vector<Idx> all;
  for (int n = 0; n <= 3; ++n)
    for (int n0 = -n; n0 <= n; n0 += 2)
      for (int k = 0; k <= n; ++k) all.push_back({n0, n, k});
  std::vector<ExactPoly4> polys;
  for (auto [n0, n, k] : all) polys.push_back(harmonic_su2(n0, n, k).poly);
  for (std::size_t i = 0; i < all.size(); ++i)
    for (std::size_t j = i; j < all.size(); ++j) {
      cplx g = haar_integrate_su2_fixed(
          [&](const SU2Point& kp) { return polys[i](kp.as_vars()) * std::conj(polys[j](kp.as_vars())); }, 12, 24);
      g /= std::sqrt(norm_su2_closed(all[i].n0, all[i].n, all[i].k) * norm_su2_closed(all[j].n0, all[j].n, all[j].k));
      r.add("gram/" + pad(static_cast<int>(i)) + "-" + pad(static_cast<int>(j)),
            {{"a", {all[i].n0, all[i].n, all[i].k}}, {"b", {all[j].n0, all[j].n, all[j].k}}}, g, i == j ? 1.0 : 0.0,
            tol);
    }
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::size_t> pick(0, all.size() - 1);
  for (int t = 0; t < 4; ++t) {
    const auto [n0, n, k] = all[pick(rng)];
    const auto& p = harmonic_su2(n0, n, k).poly;
    const cplx q = haar_integrate_su2([&](const SU2Point& kp) { return std::norm(p(kp.as_vars())); });
    r.add("norm/" + pad(t), {{"n0", n0}, {"n", n}, {"k", k}}, norm_su2_closed(n0, n, k), q, tol);
  }
  int idx = 0;
  for (int n = 0; n <= 6; ++n)
    for (int n0 = -n; n0 <= n; n0 += 2)
      for (int k = 0; k <= n; ++k) {
        const auto up = lie_act_su2(LieGen::Xplus, harmonic_su2(n0, n, k).poly);
        const bool ok = k < n ? up == GaussRational(n - k) * harmonic_su2(n0, n, k + 1).poly : up.is_zero();
        r.add_check("ladder/" + pad(idx++), {{"n0", n0}, {"n", n}, {"k", k}}, ok);
      }
  return r;
}

inline Report run_suite_arch(std::uint64_t seed, double tol) {
  using suite_detail::cjson;
  using suite_detail::pad;
  Report r{"arch", seed, 0.0, {}};
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> re(0.05, 0.3), im(-1.0, 1.0), mu(-0.5, 0.5), th(0.1, pi / 2.0 - 0.1),
      ph(0.0, 2.0 * pi), yy(-20.0, 20.0);
  // the real-place oracle resolves r^{2 Re s} endpoint behaviour only for Re s <= 1/4
  std::uniform_real_distribution<double> rre(0.05, 0.25);
  std::uniform_int_distribution<int> nn(0, 4);
  std::vector<SU2Point> kaps;
  for (int j = 0; j < 3; ++j) kaps.push_back(SU2Point::hopf(th(rng), ph(rng), ph(rng)));
  for (int t = 0; t < 8; ++t) {
    const int n = nn(rng);
    std::uniform_int_distribution<int> pk(0, n);
    const ArchParams p{Place::ComplexPlace, mu(rng), -n + 2 * pk(rng), cplx(re(rng), im(rng))};
    r.add("complex/" + pad(t), {{"n", n}, {"n0", p.n0}, {"mu", p.mu}, {"s", cjson(p.s)}}, mu_arch(p, n).value,
          mu_arch_oracle(p, n, kaps), tol);
  }
  for (int t = 0; t < 4; ++t) {
    const int n = nn(rng) - 2;
    const ArchParams p{Place::RealPlace, mu(rng), std::abs(n) % 2, cplx(rre(rng), im(rng))};
    r.add("real/" + pad(t), {{"n", n}, {"n0", p.n0}, {"mu", p.mu}, {"s", cjson(p.s)}}, mu_arch(p, n).value,
          mu_arch_oracle_real(p, n, {0.3, 1.9, 4.0}), tol);
  }
  for (int t = 0; t < 20; ++t) {
    const int n = nn(rng);
    std::uniform_int_distribution<int> pk(0, n);
    const ArchParams p{Place::ComplexPlace, mu(rng), -n + 2 * pk(rng), cplx(0.0, yy(rng))};
    r.add("unitary/" + pad(t), {{"n", n}, {"n0", p.n0}, {"mu", p.mu}, {"y", p.s.imag()}},
          std::abs(mu_arch(p, n).value), 1.0, 1e-12);
  }
  return r;
}

inline Report run_suite_padic(std::uint64_t seed, double tol) {
  using suite_detail::cjson;
  using suite_detail::pad;
  using suite_detail::primitive;
  Report r{"padic", seed, 0.0, {}};
  for (std::int64_t p : {3, 5, 7})
    for (int m = 1; m <= 2; ++m)
      for (const auto& chi : primitive(p, m)) {
        const cplx g = gauss_normalized(chi, AddChar{p, 0});
        r.add("gauss/" + std::to_string(p) + "/" + chi.label(), {{"p", p}, {"conductor", m}}, std::abs(g), 1.0,
              1e-12);
      }
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> re(-0.2, 0.2), im(-1.0, 1.0), mu(-0.5, 0.5);
  std::uniform_int_distribution<int> cc(0, 2), extra(0, 2);
  int idx = 0;
  for (std::int64_t p : {3, 5}) {
    const auto one = MultChar::trivial(p);
    const auto r1 = primitive(p, 1).front(), r2 = primitive(p, 2).back();
    const std::vector<std::pair<MultChar, MultChar>> pairs{{r1, r2}, {r2, one}, {one, r1}, {one, one}};
    for (const auto& [xi, eta] : pairs) {
      FiniteParams f{p, cplx(re(rng), im(rng)), mu(rng), xi, eta, AddChar{p, cc(rng)}};
      const int N = f.conductor() + extra(rng);
      r.add("mu/" + pad(idx++),
            {{"p", p}, {"case", f.ramification_case()}, {"N", N}, {"s", cjson(f.s)}, {"mu", f.mu}, {"psi_c", f.psi.c}},
            mu_finite(f, N), mu_finite_oracle(f, N, finite_sample_rows(p, N)), tol);
    }
  }
  return r;
}

inline Report run_suite_global(std::uint64_t seed, double tol) {
  using suite_detail::pad;
  Report r{"global", seed, 0.0, {}};
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> yy(0.1, 20.0), ym(0.2, 8.0);
  for (int t = 0; t < 10; ++t) {
    const double y = yy(rng);
    r.add("unitary/" + pad(t), {{"y", y}}, std::abs(mu_field(cplx(0.0, y))), 1.0, 1e-8);
  }
  r.add("residue_one", nlohmann::json::object(), completed_zeta_residue(1.0), 1.0, 1e-8);
  r.add("residue_constant", nlohmann::json::object(), residue_constant(), 3.0 / pi, tol);
  GlobalKType k;
  k.n_inf = 2;
  for (int t = 0; t < 3; ++t) {
    const double y = ym(rng);
    for (bool sd : {false, true}) {
      // near y = 7.07 mu has a pole at Re s = -1/4 (first zeta zero); three sigmas truncate at ~2e-6 there
      const auto m = maass_selberg_consistency(y, 2.0, k, sd, {1e-2, 5e-3, 2.5e-3, 1e-3, 1e-4});
      r.add("maass_selberg/" + pad(t) + (sd ? "/selfdual" : "/generic"), {{"y", y}, {"c", 2.0}}, m.on_axis,
            m.off_axis_limit, tol);
    }
  }
  return r;
}

inline Report run_suite_classical(std::uint64_t seed, double tol) {
  using suite_detail::pad;
  Report r{"classical", seed, 0.0, {}};
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> c(-1.0, 1.0), w(0.5, 4.0);
  for (int t = 0; t < 6; ++t) {
    PolyGaussian1D f{{}, w(rng)};
    for (int n = 0; n <= 4; ++n) f.coefficients[n] = cplx(c(rng), c(rng));
    const double lhs = l2_norm_sq(f), rhs = l2_norm_sq(ft_1d(f));
    r.add("plancherel/" + pad(t), {{"a", f.a}, {"degree", 4}}, lhs, rhs, tol * std::max(1.0, lhs));
  }
  return r;
}

inline Report run_suite(const std::string& name, std::uint64_t seed, const std::map<std::string, double>& tol) {
  const auto t0 = std::chrono::steady_clock::now();
  Report r;
  if (name == "arch") r = run_suite_arch(seed, tol.at("arch"));
  else if (name == "padic") r = run_suite_padic(seed, tol.at("padic"));
  else if (name == "harmonics") r = run_suite_harmonics(seed, tol.at("harmonics"));
  else if (name == "global") r = run_suite_global(seed, tol.at("global"));
  else if (name == "classical") r = run_suite_classical(seed, tol.at("classical"));
  else if (name == "all") {
    r = Report{"all", seed, 0.0, {}};
    for (const auto& s : suite_names()) r.merge(run_suite(s, seed, tol));
  } else {
    throw DomainError("unknown suite: " + name);
  }
  r.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return r;
}

}  // namespace intertwine
