#pragma once

#include <algorithm>
#include <array>
#include <complex>
#include <cstddef>
#include <map>

#include "exact.hpp"

namespace intertwine {

// Polynomial in N commuting variables; for N=4 the order is (z1, z2, zb1, zb2),
// for N=2 it is (z, zb). Zero coefficients are never stored.
template <class C, std::size_t N>
class Poly {
 public:
  using Exponent = std::array<int, N>;
  using S = Scalar<C>;

  Poly() = default;

  static Poly constant(const C& c) {
    Poly p;
    p.add(Exponent{}, c);
    return p;
  }
  static Poly monomial(const Exponent& e, const C& c) {
    Poly p;
    p.add(e, c);
    return p;
  }

  const std::map<Exponent, C>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  void add(const Exponent& e, const C& c) {
    if (S::is_zero(c)) return;
    auto it = terms_.find(e);
    if (it == terms_.end()) {
      terms_.emplace(e, c);
      return;
    }
    it->second = it->second + c;
    if (S::is_zero(it->second)) terms_.erase(it);
  }

  C coefficient(const Exponent& e) const {
    auto it = terms_.find(e);
    return it == terms_.end() ? C{} : it->second;
  }

  int total_degree() const {
    int d = 0;
    for (const auto& [e, c] : terms_) {
      int s = 0;
      for (int k : e) s += k;
      d = std::max(d, s);
    }
    return d;
  }

  friend Poly operator+(Poly a, const Poly& b) {
    for (const auto& [e, c] : b.terms_) a.add(e, c);
    return a;
  }
  friend Poly operator-(const Poly& a) { return a * C(S::from(GaussRational(-1))); }
  friend Poly operator-(const Poly& a, const Poly& b) { return a + (-b); }
  friend Poly operator*(const Poly& a, const C& s) {
    Poly r;
    for (const auto& [e, c] : a.terms_) r.add(e, c * s);
    return r;
  }
  friend Poly operator*(const C& s, const Poly& a) { return a * s; }
  friend Poly operator*(const Poly& a, const Poly& b) {
    Poly r;
    for (const auto& [ea, ca] : a.terms_)
      for (const auto& [eb, cb] : b.terms_) {
        Exponent e{};
        for (std::size_t k = 0; k < N; ++k) e[k] = ea[k] + eb[k];
        r.add(e, ca * cb);
      }
    return r;
  }
  friend bool operator==(const Poly&, const Poly&) = default;

  // d/d(var), treating all N variables as independent.
  Poly derivative(std::size_t var) const {
    Poly r;
    for (const auto& [e, c] : terms_) {
      if (e[var] == 0) continue;
      Exponent f = e;
      f[var] -= 1;
      r.add(f, c * S::from(GaussRational(e[var])));
    }
    return r;
  }

  Poly times_var(std::size_t var) const {
    Poly r;
    for (const auto& [e, c] : terms_) {
      Exponent f = e;
      f[var] += 1;
      r.add(f, c);
    }
    return r;
  }

  std::complex<double> operator()(const std::array<std::complex<double>, N>& x) const {
    std::complex<double> acc = 0.0;
    for (const auto& [e, c] : terms_) {
      std::complex<double> m = S::to_complex(c);
      for (std::size_t k = 0; k < N; ++k)
        for (int j = 0; j < e[k]; ++j) m *= x[k];
      acc += m;
    }
    return acc;
  }

  Poly<std::complex<double>, N> to_complex() const {
    Poly<std::complex<double>, N> r;
    for (const auto& [e, c] : terms_) r.add(e, S::to_complex(c));
    return r;
  }

  template <class D>
  Poly<D, N> cast() const {
    Poly<D, N> r;
    for (const auto& [e, c] : terms_) r.add(e, D(c));
    return r;
  }

 private:
  std::map<Exponent, C> terms_;
};

// max |a_e - b_e| over the union of supports.
template <class C, std::size_t N>
double max_coeff_diff(const Poly<C, N>& a, const Poly<C, N>& b) {
  auto d = (a - b).to_complex();
  double m = 0.0;
  for (const auto& [e, c] : d.terms()) m = std::max(m, std::abs(c));
  return m;
}

template <std::size_t N>
Poly<std::complex<double>, N> pow(const Poly<std::complex<double>, N>& p, int k) {
  auto r = Poly<std::complex<double>, N>::constant(1.0);
  for (int j = 0; j < k; ++j) r = r * p;
  return r;
}

inline constexpr std::size_t Z1 = 0, Z2 = 1, ZB1 = 2, ZB2 = 3;
inline constexpr std::size_t Z = 0, ZB = 1;

template <class C>
using LaurentPoly4 = Poly<C, 4>;

}  // namespace intertwine
