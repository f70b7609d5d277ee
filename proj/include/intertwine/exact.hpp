#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <map>
#include <numbers>
#include <numeric>
#include <ostream>
#include <string>

#include "errors.hpp"

namespace intertwine {

// Reduced fraction with positive denominator.
class Rational {
 public:
  constexpr Rational() = default;
  Rational(std::int64_t n) : num_(n), den_(1) {}  // NOLINT(google-explicit-constructor)
  Rational(std::int64_t n, std::int64_t d) { assign(n, d); }

  std::int64_t num() const { return num_; }
  std::int64_t den() const { return den_; }
  double to_double() const { return static_cast<double>(num_) / static_cast<double>(den_); }
  bool is_zero() const { return num_ == 0; }

  friend Rational operator+(const Rational& a, const Rational& b) {
    return from128(static_cast<__int128>(a.num_) * b.den_ + static_cast<__int128>(b.num_) * a.den_,
                   static_cast<__int128>(a.den_) * b.den_);
  }
  friend Rational operator-(const Rational& a) { return Rational(-a.num_, a.den_); }
  friend Rational operator-(const Rational& a, const Rational& b) { return a + (-b); }
  friend Rational operator*(const Rational& a, const Rational& b) {
    return from128(static_cast<__int128>(a.num_) * b.num_, static_cast<__int128>(a.den_) * b.den_);
  }
  friend Rational operator/(const Rational& a, const Rational& b) {
    if (b.num_ == 0) throw DomainError("rational division by zero");
    return from128(static_cast<__int128>(a.num_) * b.den_, static_cast<__int128>(a.den_) * b.num_);
  }
  Rational& operator+=(const Rational& o) { return *this = *this + o; }
  Rational& operator*=(const Rational& o) { return *this = *this * o; }
  friend bool operator==(const Rational&, const Rational&) = default;

  friend std::ostream& operator<<(std::ostream& os, const Rational& r) {
    os << r.num_;
    if (r.den_ != 1) os << '/' << r.den_;
    return os;
  }

 private:
  std::int64_t num_ = 0;
  std::int64_t den_ = 1;

  void assign(std::int64_t n, std::int64_t d) {
    if (d == 0) throw DomainError("rational with zero denominator");
    if (d < 0) n = -n, d = -d;
    std::int64_t g = std::gcd(n, d);
    num_ = n / g;
    den_ = d / g;
  }

  static Rational from128(__int128 n, __int128 d) {
    if (d == 0) throw DomainError("rational with zero denominator");
    if (d < 0) n = -n, d = -d;
    __int128 a = n < 0 ? -n : n, b = d;
    while (b != 0) {
      __int128 t = a % b;
      a = b;
      b = t;
    }
    if (a == 0) a = 1;
    n /= a;
    d /= a;
    constexpr __int128 lim = static_cast<__int128>(INT64_MAX);
    if (n > lim || n < -lim || d > lim) throw DomainError("rational overflow");
    Rational r;
    r.num_ = static_cast<std::int64_t>(n);
    r.den_ = static_cast<std::int64_t>(d);
    return r;
  }
};

// a + b i with rational a, b.
struct GaussRational {
  Rational re, im;

  GaussRational() = default;
  GaussRational(Rational r) : re(r) {}  // NOLINT(google-explicit-constructor)
  GaussRational(std::int64_t r) : re(r) {}  // NOLINT(google-explicit-constructor)
  GaussRational(Rational r, Rational i) : re(r), im(i) {}

  static GaussRational i() { return {Rational(0), Rational(1)}; }

  bool is_zero() const { return re.is_zero() && im.is_zero(); }
  std::complex<double> to_complex() const { return {re.to_double(), im.to_double()}; }
  GaussRational conj() const { return {re, -im}; }

  friend GaussRational operator+(const GaussRational& a, const GaussRational& b) {
    return {a.re + b.re, a.im + b.im};
  }
  friend GaussRational operator-(const GaussRational& a) { return {-a.re, -a.im}; }
  friend GaussRational operator-(const GaussRational& a, const GaussRational& b) { return a + (-b); }
  friend GaussRational operator*(const GaussRational& a, const GaussRational& b) {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
  }
  GaussRational& operator+=(const GaussRational& o) { return *this = *this + o; }
  friend bool operator==(const GaussRational&, const GaussRational&) = default;
};

// Finite sum  sum_e c_e pi^e  with Gaussian-rational c_e; zero terms are never stored.
class PiSeries {
 public:
  PiSeries() = default;
  PiSeries(GaussRational c, int pi_exp = 0) {  // NOLINT(google-explicit-constructor)
    if (!c.is_zero()) terms_[pi_exp] = c;
  }
  PiSeries(std::int64_t c) : PiSeries(GaussRational(c)) {}  // NOLINT(google-explicit-constructor)

  static PiSeries pi_pow(int e) { return PiSeries(GaussRational(1), e); }

  const std::map<int, GaussRational>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  std::complex<double> to_complex() const {
    std::complex<double> acc = 0.0;
    for (const auto& [e, c] : terms_) acc += c.to_complex() * std::pow(std::numbers::pi, e);
    return acc;
  }

  friend PiSeries operator+(PiSeries a, const PiSeries& b) {
    for (const auto& [e, c] : b.terms_) a.add_term(e, c);
    return a;
  }
  friend PiSeries operator-(const PiSeries& a) {
    PiSeries r;
    for (const auto& [e, c] : a.terms_) r.terms_[e] = -c;
    return r;
  }
  friend PiSeries operator-(const PiSeries& a, const PiSeries& b) { return a + (-b); }
  friend PiSeries operator*(const PiSeries& a, const PiSeries& b) {
    PiSeries r;
    for (const auto& [ea, ca] : a.terms_)
      for (const auto& [eb, cb] : b.terms_) r.add_term(ea + eb, ca * cb);
    return r;
  }
  PiSeries& operator+=(const PiSeries& o) { return *this = *this + o; }
  friend bool operator==(const PiSeries&, const PiSeries&) = default;

 private:
  std::map<int, GaussRational> terms_;

  void add_term(int e, const GaussRational& c) {
    auto it = terms_.find(e);
    if (it == terms_.end()) {
      if (!c.is_zero()) terms_[e] = c;
      return;
    }
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
};

// Coefficient-field hooks used by the polynomial templates.
template <class C>
struct Scalar;

template <>
struct Scalar<std::complex<double>> {
  using T = std::complex<double>;
  static T from(const GaussRational& g) { return g.to_complex(); }
  static T pi_pow(int e) { return std::pow(std::numbers::pi, e); }
  static bool is_zero(const T& x) { return x == 0.0; }
  static T to_complex(const T& x) { return x; }
};

template <>
struct Scalar<GaussRational> {
  using T = GaussRational;
  static T from(const GaussRational& g) { return g; }
  static bool is_zero(const T& x) { return x.is_zero(); }
  static std::complex<double> to_complex(const T& x) { return x.to_complex(); }
};

template <>
struct Scalar<PiSeries> {
  using T = PiSeries;
  static T from(const GaussRational& g) { return PiSeries(g); }
  static T pi_pow(int e) { return PiSeries::pi_pow(e); }
  static bool is_zero(const T& x) { return x.is_zero(); }
  static std::complex<double> to_complex(const T& x) { return x.to_complex(); }
};

}  // namespace intertwine
