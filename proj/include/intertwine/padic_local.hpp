#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <random>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "numerics.hpp"

namespace intertwine {

namespace padic {

inline std::int64_t pow_int(std::int64_t p, int e) {
  std::int64_t r = 1;
  for (int j = 0; j < e; ++j) r *= p;
  return r;
}

inline std::int64_t mod(std::int64_t a, std::int64_t m) {
  std::int64_t r = a % m;
  return r < 0 ? r + m : r;
}

inline std::int64_t mulmod(std::int64_t a, std::int64_t b, std::int64_t m) {
  return static_cast<std::int64_t>(mod(static_cast<std::int64_t>((static_cast<__int128>(a) * b) %
                                                                 static_cast<__int128>(m)),
                                       m));
}

inline std::int64_t powmod(std::int64_t b, std::int64_t e, std::int64_t m) {
  std::int64_t r = 1 % m;
  b = mod(b, m);
  while (e > 0) {
    if (e & 1) r = mulmod(r, b, m);
    b = mulmod(b, b, m);
    e >>= 1;
  }
  return r;
}

inline int valuation(std::int64_t x, std::int64_t p) {
  int v = 0;
  while (x != 0 && x % p == 0) {
    x /= p;
    ++v;
  }
  return v;
}

inline bool is_prime(std::int64_t n) {
  if (n < 2) return false;
  for (std::int64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

inline void check_prime(std::int64_t p, bool allow_p2 = false) {
  if (!is_prime(p)) throw DomainError("not a prime: " + std::to_string(p));
  if (p == 2 && !allow_p2) throw UnsupportedPrime("p = 2 requires an explicit opt-in");
}

// Largest exponent K with p^K < 2^62; units are carried modulo p^K.
inline int max_precision(std::int64_t p) {
  int k = 0;
  std::int64_t v = 1;
  while (v <= (std::int64_t{1} << 62) / p) {
    v *= p;
    ++k;
  }
  return k;
}

// Smallest primitive root modulo p^2, hence modulo every p^m (odd p).
inline std::int64_t generator(std::int64_t p) {
  const std::int64_t p2 = p * p;
  std::vector<std::int64_t> factors;
  std::int64_t r = p - 1;
  for (std::int64_t d = 2; d * d <= r; ++d)
    if (r % d == 0) {
      factors.push_back(d);
      while (r % d == 0) r /= d;
    }
  if (r > 1) factors.push_back(r);
  for (std::int64_t g = 2; g < p2; ++g) {
    if (g % p == 0) continue;
    bool ok = true;
    for (auto f : factors)
      if (powmod(g, (p - 1) / f, p) == 1) ok = false;
    if (ok && powmod(g, p - 1, p2) != 1) return g;
  }
  throw DomainError("no primitive root");
}

// Discrete logarithm tables modulo p^m, built once and then read-only.
// Odd p: entry = j with g^j = y. p = 2, m >= 2: entry = a * 2^{m-2} + b with y = (-1)^a 5^b.
inline const std::vector<std::int64_t>& dlog_table(std::int64_t p, int m) {
  static std::mutex mtx;
  static std::map<std::pair<std::int64_t, int>, std::shared_ptr<const std::vector<std::int64_t>>> cache;
  std::lock_guard<std::mutex> lock(mtx);
  auto key = std::make_pair(p, m);
  auto it = cache.find(key);
  if (it != cache.end()) return *it->second;
  const std::int64_t pm = pow_int(p, m);
  auto table = std::make_shared<std::vector<std::int64_t>>(static_cast<std::size_t>(pm), -1);
  if (p != 2) {
    const std::int64_t g = generator(p), order = pm / p * (p - 1);
    std::int64_t y = 1;
    for (std::int64_t j = 0; j < order; ++j) {
      (*table)[static_cast<std::size_t>(y)] = j;
      y = mulmod(y, g, pm);
    }
  } else if (m == 2) {
    (*table)[1] = 0;
    (*table)[3] = 1;
  } else if (m >= 3) {
    const std::int64_t order5 = pm / 4;
    std::int64_t y = 1;
    for (std::int64_t b = 0; b < order5; ++b) {
      (*table)[static_cast<std::size_t>(y)] = b;
      (*table)[static_cast<std::size_t>(pm - y)] = order5 + b;
      y = mulmod(y, 5, pm);
    }
  }
  cache.emplace(key, table);
  return *table;
}

}  // namespace padic

// x = p^v * unit, the unit known modulo p^prec; zero is its own state.
struct PAdicPoint {
  bool zero = false;
  int v = 0;
  std::int64_t unit = 1;
  int prec = 0;

  static PAdicPoint origin() { return {true, 0, 0, 0}; }

  // Exact integer (taken modulo p^K, K the working precision).
  static PAdicPoint from_integer(std::int64_t x, std::int64_t p, int prec = -1) {
    if (prec < 0) prec = padic::max_precision(p);
    const std::int64_t pk = padic::pow_int(p, prec);
    x = padic::mod(x, pk);
    if (x == 0) return origin();
    const int v = padic::valuation(x, p);
    return {false, v, x / padic::pow_int(p, v), prec - v};
  }

  static PAdicPoint make(std::int64_t p, int v, std::int64_t unit, int prec = -1) {
    if (prec < 0) prec = padic::max_precision(p);
    if (unit % p == 0) throw DomainError("unit divisible by p");
    return {false, v, padic::mod(unit, padic::pow_int(p, prec)), prec};
  }

  // p^k u x for a unit u.
  PAdicPoint scaled(std::int64_t p, int k, std::int64_t u) const {
    if (zero) return *this;
    return {false, v + k, padic::mulmod(unit, u, padic::pow_int(p, prec)), prec};
  }

  std::int64_t unit_mod(std::int64_t p, int m) const {
    if (m > prec) throw DomainError("point precision too low");
    return padic::mod(unit, padic::pow_int(p, m));
  }
};

// Character of Z_p^x of conductor m, given by exponents on the generators of (Z/p^m)^x.
class MultChar {
 public:
  MultChar() = default;

  static MultChar trivial(std::int64_t p) {
    MultChar c;
    c.p_ = p;
    return c;
  }

  // chi(g^j) = e(e j / phi(p^M)), g the fixed generator (odd p).
  static MultChar from_exponent(std::int64_t p, int level, std::int64_t e) {
    padic::check_prime(p);
    if (level < 0) throw DomainError("negative level");
    MultChar c;
    c.p_ = p;
    if (level == 0) return c;
    const std::int64_t order = padic::pow_int(p, level - 1) * (p - 1);
    e = padic::mod(e, order);
    if (e == 0) return c;
    const int m = level - std::min(padic::valuation(e, p), level - 1);
    c.m_ = m;
    c.k1_ = padic::mod(e / padic::pow_int(p, level - m), padic::pow_int(p, m - 1) * (p - 1));
    return c;
  }

  // p = 2: chi(-1) = (-1)^{e1}, chi(5) = e(e2 / 2^{M-2}).
  static MultChar from_exponents_p2(int level, std::int64_t e1, std::int64_t e2) {
    MultChar c;
    c.p_ = 2;
    e1 = padic::mod(e1, 2);
    if (level < 2) return c;
    const std::int64_t order5 = level >= 3 ? padic::pow_int(2, level - 2) : 1;
    e2 = padic::mod(e2, order5);
    if (e2 == 0) {
      if (e1 == 1) {
        c.m_ = 2;
        c.k1_ = 1;
      }
      return c;
    }
    const int m = level - padic::valuation(e2, 2);
    c.m_ = m;
    c.k1_ = e1;
    c.k2_ = e2 / padic::pow_int(2, level - m);
    return c;
  }

  // Every character of (Z/p^M)^x, each once.
  static std::vector<MultChar> all_mod(std::int64_t p, int level, bool allow_p2 = false) {
    padic::check_prime(p, allow_p2);
    std::vector<MultChar> out;
    if (p != 2) {
      const std::int64_t order = level == 0 ? 1 : padic::pow_int(p, level - 1) * (p - 1);
      for (std::int64_t e = 0; e < order; ++e) out.push_back(from_exponent(p, level, e));
      return out;
    }
    if (level < 2) return {trivial(2)};
    const std::int64_t order5 = level >= 3 ? padic::pow_int(2, level - 2) : 1;
    for (std::int64_t a = 0; a < 2; ++a)
      for (std::int64_t b = 0; b < order5; ++b) out.push_back(from_exponents_p2(level, a, b));
    return out;
  }

  std::int64_t p() const { return p_; }
  int conductor() const { return m_; }
  std::int64_t C() const { return padic::pow_int(p_, m_); }
  bool is_trivial() const { return m_ == 0; }

  cplx operator()(std::int64_t y) const {
    if (padic::mod(y, p_) == 0) throw DomainError("character evaluated at a non-unit");
    if (m_ == 0) return 1.0;
    const std::int64_t pm = padic::pow_int(p_, m_);
    const std::int64_t j = padic::dlog_table(p_, m_)[static_cast<std::size_t>(padic::mod(y, pm))];
    return std::polar(1.0, 2.0 * pi * phase(j));
  }

  cplx at_minus_one() const { return (*this)(-1); }

  MultChar inverse() const {
    MultChar c = *this;
    if (m_ == 0) return c;
    if (p_ != 2) {
      c.k1_ = padic::mod(-k1_, padic::pow_int(p_, m_ - 1) * (p_ - 1));
    } else {
      c.k1_ = padic::mod(-k1_, 2);
      if (m_ >= 3) c.k2_ = padic::mod(-k2_, padic::pow_int(2, m_ - 2));
    }
    return c;
  }

  friend MultChar operator*(const MultChar& a, const MultChar& b) {
    if (a.p_ != b.p_) throw DomainError("characters at different primes");
    const int level = std::max({a.m_, b.m_, a.p_ == 2 ? 3 : 1});
    if (a.p_ != 2) return from_exponent(a.p_, level, a.lift(level) + b.lift(level));
    auto [a1, a2] = a.lift_p2(level);
    auto [b1, b2] = b.lift_p2(level);
    return from_exponents_p2(level, a1 + b1, a2 + b2);
  }

  friend auto operator<=>(const MultChar& a, const MultChar& b) {
    return std::tie(a.p_, a.m_, a.k1_, a.k2_) <=> std::tie(b.p_, b.m_, b.k1_, b.k2_);
  }
  friend bool operator==(const MultChar& a, const MultChar& b) = default;

  std::string label() const {
    return "chi(p=" + std::to_string(p_) + ",c=" + std::to_string(m_) + ",k=" + std::to_string(k1_) +
           (p_ == 2 ? "," + std::to_string(k2_) : "") + ")";
  }

 private:
  double phase(std::int64_t j) const {
    if (p_ != 2) {
      const auto order = static_cast<double>(padic::pow_int(p_, m_ - 1) * (p_ - 1));
      return static_cast<double>(padic::mulmod(k1_, j, padic::pow_int(p_, m_ - 1) * (p_ - 1))) / order;
    }
    if (m_ == 2) return 0.5 * static_cast<double>(k1_ * j);
    const std::int64_t order5 = padic::pow_int(2, m_ - 2);
    const std::int64_t a = j / order5, b = j % order5;
    return 0.5 * static_cast<double>(k1_ * a) +
           static_cast<double>(padic::mulmod(k2_, b, order5)) / static_cast<double>(order5);
  }

  std::int64_t lift(int level) const {
    if (m_ == 0) return 0;
    return k1_ * padic::pow_int(p_, level - m_);
  }

  std::pair<std::int64_t, std::int64_t> lift_p2(int level) const {
    if (m_ < 3) return {k1_, 0};
    return {k1_, k2_ * padic::pow_int(2, level - m_)};
  }

  std::int64_t p_ = 3;
  int m_ = 0;
  std::int64_t k1_ = 0;
  std::int64_t k2_ = 0;
};

// psi(x) = e(frac(p^c x)); trivial on p^{-c} Z_p, C(psi) = p^c.
struct AddChar {
  std::int64_t p = 3;
  int c = 0;

  double C() const { return static_cast<double>(padic::pow_int(p, c)); }

  cplx operator()(const PAdicPoint& x) const {
    if (x.zero || x.v + c >= 0) return 1.0;
    const int depth = -(x.v + c);
    const std::int64_t pd = padic::pow_int(p, depth);
    return std::polar(1.0, 2.0 * pi * static_cast<double>(x.unit_mod(p, depth)) / static_cast<double>(pd));
  }
};

// int_{o^x} chi(y) psi(-p^n y) dy with vol(o) = C(psi)^{-1/2}, as a finite sum over residues.
inline cplx unit_integral(const MultChar& chi, const AddChar& psi, int n) {
  const std::int64_t p = psi.p;
  const int level = std::max({chi.conductor(), -psi.c - n, 1});
  const std::int64_t pl = padic::pow_int(p, level);
  cplx acc = 0.0;
  for (std::int64_t y = 1; y < pl; ++y) {
    if (y % p == 0) continue;
    acc += chi(y) * psi(PAdicPoint::make(p, n, -y, level));
  }
  return acc / (static_cast<double>(pl) * std::sqrt(psi.C()));
}

// G(chi, psi); requires c(chi) > 0.
inline cplx gauss_sum(const MultChar& chi, const AddChar& psi) {
  if (chi.is_trivial()) throw ConductorError("Gauss sum of the trivial character");
  return unit_integral(chi, psi, -psi.c - chi.conductor());
}

// g(chi, psi) = G(chi, psi) C(chi)^{1/2} C(psi)^{1/2}.
inline cplx gauss_normalized(const MultChar& chi, const AddChar& psi) {
  return gauss_sum(chi, psi) * std::sqrt(static_cast<double>(chi.C()) * psi.C());
}

// [chi, n] (Char, c(chi) > 0) or [1, >= n] (Tail).
struct Atom {
  enum class Kind { Char, Tail };
  Kind kind = Kind::Tail;
  int n = 0;
  MultChar chi;

  static Atom character(const MultChar& chi, int n) {
    if (chi.is_trivial()) throw ConductorError("[chi, n] atoms need c(chi) > 0; use unit_shell");
    return {Kind::Char, n, chi};
  }
  static Atom tail(std::int64_t p, int n) { return {Kind::Tail, n, MultChar::trivial(p)}; }

  cplx operator()(const PAdicPoint& x) const {
    if (kind == Kind::Tail) return (x.zero || x.v >= n) ? 1.0 : 0.0;
    if (x.zero || x.v != n) return 0.0;
    return chi(x.unit_mod(chi.p(), chi.conductor()));
  }

  friend auto operator<=>(const Atom&, const Atom&) = default;
  friend bool operator==(const Atom&, const Atom&) = default;
};

// Finite combination of atoms; identical atoms are merged and zeros dropped.
class SimpleFunction {
 public:
  using Terms = std::map<Atom, cplx>;

  void add(const Atom& a, cplx c) {
    auto& slot = terms_[a];
    slot += c;
    if (std::abs(slot) < 1e-300) terms_.erase(a);
  }

  const Terms& terms() const { return terms_; }
  bool empty() const { return terms_.empty(); }

  cplx operator()(const PAdicPoint& x) const {
    cplx acc = 0.0;
    for (const auto& [a, c] : terms_) acc += c * a(x);
    return acc;
  }

  friend SimpleFunction operator+(SimpleFunction a, const SimpleFunction& b) {
    for (const auto& [t, c] : b.terms_) a.add(t, c);
    return a;
  }
  friend SimpleFunction operator*(cplx s, const SimpleFunction& f) {
    SimpleFunction r;
    for (const auto& [t, c] : f.terms_) r.add(t, s * c);
    return r;
  }
  friend SimpleFunction operator-(const SimpleFunction& a, const SimpleFunction& b) { return a + (-1.0) * b; }

  // x -> f(-x)
  SimpleFunction reflected() const {
    SimpleFunction r;
    for (const auto& [a, c] : terms_) r.add(a, a.kind == Atom::Kind::Char ? c * a.chi.at_minus_one() : c);
    return r;
  }

  int min_index() const {
    int m = 1 << 20;
    for (const auto& [a, c] : terms_) m = std::min(m, a.n);
    return m;
  }
  int max_index() const {
    int m = -(1 << 20);
    for (const auto& [a, c] : terms_) m = std::max(m, a.n);
    return m;
  }
  int max_conductor() const {
    int m = 0;
    for (const auto& [a, c] : terms_) m = std::max(m, a.chi.conductor());
    return m;
  }

 private:
  Terms terms_;
};

inline SimpleFunction char_atom(const MultChar& chi, int n) {
  SimpleFunction f;
  f.add(Atom::character(chi, n), 1.0);
  return f;
}

inline SimpleFunction tail_atom(std::int64_t p, int n) {
  SimpleFunction f;
  f.add(Atom::tail(p, n), 1.0);
  return f;
}

// [chi, n] for any chi; the trivial character gives the indicator of p^n o^x.
inline SimpleFunction shell(const MultChar& chi, int n) {
  if (!chi.is_trivial()) return char_atom(chi, n);
  return tail_atom(chi.p(), n) - tail_atom(chi.p(), n + 1);
}

// F f(x) = int f(u) psi(-u x) du, atom by atom.
inline SimpleFunction fourier_atom(const SimpleFunction& f, const AddChar& psi) {
  SimpleFunction out;
  const double q = static_cast<double>(psi.p);
  for (const auto& [a, c] : f.terms()) {
    const double scale = std::pow(q, -a.n);
    if (a.kind == Atom::Kind::Char) {
      out.add(Atom::character(a.chi.inverse(), -a.n - psi.c - a.chi.conductor()),
              c * scale * gauss_sum(a.chi, psi));
    } else {
      out.add(Atom::tail(psi.p, -a.n - psi.c), c * scale / std::sqrt(psi.C()));
    }
  }
  return out;
}

// Same transform as a finite sum over residue classes: shells p^v o^x for v below the
// point where f and psi(-u x) are both constant, plus the constant remainder ball.
inline cplx fourier_brute(const SimpleFunction& f, const AddChar& psi, const PAdicPoint& x) {
  if (f.empty()) return 0.0;
  const std::int64_t p = psi.p;
  const double q = static_cast<double>(p), vol_o = 1.0 / std::sqrt(psi.C());
  const int lo = f.min_index();
  int hi = f.max_index();
  if (!x.zero) hi = std::max(hi, -psi.c - x.v);
  cplx acc = 0.0;
  for (int v = lo; v <= hi; ++v) {
    int level = std::max(f.max_conductor(), 1);
    if (!x.zero) level = std::max(level, -psi.c - v - x.v);
    const std::int64_t pl = padic::pow_int(p, level);
    cplx shell_sum = 0.0;
    for (std::int64_t y = 1; y < pl; ++y) {
      if (y % p == 0) continue;
      const auto u = PAdicPoint::make(p, v, y, level);
      cplx kernel = 1.0;
      if (!x.zero) kernel = psi(PAdicPoint::make(p, v + x.v, padic::mulmod(-y, x.unit, padic::pow_int(p, x.prec)),
                                                 std::min(level, x.prec)));
      shell_sum += f(u) * kernel;
    }
    acc += shell_sum * vol_o * std::pow(q, -v) / static_cast<double>(pl);
  }
  acc += f(PAdicPoint::origin()) * vol_o * std::pow(q, -(hi + 1));
  return acc;
}

// sum of c * A(x) B(y)
class TensorSimpleFunction {
 public:
  using Key = std::pair<Atom, Atom>;

  void add(const Atom& a, const Atom& b, cplx c) {
    auto& slot = terms_[{a, b}];
    slot += c;
    if (std::abs(slot) < 1e-300) terms_.erase({a, b});
  }

  static TensorSimpleFunction tensor(const SimpleFunction& a, const SimpleFunction& b) {
    TensorSimpleFunction t;
    for (const auto& [x, cx] : a.terms())
      for (const auto& [y, cy] : b.terms()) t.add(x, y, cx * cy);
    return t;
  }

  const std::map<Key, cplx>& terms() const { return terms_; }
  bool empty() const { return terms_.empty(); }

  cplx operator()(const PAdicPoint& x, const PAdicPoint& y) const {
    cplx acc = 0.0;
    for (const auto& [k, c] : terms_) acc += c * k.first(x) * k.second(y);
    return acc;
  }

  friend TensorSimpleFunction operator+(TensorSimpleFunction a, const TensorSimpleFunction& b) {
    for (const auto& [k, c] : b.terms_) a.add(k.first, k.second, c);
    return a;
  }
  friend TensorSimpleFunction operator*(cplx s, const TensorSimpleFunction& f) {
    TensorSimpleFunction r;
    for (const auto& [k, c] : f.terms_) r.add(k.first, k.second, s * c);
    return r;
  }
  friend TensorSimpleFunction operator-(const TensorSimpleFunction& a, const TensorSimpleFunction& b) {
    return a + (-1.0) * b;
  }

  int min_index() const {
    int m = 1 << 20;
    for (const auto& [k, c] : terms_) m = std::min({m, k.first.n, k.second.n});
    return m;
  }
  int max_index() const {
    int m = -(1 << 20);
    for (const auto& [k, c] : terms_) m = std::max({m, k.first.n, k.second.n});
    return m;
  }
  int max_conductor() const {
    int m = 0;
    for (const auto& [k, c] : terms_) m = std::max({m, k.first.chi.conductor(), k.second.chi.conductor()});
    return m;
  }

 private:
  std::map<Key, cplx> terms_;
};

// Phi^(x, y) = F Phi(-y, x), F the two-variable transform.
inline TensorSimpleFunction fourier_hat(const TensorSimpleFunction& phi, const AddChar& psi) {
  TensorSimpleFunction out;
  for (const auto& [k, c] : phi.terms()) {
    SimpleFunction a, b;
    a.add(k.first, 1.0);
    b.add(k.second, 1.0);
    out = out + c * TensorSimpleFunction::tensor(fourier_atom(b, psi), fourier_atom(a, psi).reflected());
  }
  return out;
}

// Unit parts of xi and eta = omega xi^{-1}; |.|^{i mu} is the unramified part of xi / eta.
struct FiniteParams {
  std::int64_t p = 3;
  cplx s = 0.0;
  double mu = 0.0;
  MultChar xi = MultChar::trivial(3);
  MultChar eta = MultChar::trivial(3);
  AddChar psi{3, 0};

  double q() const { return static_cast<double>(p); }
  int conductor() const { return xi.conductor() + eta.conductor(); }
  // 1: both ramified, 2: xi only, 3: eta only, 4: neither
  int ramification_case() const {
    const bool a = !xi.is_trivial(), b = !eta.is_trivial();
    if (a && b) return 1;
    if (a) return 2;
    if (b) return 3;
    return 4;
  }
  bool twist_unramified() const { return xi == eta; }
};

inline FiniteParams swapped(const FiniteParams& f) {
  FiniteParams g = f;
  g.s = -f.s;
  g.mu = -f.mu;
  std::swap(g.xi, g.eta);
  return g;
}

enum class PhiNormalization { AsPrinted, Orthonormal };

// Classical vector Phi_N, N >= c. AsPrinted carries the displayed (1 + 1/q)^{-1/2} in cases 2 and 3
// above level c, which leaves ||Phi||^2 = 1 / (1 + 1/q); Orthonormal drops it.
inline TensorSimpleFunction classical_vector(const FiniteParams& f, int N,
                                             PhiNormalization norm = PhiNormalization::AsPrinted) {
  const int c = f.conductor();
  if (N < c) throw RangeError("classical vector needs N >= c");
  const std::int64_t p = f.p;
  const double q = f.q(), cpsi = std::sqrt(f.psi.C()), ceta = std::sqrt(static_cast<double>(f.eta.C()));
  const int n = N - c;
  const double qn = std::pow(q, 0.5 * n);
  const double printed_extra = norm == PhiNormalization::AsPrinted ? 1.0 / std::sqrt(1.0 + 1.0 / q) : 1.0;
  auto T = [&](int k) { return tail_atom(p, k); };
  switch (f.ramification_case()) {
    case 1: {
      const double k = qn * cpsi * ceta / (1.0 - 1.0 / q);
      return k * TensorSimpleFunction::tensor(char_atom(f.xi.inverse(), f.eta.conductor() + n),
                                              char_atom(f.eta, 0));
    }
    case 2: {
      if (n == 0)
        return cpsi / std::sqrt(1.0 - 1.0 / q) * TensorSimpleFunction::tensor(char_atom(f.xi.inverse(), 0), T(0));
      const double k = qn * cpsi / (1.0 - 1.0 / q) * printed_extra;
      return k * TensorSimpleFunction::tensor(char_atom(f.xi.inverse(), n), shell(MultChar::trivial(p), 0));
    }
    case 3: {
      const int a = f.eta.conductor() + n;
      if (n == 0)
        return cpsi * ceta / std::sqrt(1.0 - 1.0 / q) * TensorSimpleFunction::tensor(T(a), char_atom(f.eta, 0));
      const double k = qn * cpsi * ceta / (1.0 - 1.0 / q) * printed_extra;
      return k * TensorSimpleFunction::tensor(T(a) - (1.0 / q) * T(a - 1), char_atom(f.eta, 0));
    }
    default: {
      const auto F12 = TensorSimpleFunction::tensor(T(0), T(0)) - TensorSimpleFunction::tensor(T(1), T(1));
      auto strip = [&](int k) { return TensorSimpleFunction::tensor(T(k), T(0) - T(1)); };
      if (N == 0) return cpsi / std::sqrt(1.0 - 1.0 / (q * q)) * F12;
      if (N == 1)
        return cpsi * std::sqrt(q * (1.0 + 1.0 / q) / (1.0 - 1.0 / q)) * (strip(1) - (1.0 / (q + 1.0)) * F12);
      return qn * cpsi / (1.0 - 1.0 / q) * (strip(N) - (1.0 / q) * strip(N - 1));
    }
  }
}

namespace detail {

// avg over units u mod p^M of A(p^a u) conj(B(p^a u)); a = none means the point 0.
inline cplx shell_average(const Atom& A, const Atom& B, std::int64_t p, int a, bool origin, int level) {
  if (origin) return A(PAdicPoint::origin()) * std::conj(B(PAdicPoint::origin()));
  const std::int64_t pm = padic::pow_int(p, level);
  cplx acc = 0.0;
  std::int64_t count = 0;
  for (std::int64_t u = 1; u < pm; ++u) {
    if (u % p == 0) continue;
    const auto x = PAdicPoint::make(p, a, u, level);
    acc += A(x) * std::conj(B(x));
    ++count;
  }
  return acc / static_cast<double>(count);
}

}  // namespace detail

// <Phi, Psi> over F_1^2 = o x o - p x p with Tate measure vol(o) = C(psi)^{-1/2} per coordinate,
// summed cell by cell: p^a o^x x o^x, o^x x p^b o^x, and the two constant remainder cells.
inline cplx inner_product_f12(const TensorSimpleFunction& phi, const TensorSimpleFunction& chi, const AddChar& psi) {
  if (phi.empty() || chi.empty()) return 0.0;
  const std::int64_t p = psi.p;
  const double q = static_cast<double>(p), vo = 1.0 / std::sqrt(psi.C());
  const int top = std::max({phi.max_index(), chi.max_index(), 0}) + 1;
  const int level = std::max({phi.max_conductor(), chi.max_conductor(), 1});
  const double units = vo * (1.0 - 1.0 / q);
  auto cell = [&](int a, bool a0, int b, bool b0) {
    cplx acc = 0.0;
    for (const auto& [k1, c1] : phi.terms())
      for (const auto& [k2, c2] : chi.terms())
        acc += c1 * std::conj(c2) * detail::shell_average(k1.first, k2.first, p, a, a0, level) *
               detail::shell_average(k1.second, k2.second, p, b, b0, level);
    return acc;
  };
  cplx total = 0.0;
  for (int a = 0; a < top; ++a) total += cell(a, false, 0, false) * units * std::pow(q, -a) * units;
  total += cell(0, true, 0, false) * vo * std::pow(q, -top) * units;
  for (int b = 1; b < top; ++b) total += cell(0, false, b, false) * units * units * std::pow(q, -b);
  total += cell(0, false, 0, true) * units * vo * std::pow(q, -top);
  return total;
}

// Volumes of the K_0[p^N] orbits on F_1^2: o^x x o, (p^k - p^{k+1}) x o^x for 1 <= k < N, p^N x o^x.
inline std::vector<double> orbit_measures(std::int64_t p, int N, const AddChar& psi) {
  if (N < 1) throw RangeError("orbit list needs N >= 1");
  const double q = static_cast<double>(p), C = psi.C();
  std::vector<double> out{(1.0 - 1.0 / q) / C};
  for (int k = 1; k < N; ++k) out.push_back(std::pow(q, -k) * (1.0 - 1.0 / q) * (1.0 - 1.0 / q) / C);
  out.push_back(std::pow(q, -N) * (1.0 - 1.0 / q) / C);
  return out;
}

// Covariance conditions of the level N subspace, checked on residue representatives mod p^K:
// (1) unit scalings, (2) y -> y + t x with t in o, (3) x -> x + t y with t in p^N.
inline bool level_membership(const TensorSimpleFunction& phi, const FiniteParams& f, int N, int samples = 8,
                             double tol = 1e-12) {
  if (N < 0) throw RangeError("level must be >= 0");
  if (phi.empty()) return true;
  const std::int64_t p = f.p;
  const int K = std::max(N, phi.max_index()) + phi.max_conductor() + 4;
  const std::int64_t pk = padic::pow_int(p, K);
  std::mt19937_64 rng(0x5eed + static_cast<std::uint64_t>(N));
  std::uniform_int_distribution<std::int64_t> any(0, pk - 1);
  auto unit = [&] {
    std::int64_t u;
    do u = any(rng);
    while (u % p == 0);
    return u;
  };
  auto at = [&](std::int64_t x, std::int64_t y) {
    return phi(PAdicPoint::from_integer(x, p, K), PAdicPoint::from_integer(y, p, K));
  };
  std::vector<std::pair<std::int64_t, std::int64_t>> pts;
  for (int j = 0; j < samples; ++j) {
    for (int a = 0; a <= N + 2; ++a) pts.push_back({padic::mulmod(padic::pow_int(p, a), unit(), pk), unit()});
    for (int b = 1; b <= N + 2; ++b) pts.push_back({unit(), padic::mulmod(padic::pow_int(p, b), unit(), pk)});
    pts.push_back({0, unit()});
    pts.push_back({unit(), 0});
  }
  for (auto [x, y] : pts) {
    const cplx base = at(x, y);
    const std::int64_t u1 = unit(), u2 = unit();
    const cplx lhs = at(padic::mulmod(u1, x, pk), padic::mulmod(u2, y, pk));
    if (std::abs(lhs - f.xi.inverse()(u1) * f.eta(u2) * base) > tol) return false;
    const std::int64_t t = any(rng);
    if (std::abs(at(x, padic::mod(y + padic::mulmod(t, x, pk), pk)) - base) > tol) return false;
    const std::int64_t s = padic::mulmod(padic::pow_int(p, N), any(rng), pk);
    if (std::abs(at(padic::mod(x + padic::mulmod(s, y, pk), pk), y) - base) > tol) return false;
  }
  return true;
}

// int_{F^x} Phi(t (c, d)) chi(t) |t|^{1+2s} d^x t with vol(o^x) = C(psi)^{-1/2},
// chi = (unit character) * |.|^{i mu}. Shells k in [min index, max index] are summed and the
// constant remainder is the geometric series z^{k+1} / (1 - z), z = q^{-(1+2s+i mu)}.
inline cplx tate_integral_finite(const TensorSimpleFunction& phi, std::int64_t p, cplx s, double mu,
                                 const MultChar& chi_unit, const AddChar& psi, std::int64_t c, std::int64_t d) {
  if (phi.empty()) return 0.0;
  if (padic::mod(c, p) == 0 && padic::mod(d, p) == 0) throw DomainError("row must be primitive");
  const double q = static_cast<double>(p);
  const cplx z = std::pow(q, -(1.0 + 2.0 * s + I * mu));
  if (std::abs(1.0 - z) < 1e-14) throw PoleError("Tate integral at its pole");
  const int level = std::max({phi.max_conductor(), chi_unit.conductor(), 1});
  const std::int64_t pm = padic::pow_int(p, level);
  const auto xc = PAdicPoint::from_integer(c, p), yd = PAdicPoint::from_integer(d, p);
  auto shell = [&](int k) {
    cplx acc = 0.0;
    std::int64_t count = 0;
    for (std::int64_t u = 1; u < pm; ++u) {
      if (u % p == 0) continue;
      acc += phi(xc.scaled(p, k, u), yd.scaled(p, k, u)) * chi_unit(u);
      ++count;
    }
    return acc / static_cast<double>(count);
  };
  const int lo = phi.min_index(), hi = phi.max_index();
  cplx total = 0.0;
  for (int k = lo; k <= hi; ++k) total += std::pow(z, k) * shell(k);
  total += std::pow(z, hi + 1) / (1.0 - z) * shell(hi + 1);
  return total / std::sqrt(psi.C());
}

namespace detail {

inline void check_finite_level(const FiniteParams& f, int N) {
  if (N < f.conductor()) throw RangeError("level below the conductor");
  if (f.xi.p() != f.p || f.eta.p() != f.p || f.psi.p != f.p) throw DomainError("mixed primes");
}

// L(1+2s, chi) / L(1-2s, chi^{-1}) for chi = xi / eta; 1 when chi is ramified.
inline cplx finite_l_ratio(const FiniteParams& f) {
  if (!f.twist_unramified()) return 1.0;
  const cplx w = 2.0 * f.s + I * f.mu;
  const cplx a = std::pow(f.q(), -(1.0 - w)), b = std::pow(f.q(), -(1.0 + w));
  if (std::abs(1.0 - b) < 1e-14) throw PoleError("L(1+2s) pole");
  return (1.0 - a) / (1.0 - b);
}

// Q with mu = phase * Lratio * Q^{-(2s + i mu)}.
inline double finite_base(const FiniteParams& f, int N) {
  const int c = f.conductor();
  const double qn = std::pow(f.q(), N - c) * f.psi.C();
  switch (f.ramification_case()) {
    case 1: return qn * static_cast<double>(f.xi.C() * f.eta.C());
    case 2: return qn * static_cast<double>(f.xi.C());
    case 3: return qn * static_cast<double>(f.eta.C());
    default: return qn;
  }
}

// conj(g(xi, psi)) g(eta, psi), a trivial character contributing 1. The display carries
// g(xi^{-1}) conj(g(eta^{-1})), which is omega(-1) times this.
inline cplx finite_phase(const FiniteParams& f) {
  cplx v = 1.0;
  if (!f.xi.is_trivial()) v *= std::conj(gauss_normalized(f.xi, f.psi));
  if (!f.eta.is_trivial()) v *= gauss_normalized(f.eta, f.psi);
  return v;
}

inline bool finite_has_l_ratio(const FiniteParams& f, int N) {
  return f.twist_unramified() && !(f.ramification_case() == 4 && N == 0);
}

}  // namespace detail

// Eigenvalue of the normalized operator on e(s; N), N >= c.
// The case 3 base is q^{N-c} C(psi) C(eta). mu_finite_printed keeps the displayed phase and base.
inline cplx mu_finite(const FiniteParams& f, int N) {
  detail::check_finite_level(f, N);
  const cplx w = 2.0 * f.s + I * f.mu;
  cplx v = detail::finite_phase(f) * std::pow(detail::finite_base(f, N), -w);
  if (detail::finite_has_l_ratio(f, N)) v *= detail::finite_l_ratio(f);
  return v;
}

// Displayed form: differs from mu_finite by omega(-1) = xi(-1) eta(-1), and in case 3 by the base C(xi).
inline cplx mu_finite_printed(const FiniteParams& f, int N) {
  detail::check_finite_level(f, N);
  const int rc = f.ramification_case();
  const cplx w = 2.0 * f.s + I * f.mu;
  const cplx sign = f.xi.at_minus_one() * f.eta.at_minus_one();
  if (rc != 3) return sign * mu_finite(f, N);
  const double base = std::pow(f.q(), N - f.conductor()) * f.psi.C() * static_cast<double>(f.xi.C());
  return std::conj(gauss_normalized(f.eta.inverse(), f.psi)) * std::pow(base, -w);
}

// Primitive rows (c, d) of sample elements of GL2(Z_p): 1, w, lower unipotents and unit twists.
inline std::vector<std::pair<std::int64_t, std::int64_t>> finite_sample_rows(std::int64_t p, int N) {
  std::vector<std::pair<std::int64_t, std::int64_t>> rows{{0, 1}, {1, 0}, {1, 1}, {2, 1}, {1, p}, {1, 2 * p}};
  for (int j = 1; j <= N + 2; ++j) {
    const std::int64_t pj = padic::pow_int(p, j);
    rows.push_back({pj, 1});
    rows.push_back({2 * pj, p - 1});
    rows.push_back({1, pj});
  }
  return rows;
}

// Independent eigenvalue: Phi_N(xi, eta) is transformed atom by atom, both sides are integrated
// as geometric series at the rows, and the ratio is multiplied by the local L-factor ratio.
inline cplx mu_finite_oracle(const FiniteParams& f, int N,
                             const std::vector<std::pair<std::int64_t, std::int64_t>>& rows, double tol = 1e-10) {
  detail::check_finite_level(f, N);
  const FiniteParams g = swapped(f);
  const auto phi = classical_vector(f, N, PhiNormalization::Orthonormal);
  const auto hat = fourier_hat(phi, f.psi);
  const auto target = classical_vector(g, N, PhiNormalization::Orthonormal);
  const MultChar chi = g.xi * g.eta.inverse();
  std::vector<std::pair<cplx, cplx>> vals;
  double scale = 0.0;
  for (auto [c, d] : rows) {
    const cplx num = tate_integral_finite(hat, f.p, g.s, g.mu, chi, f.psi, c, d);
    const cplx den = tate_integral_finite(target, f.p, g.s, g.mu, chi, f.psi, c, d);
    vals.push_back({num, den});
    scale = std::max(scale, std::abs(den));
  }
  if (scale == 0.0) throw InconsistentRatio("target section vanishes at every sample row");
  std::vector<cplx> ratios;
  for (auto [num, den] : vals) {
    if (std::abs(den) > 1e-8 * scale)
      ratios.push_back(num / den);
    else if (std::abs(num) > tol * scale)
      throw InconsistentRatio("transformed section is nonzero where the target vanishes");
  }
  for (const auto& r : ratios)
    if (std::abs(r - ratios.front()) > tol * std::max(1.0, std::abs(ratios.front())))
      throw InconsistentRatio("finite oracle ratio depends on the sample row");
  const cplx lr = f.twist_unramified() ? detail::finite_l_ratio(f) : 1.0;
  return lr * ratios.front();
}

struct FiniteDerivative {
  cplx exact;
  cplx finite_difference;
};

// d mu / ds; the finite difference steps along the imaginary axis.
inline FiniteDerivative mu_finite_derivative(const FiniteParams& f, int N, double h = 1e-5) {
  if (!(h >= 1e-6 && h <= 1e-4)) throw DomainError("finite-difference step must lie in [1e-6, 1e-4]");
  const double lq = std::log(f.q());
  cplx dlog = -2.0 * std::log(detail::finite_base(f, N));
  if (detail::finite_has_l_ratio(f, N)) {
    const cplx w = 2.0 * f.s + I * f.mu;
    const cplx a = std::pow(f.q(), -(1.0 - w)), b = std::pow(f.q(), -(1.0 + w));
    dlog -= 2.0 * lq * (a / (1.0 - a) + b / (1.0 - b));
  }
  FiniteParams up = f, dn = f;
  up.s += I * h;
  dn.s -= I * h;
  return {mu_finite(f, N) * dlog, (mu_finite(up, N) - mu_finite(dn, N)) / (2.0 * I * h)};
}

inline double mu_finite_derivative_bound(const FiniteParams& f, int N) {
  detail::check_finite_level(f, N);
  const double lq = std::log(f.q());
  double b = N * lq + std::log(f.psi.C());
  if (f.twist_unramified()) b += 2.0 * lq / (1.0 - 1.0 / f.q());
  return 2.0 * b;
}

// (q^n - q^{n-2} 1_{n >= 2}) 1_{n >= c}
inline std::int64_t dim_ktype_finite(std::int64_t q, int c, int n) {
  if (n < 0) throw RangeError("negative level");
  if (n < c) return 0;
  std::int64_t d = padic::pow_int(q, n);
  if (n >= 2) d -= padic::pow_int(q, n - 2);
  return d;
}

}  // namespace intertwine
