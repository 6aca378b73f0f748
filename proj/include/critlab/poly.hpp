#pragma once

// Dense univariate polynomials over an exact coefficient ring K.
//
// K must be constructible from an int, support + - * and ==, and have an
// `is_zero(const K&)` and an `exact_quotient(const K&, const K&)` found by ADL.
// Over a field exact_quotient is plain division; over a ring it throws when
// the quotient does not exist.

#include "critlab/numeric.hpp"

#include <algorithm>
#include <initializer_list>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace critlab {

inline Rational exact_quotient(const Rational& a, const Rational& b) {
  if (is_zero(b)) throw std::domain_error("division by zero");
  return a / b;
}

namespace detail {
template <class K>
bool coeff_is_zero(const K& a) {
  return is_zero(a);
}
template <class K>
std::string coeff_to_string(const K& a) {
  return to_string(a);
}
}  // namespace detail

template <class K>
class UniPoly {
 public:
  using coefficient_type = K;

  UniPoly() = default;

  /// Coefficients indexed by degree (c[0] is the constant term).
  explicit UniPoly(std::vector<K> coeffs) : c_(std::move(coeffs)) { trim(); }
  UniPoly(std::initializer_list<K> coeffs) : c_(coeffs) { trim(); }

  /// Constant polynomial; also lets UniPoly itself serve as a coefficient ring.
  explicit UniPoly(int value) {
    if (value != 0) c_.push_back(K(value));
  }

  static UniPoly constant(K value) {
    UniPoly p;
    p.c_.push_back(std::move(value));
    p.trim();
    return p;
  }

  /// c * x^k.
  static UniPoly monomial(K coeff, std::size_t k) {
    std::vector<K> c(k + 1, K(0));
    c[k] = std::move(coeff);
    return UniPoly(std::move(c));
  }

  static UniPoly x() { return monomial(K(1), 1); }

  bool is_zero() const { return c_.empty(); }
  /// -1 for the zero polynomial.
  long degree() const { return static_cast<long>(c_.size()) - 1; }
  const std::vector<K>& coefficients() const { return c_; }

  /// Coefficient of x^k (zero beyond the degree).
  K coeff(std::size_t k) const { return k < c_.size() ? c_[k] : K(0); }

  const K& leading() const {
    if (c_.empty()) throw std::domain_error("leading coefficient of zero polynomial");
    return c_.back();
  }

  /// Multiplicity of 0 as a root (0 for nonzero constant term).
  std::size_t order_at_zero() const {
    std::size_t k = 0;
    while (k < c_.size() && critlab_is_zero(c_[k])) ++k;
    return k;
  }

  UniPoly monic() const {
    if (is_zero()) return *this;
    UniPoly out = *this;
    const K lc = leading();
    for (auto& a : out.c_) a = exact_quotient(a, lc);
    return out;
  }

  UniPoly operator-() const {
    UniPoly out = *this;
    for (auto& a : out.c_) a = K(0) - a;
    return out;
  }

  UniPoly& operator+=(const UniPoly& o) {
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), K(0));
    for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] = c_[i] + o.c_[i];
    trim();
    return *this;
  }

  UniPoly& operator-=(const UniPoly& o) {
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), K(0));
    for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] = c_[i] - o.c_[i];
    trim();
    return *this;
  }

  friend UniPoly operator+(UniPoly a, const UniPoly& b) { return a += b; }
  friend UniPoly operator-(UniPoly a, const UniPoly& b) { return a -= b; }

  friend UniPoly operator*(const UniPoly& a, const UniPoly& b) {
    if (a.is_zero() || b.is_zero()) return UniPoly();
    std::vector<K> out(a.c_.size() + b.c_.size() - 1, K(0));
    for (std::size_t i = 0; i < a.c_.size(); ++i) {
      if (critlab_is_zero(a.c_[i])) continue;
      for (std::size_t j = 0; j < b.c_.size(); ++j) out[i + j] = out[i + j] + a.c_[i] * b.c_[j];
    }
    return UniPoly(std::move(out));
  }

  UniPoly& operator*=(const UniPoly& o) { return *this = *this * o; }

  /// Scalar multiple.
  UniPoly scaled(const K& s) const {
    UniPoly out = *this;
    for (auto& a : out.c_) a = a * s;
    out.trim();
    return out;
  }

  friend bool operator==(const UniPoly& a, const UniPoly& b) { return a.c_ == b.c_; }

  UniPoly derivative() const {
    if (c_.size() <= 1) return UniPoly();
    std::vector<K> out(c_.size() - 1, K(0));
    for (std::size_t i = 1; i < c_.size(); ++i) out[i - 1] = c_[i] * K(static_cast<int>(i));
    return UniPoly(std::move(out));
  }

  /// Horner evaluation at a point of any type V with V * K -> V and V + K -> V.
  template <class V>
  V evaluate_at(const V& x, V zero) const {
    V acc = std::move(zero);
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
    return acc;
  }

  K evaluate(const K& x) const {
    K acc(0);
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
    return acc;
  }

  /// (this o q)(x) = this(q(x)).
  UniPoly compose(const UniPoly& q) const {
    UniPoly acc;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * q + constant(*it);
    return acc;
  }

  std::string str(const std::string& var = "x") const {
    if (is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (std::size_t i = c_.size(); i-- > 0;) {
      if (critlab_is_zero(c_[i])) continue;
      if (!first) os << " + ";
      first = false;
      os << "(" << coeff_str(c_[i]) << ")";
      if (i >= 1) os << "*" << var;
      if (i >= 2) os << "^" << i;
    }
    return os.str();
  }

 private:
  static bool critlab_is_zero(const K& a) { return detail::coeff_is_zero(a); }
  static std::string coeff_str(const K& a) { return detail::coeff_to_string(a); }

  void trim() {
    while (!c_.empty() && critlab_is_zero(c_.back())) c_.pop_back();
  }

  std::vector<K> c_;
};

template <class K>
bool is_zero(const UniPoly<K>& p) {
  return p.is_zero();
}

template <class K>
std::string to_string(const UniPoly<K>& p) {
  return p.str("x");
}

template <class K>
UniPoly<K> pow(const UniPoly<K>& base, unsigned long e) {
  UniPoly<K> result = UniPoly<K>::constant(K(1));
  UniPoly<K> b = base;
  while (e) {
    if (e & 1) result *= b;
    e >>= 1;
    if (e) b *= b;
  }
  return result;
}

/// Quotient and remainder of a by b. Over a ring this requires every leading
/// coefficient division along the way to be exact.
template <class K>
std::pair<UniPoly<K>, UniPoly<K>> divmod(const UniPoly<K>& a, const UniPoly<K>& b) {
  if (b.is_zero()) throw std::domain_error("polynomial division by zero");
  std::vector<K> r = a.coefficients();
  const auto& bc = b.coefficients();
  const std::size_t db = bc.size() - 1;
  if (r.size() < bc.size()) return {UniPoly<K>(), a};
  std::vector<K> q(r.size() - db, K(0));
  const K& lb = bc.back();
  for (std::size_t i = r.size(); i-- > db;) {
    if (is_zero(r[i])) continue;
    K t = exact_quotient(r[i], lb);
    for (std::size_t j = 0; j <= db; ++j) r[i - db + j] = r[i - db + j] - t * bc[j];
    q[i - db] = std::move(t);
  }
  r.resize(db);
  return {UniPoly<K>(std::move(q)), UniPoly<K>(std::move(r))};
}

template <class K>
bool divides(const UniPoly<K>& d, const UniPoly<K>& a) {
  if (d.is_zero()) return a.is_zero();
  return divmod(a, d).second.is_zero();
}

/// a / b, which must divide exactly.
template <class K>
UniPoly<K> exact_quotient(const UniPoly<K>& a, const UniPoly<K>& b) {
  auto [q, r] = divmod(a, b);
  if (!r.is_zero()) throw std::domain_error("inexact polynomial division");
  return q;
}

/// Monic gcd by the Euclidean algorithm (K a field). gcd(0, 0) = 0.
template <class K>
UniPoly<K> euclid_gcd_monic(UniPoly<K> a, UniPoly<K> b) {
  while (!b.is_zero()) {
    UniPoly<K> r = divmod(a, b).second;
    a = std::move(b);
    b = std::move(r);
  }
  return a.monic();
}

template <class K>
UniPoly<K> gcd_monic(const UniPoly<K>& a, const UniPoly<K>& b) {
  return euclid_gcd_monic(a, b);
}

/// Extended Euclid over a field: returns (g, s, t) with s*a + t*b = g, g monic.
template <class K>
struct ExtendedGcd {
  UniPoly<K> g, s, t;
};

template <class K>
ExtendedGcd<K> extended_gcd(const UniPoly<K>& a, const UniPoly<K>& b) {
  using P = UniPoly<K>;
  P r0 = a, r1 = b;
  P s0 = P::constant(K(1)), s1;
  P t0, t1 = P::constant(K(1));
  while (!r1.is_zero()) {
    auto [q, r] = divmod(r0, r1);
    r0 = std::move(r1);
    r1 = std::move(r);
    P s2 = s0 - q * s1;
    s0 = std::move(s1);
    s1 = std::move(s2);
    P t2 = t0 - q * t1;
    t0 = std::move(t1);
    t1 = std::move(t2);
  }
  if (r0.is_zero()) return {P(), P(), P()};
  K lc = r0.leading();
  return {r0.monic(), s0.scaled(exact_quotient(K(1), lc)), t0.scaled(exact_quotient(K(1), lc))};
}

// Over Q the modular algorithm replaces Euclid (see modular_gcd.hpp).
inline UniPoly<Rational> gcd_monic(const UniPoly<Rational>& a, const UniPoly<Rational>& b);

/// P / gcd(P, P'), monic: same roots as P, all simple (characteristic 0).
template <class K>
UniPoly<K> squarefree_part(const UniPoly<K>& p) {
  if (p.is_zero()) return p;
  if (p.degree() == 0) return UniPoly<K>::constant(K(1));
  UniPoly<K> g = gcd_monic(p, p.derivative());
  return exact_quotient(p, g).monic();
}

template <class K>
bool is_squarefree(const UniPoly<K>& p) {
  if (p.degree() <= 0) return true;
  return gcd_monic(p, p.derivative()).degree() == 0;
}

}  // namespace critlab

#include "critlab/modular_gcd.hpp"
