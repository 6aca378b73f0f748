#pragma once

// Cyclotomic polynomials and arithmetic in simple number fields Q[t]/(f).

#include "critlab/poly.hpp"

#include <map>
#include <memory>
#include <mutex>
#include <stdexcept>
#include <string>
#include <utility>

namespace critlab {

using QPoly = UniPoly<Rational>;

/// Phi_m, by exact division of t^m - 1 by Phi_k for every proper divisor k of m.
inline QPoly cyclotomic_poly(std::uint64_t m) {
  if (m == 0) throw std::invalid_argument("cyclotomic_poly: m must be >= 1");
  static std::mutex mu;
  static std::map<std::uint64_t, QPoly> cache;
  {
    std::lock_guard<std::mutex> lock(mu);
    if (auto it = cache.find(m); it != cache.end()) return it->second;
  }
  QPoly f = QPoly::monomial(Rational(1), m) - QPoly::constant(Rational(1));
  for (std::uint64_t k = 1; k < m; ++k)
    if (m % k == 0) f = exact_quotient(f, cyclotomic_poly(k));
  std::lock_guard<std::mutex> lock(mu);
  cache.emplace(m, f);
  return f;
}

/// The field Q[t]/(f) for an irreducible f of degree >= 1.
struct NumberField {
  QPoly modulus;
  /// m for Q(zeta_m), 0 when not built as a cyclotomic field.
  std::uint64_t cyclotomic_index = 0;

  long degree() const { return modulus.degree(); }
};

using FieldPtr = std::shared_ptr<const NumberField>;

inline FieldPtr cyclotomic_field(std::uint64_t m) {
  return std::make_shared<const NumberField>(NumberField{cyclotomic_poly(m), m});
}

/// Q[t]/(f). The caller vouches for irreducibility; a zero divisor surfaces as
/// an error on inversion.
inline FieldPtr number_field(QPoly modulus) {
  if (modulus.degree() < 1) throw std::invalid_argument("number field modulus must have degree >= 1");
  return std::make_shared<const NumberField>(NumberField{modulus.monic(), 0});
}

/// An element of Q[t]/(f), stored as its reduced representative. An element
/// without a field is a rational scalar, compatible with every field; this is
/// what K(0) and K(1) produce in generic polynomial code.
class AlgElem {
 public:
  AlgElem() = default;
  explicit AlgElem(int value) : rep_(QPoly::constant(Rational(value))) {}
  explicit AlgElem(const Rational& value) : rep_(QPoly::constant(value)) {}
  AlgElem(FieldPtr field, QPoly rep) : field_(std::move(field)), rep_(std::move(rep)) { reduce(); }

  /// The class of t.
  static AlgElem generator(FieldPtr field) { return AlgElem(std::move(field), QPoly::x()); }

  const FieldPtr& field() const { return field_; }
  const QPoly& representative() const { return rep_; }
  bool is_zero() const { return rep_.is_zero(); }
  bool is_rational() const { return rep_.degree() <= 0; }

  friend AlgElem operator+(const AlgElem& x, const AlgElem& y) {
    return AlgElem(common(x, y), x.rep_ + y.rep_);
  }
  friend AlgElem operator-(const AlgElem& x, const AlgElem& y) {
    return AlgElem(common(x, y), x.rep_ - y.rep_);
  }
  friend AlgElem operator*(const AlgElem& x, const AlgElem& y) {
    return AlgElem(common(x, y), x.rep_ * y.rep_);
  }
  AlgElem operator-() const { return AlgElem(field_, -rep_); }

  AlgElem inverse() const {
    if (is_zero()) throw std::domain_error("inverse of zero field element");
    if (!field_ || rep_.degree() == 0)
      return AlgElem(field_, QPoly::constant(Rational(1) / rep_.leading()));
    auto eg = extended_gcd(rep_, field_->modulus);
    if (eg.g.degree() != 0) throw std::domain_error("field modulus is reducible: element is a zero divisor");
    return AlgElem(field_, eg.s);
  }

  friend AlgElem operator/(const AlgElem& x, const AlgElem& y) { return x * y.inverse(); }

  friend bool operator==(const AlgElem& x, const AlgElem& y) {
    if (x.field_ && y.field_ && !same_field(x.field_, y.field_)) return false;
    return x.rep_ == y.rep_;
  }

  AlgElem pow(unsigned long e) const {
    AlgElem r(field_, QPoly::constant(Rational(1)));
    AlgElem b = *this;
    while (e) {
      if (e & 1) r = r * b;
      e >>= 1;
      if (e) b = b * b;
    }
    return r;
  }

  std::string str() const { return rep_.str("t"); }

 private:
  static bool same_field(const FieldPtr& f, const FieldPtr& g) {
    return f == g || f->modulus == g->modulus;
  }

  static FieldPtr common(const AlgElem& x, const AlgElem& y) {
    if (!x.field_) return y.field_;
    if (!y.field_) return x.field_;
    if (!same_field(x.field_, y.field_)) throw std::invalid_argument("mixing elements of different number fields");
    return x.field_;
  }

  void reduce() {
    if (field_ && rep_.degree() >= field_->modulus.degree()) rep_ = divmod(rep_, field_->modulus).second;
  }

  FieldPtr field_;
  QPoly rep_;
};

/// Elements of Q(zeta_m) modulo Phi_m.
using CycloElem = AlgElem;

inline bool is_zero(const AlgElem& x) { return x.is_zero(); }
inline AlgElem exact_quotient(const AlgElem& a, const AlgElem& b) { return a / b; }
inline std::string to_string(const AlgElem& x) { return x.str(); }

/// zeta_m^k in Q(zeta_m) = Q[t]/(Phi_m).
inline CycloElem zeta_power(const FieldPtr& cyclo, std::uint64_t k) {
  return CycloElem::generator(cyclo).pow(k);
}

/// Lifts a rational polynomial into K[x] for a field element type K.
inline UniPoly<AlgElem> lift_to_field(const QPoly& p, const FieldPtr& field) {
  std::vector<AlgElem> c;
  c.reserve(p.coefficients().size());
  for (const auto& a : p.coefficients()) c.emplace_back(field, QPoly::constant(a));
  return UniPoly<AlgElem>(std::move(c));
}

}  // namespace critlab
