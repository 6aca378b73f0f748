#pragma once

// Approximate p-adic numbers with tracked precision. A value is exactly zero,
// an unknown element of p^k Z_p, or p^v (u + O(p^r)) with u a unit.

#include "critlab/numeric.hpp"

#include <algorithm>
#include <limits>

namespace critlab {

class Padic {
 public:
  enum class Kind { Zero, Unknown, Unit };

  static Padic zero(const Prime& p) { return Padic(p, Kind::Zero, 0, Integer(0), 0); }
  static Padic unknown(const Prime& p, long abs_prec) { return Padic(p, Kind::Unknown, abs_prec, Integer(0), 0); }

  /// r rounded to `prec` digits of relative precision.
  static Padic from_rational(const Rational& r, const Prime& p, long prec) {
    if (prec < 1) throw std::invalid_argument("p-adic precision must be positive");
    if (critlab::is_zero(r)) return zero(p);
    const long v = finite_val_p(r, p);
    Integer num = r.get_num(), den = r.get_den();
    Integer pp = power(p, static_cast<unsigned long>(std::labs(v)));
    if (v > 0) num /= pp;
    if (v < 0) den /= pp;
    Integer mod = power(p, static_cast<unsigned long>(prec));
    Integer inv;
    mpz_invert(inv.get_mpz_t(), den.get_mpz_t(), mod.get_mpz_t());
    Integer u = num * inv;
    mpz_fdiv_r(u.get_mpz_t(), u.get_mpz_t(), mod.get_mpz_t());
    return Padic(p, Kind::Unit, v, std::move(u), prec);
  }

  Kind kind() const { return kind_; }
  bool is_zero() const { return kind_ == Kind::Zero; }
  bool is_known_nonzero() const { return kind_ == Kind::Unit; }

  /// Exact valuation for a unit-kind value, +inf for zero, otherwise the
  /// lower bound k of x in p^k Z_p.
  ValOrInf valuation() const {
    if (kind_ == Kind::Zero) return ValOrInf::infinity();
    return ValOrInf(Rational(val_));
  }

  /// x is known modulo p^absolute_precision (huge for exact zero).
  long absolute_precision() const {
    switch (kind_) {
      case Kind::Zero: return std::numeric_limits<long>::max() / 4;
      case Kind::Unknown: return val_;
      case Kind::Unit: return val_ + prec_;
    }
    return 0;
  }
  long relative_precision() const { return kind_ == Kind::Unit ? prec_ : 0; }

  Padic operator-() const {
    if (kind_ != Kind::Unit) return *this;
    Integer mod = power(p_, static_cast<unsigned long>(prec_));
    return Padic(p_, kind_, val_, Integer(mod - unit_), prec_);
  }

  friend Padic operator+(const Padic& x, const Padic& y) {
    if (x.is_zero()) return y;
    if (y.is_zero()) return x;
    const long a = std::min(x.absolute_precision(), y.absolute_precision());
    long m = a;
    if (x.kind_ == Kind::Unit) m = std::min(m, x.val_);
    if (y.kind_ == Kind::Unit) m = std::min(m, y.val_);
    if (m >= a) return unknown(x.p_, a);
    Integer s = 0;
    for (const Padic* t : {&x, &y})
      if (t->kind_ == Kind::Unit && t->val_ < a) s += t->unit_ * power(x.p_, static_cast<unsigned long>(t->val_ - m));
    const Integer mod = power(x.p_, static_cast<unsigned long>(a - m));
    mpz_fdiv_r(s.get_mpz_t(), s.get_mpz_t(), mod.get_mpz_t());
    if (s == 0) return unknown(x.p_, a);
    const long t = val_p(s, x.p_);
    if (t > 0) s /= power(x.p_, static_cast<unsigned long>(t));
    return Padic(x.p_, Kind::Unit, m + t, std::move(s), a - m - t);
  }
  friend Padic operator-(const Padic& x, const Padic& y) { return x + (-y); }

  friend Padic operator*(const Padic& x, const Padic& y) {
    if (x.is_zero() || y.is_zero()) return zero(x.p_);
    if (x.kind_ == Kind::Unknown || y.kind_ == Kind::Unknown) return unknown(x.p_, x.val_ + y.val_);
    const long prec = std::min(x.prec_, y.prec_);
    const Integer mod = power(x.p_, static_cast<unsigned long>(prec));
    Integer u = x.unit_ * y.unit_;
    mpz_fdiv_r(u.get_mpz_t(), u.get_mpz_t(), mod.get_mpz_t());
    return Padic(x.p_, Kind::Unit, x.val_ + y.val_, std::move(u), prec);
  }

  /// True when r is consistent with this approximation.
  bool contains(const Rational& r) const {
    if (kind_ == Kind::Zero) return critlab::is_zero(r);
    if (critlab::is_zero(r)) return kind_ == Kind::Unknown;
    const long a = absolute_precision();
    Padic diff = from_rational(r, p_, std::max<long>(1, a - finite_val_p(r, p_) + 1)) - *this;
    return diff.kind_ != Kind::Unit || diff.val_ >= a;
  }

 private:
  Padic(const Prime& p, Kind k, long v, Integer u, long prec) : p_(p), kind_(k), val_(v), unit_(std::move(u)), prec_(prec) {}

  static Integer power(const Prime& p, unsigned long e) {
    Integer out;
    mpz_ui_pow_ui(out.get_mpz_t(), p.value(), e);
    return out;
  }

  Prime p_;
  Kind kind_;
  long val_;     // valuation (Unit) or absolute precision (Unknown)
  Integer unit_;
  long prec_;    // relative precision (Unit)
};

}  // namespace critlab
