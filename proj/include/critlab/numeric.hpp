#pragma once

// Exact rationals, p-adic valuations on Q and on cyclotomic units.

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace critlab {

using Integer = mpz_class;
using Rational = mpq_class;

/// Thrown when the hypotheses of a criterion are not met; no verdict is produced.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Thrown when a configured size or precision cap is exceeded.
class ResourceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline bool is_zero(const Rational& q) { return sgn(q) == 0; }

inline Rational make_rational(long num, long den = 1) {
  Rational q(num, den);
  q.canonicalize();
  return q;
}

/// Renders "num/den", or "num" when the denominator is 1.
inline std::string to_string(const Rational& q) {
  if (q.get_den() == 1) return q.get_num().get_str();
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

inline std::string to_string(const Integer& z) { return z.get_str(); }

/// Parses "n", "-n", "n/m" (decimal). Throws std::invalid_argument.
inline Rational parse_rational(std::string_view text) {
  auto trim = [](std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
    return s;
  };
  auto parse_int = [](std::string_view s) {
    if (s.empty()) throw std::invalid_argument("empty integer");
    std::size_t i = (s.front() == '-' || s.front() == '+') ? 1 : 0;
    if (i == s.size()) throw std::invalid_argument("malformed integer: " + std::string(s));
    for (std::size_t j = i; j < s.size(); ++j)
      if (s[j] < '0' || s[j] > '9')
        throw std::invalid_argument("malformed integer: " + std::string(s));
    std::string digits(s.front() == '+' ? s.substr(1) : s);
    return Integer(digits, 10);
  };
  text = trim(text);
  auto slash = text.find('/');
  Integer num = parse_int(trim(text.substr(0, slash)));
  Integer den = 1;
  if (slash != std::string_view::npos) {
    std::string_view rest = trim(text.substr(slash + 1));
    if (!rest.empty() && (rest.front() == '-' || rest.front() == '+'))
      throw std::invalid_argument("denominator must be unsigned: " + std::string(text));
    den = parse_int(rest);
  }
  if (den == 0) throw std::invalid_argument("zero denominator: " + std::string(text));
  Rational q(num, den);
  q.canonicalize();
  return q;
}

namespace detail {

inline std::uint64_t mulmod64(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

inline std::uint64_t powmod64(std::uint64_t base, std::uint64_t e, std::uint64_t m) {
  std::uint64_t r = 1 % m;
  base %= m;
  while (e) {
    if (e & 1) r = mulmod64(r, base, m);
    base = mulmod64(base, base, m);
    e >>= 1;
  }
  return r;
}

// Deterministic Miller-Rabin; these bases are exact for all n < 2^64.
inline bool is_prime_u64(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t q : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    if (n % q == 0) return n == q;
  }
  std::uint64_t d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  for (std::uint64_t a : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    std::uint64_t x = powmod64(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int r = 1; r < s; ++r) {
      x = mulmod64(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

}  // namespace detail

/// A prime below 2^64, checked at construction.
class Prime {
 public:
  explicit Prime(std::uint64_t value) : value_(value) {
    if (!detail::is_prime_u64(value))
      throw std::invalid_argument(std::to_string(value) + " is not prime");
  }

  static Prime from_integer(const Integer& z) {
    if (sgn(z) <= 0 || mpz_sizeinbase(z.get_mpz_t(), 2) > 64)
      throw std::invalid_argument(z.get_str() + " is not a prime below 2^64");
    return Prime(mpz_get_ui(z.get_mpz_t()));
  }

  std::uint64_t value() const { return value_; }
  Integer as_integer() const { return Integer(static_cast<unsigned long>(value_)); }

  friend bool operator==(const Prime&, const Prime&) = default;
  friend auto operator<=>(const Prime&, const Prime&) = default;

 private:
  std::uint64_t value_;
};

/// Distinct prime divisors of n >= 1, ascending (trial division; desk-scale n).
inline std::vector<std::uint64_t> prime_divisors(std::uint64_t n) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t q = 2; q * q <= n; ++q) {
    if (n % q == 0) {
      out.push_back(q);
      while (n % q == 0) n /= q;
    }
  }
  if (n > 1) out.push_back(n);
  return out;
}

/// If n = p^e with e >= 1, returns e; otherwise nullopt.
inline std::optional<unsigned> prime_power_exponent(std::uint64_t n, std::uint64_t p) {
  if (n < p) return std::nullopt;
  unsigned e = 0;
  while (n % p == 0) {
    n /= p;
    ++e;
  }
  if (n != 1 || e == 0) return std::nullopt;
  return e;
}

/// A valuation value: an exact rational, or +infinity (the valuation of 0).
class ValOrInf {
 public:
  ValOrInf(Rational v) : value_(std::move(v)) {}  // NOLINT: implicit by intent
  ValOrInf(long v) : value_(Rational(v)) {}       // NOLINT

  static ValOrInf infinity() { return ValOrInf(); }

  bool is_infinite() const { return !value_.has_value(); }
  bool is_finite() const { return value_.has_value(); }

  const Rational& value() const {
    if (!value_) throw std::logic_error("ValOrInf::value() on +infinity");
    return *value_;
  }

  friend bool operator==(const ValOrInf& x, const ValOrInf& y) {
    if (x.is_infinite() || y.is_infinite()) return x.is_infinite() == y.is_infinite();
    return *x.value_ == *y.value_;
  }

  friend std::strong_ordering operator<=>(const ValOrInf& x, const ValOrInf& y) {
    if (x.is_infinite())
      return y.is_infinite() ? std::strong_ordering::equal : std::strong_ordering::greater;
    if (y.is_infinite()) return std::strong_ordering::less;
    int c = cmp(*x.value_, *y.value_);
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }

  friend ValOrInf operator+(const ValOrInf& x, const ValOrInf& y) {
    if (x.is_infinite() || y.is_infinite()) return infinity();
    return ValOrInf(Rational(*x.value_ + *y.value_));
  }

  friend ValOrInf operator-(const ValOrInf& x, const Rational& r) {
    if (x.is_infinite()) return infinity();
    return ValOrInf(Rational(*x.value_ - r));
  }

  /// Multiplies by a nonnegative rational; +inf * 0 is rejected.
  ValOrInf scaled(const Rational& factor) const {
    if (sgn(factor) < 0) throw std::invalid_argument("valuation scale factor must be >= 0");
    if (is_infinite()) {
      if (sgn(factor) == 0) throw std::invalid_argument("+inf * 0 is undefined");
      return infinity();
    }
    return ValOrInf(Rational(*value_ * factor));
  }

  std::string str() const { return is_infinite() ? std::string("inf") : to_string(*value_); }

  friend std::ostream& operator<<(std::ostream& os, const ValOrInf& v) { return os << v.str(); }

 private:
  ValOrInf() = default;
  std::optional<Rational> value_;
};

inline ValOrInf min(const ValOrInf& x, const ValOrInf& y) { return x <= y ? x : y; }
inline ValOrInf max(const ValOrInf& x, const ValOrInf& y) { return x >= y ? x : y; }

/// p-adic valuation of a nonzero integer (count of factors of p).
inline long val_p(const Integer& z, const Prime& p) {
  if (sgn(z) == 0) throw std::invalid_argument("val_p of integer 0");
  Integer rest;
  Integer pz = p.as_integer();
  return static_cast<long>(mpz_remove(rest.get_mpz_t(), z.get_mpz_t(), pz.get_mpz_t()));
}

inline ValOrInf val_p(const Rational& q, const Prime& p) {
  if (is_zero(q)) return ValOrInf::infinity();
  return ValOrInf(Rational(val_p(q.get_num(), p) - val_p(q.get_den(), p)));
}

/// Finite p-adic valuation; throws on 0.
inline long finite_val_p(const Rational& q, const Prime& p) {
  if (is_zero(q)) throw std::invalid_argument("valuation of 0 is infinite");
  return val_p(q.get_num(), p) - val_p(q.get_den(), p);
}

inline bool is_p_integral(const Rational& q, const Prime& p) {
  return is_zero(q) || val_p(q.get_den(), p) == 0;
}

/// Euler totient (desk-scale m).
inline std::uint64_t euler_phi(std::uint64_t m) {
  std::uint64_t out = m;
  for (std::uint64_t q : prime_divisors(m)) out = out / q * (q - 1);
  return out;
}

/// Valuation of 1 - zeta_m for a primitive m-th root of unity, normalized so
/// that v(p) = 1. Equals 1/((p-1)p^(e-1)) for m = p^e, 0 for other m > 1,
/// and +inf for m = 1 (zeta_1 = 1).
inline ValOrInf val_one_minus_zeta(std::uint64_t m, const Prime& p) {
  if (m == 0) throw std::invalid_argument("val_one_minus_zeta: m must be >= 1");
  if (m == 1) return ValOrInf::infinity();
  auto e = prime_power_exponent(m, p.value());
  if (!e) return ValOrInf(0);
  Integer den = Integer(static_cast<unsigned long>(p.value() - 1));
  for (unsigned i = 1; i < *e; ++i) den *= static_cast<unsigned long>(p.value());
  return ValOrInf(Rational(Integer(1), den));
}

/// Number of decimal digits of numerator plus denominator (size guard).
inline std::size_t decimal_digits(const Rational& q) {
  return mpz_sizeinbase(q.get_num_mpz_t(), 10) + mpz_sizeinbase(q.get_den_mpz_t(), 10);
}

}  // namespace critlab
