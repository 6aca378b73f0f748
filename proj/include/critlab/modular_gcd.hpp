#pragma once

// Polynomial gcd over Q by reduction modulo word-size primes.
//
// Inputs are scaled to primitive integer polynomials A, B. For a prime q that
// divides neither leading coefficient, deg gcd(A mod q, B mod q) >= deg gcd(A, B),
// so a constant image proves the gcd is 1. Otherwise images of minimal degree
// are combined by CRT (scaled by gcd(lc A, lc B)) until the symmetric lift,
// made primitive, divides both A and B; that trial division is the certificate.

#include "critlab/poly.hpp"

#include <cstdint>
#include <vector>

namespace critlab {

/// Primitive integer polynomial with the same roots as p (positive leading
/// coefficient), as a coefficient vector indexed by degree.
inline std::vector<Integer> primitive_integer_coefficients(const UniPoly<Rational>& p) {
  std::vector<Integer> out;
  if (p.is_zero()) return out;
  Integer lcm_den = 1;
  for (const auto& c : p.coefficients()) mpz_lcm(lcm_den.get_mpz_t(), lcm_den.get_mpz_t(), c.get_den_mpz_t());
  out.reserve(p.coefficients().size());
  Integer content = 0;
  for (const auto& c : p.coefficients()) {
    Integer v = c.get_num() * (lcm_den / c.get_den());
    mpz_gcd(content.get_mpz_t(), content.get_mpz_t(), v.get_mpz_t());
    out.push_back(std::move(v));
  }
  if (sgn(out.back()) < 0) content = -content;
  for (auto& v : out) mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), content.get_mpz_t());
  return out;
}

inline UniPoly<Rational> from_integer_coefficients(const std::vector<Integer>& c) {
  std::vector<Rational> out;
  out.reserve(c.size());
  for (const auto& v : c) out.emplace_back(v);
  return UniPoly<Rational>(std::move(out));
}

namespace detail {

using ModVec = std::vector<std::uint64_t>;

inline void trim_mod(ModVec& v) {
  while (!v.empty() && v.back() == 0) v.pop_back();
}

inline ModVec reduce_mod(const std::vector<Integer>& c, std::uint64_t q) {
  ModVec out(c.size());
  for (std::size_t i = 0; i < c.size(); ++i) out[i] = mpz_fdiv_ui(c[i].get_mpz_t(), q);
  trim_mod(out);
  return out;
}

inline std::uint64_t invmod64(std::uint64_t a, std::uint64_t q) { return powmod64(a, q - 2, q); }

// Monic gcd over F_q, q prime.
inline ModVec gcd_mod(ModVec a, ModVec b, std::uint64_t q) {
  while (!b.empty()) {
    const std::uint64_t inv = invmod64(b.back(), q);
    const std::size_t db = b.size() - 1;
    while (a.size() >= b.size()) {
      const std::uint64_t t = mulmod64(a.back(), inv, q);
      const std::size_t shift = a.size() - b.size();
      for (std::size_t j = 0; j <= db; ++j) {
        const std::uint64_t sub = mulmod64(t, b[j], q);
        a[shift + j] = a[shift + j] >= sub ? a[shift + j] - sub : a[shift + j] + q - sub;
      }
      trim_mod(a);
    }
    std::swap(a, b);
  }
  if (!a.empty()) {
    const std::uint64_t inv = invmod64(a.back(), q);
    for (auto& v : a) v = mulmod64(v, inv, q);
  }
  return a;
}

inline bool divides_integer_poly(const std::vector<Integer>& d, const std::vector<Integer>& a) {
  return divides(from_integer_coefficients(d), from_integer_coefficients(a));
}

// Largest primes below 2^31 - 1, walked downward.
class PrimeStream {
 public:
  std::uint64_t next() {
    do {
      current_ -= 2;
    } while (!is_prime_u64(current_));
    return current_;
  }

 private:
  std::uint64_t current_ = (1ULL << 31) + 1;
};

}  // namespace detail

/// Monic gcd over Q; gcd(0, 0) = 0.
inline UniPoly<Rational> modular_gcd_monic(const UniPoly<Rational>& p, const UniPoly<Rational>& r) {
  using P = UniPoly<Rational>;
  if (p.is_zero()) return r.monic();
  if (r.is_zero()) return p.monic();
  if (p.degree() == 0 || r.degree() == 0) return P::constant(Rational(1));

  const std::vector<Integer> a = primitive_integer_coefficients(p);
  const std::vector<Integer> b = primitive_integer_coefficients(r);
  Integer g;
  mpz_gcd(g.get_mpz_t(), a.back().get_mpz_t(), b.back().get_mpz_t());

  detail::PrimeStream primes;
  std::size_t best_deg = static_cast<std::size_t>(std::min(p.degree(), r.degree())) + 1;
  std::vector<Integer> acc;
  Integer modulus = 0;
  std::vector<Integer> last_lift;

  for (;;) {
    const std::uint64_t q = primes.next();
    if (mpz_fdiv_ui(a.back().get_mpz_t(), q) == 0 || mpz_fdiv_ui(b.back().get_mpz_t(), q) == 0) continue;
    detail::ModVec img = detail::gcd_mod(detail::reduce_mod(a, q), detail::reduce_mod(b, q), q);
    const std::size_t e = img.size() - 1;
    if (e == 0) return P::constant(Rational(1));
    if (e > best_deg) continue;  // unlucky prime
    const std::uint64_t gq = mpz_fdiv_ui(g.get_mpz_t(), q);
    for (auto& v : img) v = detail::mulmod64(v, gq, q);
    const Integer qz(static_cast<unsigned long>(q));
    if (e < best_deg) {
      best_deg = e;
      acc.assign(img.size(), Integer(0));
      for (std::size_t i = 0; i < img.size(); ++i) acc[i] = Integer(static_cast<unsigned long>(img[i]));
      modulus = qz;
      last_lift.clear();
    } else {
      // CRT: x = acc + modulus * ((img - acc) * modulus^{-1} mod q)
      const std::uint64_t minv = detail::invmod64(mpz_fdiv_ui(modulus.get_mpz_t(), q), q);
      for (std::size_t i = 0; i < acc.size(); ++i) {
        const std::uint64_t ai = mpz_fdiv_ui(acc[i].get_mpz_t(), q);
        const std::uint64_t diff = img[i] >= ai ? img[i] - ai : img[i] + q - ai;
        acc[i] += modulus * static_cast<unsigned long>(detail::mulmod64(diff, minv, q));
      }
      modulus *= qz;
    }
    // Symmetric lift.
    std::vector<Integer> lift(acc.size());
    const Integer half = modulus / 2;
    for (std::size_t i = 0; i < acc.size(); ++i) lift[i] = acc[i] > half ? Integer(acc[i] - modulus) : acc[i];
    if (lift != last_lift) {
      last_lift = lift;
      continue;
    }
    const std::vector<Integer> cand = primitive_integer_coefficients(from_integer_coefficients(lift));
    if (detail::divides_integer_poly(cand, a) && detail::divides_integer_poly(cand, b))
      return from_integer_coefficients(cand).monic();
  }
}

inline UniPoly<Rational> gcd_monic(const UniPoly<Rational>& p, const UniPoly<Rational>& r) {
  return modular_gcd_monic(p, r);
}

}  // namespace critlab
