#pragma once

#include "critlab/poly.hpp"

#include <stdexcept>
#include <utility>
#include <vector>

namespace critlab {

/// Sylvester matrix of p (deg m) and q (deg n): n shifted rows of p's
/// coefficients (highest degree first) followed by m shifted rows of q's.
template <class R>
std::vector<std::vector<R>> sylvester_matrix(const UniPoly<R>& p, const UniPoly<R>& q) {
  const std::size_t m = static_cast<std::size_t>(p.degree());
  const std::size_t n = static_cast<std::size_t>(q.degree());
  const std::size_t size = m + n;
  std::vector<std::vector<R>> rows(size, std::vector<R>(size, R(0)));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k <= m; ++k) rows[i][i + k] = p.coefficients()[m - k];
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t k = 0; k <= n; ++k) rows[n + i][i + k] = q.coefficients()[n - k];
  return rows;
}

/// Determinant by fraction-free (Bareiss) elimination over an integral domain.
template <class R>
R bareiss_determinant(std::vector<std::vector<R>> a) {
  const std::size_t n = a.size();
  if (n == 0) return R(1);
  bool negate = false;
  R prev(1);
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (is_zero(a[k][k])) {
      std::size_t piv = k + 1;
      while (piv < n && is_zero(a[piv][k])) ++piv;
      if (piv == n) return R(0);
      std::swap(a[k], a[piv]);
      negate = !negate;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j)
        a[i][j] = exact_quotient(R(a[i][j] * a[k][k] - a[i][k] * a[k][j]), prev);
      a[i][k] = R(0);
    }
    prev = a[k][k];
  }
  R det = a[n - 1][n - 1];
  return negate ? R(R(0) - det) : det;
}

/// Res(p, q) = det of the Sylvester matrix with p-rows first. Vanishes
/// exactly when p and q have a common root (or common factor).
template <class R>
R resultant(const UniPoly<R>& p, const UniPoly<R>& q) {
  if (p.is_zero() || q.is_zero()) throw std::invalid_argument("resultant of a zero polynomial");
  if (p.degree() == 0 && q.degree() == 0)
    throw std::invalid_argument("resultant of two constants is degenerate");
  return bareiss_determinant(sylvester_matrix(p, q));
}

/// (-1)^(n(n-1)/2) Res(p, p') / lc(p); nonzero iff p is squarefree.
template <class K>
K discriminant(const UniPoly<K>& p) {
  if (p.degree() < 1) throw std::invalid_argument("discriminant needs degree >= 1");
  if (p.degree() == 1) return K(1);
  const long n = p.degree();
  K r = exact_quotient(resultant(p, p.derivative()), p.leading());
  if ((n * (n - 1) / 2) % 2 == 1) r = K(0) - r;
  return r;
}

}  // namespace critlab
