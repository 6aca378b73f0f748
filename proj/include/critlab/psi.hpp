#pragma once

// Chains of psi_n = s_n o g_n with s_n(z) = z^n and g_n(z) = ((n+1)z - z^(n+1))/n.
// Each psi_n fixes 0 and 1 and sends every critical point there, so chains are
// postcritically finite; rescaling to monic form only needs valuations of the
// homothety lambda with lambda^(D-1) = L.

#include "critlab/newton.hpp"
#include "critlab/numeric.hpp"
#include "critlab/poly.hpp"

#include <map>

namespace critlab::psi {

using QPoly = UniPoly<Rational>;

inline QPoly g_poly(int n) {
  QPoly g = QPoly::monomial(Rational(n + 1), 1) - QPoly::monomial(Rational(1), static_cast<std::size_t>(n + 1));
  return g.scaled(Rational(1, n));
}

inline QPoly psi_poly(int n) {
  if (n < 2) throw std::invalid_argument("psi index must be >= 2");
  return pow(g_poly(n), static_cast<unsigned long>(n));
}

struct PsiChain {
  std::vector<int> indices;  // psi_{indices[0]} is applied first
  QPoly composed;
  long degree = 0;
  Rational leading;
  Integer N;  // L = +-1/N
};

inline constexpr long kDefaultDegreeCap = 256;

inline PsiChain build_chain(const std::vector<int>& indices, long degree_cap = kDefaultDegreeCap) {
  if (indices.empty()) throw std::invalid_argument("empty psi chain");
  long D = 1;
  for (int n : indices) {
    if (n < 2) throw std::invalid_argument("psi index must be >= 2");
    D *= static_cast<long>(n) * (n + 1);
    if (D > degree_cap) throw ResourceError("psi chain degree exceeds the cap of " + std::to_string(degree_cap));
  }
  PsiChain c;
  c.indices = indices;
  c.composed = QPoly::x();
  for (int n : indices) c.composed = psi_poly(n).compose(c.composed);
  c.degree = c.composed.degree();
  c.leading = c.composed.leading();
  if (abs(c.leading.get_num()) != 1) throw std::logic_error("leading coefficient is not a unit fraction");
  c.N = c.leading.get_den();
  return c;
}

/// Every critical point maps to {0, 1}, and 0 and 1 are fixed.
inline bool certify_pcf(const QPoly& f) {
  if (f.degree() < 2) return false;
  if (f.evaluate(Rational(0)) != 0 || f.evaluate(Rational(1)) != 1) return false;
  const QPoly crit = squarefree_part(f.derivative());
  return divides(crit, f * (f - QPoly::constant(Rational(1))));
}

inline bool certify_pcf(const PsiChain& c) { return certify_pcf(c.composed); }

/// Psi(1) = 1 and Psi'(1) = 0.
inline bool fixed_critical_one(const PsiChain& c) {
  return c.composed.evaluate(Rational(1)) == 1 && is_zero(c.composed.derivative().evaluate(Rational(1)));
}

struct PrimeReport {
  ValOrInf nu_L = ValOrInf(0);
  Rational nu_lambda;
  std::map<long, ValOrInf> coefficient_valuations;  // k -> v(coefficient of z^k in lambda*Psi(z/lambda))
  bool monic = false;                                // v(z^D coefficient) = 0
  ValOrInf min_critical_valuation = ValOrInf::infinity();
  ValOrInf critical_one_valuation = ValOrInf::infinity();  // v(lambda * 1)
  bool integral = false;                                    // every critical point has v >= 0
};

struct PsiReport {
  std::vector<int> indices;
  long degree = 0;
  Rational leading;
  bool pcf_certified = false;
  bool centered_certified = false;  // z^(D-1) coefficient of Psi is 0
  bool fixed_critical_one = false;
  std::map<std::uint64_t, PrimeReport> primes;
};

inline PsiReport rescale_report(const PsiChain& c, const std::vector<std::uint64_t>& primes) {
  PsiReport r;
  r.indices = c.indices;
  r.degree = c.degree;
  r.leading = c.leading;
  r.pcf_certified = certify_pcf(c);
  r.centered_certified = is_zero(c.composed.coeff(static_cast<std::size_t>(c.degree - 1)));
  r.fixed_critical_one = fixed_critical_one(c);
  const QPoly deriv = c.composed.derivative();
  for (std::uint64_t pv : primes) {
    const Prime p(pv);
    PrimeReport pr;
    pr.nu_L = val_p(c.leading, p);
    pr.nu_lambda = pr.nu_L.value() / Rational(c.degree - 1);
    const auto& co = c.composed.coefficients();
    for (std::size_t k = 0; k < co.size(); ++k) {
      if (is_zero(co[k])) continue;
      pr.coefficient_valuations.insert_or_assign(
          static_cast<long>(k), val_p(co[k], p) + ValOrInf(Rational(1 - static_cast<long>(k)) * pr.nu_lambda));
    }
    pr.monic = pr.coefficient_valuations.at(c.degree) == ValOrInf(0);
    // critical points of the rescaled map are lambda times those of Psi
    const NewtonPolygon np = newton_polygon(deriv, p);
    pr.min_critical_valuation = np.min_root_valuation();
    if (!pr.min_critical_valuation.is_infinite()) pr.min_critical_valuation = pr.min_critical_valuation + ValOrInf(pr.nu_lambda);
    if (r.fixed_critical_one) pr.critical_one_valuation = ValOrInf(pr.nu_lambda);
    pr.integral = pr.min_critical_valuation >= ValOrInf(0);
    r.primes.emplace(pv, std::move(pr));
  }
  return r;
}

}  // namespace critlab::psi
