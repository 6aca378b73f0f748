#pragma once

// The monic family F_{a,b} parametrized by critical points a_1..a_{d-1} and
// the image b of their barycenter, the companion family calF_a fixing 0, the
// critical-value discrepancy Phi, and the mod-p identities they satisfy when
// the degree is a power of p.

#include "critlab/mpoly.hpp"
#include "critlab/numeric.hpp"
#include "critlab/poly.hpp"

#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

namespace critlab::family {

using QPoly = UniPoly<Rational>;

/// Variables a1..a_{d-1}, b, z (one shared table per degree).
inline VarTable family_vars(int d) {
  if (d < 2) throw std::invalid_argument("degree must be >= 2");
  static std::mutex mu;
  static std::map<int, VarTable> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto& slot = cache[d];
  if (!slot) {
    std::vector<std::string> names;
    for (int i = 1; i < d; ++i) names.push_back("a" + std::to_string(i));
    names.push_back("b");
    names.push_back("z");
    slot = make_vars(std::move(names));
  }
  return slot;
}

inline std::size_t var_a(int /*d*/, int i) { return static_cast<std::size_t>(i); }  // 0-based critical point
inline std::size_t var_b(int d) { return static_cast<std::size_t>(d - 1); }
inline std::size_t var_z(int d) { return static_cast<std::size_t>(d); }

struct Params {
  std::vector<Rational> a;  // d-1 critical points
  Rational b;
};

class FamilySpec {
 public:
  static FamilySpec symbolic(int d) {
    if (d < 2) throw std::invalid_argument("degree must be >= 2");
    return FamilySpec(d, std::nullopt);
  }

  static FamilySpec numeric(std::vector<Rational> a, Rational b) {
    if (a.empty()) throw std::invalid_argument("need at least one critical point (degree >= 2)");
    const int d = static_cast<int>(a.size()) + 1;
    return FamilySpec(d, Params{std::move(a), std::move(b)});
  }

  int degree() const { return d_; }
  bool is_numeric() const { return params_.has_value(); }
  const Params& params() const {
    if (!params_) throw std::logic_error("symbolic family has no numeric parameters");
    return *params_;
  }
  const std::vector<Rational>& a() const { return params().a; }
  const Rational& b() const { return params().b; }

 private:
  FamilySpec(int d, std::optional<Params> params) : d_(d), params_(std::move(params)) {}
  int d_;
  std::optional<Params> params_;
};

inline Rational barycenter(const std::vector<Rational>& a) {
  Rational s = 0;
  for (const auto& x : a) s += x;
  return s / Rational(static_cast<long>(a.size()));
}

inline MultiPoly symbolic_barycenter(int d) {
  VarTable vars = family_vars(d);
  MultiPoly s(vars);
  for (int i = 0; i < d - 1; ++i) s += MultiPoly::variable(vars, var_a(d, i));
  return s.scaled(Rational(1, d - 1));
}

namespace detail {

inline std::vector<std::size_t> critical_vars(int d) {
  std::vector<std::size_t> out;
  for (int i = 0; i < d - 1; ++i) out.push_back(var_a(d, i));
  return out;
}

// coefficient of w^k in calF: (-1)^(d-k) (d/k) sigma_{d-k}, for 1 <= k <= d-1
inline std::vector<MultiPoly> inner_coefficients(int d) {
  VarTable vars = family_vars(d);
  std::vector<MultiPoly> c(static_cast<std::size_t>(d), MultiPoly(vars));
  for (int k = 1; k <= d - 1; ++k) {
    Rational coef(d, k);
    coef.canonicalize();
    if ((d - k) % 2) coef = -coef;
    c[static_cast<std::size_t>(k)] =
        elementary_symmetric(vars, static_cast<std::size_t>(d - k), critical_vars(d)).scaled(coef);
  }
  return c;
}

}  // namespace detail

/// calF_a(w) = w^d + sum_k (-1)^(d-k) (d/k) sigma_{d-k} w^k for a polynomial w,
/// evaluated by Horner (no constant term).
inline MultiPoly apply_calF(int d, const MultiPoly& w) {
  static std::mutex mu;
  static std::map<int, std::vector<MultiPoly>> cache;
  std::vector<MultiPoly> coeffs = [&] {
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(d);
    if (it == cache.end()) it = cache.emplace(d, detail::inner_coefficients(d)).first;
    return it->second;
  }();
  MultiPoly acc = MultiPoly::constant(w.vars(), Rational(1));
  for (int k = d - 1; k >= 1; --k) acc = acc * w + coeffs[static_cast<std::size_t>(k)];
  return acc * w;
}

/// Symbolic calF_a(z) in the family variables.
inline MultiPoly build_calF_symbolic(int d) {
  return apply_calF(d, MultiPoly::variable(family_vars(d), var_z(d)));
}

/// Symbolic F_{a,b}(z) = calF_a(z) + b - calF_a(abar).
inline MultiPoly build_F_symbolic(int d) {
  static std::mutex mu;
  static std::map<int, MultiPoly> cache;
  {
    std::lock_guard<std::mutex> lock(mu);
    if (auto it = cache.find(d); it != cache.end()) return it->second;
  }
  VarTable vars = family_vars(d);
  MultiPoly f = build_calF_symbolic(d) + MultiPoly::variable(vars, var_b(d)) - apply_calF(d, symbolic_barycenter(d));
  std::lock_guard<std::mutex> lock(mu);
  cache.emplace(d, f);
  return f;
}

/// Phi(a) = (1/(d-1)) sum_i calF_a(a_i) - calF_a(abar): the critical-value
/// barycenter minus b. Homogeneous of degree d and translation invariant.
inline MultiPoly build_Phi(int d) {
  static std::mutex mu;
  static std::map<int, MultiPoly> cache;
  {
    std::lock_guard<std::mutex> lock(mu);
    if (auto it = cache.find(d); it != cache.end()) return it->second;
  }
  VarTable vars = family_vars(d);
  MultiPoly sum(vars);
  for (int i = 0; i < d - 1; ++i) sum += apply_calF(d, MultiPoly::variable(vars, var_a(d, i)));
  MultiPoly phi = sum.scaled(Rational(1, d - 1)) - apply_calF(d, symbolic_barycenter(d));
  std::lock_guard<std::mutex> lock(mu);
  cache.emplace(d, phi);
  return phi;
}

namespace detail {

inline std::vector<std::pair<std::size_t, Rational>> assignment(const FamilySpec& spec, bool with_b) {
  const int d = spec.degree();
  std::vector<std::pair<std::size_t, Rational>> fix;
  for (int i = 0; i < d - 1; ++i) fix.emplace_back(var_a(d, i), spec.a()[static_cast<std::size_t>(i)]);
  if (with_b) fix.emplace_back(var_b(d), spec.b());
  return fix;
}

}  // namespace detail

/// F_{a,b} as a polynomial in z. Built from the symbolic family so the two
/// modes cannot drift apart.
inline QPoly build_F(const FamilySpec& spec) {
  const int d = spec.degree();
  return build_F_symbolic(d).evaluate_partial(detail::assignment(spec, true)).as_univariate(var_z(d));
}

inline QPoly build_calF(const std::vector<Rational>& a) {
  FamilySpec spec = FamilySpec::numeric(a, Rational(0));
  const int d = spec.degree();
  return build_calF_symbolic(d).evaluate_partial(detail::assignment(spec, false)).as_univariate(var_z(d));
}

inline Rational evaluate_Phi(const std::vector<Rational>& a) {
  const int d = static_cast<int>(a.size()) + 1;
  std::vector<Rational> point(family_vars(d)->size(), Rational(0));
  for (std::size_t i = 0; i < a.size(); ++i) point[i] = a[i];
  return build_Phi(d).evaluate(point);
}

/// c = (1/(d-1)) sum_i F(a_i). Checks c - b = Phi(a - abar) before returning.
inline Rational critical_value_barycenter(const FamilySpec& spec) {
  QPoly f = build_F(spec);
  Rational c = 0;
  for (const auto& ai : spec.a()) c += f.evaluate(ai);
  c /= Rational(spec.degree() - 1);
  const Rational abar = barycenter(spec.a());
  std::vector<Rational> centered;
  for (const auto& ai : spec.a()) centered.push_back(ai - abar);
  if (c - spec.b() != evaluate_Phi(centered))
    throw std::logic_error("critical-value barycenter disagrees with b + Phi(a*)");
  return c;
}

struct CoefficientWitness {
  std::string polynomial;  // "F" or "Phi"
  std::string monomial;
  Rational coefficient;
  ValOrInf valuation;
};

struct LemmaPPReport {
  int d = 0;
  std::uint64_t p = 0;
  bool applicable = false;  // p | d
  bool d_is_power_of_p = false;
  bool F_congruent = false;    // F - (z^d + b - abar^d) = 0 mod p
  bool Phi_congruent = false;  // Phi = 0 mod p
  GaussValuation F_gauss;
  GaussValuation Phi_gauss;
  std::size_t failing_terms = 0;
  std::vector<CoefficientWitness> witnesses;  // first failing terms, canonical order

  bool passed() const { return applicable && F_congruent && Phi_congruent; }
};

inline LemmaPPReport check_lemma_pp(int d, const Prime& p, std::size_t max_witnesses = 8) {
  LemmaPPReport r;
  r.d = d;
  r.p = p.value();
  r.applicable = static_cast<std::uint64_t>(d) % p.value() == 0;
  r.d_is_power_of_p = prime_power_exponent(static_cast<std::uint64_t>(d), p.value()).has_value();
  if (!r.applicable) return r;

  VarTable vars = family_vars(d);
  MultiPoly abar = symbolic_barycenter(d);
  MultiPoly target = MultiPoly::variable(vars, var_z(d)).pow(static_cast<unsigned long>(d)) +
                     MultiPoly::variable(vars, var_b(d)) - abar.pow(static_cast<unsigned long>(d));
  MultiPoly f_diff = build_F_symbolic(d) - target;
  MultiPoly phi = build_Phi(d);
  r.F_gauss = gauss_min_val(f_diff, p);
  r.Phi_gauss = gauss_min_val(phi, p);
  r.F_congruent = r.F_gauss.congruent_zero;
  r.Phi_congruent = r.Phi_gauss.congruent_zero;

  // One witness per z-power of F (highest first), then one for Phi.
  const std::size_t zi = var_z(d);
  std::map<unsigned long, CoefficientWitness, std::greater<>> by_power;
  std::optional<CoefficientWitness> phi_witness;
  for (auto it = f_diff.terms().rbegin(); it != f_diff.terms().rend(); ++it) {
    ValOrInf v = val_p(it->second, p);
    if (v >= ValOrInf(1)) continue;
    ++r.failing_terms;
    by_power.try_emplace(it->first[zi], CoefficientWitness{"F", f_diff.monomial_str(it->first), it->second, v});
  }
  for (auto it = phi.terms().rbegin(); it != phi.terms().rend(); ++it) {
    ValOrInf v = val_p(it->second, p);
    if (v >= ValOrInf(1)) continue;
    ++r.failing_terms;
    if (!phi_witness) phi_witness = CoefficientWitness{"Phi", phi.monomial_str(it->first), it->second, v};
  }
  for (auto& [power, w] : by_power)
    if (r.witnesses.size() < max_witnesses) r.witnesses.push_back(w);
  if (phi_witness && r.witnesses.size() < max_witnesses) r.witnesses.push_back(*phi_witness);
  return r;
}

struct LambdaImage {
  std::vector<Rational> a_star;
  Rational b_star;
};

/// a -> (a - abar, calF_a(abar) - abar): translation by abar conjugates calF_a
/// to F_{a*, b*}.
inline LambdaImage lambda_map(const std::vector<Rational>& a) {
  const Rational abar = barycenter(a);
  LambdaImage out;
  for (const auto& x : a) out.a_star.push_back(x - abar);
  out.b_star = build_calF(a).evaluate(abar) - abar;
  return out;
}

/// Residue of a p-integral rational in [0, p).
inline std::uint64_t residue_mod(const Rational& r, const Prime& p) {
  if (!is_p_integral(r, p)) throw std::domain_error("residue of a non-integral rational");
  const std::uint64_t pv = p.value();
  const std::uint64_t n = mpz_fdiv_ui(r.get_num_mpz_t(), pv);
  const std::uint64_t dn = mpz_fdiv_ui(r.get_den_mpz_t(), pv);
  return ::critlab::detail::mulmod64(n, ::critlab::detail::powmod64(dn, pv - 2, pv), pv);
}

/// Determinant of a square matrix over F_p.
inline std::uint64_t det_mod_p(std::vector<std::vector<std::uint64_t>> m, std::uint64_t p) {
  using ::critlab::detail::mulmod64;
  using ::critlab::detail::powmod64;
  const std::size_t n = m.size();
  std::uint64_t det = 1;
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t piv = k;
    while (piv < n && m[piv][k] == 0) ++piv;
    if (piv == n) return 0;
    if (piv != k) {
      std::swap(m[piv], m[k]);
      det = (p - det) % p;
    }
    det = mulmod64(det, m[k][k], p);
    const std::uint64_t inv = powmod64(m[k][k], p - 2, p);
    for (std::size_t i = k + 1; i < n; ++i) {
      const std::uint64_t f = mulmod64(m[i][k], inv, p);
      for (std::size_t j = k; j < n; ++j) m[i][j] = (m[i][j] + p - mulmod64(f, m[k][j], p)) % p;
    }
  }
  return det;
}

struct EntryDeviation {
  std::size_t row, col;
  std::string reduced;   // residue, or "non-constant" / "non-integral"
  std::int64_t expected;  // reference entry
};

struct LambdaJacobianReport {
  int d = 0;
  std::uint64_t p = 0;
  /// Exact Jacobian of a -> (a*_1..a*_{d-2}, b*), entries in Q[a].
  std::vector<std::vector<MultiPoly>> jacobian;
  bool entries_integral = false;         // every entry in Z_(p)[a]
  bool entries_constant_mod_p = false;   // non-constant part = 0 mod p
  std::vector<std::vector<std::uint64_t>> reduced;  // residues in [0, p)
  std::uint64_t determinant_mod_p = 0;
  bool nonsingular = false;
  /// Congruent to the constant matrix with 0 on the first d-2 diagonal
  /// entries and -1 elsewhere, whose determinant is -1.
  bool matches_reference = false;
  bool det_is_minus_one = false;
  std::vector<EntryDeviation> deviations;

  bool passed() const { return matches_reference && det_is_minus_one; }
};

inline LambdaJacobianReport lambda_jacobian_check(int d, const Prime& p) {
  if (!prime_power_exponent(static_cast<std::uint64_t>(d), p.value()))
    throw DomainError("Lambda Jacobian check requires the degree to be a power of p (" + std::to_string(d) +
                      " is not a power of " + std::to_string(p.value()) + ")");
  VarTable vars = family_vars(d);
  MultiPoly abar = symbolic_barycenter(d);
  std::vector<MultiPoly> components;
  for (int i = 0; i < d - 2; ++i) components.push_back(MultiPoly::variable(vars, var_a(d, i)) - abar);
  components.push_back(apply_calF(d, abar) - abar);

  LambdaJacobianReport r;
  r.d = d;
  r.p = p.value();
  const std::size_t n = static_cast<std::size_t>(d - 1);
  r.entries_integral = true;
  r.entries_constant_mod_p = true;
  r.reduced.assign(n, std::vector<std::uint64_t>(n, 0));
  for (std::size_t row = 0; row < n; ++row) {
    std::vector<MultiPoly> jr;
    for (std::size_t col = 0; col < n; ++col) {
      MultiPoly entry = components[row].partial_derivative(var_a(d, static_cast<int>(col)));
      const Exponents zero(entry.arity(), 0);
      const Rational c0 = entry.coefficient(zero);
      MultiPoly rest = entry - MultiPoly::constant(vars, c0);
      const GaussValuation g = gauss_min_val(rest, p);
      const std::int64_t expected = (row + 2 < static_cast<std::size_t>(d) && row == col) ? 0 : -1;
      const std::uint64_t expected_res = (p.value() + static_cast<std::uint64_t>(expected + static_cast<std::int64_t>(p.value()))) % p.value();
      std::string reduced;
      if (!is_p_integral(c0, p) || !g.p_integral) {
        r.entries_integral = false;
        reduced = "non-integral";
      } else if (!g.congruent_zero) {
        r.entries_constant_mod_p = false;
        reduced = "non-constant";
      } else {
        r.reduced[row][col] = residue_mod(c0, p);
        reduced = std::to_string(r.reduced[row][col]);
      }
      const bool ok = reduced != "non-integral" && reduced != "non-constant" && r.reduced[row][col] == expected_res;
      if (!ok) r.deviations.push_back({row, col, reduced, expected});
      jr.push_back(std::move(entry));
    }
    r.jacobian.push_back(std::move(jr));
  }
  if (r.entries_integral && r.entries_constant_mod_p) {
    r.determinant_mod_p = det_mod_p(r.reduced, p.value());
    r.nonsingular = r.determinant_mod_p != 0;
    r.det_is_minus_one = r.determinant_mod_p == (p.value() - 1) % p.value();
  }
  r.matches_reference = r.deviations.empty();
  return r;
}

/// min over 1 <= k <= d-1 of v_p(d/k)/(d-k), exact.
inline Rational epsilon(int d, const Prime& p) {
  if (d < 2) throw std::invalid_argument("degree must be >= 2");
  std::optional<Rational> best;
  for (int k = 1; k <= d - 1; ++k) {
    Rational dk(d, k);
    dk.canonicalize();
    Rational v = val_p(dk, p).value() / Rational(d - k);
    if (!best || v < *best) best = v;
  }
  return *best;
}

}  // namespace critlab::family
