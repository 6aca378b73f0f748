#pragma once

// Small-degree witnesses for the varieties V^{m,n} cut out by
// F^{m_i}(a_i) = F^{n_i}(a_i) in the centered family: elimination by
// resultants (d = 2, 3), explicit points over Q or quadratic fields, mod-p
// simplicity certificates, and p-integrality audits of eliminants.

#include "critlab/cyclotomic.hpp"
#include "critlab/family.hpp"
#include "critlab/newton.hpp"
#include "critlab/resultant.hpp"

#include <array>
#include <map>
#include <mutex>
#include <optional>

namespace critlab::variety {

using family::QPoly;

class DegenerateError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline void check_supported(int d) {
  if (d != 2 && d != 3) throw std::invalid_argument("explicit elimination supports d = 2 and d = 3 only");
}

/// Reduced coordinates after centering: (b) for d = 2, (a, b) for d = 3.
inline VarTable reduced_vars(int d) {
  check_supported(d);
  static const VarTable two = make_vars({"b"});
  static const VarTable three = make_vars({"a", "b"});
  return d == 2 ? two : three;
}

/// E_i = F^{m_i}(a_i) - F^{n_i}(a_i) with abar = 0 imposed (a1 = 0 for d = 2,
/// a2 = -a1 for d = 3).
inline std::vector<MultiPoly> defining_equations(int d, const std::vector<int>& m, const std::vector<int>& n) {
  check_supported(d);
  if (m.size() != static_cast<std::size_t>(d - 1) || n.size() != m.size())
    throw std::invalid_argument("need d-1 entries in m and n");
  for (std::size_t i = 0; i < m.size(); ++i)
    if (!(0 <= m[i] && m[i] < n[i])) throw std::invalid_argument("need 0 <= m_i < n_i");

  const VarTable red = reduced_vars(d);
  const MultiPoly b = MultiPoly::variable(red, "b");
  std::vector<MultiPoly> crit;
  if (d == 2) {
    crit.push_back(MultiPoly(red));
  } else {
    const MultiPoly a = MultiPoly::variable(red, "a");
    crit = {a, -a};
  }
  // images of (a_1.., b, z) with z filled per iterate
  std::vector<MultiPoly> images = crit;
  images.push_back(b);
  images.push_back(MultiPoly(red));
  const MultiPoly F = family::build_F_symbolic(d);

  std::vector<MultiPoly> eqs;
  for (std::size_t i = 0; i < crit.size(); ++i) {
    std::vector<MultiPoly> orbit{crit[i]};
    while (static_cast<int>(orbit.size()) <= n[i]) {
      images.back() = orbit.back();
      orbit.push_back(F.substitute_all(red, images));
    }
    eqs.push_back(orbit[static_cast<std::size_t>(m[i])] - orbit[static_cast<std::size_t>(n[i])]);
  }
  return eqs;
}

/// A point class over K = Q[t]/(minimal_poly): the deg(minimal_poly)
/// conjugate points with coordinates (a, b) in K (a omitted for d = 2).
struct ExplicitPoint {
  QPoly minimal_poly;  // of the coordinate the field is built from
  std::optional<AlgElem> a;
  AlgElem b;
  AlgElem jacobian_det;
  bool verified = false;  // every defining equation vanishes exactly
};

struct VarietyWitness {
  int d = 0;
  std::vector<int> m, n;
  std::optional<QPoly> eliminant_in_a;  // monic; roots = a-coordinates
  QPoly eliminant_in_b;                 // monic; roots = (b + shear*a)-coordinates
  long shear = 0;
  bool a_squarefree = false;
  bool b_squarefree = false;
  long point_count_bound = 0;  // Bezout bound (product of total degrees)
  std::vector<ExplicitPoint> points;
  bool all_points_explicit = false;  // the point classes account for every root
};

namespace detail {

inline std::vector<Integer> divisors_small(Integer n) {
  n = abs(n);
  if (n == 0) return {};
  std::vector<std::pair<Integer, unsigned>> fac;
  for (Integer p = 2; p * p <= n; ++p) {
    unsigned e = 0;
    while (n % p == 0) {
      n /= p;
      ++e;
    }
    if (e) fac.emplace_back(p, e);
  }
  if (n > 1) fac.emplace_back(n, 1);
  std::vector<Integer> divs{1};
  for (const auto& [p, e] : fac) {
    const std::size_t sz = divs.size();
    Integer pk = 1;
    for (unsigned k = 1; k <= e; ++k) {
      pk *= p;
      for (std::size_t i = 0; i < sz; ++i) divs.push_back(divs[i] * pk);
    }
  }
  return divs;
}

}  // namespace detail

/// Distinct rational roots, or nullopt when the coefficients are too large to
/// enumerate candidates.
inline std::optional<std::vector<Rational>> rational_roots(const QPoly& f, const Integer& limit = Integer("1000000000000")) {
  std::vector<Rational> roots;
  QPoly g = f;
  if (g.order_at_zero() > 0) {
    roots.push_back(Rational(0));
    g = exact_quotient(g, QPoly::monomial(Rational(1), static_cast<std::size_t>(g.order_at_zero())));
  }
  if (g.degree() < 1) return roots;
  const auto c = primitive_integer_coefficients(g);
  if (abs(c.front()) > limit || abs(c.back()) > limit) return std::nullopt;
  const auto us = detail::divisors_small(c.front()), vs = detail::divisors_small(c.back());
  for (const auto& u : us)
    for (const auto& v : vs) {
      if (gcd(u, v) != 1) continue;
      for (int s : {1, -1}) {
        Rational r(s * u, v);
        r.canonicalize();
        if (is_zero(g.evaluate(r))) roots.push_back(r);
      }
    }
  std::sort(roots.begin(), roots.end());
  return roots;
}

/// Irreducible factors of degree <= 2 of a squarefree f, plus the monic
/// cofactor left over (constant 1 when f splits completely into them).
struct SmallFactors {
  std::vector<QPoly> factors;
  QPoly rest;
};

inline SmallFactors small_factors(const QPoly& f) {
  SmallFactors out{{}, f.monic()};
  auto roots = rational_roots(f);
  if (!roots) return out;
  for (const auto& r : *roots) {
    QPoly lin{-r, Rational(1)};
    out.factors.push_back(lin);
    out.rest = exact_quotient(out.rest, lin);
  }
  if (out.rest.degree() == 2) {
    out.factors.push_back(out.rest);
    out.rest = QPoly::constant(Rational(1));
  }
  return out;
}

namespace detail {

// p(x) with coefficients c_k(y) -> polynomial in x over K via y -> theta.
inline UniPoly<AlgElem> specialize(const UniPoly<QPoly>& p, const FieldPtr& K) {
  std::vector<AlgElem> c;
  for (const auto& ck : p.coefficients()) c.emplace_back(K, ck);
  return UniPoly<AlgElem>(std::move(c));
}

inline AlgElem eval_in_field(const MultiPoly& e, const std::vector<AlgElem>& point) {
  AlgElem acc(0);
  for (const auto& [ex, c] : e.terms()) {
    AlgElem t(c);
    for (std::size_t i = 0; i < ex.size(); ++i)
      if (ex[i]) t = t * point[i].pow(ex[i]);
    acc = acc + t;
  }
  return acc;
}

inline std::vector<std::vector<MultiPoly>> jacobian(const std::vector<MultiPoly>& eqs) {
  std::vector<std::vector<MultiPoly>> j;
  for (const auto& e : eqs) {
    std::vector<MultiPoly> row;
    for (std::size_t v = 0; v < e.arity(); ++v) row.push_back(e.partial_derivative(v));
    j.push_back(std::move(row));
  }
  return j;
}

inline MultiPoly det2(const std::vector<std::vector<MultiPoly>>& j) {
  if (j.size() == 1) return j[0][0];
  return j[0][0] * j[1][1] - j[0][1] * j[1][0];
}

}  // namespace detail

inline VarietyWitness eliminate(int d, const std::vector<int>& m, const std::vector<int>& n) {
  const std::vector<MultiPoly> eqs = defining_equations(d, m, n);
  VarietyWitness w;
  w.d = d;
  w.m = m;
  w.n = n;
  const MultiPoly jac_det = detail::det2(detail::jacobian(eqs));

  if (d == 2) {
    QPoly e = eqs[0].as_univariate(0);
    if (e.is_zero()) throw DegenerateError("defining equation vanishes identically");
    w.eliminant_in_b = e.monic();
    w.b_squarefree = is_squarefree(w.eliminant_in_b);
    w.point_count_bound = e.degree();
    SmallFactors sf = small_factors(squarefree_part(w.eliminant_in_b));
    w.all_points_explicit = sf.rest.degree() == 0;
    for (const auto& f : sf.factors) {
      FieldPtr K = number_field(f);
      AlgElem theta = AlgElem::generator(K);
      ExplicitPoint pt{f, std::nullopt, theta, detail::eval_in_field(jac_det, {theta}), false};
      pt.verified = is_zero(detail::eval_in_field(eqs[0], {theta}));
      w.points.push_back(std::move(pt));
    }
    return w;
  }

  // d = 3: variables (a, b).
  const std::size_t A = 0, B = 1;
  auto res_in = [&](const std::vector<MultiPoly>& e, std::size_t keep, std::size_t drop) {
    return resultant(e[0].as_bivariate(drop, keep), e[1].as_bivariate(drop, keep));
  };
  QPoly ra = res_in(eqs, A, B);
  if (ra.is_zero()) {
    // a common component; shearing b does not change Res_b up to a constant
    throw DegenerateError("resultant in a vanishes identically: the equations share a component");
  }
  w.eliminant_in_a = ra.monic();
  w.a_squarefree = is_squarefree(*w.eliminant_in_a);

  std::optional<QPoly> rb;
  for (long t : std::array<long, 6>{0, 1, 2, 3, 5, 7}) {
    std::vector<MultiPoly> sheared = eqs;
    if (t != 0) {
      const MultiPoly image = MultiPoly::variable(eqs[0].vars(), B) - MultiPoly::variable(eqs[0].vars(), A).scaled(Rational(t));
      for (auto& e : sheared) e = e.substitute(B, image);
    }
    QPoly r = res_in(sheared, B, A);
    if (r.is_zero()) continue;
    if (!rb) {
      rb = r.monic();
      w.shear = t;
    }
    // Prefer the first shear whose b-eliminant is squarefree.
    if (is_squarefree(r)) {
      rb = r.monic();
      w.shear = t;
      break;
    }
  }
  if (!rb) throw DegenerateError("resultant in b vanishes identically for every shear");
  w.eliminant_in_b = *rb;
  w.b_squarefree = is_squarefree(w.eliminant_in_b);
  w.point_count_bound = eqs[0].total_degree() * eqs[1].total_degree();

  // Points: one class per small factor of the a-eliminant, b from the gcd
  // of the equations over Q(a).
  SmallFactors sf = small_factors(squarefree_part(*w.eliminant_in_a));
  bool explicit_all = sf.rest.degree() == 0;
  for (const auto& f : sf.factors) {
    FieldPtr K = number_field(f);
    AlgElem theta = AlgElem::generator(K);
    UniPoly<AlgElem> g = gcd_monic(detail::specialize(eqs[0].as_bivariate(B, A), K),
                                   detail::specialize(eqs[1].as_bivariate(B, A), K));
    if (g.degree() != 1) {
      explicit_all = false;  // several points over one a-value, or none
      continue;
    }
    AlgElem bval = -g.coeff(0);
    ExplicitPoint pt{f, theta, bval, detail::eval_in_field(jac_det, {theta, bval}), false};
    pt.verified = is_zero(detail::eval_in_field(eqs[0], {theta, bval})) && is_zero(detail::eval_in_field(eqs[1], {theta, bval}));
    w.points.push_back(std::move(pt));
  }
  w.all_points_explicit = explicit_all;
  return w;
}

struct SimplicityReport {
  int d = 0;
  std::vector<int> n;
  std::uint64_t p = 0;
  /// Gauss valuation of each entry d F^{n_i}(a_i) / d a_j.
  std::vector<std::vector<ValOrInf>> entry_valuations;
  bool matrix_F_congruent_zero = false;
  bool lambda_det_ok = false;  // the Lambda Jacobian is nonsingular mod p

  bool passed() const { return matrix_F_congruent_zero && lambda_det_ok; }
};

namespace detail {

// calF^k(a_i) and its partials, memoized per (d, i, k).
inline const std::vector<MultiPoly>& iterate_partials(int d, int i, int k) {
  static std::mutex mu;
  static std::map<std::array<int, 3>, std::vector<MultiPoly>> partials;
  static std::map<std::array<int, 3>, MultiPoly> iterates;
  std::lock_guard<std::mutex> lock(mu);
  if (auto it = partials.find({d, i, k}); it != partials.end()) return it->second;
  const VarTable vars = family::family_vars(d);
  int start = 0;
  MultiPoly w = MultiPoly::variable(vars, family::var_a(d, i));
  for (int j = k; j >= 1; --j)
    if (auto it = iterates.find({d, i, j}); it != iterates.end()) {
      start = j;
      w = it->second;
      break;
    }
  for (int j = start + 1; j <= k; ++j) {
    w = family::apply_calF(d, w);
    iterates.emplace(std::array<int, 3>{d, i, j}, w);
  }
  std::vector<MultiPoly> row;
  for (int j = 0; j < d - 1; ++j) row.push_back(w.partial_derivative(family::var_a(d, j)));
  return partials.emplace(std::array<int, 3>{d, i, k}, std::move(row)).first->second;
}

}  // namespace detail

inline SimplicityReport check_simplicity_symbolic(int d, const std::vector<int>& n, const Prime& p) {
  if (!prime_power_exponent(static_cast<std::uint64_t>(d), p.value()))
    throw DomainError("simplicity certificate requires the degree to be a power of p (" + std::to_string(d) +
                      " is not a power of " + std::to_string(p.value()) + ")");
  if (n.size() != static_cast<std::size_t>(d - 1)) throw std::invalid_argument("need d-1 entries in n");
  for (int k : n)
    if (k < 1) throw std::invalid_argument("need n_i >= 1");
  SimplicityReport r;
  r.d = d;
  r.n = n;
  r.p = p.value();
  r.matrix_F_congruent_zero = true;
  for (int i = 0; i < d - 1; ++i) {
    std::vector<ValOrInf> row;
    for (const auto& entry : detail::iterate_partials(d, i, n[static_cast<std::size_t>(i)])) {
      GaussValuation g = gauss_min_val(entry, p);
      row.push_back(g.min);
      if (!g.congruent_zero) r.matrix_F_congruent_zero = false;
    }
    r.entry_valuations.push_back(std::move(row));
  }
  static std::mutex mu;
  static std::map<std::pair<int, std::uint64_t>, bool> lambda_ok;
  std::lock_guard<std::mutex> lock(mu);
  auto it = lambda_ok.find({d, p.value()});
  if (it == lambda_ok.end()) it = lambda_ok.emplace(std::make_pair(d, p.value()), family::lambda_jacobian_check(d, p).nonsingular).first;
  r.lambda_det_ok = it->second;
  return r;
}

struct AuditEntry {
  std::string label;
  QPoly poly;
  NewtonPolygon polygon;
  bool passed = false;
  std::optional<NewtonPolygon::Segment> offending;  // a segment with root valuation < 0
};

struct AuditReport {
  std::uint64_t p = 0;
  std::vector<AuditEntry> entries;
  bool passed() const {
    for (const auto& e : entries)
      if (!e.passed) return false;
    return true;
  }
};

/// Every root of each polynomial has v_p >= 0, read off the Newton polygon
/// (valid for any leading coefficient).
inline AuditReport integrality_audit(const std::vector<std::pair<std::string, QPoly>>& polys, const Prime& p) {
  AuditReport r;
  r.p = p.value();
  for (const auto& [label, f] : polys) {
    AuditEntry e{label, f, newton_polygon(f, p), true, std::nullopt};
    for (const auto& seg : e.polygon.segments)
      if (-seg.slope < 0) {
        e.passed = false;
        e.offending = seg;
        break;
      }
    r.entries.push_back(std::move(e));
  }
  return r;
}

inline AuditReport integrality_audit(const VarietyWitness& w, const Prime& p) {
  std::vector<std::pair<std::string, QPoly>> polys;
  if (w.eliminant_in_a) polys.emplace_back("a", *w.eliminant_in_a);
  polys.emplace_back(w.shear ? "b+" + std::to_string(w.shear) + "a" : "b", w.eliminant_in_b);
  return integrality_audit(polys, p);
}

}  // namespace critlab::variety
