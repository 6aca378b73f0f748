#pragma once

// Sparse multivariate polynomials over Q.

#include "critlab/numeric.hpp"
#include "critlab/poly.hpp"

#include <algorithm>
#include <cstdint>
#include <map>
#include <memory>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace critlab {

using Exponents = std::vector<std::uint32_t>;

/// Graded lexicographic: total degree first, then lexicographic with the
/// first variable most significant.
struct GradedLexLess {
  bool operator()(const Exponents& x, const Exponents& y) const {
    const auto dx = std::accumulate(x.begin(), x.end(), std::uint64_t{0});
    const auto dy = std::accumulate(y.begin(), y.end(), std::uint64_t{0});
    if (dx != dy) return dx < dy;
    return x < y;
  }
};

using VarTable = std::shared_ptr<const std::vector<std::string>>;

inline VarTable make_vars(std::vector<std::string> names) {
  return std::make_shared<const std::vector<std::string>>(std::move(names));
}

class MultiPoly {
 public:
  using TermMap = std::map<Exponents, Rational, GradedLexLess>;

  explicit MultiPoly(VarTable vars) : vars_(std::move(vars)) {
    if (!vars_) throw std::invalid_argument("MultiPoly needs a variable table");
  }

  static MultiPoly constant(VarTable vars, const Rational& c) {
    MultiPoly p(std::move(vars));
    if (!critlab::is_zero(c)) p.terms_.emplace(Exponents(p.arity(), 0), c);
    return p;
  }

  static MultiPoly variable(VarTable vars, std::size_t index) {
    MultiPoly p(std::move(vars));
    if (index >= p.arity()) throw std::out_of_range("variable index out of range");
    Exponents e(p.arity(), 0);
    e[index] = 1;
    p.terms_.emplace(std::move(e), Rational(1));
    return p;
  }

  static MultiPoly variable(VarTable vars, const std::string& name) {
    std::size_t idx = index_of(*vars, name);
    return variable(std::move(vars), idx);
  }

  static std::size_t index_of(const std::vector<std::string>& vars, const std::string& name) {
    auto it = std::find(vars.begin(), vars.end(), name);
    if (it == vars.end()) throw std::invalid_argument("unknown variable " + name);
    return static_cast<std::size_t>(it - vars.begin());
  }

  const VarTable& vars() const { return vars_; }
  std::size_t arity() const { return vars_->size(); }
  const TermMap& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }

  long total_degree() const {
    if (terms_.empty()) return -1;
    const auto& e = terms_.rbegin()->first;
    return static_cast<long>(std::accumulate(e.begin(), e.end(), std::uint64_t{0}));
  }

  /// Largest exponent of one variable.
  long degree_in(std::size_t var) const {
    long d = -1;
    for (const auto& [e, c] : terms_) d = std::max<long>(d, e[var]);
    return d;
  }

  Rational coefficient(const Exponents& e) const {
    auto it = terms_.find(e);
    return it == terms_.end() ? Rational(0) : it->second;
  }

  MultiPoly operator-() const {
    MultiPoly out = *this;
    for (auto& [e, c] : out.terms_) c = -c;
    return out;
  }

  MultiPoly& operator+=(const MultiPoly& o) {
    check_compatible(o);
    for (const auto& [e, c] : o.terms_) add_term(terms_, e, c);
    return *this;
  }

  MultiPoly& operator-=(const MultiPoly& o) {
    check_compatible(o);
    for (const auto& [e, c] : o.terms_) add_term(terms_, e, Rational(-c));
    return *this;
  }

  friend MultiPoly operator+(MultiPoly a, const MultiPoly& b) { return a += b; }
  friend MultiPoly operator-(MultiPoly a, const MultiPoly& b) { return a -= b; }

  friend MultiPoly operator*(const MultiPoly& a, const MultiPoly& b) {
    a.check_compatible(b);
    MultiPoly out(a.vars_);
    if (a.is_zero() || b.is_zero()) return out;
    const std::size_t n = a.arity();
    Exponents key(n);
    Rational prod;
    for (const auto& [ea, ca] : a.terms_) {
      for (const auto& [eb, cb] : b.terms_) {
        for (std::size_t i = 0; i < n; ++i) key[i] = ea[i] + eb[i];
        mpq_mul(prod.get_mpq_t(), ca.get_mpq_t(), cb.get_mpq_t());
        auto [it, inserted] = out.terms_.try_emplace(key, 0);
        it->second += prod;
      }
    }
    out.drop_zeros();
    return out;
  }

  MultiPoly& operator*=(const MultiPoly& o) { return *this = *this * o; }

  MultiPoly scaled(const Rational& s) const {
    if (critlab::is_zero(s)) return MultiPoly(vars_);
    MultiPoly out = *this;
    for (auto& [e, c] : out.terms_) c *= s;
    return out;
  }

  friend bool operator==(const MultiPoly& a, const MultiPoly& b) {
    return *a.vars_ == *b.vars_ && a.terms_ == b.terms_;
  }

  MultiPoly pow(unsigned long e) const {
    MultiPoly result = constant(vars_, Rational(1));
    MultiPoly b = *this;
    while (e) {
      if (e & 1) result *= b;
      e >>= 1;
      if (e) b *= b;
    }
    return result;
  }

  MultiPoly partial_derivative(std::size_t var) const {
    MultiPoly out(vars_);
    for (const auto& [e, c] : terms_) {
      if (e[var] == 0) continue;
      Exponents f = e;
      f[var] -= 1;
      out.terms_.emplace(std::move(f), Rational(c * e[var]));
    }
    return out;
  }

  /// Replaces variable `var` by `image` (same variable table).
  MultiPoly substitute(std::size_t var, const MultiPoly& image) const {
    check_compatible(image);
    std::vector<MultiPoly> images;
    images.reserve(arity());
    for (std::size_t i = 0; i < arity(); ++i) images.push_back(i == var ? image : variable(vars_, i));
    return substitute_all(vars_, images);
  }

  /// Maps each variable i to images[i], a polynomial over `target` variables.
  MultiPoly substitute_all(const VarTable& target, const std::vector<MultiPoly>& images) const {
    if (images.size() != arity()) throw std::invalid_argument("substitute_all: one image per variable required");
    for (const auto& im : images)
      if (*im.vars_ != *target) throw std::invalid_argument("substitute_all: image over the wrong variables");
    std::vector<std::vector<MultiPoly>> powers(arity());
    auto power = [&](std::size_t i, std::uint32_t k) -> const MultiPoly& {
      auto& cache = powers[i];
      if (cache.empty()) cache.push_back(constant(target, Rational(1)));
      while (cache.size() <= k) cache.push_back(cache.back() * images[i]);
      return cache[k];
    };
    MultiPoly out(target);
    for (const auto& [e, c] : terms_) {
      MultiPoly term = constant(target, c);
      for (std::size_t i = 0; i < arity(); ++i)
        if (e[i]) term *= power(i, e[i]);
      out += term;
    }
    return out;
  }

  Rational evaluate(const std::vector<Rational>& point) const {
    if (point.size() != arity()) throw std::invalid_argument("evaluate: point has wrong arity");
    Rational acc = 0;
    for (const auto& [e, c] : terms_) {
      Rational t = c;
      for (std::size_t i = 0; i < arity(); ++i) {
        if (e[i] == 0) continue;
        Rational pw;
        mpz_pow_ui(pw.get_num_mpz_t(), point[i].get_num_mpz_t(), e[i]);
        mpz_pow_ui(pw.get_den_mpz_t(), point[i].get_den_mpz_t(), e[i]);
        t *= pw;
      }
      acc += t;
    }
    return acc;
  }

  /// Substitutes rational values for the variables flagged in `fix`.
  MultiPoly evaluate_partial(const std::vector<std::pair<std::size_t, Rational>>& fix) const {
    MultiPoly out(vars_);
    for (const auto& [e, c] : terms_) {
      Exponents f = e;
      Rational t = c;
      for (const auto& [var, value] : fix) {
        if (f[var] == 0) continue;
        Rational pw;
        mpz_pow_ui(pw.get_num_mpz_t(), value.get_num_mpz_t(), f[var]);
        mpz_pow_ui(pw.get_den_mpz_t(), value.get_den_mpz_t(), f[var]);
        t *= pw;
        f[var] = 0;
      }
      add_term(out.terms_, f, t);
    }
    return out;
  }

  /// The polynomial as univariate in `var`; every other variable must be absent.
  UniPoly<Rational> as_univariate(std::size_t var) const {
    std::vector<Rational> c(static_cast<std::size_t>(std::max<long>(degree_in(var), -1) + 1), Rational(0));
    for (const auto& [e, coeff] : terms_) {
      for (std::size_t i = 0; i < arity(); ++i)
        if (i != var && e[i] != 0) throw std::invalid_argument("as_univariate: other variables present");
      c[e[var]] += coeff;
    }
    return UniPoly<Rational>(std::move(c));
  }

  /// The polynomial in `outer` with coefficients in Q[inner]; no other variable may appear.
  UniPoly<UniPoly<Rational>> as_bivariate(std::size_t outer, std::size_t inner) const {
    const long dout = std::max<long>(degree_in(outer), -1);
    std::vector<std::vector<Rational>> rows(static_cast<std::size_t>(dout + 1));
    for (const auto& [e, coeff] : terms_) {
      for (std::size_t i = 0; i < arity(); ++i)
        if (i != outer && i != inner && e[i] != 0) throw std::invalid_argument("as_bivariate: other variables present");
      auto& row = rows[e[outer]];
      if (row.size() <= e[inner]) row.resize(e[inner] + 1, Rational(0));
      row[e[inner]] += coeff;
    }
    std::vector<UniPoly<Rational>> c;
    c.reserve(rows.size());
    for (auto& r : rows) c.emplace_back(std::move(r));
    return UniPoly<UniPoly<Rational>>(std::move(c));
  }

  /// Canonical rendering: terms in descending graded-lex order, every
  /// exponent explicit, coefficients as num/den.
  std::string str() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
      if (!first) os << " + ";
      first = false;
      os << to_string(it->second);
      for (std::size_t i = 0; i < arity(); ++i)
        if (it->first[i]) os << "*" << (*vars_)[i] << "^" << it->first[i];
    }
    return os.str();
  }

  std::string monomial_str(const Exponents& e) const {
    std::ostringstream os;
    bool first = true;
    for (std::size_t i = 0; i < arity(); ++i) {
      if (!e[i]) continue;
      if (!first) os << "*";
      first = false;
      os << (*vars_)[i] << "^" << e[i];
    }
    return first ? std::string("1") : os.str();
  }

 private:
  static void add_term(TermMap& m, const Exponents& e, const Rational& c) {
    if (critlab::is_zero(c)) return;
    auto [it, inserted] = m.try_emplace(e, c);
    if (!inserted) {
      it->second += c;
      if (critlab::is_zero(it->second)) m.erase(it);
    }
  }

  void drop_zeros() {
    for (auto it = terms_.begin(); it != terms_.end();) {
      if (critlab::is_zero(it->second)) it = terms_.erase(it);
      else ++it;
    }
  }

  void check_compatible(const MultiPoly& o) const {
    if (vars_ != o.vars_ && *vars_ != *o.vars_) throw std::invalid_argument("MultiPoly: incompatible variable tables");
  }

  VarTable vars_;
  TermMap terms_;
};

inline bool is_zero(const MultiPoly& p) { return p.is_zero(); }
inline std::string to_string(const MultiPoly& p) { return p.str(); }

/// sigma_k over the listed variables; sigma_0 = 1.
inline MultiPoly elementary_symmetric(const VarTable& vars, std::size_t k, const std::vector<std::size_t>& over) {
  if (k > over.size()) throw std::invalid_argument("elementary_symmetric: k exceeds the number of variables");
  // Coefficients of prod (1 + x_i T): sigma_k is the T^k coefficient.
  std::vector<MultiPoly> e(k + 1, MultiPoly(vars));
  e[0] = MultiPoly::constant(vars, Rational(1));
  for (std::size_t idx : over) {
    MultiPoly x = MultiPoly::variable(vars, idx);
    for (std::size_t j = k; j >= 1; --j) e[j] += e[j - 1] * x;
  }
  return e[k];
}

struct GaussValuation {
  ValOrInf min = ValOrInf::infinity();
  /// No coefficient has negative valuation (P lies in Z_(p)[vars]).
  bool p_integral = true;
  /// P = 0 (mod p) in Z_(p)[vars]: min >= 1.
  bool congruent_zero = true;
};

inline GaussValuation gauss_min_val(const MultiPoly& p, const Prime& prime) {
  GaussValuation g;
  for (const auto& [e, c] : p.terms()) g.min = min(g.min, val_p(c, prime));
  g.p_integral = g.min >= ValOrInf(0);
  g.congruent_zero = g.min >= ValOrInf(1);
  return g;
}

}  // namespace critlab
