#pragma once

// p-adic orbit analysis for F_{a,b}: the escape floor, iteration with
// three-valued verdicts, the integrality criterion for postcritical
// boundedness, and local canonical heights.
//
// Orbits are tracked in the centered coordinate w = z - abar. Values are kept
// exactly while they stay below a digit cap (this is what cycle detection
// needs) and always as capped-precision p-adic approximations, which is what
// the valuations need. Exact iterates of a degree-d map grow like d^n digits.

#include "critlab/family.hpp"
#include "critlab/padic.hpp"

#include <map>
#include <optional>
#include <variant>

namespace critlab::orbit {

using family::FamilySpec;
using family::QPoly;

struct OrbitFloor {
  ValOrInf alpha = ValOrInf::infinity();  // min v(a_i - abar)
  ValOrInf beta = ValOrInf::infinity();   // v(b - abar)
  Rational epsilon;
  ValOrInf floor = ValOrInf(0);  // min(alpha + epsilon, beta/d, 0)
};

inline OrbitFloor orbit_floor(const FamilySpec& spec, const Prime& p) {
  const int d = spec.degree();
  const Rational abar = family::barycenter(spec.a());
  OrbitFloor f;
  f.alpha = ValOrInf::infinity();
  for (const auto& ai : spec.a()) f.alpha = min(f.alpha, val_p(Rational(ai - abar), p));
  f.beta = val_p(Rational(spec.b() - abar), p);
  f.epsilon = family::epsilon(d, p);
  f.floor = min(min(f.alpha + ValOrInf(f.epsilon), f.beta.scaled(Rational(1, d))), ValOrInf(0));
  return f;
}

struct OrbitOptions {
  long padic_precision = 256;           // relative p-adic digits
  std::size_t exact_digit_cap = 10000;  // drop the exact track (and cycle detection) past this
};

enum class BoundReason { Integrality, Cycle };

inline const char* to_string(BoundReason r) { return r == BoundReason::Integrality ? "integrality" : "cycle"; }

/// valuations[n] = v(F^n(zeta) - abar) for n = 0 .. first_dip_step + 3.
struct Escaping {
  std::size_t first_dip_step = 0;
  std::vector<ValOrInf> valuations;
};

struct BoundedCertified {
  BoundReason reason = BoundReason::Cycle;
  std::size_t cycle_start = 0;  // for Cycle: F^start = F^(start+period)
  std::size_t period = 0;
  std::vector<ValOrInf> valuations;
};

/// Valuations of values known only modulo p^k are recorded as the bound k.
struct BoundedUpTo {
  std::size_t steps = 0;
  ValOrInf min_valuation_seen = ValOrInf::infinity();
  std::vector<ValOrInf> valuations;
};

using OrbitVerdict = std::variant<Escaping, BoundedCertified, BoundedUpTo>;

inline const std::vector<ValOrInf>& trace(const OrbitVerdict& v) {
  return std::visit([](const auto& x) -> const std::vector<ValOrInf>& { return x.valuations; }, v);
}

/// Number of confirming steps recorded after the first dip.
inline constexpr std::size_t kConfirmSteps = 3;

namespace detail {

class CenteredMap {
 public:
  CenteredMap(const FamilySpec& spec, const Prime& p, long prec) : p_(p), prec_(prec) {
    const Rational abar = family::barycenter(spec.a());
    g_ = family::build_F(spec).compose(QPoly{abar, Rational(1)}) - QPoly::constant(abar);
    for (const auto& c : g_.coefficients()) gp_.push_back(Padic::from_rational(c, p, prec));
  }

  Rational exact(const Rational& w) const { return g_.evaluate(w); }

  Padic approx(const Padic& w) const {
    Padic acc = gp_.back();
    for (std::size_t k = gp_.size() - 1; k-- > 0;) acc = acc * w + gp_[k];
    return acc;
  }

  Padic lift(const Rational& w) const { return Padic::from_rational(w, p_, prec_); }
  const QPoly& poly() const { return g_; }

 private:
  Prime p_;
  long prec_;
  QPoly g_;
  std::vector<Padic> gp_;
};

}  // namespace detail

inline OrbitVerdict iterate_orbit(const FamilySpec& spec, const Rational& zeta, const Prime& p, std::size_t max_steps,
                                  const OrbitOptions& opts = {}) {
  if (max_steps < 1) throw std::invalid_argument("max_steps must be >= 1");
  const int d = spec.degree();
  const ValOrInf floor = orbit_floor(spec, p).floor;
  const detail::CenteredMap g(spec, p, opts.padic_precision);

  std::optional<Rational> w = zeta - family::barycenter(spec.a());
  Padic pw = g.lift(*w);
  std::map<Rational, std::size_t> seen;
  std::vector<ValOrInf> vals;

  auto advance = [&] {
    if (w) {
      w = g.exact(*w);
      if (decimal_digits(*w) > opts.exact_digit_cap) {
        w.reset();
        seen.clear();
      }
    }
    pw = w ? g.lift(*w) : g.approx(pw);
  };
  auto current_val = [&]() -> ValOrInf {
    if (w) return val_p(*w, p);
    if (!pw.is_known_nonzero() && !pw.is_zero() && ValOrInf(Rational(pw.absolute_precision())) < floor)
      throw ResourceError("p-adic precision exhausted before the orbit valuation could be compared with the floor");
    return pw.valuation();
  };

  for (std::size_t n = 0;; ++n) {
    const ValOrInf v = current_val();
    vals.push_back(v);
    if (v < floor) {
      Escaping e{n, vals};
      for (std::size_t k = 0; k < kConfirmSteps; ++k) {
        advance();
        const ValOrInf next = current_val();
        if (next != e.valuations.back().scaled(Rational(d)))
          throw std::logic_error("orbit below the floor failed to multiply its valuation by d");
        e.valuations.push_back(next);
      }
      return e;
    }
    if (w) {
      auto [it, fresh] = seen.try_emplace(*w, n);
      if (!fresh) return BoundedCertified{BoundReason::Cycle, it->second, n - it->second, vals};
    }
    if (n == max_steps) break;
    advance();
  }
  ValOrInf lo = ValOrInf::infinity();
  for (const auto& v : vals) lo = min(lo, v);
  return BoundedUpTo{max_steps, lo, vals};
}

/// Postcritical boundedness when deg = p^k and abar is p-integral: bounded
/// iff every a_i and b is p-integral.
inline bool decide_pcb(const FamilySpec& spec, const Prime& p) {
  const int d = spec.degree();
  if (!prime_power_exponent(static_cast<std::uint64_t>(d), p.value()))
    throw DomainError("integrality criterion requires the degree to be a power of p (" + std::to_string(d) +
                      " is not a power of " + std::to_string(p.value()) + ")");
  if (!is_p_integral(family::barycenter(spec.a()), p))
    throw DomainError("integrality criterion requires a p-integral barycenter");
  for (const auto& ai : spec.a())
    if (!is_p_integral(ai, p)) return false;
  return is_p_integral(spec.b(), p);
}

struct HeightResult {
  bool certified = false;
  Rational value;  // meaningful when certified
  OrbitVerdict verdict;
};

/// h(zeta) = lim max(-v(F^n zeta), 0)/d^n. Past the first dip at step N the
/// valuations of F^n zeta - abar multiply by d, so h = -v(w_N)/d^N.
inline HeightResult canonical_height(const FamilySpec& spec, const Rational& zeta, const Prime& p, std::size_t max_steps,
                                     const OrbitOptions& opts = {}) {
  HeightResult r{false, Rational(0), iterate_orbit(spec, zeta, p, max_steps, opts)};
  if (const auto* e = std::get_if<Escaping>(&r.verdict)) {
    Integer dn;
    mpz_ui_pow_ui(dn.get_mpz_t(), static_cast<unsigned long>(spec.degree()), e->first_dip_step);
    r.value = -e->valuations[e->first_dip_step].value() / Rational(dn);
    r.certified = true;
  } else if (std::holds_alternative<BoundedCertified>(r.verdict)) {
    r.certified = true;
  }
  return r;
}

struct CriticalHeight {
  Rational point;
  HeightResult height;
};

struct PostcriticalHeightReport {
  std::vector<CriticalHeight> points;
  std::optional<bool> integrality_verdict;  // set when the criterion applies
  bool certified = false;                   // H is exact
  Rational H;                               // max of certified heights (a lower bound when not certified)
};

inline PostcriticalHeightReport postcritical_height(const FamilySpec& spec, const Prime& p, std::size_t max_steps,
                                                    const OrbitOptions& opts = {}) {
  PostcriticalHeightReport rep;
  try {
    rep.integrality_verdict = decide_pcb(spec, p);
  } catch (const DomainError&) {
  }
  rep.certified = true;
  for (const auto& ai : spec.a()) {
    HeightResult h = canonical_height(spec, ai, p, max_steps, opts);
    if (rep.integrality_verdict == true) {
      if (std::holds_alternative<Escaping>(h.verdict))
        throw std::logic_error("critical orbit escapes although the integrality criterion certifies boundedness");
      if (auto* up = std::get_if<BoundedUpTo>(&h.verdict)) {
        h.verdict = BoundedCertified{BoundReason::Integrality, 0, 0, up->valuations};
        h.certified = true;
        h.value = 0;
      }
    }
    if (h.certified) {
      if (h.value > rep.H) rep.H = h.value;
    } else {
      rep.certified = false;
    }
    rep.points.push_back({ai, std::move(h)});
  }
  return rep;
}

}  // namespace critlab::orbit
