// Acceptance run: one PASS/FAIL line per criterion, each under its time budget.
// Exit status is nonzero when any criterion fails.

#include "critlab/family.hpp"
#include "critlab/gleason.hpp"
#include "critlab/orbit.hpp"
#include "critlab/psi.hpp"
#include "critlab/variety.hpp"

#include <chrono>
#include <filesystem>
#include <functional>
#include <iostream>
#include <random>
#include <set>
#include <sstream>

using namespace critlab;

namespace {

Rational q(long n, long d = 1) { return make_rational(n, d); }

// Collects failures; an empty list means the criterion holds.
struct Failures {
  std::vector<std::string> items;
  void check(bool ok, const std::string& what) {
    if (!ok) items.push_back(what);
  }
};

bool run_criterion(int id, const std::string& title, double budget_s, const std::function<void(Failures&)>& body) {
  Failures f;
  const auto t0 = std::chrono::steady_clock::now();
  try {
    body(f);
  } catch (const std::exception& e) {
    f.items.push_back(std::string("exception: ") + e.what());
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (secs > budget_s) {
    std::ostringstream os;
    os << "over time budget of " << budget_s << " s";
    f.items.push_back(os.str());
  }
  std::ostringstream line;
  line.setf(std::ios::fixed);
  line.precision(2);
  line << (f.items.empty() ? "PASS" : "FAIL") << " " << id << " " << title << " (" << secs << " s)";
  std::cout << line.str() << "\n";
  for (std::size_t i = 0; i < f.items.size() && i < 12; ++i) std::cout << "    " << f.items[i] << "\n";
  if (f.items.size() > 12) std::cout << "    ... " << f.items.size() - 12 << " more\n";
  std::cout.flush();
  return f.items.empty();
}

std::uint64_t radical_prime(int d) { return prime_divisors(static_cast<std::uint64_t>(d)).front(); }

void lemma_pp(Failures& f) {
  for (int d : {2, 3, 4, 5, 7, 8, 9}) {
    const auto r = family::check_lemma_pp(d, Prime(radical_prime(d)));
    f.check(r.passed(), "d=" + std::to_string(d) + " congruences fail");
  }
  for (std::uint64_t p : {2u, 3u}) {
    const auto r = family::check_lemma_pp(6, Prime(p));
    const bool named = !r.witnesses.empty() && r.witnesses.front().valuation < ValOrInf(1);
    f.check(!r.passed() && named, "d=6 p=" + std::to_string(p) + " gives no failing coefficient");
  }
}

void gleason_suite(Failures& f) {
  const auto dir = std::filesystem::temp_directory_path() / ("critlab-acceptance-" + std::to_string(::getpid()));
  std::filesystem::remove_all(dir);
  const gleason::GammaCache cache(dir);
  std::vector<std::pair<int, int>> cases;
  for (int N = 1; N <= 10; ++N) cases.emplace_back(2, N);
  for (int N = 1; N <= 6; ++N) cases.emplace_back(3, N);
  for (int N = 1; N <= 5; ++N) cases.emplace_back(4, N);
  for (int d : {8, 9})
    for (int N = 1; N <= 3; ++N) cases.emplace_back(d, N);
  for (auto [d, N] : cases) {
    const auto r = gleason::check_gleason_poly(d, N, cache.get(d, N));
    f.check(r.passed(), "d=" + std::to_string(d) + " N=" + std::to_string(N));
  }
  std::filesystem::remove_all(dir);
}

void misiurewicz_suite(Failures& f) {
  auto run = [&](int d, int maxN) {
    for (int N = 2; N <= maxN; ++N)
      for (int n = 1; n < N; ++n) {
        const auto r = gleason::check_misiurewicz(d, N, n);
        f.check(r.passed() && is_squarefree(r.multiple_zero_locus),
                "d=" + std::to_string(d) + " N=" + std::to_string(N) + " n=" + std::to_string(n));
      }
  };
  run(2, 6);
  run(4, 3);
  const auto hand = gleason::check_misiurewicz(2, 3, 1);
  f.check(hand.multiple_zero_locus == QPoly{q(0), q(1), q(1)}, "d=2 N=3 n=1 locus is not b^2 + b");
}

void counterexamples(Failures& f) {
  const Prime two(2), three(3);
  auto rep = [](std::vector<int> chain, std::vector<std::uint64_t> primes) {
    return psi::rescale_report(psi::build_chain(chain), primes);
  };
  const auto r2 = rep({2}, {2, 3});
  const auto& p2 = r2.primes.at(2);
  f.check(p2.coefficient_valuations.at(4) == ValOrInf(q(1, 5)), "psi_2: v2(z^4 coefficient) != 1/5");
  f.check(p2.coefficient_valuations.at(2) == ValOrInf(q(-8, 5)), "psi_2: v2(z^2 coefficient) != -8/5");
  f.check(p2.critical_one_valuation == ValOrInf(q(-2, 5)), "psi_2: v2(critical point) != -2/5");
  f.check(r2.primes.at(3).integral, "psi_2: critical points not all 3-integral");

  const auto r32 = rep({3, 2}, {2, 3});  // psi_2 o psi_3
  f.check(r32.primes.at(2).critical_one_valuation == ValOrInf(q(-2, 71)), "psi_2 o psi_3: v2 != -2/71");
  f.check(r32.primes.at(3).critical_one_valuation == ValOrInf(q(-18, 71)), "psi_2 o psi_3: v3 != -18/71");
  const auto r23 = rep({2, 3}, {2, 3});  // psi_3 o psi_2
  f.check(r23.primes.at(2).critical_one_valuation == ValOrInf(q(-24, 71)), "psi_3 o psi_2: v2 != -24/71");
  f.check(r23.primes.at(3).critical_one_valuation == ValOrInf(q(-3, 71)), "psi_3 o psi_2: v3 != -3/71");
  for (const auto* r : {&r2, &r32, &r23}) f.check(r->pcf_certified, "a psi chain is not certified PCF");
}

void integrality_consistency(Failures& f) {
  std::mt19937_64 rng(20261016);
  const Prime two(2);
  auto uniform = [&](long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(rng); };
  const int per_degree = 40;  // 120 specs each way
  int bounded_seen = 0, escaping_seen = 0;
  for (int d : {2, 4, 8}) {
    for (int trial = 0; trial < per_degree; ++trial) {
      // integral critical points with integral barycenter
      std::vector<Rational> a;
      Integer sum = 0;
      for (int i = 0; i + 1 < d - 1; ++i) {
        a.push_back(q(uniform(-20, 20)));
        sum += a.back().get_num();
      }
      const long shift = uniform(-5, 5) * (d - 1);
      a.push_back(Rational(Integer(shift) - sum));
      const auto spec = family::FamilySpec::numeric(a, q(uniform(-20, 20)));
      const std::string tag = "d=" + std::to_string(d) + " integral trial " + std::to_string(trial);
      f.check(orbit::decide_pcb(spec, two), tag + ": not certified bounded");
      for (const auto& ai : spec.a()) {
        const auto v = orbit::iterate_orbit(spec, ai, two, 20);
        f.check(!std::holds_alternative<orbit::Escaping>(v), tag + ": a critical orbit escapes");
      }
      ++bounded_seen;
    }
    for (int trial = 0; trial < per_degree; ++trial) {
      // centered, with at least one coordinate of negative 2-adic valuation
      std::vector<Rational> a;
      Rational sum = 0;
      for (int i = 0; i + 1 < d - 1; ++i) {
        a.push_back(q(uniform(-20, 20), 1L << uniform(0, 3)));
        sum += a.back();
      }
      if (d > 2) a.push_back(-sum);
      else a.push_back(q(0));
      Rational b = q(uniform(-20, 20), 1L << uniform(0, 3));
      bool integral = is_p_integral(b, two);
      for (const auto& x : a) integral = integral && is_p_integral(x, two);
      if (integral) b = q(2 * uniform(0, 10) + 1, 2);
      const auto spec = family::FamilySpec::numeric(a, b);
      const std::string tag = "d=" + std::to_string(d) + " non-integral trial " + std::to_string(trial);
      f.check(!orbit::decide_pcb(spec, two), tag + ": certified bounded");
      bool escaped = false;
      for (const auto& ai : spec.a())
        if (std::holds_alternative<orbit::Escaping>(orbit::iterate_orbit(spec, ai, two, 10))) {
          escaped = true;
          break;
        }
      f.check(escaped, tag + ": no escaping certificate within 10 steps");
      ++escaping_seen;
    }
  }
  f.check(bounded_seen >= 100 && escaping_seen >= 100, "fewer than 100 specs on a side");
}

void transversality(Failures& f) {
  for (int d : {2, 3, 4, 8, 9}) {
    const auto r = family::lambda_jacobian_check(d, Prime(radical_prime(d)));
    std::string why = "lambda Jacobian d=" + std::to_string(d) + ": det = " + std::to_string(r.determinant_mod_p) + " mod " +
                      std::to_string(r.p);
    if (!r.matches_reference) why += ", not congruent to the reference matrix";
    f.check(r.passed(), why);
  }
  for (int d : {2, 3, 4}) {
    const Prime p(radical_prime(d));
    std::vector<int> n(static_cast<std::size_t>(d - 1), 1);
    while (true) {
      const auto r = variety::check_simplicity_symbolic(d, n, p);
      std::string tag = "simplicity d=" + std::to_string(d) + " n=(";
      for (std::size_t i = 0; i < n.size(); ++i) tag += (i ? "," : "") + std::to_string(n[i]);
      f.check(r.passed(), tag + ")");
      std::size_t i = 0;
      while (i < n.size() && n[i] == 3) n[i++] = 1;
      if (i == n.size()) break;
      ++n[i];
    }
  }
}

void cubic_witness(Failures& f) {
  const auto w = variety::eliminate(3, {0, 0}, {1, 1});
  f.check(w.eliminant_in_a.has_value(), "no a-eliminant");
  if (w.eliminant_in_a) f.check(*w.eliminant_in_a == (QPoly{q(0), q(1, 2), q(0), q(1)}), "a-eliminant is not a(a^2 + 1/2)");
  f.check(w.a_squarefree, "a-eliminant not squarefree");
  f.check(w.all_points_explicit, "points not all explicit");
  std::set<Rational> dets;
  std::size_t counted = 0;
  for (const auto& pt : w.points) {
    f.check(pt.verified, "a point fails the defining equations");
    f.check(pt.jacobian_det.is_rational(), "a Jacobian determinant is irrational");
    dets.insert(pt.jacobian_det.representative().coeff(0));
    counted += static_cast<std::size_t>(pt.minimal_poly.degree());
  }
  f.check(counted == 3, "expected three points");
  f.check(dets == std::set<Rational>{q(-2), q(4)}, "Jacobian determinants are not {-2, 4}");
  f.check(variety::integrality_audit(w, Prime(3)).passed(), "3-integrality audit fails");
}

void cyclotomic_oracle(Failures& f) {
  for (std::uint64_t p = 2; p <= 30; ++p) {
    if (!detail::is_prime_u64(p)) continue;
    const Prime pp(p);
    for (std::uint64_t m = 2; m <= 30; ++m) {
      const Rational phi1 = cyclotomic_poly(m).evaluate(Rational(1));
      const ValOrInf oracle = val_p(phi1, pp).scaled(Rational(1, euler_phi(m)));
      f.check(val_one_minus_zeta(m, pp) == oracle, "m=" + std::to_string(m) + " p=" + std::to_string(p));
    }
  }
}

void heights(Failures& f) {
  const Prime two(2);
  const auto spec = family::FamilySpec::numeric({q(0)}, q(1, 2));
  const auto h = orbit::canonical_height(spec, q(0), two, 20);
  f.check(h.certified && h.value == q(1, 2), "h(0) != 1/2 for b = 1/2");
  const auto* e = std::get_if<orbit::Escaping>(&h.verdict);
  f.check(e != nullptr, "no escape certificate for b = 1/2");
  if (e) {
    std::vector<ValOrInf> tail(e->valuations.begin() + static_cast<long>(e->first_dip_step), e->valuations.end());
    f.check(tail == std::vector<ValOrInf>{ValOrInf(-1), ValOrInf(-2), ValOrInf(-4), ValOrInf(-8)}, "escape trace is not -1,-2,-4,-8");
  }
  const auto r = orbit::postcritical_height(family::FamilySpec::numeric({q(0)}, q(-1)), two, 20);
  f.check(r.certified && r.H == 0, "H != 0 for b = -1");
  for (const auto& pt : r.points) {
    const auto* c = std::get_if<orbit::BoundedCertified>(&pt.height.verdict);
    f.check(c && c->reason == orbit::BoundReason::Cycle, "b = -1 not certified by a cycle");
  }
}

}  // namespace

int main() {
  bool ok = true;
  ok &= run_criterion(1, "mod-p congruences of the family", 10, lemma_pp);
  ok &= run_criterion(2, "Gleason polynomials, cold cache", 120, gleason_suite);
  ok &= run_criterion(3, "Misiurewicz loci", 120, misiurewicz_suite);
  ok &= run_criterion(4, "psi chain valuations", 30, counterexamples);
  ok &= run_criterion(5, "integrality criterion vs. orbits", 60, integrality_consistency);
  ok &= run_criterion(6, "transversality certificates", 120, transversality);
  ok &= run_criterion(7, "cubic variety witness", 5, cubic_witness);
  ok &= run_criterion(8, "cyclotomic valuation oracle", 5, cyclotomic_oracle);
  ok &= run_criterion(9, "canonical heights", 1, heights);
  return ok ? 0 : 1;
}
