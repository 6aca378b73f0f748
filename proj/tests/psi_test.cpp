#include "critlab/psi.hpp"

#include <gtest/gtest.h>

namespace critlab::psi {
namespace {

Rational q(long n, long d = 1) { return make_rational(n, d); }
ValOrInf V(long n, long d = 1) { return ValOrInf(q(n, d)); }

TEST(BuildChain, SingleSteps) {
  auto c2 = build_chain({2});
  EXPECT_EQ(c2.composed, (QPoly{q(0), q(0), q(9, 4), q(0), q(-6, 4), q(0), q(1, 4)}));
  EXPECT_EQ(c2.degree, 6);
  EXPECT_EQ(c2.leading, q(1, 4));
  EXPECT_EQ(c2.N, 4);

  auto c3 = build_chain({3});
  EXPECT_EQ(c3.composed, pow(QPoly{q(0), q(4, 3), q(0), q(0), q(-1, 3)}, 3));
  EXPECT_EQ(c3.degree, 12);
  EXPECT_EQ(c3.leading, q(-1, 27));
}

TEST(BuildChain, Compositions) {
  auto c = build_chain({3, 2});  // psi_2 o psi_3
  EXPECT_EQ(c.degree, 72);
  EXPECT_EQ(val_p(c.leading, Prime(2)), V(-2));
  EXPECT_EQ(val_p(c.leading, Prime(3)), V(-18));
  EXPECT_EQ(c.composed, psi_poly(2).compose(psi_poly(3)));
  // spot check against direct evaluation
  const Rational x = q(2, 7);
  EXPECT_EQ(c.composed.evaluate(x), psi_poly(2).evaluate(psi_poly(3).evaluate(x)));
  EXPECT_THROW(build_chain({3, 2, 2}), ResourceError);  // degree 432
  EXPECT_NO_THROW(build_chain({2, 2, 2}));                 // degree 216
  EXPECT_THROW(build_chain({1}), std::invalid_argument);
  EXPECT_THROW(build_chain({}), std::invalid_argument);
}

TEST(CertifyPcf, Examples) {
  auto c = build_chain({2});
  EXPECT_TRUE(certify_pcf(c));
  // critical points 0, +-1, +-sqrt 3
  for (long x : {0L, 1L, -1L}) EXPECT_TRUE(is_zero(c.composed.derivative().evaluate(q(x))));
  EXPECT_EQ(c.composed.evaluate(q(1)), q(1));
  EXPECT_EQ(c.composed.evaluate(q(-1)), q(1));
  EXPECT_TRUE(divides(QPoly{q(-3), q(0), q(1)}, c.composed.derivative()));
  EXPECT_TRUE(divides(QPoly{q(-3), q(0), q(1)}, c.composed));  // psi_2(+-sqrt 3) = 0

  EXPECT_TRUE(certify_pcf(build_chain({3, 2})));
  EXPECT_TRUE(certify_pcf(build_chain({2, 3})));
  EXPECT_TRUE(certify_pcf(build_chain({2, 2})));
  EXPECT_FALSE(certify_pcf(QPoly{q(1), q(0), q(1)}));  // z^2 + 1
  EXPECT_FALSE(certify_pcf(QPoly{q(0), q(0), q(1)} - QPoly{q(0), q(1, 2)}));  // fixes 0, not 1
}

TEST(FixedCriticalOne, Examples) {
  EXPECT_TRUE(fixed_critical_one(build_chain({2})));
  EXPECT_TRUE(fixed_critical_one(build_chain({3, 2})));
  EXPECT_TRUE(fixed_critical_one(build_chain({2, 2, 2})));
}

TEST(RescaleReport, PsiTwo) {
  auto r = rescale_report(build_chain({2}), {2, 3});
  EXPECT_TRUE(r.pcf_certified);
  EXPECT_TRUE(r.centered_certified);
  const auto& p2 = r.primes.at(2);
  EXPECT_EQ(p2.nu_lambda, q(-2, 5));
  EXPECT_EQ(p2.coefficient_valuations.at(4), V(1, 5));
  EXPECT_EQ(p2.coefficient_valuations.at(2), V(-8, 5));
  EXPECT_EQ(p2.coefficient_valuations.at(6), V(0));
  EXPECT_TRUE(p2.monic);
  EXPECT_EQ(p2.critical_one_valuation, V(-2, 5));
  EXPECT_FALSE(p2.integral);
  // at 3 every critical point stays integral
  const auto& p3 = r.primes.at(3);
  EXPECT_EQ(p3.nu_lambda, q(0));
  EXPECT_TRUE(p3.integral);
  EXPECT_EQ(p3.min_critical_valuation, V(0));
}

TEST(RescaleReport, Compositions) {
  auto r = rescale_report(build_chain({3, 2}), {2, 3});
  EXPECT_EQ(r.primes.at(2).critical_one_valuation, V(-2, 71));
  EXPECT_EQ(r.primes.at(3).critical_one_valuation, V(-18, 71));
  auto s = rescale_report(build_chain({2, 3}), {2, 3});
  EXPECT_EQ(s.primes.at(2).critical_one_valuation, V(-24, 71));
  EXPECT_EQ(s.primes.at(3).critical_one_valuation, V(-3, 71));
  for (const auto* rep : {&r, &s}) {
    EXPECT_TRUE(rep->pcf_certified);
    EXPECT_TRUE(rep->centered_certified);
    for (const auto& [p, pr] : rep->primes) {
      EXPECT_TRUE(pr.monic);
      EXPECT_FALSE(pr.integral);
      EXPECT_LE(pr.min_critical_valuation, pr.critical_one_valuation);
    }
  }
}

TEST(Chains, InvariantsOverSmallChains) {
  for (const auto& idx : std::vector<std::vector<int>>{{2}, {3}, {4}, {5}, {2, 2}, {2, 3}, {3, 2}, {2, 4}, {4, 2}, {2, 2, 2}}) {
    auto c = build_chain(idx);
    EXPECT_TRUE(is_zero(c.composed.coeff(static_cast<std::size_t>(c.degree - 1))));
    EXPECT_EQ(c.composed.evaluate(q(0)), q(0));
    EXPECT_EQ(c.composed.evaluate(q(1)), q(1));
    EXPECT_TRUE(certify_pcf(c));
    EXPECT_GT(c.N, 1);
    // prime support of N inside the primes of n and n + 1
    std::vector<std::uint64_t> allowed;
    for (int n : idx)
      for (std::uint64_t p : prime_divisors(static_cast<std::uint64_t>(n) * static_cast<std::uint64_t>(n + 1))) allowed.push_back(p);
    std::vector<std::uint64_t> support;
    for (std::uint64_t p : prime_divisors(c.N.get_ui())) support.push_back(p);
    for (std::uint64_t p : support) EXPECT_NE(std::find(allowed.begin(), allowed.end(), p), allowed.end());
    auto r = rescale_report(c, support);
    for (const auto& [p, pr] : r.primes) EXPECT_LT(pr.nu_lambda, q(0));
  }
}

}  // namespace
}  // namespace critlab::psi
