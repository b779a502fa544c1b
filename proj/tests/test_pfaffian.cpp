#include <gtest/gtest.h>

#include <cmath>

#include "mzl/bounds.hpp"
#include "mzl/error.hpp"
#include "mzl/hypergeometric.hpp"
#include "mzl/pfaffian.hpp"
#include "mzl/qseries.hpp"

using namespace mzl;

TEST(Bounds, Formulas) {
  EXPECT_EQ(theorem1_bound(1), BigInt(1) << 68);
  EXPECT_EQ(theorem1_bound(2), (BigInt(1) << 68) * 1024);
  EXPECT_EQ(theorem2_bound(2), 65);
  EXPECT_EQ(theorem2_proof_bound(2), 67);
  EXPECT_EQ(proposition_bound(3), 55);
  EXPECT_EQ(proposition_bound(1), 11);
  EXPECT_EQ(bezout_step_bound(3), 27);
}

TEST(Bounds, Khovanskii) {
  EXPECT_EQ(khovanskii_zero_bound(1, 2, 1), 3);
  EXPECT_EQ(khovanskii_zero_bound(3, 2, 0), 0);
  const BigInt d1 = khovanskii_zero_bound(9, 3, 4);
  EXPECT_EQ(d1, (BigInt(1) << 36) * 4 * boost::multiprecision::pow(BigInt(7), 9));
  EXPECT_LE(d1, BigInt(1) << 64);
}

TEST(Bounds, LedgerForFirstHundredDegrees) {
  for (int d = 1; d <= 100; ++d) {
    EXPECT_TRUE(imaginary_axis_ledger_holds(d)) << d;
    EXPECT_TRUE(contour_ledger_holds(d)) << d;
  }
}

TEST(MultiPoly, DegreeAndEvaluation) {
  MultiPoly p(3);
  p.add(2.0, {{0, 1}, {2, 2}}).add(-1.0, {{1, 1}}).add(0.5);
  EXPECT_EQ(p.total_degree(), 3);
  EXPECT_EQ(p.highest_variable(), 2);
  const std::vector<double> v{2.0, 3.0, 0.5};
  EXPECT_DOUBLE_EQ(p.evaluate(v), 2.0 * 2.0 * 0.25 - 3.0 + 0.5);
}

TEST(Chain, ReciprocalResidual) {
  const auto c = build_reciprocal_chain(0.1, 1.0);
  EXPECT_EQ(c.order(), 1);
  EXPECT_EQ(c.alpha(), 2);
  EXPECT_LT(chain_residual(c, 200).max_residual, 1e-7);
}

TEST(Chain, HypergeometricShapeAndResidual) {
  const auto c = build_hypergeometric_chain(1.0 / 6, 5.0 / 6, 1.0);
  EXPECT_EQ(c.order(), 6);
  // The (1/F)' relation needs total degree 4 in this chain.
  EXPECT_EQ(c.alpha(), 4);
  EXPECT_LT(chain_residual(c, 200).max_residual, 1e-8);
  EXPECT_LT(chain_residual(build_hypergeometric_chain(0.3, 0.7, 1.4), 200).max_residual, 1e-7);
}

TEST(Chain, HypergeometricMembersAgreeWithSeries) {
  const double a = 0.3, b = 0.7, c = 1.4, x = 0.37;
  const auto chain = build_hypergeometric_chain(a, b, c);
  const auto pt = chain.point(x);
  const double F = hyp2f1(a, b, c, x).real(), Fp = hyp2f1(a, b, c + 1, x).real();
  EXPECT_NEAR(pt[1], 1 / x, 1e-12);
  EXPECT_NEAR(pt[2], 1 / (1 - x), 1e-12);
  EXPECT_NEAR(pt[3], F / Fp, 1e-12);
  EXPECT_NEAR(pt[4], Fp, 1e-12);
  EXPECT_NEAR(pt[5], F, 1e-12);
  EXPECT_NEAR(pt[6], 1 / F, 1e-12);
}

TEST(Chain, ContiguousLimitAtZero) {
  // c (F - F(c+)) / x tends to a finite limit as x -> 0.
  const double a = 1.0 / 6, b = 5.0 / 6, c = 1.0;
  auto g = [&](double x) { return c * (hyp2f1(a, b, c, x) - hyp2f1(a, b, c + 1, x)).real() / x; };
  const double limit = a * b * (1.0 - c / (c + 1));
  EXPECT_NEAR(g(1e-3), limit, 1e-3);
  EXPECT_NEAR(g(1e-4), limit, 1e-4);
  EXPECT_LT(std::abs(g(1e-4) - limit), std::abs(g(1e-3) - limit));
}

TEST(Chain, RatioChain) {
  const auto c = build_ratio_chain();
  EXPECT_EQ(c.order(), 9);
  EXPECT_LT(chain_residual(c, 200).max_residual, 1e-7);
  const auto f = build_ratio_function();
  EXPECT_EQ(f.beta(), 2);
  EXPECT_NEAR(f(1e-9), 1.0, 1e-8);
  for (double y : {0.2, 0.5, 0.8}) EXPECT_NEAR(f(y), j_inverse(1728.0 / (1.0 - y * y)), 1e-8);
}

TEST(Chain, CorruptedRhsIsDetected) {
  const auto c = build_hypergeometric_chain(1.0 / 6, 5.0 / 6, 1.0);
  EXPECT_GT(chain_residual(c.corrupted(2, 0, 1.0), 200).max_residual, 1e-2);
  EXPECT_GT(chain_residual(build_ratio_chain().corrupted(4, 0, 1.0), 200).max_residual, 1e-2);
}

TEST(RealZeros, SineHasFiveInteriorZeros) {
  const auto r = real_zero_count([](double x) { return std::sin(2 * pi * x); }, 0.0, 3.0, {.endpoint_offset = 1e-9});
  EXPECT_EQ(r.count, 5);
  for (std::size_t k = 0; k < r.roots.size(); ++k) EXPECT_NEAR(r.roots[k], 0.5 * (k + 1), 1e-9);
}

TEST(RealZeros, JAlongImaginaryAxis) {
  const auto r = real_zero_count([](double t) { return klein_j({0.0, t}).real() - 2000.0; }, 1.0, 3.0);
  EXPECT_EQ(r.count, 1);
  EXPECT_NEAR(r.roots.at(0), j_inverse(2000.0), 1e-9);
}

TEST(RealZeros, DoubleRootIsTangentialNotCounted) {
  const auto r = real_zero_count([](double x) { return (x - 0.3) * (x - 0.3); }, 0.0, 1.0);
  EXPECT_EQ(r.count, 0);
  EXPECT_EQ(r.tangential.size(), 1u);
}
