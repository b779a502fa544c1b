#include <gtest/gtest.h>

#include <random>

#include <nlohmann/json.hpp>

#include "mzl/contour.hpp"
#include "mzl/domains.hpp"
#include "mzl/error.hpp"
#include "mzl/poly.hpp"
#include "mzl/qseries.hpp"
#include "mzl/verify.hpp"
#include "mzl/weierstrass.hpp"
#include "support.hpp"

using namespace mzl;

namespace {

const BivariatePolynomial X = BivariatePolynomial::x();
const BivariatePolynomial Y = BivariatePolynomial::y();

}  // namespace

TEST(Poly, TrimsTrailingZeroRowsAndColumns) {
  const BivariatePolynomial p(2, 3, {1, 0, 0, 0, 0, 2, 0, 0, 0, 0, 0, 0});
  EXPECT_EQ(p.deg_x(), 1);
  EXPECT_EQ(p.deg_y(), 1);
  EXPECT_EQ(p.coeff(1, 1), cplx(2.0));
  EXPECT_TRUE(BivariatePolynomial(1, 1, {0, 0, 0, 0}).is_zero());
}

TEST(Poly, ArithmeticAndEvaluation) {
  const auto p = (X + Y) * (X - Y);  // x^2 - y^2
  EXPECT_EQ(p.degree(), 2);
  const cplx x{1.5, -0.5}, y{0.25, 2.0};
  EXPECT_LT(std::abs(p(x, y) - (x * x - y * y)), 1e-14);
  const auto parts = p.partials(x, y);
  EXPECT_LT(std::abs(parts.dx - 2.0 * x), 1e-14);
  EXPECT_LT(std::abs(parts.dy + 2.0 * y), 1e-14);
}

TEST(Poly, JsonRoundTrip) {
  const auto p = BivariatePolynomial::from_rows({{{1, 2}, 3}, {0, {-1, 0.5}}});
  const nlohmann::json j = p;
  EXPECT_EQ(j.get<BivariatePolynomial>(), p);
  EXPECT_THROW(nlohmann::json::parse(R"({"deg_x":1,"deg_y":0,"coeffs":[[1]]})").get<BivariatePolynomial>(),
               DomainError);
  const auto s = nlohmann::json::parse(R"({"deg_x":0,"deg_y":1,"coeffs":[[["-2","0.5"],"1"]]})");
  EXPECT_EQ(s.get<BivariatePolynomial>(), BivariatePolynomial::from_rows({{{-2, 0.5}, 1}}));
}

TEST(Poly, EvalComposedExamples) {
  const cplx i{0.0, 1.0};
  EXPECT_NEAR(std::abs(eval_composed(Y, klein_j_function(), i) - 1728.0), 0.0, 1e-6);
  EXPECT_EQ(eval_composed(X, test::exp_fn(), {3, 4}), cplx(3, 4));
  EXPECT_EQ(eval_composed(Y - X, test::identity_fn(), {0.7, -1.3}), cplx(0.0));
}

TEST(Poly, DerivativeComposedExamples) {
  const auto lat = wp_invariants(1.0);
  const cplx z{0.3, 0.2};
  EXPECT_LT(std::abs(derivative_composed(Y, wp_function(lat), z) - wp_prime(z, lat)), 1e-12);

  const cplx a{2, -1}, b{0.5, 3}, z0{1, 1};
  const AnalyticFn f = [&](cplx w) { return Jet{a + b * (w - z0), b, 1.0}; };
  EXPECT_LT(std::abs(derivative_composed(X * Y, f, z0) - (a + z0 * b)), 1e-14);
}

TEST(Perturb, EpsilonIsHalfTheSampledMinimum) {
  const std::vector<cplx> samples{{1, 0}, {0, 1}, {-1, 0}};
  const auto pc = perturb(Y, test::constant_fn({0.0, 2.0}), samples);
  EXPECT_DOUBLE_EQ(pc.epsilon(), 1.0);
}

TEST(Perturb, ZeroEpsilonIsTheOriginal) {
  PerturbOptions o;
  o.epsilon = 0.0;
  const auto f = klein_j_function();
  const BivariatePolynomial p = Y - BivariatePolynomial::constant(2000.0);
  const std::vector<cplx> samples{{0.1, 1.2}, {0.3, 1.5}};
  const auto pc = perturb(p, f, samples, o);
  for (cplx z : {cplx{0.2, 1.1}, cplx{-0.4, 2.0}}) EXPECT_EQ(pc.value(z), eval_composed(p, f, z));
}

TEST(Perturb, StaysAwayFromZeroOnFreshBoundarySamples) {
  std::mt19937_64 rng(11);
  const Contour c = build_j_contour({});
  const auto f = klein_j_function();
  for (int trial = 0; trial < 5; ++trial) {
    const auto p = random_polynomial(rng, 3);
    const auto pc = perturb(p, f, c.sample(256));
    double worst = 1e300;
    for (cplx z : c.sample(2500)) worst = std::min(worst, std::abs(pc.value(z)));
    EXPECT_GT(worst, pc.epsilon() / 4) << "trial " << trial;
  }
}
