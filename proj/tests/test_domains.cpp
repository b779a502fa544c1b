#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include <nlohmann/json.hpp>

#include "mzl/domains.hpp"
#include "mzl/error.hpp"
#include "mzl/verify.hpp"

using namespace mzl;

namespace {

const cplx I{0.0, 1.0};
const BivariatePolynomial X = BivariatePolynomial::x();
const BivariatePolynomial Y = BivariatePolynomial::y();

BivariatePolynomial constant(cplx c) { return BivariatePolynomial::constant(c); }

}  // namespace

TEST(JContour, GeometryWithoutOffset) {
  const auto c = build_j_contour({.Y = 3.0, .inset = 0.0, .outset = 0.0});
  EXPECT_LT(c.closure_gap(), 1e-12);
  EXPECT_NEAR(c.length(), pi / 3 + 2 * (3 - std::sqrt(3.0) / 2) + 1, 1e-9);
  EXPECT_TRUE(c.encloses({0.0, 2.0}));
  EXPECT_FALSE(c.encloses({0.0, 0.9}));
}

TEST(JContour, DefaultOutsetEnclosesBoundaryPoints) {
  const auto c = build_j_contour({});
  for (cplx z : {I, std::polar(1.0, pi / 3), std::polar(1.0, 2 * pi / 3), cplx{0.5, 1.5}}) EXPECT_TRUE(c.encloses(z)) << z;
  EXPECT_THROW(build_j_contour({.Y = 0.9}), InvalidSpecError);
}

TEST(JContour, JIsRealOnTheBoundary) {
  const auto c = build_j_contour({.Y = 2.0, .inset = 0.0, .outset = 0.0});
  ASSERT_EQ(c.segments().size(), 4u);
  // arc, right side, top, left side; the top line is not a real locus of j.
  for (int s : {0, 1, 3}) {
    const auto& seg = c.segments()[s];
    for (int k = 1; k < 50; ++k) {
      const cplx v = klein_j(seg.point(k / 50.0));
      EXPECT_LT(std::abs(v.imag()), 1e-8 * std::max(1.0, std::abs(v))) << seg.point(k / 50.0);
    }
  }
}

TEST(WpContour, Geometry) {
  const double d = 0.05;
  const auto c = build_wp_contour({.tau = 1.0, .beta = 0.0, .delta = d});
  EXPECT_LT(c.closure_gap(), 1e-12);
  EXPECT_NEAR(c.length(), 4 * (1 - 2 * d) + 4 * (pi * d / 2), 1e-9);
  EXPECT_TRUE(c.encloses({0.5, 0.5}));
  EXPECT_FALSE(c.encloses({0.01, 0.01}));
  const auto r = build_wp_contour({.tau = 1.5, .beta = 0.0, .delta = 0.1});
  EXPECT_NEAR(r.length(), 2 * (1 - 0.2) + 2 * (1.5 - 0.2) + 4 * (pi * 0.1 / 2), 1e-9);
  EXPECT_THROW(build_wp_contour({.tau = 1.0, .beta = 0.0, .delta = 0.3}), InvalidSpecError);
}

TEST(WpContour, WpIsRealOnStraightPieces) {
  const auto lat = wp_invariants(1.0);
  const auto c = build_wp_contour({});
  int lines = 0;
  for (const auto& seg : c.segments()) {
    if (!seg.is_line()) continue;
    ++lines;
    for (int k = 0; k <= 40; ++k) {
      const cplx v = wp_eval(seg.point(k / 40.0), lat);
      EXPECT_LT(std::abs(v.imag()), 1e-8 * std::max(1.0, std::abs(v)));
    }
  }
  EXPECT_EQ(lines, 4);
}

TEST(CountJ, Examples) {
  const auto a = count_zeros_j(Y - constant({0, 2000}));
  EXPECT_EQ(a.count, 1);
  EXPECT_TRUE(a.cross_validated);
  EXPECT_TRUE(a.within_bound);

  const auto b = count_zeros_j(Y - constant(1728));
  EXPECT_EQ(b.count, 2);
  EXPECT_TRUE(b.cross_validated);
  for (const auto& z : b.zeros) EXPECT_LT(std::abs(z.center - I), 1e-2);

  const auto c = count_zeros_j(X - constant({0.1, 1.5}));
  EXPECT_EQ(c.count, 1);
  EXPECT_TRUE(c.cross_validated);
  ASSERT_EQ(c.zeros.size(), 1u);
  EXPECT_LT(std::abs(c.zeros[0].center - cplx{0.1, 1.5}), 1e-6);
}

TEST(CountJ, SimpleValueLandsAtTheInverse) {
  const auto r = count_zeros_j(Y - constant(2000));
  EXPECT_EQ(r.count, 1);
  ASSERT_EQ(r.zeros.size(), 1u);
  EXPECT_LT(std::abs(r.zeros[0].center - I * j_inverse(2000.0)), 1e-5);
}

TEST(CountJ, InvariantUnderRaisingY) {
  const auto p = (Y - constant({300, 50})) * (X - constant({0.2, 1.3}));
  const auto a = count_zeros_j(p, {.Y = 2.0});
  const auto b = count_zeros_j(p, {.Y = a.parameter + 1.0});
  EXPECT_EQ(a.count, 2);
  EXPECT_EQ(a.count, b.count);
  EXPECT_GT(j_cusp_dominance(p, a.parameter, 0.5), 2.0);
}

TEST(CountJ, ReportJson) {
  const nlohmann::json j = count_zeros_j(Y - constant({0, 2000}));
  EXPECT_EQ(j["schema"], "mzl/1");
  EXPECT_EQ(j["domain"], "j");
  EXPECT_EQ(j["count"], 1);
  EXPECT_EQ(j["bound"], "295147905179352825856");
  EXPECT_TRUE(j["Y"].is_string());
  EXPECT_THROW(count_zeros_j(constant(0.0)), InvalidSpecError);
}

TEST(CountWp, Examples) {
  const auto a = count_zeros_wp(Y - constant({3, 2}));
  EXPECT_EQ(a.count, 2);
  EXPECT_TRUE(a.cross_validated);
  EXPECT_EQ(a.bound, 27);

  const double e1 = wp_invariants(1.0).e1;
  const auto b = count_zeros_wp(Y - constant(e1));
  EXPECT_EQ(b.count, 2);
  EXPECT_TRUE(b.cross_validated);
  // The half-period sits on the bottom edge and, translated, on the top edge.
  for (const auto& z : b.zeros) EXPECT_LT(std::min(std::abs(z.center - 0.5), std::abs(z.center - cplx{0.5, 1})), 1e-2);

  const auto c = count_zeros_wp(X - constant({0.3, 0.4}));
  EXPECT_EQ(c.count, 1);
  EXPECT_TRUE(c.cross_validated);
}

TEST(CountWp, DoubleZeroAtHalfPeriodBySmallCircle) {
  const auto lat = wp_invariants(1.0);
  const auto f = make_composite(Y - constant(lat.e1), wp_function(lat));
  EXPECT_EQ(winding_number(f, Contour::circle(0.5, 1e-3)).winding, 2);
}

TEST(CountWp, RectangularLattice) {
  const auto r = count_zeros_wp(Y * Y - constant({1, 1}), {.tau = 1.5});
  EXPECT_EQ(r.count, 4);
  EXPECT_TRUE(r.cross_validated);
  nlohmann::json j = r;
  EXPECT_EQ(j["tau"], "1.5");
  EXPECT_EQ(j["proof_bound"], "67");
}

TEST(CountWp, InvariantUnderHalvingDelta) {
  std::mt19937_64 rng(4);
  for (int k = 0; k < 4; ++k) {
    const auto p = random_polynomial(rng, 3);
    const auto a = count_zeros_wp(p, {.delta = 0.05});
    const auto b = count_zeros_wp(p, {.delta = 0.025});
    EXPECT_EQ(a.count, b.count) << k;
    EXPECT_TRUE(a.cross_validated && b.cross_validated) << k;
  }
}

TEST(LineCount, RealValuesOfWp) {
  // wp decreases from +inf to e1 on (0, 1/2) and mirrors back on (1/2, 1).
  const double e1 = wp_invariants(1.0).e1;
  EXPECT_EQ(line_im_zero_count(Y - constant(10.0), 1.0, LineKind::horizontal, Component::real), 2);
  EXPECT_EQ(line_im_zero_count(Y - constant(e1 - 1.0), 1.0, LineKind::horizontal, Component::real), 0);
  EXPECT_LE(line_im_zero_count(Y - constant(e1), 1.0, LineKind::horizontal, Component::real), 11);
  EXPECT_EQ(line_im_zero_count(constant(I), 1.0, LineKind::horizontal, Component::imag), 0);
}

TEST(LineCount, ComplexShiftOnHorizontalLine) {
  // Im(wp(x) - (10 + i) x) = -x has no zero on the open line.
  EXPECT_EQ(line_im_zero_count(Y - constant(10.0) - I * X, 1.0, LineKind::horizontal, Component::imag), 0);
  // Im(i (wp(x) - 10)) = wp(x) - 10.
  EXPECT_EQ(line_im_zero_count(I * (Y - constant(10.0)), 1.0, LineKind::horizontal, Component::imag), 2);
}

TEST(LineCount, RealPolynomialOnRealLineIsAmbiguous) {
  EXPECT_THROW(line_im_zero_count(Y - constant(10.0), 1.0, LineKind::horizontal, Component::imag), AmbiguityError);
}

TEST(LineCount, RandomRealPolynomialsStayBelowBound) {
  std::mt19937_64 rng(17);
  int checked = 0;
  for (int k = 0; k < 10; ++k) {
    const auto p = random_polynomial(rng, 3, true);
    const int bound = static_cast<int>(proposition_bound(p.degree()));
    // Im P(it, Y) vanishes identically when P has no odd power of X.
    const bool flat = imaginary_axis_reduction(p).is_zero();
    for (double tau : {1.0, 1.5}) {
      if (flat) {
        EXPECT_THROW(line_im_zero_count(p, tau, LineKind::vertical, Component::imag), AmbiguityError);
      } else {
        EXPECT_LE(line_im_zero_count(p, tau, LineKind::vertical, Component::imag), bound);
        ++checked;
      }
      EXPECT_LE(line_im_zero_count(p, tau, LineKind::horizontal, Component::real), bound);
      EXPECT_LE(line_im_zero_count(p, tau, LineKind::horizontal, Component::real, {.half_period = true}), bound);
    }
  }
  EXPECT_GT(checked, 4);
}

TEST(ImaginaryAxis, ReductionMatchesDirectEvaluation) {
  std::mt19937_64 rng(23);
  for (int k = 0; k < 10; ++k) {
    const auto p = random_polynomial(rng, 3, true);
    const auto q = imaginary_axis_reduction(p);
    for (double t : {1.1, 1.4, 2.0}) {
      const double J = klein_j(I * t).real();
      const double direct = p(I * t, J).imag();
      const cplx reduced = q(t, J);
      EXPECT_LT(std::abs(direct - reduced.real()), 1e-9 * std::max(1.0, p.partials(I * t, J).scale));
      EXPECT_EQ(reduced.imag(), 0.0);
    }
  }
}

TEST(ArcWinding, QuarterCircleNearPole) {
  const auto lat = wp_invariants(1.0);
  for (int d = 1; d <= 3; ++d) {
    BivariatePolynomial p = constant(1.0);
    for (int k = 0; k < d; ++k) p = p * (Y - constant({1.0 + k, 0.5}));
    const auto f = make_composite(p, wp_function(lat));
    for (double delta : {0.05, 0.01, 0.002}) {
      const double w = arc_winding_contribution(f, 0.0, delta, pi / 2, 0.0);
      EXPECT_LE(w, d / 2.0 + 0.1) << d << " " << delta;
      if (delta == 0.002) EXPECT_NEAR(w, d / 2.0, 0.01);
    }
  }
}

TEST(CuspDominance, GrowsWithHeight) {
  const auto p = Y * Y - constant(5.0) * X * Y + constant(1.0);
  EXPECT_LT(j_cusp_dominance(p, 1.5, 0.5), j_cusp_dominance(p, 3.0, 0.5));
  EXPECT_GT(j_cusp_dominance(p, 4.0, 0.5), 2.2);
}
