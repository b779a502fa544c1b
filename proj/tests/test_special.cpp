#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "mzl/error.hpp"
#include "mzl/hypergeometric.hpp"
#include "mzl/qseries.hpp"
#include "mzl/weierstrass.hpp"

using namespace mzl;

namespace {

const cplx I{0.0, 1.0};
const cplx rho = std::polar(1.0, 2.0 * pi / 3.0) + 1.0;  // 1/2 + i sqrt(3)/2

double rel(cplx a, cplx b) { return std::abs(a - b) / std::abs(b); }

}  // namespace

// hypergeometric

TEST(Hyp2f1, ValueAtZeroIsOne) { EXPECT_EQ(hyp2f1(0.3, 0.7, 1.4, 0.0), cplx(1.0)); }

TEST(Hyp2f1, ClosedFormLog) {
  EXPECT_NEAR(hyp2f1(1, 1, 2, 0.5).real(), 2.0 * std::log(2.0), 1e-14);
  EXPECT_NEAR(hyp2f1(1, 1, 2, 0.5).real(), 1.386294361119890, 1e-14);
}

TEST(Hyp2f1, MatchesReferenceValues) {
  EXPECT_LT(rel(hyp2f1(1.0 / 3, 2.0 / 3, 1.25, 0.7), 1.2089034532393358), 1e-13);
  EXPECT_LT(rel(hyp2f1(0.3, 0.7, 1.4, {0.3, 0.4}), {1.0339662048168416, 0.076665965719361965}), 1e-13);
}

TEST(Hyp2f1, SymmetricInAB) {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(0.1, 2.0), r(0.0, 0.9);
  std::uniform_real_distribution<double> ang(0.0, 2 * pi);
  for (int k = 0; k < 30; ++k) {
    const double a = u(rng), b = u(rng), c = u(rng);
    const cplx z = std::polar(r(rng), ang(rng));
    EXPECT_LT(std::abs(hyp2f1(a, b, c, z) - hyp2f1(b, a, c, z)), 1e-13);
  }
}

TEST(Hyp2f1, TailBoundCoversDifference) {
  const auto v = hyp2f1_series(1, 1, 2, 0.9);
  EXPECT_LE(v.tail_bound, 1e-14 * std::abs(v.value));
  EXPECT_NEAR(v.value.real(), -std::log(0.1) / 0.9, 1e-12);
}

TEST(Hyp2f1, RefusesArgumentsNearTheUnitCircle) {
  EXPECT_THROW(hyp2f1(0.5, 0.5, 1.0, 0.9995), PrecisionLossError);
  try {
    hyp2f1(0.5, 0.5, 1.0, 0.9995);
  } catch (const PrecisionLossError& e) {
    EXPECT_GT(e.achieved_bound(), 0.0);
  }
}

TEST(Gauss, ContiguousResiduals) {
  const auto [r1, r2] = gauss_relation_residuals(1.0 / 6, 5.0 / 6, 1.0, 0.3);
  EXPECT_LT(r1, 1e-10);
  EXPECT_LT(r2, 1e-10);
  const auto [z1, z2] = gauss_relation_residuals(0.4, 0.9, 1.3, 0.0);
  EXPECT_LT(z1, 1e-15);
  EXPECT_LT(z2, 1e-15);
}

TEST(Gauss, RandomSweep) {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(0.1, 2.0), z(0.05, 0.95);
  for (int k = 0; k < 50; ++k) {
    const auto [r1, r2] = gauss_relation_residuals(u(rng), u(rng), u(rng), z(rng));
    EXPECT_LT(std::max(r1, r2), 1e-9);
  }
}

// q-series

TEST(Eisenstein, ConstantTerms) {
  EXPECT_EQ(eisenstein_Q(0.0).value, cplx(1.0));
  EXPECT_EQ(eisenstein_R(0.0).value, cplx(1.0));
  EXPECT_THROW(eisenstein_Q(0.96), DomainError);
}

TEST(Eisenstein, DeltaProductAtSquareLattice) {
  const double q = std::exp(-2 * pi);
  const cplx Q = eisenstein_Q(q).value, R = eisenstein_R(q).value;
  double prod = 1.0;
  for (int n = 1; n < 60; ++n) prod *= std::pow(1.0 - std::pow(q, n), 24);
  EXPECT_LT(std::abs((Q * Q * Q - R * R) / (1728.0 * q * prod) - 1.0), 1e-10);
  EXPECT_LT(std::abs(R), 1e-10);
}

TEST(JSeries, LeadingCoefficients) {
  const auto& s = j_series();
  EXPECT_EQ(s.first_index(), -1);
  EXPECT_EQ(s.coefficient(-1), 1.0);
  EXPECT_EQ(s.coefficient(0), 744.0);
  EXPECT_EQ(s.coefficient(1), 196884.0);
  EXPECT_EQ(s.coefficient(2), 21493760.0);
}

TEST(KleinJ, SpecialValues) {
  EXPECT_LT(std::abs(klein_j(I) - 1728.0), 1e-6);
  EXPECT_LT(std::abs(klein_j(2.0 * I) - 287496.0), 1e-3);
  EXPECT_LT(std::abs(klein_j(rho)), 1e-6);
  EXPECT_LT(rel(klein_j(3.0 * I), 153553679.39672888), 1e-10);
}

TEST(KleinJ, ReferenceValueAndDerivative) {
  const cplx t{0.3, 1.1};
  EXPECT_LT(rel(klein_j(t), {356.6479117587322, -781.10381249005377}), 1e-10);
  EXPECT_LT(rel(klein_j_derivative(t), {-7003.6507264648906, 1364.356384348011}), 1e-9);
}

TEST(KleinJ, DerivativeVanishesAtEllipticPoints) {
  EXPECT_LT(std::abs(klein_j_derivative(I)), 1e-4);
  EXPECT_LT(std::abs(klein_j_derivative(rho)), 1e-4);
}

TEST(KleinJ, DerivativeMatchesCentralDifferences) {
  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> x(-0.5, 0.5), y(0.6, 2.0);
  const double h = 1e-5;
  for (int k = 0; k < 20; ++k) {
    const cplx t{x(rng), y(rng)};
    const cplx fd = (klein_j(t + h) - klein_j(t - h)) / (2 * h);
    EXPECT_LT(rel(klein_j_derivative(t), fd), 1e-6) << t;
  }
}

TEST(KleinJ, ErrorBoundCoversReferenceError) {
  for (cplx t : {I, 2.0 * I, cplx{0.3, 1.1}}) {
    const auto v = klein_j_value(t);
    const cplx ref = t == I ? cplx(1728) : t == 2.0 * I ? cplx(287496) : cplx{356.6479117587322, -781.10381249005377};
    EXPECT_GE(v.error_bound + 1e-15 * std::abs(ref), std::abs(v.value - ref) * 0.5) << t;
  }
}

TEST(KleinJ, RealOnImaginaryAxisAndIncreasing) {
  double prev = klein_j(I).real();
  for (int k = 1; k <= 100; ++k) {
    const double t = 1.0 + 3.0 * k / 100.0;
    const cplx v = klein_j(t * I);
    EXPECT_LT(std::abs(v.imag()), 1e-9 * std::max(1.0, std::abs(v)));
    EXPECT_GT(v.real(), prev);
    prev = v.real();
  }
}

TEST(KleinJ, RejectsLowPoints) { EXPECT_THROW(klein_j({0.0, 0.3}), DomainError); }

TEST(JInverse, Values) {
  EXPECT_EQ(j_inverse(1728.0), 1.0);
  EXPECT_NEAR(j_inverse(287496.0), 2.0, 1e-6);
  EXPECT_NEAR(j_inverse(2000.0), 1.1068254245856022, 1e-12);
  EXPECT_NEAR(j_inverse(1e4), 1.4531950452434959, 1e-12);
  EXPECT_NEAR(j_inverse(1e5), 1.8311472732977848, 1e-12);
  EXPECT_THROW(j_inverse(1727.0), DomainError);
}

TEST(JInverse, RoundTrip) {
  for (double x : {2000.0, 1e4, 1e5}) EXPECT_LT(std::abs(klein_j(I * j_inverse(x)) - x) / x, 1e-7);
}

TEST(JInverse, AsymptoticBranchIsFlagged) {
  const auto v = j_inverse_value(1e8);
  EXPECT_TRUE(v.asymptotic);
  EXPECT_LT(std::abs(klein_j(I * v.value) - 1e8) / 1e8, 1e-6);
  EXPECT_FALSE(j_inverse_value(1e5).asymptotic);
}

TEST(Ramanujan, InversionResiduals) {
  EXPECT_LT(ramanujan_inversion_residual(0.5), 1e-9);
  EXPECT_NEAR(ramanujan_q(0.5), std::exp(-2 * pi), 1e-15);
  EXPECT_LT(ramanujan_inversion_residual(0.1), 1e-8);
  EXPECT_NEAR(ramanujan_inversion_residual(0.3), ramanujan_inversion_residual(0.7), 1e-9);
}

// Weierstrass

TEST(Lattice, InvariantsMatchReference) {
  const auto sq = wp_invariants(1.0);
  EXPECT_NEAR(sq.g3, 0.0, 1e-10);
  EXPECT_LT(std::abs(sq.g2 / 189.07272012923385 - 1.0), 1e-9);
  EXPECT_NEAR(sq.e1, 6.8751858180203728, 1e-9);
  EXPECT_LT(std::abs(sq.g2_imag), 1e-12);
  const auto l = wp_invariants(1.5);
  EXPECT_LT(std::abs(l.g2 / 132.39609281347634 - 1.0), 1e-9);
  EXPECT_LT(std::abs(l.g3 / 273.23936072664281 - 1.0), 1e-9);
  EXPECT_NEAR(l.e1, 6.592480853144224, 1e-9);
  EXPECT_THROW(wp_invariants(20.0), DomainError);
}

TEST(Lattice, Homogeneity) {
  // <1, 2i> = 2i <1/(2i), 1> is the lattice <1, i/2> scaled by 2; g2 scales by 2^-4.
  EXPECT_LT(std::abs(wp_invariants(2.0).g2 / (wp_invariants(0.5).g2 / 16.0) - 1.0), 1e-10);
  EXPECT_NEAR(wp_invariants(2.0).g2, 129.98749508884827, 1e-8);
}

TEST(Wp, ReferenceValues) {
  const cplx z{0.3, 0.2};
  const auto sq = wp_invariants(1.0);
  EXPECT_LT(rel(wp_eval(z, sq), {3.3721036737358195, -5.9914186004556428}), 1e-11);
  EXPECT_LT(rel(wp_prime(z, sq), {12.822790453615713, 45.83888817832227}), 1e-10);
  EXPECT_LT(rel(wp_eval(z, wp_invariants(1.5)), {3.1445134478419815, -6.2064580350052929}), 1e-11);
}

TEST(Wp, ParityAndPeriodicity) {
  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  for (double tau : {1.0, 1.5}) {
    const auto lat = wp_invariants(tau);
    for (int k = 0; k < 30; ++k) {
      const cplx z{u(rng), u(rng)};
      const cplx w = wp_eval(z, lat);
      EXPECT_LT(std::abs(wp_eval(-z, lat) - w), 1e-9 * std::abs(w));
      EXPECT_LT(std::abs(wp_prime(-z, lat) + wp_prime(z, lat)), 1e-9 * std::abs(wp_prime(z, lat)));
      EXPECT_LT(std::abs(wp_eval(z + 1.0, lat) - w), 1e-9 * std::abs(w));
      EXPECT_LT(std::abs(wp_eval(z + cplx{0, tau}, lat) - w), 1e-9 * std::abs(w));
    }
  }
}

TEST(Wp, DifferentialEquation) {
  for (double tau : {1.0, 1.5}) {
    const auto lat = wp_invariants(tau);
    std::mt19937_64 rng(9);
    std::uniform_real_distribution<double> u(0.02, 0.98);
    for (int k = 0; k < 1000; ++k) {
      const cplx z{u(rng), tau * u(rng)};
      const auto v = wp_evaluate(z, lat);
      const cplx w = v.value;
      const double scale = std::norm(v.derivative) + 4 * std::pow(std::abs(w), 3) + std::abs(lat.g2 * w) + std::abs(lat.g3);
      ASSERT_LT(std::abs(v.derivative * v.derivative - (4.0 * w * w * w - lat.g2 * w - lat.g3)) / scale, 1e-8) << z;
    }
  }
}

TEST(Wp, HalfPeriodIsACubicRoot) {
  const auto lat = wp_invariants(1.0);
  const cplx e1 = wp_eval(0.5, lat);
  EXPECT_LT(std::abs(e1.imag()), 1e-12);
  EXPECT_LT(std::abs(4.0 * e1 * e1 * e1 - lat.g2 * e1 - lat.g3), 1e-8);
  EXPECT_LT(std::abs(wp_prime(0.5, lat)), 1e-8);
}

TEST(Wp, RowAndLaurentRoutesAgree) {
  const auto lat = wp_invariants(1.0);
  for (cplx z : {cplx{0.1, 0.05}, cplx{-0.2, 0.15}, cplx{0.3, -0.1}}) {
    const auto a = wp_evaluate_rows(z, lat), b = wp_evaluate_laurent(z, lat);
    EXPECT_LT(std::abs(a.value - b.value), 1e-10 * std::abs(a.value));
    EXPECT_LT(std::abs(a.derivative - b.derivative), 1e-9 * std::abs(a.derivative));
  }
}

TEST(Wp, RealOnHalfPeriodLines) {
  for (double tau : {1.0, 1.5}) {
    const auto lat = wp_invariants(tau);
    for (int k = 1; k < 40; ++k) {
      const double s = k / 40.0;
      for (cplx z : {cplx{s, 0}, cplx{s, tau / 2}, cplx{0, tau * s}, cplx{0.5, tau * s}}) {
        const cplx w = wp_eval(z, lat);
        EXPECT_LT(std::abs(w.imag()), 1e-9 * std::max(1.0, std::abs(w))) << z;
      }
    }
  }
}

TEST(Wp, PoleProximity) {
  const auto lat = wp_invariants(1.0);
  EXPECT_THROW(wp_eval({1.0, 1e-10}, lat), PoleProximityError);
}

TEST(Wp, ImaginaryArgumentEquation) {
  // f(x) = wp(i x) satisfies f'^2 = -4 f^3 + g2 f + g3.
  const auto lat = wp_invariants(1.5);
  for (double x : {0.2, 0.45, 0.7, 1.1}) {
    const auto v = wp_evaluate({0.0, x}, lat);
    const cplx f = v.value, df = I * v.derivative;
    EXPECT_LT(std::abs(df * df - (-4.0 * f * f * f + lat.g2 * f + lat.g3)), 1e-8 * std::abs(df * df));
  }
}
