#pragma once

#include <vector>

#include "mzl/analytic.hpp"

namespace mzl {

/// Truncated q-series sum_{n=n0}^{N} a_n q^n with a geometric majorant for
/// the discarded tail.
///
/// The majorant assumes |a_n| <= A n^p exp(B sqrt(n)) for every n > N. The
/// series evaluators pick the shortest truncation whose tail bound meets the
/// requested absolute tolerance.
class QSeries {
public:
  struct Majorant {
    double amplitude = 1.0;
    double power = 0.0;
    double root_exponent = 0.0;
  };

  struct Estimate {
    cplx value;
    double error_bound;  ///< tail bound plus rounding estimate
    double scale;        ///< sum of |a_n q^n| over the terms used
    int terms;
  };

  QSeries(std::vector<double> coeffs, int first_index, Majorant majorant);

  int first_index() const noexcept { return first_; }
  int truncation_order() const noexcept { return first_ + static_cast<int>(coeffs_.size()) - 1; }
  double coefficient(int n) const;
  const Majorant& majorant() const noexcept { return majorant_; }

  /// Bound on sum_{n > order} n^k |a_n| r^n, k in {0, 1}; +inf if the
  /// majorant does not converge at r.
  double tail_bound(double abs_q, int order, int k = 0) const;
  double tail_bound(double abs_q) const { return tail_bound(abs_q, truncation_order()); }

  Estimate evaluate(cplx q, double abs_tol) const;
  /// q d/dq of the series: sum n a_n q^n.
  Estimate evaluate_q_derivative(cplx q, double abs_tol) const;

private:
  Estimate sum(cplx q, double abs_tol, bool weighted) const;

  std::vector<double> coeffs_;
  int first_;
  Majorant majorant_;
};

/// Q(q) = 1 + 240 sum sigma_3(n) q^n.
const QSeries& eisenstein_q_series();
/// R(q) = 1 - 504 sum sigma_5(n) q^n.
const QSeries& eisenstein_r_series();
/// q-expansion of j, derived by dividing the Q^3 series by
/// Delta = (Q^3 - R^2) / 1728 in exact integer arithmetic.
const QSeries& j_series();

struct EisensteinOptions {
  double max_abs_q = 0.95;
  double abs_tol = 1e-16;
};

QSeries::Estimate eisenstein_Q(cplx q, const EisensteinOptions& opts = {});
QSeries::Estimate eisenstein_R(cplx q, const EisensteinOptions& opts = {});

struct KleinJOptions {
  double min_imag = 0.5;
  double series_tol = 1e-16;
  /// |Q^3 - R^2| below this is treated as a singular denominator.
  double singular_tol = 1e-200;
};

struct KleinJValue {
  cplx value;
  double error_bound;
  double scale;  ///< magnitude driving rounding noise in value
};

/// j(tau) = 1728 Q^3 / (Q^3 - R^2), q = exp(2 pi i tau).
KleinJValue klein_j_value(cplx tau, const KleinJOptions& opts = {});
inline cplx klein_j(cplx tau, const KleinJOptions& opts = {}) { return klein_j_value(tau, opts).value; }

/// dj/dtau = 2 pi i sum n c_n q^n from the j q-series.
KleinJValue klein_j_derivative_value(cplx tau, const KleinJOptions& opts = {});
inline cplx klein_j_derivative(cplx tau, const KleinJOptions& opts = {}) {
  return klein_j_derivative_value(tau, opts).value;
}

Jet klein_j_jet(cplx tau, const KleinJOptions& opts = {});
AnalyticFn klein_j_function(const KleinJOptions& opts = {});

struct JInverseOptions {
  /// Above this x the log-form asymptotic is used and flagged.
  double asymptotic_threshold = 1e6;
  double series_delta = 1e-5;
  double rel_tol = 1e-14;
};

struct JInverseValue {
  double value;
  double error_bound;
  bool asymptotic;
};

/// Inverse of t -> j(i t) on [1, inf) as a ratio of 2F1(1/6, 5/6; 1; .)
/// at 1/2 +- sqrt(1 - 1728/x)/2.
JInverseValue j_inverse_value(double x, const JInverseOptions& opts = {});
inline double j_inverse(double x, const JInverseOptions& opts = {}) {
  return j_inverse_value(x, opts).value;
}

/// |x(1-x) - (Q^3 - R^2)/(4 Q^3)| at q = exp(-2 pi F(1-x)/F(x)).
double ramanujan_inversion_residual(double x);
/// The q produced from x by the hypergeometric inversion formula.
double ramanujan_q(double x);

}  // namespace mzl
