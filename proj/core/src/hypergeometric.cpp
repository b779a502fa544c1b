#include "mzl/hypergeometric.hpp"

#include <cmath>
#include <limits>

#include "mzl/error.hpp"

namespace mzl {
namespace {

bool non_positive_integer(double c) { return c <= 0.0 && c == std::floor(c); }

// Sums t_n for n >= n_first where t_{n+1} = t_n * (a+n)(b+n)/((c+n)(n+1)) * z.
// Also accumulates n t_n / z (the term-wise derivative) when z != 0.
struct RatioSum {
  cplx sum{};
  cplx dsum{};
  double tail = 0.0;
  double dtail = 0.0;
  int terms = 0;
  bool converged = false;
};

RatioSum sum_ratio_series(double a, double b, double c, cplx z, cplx first, int n_first,
                          double rel_tol, int max_terms) {
  RatioSum out;
  const double az = std::abs(z);
  cplx t = first;
  for (int n = n_first; n < n_first + max_terms; ++n) {
    out.sum += t;
    if (n > 0) out.dsum += static_cast<double>(n) * t;
    ++out.terms;
    // Next term.
    const double dn = n;
    t *= (a + dn) * (b + dn) / ((c + dn) * (dn + 1.0)) * z;
    if (t == cplx{}) {
      out.converged = true;
      out.tail = out.dtail = 0.0;
      break;
    }
    // Majorant for the ratio |t_{m+1}/t_m| over m >= n + 1.
    const double m = dn + 1.0;
    if (m + c <= 0.0) continue;
    const double rho = az * std::max(1.0, (std::abs(a) + m) / (m + 1.0)) *
                       std::max(1.0, (std::abs(b) + m) / (m + c));
    if (rho >= 1.0) continue;
    const double at = std::abs(t);
    out.tail = at / (1.0 - rho);
    const double drho = rho * (m + 1.0) / m;
    out.dtail = drho < 1.0 ? at * m / (1.0 - drho) : std::numeric_limits<double>::infinity();
    const double scale = std::max(std::abs(out.sum), std::numeric_limits<double>::min());
    const double dscale = std::max(std::abs(out.dsum), scale * 1e-300);
    if (out.tail <= rel_tol * scale && out.dtail <= rel_tol * dscale) {
      out.converged = true;
      break;
    }
  }
  return out;
}

}  // namespace

Hyp2f1Value hyp2f1_series(double a, double b, double c, cplx z, const Hyp2f1Options& opts) {
  if (non_positive_integer(c)) throw DomainError("hyp2f1: c is a non-positive integer");
  const double az = std::abs(z);
  if (az >= 1.0) throw DomainError("hyp2f1: |z| >= 1 is outside the disc of convergence");

  const bool near_boundary = az > 1.0 - opts.delta;
  const int cap = near_boundary ? std::min(opts.max_terms, 10'000) : opts.max_terms;
  const RatioSum s = sum_ratio_series(a, b, c, z, cplx{1.0, 0.0}, 0, opts.rel_tol, cap);
  if (near_boundary || !s.converged) {
    throw PrecisionLossError("hyp2f1: |z| too close to 1 for the series", s.tail);
  }
  Hyp2f1Value v;
  v.value = s.sum;
  v.terms = s.terms;
  v.tail_bound = s.tail;
  if (az == 0.0) {
    v.derivative = a * b / c;
    v.derivative_tail_bound = 0.0;
  } else {
    v.derivative = s.dsum / z;
    v.derivative_tail_bound = s.dtail / az;
  }
  return v;
}

cplx scaled_lower_contiguous(double a, double b, double c, cplx z, const Hyp2f1Options& opts) {
  // (c-1) F(a,b;c-1;z) = (c-1) + sum_{n>=1} (a)_n (b)_n / ((c)_{n-1} n!) z^n.
  // The n >= 1 part is a ratio series with lower parameter c - 1 started at
  // t_1 = a b z.
  if (non_positive_integer(c)) throw DomainError("scaled_lower_contiguous: c is a non-positive integer");
  if (std::abs(z) >= 1.0 - opts.delta)
    throw PrecisionLossError("scaled_lower_contiguous: |z| too close to 1", 0.0);
  const RatioSum s =
      sum_ratio_series(a, b, c - 1.0, z, a * b * z, 1, opts.rel_tol, opts.max_terms);
  if (!s.converged) throw PrecisionLossError("scaled_lower_contiguous: series did not converge", s.tail);
  return (c - 1.0) + s.sum;
}

std::pair<double, double> gauss_relation_residuals(double a, double b, double c, double z,
                                                   const Hyp2f1Options& opts) {
  if (!(z >= 0.0 && z < 1.0)) throw DomainError("gauss_relation_residuals: z must lie in [0, 1)");
  const Hyp2f1Value f = hyp2f1_series(a, b, c, z, opts);
  const cplx f_up = hyp2f1(a, b, c + 1.0, z, opts);
  const cplx lower = scaled_lower_contiguous(a, b, c, z, opts);
  const cplx lhs = z * f.derivative;
  const cplx rhs1 = lower - (c - 1.0) * f.value;
  const cplx rhs2 = z * ((c - a) * (c - b) * f_up + c * (a + b - c) * f.value) / (c * (1.0 - z));
  // Relative once the terms exceed 1: near z = 1 with a + b - c large, z F'
  // reaches 1e8 and absolute rounding alone is above any fixed target.
  const auto resid = [&](cplx rhs) { return std::abs(lhs - rhs) / std::max(1.0, std::abs(lhs) + std::abs(rhs)); };
  return {resid(rhs1), resid(rhs2)};
}

}  // namespace mzl
