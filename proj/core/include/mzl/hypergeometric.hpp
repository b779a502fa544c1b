#pragma once

#include <utility>

#include "mzl/analytic.hpp"

namespace mzl {

struct Hyp2f1Options {
  /// Arguments with |z| > 1 - delta are refused (precision-loss error).
  double delta = 1e-3;
  /// Target: tail bound <= rel_tol * |value|.
  double rel_tol = 1e-14;
  int max_terms = 2'000'000;
};

/// Truncated 2F1 series: value, term-wise derivative and a rigorous
/// geometric majorant of the discarded tail of each.
struct Hyp2f1Value {
  cplx value;
  cplx derivative;
  double tail_bound;
  double derivative_tail_bound;
  int terms;
};

/// Gauss hypergeometric series sum (a)_n (b)_n / ((c)_n n!) z^n.
Hyp2f1Value hyp2f1_series(double a, double b, double c, cplx z, const Hyp2f1Options& opts = {});

inline cplx hyp2f1(double a, double b, double c, cplx z, const Hyp2f1Options& opts = {}) {
  return hyp2f1_series(a, b, c, z, opts).value;
}

/// (c - 1) * 2F1(a, b; c - 1; z), summed so that c = 1 is admissible (the
/// removable singularity of 2F1 at c - 1 = 0 is divided out term-wise).
cplx scaled_lower_contiguous(double a, double b, double c, cplx z, const Hyp2f1Options& opts = {});

/// Residuals of the two contiguous relations, relative to max(1, size of the terms),
///   z F' = (c - 1)(F(c-) - F)
///   z F' = z [(c - a)(c - b) F(c+) + c (a + b - c) F] / (c (1 - z))
/// with F' from term-wise differentiation.
std::pair<double, double> gauss_relation_residuals(double a, double b, double c, double z,
                                                   const Hyp2f1Options& opts = {});

}  // namespace mzl
