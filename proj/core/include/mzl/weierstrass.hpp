#pragma once

#include <vector>

#include "mzl/analytic.hpp"

namespace mzl {

struct LatticeOptions {
  double min_tau = 0.1;
  double max_tau = 10.0;
  double sum_tol = 1e-13;
};

/// Invariants and cached expansion data for the lattice <1, i tau>, tau real.
struct LatticeParams {
  double tau = 1.0;
  double g2 = 0.0;
  double g3 = 0.0;
  /// e1 = wp(1/2), the real half-period value on the real period.
  double e1 = 0.0;
  /// Laurent coefficients c_k of wp(z) - 1/z^2 = sum_{k>=1} c_k z^{2k}; laurent[0] = c_1.
  std::vector<double> laurent;
  /// Majorant |wp(z) - 1/z^2| <= laurent_bound on |z| = laurent_radius.
  double laurent_radius = 0.0;
  double laurent_bound = 0.0;
  /// Constant of the trigonometric row expansion (includes the n = 0 row's pi^2/3).
  double row_constant = 0.0;
  /// Imaginary parts of the raw Eisenstein sums G4, G6 (should vanish).
  double g2_imag = 0.0;
  double g3_imag = 0.0;

  double min_period() const noexcept { return tau < 1.0 ? tau : 1.0; }
};

/// g2 = 60 G4, g3 = 140 G6 for <1, i tau>.
///
/// The lattice sum is taken row by row (sum over the real period first), each
/// row in its exponentially convergent Lipschitz form; rows are truncated
/// where an integral comparison bounds the remainder below `sum_tol`.
LatticeParams wp_invariants(double tau, const LatticeOptions& opts = {});

struct WpOptions {
  double pole_tol = 1e-8;
  /// Reduced |z| up to this fraction of the min period uses the Laurent series.
  double laurent_fraction = 0.45;
  double laurent_tol = 1e-11;
};

struct WpValue {
  cplx value;
  cplx derivative;
  cplx reduced;  ///< z reduced to the cell around its nearest lattice point
  double scale;
};

WpValue wp_evaluate(cplx z, const LatticeParams& lattice, const WpOptions& opts = {});
inline cplx wp_eval(cplx z, const LatticeParams& lattice, const WpOptions& opts = {}) {
  return wp_evaluate(z, lattice, opts).value;
}
inline cplx wp_prime(cplx z, const LatticeParams& lattice, const WpOptions& opts = {}) {
  return wp_evaluate(z, lattice, opts).derivative;
}

/// Row expansion wp(z) = sum_n pi^2 / sin^2(pi (z - i n tau)) - const, used
/// away from the poles. Exposed so the two evaluation routes can be compared.
WpValue wp_evaluate_rows(cplx z, const LatticeParams& lattice);
/// Laurent route; requires |z| < laurent_radius.
WpValue wp_evaluate_laurent(cplx z, const LatticeParams& lattice, double tol = 1e-11);

AnalyticFn wp_function(LatticeParams lattice, const WpOptions& opts = {});

}  // namespace mzl
