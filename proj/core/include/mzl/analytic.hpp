#pragma once

#include <complex>
#include <functional>

namespace mzl {

using cplx = std::complex<double>;

/// Value and first derivative of an analytic function at a point.
///
/// `scale` is an estimate of the magnitude of the terms that were summed to
/// produce `value` (zero when unknown). Rounding noise in `value` is of
/// order machine epsilon times `scale`, which is what contour code uses to
/// decide whether a sample is numerically indistinguishable from a zero.
struct Jet {
  cplx value;
  cplx derivative;
  double scale = 0.0;
};

/// Handle to an analytic (or meromorphic, away from its poles) function.
using AnalyticFn = std::function<Jet(cplx)>;

inline constexpr double pi = 3.14159265358979323846;
inline constexpr double two_pi = 2.0 * pi;

}  // namespace mzl
