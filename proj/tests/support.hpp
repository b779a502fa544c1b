#pragma once

#include <cmath>
#include <complex>
#include <vector>

#include "mzl/analytic.hpp"

namespace mzl::test {

inline AnalyticFn identity_fn() {
  return [](cplx z) { return Jet{z, 1.0, std::abs(z)}; };
}

/// Polynomial in z with the given roots (with repetition) times `lead`.
inline AnalyticFn roots_fn(std::vector<cplx> roots, cplx lead = 1.0) {
  return [roots, lead](cplx z) {
    cplx v = lead, d = 0.0;
    for (cplx r : roots) {
      d = d * (z - r) + v;
      v *= z - r;
    }
    return Jet{v, d, std::abs(v) + 1.0};
  };
}

inline AnalyticFn exp_fn() {
  return [](cplx z) {
    const cplx e = std::exp(z);
    return Jet{e, e, std::abs(e)};
  };
}

inline AnalyticFn constant_fn(cplx c) {
  return [c](cplx) { return Jet{c, 0.0, std::abs(c)}; };
}

}  // namespace mzl::test
