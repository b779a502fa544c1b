#include "mzl/weierstrass.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "mzl/error.hpp"

namespace mzl {
namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr int kLaurentTerms = 60;

// 2 zeta(4), 2 zeta(6).
constexpr double kTwoZeta4 = 2.0 * 1.0823232337111382;
constexpr double kTwoZeta6 = 2.0 * 1.0173430619844491;

struct EisensteinSum {
  cplx value;
  int rows;
};

// G_k(<1, i tau>) = 2 zeta(k) + 2 (-2 pi i)^k / (k-1)! sum_{n>=1} sum_{r>=1} r^{k-1} e^{-2 pi r n tau}.
EisensteinSum lattice_eisenstein(int k, double tau, double tol) {
  const double two_zeta = k == 4 ? kTwoZeta4 : kTwoZeta6;
  const double fact = std::tgamma(static_cast<double>(k));
  const cplx prefactor = 2.0 * std::pow(cplx{0.0, -two_pi}, k) / fact;
  const double pref_abs = std::abs(prefactor);

  // Rows beyond N: tail <= |prefactor| (k-1)! / (1 - x)^k * e^{-2 pi tau N} / (2 pi tau).
  int rows = 1;
  for (;; ++rows) {
    const double x = std::exp(-two_pi * tau * (rows + 1));
    const double tail = pref_abs * fact / std::pow(1.0 - x, k) * std::exp(-two_pi * tau * rows) /
                        (two_pi * tau);
    if (tail < tol || rows > 100000) break;
  }

  cplx total{};
  for (int n = rows; n >= 1; --n) {
    // Lipschitz row sum, smallest terms first.
    const cplx x = std::exp(cplx{0.0, two_pi} * cplx{0.0, n * tau});
    const double ax = std::abs(x);
    int r_max = 1;
    while (true) {
      const double rr = r_max;
      const double term = std::pow(rr, k - 1) * std::pow(ax, rr);
      const double ratio = std::pow((rr + 1.0) / rr, k - 1) * ax;
      if (ratio < 1.0 && term / (1.0 - ratio) < 1e-18 * ax) break;
      ++r_max;
    }
    cplx row{};
    for (int r = r_max; r >= 1; --r) row += std::pow(static_cast<double>(r), k - 1) * std::pow(x, r);
    total += row;
  }
  return {two_zeta + prefactor * total, rows};
}

WpValue laurent_eval(cplx w, const LatticeParams& L, double tol) {
  const double aw = std::abs(w);
  if (!(aw < L.laurent_radius)) throw DomainError("wp: Laurent route outside its disc");
  const double s2 = (aw / L.laurent_radius) * (aw / L.laurent_radius);
  int terms = static_cast<int>(L.laurent.size());
  for (int k = 1; k <= static_cast<int>(L.laurent.size()); ++k) {
    const double tail = L.laurent_bound * std::pow(s2, k + 1) / (1.0 - s2);
    if (tail < tol) {
      terms = k;
      break;
    }
  }
  const cplx w2 = w * w;
  cplx v{}, d{};
  double scale = 0.0;
  for (int k = terms; k >= 1; --k) {
    const double c = L.laurent[k - 1];
    v = v * w2 + c;
    d = d * w2 + 2.0 * k * c;
    scale = scale * aw * aw + std::abs(c);
  }
  v *= w2;
  d *= w;
  scale *= aw * aw;
  const cplx inv2 = 1.0 / w2;
  return {inv2 + v, -2.0 * inv2 / w + d, w, std::abs(inv2) + scale};
}

WpValue rows_eval(cplx w, const LatticeParams& L) {
  const double tau = L.tau;
  const int n_max = static_cast<int>(std::ceil((std::abs(w.imag()) + 7.0) / tau));
  cplx v{}, d{};
  double scale = std::abs(L.row_constant);
  const double pi2 = pi * pi, pi3 = pi2 * pi;
  for (int n = -n_max; n <= n_max; ++n) {
    const cplx u = pi * (w - cplx{0.0, n * tau});
    const cplx s = std::sin(u);
    const cplx c = std::cos(u);
    const cplx s2 = s * s;
    const cplx term = pi2 / s2;
    v += term;
    d += -2.0 * pi3 * c / (s2 * s);
    scale += std::abs(term);
  }
  return {v - L.row_constant, d, w, scale};
}

cplx reduce(cplx z, double tau) {
  const double m = std::round(z.real());
  const double n = std::round(z.imag() / tau);
  return z - cplx{m, n * tau};
}

}  // namespace

LatticeParams wp_invariants(double tau, const LatticeOptions& opts) {
  if (!(tau >= opts.min_tau && tau <= opts.max_tau))
    throw DomainError("wp_invariants: tau outside the supported range");
  LatticeParams L;
  L.tau = tau;
  const auto g4 = lattice_eisenstein(4, tau, opts.sum_tol / 60.0);
  const auto g6 = lattice_eisenstein(6, tau, opts.sum_tol / 140.0);
  L.g2 = 60.0 * g4.value.real();
  L.g3 = 140.0 * g6.value.real();
  L.g2_imag = 60.0 * g4.value.imag();
  L.g3_imag = 140.0 * g6.value.imag();
  if (std::abs(L.g2_imag) > 1e-12 * std::max(1.0, std::abs(L.g2)) ||
      std::abs(L.g3_imag) > 1e-12 * std::max(1.0, std::abs(L.g3)))
    throw Error("wp_invariants: lattice sums have non-negligible imaginary parts");

  // Row expansion constant: pi^2/3 + sum_{n != 0} pi^2 / sin^2(i pi n tau).
  double c = pi * pi / 3.0;
  for (int n = 1; n < 100000; ++n) {
    const double sh = std::sinh(pi * n * tau);
    const double term = 2.0 * pi * pi / (sh * sh);
    c -= term;
    if (term < 1e-18) break;
  }
  L.row_constant = c;

  // Laurent coefficients: c1 = g2/20, c2 = g3/28,
  // c_k = 3 / ((2k+3)(k-2)) sum_{m=1}^{k-2} c_m c_{k-1-m}.
  L.laurent.assign(kLaurentTerms, 0.0);
  L.laurent[0] = L.g2 / 20.0;
  L.laurent[1] = L.g3 / 28.0;
  for (int k = 3; k <= kLaurentTerms; ++k) {
    double s = 0.0;
    for (int m = 1; m <= k - 2; ++m) s += L.laurent[m - 1] * L.laurent[k - 1 - m - 1];
    L.laurent[k - 1] = 3.0 / ((2.0 * k + 3.0) * (k - 2.0)) * s;
  }

  // Cauchy majorant on a circle inside the disc of convergence, sampled
  // through the independent row expansion.
  L.laurent_radius = 0.9 * L.min_period();
  double m = 0.0;
  for (int k = 0; k < 64; ++k) {
    const cplx z = std::polar(L.laurent_radius, two_pi * (k + 0.5) / 64.0);
    const WpValue v = rows_eval(z, L);
    m = std::max(m, std::abs(v.value - 1.0 / (z * z)));
  }
  L.laurent_bound = 1.5 * m;

  L.e1 = wp_evaluate(cplx{0.5, 0.0}, L).value.real();
  return L;
}

WpValue wp_evaluate(cplx z, const LatticeParams& L, const WpOptions& opts) {
  const cplx w = reduce(z, L.tau);
  const double aw = std::abs(w);
  if (aw < opts.pole_tol) throw PoleProximityError("wp: point too close to a lattice pole", aw);
  const double laurent_limit = std::min(opts.laurent_fraction * L.min_period(), 0.99 * L.laurent_radius);
  WpValue v = aw <= laurent_limit ? laurent_eval(w, L, opts.laurent_tol) : rows_eval(w, L);
  v.reduced = w;
  return v;
}

WpValue wp_evaluate_rows(cplx z, const LatticeParams& L) { return rows_eval(reduce(z, L.tau), L); }

WpValue wp_evaluate_laurent(cplx z, const LatticeParams& L, double tol) {
  return laurent_eval(z, L, tol);
}

AnalyticFn wp_function(LatticeParams lattice, const WpOptions& opts) {
  return [L = std::move(lattice), opts](cplx z) {
    const WpValue v = wp_evaluate(z, L, opts);
    return Jet{v.value, v.derivative, v.scale};
  };
}

}  // namespace mzl
