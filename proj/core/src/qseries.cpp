#include "mzl/qseries.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <boost/multiprecision/cpp_int.hpp>

#include "mzl/error.hpp"
#include "mzl/hypergeometric.hpp"

namespace mzl {
namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr int kEisensteinOrder = 4096;
constexpr int kJOrder = 120;

// zeta(3), zeta(5): sigma_k(n) <= zeta(k) n^k.
constexpr double kZeta3 = 1.2020569031595943;
constexpr double kZeta5 = 1.0369277551433699;

std::vector<double> divisor_sums(int n_max, int k) {
  std::vector<double> s(n_max + 1, 0.0);
  for (int d = 1; d <= n_max; ++d) {
    const double dk = std::pow(static_cast<double>(d), k);
    for (int m = d; m <= n_max; m += d) s[m] += dk;
  }
  return s;
}

QSeries make_eisenstein(double sign_factor, int k, double zeta_k) {
  const auto sigma = divisor_sums(kEisensteinOrder, k);
  std::vector<double> c(kEisensteinOrder + 1);
  c[0] = 1.0;
  for (int n = 1; n <= kEisensteinOrder; ++n) c[n] = sign_factor * sigma[n];
  return QSeries(std::move(c), 0, {std::abs(sign_factor) * zeta_k, static_cast<double>(k), 0.0});
}

using boost::multiprecision::cpp_int;

std::vector<cpp_int> exact_eisenstein(int order, int k, int factor) {
  std::vector<cpp_int> c(order + 1);
  c[0] = 1;
  for (int n = 1; n <= order; ++n) {
    cpp_int s = 0;
    for (int d = 1; d <= n; ++d)
      if (n % d == 0) s += boost::multiprecision::pow(cpp_int(d), k);
    c[n] = factor * s;
  }
  return c;
}

std::vector<cpp_int> mul_trunc(const std::vector<cpp_int>& a, const std::vector<cpp_int>& b,
                               int order) {
  std::vector<cpp_int> out(order + 1);
  for (int i = 0; i <= order; ++i)
    for (int j = 0; i + j <= order; ++j) out[i + j] += a[i] * b[j];
  return out;
}

QSeries make_j_series() {
  // j = Q^3 / Delta with Delta = (Q^3 - R^2)/1728 = q (1 - 24 q + ...).
  const int order = kJOrder + 1;
  const auto q = exact_eisenstein(order, 3, 240);
  const auto r = exact_eisenstein(order, 5, -504);
  const auto q3 = mul_trunc(mul_trunc(q, q, order), q, order);
  const auto r2 = mul_trunc(r, r, order);
  // d_k = coefficient of q^{k+1} in Delta, so Delta = q * sum d_k q^k.
  std::vector<cpp_int> d(kJOrder + 1);
  for (int k = 0; k <= kJOrder; ++k) {
    cpp_int num = q3[k + 1] - r2[k + 1];
    if (num % 1728 != 0) throw Error("j_series: Q^3 - R^2 not divisible by 1728");
    d[k] = num / 1728;
  }
  if (d[0] != 1) throw Error("j_series: Delta does not start with q");
  // Exact division of power series (d_0 = 1).
  std::vector<cpp_int> jc(kJOrder + 1);
  for (int k = 0; k <= kJOrder; ++k) {
    cpp_int acc = q3[k];
    for (int m = 1; m <= k; ++m) acc -= d[m] * jc[k - m];
    jc[k] = acc;
  }
  std::vector<double> c(kJOrder + 1);
  for (int k = 0; k <= kJOrder; ++k) c[k] = jc[k].convert_to<double>();
  // c(n) <= exp(4 pi sqrt(n)) for n >= 1.
  return QSeries(std::move(c), -1, {1.0, 0.0, 4.0 * pi});
}

}  // namespace

QSeries::QSeries(std::vector<double> coeffs, int first_index, Majorant majorant)
    : coeffs_(std::move(coeffs)), first_(first_index), majorant_(majorant) {
  if (coeffs_.empty()) throw DomainError("QSeries: no coefficients");
}

double QSeries::coefficient(int n) const {
  if (n < first_ || n > truncation_order()) return 0.0;
  return coeffs_[n - first_];
}

double QSeries::tail_bound(double abs_q, int order, int k) const {
  if (abs_q == 0.0) return 0.0;
  const double lr = std::log(abs_q);
  const double la = std::log(majorant_.amplitude);
  const double p = majorant_.power + k;
  const double b = majorant_.root_exponent;
  double total = 0.0;
  for (long n = std::max(order + 1, 1); n < order + 1'000'000; ++n) {
    const double dn = static_cast<double>(n);
    const double log_term = la + p * std::log(dn) + b * std::sqrt(dn) + dn * lr;
    const double term = std::exp(log_term);
    const double ratio =
        std::pow((dn + 1.0) / dn, p) * std::exp(b * (std::sqrt(dn + 1.0) - std::sqrt(dn))) * abs_q;
    if (ratio < 1.0) return total + term / (1.0 - ratio);
    total += term;
    if (!std::isfinite(total)) break;
  }
  return std::numeric_limits<double>::infinity();
}

QSeries::Estimate QSeries::sum(cplx q, double abs_tol, bool weighted) const {
  const double r = std::abs(q);
  const int k = weighted ? 1 : 0;
  int order = truncation_order();
  double tail = tail_bound(r, order, k);
  // Shortest truncation meeting the tolerance.
  if (tail <= abs_tol) {
    for (int n = std::max(first_, 0); n < truncation_order(); ++n) {
      const double t = tail_bound(r, n, k);
      if (t <= abs_tol) {
        order = n;
        tail = t;
        break;
      }
    }
  }
  cplx acc{};
  double scale = 0.0;
  for (int n = order; n >= first_; --n) {
    const double c = weighted ? n * coeffs_[n - first_] : coeffs_[n - first_];
    acc = acc * q + c;
    scale = scale * r + std::abs(c);
  }
  if (first_ != 0) {
    const cplx shift = std::pow(q, first_);
    acc *= shift;
    scale *= std::pow(r, first_);
  }
  const int terms = order - first_ + 1;
  return {acc, tail + 2.0 * terms * kEps * scale, scale, terms};
}

QSeries::Estimate QSeries::evaluate(cplx q, double abs_tol) const { return sum(q, abs_tol, false); }

QSeries::Estimate QSeries::evaluate_q_derivative(cplx q, double abs_tol) const {
  return sum(q, abs_tol, true);
}

const QSeries& eisenstein_q_series() {
  static const QSeries s = make_eisenstein(240.0, 3, kZeta3);
  return s;
}

const QSeries& eisenstein_r_series() {
  static const QSeries s = make_eisenstein(-504.0, 5, kZeta5);
  return s;
}

const QSeries& j_series() {
  static const QSeries s = make_j_series();
  return s;
}

QSeries::Estimate eisenstein_Q(cplx q, const EisensteinOptions& opts) {
  if (!(std::abs(q) <= opts.max_abs_q)) throw DomainError("eisenstein_Q: |q| out of range");
  return eisenstein_q_series().evaluate(q, opts.abs_tol);
}

QSeries::Estimate eisenstein_R(cplx q, const EisensteinOptions& opts) {
  if (!(std::abs(q) <= opts.max_abs_q)) throw DomainError("eisenstein_R: |q| out of range");
  return eisenstein_r_series().evaluate(q, opts.abs_tol);
}

namespace {

cplx nome(cplx tau) { return std::exp(cplx{0.0, two_pi} * tau); }

// (Q^3 - R^2) / 1728 = q prod (1 - q^n)^24, free of the cancellation in the
// difference once |q| is small. Returns the value and a relative error bound.
std::pair<cplx, double> delta_product(cplx q) {
  const double aq = std::abs(q);
  cplx prod = 1.0;
  cplx qn = q;
  double an = aq;
  int n = 1;
  for (; an > kEps * 1e-3 && n < 10000; ++n, qn *= q, an *= aq) prod *= 1.0 - qn;
  // Tail: |log prod_{m >= n} (1 - q^m)| <= an / ((1 - aq)(1 - an)).
  const double tail = 24.0 * an / ((1.0 - aq) * (1.0 - an));
  const cplx p2 = prod * prod, p4 = p2 * p2, p8 = p4 * p4, p16 = p8 * p8;
  return {q * p16 * p8, tail + 64.0 * n * kEps};
}

void check_tau(cplx tau, const KleinJOptions& opts) {
  if (!(tau.imag() >= opts.min_imag))
    throw DomainError("klein_j: Im tau below the supported minimum");
}

}  // namespace

KleinJValue klein_j_value(cplx tau, const KleinJOptions& opts) {
  check_tau(tau, opts);
  const cplx q = nome(tau);
  const EisensteinOptions eo{1.0, opts.series_tol};
  const auto Q = eisenstein_Q(q, eo);
  const auto R = eisenstein_R(q, eo);
  const cplx q3 = Q.value * Q.value * Q.value;
  const cplx r2 = R.value * R.value;
  const double aq = std::abs(Q.value), ar = std::abs(R.value);
  // Use the product form of Q^3 - R^2 when the direct difference cancels.
  const cplx diff = q3 - r2;
  const auto [delta, delta_rel] = delta_product(q);
  const bool product = std::abs(diff) < 0.5 * (aq * aq * aq + ar * ar);
  const cplx den = product ? 1728.0 * delta : diff;
  const double aden = std::abs(den);
  if (aden < opts.singular_tol) throw SingularDenominatorError("klein_j: Q^3 - R^2 vanishes");
  const cplx j = 1728.0 * q3 / den;

  double scale, err;
  if (product) {
    scale = 1728.0 * 3.0 * aq * aq * Q.scale / aden + std::abs(j);
    err = 3.0 * std::abs(j) / std::max(aq, 1e-300) * Q.error_bound + std::abs(j) * delta_rel + 8.0 * kEps * scale;
  } else {
    // Noise from Q^3 (absolute) and from the cancellation in Q^3 - R^2.
    scale = (1728.0 * 3.0 * aq * aq * Q.scale + std::abs(j) * (aq * aq * aq + ar * ar)) / aden;
    const double djdq = 1728.0 * 3.0 * aq * aq * ar * ar / (aden * aden);
    const double djdr = 1728.0 * 2.0 * aq * aq * aq * ar / (aden * aden);
    err = djdq * Q.error_bound + djdr * R.error_bound + 8.0 * kEps * scale;
  }
  return {j, err, scale};
}

KleinJValue klein_j_derivative_value(cplx tau, const KleinJOptions& opts) {
  check_tau(tau, opts);
  const cplx q = nome(tau);
  const auto s = j_series().evaluate_q_derivative(q, opts.series_tol);
  const cplx factor{0.0, two_pi};
  return {factor * s.value, two_pi * s.error_bound, two_pi * s.scale};
}

Jet klein_j_jet(cplx tau, const KleinJOptions& opts) {
  const auto v = klein_j_value(tau, opts);
  const auto d = klein_j_derivative_value(tau, opts);
  return {v.value, d.value, v.scale};
}

AnalyticFn klein_j_function(const KleinJOptions& opts) {
  return [opts](cplx tau) { return klein_j_jet(tau, opts); };
}

JInverseValue j_inverse_value(double x, const JInverseOptions& opts) {
  if (!(x >= 1728.0)) throw DomainError("j_inverse: x must be >= 1728");
  if (x == 1728.0) return {1.0, 0.0, false};
  if (x > opts.asymptotic_threshold) {
    // j(it) = e^{2 pi t} + 744 + O(e^{-2 pi t}).
    const double t = std::log(x - 744.0) / two_pi;
    return {t, 196884.0 * std::exp(-2.0 * two_pi * t) / (two_pi * (x - 744.0)), true};
  }
  const double y = std::sqrt(1.0 - 1728.0 / x);
  const Hyp2f1Options ho{opts.series_delta, opts.rel_tol};
  const auto num = hyp2f1_series(1.0 / 6.0, 5.0 / 6.0, 1.0, 0.5 + 0.5 * y, ho);
  const auto den = hyp2f1_series(1.0 / 6.0, 5.0 / 6.0, 1.0, 0.5 - 0.5 * y, ho);
  const double v = num.value.real() / den.value.real();
  const double err = v * (num.tail_bound / std::abs(num.value) + den.tail_bound / std::abs(den.value)) +
                     4.0 * kEps * v;
  return {v, err, false};
}

double ramanujan_q(double x) {
  if (!(x >= 1e-3 && x <= 1.0 - 1e-3))
    throw PrecisionLossError("ramanujan_q: x must stay 1e-3 away from 0 and 1", 0.0);
  const Hyp2f1Options ho{1e-4, 1e-15};
  const double a = hyp2f1(1.0 / 6.0, 5.0 / 6.0, 1.0, 1.0 - x, ho).real();
  const double b = hyp2f1(1.0 / 6.0, 5.0 / 6.0, 1.0, x, ho).real();
  return std::exp(-two_pi * a / b);
}

double ramanujan_inversion_residual(double x) {
  const double q = ramanujan_q(x);
  const cplx Q = eisenstein_Q(q).value;
  const cplx R = eisenstein_R(q).value;
  const cplx q3 = Q * Q * Q;
  return std::abs(x * (1.0 - x) - (q3 - R * R) / (4.0 * q3));
}

}  // namespace mzl
