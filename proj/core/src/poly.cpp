#include "mzl/poly.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include <nlohmann/json.hpp>

#include "mzl/error.hpp"

namespace mzl {

BivariatePolynomial::BivariatePolynomial() : coeffs_(1, cplx{0.0, 0.0}) {}

BivariatePolynomial::BivariatePolynomial(int deg_x, int deg_y, std::vector<cplx> coeffs)
    : deg_x_(deg_x), deg_y_(deg_y), coeffs_(std::move(coeffs)) {
  if (deg_x < 0 || deg_y < 0)
    throw DomainError("polynomial degrees must be non-negative");
  if (coeffs_.size() != static_cast<std::size_t>((deg_x + 1) * (deg_y + 1)))
    throw DomainError("coefficient array does not match (deg_x+1) x (deg_y+1)");
  trim();
}

BivariatePolynomial BivariatePolynomial::from_rows(const std::vector<std::vector<cplx>>& rows) {
  if (rows.empty()) return {};
  const std::size_t width = rows.front().size();
  if (width == 0) throw DomainError("empty coefficient row");
  std::vector<cplx> flat;
  flat.reserve(rows.size() * width);
  for (const auto& r : rows) {
    if (r.size() != width) throw DomainError("ragged coefficient rows");
    flat.insert(flat.end(), r.begin(), r.end());
  }
  return {static_cast<int>(rows.size()) - 1, static_cast<int>(width) - 1, std::move(flat)};
}

BivariatePolynomial BivariatePolynomial::constant(cplx c) {
  return {0, 0, {c}};
}

BivariatePolynomial BivariatePolynomial::monomial(int i, int j, cplx c) {
  std::vector<cplx> v(static_cast<std::size_t>((i + 1) * (j + 1)), cplx{});
  v.back() = c;
  return {i, j, std::move(v)};
}

void BivariatePolynomial::trim() {
  auto row_zero = [&](int i) {
    for (int j = 0; j <= deg_y_; ++j)
      if (coeffs_[i * (deg_y_ + 1) + j] != cplx{}) return false;
    return true;
  };
  auto col_zero = [&](int j) {
    for (int i = 0; i <= deg_x_; ++i)
      if (coeffs_[i * (deg_y_ + 1) + j] != cplx{}) return false;
    return true;
  };
  int nx = deg_x_, ny = deg_y_;
  while (nx > 0 && row_zero(nx)) --nx;
  while (ny > 0 && col_zero(ny)) --ny;
  if (nx == deg_x_ && ny == deg_y_) return;
  std::vector<cplx> out(static_cast<std::size_t>((nx + 1) * (ny + 1)));
  for (int i = 0; i <= nx; ++i)
    for (int j = 0; j <= ny; ++j) out[i * (ny + 1) + j] = coeffs_[i * (deg_y_ + 1) + j];
  deg_x_ = nx;
  deg_y_ = ny;
  coeffs_ = std::move(out);
}

bool BivariatePolynomial::is_zero() const noexcept {
  return std::all_of(coeffs_.begin(), coeffs_.end(), [](cplx c) { return c == cplx{}; });
}

cplx BivariatePolynomial::coeff(int i, int j) const {
  if (i < 0 || j < 0 || i > deg_x_ || j > deg_y_) return {};
  return coeffs_[i * (deg_y_ + 1) + j];
}

std::vector<cplx> BivariatePolynomial::y_coefficient(int j) const {
  std::vector<cplx> out(deg_x_ + 1);
  for (int i = 0; i <= deg_x_; ++i) out[i] = coeff(i, j);
  return out;
}

cplx BivariatePolynomial::operator()(cplx x, cplx y) const {
  cplx acc{};
  for (int i = deg_x_; i >= 0; --i) {
    const cplx* row = &coeffs_[i * (deg_y_ + 1)];
    cplx h = row[deg_y_];
    for (int j = deg_y_ - 1; j >= 0; --j) h = h * y + row[j];
    acc = acc * x + h;
  }
  return acc;
}

BivariatePolynomial::Partials BivariatePolynomial::partials(cplx x, cplx y) const {
  // Row-wise Horner for h_i(y) and h_i'(y), then Horner in x for the
  // value, the x-derivative and the y-derivative together.
  const double ax = std::abs(x), ay = std::abs(y);
  cplx v{}, vx{}, vy{};
  double s = 0.0;
  for (int i = deg_x_; i >= 0; --i) {
    const cplx* row = &coeffs_[i * (deg_y_ + 1)];
    cplx h = row[deg_y_], hd{};
    double hs = std::abs(row[deg_y_]);
    for (int j = deg_y_ - 1; j >= 0; --j) {
      hd = hd * y + h;
      h = h * y + row[j];
      hs = hs * ay + std::abs(row[j]);
    }
    vx = vx * x + v;
    v = v * x + h;
    vy = vy * x + hd;
    s = s * ax + hs;
  }
  return {v, vx, vy, s};
}

namespace {

BivariatePolynomial combine(const BivariatePolynomial& a, const BivariatePolynomial& b,
                            double sign) {
  const int nx = std::max(a.deg_x(), b.deg_x());
  const int ny = std::max(a.deg_y(), b.deg_y());
  std::vector<cplx> out(static_cast<std::size_t>((nx + 1) * (ny + 1)));
  for (int i = 0; i <= nx; ++i)
    for (int j = 0; j <= ny; ++j) out[i * (ny + 1) + j] = a.coeff(i, j) + sign * b.coeff(i, j);
  return {nx, ny, std::move(out)};
}

}  // namespace

BivariatePolynomial operator+(const BivariatePolynomial& a, const BivariatePolynomial& b) {
  return combine(a, b, 1.0);
}

BivariatePolynomial operator-(const BivariatePolynomial& a, const BivariatePolynomial& b) {
  return combine(a, b, -1.0);
}

BivariatePolynomial operator*(const BivariatePolynomial& a, const BivariatePolynomial& b) {
  const int nx = a.deg_x() + b.deg_x();
  const int ny = a.deg_y() + b.deg_y();
  std::vector<cplx> out(static_cast<std::size_t>((nx + 1) * (ny + 1)));
  for (int i = 0; i <= a.deg_x(); ++i)
    for (int j = 0; j <= a.deg_y(); ++j) {
      const cplx ca = a.coeff(i, j);
      if (ca == cplx{}) continue;
      for (int k = 0; k <= b.deg_x(); ++k)
        for (int l = 0; l <= b.deg_y(); ++l)
          out[(i + k) * (ny + 1) + (j + l)] += ca * b.coeff(k, l);
    }
  return {nx, ny, std::move(out)};
}

BivariatePolynomial operator*(cplx s, const BivariatePolynomial& p) {
  std::vector<cplx> out(p.coeffs().begin(), p.coeffs().end());
  for (auto& c : out) c *= s;
  return {p.deg_x(), p.deg_y(), std::move(out)};
}

void to_json(nlohmann::json& j, const BivariatePolynomial& p) {
  nlohmann::json rows = nlohmann::json::array();
  for (int i = 0; i <= p.deg_x(); ++i) {
    nlohmann::json row = nlohmann::json::array();
    for (int k = 0; k <= p.deg_y(); ++k) {
      const cplx c = p.coeff(i, k);
      row.push_back({c.real(), c.imag()});
    }
    rows.push_back(std::move(row));
  }
  j = nlohmann::json{{"deg_x", p.deg_x()}, {"deg_y", p.deg_y()}, {"coeffs", std::move(rows)}};
}

namespace {

// Reports write coefficients as decimal strings; accept both forms.
double number(const nlohmann::json& v) {
  if (v.is_number()) return v.get<double>();
  if (!v.is_string()) throw DomainError("polynomial JSON: coefficient entries must be numbers");
  const std::string s = v.get<std::string>();
  std::size_t used = 0;
  double x = 0.0;
  try {
    x = std::stod(s, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != s.size()) throw DomainError("polynomial JSON: bad number '" + s + "'");
  return x;
}

}  // namespace

void from_json(const nlohmann::json& j, BivariatePolynomial& p) {
  const int dx = j.at("deg_x").get<int>();
  const int dy = j.at("deg_y").get<int>();
  const auto& rows = j.at("coeffs");
  if (!rows.is_array() || rows.size() != static_cast<std::size_t>(dx + 1))
    throw DomainError("polynomial JSON: coeffs must have deg_x+1 rows");
  std::vector<cplx> flat;
  flat.reserve(static_cast<std::size_t>((dx + 1) * (dy + 1)));
  for (const auto& row : rows) {
    if (!row.is_array() || row.size() != static_cast<std::size_t>(dy + 1))
      throw DomainError("polynomial JSON: each row must have deg_y+1 entries");
    for (const auto& c : row) {
      if (c.is_number() || c.is_string()) {
        flat.emplace_back(number(c), 0.0);
      } else {
        if (!c.is_array() || c.size() != 2)
          throw DomainError("polynomial JSON: coefficient must be [re, im]");
        flat.emplace_back(number(c[0]), number(c[1]));
      }
    }
  }
  p = BivariatePolynomial(dx, dy, std::move(flat));
}

cplx eval_composed(const BivariatePolynomial& p, const AnalyticFn& f, cplx z) {
  return p(z, f(z).value);
}

cplx derivative_composed(const BivariatePolynomial& p, const AnalyticFn& f, cplx z) {
  return composite_jet(p, f, z).derivative;
}

Jet composite_jet(const BivariatePolynomial& p, const AnalyticFn& f, cplx z) {
  const Jet inner = f(z);
  const auto d = p.partials(z, inner.value);
  const double inner_scale = inner.scale > 0.0 ? inner.scale : std::abs(inner.value);
  return {d.value, d.dx + d.dy * inner.derivative, d.scale + std::abs(d.dy) * inner_scale};
}

AnalyticFn make_composite(BivariatePolynomial p, AnalyticFn f) {
  return [p = std::move(p), f = std::move(f)](cplx z) { return composite_jet(p, f, z); };
}

PerturbedComposite::PerturbedComposite(BivariatePolynomial base, AnalyticFn inner,
                                       double epsilon, double theta)
    : base_(std::move(base)),
      inner_(std::move(inner)),
      epsilon_(epsilon),
      theta_(theta),
      shift_(epsilon == 0.0 ? cplx{} : std::polar(epsilon, theta)) {
  if (!(epsilon >= 0.0)) throw DomainError("perturbation epsilon must be >= 0");
}

cplx PerturbedComposite::value(cplx z) const { return eval_composed(base_, inner_, z) + shift_; }

cplx PerturbedComposite::derivative(cplx z) const {
  return derivative_composed(base_, inner_, z);
}

Jet PerturbedComposite::jet(cplx z) const {
  Jet j = composite_jet(base_, inner_, z);
  j.value += shift_;
  j.scale += epsilon_;
  return j;
}

AnalyticFn PerturbedComposite::as_function() const {
  return [self = *this](cplx z) { return self.jet(z); };
}

PerturbedComposite perturb(const BivariatePolynomial& p, const AnalyticFn& f,
                           std::span<const cplx> boundary_samples, const PerturbOptions& opts) {
  if (boundary_samples.empty()) throw PerturbationError("perturb: no boundary samples");

  std::vector<cplx> values;
  values.reserve(boundary_samples.size());
  double min_nonzero = std::numeric_limits<double>::infinity();
  for (cplx z : boundary_samples) {
    const cplx v = eval_composed(p, f, z);
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
      throw DomainError("perturb: composite is not finite at a boundary sample");
    values.push_back(v);
    const double m = std::abs(v);
    if (m > 0.0) min_nonzero = std::min(min_nonzero, m);
  }
  if (!std::isfinite(min_nonzero))
    throw PerturbationError("perturb: composite vanishes at every boundary sample");

  const double eps = opts.epsilon ? *opts.epsilon : opts.epsilon_fraction * min_nonzero;
  if (eps == 0.0) return {p, f, 0.0, 0.0};

  auto worst = [&](double theta) {
    const cplx s = std::polar(eps, theta);
    double m = std::numeric_limits<double>::infinity();
    for (cplx v : values) m = std::min(m, std::abs(v + s));
    return m;
  };

  const int n = std::max(opts.angle_grid, 1);
  double step = two_pi / n;
  double best_theta = 0.0, best = -1.0;
  for (int k = 0; k < n; ++k) {
    const double th = k * step;
    const double w = worst(th);
    if (w > best) best = w, best_theta = th;
  }
  // Dyadic refinement around the best grid angle.
  for (int r = 0; r < opts.max_refinements && best <= eps / 4.0; ++r) {
    step *= 0.5;
    for (double th : {best_theta - step, best_theta + step}) {
      const double t = std::fmod(th + two_pi, two_pi);
      const double w = worst(t);
      if (w > best) best = w, best_theta = t;
    }
  }
  if (best <= eps / 4.0)
    throw PerturbationError("perturb: no angle keeps the perturbed composite above epsilon/4");
  return {p, f, eps, best_theta};
}

}  // namespace mzl
