#pragma once

#include <optional>
#include <span>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "mzl/analytic.hpp"

namespace mzl {

/// Dense complex polynomial P(X, Y) = sum c_ij X^i Y^j.
///
/// Coefficients are stored row-major in X: index i * (deg_y + 1) + j. The
/// constructor trims trailing all-zero rows and columns so that the stored
/// degrees are the true degrees (a zero polynomial has degrees (0, 0)).
class BivariatePolynomial {
public:
  struct Partials {
    cplx value;
    cplx dx;
    cplx dy;
    double scale;  ///< sum |c_ij| |x|^i |y|^j
  };

  BivariatePolynomial();
  BivariatePolynomial(int deg_x, int deg_y, std::vector<cplx> coeffs);

  static BivariatePolynomial from_rows(const std::vector<std::vector<cplx>>& rows);
  static BivariatePolynomial constant(cplx c);
  static BivariatePolynomial monomial(int i, int j, cplx c = 1.0);
  static BivariatePolynomial x() { return monomial(1, 0); }
  static BivariatePolynomial y() { return monomial(0, 1); }

  int deg_x() const noexcept { return deg_x_; }
  int deg_y() const noexcept { return deg_y_; }
  /// Degree in the sense "at most d in either variable".
  int degree() const noexcept { return deg_x_ > deg_y_ ? deg_x_ : deg_y_; }
  bool is_zero() const noexcept;

  cplx coeff(int i, int j) const;
  std::span<const cplx> coeffs() const noexcept { return coeffs_; }

  /// Horner in Y, then in X.
  cplx operator()(cplx x, cplx y) const;
  Partials partials(cplx x, cplx y) const;

  /// Coefficient polynomial of Y^j, as coefficients in X (low to high).
  std::vector<cplx> y_coefficient(int j) const;

  friend BivariatePolynomial operator+(const BivariatePolynomial& a, const BivariatePolynomial& b);
  friend BivariatePolynomial operator-(const BivariatePolynomial& a, const BivariatePolynomial& b);
  friend BivariatePolynomial operator*(const BivariatePolynomial& a, const BivariatePolynomial& b);
  friend BivariatePolynomial operator*(cplx s, const BivariatePolynomial& p);
  friend bool operator==(const BivariatePolynomial&, const BivariatePolynomial&) = default;

private:
  void trim();

  int deg_x_ = 0;
  int deg_y_ = 0;
  std::vector<cplx> coeffs_;
};

void to_json(nlohmann::json& j, const BivariatePolynomial& p);
void from_json(const nlohmann::json& j, BivariatePolynomial& p);

/// P(z, f(z)). Errors from f propagate unchanged.
cplx eval_composed(const BivariatePolynomial& p, const AnalyticFn& f, cplx z);

/// d/dz P(z, f(z)) = P_X + P_Y f'.
cplx derivative_composed(const BivariatePolynomial& p, const AnalyticFn& f, cplx z);

/// P(z, f(z)) as an analytic handle carrying value, derivative and noise scale.
Jet composite_jet(const BivariatePolynomial& p, const AnalyticFn& f, cplx z);
AnalyticFn make_composite(BivariatePolynomial p, AnalyticFn f);

/// P(z, f(z)) + epsilon * exp(i theta).
class PerturbedComposite {
public:
  PerturbedComposite(BivariatePolynomial base, AnalyticFn inner, double epsilon,
                     double theta);

  const BivariatePolynomial& base() const noexcept { return base_; }
  const AnalyticFn& inner() const noexcept { return inner_; }
  double epsilon() const noexcept { return epsilon_; }
  double theta() const noexcept { return theta_; }
  cplx shift() const noexcept { return shift_; }

  cplx value(cplx z) const;
  cplx derivative(cplx z) const;
  Jet jet(cplx z) const;
  AnalyticFn as_function() const;

private:
  BivariatePolynomial base_;
  AnalyticFn inner_;
  double epsilon_;
  double theta_;
  cplx shift_;
};

struct PerturbOptions {
  /// Fraction of min |P o f| over the samples used as epsilon.
  double epsilon_fraction = 0.5;
  /// Forces epsilon instead of deriving it from the samples.
  std::optional<double> epsilon;
  int angle_grid = 64;
  int max_refinements = 8;
};

/// Rouche perturbation: epsilon from the sampled minimum modulus, theta
/// chosen so the perturbed composite stays above epsilon / 4 on the samples.
PerturbedComposite perturb(const BivariatePolynomial& p, const AnalyticFn& f,
                           std::span<const cplx> boundary_samples,
                           const PerturbOptions& opts = {});

}  // namespace mzl
