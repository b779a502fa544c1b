#pragma once

#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "mzl/bounds.hpp"
#include "mzl/contour.hpp"
#include "mzl/poly.hpp"
#include "mzl/qseries.hpp"
#include "mzl/weierstrass.hpp"

namespace mzl {

/// Truncated standard fundamental domain {|z| >= 1, |Re z| <= 1/2, Im z <= Y}.
///
/// The contour is moved by (outset - inset): outward widens the vertical
/// lines and shrinks the arc radius, so boundary points of the closed domain
/// (i and the corners rho, rho + 1) lie strictly inside.
struct JDomainSpec {
  double Y = 2.0;
  double inset = 0.0;
  double outset = 1e-3;
};

/// Period parallelogram beta, beta + 1, beta + 1 + i tau, beta + i tau with
/// quarter-circle notches of radius delta cut around the corners.
struct WpDomainSpec {
  double tau = 1.0;
  cplx beta = 0.0;
  double delta = 0.05;
};

Contour build_j_contour(const JDomainSpec& spec);
Contour build_wp_contour(const WpDomainSpec& spec);

struct ZeroCountReport {
  std::string domain;  ///< "j" or "wp"
  BivariatePolynomial poly;
  int degree = 0;
  int count = 0;
  WindingResult winding;
  double epsilon = 0.0;
  double theta = 0.0;
  /// Truncation height (j) or notch radius (wp) actually used.
  double parameter = 0.0;
  double tau = 0.0;
  std::vector<ZeroDisk> zeros;  ///< localized zeros inside the contour
  /// Zeros are those of P_eps; set when localizing P itself did not account for the count.
  bool zeros_perturbed = false;
  int localized_multiplicity = 0;
  bool localized = false;
  bool cross_validated = false;
  BigInt bound = 0;
  /// Larger constant from the argument for the wp bound; equal to bound for j.
  BigInt proof_bound = 0;
  bool within_bound = false;
  bool pole_cluster = false;
  std::vector<std::string> notes;
};

void to_json(nlohmann::json& j, const ZeroCountReport& r);

struct JCountOptions {
  bool adapt_Y = true;
  double max_Y = 30.0;
  /// Dominance ratio C; the top-line check requires C * headroom.
  double dominance_C = 2.0;
  double headroom = 1.1;
  int dominance_samples = 256;
  /// No localized zero may sit above Y - cusp_margin.
  double cusp_margin = 0.5;
  int perturb_samples = 256;
  PerturbOptions perturb;
  WindingOptions winding;
  bool localize = true;
  LocalizeOptions localize_opts{.target_radius = 1e-7};
  KleinJOptions j;
};

struct WpCountOptions {
  double min_delta = 1e-4;
  int perturb_samples = 256;
  PerturbOptions perturb;
  WindingOptions winding;
  bool localize = true;
  LocalizeOptions localize_opts{.target_radius = 1e-7};
  LatticeOptions lattice;
  WpOptions wp;
};

/// Zeros of P(z, j(z)) in the truncated fundamental domain.
ZeroCountReport count_zeros_j(const BivariatePolynomial& p, const JDomainSpec& spec = {},
                              const JCountOptions& opts = {});

/// Zeros of P(z, wp(z)) in the notched period parallelogram of <1, i tau>.
ZeroCountReport count_zeros_wp(const BivariatePolynomial& p, const WpDomainSpec& spec = {},
                               const WpCountOptions& opts = {});

/// Minimum over the top line Im z = Y of |a_n(z) q^{-n}| / |rest of P(z, j(z))|,
/// n = deg_y P; for n = 0 the leading monomial in z is used instead.
double j_cusp_dominance(const BivariatePolynomial& p, double Y, double half_width, int samples = 256,
                        const KleinJOptions& jopts = {});

enum class LineKind { horizontal, vertical };
enum class Component { imag, real };

struct LineCountOptions {
  /// Move the line to Im z = tau/2 (horizontal) or Re z = 1/2 (vertical).
  bool half_period = false;
  double endpoint_offset = 1e-4;
  int initial_points = 4096;
};

/// Sign-change zeros of Im or Re of P(z, wp(z)) on the open segment between
/// adjacent poles. wp is real there; its rounding-level imaginary part is
/// discarded.
int line_im_zero_count(const BivariatePolynomial& p, double tau, LineKind line, Component component,
                       const LineCountOptions& opts = {});

/// Real polynomial Q(t, Y) with Q(t, Y) = Im P(i t, Y) for real t and Y.
BivariatePolynomial imaginary_axis_reduction(const BivariatePolynomial& p);

/// |arg change of f| / 2 pi along the arc center + delta e^{i phi}, phi from
/// angle_from to angle_to.
double arc_winding_contribution(const AnalyticFn& f, cplx center, double delta, double angle_from,
                                double angle_to, const WindingOptions& opts = {});

}  // namespace mzl
