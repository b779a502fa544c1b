#pragma once

#include <variant>
#include <vector>

#include "mzl/analytic.hpp"

namespace mzl {

struct LinePiece {
  cplx start;
  cplx end;
};

/// center + radius e^{i phi}, phi from angle_start to angle_end; the sign of
/// angle_end - angle_start gives the orientation.
struct ArcPiece {
  cplx center;
  double radius;
  double angle_start;
  double angle_end;
};

/// One piece of a contour, parameterized over t in [0, 1].
class PathSegment {
public:
  PathSegment(LinePiece line);
  PathSegment(ArcPiece arc);

  static PathSegment line(cplx a, cplx b) { return PathSegment(LinePiece{a, b}); }
  static PathSegment arc(cplx center, double radius, double from, double to) {
    return PathSegment(ArcPiece{center, radius, from, to});
  }

  bool is_line() const noexcept { return std::holds_alternative<LinePiece>(piece_); }
  const std::variant<LinePiece, ArcPiece>& piece() const noexcept { return piece_; }

  cplx point(double t) const;
  /// dz/dt.
  cplx tangent(double t) const;
  cplx start() const { return point(0.0); }
  cplx end() const { return point(1.0); }
  double length() const;

private:
  std::variant<LinePiece, ArcPiece> piece_;
};

class Contour {
public:
  Contour() = default;
  Contour(std::vector<PathSegment> segments, bool closed);

  /// Positively oriented axis-aligned rectangle.
  static Contour box(cplx lower_left, cplx upper_right);
  static Contour circle(cplx center, double radius);

  const std::vector<PathSegment>& segments() const noexcept { return segments_; }
  bool closed() const noexcept { return closed_; }
  double length() const;
  /// Largest mismatch between consecutive endpoints (and last-to-first when closed).
  double closure_gap() const;
  /// n points per segment at t = (k + 1/2)/n.
  std::vector<cplx> sample(int per_segment) const;
  /// Winding number of the contour around z (geometric; no function involved).
  int winding_around(cplx z, int per_segment = 512) const;
  bool encloses(cplx z) const { return winding_around(z) != 0; }

private:
  std::vector<PathSegment> segments_;
  bool closed_ = false;
};

struct WindingOptions {
  int initial_per_segment = 16;
  int max_depth = 48;
  /// Largest accepted phase change between consecutive samples.
  double phase_step = pi / 2.0;
  /// |increment / 2 pi - round| must stay below this.
  double integer_tol = 0.01;
  /// |f| below zero_rel_tol * scale is a zero on the contour.
  double zero_rel_tol = 1e-12;
  long max_samples = 20'000'000;
};

struct TraceSample {
  double t;  ///< segment index + local parameter
  cplx z;
  cplx f;
  double arg_unwrapped;
};

/// Change of log f along a contour: real part is log|f_end / f_start|,
/// imaginary part the continuously tracked change of arg f.
struct LogIncrement {
  cplx increment;
  double total_variation;
  double min_modulus;
  long samples_used;
};

struct WindingResult {
  int winding = 0;
  double increment = 0.0;  ///< total arg change
  double total_variation = 0.0;
  double min_modulus = 0.0;
  long samples_used = 0;
};

LogIncrement log_increment(const AnalyticFn& f, const Contour& contour, const WindingOptions& opts = {},
                           std::vector<TraceSample>* trace = nullptr);

/// Argument-principle winding of f over a closed contour from phase increments.
/// Throws ZeroOnContourError when a sample is numerically zero and
/// NonconvergenceError when subdivision cannot resolve the phase.
WindingResult winding_number(const AnalyticFn& f, const Contour& contour, const WindingOptions& opts = {},
                             std::vector<TraceSample>* trace = nullptr);

struct DominantTermBound {
  double bound;            ///< |int f'/f| + C/(C-1) |Gamma| sup{...}
  double f_integral;       ///< |int f'/f|
  double direct;           ///< |int (f+g)'/(f+g)|
  double sup_term;
  double length;
  bool dominates;          ///< bound >= direct
};

/// Dominant-term estimate for the log-derivative integral of f + g given
/// |f| > C |g| on the contour (checked on >= 256 samples per segment).
DominantTermBound dominant_term_bound(const AnalyticFn& f, const AnalyticFn& g, const Contour& contour,
                                      double C, int samples_per_segment = 256,
                                      const WindingOptions& opts = {});

struct CrossingReport {
  double winding_abs_over_2pi;
  int im_crossings;
  int re_crossings;
  bool lemma2_holds;
};

/// Counts sign changes of Im f and Re f along the contour and checks
/// |int f'/f| / 2 pi <= crossings / 2 + 1 for both.
CrossingReport crossing_bound_check(const AnalyticFn& f, const Contour& contour,
                                    const WindingOptions& opts = {});

struct ZeroDisk {
  cplx center;
  double radius;
  int multiplicity;
  bool resolved;  ///< false: cluster reported at depth or noise exhaustion
};

struct LocalizeOptions {
  int max_depth = 40;
  double target_radius = 1e-8;
  double boundary_perturbation = 1e-6;
  WindingOptions winding{.initial_per_segment = 8};
};

struct LocalizeResult {
  int top_winding = 0;
  std::vector<ZeroDisk> zeros;
  long boxes = 0;
  cplx lower_left;   ///< box actually used (after any boundary perturbation)
  cplx upper_right;
};

/// Quadtree subdivision driven by box windings.
LocalizeResult localize_zeros(const AnalyticFn& f, cplx lower_left, cplx upper_right,
                              const LocalizeOptions& opts = {});

}  // namespace mzl
