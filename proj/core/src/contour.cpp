#include "mzl/contour.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "mzl/error.hpp"
#include "mzl/pfaffian.hpp"

namespace mzl {

PathSegment::PathSegment(LinePiece line) : piece_(line) {
  if (line.start == line.end) throw DomainError("PathSegment: zero-length line");
}

PathSegment::PathSegment(ArcPiece arc) : piece_(arc) {
  if (!(arc.radius > 0.0)) throw DomainError("PathSegment: arc radius must be positive");
  if (arc.angle_start == arc.angle_end) throw DomainError("PathSegment: zero-length arc");
}

cplx PathSegment::point(double t) const {
  if (const auto* l = std::get_if<LinePiece>(&piece_)) {
    if (t == 1.0) return l->end;
    return l->start + t * (l->end - l->start);
  }
  const auto& a = std::get<ArcPiece>(piece_);
  return a.center + std::polar(a.radius, a.angle_start + t * (a.angle_end - a.angle_start));
}

cplx PathSegment::tangent(double t) const {
  if (const auto* l = std::get_if<LinePiece>(&piece_)) return l->end - l->start;
  const auto& a = std::get<ArcPiece>(piece_);
  const double span = a.angle_end - a.angle_start;
  return cplx{0.0, span} * std::polar(a.radius, a.angle_start + t * span);
}

double PathSegment::length() const {
  if (const auto* l = std::get_if<LinePiece>(&piece_)) return std::abs(l->end - l->start);
  const auto& a = std::get<ArcPiece>(piece_);
  return a.radius * std::abs(a.angle_end - a.angle_start);
}

Contour::Contour(std::vector<PathSegment> segments, bool closed)
    : segments_(std::move(segments)), closed_(closed) {
  if (segments_.empty()) throw DomainError("Contour: no segments");
  const double scale = std::max(1.0, length());
  if (closure_gap() > 1e-12 * scale) throw DomainError("Contour: consecutive endpoints do not match");
}

Contour Contour::box(cplx ll, cplx ur) {
  if (!(ll.real() < ur.real() && ll.imag() < ur.imag())) throw DomainError("Contour::box: degenerate box");
  const cplx lr{ur.real(), ll.imag()}, ul{ll.real(), ur.imag()};
  return Contour({PathSegment::line(ll, lr), PathSegment::line(lr, ur), PathSegment::line(ur, ul),
                  PathSegment::line(ul, ll)},
                 true);
}

Contour Contour::circle(cplx center, double radius) {
  return Contour({PathSegment::arc(center, radius, 0.0, two_pi)}, true);
}

double Contour::length() const {
  double s = 0.0;
  for (const auto& seg : segments_) s += seg.length();
  return s;
}

double Contour::closure_gap() const {
  double gap = 0.0;
  for (std::size_t i = 1; i < segments_.size(); ++i)
    gap = std::max(gap, std::abs(segments_[i].start() - segments_[i - 1].end()));
  if (closed_) gap = std::max(gap, std::abs(segments_.front().start() - segments_.back().end()));
  return gap;
}

std::vector<cplx> Contour::sample(int per_segment) const {
  std::vector<cplx> pts;
  pts.reserve(segments_.size() * per_segment);
  for (const auto& seg : segments_)
    for (int k = 0; k < per_segment; ++k) pts.push_back(seg.point((k + 0.5) / per_segment));
  return pts;
}

int Contour::winding_around(cplx z, int per_segment) const {
  double total = 0.0;
  cplx prev = segments_.front().start() - z;
  for (const auto& seg : segments_) {
    for (int k = 1; k <= per_segment; ++k) {
      const cplx cur = seg.point(static_cast<double>(k) / per_segment) - z;
      total += std::arg(cur / prev);
      prev = cur;
    }
  }
  return static_cast<int>(std::lround(total / two_pi));
}

namespace {

struct Node {
  double t;
  cplx z;
  Jet jet;
};

class Tracker {
public:
  Tracker(const AnalyticFn& f, const WindingOptions& opts, std::vector<TraceSample>* trace)
      : f_(f), opts_(opts), trace_(trace) {}

  Node eval(const PathSegment& seg, double t) {
    const cplx z = seg.point(t);
    Jet j = f_(z);
    ++samples_;
    if (samples_ > opts_.max_samples) throw NonconvergenceError("winding: sample budget exhausted");
    if (!std::isfinite(j.value.real()) || !std::isfinite(j.value.imag()))
      throw ZeroOnContourError("winding: function not finite on the contour", z, std::abs(j.value));
    const double m = std::abs(j.value);
    const double scale = j.scale > 0.0 ? j.scale : 1.0;
    if (m <= opts_.zero_rel_tol * scale) throw ZeroOnContourError("winding: zero on the contour", z, m);
    min_modulus_ = std::min(min_modulus_, m);
    return {t, z, j};
  }

  void segment(const PathSegment& seg, int index) {
    const int n = std::max(opts_.initial_per_segment, 1);
    Node left = eval(seg, 0.0);
    if (index == 0) first_ = left.jet.value;
    for (int k = 1; k <= n; ++k) {
      Node right = eval(seg, static_cast<double>(k) / n);
      refine(seg, index, left, right, 0);
      left = right;
    }
    last_ = left.jet.value;
    if (trace_) trace_->push_back({index + 1.0, left.z, left.jet.value, phase_});
  }

  double phase() const { return phase_; }
  double variation() const { return variation_; }
  double min_modulus() const { return min_modulus_; }
  long samples() const { return samples_; }
  cplx first() const { return first_; }
  cplx last() const { return last_; }

private:
  double predicted(const PathSegment& seg, const Node& n, double dt) const {
    if (n.jet.derivative == cplx{}) return 0.0;
    // Full modulus of the log-derivative: radial changes hint at a nearby zero too.
    return std::abs(n.jet.derivative / n.jet.value * seg.tangent(n.t)) * dt;
  }

  void refine(const PathSegment& seg, int index, const Node& a, const Node& b, int depth) {
    const double dphi = std::arg(b.jet.value / a.jet.value);
    const double dt = b.t - a.t;
    const bool ok = std::abs(dphi) < opts_.phase_step && predicted(seg, a, dt) < opts_.phase_step &&
                    predicted(seg, b, dt) < opts_.phase_step;
    if (ok) {
      if (trace_) trace_->push_back({index + a.t, a.z, a.jet.value, phase_});
      phase_ += dphi;
      variation_ += std::abs(dphi);
      return;
    }
    if (depth >= opts_.max_depth) throw NonconvergenceError("winding: subdivision depth exceeded");
    const Node mid = eval(seg, 0.5 * (a.t + b.t));
    refine(seg, index, a, mid, depth + 1);
    refine(seg, index, mid, b, depth + 1);
  }

  const AnalyticFn& f_;
  const WindingOptions& opts_;
  std::vector<TraceSample>* trace_;
  double phase_ = 0.0;
  double variation_ = 0.0;
  double min_modulus_ = std::numeric_limits<double>::infinity();
  long samples_ = 0;
  cplx first_{}, last_{};
};

}  // namespace

LogIncrement log_increment(const AnalyticFn& f, const Contour& contour, const WindingOptions& opts,
                           std::vector<TraceSample>* trace) {
  Tracker tr(f, opts, trace);
  const auto& segs = contour.segments();
  for (std::size_t i = 0; i < segs.size(); ++i) tr.segment(segs[i], static_cast<int>(i));
  const double re = std::log(std::abs(tr.last())) - std::log(std::abs(tr.first()));
  return {{contour.closed() ? 0.0 : re, tr.phase()}, tr.variation(), tr.min_modulus(), tr.samples()};
}

WindingResult winding_number(const AnalyticFn& f, const Contour& contour, const WindingOptions& opts,
                             std::vector<TraceSample>* trace) {
  if (!contour.closed()) throw DomainError("winding_number: contour is not closed");
  const LogIncrement li = log_increment(f, contour, opts, trace);
  const double w = li.increment.imag() / two_pi;
  const double r = std::round(w);
  if (std::abs(w - r) >= opts.integer_tol)
    throw NonconvergenceError("winding_number: phase increment is not an integer multiple of 2 pi");
  return {static_cast<int>(r), li.increment.imag(), li.total_variation, li.min_modulus, li.samples_used};
}

DominantTermBound dominant_term_bound(const AnalyticFn& f, const AnalyticFn& g, const Contour& contour,
                                      double C, int samples_per_segment, const WindingOptions& opts) {
  if (!(C > 1.0)) throw DomainError("dominant_term_bound: C must exceed 1");
  const int n = std::max(samples_per_segment, 256);
  double sup = 0.0;
  double worst_ratio = std::numeric_limits<double>::infinity();
  cplx worst{};
  for (const auto& seg : contour.segments()) {
    for (int k = 0; k <= n; ++k) {
      const cplx z = seg.point(static_cast<double>(k) / n);
      const Jet fj = f(z), gj = g(z);
      const double af = std::abs(fj.value), ag = std::abs(gj.value);
      const double ratio = ag == 0.0 ? std::numeric_limits<double>::infinity() : af / ag;
      if (ratio < worst_ratio) worst_ratio = ratio, worst = z;
      sup = std::max(sup, std::abs(fj.derivative) * ag / (af * af) + std::abs(gj.derivative) / af);
    }
  }
  if (!(worst_ratio > C))
    throw PreconditionError("dominant_term_bound: |f| > C|g| fails on the contour", worst);

  const AnalyticFn sum = [&](cplx z) {
    const Jet a = f(z), b = g(z);
    return Jet{a.value + b.value, a.derivative + b.derivative, std::max(a.scale, std::abs(a.value)) +
                                                                   std::max(b.scale, std::abs(b.value))};
  };
  const double fi = std::abs(log_increment(f, contour, opts).increment);
  const double direct = std::abs(log_increment(sum, contour, opts).increment);
  const double len = contour.length();
  const double bound = fi + C / (C - 1.0) * len * sup;
  return {bound, fi, direct, sup, len, bound >= direct};
}

CrossingReport crossing_bound_check(const AnalyticFn& f, const Contour& contour, const WindingOptions& opts) {
  const double w = std::abs(log_increment(f, contour, opts).increment) / two_pi;
  constexpr double off = 1e-9;
  RealZeroOptions zo;
  zo.initial_points = 1024;
  zo.endpoint_offset = off;

  auto count = [&](bool imag) {
    auto part = [imag](cplx v) { return imag ? v.imag() : v.real(); };
    const auto& segs = contour.segments();
    int total = 0;
    for (const auto& seg : segs) {
      const auto fn = [&](double t) { return part(f(seg.point(t)).value); };
      total += real_zero_count(fn, 0.0, 1.0, zo).count;
    }
    // Sign changes inside the gaps around the joints.
    const std::size_t joints = contour.closed() ? segs.size() : segs.size() - 1;
    for (std::size_t k = 0; k < joints; ++k) {
      const auto& prev = segs[k];
      const auto& next = segs[(k + 1) % segs.size()];
      const double a = part(f(prev.point(1.0 - off)).value);
      const double b = part(f(next.point(off)).value);
      if ((a > 0.0) != (b > 0.0) || a == 0.0 || b == 0.0) ++total;
    }
    return total;
  };
  const int im = count(true);
  const int re = count(false);
  const bool holds = w <= im / 2.0 + 1.0 + 1e-9 && w <= re / 2.0 + 1.0 + 1e-9;
  return {w, im, re, holds};
}

}  // namespace mzl
