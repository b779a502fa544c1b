#include "mzl/domains.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>

#include <nlohmann/json.hpp>

#include "mzl/error.hpp"
#include "mzl/pfaffian.hpp"
#include "report_util.hpp"

namespace mzl {

Contour build_j_contour(const JDomainSpec& spec) {
  if (!(spec.Y > 1.0)) throw InvalidSpecError("build_j_contour: Y must exceed 1");
  if (!(spec.inset >= 0.0 && spec.outset >= 0.0)) throw InvalidSpecError("build_j_contour: negative offset");
  const double s = spec.outset - spec.inset;
  if (!(s > -0.1 && s < 0.1)) throw InvalidSpecError("build_j_contour: offset too large");
  const double x = 0.5 + s;
  const double r = 1.0 - s;
  const double yb = std::sqrt(r * r - x * x);
  if (!(spec.Y > yb + 0.1)) throw InvalidSpecError("build_j_contour: Y too close to the arc");
  const PathSegment arc = PathSegment::arc(0.0, r, std::atan2(yb, -x), std::atan2(yb, x));
  const cplx br = arc.end(), bl = arc.start();
  const cplx tr{x, spec.Y}, tl{-x, spec.Y};
  return Contour({arc, PathSegment::line(br, tr), PathSegment::line(tr, tl), PathSegment::line(tl, bl)}, true);
}

Contour build_wp_contour(const WpDomainSpec& spec) {
  if (!(spec.tau > 0.0)) throw InvalidSpecError("build_wp_contour: tau must be positive");
  if (!(spec.delta > 0.0 && spec.delta < std::min(1.0, spec.tau) / 4.0))
    throw InvalidSpecError("build_wp_contour: delta must lie in (0, min(1, tau)/4)");
  const double d = spec.delta;
  const cplx a = spec.beta, b = a + 1.0, c = b + cplx{0.0, spec.tau}, e = a + cplx{0.0, spec.tau};
  const cplx I{0.0, 1.0};
  // Clockwise quarter-circles keep the corners outside.
  return Contour({PathSegment::line(a + d, b - d),
                  PathSegment::arc(b, d, pi, pi / 2.0),
                  PathSegment::line(b + I * d, c - I * d),
                  PathSegment::arc(c, d, -pi / 2.0, -pi),
                  PathSegment::line(c - d, e + d),
                  PathSegment::arc(e, d, 0.0, -pi / 2.0),
                  PathSegment::line(e - I * d, a + I * d),
                  PathSegment::arc(a, d, pi / 2.0, 0.0)},
                 true);
}

void to_json(nlohmann::json& j, const ZeroCountReport& r) {
  using detail::decimal;
  nlohmann::json zeros = nlohmann::json::array();
  for (const auto& z : r.zeros)
    zeros.push_back({{"center", decimal(z.center)},
                     {"radius", decimal(z.radius)},
                     {"multiplicity", z.multiplicity},
                     {"resolved", z.resolved}});
  j = {{"schema", "mzl/1"},
       {"domain", r.domain},
       {"poly", detail::poly_strings(r.poly)},
       {"degree", r.degree},
       {"count", r.count},
       {"winding",
        {{"increment", decimal(r.winding.increment)},
         {"total_variation", decimal(r.winding.total_variation)},
         {"min_modulus", decimal(r.winding.min_modulus)},
         {"samples", r.winding.samples_used}}},
       {"epsilon", decimal(r.epsilon)},
       {"theta", decimal(r.theta)},
       {r.domain == "j" ? "Y" : "delta", decimal(r.parameter)},
       {"zeros", std::move(zeros)},
       {"zeros_of", r.zeros_perturbed ? "P_eps" : "P"},
       {"localized", r.localized},
       {"localized_multiplicity", r.localized_multiplicity},
       {"cross_validated", r.cross_validated},
       {"bound", to_string(r.bound)},
       {"within_bound", r.within_bound},
       {"notes", r.notes}};
  if (r.domain == "wp") {
    j["tau"] = decimal(r.tau);
    j["proof_bound"] = to_string(r.proof_bound);
    j["within_proof_bound"] = BigInt(r.count) <= r.proof_bound;
    j["pole_cluster"] = r.pole_cluster;
  }
}

namespace {

int effective_degree(const BivariatePolynomial& p) { return std::max(p.degree(), 1); }

void finish(ZeroCountReport& r, const std::vector<ZeroDisk>& enclosed) {
  r.zeros = enclosed;
  r.localized_multiplicity = 0;
  for (const auto& z : enclosed) r.localized_multiplicity += z.multiplicity;
  r.cross_validated = r.localized && r.localized_multiplicity == r.count;
  r.within_bound = BigInt(r.count) <= r.bound;
}

// Rouche needs epsilon below min |P o f| on the whole contour, not just at the
// fixed samples; the adaptive unperturbed pass supplies a tighter minimum.
PerturbedComposite perturb_on(const BivariatePolynomial& p, const AnalyticFn& f, const Contour& contour,
                              int per_segment, PerturbOptions po, const WindingOptions& wopts) {
  const auto samples = contour.sample(per_segment);
  if (!po.epsilon) {
    try {
      const double traced = winding_number(make_composite(p, f), contour, wopts).min_modulus;
      double sampled = std::numeric_limits<double>::infinity();
      for (cplx z : samples) sampled = std::min(sampled, std::abs(eval_composed(p, f, z)));
      po.epsilon = po.epsilon_fraction * std::min(traced, sampled);
    } catch (const ZeroOnContourError&) {
      // Zero on the contour: fall back to the sampled minimum.
    } catch (const NonconvergenceError&) {
    }
  }
  return perturb(p, f, samples, po);
}

std::vector<ZeroDisk> enclosed_zeros(const LocalizeResult& loc, const Contour& contour) {
  std::vector<ZeroDisk> out;
  for (const auto& z : loc.zeros)
    if (contour.encloses(z.center)) out.push_back(z);
  return out;
}

struct Located {
  std::vector<ZeroDisk> enclosed;
  std::vector<ZeroDisk> all;
  bool ok = false;
  bool perturbed = false;
};

int total_multiplicity(const std::vector<ZeroDisk>& zs) {
  int m = 0;
  for (const auto& z : zs) m += z.multiplicity;
  return m;
}

// Zeros of P itself when the quadtree accounts for the whole count, else
// zeros of P_eps (whose winding is the count by construction).
template <class Run>
Located locate(const Run& run, const AnalyticFn& base, const AnalyticFn& perturbed, const Contour& contour,
               int count, std::vector<std::string>& notes) {
  Located out;
  std::string failure;
  for (bool pert : {false, true}) {
    try {
      const LocalizeResult loc = run(pert ? perturbed : base);
      out.all = loc.zeros;
      out.enclosed = enclosed_zeros(loc, contour);
      out.ok = true;
      out.perturbed = pert;
      if (total_multiplicity(out.enclosed) == count) return out;
    } catch (const Error& e) {
      failure = e.what();
    }
  }
  if (!out.ok) notes.push_back("localization failed: " + failure);
  return out;
}

}  // namespace

double j_cusp_dominance(const BivariatePolynomial& p, double Y, double half_width, int samples,
                        const KleinJOptions& jopts) {
  // Leading cusp term a_n(z) q^{-n}, n = deg_y. Without Y the leading
  // monomial of a_0 plays that role.
  const int n = p.deg_y();
  auto a = p.y_coefficient(n);
  if (n == 0) {
    std::size_t m = a.size() - 1;
    while (m > 0 && a[m] == cplx{}) --m;
    std::fill(a.begin(), a.begin() + m, cplx{});
  }
  double worst = std::numeric_limits<double>::infinity();
  const int k_max = std::max(samples, 2);
  for (int k = 0; k < k_max; ++k) {
    const cplx z{-half_width + 2.0 * half_width * k / (k_max - 1), Y};
    cplx an{};
    for (auto it = a.rbegin(); it != a.rend(); ++it) an = an * z + *it;
    const cplx f = an * std::exp(cplx{0.0, -two_pi * n} * z);
    const cplx g = p(z, klein_j(z, jopts)) - f;
    const double ag = std::abs(g);
    if (ag > 0.0) worst = std::min(worst, std::abs(f) / ag);
  }
  return worst;
}

ZeroCountReport count_zeros_j(const BivariatePolynomial& p, const JDomainSpec& spec, const JCountOptions& opts) {
  if (p.is_zero()) throw InvalidSpecError("count_zeros_j: P is identically zero");
  build_j_contour(spec);  // validates
  const AnalyticFn jf = klein_j_function(opts.j);
  const double s = spec.outset - spec.inset;
  const double half = 0.5 + s;
  const int n = p.deg_y();
  const double cap = std::min(opts.max_Y, 650.0 / (two_pi * std::max(n, 1)));
  const double need = opts.dominance_C * opts.headroom;

  ZeroCountReport r;
  r.domain = "j";
  r.poly = p;
  r.degree = p.degree();
  r.bound = theorem1_bound(effective_degree(p));
  r.proof_bound = r.bound;
  if (p.degree() == 0) r.notes.push_back("constant P; bound taken at d = 1");

  double Y = spec.Y;
  for (;;) {
    if (opts.adapt_Y) {
      while (j_cusp_dominance(p, Y, half, opts.dominance_samples, opts.j) <= need) {
        Y += 1.0;
        if (Y > cap) throw PreconditionError("count_zeros_j: cusp term does not dominate below the height cap", {0.0, Y});
      }
    }
    const Contour contour = build_j_contour({Y, spec.inset, spec.outset});
    const PerturbedComposite pert = perturb_on(p, jf, contour, opts.perturb_samples, opts.perturb, opts.winding);
    const AnalyticFn fn = pert.as_function();
    r.winding = winding_number(fn, contour, opts.winding);
    r.count = r.winding.winding;
    r.epsilon = pert.epsilon();
    r.theta = pert.theta();
    r.parameter = Y;

    std::vector<ZeroDisk> enclosed;
    r.localized = false;
    if (opts.localize) {
      const double x = 0.5 + std::max(s, 0.0) + 0.02;
      const auto run = [&](const AnalyticFn& h) { return localize_zeros(h, {-x, 0.8}, {x, Y + 0.05}, opts.localize_opts); };
      const Located loc = locate(run, make_composite(p, jf), fn, contour, r.count, r.notes);
      enclosed = loc.enclosed;
      r.localized = loc.ok;
      r.zeros_perturbed = loc.perturbed;
    }
    const bool near_top = std::any_of(enclosed.begin(), enclosed.end(),
                                      [&](const ZeroDisk& z) { return z.center.imag() > Y - opts.cusp_margin; });
    if (opts.adapt_Y && near_top) {
      if (Y + 1.0 <= cap) {
        Y += 1.0;
        continue;
      }
      r.notes.push_back("zero within the cusp margin at the height cap");
    }
    finish(r, enclosed);
    return r;
  }
}

ZeroCountReport count_zeros_wp(const BivariatePolynomial& p, const WpDomainSpec& spec, const WpCountOptions& opts) {
  if (p.is_zero()) throw InvalidSpecError("count_zeros_wp: P is identically zero");
  build_wp_contour(spec);  // validates
  const LatticeParams lattice = wp_invariants(spec.tau, opts.lattice);
  const AnalyticFn wpf = wp_function(lattice, opts.wp);
  const cplx itau{0.0, spec.tau};
  const std::array<cplx, 4> corners{spec.beta, spec.beta + 1.0, spec.beta + 1.0 + itau, spec.beta + itau};
  const int m = 2 * p.deg_y();

  ZeroCountReport r;
  r.domain = "wp";
  r.poly = p;
  r.degree = p.degree();
  r.tau = spec.tau;
  r.bound = theorem2_bound(effective_degree(p));
  r.proof_bound = theorem2_proof_bound(effective_degree(p));
  if (p.degree() == 0) r.notes.push_back("constant P; bound taken at d = 1");

  double delta = spec.delta;
  for (;;) {
    const Contour contour = build_wp_contour({spec.tau, spec.beta, delta});
    const PerturbedComposite pert = perturb_on(p, wpf, contour, opts.perturb_samples, opts.perturb, opts.winding);
    const AnalyticFn fn = pert.as_function();
    r.epsilon = pert.epsilon();
    r.theta = pert.theta();
    r.parameter = delta;

    r.winding = winding_number(fn, contour, opts.winding);
    r.count = r.winding.winding;

    std::vector<ZeroDisk> enclosed;
    r.localized = false;
    bool shrink = false;
    if (opts.localize) {
      // Cancel the poles at the box's lattice points so the quadtree sees an
      // entire function.
      const auto cancel = [&, m](const AnalyticFn& h) -> AnalyticFn {
        return [&, h, m](cplx z) {
        const Jet f = h(z);
        const cplx u = pi * (z - spec.beta), v = pi * (z - spec.beta - itau);
        const cplx s = std::sin(u) * std::sin(v);
        const cplx ds = pi * (std::cos(u) * std::sin(v) + std::sin(u) * std::cos(v));
        const cplx sm = std::pow(s, m);
        const cplx sm1 = m > 0 ? std::pow(s, m - 1) : cplx{};
        return Jet{f.value * sm, f.derivative * sm + f.value * double(m) * sm1 * ds, f.scale * std::abs(sm)};
        };
      };
      const cplx margin{0.1, 0.1 * spec.tau};
      const auto run = [&](const AnalyticFn& h) {
        return localize_zeros(cancel(h), spec.beta - margin, spec.beta + 1.0 + itau + margin, opts.localize_opts);
      };
      const Located loc = locate(run, make_composite(p, wpf), fn, contour, r.count, r.notes);
      enclosed = loc.enclosed;
      r.localized = loc.ok;
      r.zeros_perturbed = loc.perturbed;
      // Disks sitting on a lattice point come from the cancelling factor.
      for (const auto& z : loc.all)
        for (cplx c : corners) {
          const double dist = std::abs(z.center - c);
          if (dist < 2.0 * delta && dist > z.radius + 1e-6) shrink = true;
        }
    }
    if (shrink) {
      if (delta / 2.0 >= opts.min_delta) {
        delta /= 2.0;
        continue;
      }
      r.pole_cluster = true;
      r.notes.push_back("zero within 2 delta of a pole at the smallest notch radius");
    }
    finish(r, enclosed);
    return r;
  }
}

int line_im_zero_count(const BivariatePolynomial& p, double tau, LineKind line, Component component,
                       const LineCountOptions& opts) {
  const LatticeParams lattice = wp_invariants(tau);
  const cplx base = line == LineKind::horizontal ? cplx{0.0, opts.half_period ? tau / 2.0 : 0.0}
                                                 : cplx{opts.half_period ? 0.5 : 0.0, 0.0};
  const cplx dir = line == LineKind::horizontal ? cplx{1.0, 0.0} : cplx{0.0, tau};
  const auto fn = [&](double t) {
    const cplx z = base + t * dir;
    const double w = wp_eval(z, lattice).real();
    const cplx v = p(z, w);
    return component == Component::imag ? v.imag() : v.real();
  };
  RealZeroOptions zo;
  zo.initial_points = opts.initial_points;
  zo.endpoint_offset = opts.endpoint_offset;
  return real_zero_count(fn, 0.0, 1.0, zo).count;
}

BivariatePolynomial imaginary_axis_reduction(const BivariatePolynomial& p) {
  std::vector<std::vector<cplx>> rows(p.deg_x() + 1, std::vector<cplx>(p.deg_y() + 1));
  cplx ik{1.0, 0.0};
  for (int k = 0; k <= p.deg_x(); ++k) {
    for (int l = 0; l <= p.deg_y(); ++l) rows[k][l] = (p.coeff(k, l) * ik).imag();
    ik *= cplx{0.0, 1.0};
  }
  return BivariatePolynomial::from_rows(rows);
}

double arc_winding_contribution(const AnalyticFn& f, cplx center, double delta, double angle_from, double angle_to,
                                const WindingOptions& opts) {
  const Contour arc({PathSegment::arc(center, delta, angle_from, angle_to)}, false);
  return std::abs(log_increment(f, arc, opts).increment.imag()) / two_pi;
}

}  // namespace mzl
