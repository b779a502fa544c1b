#include <algorithm>
#include <cmath>
#include <limits>

#include "mzl/error.hpp"
#include "mzl/pfaffian.hpp"

namespace mzl {
namespace {

struct Sample {
  double x;
  double v;
};

int sign_of(double v) { return (v > 0.0) - (v < 0.0); }

double bisect(const std::function<double(double)>& f, double lo, double flo, double hi, double width) {
  while (hi - lo > width) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    const double fm = f(mid);
    if (fm == 0.0) return mid;
    if (sign_of(fm) == sign_of(flo)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

// Golden-section search for the minimum of |f| on [lo, hi].
Sample min_abs(const std::function<double(double)>& f, double lo, double hi) {
  constexpr double g = 0.6180339887498949;
  double a = lo, b = hi;
  double c = b - g * (b - a), d = a + g * (b - a);
  double fc = std::abs(f(c)), fd = std::abs(f(d));
  for (int it = 0; it < 80 && b - a > 1e-13 * (1.0 + std::abs(a)); ++it) {
    if (fc < fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - g * (b - a);
      fc = std::abs(f(c));
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + g * (b - a);
      fd = std::abs(f(d));
    }
  }
  return fc < fd ? Sample{c, fc} : Sample{d, fd};
}

void refine(const std::function<double(double)>& f, const Sample& l, const Sample& r, double threshold,
            int depth, std::vector<Sample>& out) {
  // Emits interior samples between l and r (exclusive), in order.
  if (depth <= 0) return;
  if (sign_of(l.v) != sign_of(r.v)) return;
  if (std::min(std::abs(l.v), std::abs(r.v)) >= threshold) return;
  const double xm = 0.5 * (l.x + r.x);
  const Sample m{xm, f(xm)};
  refine(f, l, m, threshold, depth - 1, out);
  out.push_back(m);
  refine(f, m, r, threshold, depth - 1, out);
}

}  // namespace

RealZeroCount real_zero_count(const std::function<double(double)>& f, double a, double b,
                              const RealZeroOptions& opts) {
  const double lo = a + opts.endpoint_offset;
  const double hi = b - opts.endpoint_offset;
  if (!(lo < hi)) throw DomainError("real_zero_count: empty interval");
  const int n = std::max(opts.initial_points, 8);

  std::vector<Sample> grid(n + 1);
  for (int i = 0; i <= n; ++i) {
    const double x = i == n ? hi : lo + (hi - lo) * i / n;
    const double v = f(x);
    if (!std::isfinite(v)) throw DomainError("real_zero_count: f is not finite at a sample");
    grid[i] = {x, v};
  }

  // Dyadic refinement where |f| dips below a fraction of its local scale.
  constexpr int kWindow = 8;
  std::vector<Sample> samples;
  samples.reserve(grid.size());
  for (int i = 0; i <= n; ++i) {
    samples.push_back(grid[i]);
    if (i == n) break;
    double local = 0.0;
    for (int k = std::max(0, i - kWindow); k <= std::min(n, i + 1 + kWindow); ++k)
      local = std::max(local, std::abs(grid[k].v));
    refine(f, grid[i], grid[i + 1], opts.refine_fraction * local, opts.max_refine_depth, samples);
  }

  // Typical magnitude: the median over the grid ignores poles at the ends.
  std::vector<double> mags(grid.size());
  std::transform(grid.begin(), grid.end(), mags.begin(), [](const Sample& s) { return std::abs(s.v); });
  std::nth_element(mags.begin(), mags.begin() + mags.size() / 2, mags.end());
  const double zero_floor = 64.0 * std::numeric_limits<double>::epsilon() * mags[mags.size() / 2];

  RealZeroCount out;
  const std::size_t m = samples.size();
  std::size_t i = 0;
  // Walk runs: a run of exact zeros between nonzero samples.
  int last_sign = 0;
  std::size_t last_idx = 0;
  for (; i < m; ++i) {
    const int s = sign_of(samples[i].v);
    if (s == 0) continue;
    if (last_sign != 0) {
      const bool gap = i - last_idx > 1;  // exact zeros in between
      if (gap) {
        const double width = samples[i].x - samples[last_idx].x;
        if (i - last_idx > 4 && width > 1e3 * opts.root_width)
          throw AmbiguityError("real_zero_count: plateau of exact zeros", samples[last_idx].x,
                               samples[i].x);
        const double xz = samples[(last_idx + i) / 2].x;
        if (s != last_sign) {
          out.roots.push_back(xz);
        } else {
          out.tangential.push_back(xz);
        }
      } else if (s != last_sign) {
        out.roots.push_back(bisect(f, samples[last_idx].x, samples[last_idx].v, samples[i].x, opts.root_width));
      }
    }
    last_sign = s;
    last_idx = i;
  }

  if (last_sign == 0) throw AmbiguityError("real_zero_count: f vanishes at every sample", lo, hi);

  // Near-zero plateau: a long, wide stretch of samples at the rounding floor.
  // An isolated even-order root also sits at the floor, but only over a
  // sliver of the interval.
  const double plateau_width = 1e-4 * (hi - lo);
  std::size_t run = 0;
  for (std::size_t k = 0; k < m; ++k) {
    if (std::abs(samples[k].v) <= zero_floor) {
      ++run;
      const double x0 = samples[k + 1 - run].x;
      if (run > 16 && samples[k].x - x0 > plateau_width)
        throw AmbiguityError("real_zero_count: unresolved near-zero plateau", x0, samples[k].x);
    } else {
      run = 0;
    }
  }

  // Even-order zero candidates: local minima of |f| without a sign change.
  for (std::size_t k = 1; k + 1 < m; ++k) {
    const double l = std::abs(samples[k - 1].v), c = std::abs(samples[k].v), r = std::abs(samples[k + 1].v);
    if (c == 0.0 || !(c <= l && c <= r)) continue;
    if (sign_of(samples[k - 1].v) != sign_of(samples[k + 1].v)) continue;
    if (sign_of(samples[k - 1].v) != sign_of(samples[k].v)) continue;
    const Sample best = min_abs(f, samples[k - 1].x, samples[k + 1].x);
    if (best.v < opts.tangential_tol && sign_of(f(best.x)) == sign_of(samples[k].v))
      out.tangential.push_back(best.x);
  }

  out.count = static_cast<int>(out.roots.size());
  return out;
}

}  // namespace mzl
