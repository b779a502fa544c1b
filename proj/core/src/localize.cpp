#include <array>
#include <cmath>
#include <deque>

#include "mzl/contour.hpp"
#include "mzl/error.hpp"

namespace mzl {
namespace {

struct Box {
  cplx ll, ur;
  int winding;
  int depth;
};

double half_diagonal(const Box& b) { return 0.5 * std::abs(b.ur - b.ll); }
cplx center(const Box& b) { return 0.5 * (b.ll + b.ur); }

// Off-center splits keep symmetric zeros off the new edges; the sequence is
// fixed so runs are reproducible.
constexpr std::array<double, 6> kJitter{0.0137, -0.0211, 0.0293, -0.0371, 0.0449, 0.0071};

}  // namespace

LocalizeResult localize_zeros(const AnalyticFn& f, cplx lower_left, cplx upper_right, const LocalizeOptions& opts) {
  LocalizeResult out;
  const cplx size = upper_right - lower_left;
  if (!(size.real() > 0.0 && size.imag() > 0.0)) throw DomainError("localize_zeros: degenerate box");

  // Top box, nudged outward if its boundary meets a zero.
  int top = 0;
  bool ok = false;
  cplx ll = lower_left, ur = upper_right;
  for (int attempt = 0; attempt < 6 && !ok; ++attempt) {
    const double p = opts.boundary_perturbation * attempt * (1.0 + 0.37 * attempt);
    ll = lower_left - cplx{p * size.real(), p * size.imag()};
    ur = upper_right + cplx{p * 1.13 * size.real(), p * 0.91 * size.imag()};
    try {
      top = winding_number(f, Contour::box(ll, ur), opts.winding).winding;
      ok = true;
    } catch (const ZeroOnContourError&) {
      if (attempt == 5) throw;
    }
  }
  out.top_winding = top;
  out.lower_left = ll;
  out.upper_right = ur;
  out.boxes = 1;
  if (top < 0) throw DomainError("localize_zeros: negative winding; f has poles in the box");

  std::deque<Box> queue;
  if (top > 0) queue.push_back({ll, ur, top, 0});
  while (!queue.empty()) {
    const Box b = queue.front();
    queue.pop_front();
    if (half_diagonal(b) <= opts.target_radius) {
      out.zeros.push_back({center(b), half_diagonal(b), b.winding, true});
      continue;
    }
    if (b.depth >= opts.max_depth) {
      out.zeros.push_back({center(b), half_diagonal(b), b.winding, false});
      continue;
    }
    bool split = false;
    for (double jx : kJitter) {
      const double xm = 0.5 * (b.ll.real() + b.ur.real()) + jx * (b.ur.real() - b.ll.real());
      const double ym = 0.5 * (b.ll.imag() + b.ur.imag()) - 0.7 * jx * (b.ur.imag() - b.ll.imag());
      const std::array<Box, 4> kids{
          Box{b.ll, {xm, ym}, 0, b.depth + 1},
          Box{{xm, b.ll.imag()}, {b.ur.real(), ym}, 0, b.depth + 1},
          Box{{xm, ym}, b.ur, 0, b.depth + 1},
          Box{{b.ll.real(), ym}, {xm, b.ur.imag()}, 0, b.depth + 1},
      };
      std::array<int, 4> w{};
      try {
        for (int k = 0; k < 4; ++k) {
          w[k] = winding_number(f, Contour::box(kids[k].ll, kids[k].ur), opts.winding).winding;
          ++out.boxes;
        }
      } catch (const ZeroOnContourError&) {
        continue;
      } catch (const NonconvergenceError&) {
        continue;
      }
      if (w[0] + w[1] + w[2] + w[3] != b.winding) continue;
      for (int k = 0; k < 4; ++k)
        if (w[k] != 0) queue.push_back({kids[k].ll, kids[k].ur, w[k], kids[k].depth});
      split = true;
      break;
    }
    // Every split attempt hit the noise floor: report the cluster as is.
    if (!split) out.zeros.push_back({center(b), half_diagonal(b), b.winding, false});
  }
  return out;
}

}  // namespace mzl
