#include <cmath>
#include <random>

#include <nlohmann/json.hpp>

#include "cli.hpp"
#include "mzl/bounds.hpp"
#include "mzl/error.hpp"
#include "mzl/hypergeometric.hpp"
#include "mzl/pfaffian.hpp"
#include "mzl/qseries.hpp"
#include "mzl/weierstrass.hpp"

namespace mzl::cli {
namespace {

std::string dec(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6e", x);
  return buf;
}

nlohmann::json check(const std::string& name, double value, double threshold) {
  return {{"name", name}, {"value", dec(value)}, {"threshold", dec(threshold)}, {"pass", value < threshold}};
}

nlohmann::json flag(const std::string& name, bool ok) { return {{"name", name}, {"pass", ok}}; }

double gauss_sweep(const RunConfig& cfg) {
  double worst = 0.0;
  const Hyp2f1Options opts{1e-3, cfg.series_tol};
  for (int k = 0; k < 100; ++k) {
    const double a = 0.1 + 0.9 * (k % 10) / 10.0;
    const double b = 0.35 + 0.05 * (k % 7);
    const double c = 1.2 + 0.1 * (k % 5);
    const double z = 0.95 * (k + 0.5) / 100.0;
    const auto [r1, r2] = gauss_relation_residuals(a, b, c, z, opts);
    worst = std::max({worst, r1, r2});
  }
  return worst;
}

double wp_ode_sweep(double tau, int n, std::uint64_t seed) {
  const LatticeParams lat = wp_invariants(tau);
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(0.05, 0.95);
  double worst = 0.0;
  for (int k = 0; k < n; ++k) {
    const cplx z{u(rng), tau * u(rng)};
    const WpValue v = wp_evaluate(z, lat);
    const cplx w = v.value, d = v.derivative;
    const cplx rhs = 4.0 * w * w * w - lat.g2 * w - lat.g3;
    const double scale = std::norm(d) + 4.0 * std::pow(std::abs(w), 3) + std::abs(lat.g2 * w) + std::abs(lat.g3);
    worst = std::max(worst, std::abs(d * d - rhs) / scale);
  }
  return worst;
}

}  // namespace

nlohmann::json run_selftest(const RunConfig& cfg) {
  nlohmann::json checks = nlohmann::json::array();
  auto guarded = [&](const std::string& name, auto fn) {
    try {
      checks.push_back(fn());
    } catch (const std::exception& e) {
      checks.push_back({{"name", name}, {"pass", false}, {"error", e.what()}});
    }
  };

  guarded("gauss_contiguous", [&] { return check("gauss_contiguous", gauss_sweep(cfg), 1e-9); });
  guarded("wp_ode", [&] {
    return check("wp_ode", std::max(wp_ode_sweep(1.0, 500, cfg.seed), wp_ode_sweep(1.5, 500, cfg.seed + 1)), 1e-8);
  });
  guarded("ramanujan_inversion", [&] {
    double worst = 0.0;
    for (int k = 0; k < 20; ++k) worst = std::max(worst, ramanujan_inversion_residual(0.02 + 0.96 * k / 19.0));
    return check("ramanujan_inversion", worst, 1e-8);
  });
  guarded("j_i", [&] { return check("j_i", std::abs(klein_j(cplx{0.0, 1.0}) - 1728.0), 1e-6); });
  guarded("j_2i", [&] { return check("j_2i", std::abs(klein_j(cplx{0.0, 2.0}) - 287496.0), 1e-3); });
  guarded("j_rho", [&] { return check("j_rho", std::abs(klein_j(std::polar(1.0, 2.0 * pi / 3.0))), 1e-6); });
  guarded("j_inverse_1728", [&] { return flag("j_inverse_1728", j_inverse(1728.0) == 1.0); });
  guarded("j_inverse_round_trip", [&] {
    double worst = 0.0;
    for (double x : {2000.0, 1e4, 1e5}) worst = std::max(worst, std::abs(klein_j(cplx{0.0, j_inverse(x)}) - x) / x);
    return check("j_inverse_round_trip", worst, 1e-7);
  });
  guarded("chain_hypergeometric", [&] {
    const double r = std::max(chain_residual(build_hypergeometric_chain(1.0 / 6.0, 5.0 / 6.0, 1.0), 200).max_residual,
                              chain_residual(build_hypergeometric_chain(0.3, 0.7, 1.4), 200).max_residual);
    return check("chain_hypergeometric", r, cfg.residual_tol);
  });
  guarded("chain_ratio", [&] {
    return check("chain_ratio", chain_residual(build_ratio_chain(), 200).max_residual, cfg.residual_tol);
  });
  guarded("chain_ratio_matches_j_inverse", [&] {
    const auto f = build_ratio_function();
    double worst = 0.0;
    for (double y : {0.2, 0.5, 0.8}) worst = std::max(worst, std::abs(f(y) - j_inverse(1728.0 / (1.0 - y * y))));
    return check("chain_ratio_matches_j_inverse", worst, 1e-8);
  });
  guarded("chain_corrupted_detected", [&] {
    const auto bad = build_ratio_chain().corrupted(4, 0, 1e-3);
    return flag("chain_corrupted_detected", chain_residual(bad, 200).max_residual > cfg.residual_tol);
  });
  guarded("bound_ledger", [&] {
    bool ok = true;
    for (int d = 1; d <= 100; ++d) ok = ok && imaginary_axis_ledger_holds(d) && contour_ledger_holds(d);
    return flag("bound_ledger", ok);
  });
  guarded("bound_values", [&] {
    return flag("bound_values", theorem2_bound(2) == 65 && proposition_bound(3) == 55 &&
                                    theorem1_bound(1) == BigInt(1) << 68);
  });

  bool all = true;
  for (const auto& c : checks) all = all && c["pass"].get<bool>();
  return {{"schema", "mzl/1"}, {"checks", checks}, {"all_pass", all}};
}

}  // namespace mzl::cli
