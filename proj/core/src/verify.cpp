#include "mzl/verify.hpp"

#include <nlohmann/json.hpp>

#include "mzl/bounds.hpp"
#include "mzl/domains.hpp"
#include "mzl/error.hpp"
#include "report_util.hpp"

namespace mzl {

BivariatePolynomial random_polynomial(std::mt19937_64& rng, int max_degree, bool real_coefficients) {
  if (max_degree < 1) throw DomainError("random_polynomial: max_degree must be at least 1");
  std::uniform_int_distribution<int> deg(1, max_degree);
  const int d = deg(rng);
  std::uniform_int_distribution<int> other(0, d);
  std::bernoulli_distribution which(0.5);
  int dx = other(rng), dy = other(rng);
  (which(rng) ? dx : dy) = d;
  std::normal_distribution<double> normal;
  std::vector<std::vector<cplx>> rows(dx + 1, std::vector<cplx>(dy + 1));
  for (auto& row : rows)
    for (auto& c : row) {
      const double re = normal(rng);
      c = {re, real_coefficients ? 0.0 : normal(rng)};
    }
  return BivariatePolynomial::from_rows(rows);
}

namespace {

nlohmann::json run_trial(const std::string& domain, int index, const BivariatePolynomial& p, double tau) {
  nlohmann::json t = {{"index", index}, {"domain", domain}, {"degree", p.degree()},
                      {"P", detail::poly_strings(p)}};
  try {
    const ZeroCountReport r = domain == "j" ? count_zeros_j(p) : count_zeros_wp(p, WpDomainSpec{.tau = tau});
    t["count"] = r.count;
    t["bound"] = to_string(r.bound);
    t["localized_multiplicity"] = r.localized_multiplicity;
    t["cross_validated"] = r.cross_validated;
    t["pass"] = r.within_bound && r.cross_validated;
  } catch (const Error& e) {
    t["error"] = e.what();
    t["pass"] = false;
  }
  return t;
}

}  // namespace

nlohmann::json verify_bounds_report(const VerifySuite& suite) {
  std::mt19937_64 rng(suite.seed);
  nlohmann::json trials = nlohmann::json::array();
  nlohmann::json failures = nlohmann::json::array();
  int index = 0;
  auto record = [&](nlohmann::json t) {
    if (!t["pass"].get<bool>()) failures.push_back(t["index"]);
    trials.push_back(std::move(t));
  };
  for (int k = 0; k < suite.j_trials; ++k)
    record(run_trial("j", index++, random_polynomial(rng, suite.j_max_degree), suite.tau));
  for (int k = 0; k < suite.wp_trials; ++k)
    record(run_trial("wp", index++, random_polynomial(rng, suite.wp_max_degree), suite.tau));

  bool axis = true, contour = true;
  nlohmann::json ledger_failures = nlohmann::json::array();
  for (int d = 1; d <= suite.ledger_max_d; ++d) {
    const bool a = imaginary_axis_ledger_holds(d), c = contour_ledger_holds(d);
    if (!a || !c) ledger_failures.push_back(d);
    axis = axis && a;
    contour = contour && c;
  }

  return {{"schema", "mzl/1"},
          {"config",
           {{"j_trials", suite.j_trials},
            {"wp_trials", suite.wp_trials},
            {"j_max_degree", suite.j_max_degree},
            {"wp_max_degree", suite.wp_max_degree},
            {"tau", detail::decimal(suite.tau)},
            {"seed", std::to_string(suite.seed)}}},
          {"trials", std::move(trials)},
          {"ledger",
           {{"max_d", suite.ledger_max_d},
            {"imaginary_axis", axis},
            {"contour", contour},
            {"failures", std::move(ledger_failures)}}},
          {"failures", failures},
          {"all_pass", failures.empty() && axis && contour}};
}

}  // namespace mzl
