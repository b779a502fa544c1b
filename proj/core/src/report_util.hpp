#pragma once

#include <charconv>
#include <cmath>
#include <string>

#include <nlohmann/json.hpp>

#include "mzl/poly.hpp"

namespace mzl::detail {

// Shortest round-trip decimal form.
inline std::string decimal(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

inline nlohmann::json decimal(cplx z) { return nlohmann::json::array({decimal(z.real()), decimal(z.imag())}); }

inline nlohmann::json poly_strings(const BivariatePolynomial& p) {
  nlohmann::json rows = nlohmann::json::array();
  for (int i = 0; i <= p.deg_x(); ++i) {
    nlohmann::json row = nlohmann::json::array();
    for (int j = 0; j <= p.deg_y(); ++j) row.push_back(decimal(p.coeff(i, j)));
    rows.push_back(std::move(row));
  }
  return {{"deg_x", p.deg_x()}, {"deg_y", p.deg_y()}, {"coeffs", std::move(rows)}};
}

}  // namespace mzl::detail
