#pragma once

#include <cstdint>
#include <random>

#include <nlohmann/json_fwd.hpp>

#include "mzl/poly.hpp"

namespace mzl {

struct VerifySuite {
  int j_trials = 20;
  int wp_trials = 50;
  int j_max_degree = 2;
  int wp_max_degree = 3;
  double tau = 1.0;
  std::uint64_t seed = 1;
  /// Ledger arithmetic is checked for d = 1..ledger_max_d.
  int ledger_max_d = 100;
};

/// Degree uniform in [1, max_degree]; X and Y degrees at most that, one of
/// them equal to it; coefficients standard complex normal (or real normal).
BivariatePolynomial random_polynomial(std::mt19937_64& rng, int max_degree, bool real_coefficients = false);

/// Randomized count-versus-bound trials plus the exact ledger arithmetic.
/// Trial errors are recorded and the suite continues.
nlohmann::json verify_bounds_report(const VerifySuite& suite);

}  // namespace mzl
