#pragma once

#include <cstdint>
#include <cstdlib>
#include <functional>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

namespace mzl::cli {

/// Bad command line, config file or environment value (exit code 2).
class UsageError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

struct RunConfig {
  double series_tol = 1e-14;
  double residual_tol = 1e-7;
  double winding_tol = 0.01;
  double zero_rel_tol = 1e-12;
  double target_radius = 1e-7;
  int trials = 50;
  std::uint64_t seed = 1;
  int j_max_degree = 2;
  int wp_max_degree = 3;
};

using EnvLookup = std::function<const char*(const char*)>;

/// key = value lines; '#' starts a comment.
void load_config(std::istream& in, RunConfig& cfg);
void load_config_file(const std::string& path, RunConfig& cfg);
/// MZL_<KEY> (upper case) overrides.
void apply_env(RunConfig& cfg, const EnvLookup& env);
void validate(const RunConfig& cfg);

/// Identity and invariant checks; "all_pass" summarizes.
nlohmann::json run_selftest(const RunConfig& cfg);

/// 0 success, 1 verification failure, 2 usage error.
int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err,
                const EnvLookup& env = [](const char* k) -> const char* { return std::getenv(k); });

}  // namespace mzl::cli
