#pragma once

#include <functional>
#include <initializer_list>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "mzl/bounds.hpp"

namespace mzl {

/// Real polynomial in (x, f_1, ..., f_k) stored as a coefficient table.
/// Variable 0 is x; variable i >= 1 is the chain member f_i.
class MultiPoly {
public:
  struct Term {
    double coeff;
    std::vector<int> exponents;  ///< one entry per variable
  };

  explicit MultiPoly(int num_vars);

  /// Adds coeff * prod var^power over the given (var, power) factors.
  MultiPoly& add(double coeff, std::initializer_list<std::pair<int, int>> factors = {});
  MultiPoly& add(double coeff, const std::vector<int>& exponents);

  int num_vars() const noexcept { return num_vars_; }
  const std::vector<Term>& terms() const noexcept { return terms_; }
  int total_degree() const noexcept;
  /// Largest variable index with a nonzero exponent; -1 for a constant.
  int highest_variable() const noexcept;

  double evaluate(std::span<const double> vars) const;

private:
  int num_vars_;
  std::vector<Term> terms_;
};

/// f_1..f_r on (lo, hi) with f_i' = rhs_i(x, f_1, ..., f_i).
///
/// `members` evaluate each f_i directly (independently of the rhs), which is
/// what the residual harness compares against.
class PfaffianChain {
public:
  using Member = std::function<double(double)>;

  PfaffianChain(std::string name, double lo, double hi, std::vector<MultiPoly> rhs,
                std::vector<Member> members);

  const std::string& name() const noexcept { return name_; }
  double lo() const noexcept { return lo_; }
  double hi() const noexcept { return hi_; }
  int order() const noexcept { return static_cast<int>(rhs_.size()); }
  /// Maximum total degree over the right-hand sides.
  int alpha() const noexcept;
  const std::vector<MultiPoly>& rhs() const noexcept { return rhs_; }
  const std::vector<Member>& members() const noexcept { return members_; }

  /// (x, f_1(x), ..., f_r(x)).
  std::vector<double> point(double x) const;

  /// Returns a copy with `delta` added to coefficient `term` of rhs `member`
  /// (negative control for the residual harness).
  PfaffianChain corrupted(int member, int term, double delta) const;

private:
  std::string name_;
  double lo_, hi_;
  std::vector<MultiPoly> rhs_;
  std::vector<Member> members_;
};

/// Outer polynomial in (x, f_1, ..., f_r) over a chain.
class PfaffianFunction {
public:
  PfaffianFunction(PfaffianChain chain, MultiPoly outer);

  const PfaffianChain& chain() const noexcept { return chain_; }
  const MultiPoly& outer() const noexcept { return outer_; }
  int beta() const noexcept { return outer_.total_degree(); }
  double operator()(double x) const;
  BigInt zero_bound() const { return khovanskii_zero_bound(chain_.order(), chain_.alpha(), beta()); }

private:
  PfaffianChain chain_;
  MultiPoly outer_;
};

/// 1/x, 1/(1-x), F/F(c+), F(c+), F, 1/F on (0, 1) with F = 2F1(a, b; c; x).
PfaffianChain build_hypergeometric_chain(double a, double b, double c);

/// Order-9 chain in y on (0, 1) carrying 2F1(1/6,5/6;1;1/2 + y/2) and
/// 1/2F1(1/6,5/6;1;1/2 - y/2).
PfaffianChain build_ratio_chain();
/// The hypergeometric ratio as a Pfaffian function on build_ratio_chain().
PfaffianFunction build_ratio_function();

/// Single-member chain {1/x} on (lo, hi).
PfaffianChain build_reciprocal_chain(double lo, double hi);

struct ChainResidualOptions {
  double endpoint_offset = 1e-3;
  double step = 1e-6;
};

struct ChainResidual {
  double max_residual = 0.0;
  int worst_member = -1;
  double worst_x = 0.0;
};

/// max over members and samples of |f_i' - rhs_i| / max(1, |rhs_i|), with
/// f_i' from a five-point central difference of the member evaluator.
ChainResidual chain_residual(const PfaffianChain& chain, int n_samples,
                             const ChainResidualOptions& opts = {});

struct RealZeroOptions {
  int initial_points = 4096;
  /// Refine pairs whose smaller |f| is below this fraction of the local scale.
  double refine_fraction = 1e-3;
  int max_refine_depth = 16;
  double root_width = 1e-10;
  double tangential_tol = 1e-9;
  /// Keep this far from the (open) interval ends.
  double endpoint_offset = 0.0;
};

struct RealZeroCount {
  int count = 0;                 ///< isolated sign-change roots
  std::vector<double> roots;
  std::vector<double> tangential;  ///< suspected even-order zeros, not counted
};

/// Sign-change roots of f on (a, b); a lower bound on the true zero count.
RealZeroCount real_zero_count(const std::function<double(double)>& f, double a, double b,
                              const RealZeroOptions& opts = {});

}  // namespace mzl
