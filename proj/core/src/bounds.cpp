#include "mzl/bounds.hpp"

#include "mzl/error.hpp"

namespace mzl {
namespace {

void require_degree(int d) {
  if (d < 1) throw DomainError("bound: degree must be >= 1");
}

BigInt pow_int(BigInt base, int e) { return boost::multiprecision::pow(base, static_cast<unsigned>(e)); }

}  // namespace

BigInt khovanskii_zero_bound(int r, int alpha, int beta) {
  if (r < 1 || alpha < 1 || beta < 0) throw DomainError("khovanskii_zero_bound: need r, alpha >= 1, beta >= 0");
  if (beta == 0) return 0;
  const unsigned shift = static_cast<unsigned>(r) * static_cast<unsigned>(r - 1) / 2u;
  return (BigInt(1) << shift) * beta * pow_int(BigInt(alpha + beta), r);
}

BigInt theorem1_bound(int d) {
  require_degree(d);
  return (BigInt(1) << 68) * pow_int(BigInt(d), 10);
}

BigInt theorem2_bound(int d) {
  require_degree(d);
  const BigInt D(d);
  return 8 * D * D + 14 * D + 5;
}

BigInt theorem2_proof_bound(int d) {
  require_degree(d);
  const BigInt D(d);
  return 8 * D * D + 14 * D + 7;
}

BigInt proposition_bound(int d) {
  require_degree(d);
  const BigInt D(d);
  return 4 * D * D + 6 * D + 1;
}

BigInt bezout_step_bound(int d) {
  require_degree(d);
  const BigInt D(d);
  return 2 * D * D + 3 * D;
}

bool imaginary_axis_ledger_holds(int d) {
  require_degree(d);
  return khovanskii_zero_bound(9, 3, 4 * d) <= (BigInt(1) << 64) * pow_int(BigInt(d), 10);
}

bool contour_ledger_holds(int d) {
  require_degree(d);
  const BigInt d10 = pow_int(BigInt(d), 10);
  // 5 (8 * 2^64 d^10 + 10 d) + 1 <= 5 * 2^68 d^10
  const BigInt lhs = 5 * (8 * (BigInt(1) << 64) * d10 + 10 * BigInt(d)) + 1;
  const BigInt rhs = 5 * (BigInt(1) << 68) * d10;
  return lhs <= rhs;
}

}  // namespace mzl
