#pragma once

#include <string>

#include <boost/multiprecision/cpp_int.hpp>

namespace mzl {

using BigInt = boost::multiprecision::cpp_int;

/// 2^{r(r-1)/2} beta (alpha + beta)^r; zero when beta = 0.
BigInt khovanskii_zero_bound(int r, int alpha, int beta);

/// 2^68 d^10: zeros of P(z, j(z)) in the standard fundamental domain.
BigInt theorem1_bound(int d);
/// 8d^2 + 14d + 5: zeros of P(z, wp(z)) in a period cell.
BigInt theorem2_bound(int d);
/// 8d^2 + 14d + 7, the constant the period-cell argument actually closes with.
BigInt theorem2_proof_bound(int d);
/// 4d^2 + 6d + 1: zeros of Im P(z, wp(z)) on an open line between adjacent poles.
BigInt proposition_bound(int d);
/// 2d^2 + 3d: the Bezout count inside the line bound.
BigInt bezout_step_bound(int d);

/// Khovanskii bound for the order-9 imaginary-axis chain, (r, alpha, beta) = (9, 3, 4d),
/// compared against 2^64 d^10.
bool imaginary_axis_ledger_holds(int d);
/// 8 * 2^64 d^10 + 10 d + 0.2 <= 2^68 d^10, checked in exact rational arithmetic
/// (both sides scaled by 5).
bool contour_ledger_holds(int d);

inline std::string to_string(const BigInt& v) { return v.str(); }

}  // namespace mzl
