#pragma once

namespace heun {

// Arguments of 2F1(alpha, beta; c; z) on the real line.
struct Hyp2F1Args {
  double alpha = 0;
  double beta = 0;
  double c = 1;
  double z = 0;
};

// Gauss hypergeometric function for real z in (-1, 1).
//
// Power series for z >= -1/2; the Pfaff transformation
// 2F1(a, b; c; z) = (1 - z)^{-a} 2F1(a, c - b; c; z / (z - 1)) brings
// z in (-1, -1/2) into (1/3, 1/2).  Numerator parameters are sorted before
// evaluation so the result is symmetric in (alpha, beta) bit for bit.
//
// Throws HeunError: kDomainError (|z| >= 1 or non-finite input),
// kPoleAtC (c within 1e-9 of -m and the series does not stop before the
// pole), kNoConvergence (term budget exhausted).
double hyp2f1(const Hyp2F1Args& args);

// d/dz 2F1 = (alpha beta / c) 2F1(alpha + 1, beta + 1; c + 1; z).
double hyp2f1_derivative(const Hyp2F1Args& args);

// Residual of z F' = (c - 1) [F(c - 1) - F(c)].
double contiguous_lower_c(const Hyp2F1Args& args);

// Residual of
// (z - 1) F' = -(alpha + beta - c) F + (alpha + beta - c - alpha beta / c) F(c + 1).
double contiguous_raise_c(const Hyp2F1Args& args);

namespace hyp2f1_detail {
inline constexpr int kTermBudget = 10000;
inline constexpr double kStopRatio = 1e-16;
inline constexpr double kPoleTolerance = 1e-9;
}  // namespace hyp2f1_detail

}  // namespace heun
