#pragma once

#include <cstdint>
#include <optional>

#include "heun/params.hpp"

namespace heun {

// Deterministic source of uniform doubles; identical streams on every
// platform for a given seed.
class UniformSource {
 public:
  explicit UniformSource(std::uint64_t seed) : state_(seed) {}

  double next();  // [0, 1)
  double uniform(double lo, double hi) { return lo + (hi - lo) * next(); }

 private:
  std::uint64_t state_;
};

// Mixes several integers into one seed.
std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t salt0,
                       std::uint64_t salt1 = 0);

struct SamplingBox {
  double exponent_bound = 5.0;  // |γ|, |δ|, |ε|, |α|, |β| ≤ bound
  double integer_gap = 0.1;     // lower parameters kept this far from ℤ
  int max_attempts = 100000;
};

// Parameters in the N-th termination class of `choice` with
// a ∈ [1.5, 4] ∪ [−3, −0.5], lower parameters away from integers and every
// R_n (n ≤ N + 1) bounded away from zero, in both frames for γ₀ = γ.  The
// accessory parameter is left at 0.
HeunParameters sample_terminating_params(Gamma0Choice choice, int N,
                                         std::uint64_t seed,
                                         const SamplingBox& box = {});

// Parameters with ε = +N (N ≥ 2) whose lifted equation has real exponents
// and falls in the γ₀ = γ class with N − 2.
HeunParameters sample_positive_epsilon_params(int N, std::uint64_t seed,
                                              const SamplingBox& box = {});

}  // namespace heun
