#include "heun/sampling.hpp"

#include <cmath>
#include <sstream>

#include "heun/error.hpp"
#include "heun/recurrence.hpp"

namespace heun {
namespace {

std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

double distance_to_integer(double x) { return std::abs(x - std::round(x)); }

double sample_a(UniformSource& rng) {
  // Total length 2.5 + 2.5; pick a side by position.
  const double t = rng.uniform(0.0, 5.0);
  return t < 2.5 ? 1.5 + t : -3.0 + (t - 2.5);
}

bool well_conditioned(const HeunParameters& p, Gamma0Choice choice, int N,
                      Frame frame, const SamplingBox& box) {
  const ExpansionSpec spec{choice, frame, Terminating{N}};
  const RecurrenceContext ctx = make_context(p, spec);
  if (distance_to_integer(ctx.gamma0()) < box.integer_gap) return false;
  for (int n = 1; n <= N + 1; ++n) {
    const double scale = (1.0 + std::abs(ctx.params().a())) * n;
    if (std::abs(coeff_R(n, ctx)) < 1e-2 * scale) return false;
  }
  return true;
}

bool within(double bound, std::initializer_list<double> values) {
  for (double v : values) {
    if (std::abs(v) > bound) return false;
  }
  return true;
}

[[noreturn]] void exhausted(const char* what) {
  std::ostringstream msg;
  msg << "could not sample " << what << " within the attempt budget";
  throw HeunError(ErrorCode::kNoConvergence, msg.str());
}

}  // namespace

double UniformSource::next() {
  return static_cast<double>(splitmix64(state_) >> 11) * 0x1.0p-53;
}

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t salt0,
                       std::uint64_t salt1) {
  std::uint64_t state = seed;
  std::uint64_t h = splitmix64(state);
  state = h ^ salt0;
  h = splitmix64(state);
  state = h ^ salt1;
  return splitmix64(state);
}

HeunParameters sample_terminating_params(Gamma0Choice choice, int N,
                                         std::uint64_t seed,
                                         const SamplingBox& box) {
  UniformSource rng(mix_seed(seed, static_cast<std::uint64_t>(choice) + 1,
                             static_cast<std::uint64_t>(N)));
  const double B = box.exponent_bound;
  for (int attempt = 0; attempt < box.max_attempts; ++attempt) {
    const double a = sample_a(rng);
    const double gamma = rng.uniform(-B, B);
    const double delta = rng.uniform(-B, B);
    double epsilon = 0, alpha = 0, beta = 0;
    if (choice == Gamma0Choice::kGamma) {
      epsilon = -N;
      alpha = rng.uniform(-B, B);
      beta = gamma + delta + epsilon - 1.0 - alpha;
    } else {
      epsilon = rng.uniform(-B, B);
      const double lead = epsilon + gamma + N;
      const double other = delta - 1.0 - N;
      alpha = choice == Gamma0Choice::kAlpha ? lead : other;
      beta = choice == Gamma0Choice::kAlpha ? other : lead;
    }
    if (!within(B, {gamma, delta, epsilon, alpha, beta})) continue;
    try {
      const HeunParameters p =
          make_params(gamma, delta, epsilon, alpha, beta, 0.0, a);
      if (!well_conditioned(p, choice, N, Frame::kDirectZ, box)) continue;
      if (choice == Gamma0Choice::kGamma &&
          !well_conditioned(p, choice, N, Frame::kOneMinusZ, box)) {
        continue;
      }
      return p;
    } catch (const HeunError&) {
      continue;
    }
  }
  exhausted("terminating parameters");
}

HeunParameters sample_positive_epsilon_params(int N, std::uint64_t seed,
                                              const SamplingBox& box) {
  if (N < 2) {
    throw HeunError(ErrorCode::kInvalidTerminationClass,
                    "the lift needs eps = +N with N >= 2");
  }
  UniformSource rng(mix_seed(seed, 0x5eed, static_cast<std::uint64_t>(N)));
  const double B = box.exponent_bound;
  for (int attempt = 0; attempt < box.max_attempts; ++attempt) {
    const double a = sample_a(rng);
    const double gamma = rng.uniform(-B, B);
    const double delta = rng.uniform(-B, B);
    const double alpha = rng.uniform(-B, B);
    const double epsilon = N;
    const double beta = gamma + delta + epsilon - 1.0 - alpha;
    if (!within(B, {gamma, delta, alpha, beta})) continue;
    try {
      const HeunParameters p =
          make_params(gamma, delta, epsilon, alpha, beta, 0.0, a);
      const HeunParameters lifted = map_positive_epsilon(p);
      if (!within(B, {lifted.alpha(), lifted.beta()})) continue;
      if (!well_conditioned(lifted, Gamma0Choice::kGamma, N - 2,
                            Frame::kDirectZ, box)) {
        continue;
      }
      return p;
    } catch (const HeunError&) {
      continue;
    }
  }
  exhausted("positive-epsilon parameters");
}

}  // namespace heun
