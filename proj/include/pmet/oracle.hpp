#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "pmet/approach.hpp"
#include "pmet/probmetric.hpp"

namespace pmet {

/// Uniform grid 0, t_max/resolution, ..., t_max used by the brute-force
/// oracles.
struct GridSpec {
  double t_max = 1.0;
  int resolution = 1000;

  double pitch() const { return t_max / resolution; }
  static GridSpec for_pair(const StepDistribution& phi,
                           const StepDistribution& psi, int resolution = 1000);
};

/// Direct finite supremum over grid splits r+s=t of phi(r)*psi(s), one
/// value per grid point.  The exact convolution dominates this everywhere
/// and agrees with it at grid points at least one pitch past the last
/// candidate jump.
std::vector<double> grid_convolve_oracle(const OrdinalSumTNorm& t,
                                         const StepDistribution& phi,
                                         const StepDistribution& psi,
                                         const GridSpec& g);

/// Least grid radius at which the supremum over the subset reaches 1, inf
/// if none.
double grid_delta_oracle(const ProbMetricSpace& m, int x, Mask a,
                         const GridSpec& g);

/// Deterministic generators.  All randomness comes from mt19937_64 seeded
/// directly, with integers reduced by modulo, so corpora reproduce
/// bit-for-bit across platforms.
StepDistribution random_step_distribution(std::mt19937_64& rng);

/// Random finite metric with distances that are exact multiples of 1/4
/// (scaled), built by min-plus closure of random symmetric weights; the
/// triangle inequality therefore holds bit-exactly.
ClassicalMetricSpace random_metric(int n_points, std::uint64_t seed,
                                   double scale = 1.0);

/// Random valid space: a symmetric few-jump step matrix pushed through
/// triangle_closure, resampled on a separation failure (at most 100
/// attempts).
ProbMetricSpace random_space(const OrdinalSumTNorm& t, int n_points,
                             std::uint64_t seed);

/// The t-norm corpus shared by the property suites: the three basic norms
/// plus assorted one- and two-summand ordinal sums.
const std::vector<OrdinalSumTNorm>& corpus_tnorms();

struct CorpusEntry {
  std::uint64_t seed = 0;
  OrdinalSumTNorm tnorm;
  int n_points = 2;
};

}  // namespace pmet
