#include "pmet/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace pmet {

namespace {

double grid_point(const GridSpec& g, int i) { return g.t_max * i / g.resolution; }

int draw(std::mt19937_64& rng, int lo, int hi) {
  // Modulo reduction on mt19937_64 output: documented and reproducible.
  return lo + static_cast<int>(rng() % static_cast<std::uint64_t>(hi - lo + 1));
}

// k distinct ascending picks from {lo..hi}.
std::vector<int> draw_distinct(std::mt19937_64& rng, int k, int lo, int hi) {
  std::vector<int> out;
  while (static_cast<int>(out.size()) < k) {
    const int v = draw(rng, lo, hi);
    if (std::find(out.begin(), out.end(), v) == out.end()) out.push_back(v);
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

GridSpec GridSpec::for_pair(const StepDistribution& phi,
                            const StepDistribution& psi, int resolution) {
  double top = 0.0;
  for (const auto& p : phi.plateaus()) top = std::max(top, p.jump);
  for (const auto& p : psi.plateaus()) top = std::max(top, p.jump);
  return GridSpec{std::max(2.0 * top, 1.0), resolution};
}

std::vector<double> grid_convolve_oracle(const OrdinalSumTNorm& t,
                                         const StepDistribution& phi,
                                         const StepDistribution& psi,
                                         const GridSpec& g) {
  if (g.resolution < 1 || !(g.t_max > 0.0) || std::isinf(g.t_max)) {
    throw std::invalid_argument("grid must have positive extent and resolution");
  }
  const int r = g.resolution;
  std::vector<double> pv(r + 1), qv(r + 1);
  for (int i = 0; i <= r; ++i) {
    pv[i] = evaluate(phi, grid_point(g, i));
    qv[i] = evaluate(psi, grid_point(g, i));
  }
  std::vector<double> out(r + 1, 0.0);
  for (int i = 0; i <= r; ++i) {
    double best = 0.0;
    for (int j = 0; j <= i; ++j) {
      best = std::max(best, t.apply(pv[j], qv[i - j]));
    }
    out[i] = best;
  }
  return out;
}

double grid_delta_oracle(const ProbMetricSpace& m, int x, Mask a,
                         const GridSpec& g) {
  if (a == 0) return kInf;
  // The target is an infimum that need not be attained, so each grid
  // radius is probed just to its right; the unit entry then reports 0.
  for (int i = 0; i <= g.resolution; ++i) {
    const double t = grid_point(g, i);
    const double probe = std::nextafter(t, kInf);
    for (int y = 0; y < m.size(); ++y) {
      if (mask_contains(a, y) && evaluate(m.at(x, y), probe) == 1.0) return t;
    }
  }
  return kInf;
}

StepDistribution random_step_distribution(std::mt19937_64& rng) {
  const int k = draw(rng, 1, 3);
  const auto jump_idx = draw_distinct(rng, k, 1, 16);  // quarters in (0,4]
  const bool top_one = draw(rng, 0, 1) == 1;
  const int below = top_one ? k - 1 : k;
  auto value_idx = draw_distinct(rng, below, 1, 9);  // tenths in (0,0.9]
  std::vector<StepDistribution::Plateau> ps;
  for (int i = 0; i < k; ++i) {
    const double jump = jump_idx[i] / 4.0;
    const double value =
        (i < below) ? value_idx[i] / 10.0 : 1.0;
    ps.push_back({jump, value});
  }
  return StepDistribution::from_jumps(std::move(ps));
}

ClassicalMetricSpace random_metric(int n_points, std::uint64_t seed,
                                   double scale) {
  if (n_points < 1) throw std::invalid_argument("need at least one point");
  require_finite_ext(scale, "metric scale");
  std::mt19937_64 rng(seed);
  const int n = n_points;
  std::vector<std::vector<double>> d(n, std::vector<double>(n, 0.0));
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      d[i][j] = d[j][i] = draw(rng, 1, 16) / 4.0;
    }
  }
  // Min-plus closure; quarter-valued weights keep every sum exact, so the
  // triangle inequality holds bit-for-bit.
  for (int k = 0; k < n; ++k) {
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        d[i][j] = std::min(d[i][j], d[i][k] + d[k][j]);
      }
    }
  }
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) d[i][j] *= scale;
  }
  std::vector<std::string> labels;
  for (int i = 0; i < n; ++i) labels.push_back("p" + std::to_string(i));
  return ClassicalMetricSpace(FiniteCarrier(std::move(labels)), std::move(d));
}

ProbMetricSpace random_space(const OrdinalSumTNorm& t, int n_points,
                             std::uint64_t seed) {
  if (n_points < 2) throw std::invalid_argument("need at least two points");
  std::mt19937_64 rng(seed);
  std::vector<std::string> labels;
  for (int i = 0; i < n_points; ++i) labels.push_back("p" + std::to_string(i));
  const FiniteCarrier carrier(labels);

  for (int attempt = 0; attempt < 100; ++attempt) {
    std::vector<std::vector<StepDistribution>> raw(
        n_points, std::vector<StepDistribution>(n_points, kappa()));
    for (int i = 0; i < n_points; ++i) {
      for (int j = i + 1; j < n_points; ++j) {
        raw[i][j] = raw[j][i] = random_step_distribution(rng);
      }
    }
    try {
      return triangle_closure(carrier, std::move(raw), t);
    } catch (const SeparationError&) {
      continue;
    }
  }
  throw std::runtime_error(
      "random space generation failed separation 100 times in a row (seed " +
      std::to_string(seed) + ", " + std::to_string(n_points) + " points, " +
      t.describe() + ")");
}

const std::vector<OrdinalSumTNorm>& corpus_tnorms() {
  static const std::vector<OrdinalSumTNorm> corpus = {
      OrdinalSumTNorm::minimum(),
      OrdinalSumTNorm::product(),
      OrdinalSumTNorm::lukasiewicz(),
      OrdinalSumTNorm({{0.2, 0.8, Archetype::lukasiewicz}}),
      OrdinalSumTNorm({{0.3, 1.0, Archetype::product}}),
      OrdinalSumTNorm({{0.3, 1.0, Archetype::lukasiewicz}}),
      OrdinalSumTNorm({{0.5, 1.0, Archetype::product}}),
      OrdinalSumTNorm({{0.25, 0.75, Archetype::lukasiewicz}}),
  };
  return corpus;
}

}  // namespace pmet
