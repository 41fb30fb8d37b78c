#include "pmet/probmetric.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>

#include "pmet/common.hpp"

namespace pmet {

FiniteCarrier::FiniteCarrier(std::vector<std::string> points)
    : points_(std::move(points)) {
  if (points_.empty()) {
    throw std::invalid_argument("carrier must contain at least one point");
  }
  std::set<std::string> seen;
  for (const auto& p : points_) {
    if (!seen.insert(p).second) {
      throw std::invalid_argument("duplicate carrier label: " + p);
    }
  }
}

int FiniteCarrier::index_of(std::string_view label) const {
  for (std::size_t i = 0; i < points_.size(); ++i) {
    if (points_[i] == label) return static_cast<int>(i);
  }
  throw std::invalid_argument("unknown carrier label: " + std::string(label));
}

ClassicalMetricSpace::ClassicalMetricSpace(FiniteCarrier carrier,
                                           std::vector<std::vector<double>> d,
                                           bool allow_pseudo)
    : carrier_(std::move(carrier)), d_(std::move(d)) {
  const int n = carrier_.size();
  if (static_cast<int>(d_.size()) != n) {
    throw std::invalid_argument("metric matrix does not match carrier size");
  }
  for (int i = 0; i < n; ++i) {
    if (static_cast<int>(d_[i].size()) != n) {
      throw std::invalid_argument("metric matrix is not square");
    }
    for (int j = 0; j < n; ++j) require_ext_nonneg(d_[i][j], "distance");
    if (d_[i][i] != 0.0) {
      throw std::invalid_argument("nonzero self-distance at " +
                                  carrier_.label(i));
    }
  }
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (d_[i][j] != d_[j][i]) {
        throw std::invalid_argument("metric matrix is not symmetric at (" +
                                    carrier_.label(i) + "," + carrier_.label(j) +
                                    ")");
      }
      if (i != j && !allow_pseudo && d_[i][j] == 0.0) {
        throw std::invalid_argument("distinct points at distance zero: " +
                                    carrier_.label(i) + "," + carrier_.label(j));
      }
    }
  }
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      for (int k = 0; k < n; ++k) {
        if (d_[i][j] > d_[i][k] + d_[k][j]) {
          throw std::invalid_argument(
              "triangle inequality fails through " + carrier_.label(k) +
              " for (" + carrier_.label(i) + "," + carrier_.label(j) + ")");
        }
      }
    }
  }
}

ProbMetricSpace::ProbMetricSpace(FiniteCarrier carrier, OrdinalSumTNorm tnorm,
                                 std::vector<std::vector<Distribution>> alpha)
    : carrier_(std::move(carrier)),
      tnorm_(std::move(tnorm)),
      alpha_(std::move(alpha)) {
  const int n = carrier_.size();
  if (static_cast<int>(alpha_.size()) != n) {
    throw std::invalid_argument("distribution matrix does not match carrier");
  }
  for (const auto& row : alpha_) {
    if (static_cast<int>(row.size()) != n) {
      throw std::invalid_argument("distribution matrix is not square");
    }
  }
}

bool ProbMetricSpace::all_step() const {
  for (const auto& row : alpha_) {
    for (const auto& d : row) {
      if (!std::holds_alternative<StepDistribution>(d)) return false;
    }
  }
  return true;
}

ProbMetricSpace ProbMetricSpace::retagged(OrdinalSumTNorm t) const {
  return ProbMetricSpace(carrier_, std::move(t), alpha_);
}

namespace {

std::string pair_label(const ProbMetricSpace& m, int i, int j) {
  return "(" + m.carrier().label(i) + "," + m.carrier().label(j) + ")";
}

std::string triple_label(const ProbMetricSpace& m, int x, int y, int z) {
  return "(" + m.carrier().label(x) + "," + m.carrier().label(y) + "," +
         m.carrier().label(z) + ")";
}

double sample_horizon(const ProbMetricSpace& m) {
  double h = 0.0;
  for (const auto& row : m.matrix()) {
    for (const auto& d : row) {
      if (const auto* s = std::get_if<StepDistribution>(&d)) {
        if (!s->plateaus().empty()) h = std::max(h, s->plateaus().back().jump);
      } else {
        const double r = std::get<ExpDistribution>(d).rate();
        if (std::isfinite(r)) h = std::max(h, r);
      }
    }
  }
  return 2.0 * h + 1.0;
}

struct TriangleOutcome {
  bool ok = true;
  std::string witness;
  bool sampled = false;
};

// Exact route: the convolved two-leg path must sit below the direct entry.
TriangleOutcome triangle_exact(const ProbMetricSpace& m, int x, int y, int z) {
  const auto& yz = std::get<StepDistribution>(m.at(y, z));
  const auto& xy = std::get<StepDistribution>(m.at(x, y));
  const auto& xz = std::get<StepDistribution>(m.at(x, z));
  const auto path = convolve(m.tnorm(), yz, xy);
  if (auto t = first_violation(path, xz)) {
    return {false,
            triple_label(m, x, y, z) + " just after t=" + fmt_real(*t) +
                ": path " + fmt_real(evaluate(path, std::nextafter(*t, kInf))) +
                " > direct " +
                fmt_real(evaluate(xz, std::nextafter(*t, kInf))),
            false};
  }
  return {};
}

TriangleOutcome triangle_sampled(const ProbMetricSpace& m, int x, int y, int z,
                                 double horizon, const ProbAxiomOptions& opt) {
  const auto& yz = m.at(y, z);
  const auto& xy = m.at(x, y);
  const auto& xz = m.at(x, z);
  const int g = opt.sample_axis;
  for (int i = 0; i < g; ++i) {
    const double r = horizon * i / (g - 1);
    const double vr = evaluate(yz, r);
    for (int j = 0; j < g; ++j) {
      const double s = horizon * j / (g - 1);
      const double lhs = m.tnorm().apply(vr, evaluate(xy, s));
      const double rhs = evaluate(xz, r + s);
      if (lhs > rhs + opt.sample_tol) {
        return {false,
                triple_label(m, x, y, z) + " at r=" + fmt_real(r) +
                    " s=" + fmt_real(s) + ": " + fmt_real(lhs) + " > " +
                    fmt_real(rhs),
                true};
      }
    }
  }
  return {.ok = true, .witness = {}, .sampled = true};
}

// For a triple of exponential entries the triangle axiom reduces to the
// triangle inequality of the rates: the entries are f(t/rate) for the
// same increasing f, and min(r/d1, s/d2) <= (r+s)/(d1+d2).
TriangleOutcome triangle_exponential(const ProbMetricSpace& m, int x, int y,
                                     int z, double horizon,
                                     const ProbAxiomOptions& opt) {
  const double d1 = std::get<ExpDistribution>(m.at(y, z)).rate();
  const double d2 = std::get<ExpDistribution>(m.at(x, y)).rate();
  const double d3 = std::get<ExpDistribution>(m.at(x, z)).rate();
  const bool rate_triangle = d3 <= d1 + d2;
  if (!rate_triangle && m.tnorm().intervals().empty()) {
    const double lhs =
        std::min(evaluate(m.at(y, z), d1), evaluate(m.at(x, y), d2));
    const double rhs = evaluate(m.at(x, z), d1 + d2);
    return {false,
            triple_label(m, x, y, z) + " rates " + fmt_real(d3) + " > " +
                fmt_real(d1) + "+" + fmt_real(d2) + "; at r=" + fmt_real(d1) +
                " s=" + fmt_real(d2) + ": " + fmt_real(lhs) + " > " +
                fmt_real(rhs),
            false};
  }
  auto sampled = triangle_sampled(m, x, y, z, horizon, opt);
  if (rate_triangle && !sampled.ok) return sampled;  // should not happen
  if (!rate_triangle) return sampled;                // non-min norm: grid decides
  return {.ok = true, .witness = {}, .sampled = true};
}

}  // namespace

AxiomReport check_axioms(const ProbMetricSpace& m,
                         const ProbAxiomOptions& opt) {
  AxiomReport report;
  report.subject = "probabilistic metric space on " +
                   std::to_string(m.size()) + " points, t-norm " +
                   m.tnorm().describe();
  const int n = m.size();

  // P1: representable distributions satisfy the distribution axioms by
  // construction (monotone left-continuous step data, or the closed family).
  report.add("P1 distributions", Verdict::pass, "structural");

  {
    CheckResult c{"P2 identity", Verdict::pass, "exact", ""};
    for (int i = 0; i < n; ++i) {
      if (!is_kappa(m.at(i, i))) {
        c.verdict = Verdict::fail;
        c.witness = "diagonal entry at " + m.carrier().label(i);
        break;
      }
    }
    report.checks.push_back(std::move(c));
  }

  {
    CheckResult c{"P3 symmetry", Verdict::pass, "exact", ""};
    for (int i = 0; i < n && c.verdict == Verdict::pass; ++i) {
      for (int j = i + 1; j < n; ++j) {
        if (!distributions_equal(m.at(i, j), m.at(j, i))) {
          c.verdict = Verdict::fail;
          c.witness = pair_label(m, i, j);
          break;
        }
      }
    }
    report.checks.push_back(std::move(c));
  }

  {
    CheckResult c{"P4 separation", Verdict::pass, "exact", ""};
    for (int i = 0; i < n && c.verdict == Verdict::pass; ++i) {
      for (int j = 0; j < n; ++j) {
        if (i != j && is_kappa(m.at(i, j))) {
          c.verdict = Verdict::fail;
          c.witness = pair_label(m, i, j);
          break;
        }
      }
    }
    report.checks.push_back(std::move(c));
  }

  {
    CheckResult c{"P5 triangle", Verdict::pass, "exact", ""};
    const double horizon = opt.horizon > 0.0 ? opt.horizon : sample_horizon(m);
    bool any_sampled = false;
    for (int x = 0; x < n && c.verdict == Verdict::pass; ++x) {
      for (int y = 0; y < n && c.verdict == Verdict::pass; ++y) {
        for (int z = 0; z < n; ++z) {
          const bool steps =
              std::holds_alternative<StepDistribution>(m.at(y, z)) &&
              std::holds_alternative<StepDistribution>(m.at(x, y)) &&
              std::holds_alternative<StepDistribution>(m.at(x, z));
          const bool exps =
              std::holds_alternative<ExpDistribution>(m.at(y, z)) &&
              std::holds_alternative<ExpDistribution>(m.at(x, y)) &&
              std::holds_alternative<ExpDistribution>(m.at(x, z));
          TriangleOutcome out;
          if (steps) {
            out = triangle_exact(m, x, y, z);
          } else if (exps) {
            out = triangle_exponential(m, x, y, z, horizon, opt);
          } else {
            out = triangle_sampled(m, x, y, z, horizon, opt);
          }
          any_sampled = any_sampled || out.sampled;
          if (!out.ok) {
            c.verdict = Verdict::fail;
            c.witness = out.witness;
            break;
          }
        }
      }
    }
    if (any_sampled) {
      c.method = "exact for step triples; closed-form + sampled grid (tol " +
                 fmt_real(opt.sample_tol) + ") otherwise";
    }
    report.checks.push_back(std::move(c));
  }

  return report;
}

ProbMetricSpace from_classical_metric(const ClassicalMetricSpace& d,
                                      OrdinalSumTNorm t) {
  const int n = d.carrier().size();
  std::vector<std::vector<Distribution>> alpha(
      n, std::vector<Distribution>(n, Distribution{kappa()}));
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (i == j) continue;
      // 0 up to the distance, 1 strictly after it; an infinite distance
      // leaves the bottom distribution.
      alpha[i][j] =
          StepDistribution::from_jumps({{d.distance(i, j), 1.0}});
    }
  }
  return ProbMetricSpace(d.carrier(), std::move(t), std::move(alpha));
}

ProbMetricSpace exp_family_from_metric(const ClassicalMetricSpace& d) {
  const int n = d.carrier().size();
  std::vector<std::vector<Distribution>> alpha(
      n, std::vector<Distribution>(n, Distribution{ExpDistribution(0.0)}));
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      alpha[i][j] = ExpDistribution(d.distance(i, j));
    }
  }
  return ProbMetricSpace(d.carrier(), OrdinalSumTNorm::minimum(),
                         std::move(alpha));
}

ProbMetricSpace triangle_closure(FiniteCarrier carrier,
                                 std::vector<std::vector<StepDistribution>> raw,
                                 const OrdinalSumTNorm& t) {
  const int n = carrier.size();
  if (static_cast<int>(raw.size()) != n) {
    throw std::invalid_argument("raw matrix does not match carrier");
  }
  for (int i = 0; i < n; ++i) {
    if (static_cast<int>(raw[i].size()) != n) {
      throw std::invalid_argument("raw matrix is not square");
    }
    if (!is_kappa(raw[i][i])) {
      throw std::invalid_argument("raw diagonal must be the unit at " +
                                  carrier.label(i));
    }
    for (int j = 0; j < n; ++j) {
      if (raw[i][j] != raw[j][i]) {
        throw std::invalid_argument("raw matrix is not symmetric at (" +
                                    carrier.label(i) + "," + carrier.label(j) +
                                    ")");
      }
    }
  }

  // Floyd-Warshall over the sup/convolve algebra.  Two-leg paths only ever
  // lower values (a convolution sits below both factors pointwise), so
  // simple paths dominate and the iteration reaches an exact fixpoint; the
  // extra passes absorb rounding interplay between update orders.
  const int max_passes = 4 * n + 8;
  for (int pass = 0;; ++pass) {
    if (pass >= max_passes) {
      throw std::runtime_error("triangle closure did not stabilize");
    }
    bool changed = false;
    for (int k = 0; k < n; ++k) {
      for (int i = 0; i < n; ++i) {
        if (i == k) continue;
        for (int j = i + 1; j < n; ++j) {
          if (j == k) continue;
          const auto path = convolve(t, raw[k][j], raw[i][k]);
          auto cat = raw[i][j].plateaus();
          cat.insert(cat.end(), path.plateaus().begin(), path.plateaus().end());
          StepDistribution merged = StepDistribution::from_jumps(std::move(cat));
          if (merged != raw[i][j]) {
            raw[i][j] = merged;
            raw[j][i] = std::move(merged);
            changed = true;
          }
        }
      }
    }
    if (!changed) break;
  }

  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      if (is_kappa(raw[i][j])) {
        throw SeparationError("triangle closure produced a unit entry at (" +
                                  carrier.label(i) + "," + carrier.label(j) +
                                  ")",
                              i, j);
      }
    }
  }

  std::vector<std::vector<Distribution>> alpha(n);
  for (int i = 0; i < n; ++i) {
    alpha[i].assign(raw[i].begin(), raw[i].end());
  }
  return ProbMetricSpace(std::move(carrier), t, std::move(alpha));
}

MapCheck check_nonexpansive(const std::vector<int>& f, const ProbMetricSpace& m,
                            const ProbMetricSpace& n) {
  if (static_cast<int>(f.size()) != m.size()) {
    throw std::invalid_argument("map is not total on the source carrier");
  }
  for (int v : f) {
    if (v < 0 || v >= n.size()) {
      throw std::invalid_argument("map image outside the target carrier");
    }
  }
  if (!(m.tnorm() == n.tnorm())) {
    throw std::invalid_argument("source and target spaces carry different t-norms");
  }
  for (int x = 0; x < m.size(); ++x) {
    for (int y = 0; y < m.size(); ++y) {
      if (!leq(m.at(x, y), n.at(f[x], f[y]))) {
        return {false, "entry " + pair_label(m, x, y) + " exceeds its image (" +
                           n.carrier().label(f[x]) + "," +
                           n.carrier().label(f[y]) + ")"};
      }
    }
  }
  return {};
}

}  // namespace pmet
