#include "pmet/approach.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace pmet {

namespace {

std::string point_subset_label(const FiniteCarrier& c, int x, Mask a) {
  return c.label(x) + ", " + fmt_mask(a, c.points());
}

// First radius at which the pointwise supremum over the subset reaches 1.
// The supremum of a finite same-variant family is formed explicitly; for a
// mixed row the first-reach radii are combined directly, which is the same
// number because a finite supremum reaches 1 only via a member reaching 1.
double subset_distance(const ProbMetricSpace& m, int x, Mask a) {
  if (a == 0) return kInf;
  std::vector<Distribution> family;
  for (int y = 0; y < m.size(); ++y) {
    if (mask_contains(a, y)) family.push_back(m.at(x, y));
  }
  const bool homogeneous =
      std::all_of(family.begin(), family.end(),
                  [&](const Distribution& d) {
                    return d.index() == family.front().index();
                  });
  if (homogeneous) return first_reach_one(pointwise_sup(family));
  double best = kInf;
  for (const auto& d : family) best = std::min(best, first_reach_one(d));
  return best;
}

}  // namespace

FiniteApproachSpace::FiniteApproachSpace(
    FiniteCarrier carrier, std::vector<std::vector<double>> delta_table)
    : carrier_(std::move(carrier)), table_(std::move(delta_table)) {
  const int n = carrier_.size();
  if (n > kMaxTablePoints) {
    throw std::invalid_argument("carrier too large for a full distance table (" +
                                std::to_string(n) + " > " +
                                std::to_string(kMaxTablePoints) + " points)");
  }
  const std::size_t subsets = std::size_t{1} << n;
  if (table_.size() != static_cast<std::size_t>(n)) {
    throw std::invalid_argument("distance table does not match carrier");
  }
  for (const auto& row : table_) {
    if (row.size() != subsets) {
      throw std::invalid_argument("distance table row must cover all subsets");
    }
    for (double v : row) require_ext_nonneg(v, "approach distance");
  }
}

FiniteApproachSpace derive_approach_space(const ProbMetricSpace& m) {
  const int n = m.size();
  if (n > FiniteApproachSpace::kMaxTablePoints) {
    throw std::invalid_argument("carrier too large to derive the full table");
  }
  const std::size_t subsets = std::size_t{1} << n;
  std::vector<std::vector<double>> table(n, std::vector<double>(subsets, kInf));
  for (int x = 0; x < n; ++x) {
    for (Mask a = 0; a < subsets; ++a) {
      table[x][a] = subset_distance(m, x, a);
    }
  }
  return FiniteApproachSpace(m.carrier(), std::move(table));
}

AxiomReport check_axioms(const FiniteApproachSpace& a,
                         const ApproachAxiomOptions& opt) {
  AxiomReport report;
  report.subject =
      "approach space on " + std::to_string(a.size()) + " points";
  const int n = a.size();
  const Mask full = a.full_mask();

  {
    CheckResult c{"A1 point", Verdict::pass, "exact", ""};
    for (int x = 0; x < n; ++x) {
      if (a.delta(x, Mask{1} << x) != 0.0) {
        c.verdict = Verdict::fail;
        c.witness = a.carrier().label(x);
        break;
      }
    }
    report.checks.push_back(std::move(c));
  }

  {
    CheckResult c{"A2 empty", Verdict::pass, "exact", ""};
    for (int x = 0; x < n; ++x) {
      if (!std::isinf(a.delta(x, 0))) {
        c.verdict = Verdict::fail;
        c.witness = a.carrier().label(x);
        break;
      }
    }
    report.checks.push_back(std::move(c));
  }

  if (n > opt.max_subset_points) {
    const std::string note = "carrier above the exhaustive subset cap (" +
                             std::to_string(opt.max_subset_points) + ")";
    report.add("A3 union", Verdict::unchecked, "skipped", note);
    report.add("A4 triangle", Verdict::unchecked, "skipped", note);
    return report;
  }

  {
    CheckResult c{"A3 union", Verdict::pass, "exact", ""};
    for (int x = 0; x < n && c.verdict == Verdict::pass; ++x) {
      for (Mask s = 0; s <= full && c.verdict == Verdict::pass; ++s) {
        for (Mask t = 0; t <= full; ++t) {
          const double lhs = a.delta(x, s | t);
          const double rhs = std::min(a.delta(x, s), a.delta(x, t));
          if (lhs != rhs) {
            c.verdict = Verdict::fail;
            c.witness = point_subset_label(a.carrier(), x, s) + " vs " +
                        fmt_mask(t, a.carrier().points()) + ": " +
                        fmt_real(lhs) + " != " + fmt_real(rhs);
            break;
          }
        }
      }
    }
    report.checks.push_back(std::move(c));
  }

  {
    CheckResult c{"A4 triangle", Verdict::pass, "exact", ""};
    for (int x = 0; x < n && c.verdict == Verdict::pass; ++x) {
      for (Mask s = 0; s <= full && c.verdict == Verdict::pass; ++s) {
        for (Mask t = 0; t <= full; ++t) {
          double reach = 0.0;  // sup over an empty subset is 0
          for (int b = 0; b < n; ++b) {
            if (mask_contains(t, b)) reach = std::max(reach, a.delta(b, s));
          }
          if (a.delta(x, s) > reach + a.delta(x, t)) {
            c.verdict = Verdict::fail;
            c.witness = point_subset_label(a.carrier(), x, s) + " via " +
                        fmt_mask(t, a.carrier().points()) + ": " +
                        fmt_real(a.delta(x, s)) + " > " + fmt_real(reach) +
                        " + " + fmt_real(a.delta(x, t));
            break;
          }
        }
      }
    }
    report.checks.push_back(std::move(c));
  }

  return report;
}

Mask closure(const FiniteApproachSpace& a, Mask s) {
  Mask out = 0;
  for (int x = 0; x < a.size(); ++x) {
    if (a.delta(x, s) == 0.0) out |= Mask{1} << x;
  }
  return out;
}

Mask strong_neighborhood(const ProbMetricSpace& m, int x, double t) {
  if (!(t > 0.0) || std::isinf(t)) {
    throw std::invalid_argument("neighborhood radius must be finite positive");
  }
  Mask out = 0;
  for (int y = 0; y < m.size(); ++y) {
    if (evaluate(m.at(x, y), t) > 1.0 - t) out |= Mask{1} << y;
  }
  return out;
}

LevelRadii level_radii(const ProbMetricSpace& m, int x, int n) {
  if (n < 1) throw std::invalid_argument("level must be a positive integer");
  const double theta = 1.0 - 1.0 / n;
  LevelRadii out{x, n, {}};
  out.values.reserve(m.size());
  for (int y = 0; y < m.size(); ++y) {
    out.values.push_back(threshold_inf(m.at(x, y), theta));
  }
  return out;
}

int level_stabilization_bound(const ProbMetricSpace& m, int x) {
  double vmax = 0.0;
  bool any = false;
  for (int y = 0; y < m.size(); ++y) {
    const auto* s = std::get_if<StepDistribution>(&m.at(x, y));
    if (s == nullptr) {
      throw std::invalid_argument(
          "level tables stabilize only for step rows; entry (" +
          m.carrier().label(x) + "," + m.carrier().label(y) +
          ") is exponential");
    }
    for (const auto& p : s->plateaus()) {
      if (p.value < 1.0) {
        vmax = std::max(vmax, p.value);
        any = true;
      }
    }
  }
  if (!any) return 1;
  // Least n with 1 - 1/n clearing vmax.  The predicate is monotone in n
  // and the reciprocal estimate can land a step off either way, so settle
  // it by local search.
  const auto clears = [vmax](int n) { return 1.0 - 1.0 / n >= vmax; };
  int n = std::max(1, static_cast<int>(1.0 / (1.0 - vmax)) - 2);
  while (!clears(n)) {
    if (n > (1 << 30)) {
      throw std::runtime_error("level stabilization bound overflow");
    }
    ++n;
  }
  while (n > 1 && clears(n - 1)) --n;
  return n;
}

double delta_via_level_radii(const ProbMetricSpace& m, int x, Mask a) {
  if (a == 0) {
    throw std::invalid_argument("empty subset has no level representation");
  }
  const int bound = level_stabilization_bound(m, x);
  double sup = 0.0;
  for (int n = 1; n <= bound; ++n) {
    const auto radii = level_radii(m, x, n);
    double inf = kInf;
    for (int y = 0; y < m.size(); ++y) {
      if (mask_contains(a, y)) inf = std::min(inf, radii.values[y]);
    }
    sup = std::max(sup, inf);
  }
  return sup;
}

LevelGauge level_gauge(const ProbMetricSpace& m, int n) {
  if (!m.tnorm().intervals().empty()) {
    throw std::invalid_argument(
        "the level gauge is a generalized metric only under the minimum "
        "t-norm; got " +
        m.tnorm().describe());
  }
  const int size = m.size();
  LevelGauge out;
  out.n = n;
  out.d.assign(size, std::vector<double>(size, 0.0));
  for (int x = 0; x < size; ++x) {
    out.d[x] = level_radii(m, x, n).values;
  }
  out.verdict.subject = "level gauge n=" + std::to_string(n);

  {
    CheckResult c{"zero diagonal", Verdict::pass, "exact", ""};
    for (int x = 0; x < size; ++x) {
      if (out.d[x][x] != 0.0) {
        c.verdict = Verdict::fail;
        c.witness = m.carrier().label(x);
        break;
      }
    }
    out.verdict.checks.push_back(std::move(c));
  }
  {
    CheckResult c{"symmetry", Verdict::pass, "exact", ""};
    for (int x = 0; x < size && c.verdict == Verdict::pass; ++x) {
      for (int y = x + 1; y < size; ++y) {
        if (out.d[x][y] != out.d[y][x]) {
          c.verdict = Verdict::fail;
          c.witness = "(" + m.carrier().label(x) + "," + m.carrier().label(y) +
                      ")";
          break;
        }
      }
    }
    out.verdict.checks.push_back(std::move(c));
  }
  {
    CheckResult c{"triangle", Verdict::pass, "exact", ""};
    for (int x = 0; x < size && c.verdict == Verdict::pass; ++x) {
      for (int y = 0; y < size && c.verdict == Verdict::pass; ++y) {
        for (int z = 0; z < size; ++z) {
          if (out.d[x][z] > out.d[y][z] + out.d[x][y]) {
            c.verdict = Verdict::fail;
            c.witness = "(" + m.carrier().label(x) + "," +
                        m.carrier().label(y) + "," + m.carrier().label(z) +
                        "): " + fmt_real(out.d[x][z]) + " > " +
                        fmt_real(out.d[y][z]) + " + " + fmt_real(out.d[x][y]);
            break;
          }
        }
      }
    }
    out.verdict.checks.push_back(std::move(c));
  }
  return out;
}

std::optional<int> dominating_level(const ProbMetricSpace& m, int x,
                                    const std::vector<double>& phi, double eps,
                                    double omega) {
  if (static_cast<int>(phi.size()) != m.size()) {
    throw std::invalid_argument("candidate map does not cover the carrier");
  }
  for (double v : phi) require_ext_nonneg(v, "candidate map value");
  if (!(eps > 0.0)) throw std::invalid_argument("eps must be positive");
  require_finite_ext(omega, "cutoff omega");
  if (!(omega > 0.0)) throw std::invalid_argument("omega must be positive");

  const int bound = level_stabilization_bound(m, x);
  for (int n = 1; n <= bound; ++n) {
    const auto radii = level_radii(m, x, n);
    bool ok = true;
    for (int y = 0; y < m.size(); ++y) {
      if (std::min(phi[y], omega) > radii.values[y] + eps) {
        ok = false;
        break;
      }
    }
    if (ok) return n;
  }
  // The tables are constant beyond the bound, so no level dominates at all.
  return std::nullopt;
}

MapCheck check_contraction(const std::vector<int>& f,
                           const FiniteApproachSpace& a,
                           const FiniteApproachSpace& b) {
  if (static_cast<int>(f.size()) != a.size()) {
    throw std::invalid_argument("map is not total on the source carrier");
  }
  for (int v : f) {
    if (v < 0 || v >= b.size()) {
      throw std::invalid_argument("map image outside the target carrier");
    }
  }
  const Mask full = a.full_mask();
  for (int x = 0; x < a.size(); ++x) {
    for (Mask s = 0; s <= full; ++s) {
      Mask image = 0;
      for (int y = 0; y < a.size(); ++y) {
        if (mask_contains(s, y)) image |= Mask{1} << f[y];
      }
      if (a.delta(x, s) < b.delta(f[x], image)) {
        return {false, point_subset_label(a.carrier(), x, s) + ": " +
                           fmt_real(a.delta(x, s)) + " < " +
                           fmt_real(b.delta(f[x], image)) + " at the image"};
      }
    }
  }
  return {};
}

}  // namespace pmet
