#pragma once

#include <optional>
#include <vector>

#include "pmet/common.hpp"
#include "pmet/probmetric.hpp"
#include "pmet/report.hpp"

namespace pmet {

/// Finite approach space: a carrier with the full point-to-subset distance
/// table delta : X x 2^X -> [0,inf].  Subsets are bitmasks over the
/// carrier order.  The table is stored whole; carriers above
/// kMaxTablePoints are rejected.
class FiniteApproachSpace {
 public:
  static constexpr int kMaxTablePoints = 16;

  FiniteApproachSpace(FiniteCarrier carrier,
                      std::vector<std::vector<double>> delta_table);

  const FiniteCarrier& carrier() const { return carrier_; }
  int size() const { return carrier_.size(); }
  Mask full_mask() const { return (Mask{1} << size()) - 1; }
  double delta(int x, Mask a) const { return table_[x][a]; }
  const std::vector<std::vector<double>>& table() const { return table_; }

  bool operator==(const FiniteApproachSpace&) const = default;

 private:
  FiniteCarrier carrier_;
  std::vector<std::vector<double>> table_;
};

/// The approach distance induced by a probabilistic metric: delta(x,A) is
/// the first radius at which the pointwise supremum of the distributions
/// from x into A reaches 1 (inf for the empty set).
FiniteApproachSpace derive_approach_space(const ProbMetricSpace& m);

struct ApproachAxiomOptions {
  /// A3/A4 run over all subset pairs (4^n checks); larger carriers are
  /// reported as unchecked rather than silently skipped.
  int max_subset_points = 8;
};

/// A1 point, A2 empty, A3 union, A4 triangle -- exhaustive over the table.
AxiomReport check_axioms(const FiniteApproachSpace& a,
                         const ApproachAxiomOptions& opt = {});

/// { x : delta(x,S) = 0 }.
Mask closure(const FiniteApproachSpace& a, Mask s);

/// { y : alpha(x,y,t) > 1-t }, the strong-topology neighborhood.  t > 0.
Mask strong_neighborhood(const ProbMetricSpace& m, int x, double t);

/// Radii at which each neighbor's distribution exceeds the level 1 - 1/n.
struct LevelRadii {
  int x = 0;
  int n = 1;
  std::vector<double> values;
};

LevelRadii level_radii(const ProbMetricSpace& m, int x, int n);

/// Least n beyond which the level-radius tables of row x are constant:
/// once 1 - 1/n clears every sub-1 plateau value in the row, only the
/// value-1 jumps matter.  Step entries only.
int level_stabilization_bound(const ProbMetricSpace& m, int x);

/// delta(x,A) recomputed as sup over levels n of the least level radius
/// into A; agrees exactly with derive_approach_space on step entries.
double delta_via_level_radii(const ProbMetricSpace& m, int x, Mask a);

struct LevelGauge {
  int n = 1;
  std::vector<std::vector<double>> d;
  AxiomReport verdict;  // zero diagonal, symmetry, triangle
};

/// The symmetric generalized metric d_n(x,y) = level radius of y from x,
/// machine-checked.  Requires the minimum t-norm.
LevelGauge level_gauge(const ProbMetricSpace& m, int n);

/// Least level n whose radii dominate phi up to eps below the cutoff
/// omega: min(phi(y), omega) <= radius_n(y) + eps for all y.  Searched up
/// to the stabilization bound; nullopt beyond it means no level ever
/// dominates.
std::optional<int> dominating_level(const ProbMetricSpace& m, int x,
                                    const std::vector<double>& phi, double eps,
                                    double omega);

/// delta_A(x,S) >= delta_B(f(x), f(S)) for all x and S.
MapCheck check_contraction(const std::vector<int>& f,
                           const FiniteApproachSpace& a,
                           const FiniteApproachSpace& b);

}  // namespace pmet
