#pragma once

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "pmet/distribution.hpp"
#include "pmet/report.hpp"

namespace pmet {

class FiniteCarrier {
 public:
  explicit FiniteCarrier(std::vector<std::string> points);

  int size() const { return static_cast<int>(points_.size()); }
  const std::vector<std::string>& points() const { return points_; }
  const std::string& label(int i) const { return points_.at(i); }
  int index_of(std::string_view label) const;  // throws on unknown label

  bool operator==(const FiniteCarrier&) const = default;

 private:
  std::vector<std::string> points_;
};

/// Finite metric space with values in [0,inf].  The constructor validates
/// zero diagonal, symmetry and the triangle inequality; separation is
/// waived when allow_pseudo is set.
class ClassicalMetricSpace {
 public:
  ClassicalMetricSpace(FiniteCarrier carrier,
                       std::vector<std::vector<double>> d,
                       bool allow_pseudo = false);

  const FiniteCarrier& carrier() const { return carrier_; }
  double distance(int i, int j) const { return d_[i][j]; }
  const std::vector<std::vector<double>>& matrix() const { return d_; }

 private:
  FiniteCarrier carrier_;
  std::vector<std::vector<double>> d_;
};

/// Finite carrier, a t-norm, and a square matrix of distance
/// distributions.  Construction enforces only the shape and per-entry
/// well-formedness; the metric axioms are reported by check_axioms, so
/// invalid spaces can be represented and diagnosed.
class ProbMetricSpace {
 public:
  ProbMetricSpace(FiniteCarrier carrier, OrdinalSumTNorm tnorm,
                  std::vector<std::vector<Distribution>> alpha);

  const FiniteCarrier& carrier() const { return carrier_; }
  const OrdinalSumTNorm& tnorm() const { return tnorm_; }
  const Distribution& at(int i, int j) const { return alpha_[i][j]; }
  const std::vector<std::vector<Distribution>>& matrix() const { return alpha_; }
  int size() const { return carrier_.size(); }

  bool all_step() const;
  /// Same matrix under a different t-norm.
  ProbMetricSpace retagged(OrdinalSumTNorm t) const;

 private:
  FiniteCarrier carrier_;
  OrdinalSumTNorm tnorm_;
  std::vector<std::vector<Distribution>> alpha_;
};

struct ProbAxiomOptions {
  int sample_axis = 32;      // sampled triangle grid is sample_axis^2 points
  double sample_tol = 1e-9;  // tolerance for sampled comparisons
  double horizon = 0.0;      // grid extent; 0 chooses one from the entries
};

/// P1 distributions, P2 identity, P3 symmetry, P4 separation, P5 triangle.
/// The triangle is decided exactly (convolution + pointwise order) when all
/// three entries are step distributions, and by the closed-form rate
/// comparison plus a sampled grid when exponential entries are involved.
AxiomReport check_axioms(const ProbMetricSpace& m,
                         const ProbAxiomOptions& opt = {});

/// The single-jump embedding of a classical metric: entry (x,y) is 0 up to
/// d(x,y) and 1 strictly after it.
ProbMetricSpace from_classical_metric(const ClassicalMetricSpace& d,
                                      OrdinalSumTNorm t);

/// The exponential family over a (pseudo-)metric: entry (x,y) has rate
/// d(x,y), under the minimum t-norm.
ProbMetricSpace exp_family_from_metric(const ClassicalMetricSpace& d);

struct SeparationError : std::runtime_error {
  SeparationError(std::string msg, int i, int j)
      : std::runtime_error(std::move(msg)), x(i), y(j) {}
  int x, y;
};

/// Smallest pointwise enlargement of a symmetric step matrix (unit
/// diagonal) satisfying the triangle axiom: Floyd-Warshall-style sup with
/// the convolved two-leg paths, iterated to an exact fixpoint.  Throws
/// SeparationError if the closure would need an off-diagonal unit entry.
ProbMetricSpace triangle_closure(FiniteCarrier carrier,
                                 std::vector<std::vector<StepDistribution>> raw,
                                 const OrdinalSumTNorm& t);

struct MapCheck {
  bool ok = true;
  std::string witness;
};

/// f maps indices of M's carrier into N's carrier; checks
/// alpha_M(x,x') <= alpha_N(f(x),f(x')) pointwise for all pairs.
/// Requires the same t-norm on both spaces and a total map.
MapCheck check_nonexpansive(const std::vector<int>& f, const ProbMetricSpace& m,
                            const ProbMetricSpace& n);

}  // namespace pmet
