#pragma once

#include <optional>
#include <string>
#include <vector>

#include "pmet/approach.hpp"
#include "pmet/probmetric.hpp"
#include "pmet/report.hpp"

namespace pmet {

/// Thrown by a transform whose input space fails the axioms it requires.
struct InvalidInputSpace : std::runtime_error {
  InvalidInputSpace(std::string msg, AxiomReport r)
      : std::runtime_error(std::move(msg)), report(std::move(r)) {}
  AxiomReport report;
};

/// Result of one re-metrization run.  The axioms of the output space and
/// the equality of the induced approach tables are verified on every run,
/// never assumed.
struct TransformReport {
  std::vector<std::string> stages;
  OrdinalSumTNorm input_tnorm;
  OrdinalSumTNorm output_tnorm;
  ProbMetricSpace output;
  AxiomReport axioms;
  bool delta_preserved = false;
  std::string delta_witness;
  std::string caveat;

  bool ok() const { return axioms.all_pass() && delta_preserved; }
};

/// Re-tag a min-valid space with an arbitrary t-norm; validity transfers
/// because every t-norm is dominated by min.
TransformReport retag_min_valid(const ProbMetricSpace& m,
                                const OrdinalSumTNorm& target);

/// Map every entry value through v -> e^{v-1} (including the zero segment
/// before the first jump) and re-tag from the Lukasiewicz to the product
/// norm.  Step entries only.
TransformReport lukasiewicz_to_product(const ProbMetricSpace& m);

/// Identity re-tag from the product to the Lukasiewicz norm, valid because
/// the Lukasiewicz norm is dominated by the product.
TransformReport product_to_lukasiewicz(const ProbMetricSpace& m);

/// For a t-norm whose final summand is (q,1) with q the sup of idempotents
/// below 1: drop values below q and transport [q,1] affinely onto [0,1],
/// landing on the pure archetype norm.
TransformReport tail_rescale_up(const ProbMetricSpace& m);
TransformReport tail_rescale_up(const ProbMetricSpace& m, double q);

/// Inverse direction: values of a space valid for the pure archetype are
/// transported back into [q,1] and the space re-tagged with the ordinal
/// sum.  The zero segment before the first jump maps to the constant q.
TransformReport tail_rescale_down(const ProbMetricSpace& m,
                                  const OrdinalSumTNorm& target);
TransformReport tail_rescale_down(const ProbMetricSpace& m,
                                  const OrdinalSumTNorm& target, double q);

/// Replace every entry value by its idempotent floor and re-tag with the
/// minimum t-norm.  On finite carriers the approach table is preserved for
/// every input t-norm (suprema are attained, and only the value 1 floors
/// to 1); when the sup of idempotents below 1 is itself below 1 the report
/// carries that finite-carrier caveat.
TransformReport project_to_min(const ProbMetricSpace& m);

enum class RemetrizeTarget { minimum, product };

/// Driver composing the stages above: to the minimum norm via the
/// idempotent projection; to the product norm via projection + re-tag when
/// the idempotents reach 1, and via tail rescale (followed by the
/// exponential value map for a Lukasiewicz tail) when they do not.
TransformReport remetrize(const ProbMetricSpace& m, RemetrizeTarget target);

struct FloorSupWitness {
  std::vector<double> sequence;  // sup 1, floors constant below 1
  double floor_sup = 0.0;
};

/// For a t-norm whose idempotents do not reach 1: a sequence with
/// supremum 1 all of whose idempotent floors equal the floor supremum.
/// nullopt exactly when the idempotents accumulate at 1.
std::optional<FloorSupWitness> floor_sup_counterexample(
    const OrdinalSumTNorm& t);

struct ClassificationReport {
  TransformReport to_minimum;
  TransformReport to_product;
  bool minimum_certified = false;
  bool product_certified = false;
  std::string caveat;
};

/// Attempts both re-metrizations and reports which certificates succeed.
/// On finite carriers the minimum certificate always succeeds, so a space
/// certified for the product norm but not the minimum norm can never be
/// witnessed here; the report states this rather than suppressing it.
ClassificationReport classify(const ProbMetricSpace& m);

}  // namespace pmet
