#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <utility>
#include <variant>
#include <vector>

#include "pmet/common.hpp"
#include "pmet/tnorm.hpp"

namespace pmet {

/// Exact left-continuous monotone step function [0,inf] -> [0,1] with
/// value 0 at 0 and 1 at inf.
///
/// A plateau (jump, value) means the function equals `value` on
/// (jump, next jump]; it is 0 up to and including the first jump, and the
/// rise to 1 happens at inf when the last value is below 1.  Canonical
/// form: jumps strictly increasing and finite, values strictly increasing
/// in (0,1].  The default-constructed instance (no plateaus) is the bottom
/// distribution: 0 on (0,inf), 1 at inf.
///
/// Jumps are binary64 and jump sums are deduplicated by exact equality;
/// decimal inputs whose real sums coincide may therefore keep two distinct
/// binary64 jumps.  Evaluation stays correct either way.
class StepDistribution {
 public:
  struct Plateau {
    double jump;
    double value;
    bool operator==(const Plateau&) const = default;
  };

  StepDistribution() = default;

  /// Canonicalizing factory.  Each pair is read as "at least `value`
  /// strictly after `jump`", and the pointwise supremum of those
  /// constraints is kept: non-finite jumps and dominated or zero-valued
  /// pairs are dropped, equal jumps merged.
  static StepDistribution from_jumps(std::vector<Plateau> raw);

  const std::vector<Plateau>& plateaus() const { return plateaus_; }
  bool reaches_one() const;
  double last_jump() const;  // kInf when there is no plateau

  bool operator==(const StepDistribution&) const = default;

 private:
  std::vector<Plateau> plateaus_;
};

/// The exponential family 1 - e^{-t/rate}.  Rate 0 is the convolution unit
/// (jump to 1 at 0+); a finite positive rate reaches 1 only at inf; rate
/// inf is the bottom distribution.  Evaluation saturates to 1.0 once
/// e^{-t/rate} drops below one ulp; first_reach_one works from the rate
/// and keeps the exact semantics regardless.
class ExpDistribution {
 public:
  explicit ExpDistribution(double rate);
  double rate() const { return rate_; }
  bool operator==(const ExpDistribution&) const = default;

 private:
  double rate_;
};

using Distribution = std::variant<StepDistribution, ExpDistribution>;

/// The unit of convolution: 0 at 0 and 1 on (0,inf].
StepDistribution kappa();

double evaluate(const StepDistribution& phi, double t);
double evaluate(const ExpDistribution& phi, double t);
double evaluate(const Distribution& phi, double t);

/// Left-continuous regularization of a finite monotone map given as
/// (threshold, value) pairs: the result takes, at each t, the supremum of
/// the step extension over s < t.  Thresholds must be strictly increasing
/// and values monotone in [0,1]; non-monotone values are rejected.
StepDistribution left_regularize(
    const std::vector<std::pair<double, double>>& points);

StepDistribution pointwise_sup(std::span<const StepDistribution> family);

/// Pointwise supremum of a nonempty same-variant family.  For exponential
/// members this is the member with the minimum rate.  Mixed variants are
/// rejected.
Distribution pointwise_sup(const std::vector<Distribution>& family);

/// Applies a monotone value map with f(1) = 1 to the whole function on
/// (0,inf), including the implicit zero segment before the first jump
/// (which becomes a stored plateau when f(0) > 0).  Mapped zero-valued
/// leading plateaus are dropped and equal adjacent values merged, so the
/// output is canonical and left-continuous by construction.
StepDistribution map_values(const StepDistribution& phi,
                            const std::function<double(double)>& f);

/// Sup-convolution with respect to a t-norm: at finite t the supremum over
/// additive splits r+s=t of phi(r)*psi(s), and 1 at inf.  Candidate jumps
/// are the pairwise jump sums; the value after such a sum is the running
/// maximum of the t-norm applied to the plateau value pairs.
StepDistribution convolve(const OrdinalSumTNorm& t, const StepDistribution& phi,
                          const StepDistribution& psi,
                          std::size_t size_cap = 1'000'000);

/// inf{ r : phi(r) = 1 }.
double first_reach_one(const StepDistribution& phi);
double first_reach_one(const ExpDistribution& phi);
double first_reach_one(const Distribution& phi);

/// inf{ r : phi(r) > theta } for theta in [0,1).  theta = 1 is rejected.
double threshold_inf(const StepDistribution& phi, double theta);
double threshold_inf(const ExpDistribution& phi, double theta);
double threshold_inf(const Distribution& phi, double theta);

/// Pointwise order, decided exactly on the merged jump set.
bool leq(const StepDistribution& phi, const StepDistribution& psi);

/// Pointwise order across variants, decided exactly: rate comparison for
/// two exponentials, plateau-versus-curve comparisons for mixed pairs.
bool leq(const Distribution& phi, const Distribution& psi);

/// Least merged jump j such that phi > psi somewhere on (j, next jump],
/// or nullopt when phi <= psi everywhere.
std::optional<double> first_violation(const StepDistribution& phi,
                                      const StepDistribution& psi);

bool is_kappa(const StepDistribution& phi);
bool is_kappa(const ExpDistribution& phi);
bool is_kappa(const Distribution& phi);

/// Equality as functions: identical same-variant data, or both equal to
/// the convolution unit across variants.
bool distributions_equal(const Distribution& a, const Distribution& b);

}  // namespace pmet
