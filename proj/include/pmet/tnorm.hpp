#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "pmet/report.hpp"

namespace pmet {

/// Archetype norms carried by an ordinal summand.  The minimum norm is the
/// ambient operation outside all summands and is never an interval tag.
enum class Archetype { product, lukasiewicz };

std::string to_string(Archetype a);

/// Open interval (a,b) of non-idempotent elements, 0 <= a < b <= 1,
/// carrying an affinely rescaled archetype norm.
struct OrdinalInterval {
  double a = 0.0;
  double b = 1.0;
  Archetype archetype = Archetype::product;

  bool operator==(const OrdinalInterval&) const = default;
};

/// A continuous t-norm on [0,1] given as a finite ordinal sum.
///
/// The empty interval list is the minimum t-norm.  Intervals are sorted and
/// pairwise disjoint (touching endpoints allowed); the idempotent elements
/// are exactly the points outside every open interval.
class OrdinalSumTNorm {
 public:
  OrdinalSumTNorm() = default;  // minimum t-norm
  explicit OrdinalSumTNorm(std::vector<OrdinalInterval> intervals);

  static OrdinalSumTNorm minimum();
  static OrdinalSumTNorm product();
  static OrdinalSumTNorm lukasiewicz();

  const std::vector<OrdinalInterval>& intervals() const { return intervals_; }

  /// p * q.  min(p,q) unless both operands lie strictly inside the same
  /// interval, in which case the archetype is transported affinely.  The
  /// idempotent cases return min(p,q) bit-exactly, so 1 is neutral exactly.
  double apply(double p, double q) const;

  bool is_idempotent(double q) const;

  /// The largest idempotent element <= q (q itself when idempotent,
  /// otherwise the left endpoint of the interval containing q).
  double idempotent_floor(double q) const;

  /// Supremum of the idempotent elements in [0,1): the left endpoint of a
  /// final interval reaching 1, and 1 otherwise.
  double sup_idempotents_below_one() const;

  /// Index of the interval whose open interior contains q, or -1.
  int interior_interval(double q) const;

  std::string describe() const;

  bool operator==(const OrdinalSumTNorm&) const = default;

 private:
  std::vector<OrdinalInterval> intervals_;
};

/// Strictly increasing affine bijection between [a,1] and [0,1] used to
/// transport a final ordinal summand onto its archetype.  Both directions
/// fix 1 exactly: forward(x) = (x-a)/(1-a), backward(y) = y + a*(1-y).
class AffineTransport {
 public:
  explicit AffineTransport(const OrdinalInterval& tail);

  double forward(double x) const;
  double backward(double y) const;
  double lower() const { return a_; }

 private:
  double a_;
};

struct TnormVerifyOptions {
  int pair_grid = 100;    // axis points for pair laws
  int triple_grid = 50;   // axis points for associativity
  int floor_grid = 200;   // axis points for the idempotent-floor lattice law
  double assoc_tol = 1e-12;
  double monotone_tol = 1e-15;
  std::uint64_t seed = 2024;
};

/// Property suite for a t-norm descriptor: monoid laws, monotonicity,
/// domination by min, the idempotent absorption law, and the lattice law
/// of the idempotent floor.
AxiomReport verify_tnorm(const OrdinalSumTNorm& t,
                         const TnormVerifyOptions& opt = {});

}  // namespace pmet
