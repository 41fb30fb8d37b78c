#include "pmet/distribution.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace pmet {

namespace {

// Value of phi immediately to the right of j: the value of the last
// plateau whose jump is <= j, or 0 before the first plateau.
double right_value(const StepDistribution& phi, double j) {
  const auto& ps = phi.plateaus();
  auto it = std::upper_bound(
      ps.begin(), ps.end(), j,
      [](double t, const StepDistribution::Plateau& p) { return t < p.jump; });
  if (it == ps.begin()) return 0.0;
  return std::prev(it)->value;
}

}  // namespace

StepDistribution StepDistribution::from_jumps(std::vector<Plateau> raw) {
  for (const auto& p : raw) {
    require_ext_nonneg(p.jump, "plateau jump");
    require_unit(p.value, "plateau value");
  }
  std::erase_if(raw, [](const Plateau& p) { return std::isinf(p.jump); });
  std::sort(raw.begin(), raw.end(), [](const Plateau& x, const Plateau& y) {
    return x.jump != y.jump ? x.jump < y.jump : x.value < y.value;
  });
  StepDistribution out;
  double running = 0.0;
  for (const auto& p : raw) {
    if (p.value <= running) continue;
    if (!out.plateaus_.empty() && out.plateaus_.back().jump == p.jump) {
      out.plateaus_.back().value = p.value;
    } else {
      out.plateaus_.push_back(p);
    }
    running = p.value;
  }
  return out;
}

bool StepDistribution::reaches_one() const {
  return !plateaus_.empty() && plateaus_.back().value == 1.0;
}

double StepDistribution::last_jump() const {
  return plateaus_.empty() ? kInf : plateaus_.back().jump;
}

ExpDistribution::ExpDistribution(double rate) : rate_(rate) {
  require_ext_nonneg(rate, "exponential rate");
}

StepDistribution kappa() { return StepDistribution::from_jumps({{0.0, 1.0}}); }

double evaluate(const StepDistribution& phi, double t) {
  require_ext_nonneg(t, "evaluation point");
  if (t == 0.0) return 0.0;
  if (std::isinf(t)) return 1.0;
  const auto& ps = phi.plateaus();
  auto it = std::lower_bound(
      ps.begin(), ps.end(), t,
      [](const StepDistribution::Plateau& p, double s) { return p.jump < s; });
  if (it == ps.begin()) return 0.0;
  return std::prev(it)->value;
}

double evaluate(const ExpDistribution& phi, double t) {
  require_ext_nonneg(t, "evaluation point");
  if (std::isinf(t)) return 1.0;
  if (phi.rate() == 0.0) return t > 0.0 ? 1.0 : 0.0;
  if (std::isinf(phi.rate())) return 0.0;
  return 1.0 - std::exp(-t / phi.rate());
}

double evaluate(const Distribution& phi, double t) {
  return std::visit([t](const auto& d) { return evaluate(d, t); }, phi);
}

StepDistribution left_regularize(
    const std::vector<std::pair<double, double>>& points) {
  std::vector<StepDistribution::Plateau> raw;
  raw.reserve(points.size());
  double prev_t = 0.0, prev_v = 0.0;
  bool first = true;
  for (const auto& [t, v] : points) {
    require_ext_nonneg(t, "threshold");
    require_unit(v, "value");
    if (!first) {
      if (!(t > prev_t)) {
        throw std::invalid_argument("thresholds must be strictly increasing");
      }
      if (v < prev_v) {
        throw std::invalid_argument("values must be monotone, got " +
                                    fmt_real(v) + " after " + fmt_real(prev_v));
      }
    }
    first = false;
    prev_t = t;
    prev_v = v;
    raw.push_back({t, v});
  }
  return StepDistribution::from_jumps(std::move(raw));
}

StepDistribution pointwise_sup(std::span<const StepDistribution> family) {
  if (family.empty()) {
    throw std::invalid_argument("pointwise_sup of an empty family");
  }
  std::vector<StepDistribution::Plateau> raw;
  for (const auto& phi : family) {
    raw.insert(raw.end(), phi.plateaus().begin(), phi.plateaus().end());
  }
  return StepDistribution::from_jumps(std::move(raw));
}

Distribution pointwise_sup(const std::vector<Distribution>& family) {
  if (family.empty()) {
    throw std::invalid_argument("pointwise_sup of an empty family");
  }
  if (std::all_of(family.begin(), family.end(), [](const Distribution& d) {
        return std::holds_alternative<StepDistribution>(d);
      })) {
    std::vector<StepDistribution> steps;
    steps.reserve(family.size());
    for (const auto& d : family) steps.push_back(std::get<StepDistribution>(d));
    return pointwise_sup(std::span<const StepDistribution>(steps));
  }
  if (std::all_of(family.begin(), family.end(), [](const Distribution& d) {
        return std::holds_alternative<ExpDistribution>(d);
      })) {
    // Rates order the family in reverse: the minimum rate dominates.
    const Distribution* best = &family.front();
    for (const auto& d : family) {
      if (std::get<ExpDistribution>(d).rate() <
          std::get<ExpDistribution>(*best).rate()) {
        best = &d;
      }
    }
    return *best;
  }
  throw std::invalid_argument("pointwise_sup over mixed distribution variants");
}

StepDistribution map_values(const StepDistribution& phi,
                            const std::function<double(double)>& f) {
  const double f1 = f(1.0);
  if (f1 != 1.0) {
    throw std::invalid_argument("value map must fix 1 exactly, got f(1) = " +
                                fmt_real(f1));
  }
  std::vector<StepDistribution::Plateau> raw;
  double prev = 0.0;
  bool have_prev = false;
  // The implicit zero segment before the first jump is part of the
  // function on (0,inf): it maps through f as well.
  if (phi.plateaus().empty() || phi.plateaus().front().jump > 0.0) {
    const double v0 = f(0.0);
    require_unit(v0, "mapped plateau value");
    raw.push_back({0.0, v0});
    prev = v0;
    have_prev = true;
  }
  for (const auto& p : phi.plateaus()) {
    const double v = f(p.value);
    require_unit(v, "mapped plateau value");
    if (have_prev && v < prev) {
      throw std::invalid_argument("value map is not monotone");
    }
    raw.push_back({p.jump, v});
    prev = v;
    have_prev = true;
  }
  return StepDistribution::from_jumps(std::move(raw));
}

StepDistribution convolve(const OrdinalSumTNorm& t, const StepDistribution& phi,
                          const StepDistribution& psi, std::size_t size_cap) {
  const auto& ps = phi.plateaus();
  const auto& qs = psi.plateaus();
  if (ps.size() * qs.size() > size_cap) {
    throw std::runtime_error("convolution plateau budget exceeded: " +
                             std::to_string(ps.size()) + " x " +
                             std::to_string(qs.size()));
  }
  std::vector<StepDistribution::Plateau> raw;
  raw.reserve(ps.size() * qs.size());
  for (const auto& p : ps) {
    for (const auto& q : qs) {
      raw.push_back({p.jump + q.jump, t.apply(p.value, q.value)});
    }
  }
  return StepDistribution::from_jumps(std::move(raw));
}

double first_reach_one(const StepDistribution& phi) {
  return phi.reaches_one() ? phi.plateaus().back().jump : kInf;
}

double first_reach_one(const ExpDistribution& phi) {
  return phi.rate() == 0.0 ? 0.0 : kInf;
}

double first_reach_one(const Distribution& phi) {
  return std::visit([](const auto& d) { return first_reach_one(d); }, phi);
}

namespace {

void require_level(double theta) {
  require_unit(theta, "threshold level");
  if (theta == 1.0) {
    throw std::invalid_argument(
        "threshold level 1 is not meaningful here; use first_reach_one");
  }
}

}  // namespace

double threshold_inf(const StepDistribution& phi, double theta) {
  require_level(theta);
  for (const auto& p : phi.plateaus()) {
    if (p.value > theta) return p.jump;
  }
  return kInf;
}

double threshold_inf(const ExpDistribution& phi, double theta) {
  require_level(theta);
  if (phi.rate() == 0.0) return 0.0;
  if (std::isinf(phi.rate())) return kInf;
  return -phi.rate() * std::log1p(-theta);
}

double threshold_inf(const Distribution& phi, double theta) {
  return std::visit([theta](const auto& d) { return threshold_inf(d, theta); },
                    phi);
}

std::optional<double> first_violation(const StepDistribution& phi,
                                      const StepDistribution& psi) {
  std::vector<double> jumps;
  jumps.reserve(phi.plateaus().size() + psi.plateaus().size());
  for (const auto& p : phi.plateaus()) jumps.push_back(p.jump);
  for (const auto& p : psi.plateaus()) jumps.push_back(p.jump);
  std::sort(jumps.begin(), jumps.end());
  jumps.erase(std::unique(jumps.begin(), jumps.end()), jumps.end());
  for (double j : jumps) {
    if (right_value(phi, j) > right_value(psi, j)) return j;
  }
  return std::nullopt;
}

bool leq(const StepDistribution& phi, const StepDistribution& psi) {
  return !first_violation(phi, psi).has_value();
}

namespace {

// phi <= e pointwise iff each plateau value is cleared by e at its onset:
// e is continuous and increasing, so the infimum of e over (jump, next]
// is e(jump).
bool step_leq_exp(const StepDistribution& phi, const ExpDistribution& e) {
  if (e.rate() == 0.0) return true;  // the unit dominates everything
  if (std::isinf(e.rate())) return phi.plateaus().empty();
  for (const auto& p : phi.plateaus()) {
    if (p.value > evaluate(e, p.jump)) return false;
  }
  return true;
}

// e <= phi pointwise: e must vanish up to the first jump (so the first
// jump is 0), stay below each plateau value through the plateau's right
// end, and phi must reach 1 because sup e = 1.
bool exp_leq_step(const ExpDistribution& e, const StepDistribution& phi) {
  if (std::isinf(e.rate())) return true;  // bottom of the order
  if (e.rate() == 0.0) return is_kappa(phi);
  const auto& ps = phi.plateaus();
  if (!phi.reaches_one()) return false;
  if (ps.front().jump != 0.0) return false;
  for (std::size_t i = 0; i + 1 < ps.size(); ++i) {
    if (evaluate(e, ps[i + 1].jump) > ps[i].value) return false;
  }
  return true;
}

}  // namespace

bool leq(const Distribution& phi, const Distribution& psi) {
  if (const auto* sp = std::get_if<StepDistribution>(&phi)) {
    if (const auto* sq = std::get_if<StepDistribution>(&psi)) return leq(*sp, *sq);
    return step_leq_exp(*sp, std::get<ExpDistribution>(psi));
  }
  const auto& ep = std::get<ExpDistribution>(phi);
  if (const auto* sq = std::get_if<StepDistribution>(&psi)) {
    return exp_leq_step(ep, *sq);
  }
  return ep.rate() >= std::get<ExpDistribution>(psi).rate();
}

bool is_kappa(const StepDistribution& phi) {
  return phi.plateaus().size() == 1 && phi.plateaus()[0].jump == 0.0 &&
         phi.plateaus()[0].value == 1.0;
}

bool is_kappa(const ExpDistribution& phi) { return phi.rate() == 0.0; }

bool is_kappa(const Distribution& phi) {
  return std::visit([](const auto& d) { return is_kappa(d); }, phi);
}

bool distributions_equal(const Distribution& a, const Distribution& b) {
  if (a.index() == b.index()) return a == b;
  return is_kappa(a) && is_kappa(b);
}

}  // namespace pmet
