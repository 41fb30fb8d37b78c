#include "pmet/transforms.hpp"

#include <cmath>
#include <stdexcept>

#include "pmet/common.hpp"

namespace pmet {

namespace {

void require_valid_for(const ProbMetricSpace& m, const OrdinalSumTNorm& t,
                       const std::string& stage) {
  const auto report =
      check_axioms(m.tnorm() == t ? m : m.retagged(t));
  if (!report.all_pass()) {
    for (const auto& c : report.checks) {
      if (c.verdict == Verdict::pass) continue;
      throw InvalidInputSpace(stage + ": input space is not valid for " +
                                  t.describe() + " (" + c.name +
                                  (c.witness.empty() ? "" : ": " + c.witness) +
                                  ")",
                              report);
    }
  }
}

struct DeltaCompare {
  bool equal = true;
  std::string witness;
};

DeltaCompare compare_delta(const ProbMetricSpace& in,
                           const ProbMetricSpace& out) {
  const auto da = derive_approach_space(in);
  const auto db = derive_approach_space(out);
  const Mask full = da.full_mask();
  for (int x = 0; x < da.size(); ++x) {
    for (Mask a = 0; a <= full; ++a) {
      if (da.delta(x, a) != db.delta(x, a)) {
        return {false, da.carrier().label(x) + ", " +
                           fmt_mask(a, da.carrier().points()) + ": " +
                           fmt_real(da.delta(x, a)) + " vs " +
                           fmt_real(db.delta(x, a))};
      }
    }
  }
  return {};
}

TransformReport finish(std::vector<std::string> stages,
                       const ProbMetricSpace& in, ProbMetricSpace out,
                       std::string caveat = {}) {
  auto axioms = check_axioms(out);
  auto dc = compare_delta(in, out);
  return TransformReport{std::move(stages),
                         in.tnorm(),
                         out.tnorm(),
                         std::move(out),
                         std::move(axioms),
                         dc.equal,
                         std::move(dc.witness),
                         std::move(caveat)};
}

ProbMetricSpace map_entry_values(const ProbMetricSpace& m,
                                 const std::function<double(double)>& f,
                                 OrdinalSumTNorm out_tnorm,
                                 const std::string& stage) {
  const int n = m.size();
  std::vector<std::vector<Distribution>> alpha(
      n, std::vector<Distribution>(n, Distribution{kappa()}));
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const auto* s = std::get_if<StepDistribution>(&m.at(i, j));
      if (s == nullptr) {
        throw std::invalid_argument(stage +
                                    " requires step entries; entry (" +
                                    m.carrier().label(i) + "," +
                                    m.carrier().label(j) + ") is exponential");
      }
      alpha[i][j] = map_values(*s, f);
    }
  }
  return ProbMetricSpace(m.carrier(), std::move(out_tnorm), std::move(alpha));
}

// A value map is a monoid homomorphism in the reals but not in binary64:
// on triangle-tight triples the mapped matrix can miss the exact triangle
// check by a few ulps.  Re-closing projects it back onto the exactly valid
// cone.  Jumps and the value-1 plateaus are never touched (the map fixes 1
// and the input's first-reach radii already satisfy the jump triangle), so
// the induced approach table is unchanged.
ProbMetricSpace reclose(const ProbMetricSpace& m) {
  const int n = m.size();
  std::vector<std::vector<StepDistribution>> raw(
      n, std::vector<StepDistribution>(n));
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      raw[i][j] = std::get<StepDistribution>(m.at(i, j));
    }
  }
  return triangle_closure(m.carrier(), std::move(raw), m.tnorm());
}

OrdinalInterval tail_interval(const OrdinalSumTNorm& t,
                              const std::string& stage) {
  const double q = t.sup_idempotents_below_one();
  if (q >= 1.0) {
    throw std::invalid_argument(
        stage + ": the idempotents of " + t.describe() +
        " reach 1, there is no final summand to rescale");
  }
  return t.intervals().back();  // (q, 1) by definition of the supremum
}

}  // namespace

TransformReport retag_min_valid(const ProbMetricSpace& m,
                                const OrdinalSumTNorm& target) {
  require_valid_for(m, OrdinalSumTNorm::minimum(), "min-retag");
  return finish({"min-retag"}, m, m.retagged(target));
}

TransformReport lukasiewicz_to_product(const ProbMetricSpace& m) {
  require_valid_for(m, OrdinalSumTNorm::lukasiewicz(), "luk-to-prod");
  // v -> e^{v-1}; fixes 1 exactly and only 1, so first-reach radii and
  // hence the approach table are untouched.
  auto out = reclose(map_entry_values(
      m, [](double v) { return std::exp(v - 1.0); },
      OrdinalSumTNorm::product(), "luk-to-prod"));
  return finish({"luk-to-prod"}, m, std::move(out));
}

TransformReport product_to_lukasiewicz(const ProbMetricSpace& m) {
  require_valid_for(m, OrdinalSumTNorm::product(), "prod-to-luk");
  return finish({"prod-to-luk"}, m, m.retagged(OrdinalSumTNorm::lukasiewicz()));
}

TransformReport tail_rescale_up(const ProbMetricSpace& m) {
  return tail_rescale_up(m, m.tnorm().sup_idempotents_below_one());
}

TransformReport tail_rescale_up(const ProbMetricSpace& m, double q) {
  const auto tail = tail_interval(m.tnorm(), "tail-rescale-up");
  if (q != tail.a || !m.tnorm().is_idempotent(q)) {
    throw std::invalid_argument(
        "tail-rescale-up: q must be the idempotent onset of the final "
        "summand, got " +
        fmt_real(q));
  }
  require_valid_for(m, m.tnorm(), "tail-rescale-up");
  const AffineTransport iso(tail);
  auto out = reclose(map_entry_values(
      m, [&iso, q](double v) { return v < q ? 0.0 : iso.forward(v); },
      OrdinalSumTNorm({{0.0, 1.0, tail.archetype}}), "tail-rescale-up"));
  return finish({"tail-rescale-up"}, m, std::move(out));
}

TransformReport tail_rescale_down(const ProbMetricSpace& m,
                                  const OrdinalSumTNorm& target) {
  return tail_rescale_down(m, target,
                           target.sup_idempotents_below_one());
}

TransformReport tail_rescale_down(const ProbMetricSpace& m,
                                  const OrdinalSumTNorm& target, double q) {
  const auto tail = tail_interval(target, "tail-rescale-down");
  if (q != tail.a || !target.is_idempotent(q)) {
    throw std::invalid_argument(
        "tail-rescale-down: q must be the idempotent onset of the final "
        "summand of the target, got " +
        fmt_real(q));
  }
  const OrdinalSumTNorm archetype({{0.0, 1.0, tail.archetype}});
  if (!(m.tnorm() == archetype)) {
    throw std::invalid_argument(
        "tail-rescale-down: input must carry the pure archetype " +
        archetype.describe() + ", got " + m.tnorm().describe());
  }
  require_valid_for(m, archetype, "tail-rescale-down");
  const AffineTransport iso(tail);
  // The zero segment maps to the constant q: backward(0) = q exactly.
  auto out = reclose(map_entry_values(
      m, [&iso](double v) { return iso.backward(v); }, target,
      "tail-rescale-down"));
  return finish({"tail-rescale-down"}, m, std::move(out));
}

TransformReport project_to_min(const ProbMetricSpace& m) {
  const OrdinalSumTNorm& t = m.tnorm();
  require_valid_for(m, t, "project-min");
  std::string caveat;
  if (t.sup_idempotents_below_one() < 1.0) {
    caveat =
        "the idempotents of the input t-norm do not reach 1; the approach "
        "table is still preserved because finite suprema reach 1 only "
        "through an entry value of exactly 1, which the projection fixes";
  }
  if (t.intervals().empty()) {
    // Every value is idempotent: the projection is the identity.
    return finish({"project-min"}, m, m, std::move(caveat));
  }
  auto out = map_entry_values(
      m, [&t](double v) { return t.idempotent_floor(v); },
      OrdinalSumTNorm::minimum(), "project-min");
  // A monotone value map of a step function is already left-continuous;
  // re-regularizing must be the identity.
  for (int i = 0; i < out.size(); ++i) {
    for (int j = 0; j < out.size(); ++j) {
      const auto& s = std::get<StepDistribution>(out.at(i, j));
      std::vector<std::pair<double, double>> pts;
      for (const auto& p : s.plateaus()) pts.emplace_back(p.jump, p.value);
      if (!(left_regularize(pts) == s)) {
        throw std::logic_error(
            "projection output is not left-continuous in canonical form");
      }
    }
  }
  return finish({"project-min"}, m, std::move(out), std::move(caveat));
}

TransformReport remetrize(const ProbMetricSpace& m, RemetrizeTarget target) {
  if (target == RemetrizeTarget::minimum) {
    return project_to_min(m);
  }
  const double k = m.tnorm().sup_idempotents_below_one();
  if (k == 1.0) {
    auto first = project_to_min(m);
    auto second = retag_min_valid(first.output, OrdinalSumTNorm::product());
    std::vector<std::string> stages = first.stages;
    stages.insert(stages.end(), second.stages.begin(), second.stages.end());
    auto report = finish(std::move(stages), m, std::move(second.output),
                         first.caveat);
    return report;
  }
  auto first = tail_rescale_up(m);
  if (first.output.tnorm() == OrdinalSumTNorm::product()) {
    auto report = finish(first.stages, m, std::move(first.output));
    return report;
  }
  auto second = lukasiewicz_to_product(first.output);
  std::vector<std::string> stages = first.stages;
  stages.insert(stages.end(), second.stages.begin(), second.stages.end());
  return finish(std::move(stages), m, std::move(second.output));
}

std::optional<FloorSupWitness> floor_sup_counterexample(
    const OrdinalSumTNorm& t) {
  const double k = t.sup_idempotents_below_one();
  if (k == 1.0) return std::nullopt;
  FloorSupWitness w;
  w.floor_sup = k;
  const double gap = 1.0 - k;
  for (int i = 1; i <= 20; ++i) {
    // 1 - (1-k)/2^i: strictly inside the final summand, so the floor is k;
    // the halving and the subtraction are exact in binary64.
    w.sequence.push_back(1.0 - std::ldexp(gap, -i));
  }
  return w;
}

ClassificationReport classify(const ProbMetricSpace& m) {
  auto to_min = remetrize(m, RemetrizeTarget::minimum);
  auto to_prod = remetrize(m, RemetrizeTarget::product);
  const bool min_ok = to_min.ok();
  const bool prod_ok = to_prod.ok();
  ClassificationReport out{std::move(to_min),
                           std::move(to_prod),
                           min_ok,
                           prod_ok,
                           "on a finite carrier the minimum-norm certificate "
                           "succeeds for every presented space, so a space "
                           "certified for the product norm but not the "
                           "minimum norm cannot be exhibited at this scale"};
  return out;
}

}  // namespace pmet
