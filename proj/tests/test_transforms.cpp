#include <doctest.h>

#include <cmath>

#include "pmet/oracle.hpp"
#include "pmet/transforms.hpp"

using namespace pmet;

namespace {

bool matrices_equal(const ProbMetricSpace& a, const ProbMetricSpace& b) {
  if (a.size() != b.size()) return false;
  for (int i = 0; i < a.size(); ++i) {
    for (int j = 0; j < a.size(); ++j) {
      if (!distributions_equal(a.at(i, j), b.at(i, j))) return false;
    }
  }
  return true;
}

ProbMetricSpace chi_line(OrdinalSumTNorm t) {
  return from_classical_metric(
      ClassicalMetricSpace(FiniteCarrier({"x", "y", "z"}),
                           {{0.0, 1.0, 3.0}, {1.0, 0.0, 2.0}, {3.0, 2.0, 0.0}}),
      std::move(t));
}

// Product-valid but min-invalid (see the probmetric tests).
ProbMetricSpace product_only_space(OrdinalSumTNorm t) {
  const auto near = StepDistribution::from_jumps({{0.0, 0.5}, {5.0, 1.0}});
  const auto far =
      StepDistribution::from_jumps({{0.0, 0.25}, {5.0, 0.5}, {10.0, 1.0}});
  std::vector<std::vector<Distribution>> alpha{
      {kappa(), near, far}, {near, kappa(), near}, {far, near, kappa()}};
  return ProbMetricSpace(FiniteCarrier({"x", "y", "z"}), std::move(t),
                         std::move(alpha));
}

}  // namespace

TEST_CASE("re-tagging a min-valid space") {
  const auto chi = chi_line(OrdinalSumTNorm::minimum());
  for (const auto& t : corpus_tnorms()) {
    const auto report = retag_min_valid(chi, t);
    INFO(t.describe());
    CHECK(report.ok());
    CHECK(report.output_tnorm == t);
    CHECK(report.delta_preserved);
  }

  const auto exp_space = exp_family_from_metric(random_metric(4, 3));
  CHECK(retag_min_valid(exp_space, OrdinalSumTNorm::product()).ok());

  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    const auto m = random_space(OrdinalSumTNorm::minimum(), 4, seed);
    CHECK(retag_min_valid(m, OrdinalSumTNorm({{0.2, 0.8, Archetype::lukasiewicz}}))
              .ok());
  }

  CHECK_THROWS_AS(
      retag_min_valid(product_only_space(OrdinalSumTNorm::product()),
                      OrdinalSumTNorm::lukasiewicz()),
      InvalidInputSpace);
}

TEST_CASE("Lukasiewicz to product value map") {
  SUBCASE("plateau values map through e^{v-1}, with 1 fixed") {
    const auto chi = chi_line(OrdinalSumTNorm::lukasiewicz());
    const auto report = lukasiewicz_to_product(chi);
    CHECK(report.ok());
    CHECK(is_kappa(report.output.at(0, 0)));
    const auto& entry = std::get<StepDistribution>(report.output.at(0, 1));
    REQUIRE(entry.plateaus().size() == 2);
    // The zero segment of the input maps to e^{-1}.
    CHECK(entry.plateaus()[0] ==
          StepDistribution::Plateau{0.0, std::exp(-1.0)});
    CHECK(entry.plateaus()[1] == StepDistribution::Plateau{1.0, 1.0});
  }
  SUBCASE("an interior value maps to its exponential image") {
    const auto m = product_only_space(OrdinalSumTNorm::lukasiewicz());
    const auto report = lukasiewicz_to_product(m);
    CHECK(report.ok());
    const auto& entry = std::get<StepDistribution>(report.output.at(0, 1));
    CHECK(entry.plateaus()[0].value == std::exp(-0.5));
    CHECK(std::exp(-0.5) == doctest::Approx(0.6065306597126334).epsilon(1e-12));
  }
  SUBCASE("random Lukasiewicz spaces convert with the table preserved") {
    for (std::uint64_t seed = 10; seed <= 25; ++seed) {
      const auto m = random_space(OrdinalSumTNorm::lukasiewicz(), 4, seed);
      const auto report = lukasiewicz_to_product(m);
      CHECK(report.ok());
      CHECK(report.output_tnorm == OrdinalSumTNorm::product());
    }
  }
  SUBCASE("invalid input is refused") {
    // 0.9 *_L 0.9 = 0.8 immediately exceeds the 0.1 direct entry.
    const auto near = StepDistribution::from_jumps({{0.0, 0.9}, {5.0, 1.0}});
    const auto far = StepDistribution::from_jumps({{0.0, 0.1}, {10.0, 1.0}});
    std::vector<std::vector<Distribution>> alpha{
        {kappa(), near, far}, {near, kappa(), near}, {far, near, kappa()}};
    const ProbMetricSpace bad(FiniteCarrier({"x", "y", "z"}),
                              OrdinalSumTNorm::lukasiewicz(), std::move(alpha));
    CHECK_THROWS_AS(lukasiewicz_to_product(bad), InvalidInputSpace);
  }
}

TEST_CASE("product to Lukasiewicz re-tag and the round trip") {
  for (std::uint64_t seed = 30; seed <= 40; ++seed) {
    const auto m = random_space(OrdinalSumTNorm::product(), 4, seed);
    const auto down = product_to_lukasiewicz(m);
    CHECK(down.ok());
    const auto back = lukasiewicz_to_product(down.output);
    CHECK(back.ok());
    // The matrices differ but the approach structure is the same.
    const auto da = derive_approach_space(m);
    const auto db = derive_approach_space(back.output);
    CHECK(da == db);
  }
}

TEST_CASE("tail rescale up") {
  const OrdinalSumTNorm t({{0.5, 1.0, Archetype::product}});
  const auto mid = StepDistribution::from_jumps({{0.0, 0.5}, {1.0, 0.75}, {2.0, 1.0}});
  std::vector<std::vector<Distribution>> alpha{
      {kappa(), mid, mid}, {mid, kappa(), mid}, {mid, mid, kappa()}};
  const ProbMetricSpace m(FiniteCarrier({"x", "y", "z"}), t, std::move(alpha));
  REQUIRE(check_axioms(m).all_pass());

  const auto report = tail_rescale_up(m);
  CHECK(report.ok());
  CHECK(report.output_tnorm == OrdinalSumTNorm::product());
  const auto& entry = std::get<StepDistribution>(report.output.at(0, 1));
  // Value exactly q drops to the zero segment; 0.75 transports to 0.5.
  CHECK(entry.plateaus() ==
        std::vector<StepDistribution::Plateau>{{1.0, 0.5}, {2.0, 1.0}});

  CHECK_THROWS_AS(tail_rescale_up(m, 0.25), std::invalid_argument);
  CHECK_THROWS_AS(tail_rescale_up(chi_line(OrdinalSumTNorm::minimum())),
                  std::invalid_argument);
}

TEST_CASE("tail rescale down and the exact round trip") {
  const OrdinalSumTNorm target({{0.5, 1.0, Archetype::product}});
  const auto entry = StepDistribution::from_jumps({{0.0, 0.75}, {2.0, 1.0}});
  std::vector<std::vector<Distribution>> alpha{
      {kappa(), entry, entry}, {entry, kappa(), entry}, {entry, entry, kappa()}};
  const ProbMetricSpace m(FiniteCarrier({"x", "y", "z"}), target,
                          std::move(alpha));
  REQUIRE(check_axioms(m).all_pass());

  const auto up = tail_rescale_up(m);
  CHECK(up.ok());
  // 0.75 -> 0.5 upward.
  CHECK(std::get<StepDistribution>(up.output.at(0, 1)).plateaus() ==
        std::vector<StepDistribution::Plateau>{{0.0, 0.5}, {2.0, 1.0}});

  const auto down = tail_rescale_down(up.output, target);
  CHECK(down.ok());
  CHECK(down.output_tnorm == target);
  // Dyadic data makes the affine round trip exact, both ways around.
  CHECK(matrices_equal(down.output, m));
  CHECK(matrices_equal(tail_rescale_up(down.output).output, up.output));

  SUBCASE("the zero segment maps to the constant q") {
    const auto chi = chi_line(OrdinalSumTNorm::product());
    const auto lowered = tail_rescale_down(chi, target);
    CHECK(lowered.ok());
    const auto& e = std::get<StepDistribution>(lowered.output.at(0, 1));
    REQUIRE(e.plateaus().size() == 2);
    CHECK(e.plateaus()[0] == StepDistribution::Plateau{0.0, 0.5});
    CHECK(e.plateaus()[1] == StepDistribution::Plateau{1.0, 1.0});
  }
  SUBCASE("archetype mismatches are refused") {
    const auto chi = chi_line(OrdinalSumTNorm::lukasiewicz());
    CHECK_THROWS_AS(tail_rescale_down(chi, target), std::invalid_argument);
  }
}

TEST_CASE("projection to the minimum norm") {
  SUBCASE("floors of plateau values") {
    const OrdinalSumTNorm t({{0.2, 0.8, Archetype::lukasiewicz}});
    const auto entry =
        StepDistribution::from_jumps({{0.0, 0.5}, {1.0, 0.9}, {2.0, 1.0}});
    std::vector<std::vector<Distribution>> alpha{
        {kappa(), entry, entry}, {entry, kappa(), entry}, {entry, entry, kappa()}};
    const ProbMetricSpace m(FiniteCarrier({"x", "y", "z"}), t, std::move(alpha));
    REQUIRE(check_axioms(m).all_pass());
    const auto report = project_to_min(m);
    CHECK(report.ok());
    CHECK(report.caveat.empty());  // idempotents reach 1 here
    CHECK(std::get<StepDistribution>(report.output.at(0, 1)).plateaus() ==
          std::vector<StepDistribution::Plateau>{
              {0.0, 0.2}, {1.0, 0.9}, {2.0, 1.0}});
  }
  SUBCASE("the projection is idempotent as a transform") {
    for (std::uint64_t seed = 60; seed <= 66; ++seed) {
      const auto m = random_space(
          OrdinalSumTNorm({{0.25, 0.75, Archetype::lukasiewicz}}), 4, seed);
      const auto once = project_to_min(m);
      CHECK(once.ok());
      const auto twice = project_to_min(once.output);
      CHECK(matrices_equal(once.output, twice.output));
    }
  }
  SUBCASE("norms whose idempotents stop short of 1 carry the caveat") {
    for (std::uint64_t seed = 70; seed <= 76; ++seed) {
      const auto m = random_space(OrdinalSumTNorm::lukasiewicz(), 4, seed);
      const auto report = project_to_min(m);
      CHECK(report.ok());  // still preserved on a finite carrier
      CHECK_FALSE(report.caveat.empty());
      CHECK(report.output_tnorm == OrdinalSumTNorm::minimum());
    }
  }
  SUBCASE("a min-tagged space projects to itself") {
    const auto m = exp_family_from_metric(random_metric(4, 9));
    const auto report = project_to_min(m);
    CHECK(report.ok());
    CHECK(matrices_equal(report.output, m));
  }
}

TEST_CASE("the re-metrization driver") {
  SUBCASE("product to product is the identity pipeline") {
    for (std::uint64_t seed = 80; seed <= 84; ++seed) {
      const auto m = random_space(OrdinalSumTNorm::product(), 4, seed);
      const auto report = remetrize(m, RemetrizeTarget::product);
      CHECK(report.ok());
      CHECK(report.stages == std::vector<std::string>{"tail-rescale-up"});
      CHECK(matrices_equal(report.output, m));
    }
  }
  SUBCASE("a Lukasiewicz tail runs the two-stage pipeline") {
    const OrdinalSumTNorm t({{0.3, 1.0, Archetype::lukasiewicz}});
    for (std::uint64_t seed = 90; seed <= 96; ++seed) {
      const auto m = random_space(t, 4, seed);
      const auto report = remetrize(m, RemetrizeTarget::product);
      CHECK(report.ok());
      CHECK(report.stages ==
            std::vector<std::string>{"tail-rescale-up", "luk-to-prod"});
      CHECK(report.output_tnorm == OrdinalSumTNorm::product());
    }
  }
  SUBCASE("min to product projects then re-tags") {
    const auto m = random_space(OrdinalSumTNorm::minimum(), 4, 55);
    const auto report = remetrize(m, RemetrizeTarget::product);
    CHECK(report.ok());
    CHECK(report.stages ==
          std::vector<std::string>{"project-min", "min-retag"});
  }
  SUBCASE("to the minimum norm is the projection") {
    const auto m = random_space(OrdinalSumTNorm({{0.3, 1.0, Archetype::product}}),
                                4, 77);
    const auto report = remetrize(m, RemetrizeTarget::minimum);
    CHECK(report.ok());
    CHECK(report.stages == std::vector<std::string>{"project-min"});
  }
}

TEST_CASE("floor supremum counterexamples") {
  SUBCASE("norms whose idempotents reach 1 admit none") {
    CHECK_FALSE(floor_sup_counterexample(OrdinalSumTNorm::minimum()).has_value());
    CHECK_FALSE(floor_sup_counterexample(
                    OrdinalSumTNorm({{0.2, 0.8, Archetype::lukasiewicz}}))
                    .has_value());
  }
  SUBCASE("otherwise the halving sequence is the witness") {
    for (const auto& t : corpus_tnorms()) {
      const double k = t.sup_idempotents_below_one();
      const auto w = floor_sup_counterexample(t);
      CHECK(w.has_value() == (k < 1.0));
      if (!w) continue;
      CHECK(w->floor_sup == k);
      REQUIRE(w->sequence.size() == 20);
      // Each term reproduces the closed form 1 - (1-k)/2^i bit for bit,
      // whose limit is 1; the terms increase towards it.
      for (std::size_t i = 0; i < w->sequence.size(); ++i) {
        CHECK(w->sequence[i] ==
              1.0 - std::ldexp(1.0 - k, -static_cast<int>(i) - 1));
        if (i > 0) CHECK(w->sequence[i] > w->sequence[i - 1]);
      }
      CHECK(1.0 - w->sequence.back() <= std::ldexp(1.0, -20));
      for (double a : w->sequence) {
        CHECK(a < 1.0);
        CHECK(a > k);
        CHECK(t.idempotent_floor(a) == k);
      }
    }
  }
  SUBCASE("the product norm's sequence floors to zero") {
    const auto w = floor_sup_counterexample(OrdinalSumTNorm::product());
    REQUIRE(w.has_value());
    CHECK(w->floor_sup == 0.0);
    CHECK(w->sequence.front() == 0.5);
  }
  SUBCASE("a rescaled Lukasiewicz tail floors to its onset") {
    const auto w = floor_sup_counterexample(
        OrdinalSumTNorm({{0.2, 1.0, Archetype::lukasiewicz}}));
    REQUIRE(w.has_value());
    CHECK(w->floor_sup == 0.2);
  }
}

TEST_CASE("classification certificates") {
  SUBCASE("metric embeddings certify both ways") {
    const auto report = classify(chi_line(OrdinalSumTNorm::minimum()));
    CHECK(report.minimum_certified);
    CHECK(report.product_certified);
    CHECK_FALSE(report.caveat.empty());
  }
  SUBCASE("exponential spaces certify both ways") {
    const auto report = classify(exp_family_from_metric(random_metric(4, 13)));
    CHECK(report.minimum_certified);
    CHECK(report.product_certified);
  }
  SUBCASE("random Lukasiewicz spaces certify both ways") {
    const auto report = classify(random_space(OrdinalSumTNorm::lukasiewicz(), 4, 5));
    CHECK(report.minimum_certified);
    CHECK(report.product_certified);
    CHECK(report.to_product.stages ==
          std::vector<std::string>{"tail-rescale-up", "luk-to-prod"});
  }
}
