#include <doctest.h>

#include <cmath>

#include "pmet/approach.hpp"
#include "pmet/oracle.hpp"

using namespace pmet;

namespace {

double min_distance(const ClassicalMetricSpace& d, int x, Mask a) {
  double best = kInf;
  for (int y = 0; y < d.carrier().size(); ++y) {
    if (mask_contains(a, y)) best = std::min(best, d.distance(x, y));
  }
  return best;
}

// The subset distance computed the long way round: an explicit pointwise
// supremum, then the first radius reaching 1.
double delta_via_sup(const ProbMetricSpace& m, int x, Mask a) {
  if (a == 0) return kInf;
  std::vector<Distribution> fam;
  for (int y = 0; y < m.size(); ++y) {
    if (mask_contains(a, y)) fam.push_back(m.at(x, y));
  }
  return first_reach_one(pointwise_sup(fam));
}

}  // namespace

TEST_CASE("approach table construction is validated") {
  CHECK_THROWS_AS(FiniteApproachSpace(FiniteCarrier({"a"}), {{0.0}}),
                  std::invalid_argument);  // 2 subsets needed
  CHECK_THROWS_AS(FiniteApproachSpace(FiniteCarrier({"a"}), {{kInf, -1.0}}),
                  std::invalid_argument);
  CHECK_NOTHROW(FiniteApproachSpace(FiniteCarrier({"a"}), {{kInf, 0.0}}));
}

TEST_CASE("derived distance matches the metric infimum") {
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const auto d = random_metric(5, seed);
    const auto m = from_classical_metric(d, OrdinalSumTNorm::minimum());
    const auto a = derive_approach_space(m);
    for (int x = 0; x < 5; ++x) {
      for (Mask s = 0; s <= a.full_mask(); ++s) {
        CHECK(a.delta(x, s) == min_distance(d, x, s));
      }
    }
  }
}

TEST_CASE("derived distance equals the explicit supremum route") {
  for (std::uint64_t seed = 30; seed <= 40; ++seed) {
    const auto m = random_space(OrdinalSumTNorm::lukasiewicz(), 5, seed);
    const auto a = derive_approach_space(m);
    for (int x = 0; x < 5; ++x) {
      for (Mask s = 1; s <= a.full_mask(); ++s) {
        CHECK(a.delta(x, s) == delta_via_sup(m, x, s));
      }
    }
  }
}

TEST_CASE("derived tables satisfy the approach axioms") {
  for (std::uint64_t seed = 50; seed <= 65; ++seed) {
    const auto m = random_space(OrdinalSumTNorm({{0.2, 0.8, Archetype::lukasiewicz}}),
                                4, seed);
    CHECK(check_axioms(derive_approach_space(m)).all_pass());
  }
}

TEST_CASE("exponential spaces induce zero-or-infinite distance") {
  const auto d = random_metric(4, 99);
  const auto m = exp_family_from_metric(d);
  const auto a = derive_approach_space(m);
  for (int x = 0; x < 4; ++x) {
    for (Mask s = 1; s <= a.full_mask(); ++s) {
      const double v = a.delta(x, s);
      CHECK((v == 0.0 || v == kInf));
      CHECK(v == (mask_contains(s, x) ? 0.0 : kInf));
    }
  }
  // Separated points make every subset closed, matching the metric topology.
  for (Mask s = 0; s <= a.full_mask(); ++s) {
    CHECK(closure(a, s) == s);
  }
}

TEST_CASE("hand-built tables can fail each axiom") {
  // Two points; masks are {}, {x}, {y}, {x,y}.
  SUBCASE("nonzero self-distance") {
    const FiniteApproachSpace a(FiniteCarrier({"x", "y"}),
                                {{kInf, 1.0, 2.0, 1.0}, {kInf, 2.0, 0.0, 0.0}});
    CHECK(check_axioms(a).find("A1 point")->verdict == Verdict::fail);
  }
  SUBCASE("finite distance to the empty set") {
    const FiniteApproachSpace a(FiniteCarrier({"x", "y"}),
                                {{0.0, 0.0, 2.0, 0.0}, {kInf, 2.0, 0.0, 0.0}});
    CHECK(check_axioms(a).find("A2 empty")->verdict == Verdict::fail);
  }
  SUBCASE("union value differs from the minimum") {
    const FiniteApproachSpace a(FiniteCarrier({"x", "y"}),
                                {{kInf, 0.0, 2.0, 1.0}, {kInf, 2.0, 0.0, 0.0}});
    const auto report = check_axioms(a);
    CHECK(report.find("A3 union")->verdict == Verdict::fail);
    CHECK_FALSE(report.find("A3 union")->witness.empty());
  }
  SUBCASE("triangle violation") {
    // delta(x,{y}) = 5 but hopping through z costs 1 + 1; unions are the
    // minima of the singleton values so only A4 breaks.
    const FiniteApproachSpace a(
        FiniteCarrier({"x", "y", "z"}),
        {{kInf, 0.0, 5.0, 0.0, 1.0, 0.0, 1.0, 0.0},
         {kInf, 5.0, 0.0, 0.0, 1.0, 1.0, 0.0, 0.0},
         {kInf, 1.0, 1.0, 1.0, 0.0, 0.0, 0.0, 0.0}});
    const auto report = check_axioms(a);
    CHECK(report.find("A1 point")->verdict == Verdict::pass);
    CHECK(report.find("A3 union")->verdict == Verdict::pass);
    CHECK(report.find("A4 triangle")->verdict == Verdict::fail);
  }
  SUBCASE("oversize carriers are reported unchecked") {
    const auto m = random_space(OrdinalSumTNorm::minimum(), 5, 7);
    ApproachAxiomOptions opt;
    opt.max_subset_points = 4;
    const auto report = check_axioms(derive_approach_space(m), opt);
    CHECK(report.find("A3 union")->verdict == Verdict::unchecked);
    CHECK_FALSE(report.all_pass());
  }
}

TEST_CASE("closure is a topological closure operator") {
  for (std::uint64_t seed = 70; seed <= 80; ++seed) {
    const auto m = random_space(OrdinalSumTNorm::product(), 5, seed);
    const auto a = derive_approach_space(m);
    CHECK(closure(a, 0) == 0);
    const Mask full = a.full_mask();
    for (Mask s = 0; s <= full; ++s) {
      const Mask c = closure(a, s);
      CHECK((c & s) == s);            // extensive
      CHECK(closure(a, c) == c);      // idempotent
      for (Mask t = 0; t <= full; ++t) {
        CHECK(closure(a, s | t) == (closure(a, s) | closure(a, t)));
      }
    }
  }
}

TEST_CASE("strong neighborhoods") {
  const auto d = random_metric(5, 4242, 0.25);  // distances in (0, 1]
  const auto m = from_classical_metric(d, OrdinalSumTNorm::minimum());
  SUBCASE("the center always belongs") {
    for (int x = 0; x < 5; ++x) {
      for (double t : {1e-6, 0.5, 2.0}) {
        CHECK(mask_contains(strong_neighborhood(m, x, t), x));
      }
    }
  }
  SUBCASE("on a metric embedding they are open balls, up to radius 1") {
    for (int x = 0; x < 5; ++x) {
      for (int k = 1; k <= 20; ++k) {
        const double t = k / 20.0;
        Mask ball = 0;
        for (int y = 0; y < 5; ++y) {
          if (d.distance(x, y) < t) ball |= Mask{1} << y;
        }
        CHECK(strong_neighborhood(m, x, t) == ball);
      }
    }
  }
  SUBCASE("past radius 1 everything is near") {
    for (int x = 0; x < 5; ++x) {
      CHECK(strong_neighborhood(m, x, 1.0000001) == Mask{0x1f});
      CHECK(strong_neighborhood(m, x, 2.0) == Mask{0x1f});
    }
  }
  SUBCASE("bad radii are rejected") {
    CHECK_THROWS_AS(strong_neighborhood(m, 0, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(strong_neighborhood(m, 0, kInf), std::invalid_argument);
  }
}

TEST_CASE("level radii") {
  const auto d = random_metric(4, 11);
  const auto chi = from_classical_metric(d, OrdinalSumTNorm::minimum());
  SUBCASE("the center has radius zero at every level") {
    for (int n : {1, 2, 5, 10}) {
      for (int x = 0; x < 4; ++x) {
        CHECK(level_radii(chi, x, n).values[x] == 0.0);
      }
    }
  }
  SUBCASE("on a metric embedding the radii are the distances") {
    for (int n : {2, 3, 7}) {
      for (int x = 0; x < 4; ++x) {
        const auto r = level_radii(chi, x, n);
        for (int y = 0; y < 4; ++y) CHECK(r.values[y] == d.distance(x, y));
      }
    }
  }
  SUBCASE("plateau crossings move with the level") {
    const auto s = StepDistribution::from_jumps({{1.0, 0.6}, {2.0, 1.0}});
    std::vector<std::vector<Distribution>> alpha{{kappa(), s}, {s, kappa()}};
    const ProbMetricSpace m(FiniteCarrier({"x", "y"}),
                            OrdinalSumTNorm::minimum(), std::move(alpha));
    CHECK(level_radii(m, 0, 2).values[1] == 1.0);  // level 1/2 < 0.6
    CHECK(level_radii(m, 0, 3).values[1] == 2.0);  // level 2/3 > 0.6
  }
  SUBCASE("radii grow with the level") {
    const auto m = random_space(OrdinalSumTNorm::minimum(), 5, 31);
    for (int x = 0; x < 5; ++x) {
      const int bound = level_stabilization_bound(m, x);
      for (int n = 1; n < bound + 2; ++n) {
        const auto lo = level_radii(m, x, n).values;
        const auto hi = level_radii(m, x, n + 1).values;
        for (int y = 0; y < 5; ++y) CHECK(lo[y] <= hi[y]);
      }
      // Stable beyond the bound.
      CHECK(level_radii(m, x, bound).values ==
            level_radii(m, x, bound + 7).values);
    }
  }
}

TEST_CASE("level stabilization bound") {
  const auto s = StepDistribution::from_jumps({{1.0, 0.9}, {2.0, 1.0}});
  std::vector<std::vector<Distribution>> alpha{{kappa(), s}, {s, kappa()}};
  const ProbMetricSpace m(FiniteCarrier({"x", "y"}), OrdinalSumTNorm::minimum(),
                          std::move(alpha));
  const int bound = level_stabilization_bound(m, 0);
  CHECK(bound == 10);  // least n with 1 - 1/n >= 0.9
  CHECK(1.0 - 1.0 / bound >= 0.9);
  CHECK(1.0 - 1.0 / (bound - 1) < 0.9);

  const auto exp_m = exp_family_from_metric(random_metric(3, 5));
  CHECK_THROWS_AS(level_stabilization_bound(exp_m, 0), std::invalid_argument);
}

TEST_CASE("the level formula recovers the derived distance exactly") {
  for (std::uint64_t seed = 90; seed <= 100; ++seed) {
    const auto m = random_space(OrdinalSumTNorm::product(), 5, seed);
    const auto a = derive_approach_space(m);
    for (int x = 0; x < 5; ++x) {
      for (Mask s = 1; s <= a.full_mask(); ++s) {
        CHECK(delta_via_level_radii(m, x, s) == a.delta(x, s));
      }
    }
  }
  const auto m = random_space(OrdinalSumTNorm::minimum(), 3, 1);
  CHECK_THROWS_AS(delta_via_level_radii(m, 0, 0), std::invalid_argument);
}

TEST_CASE("level gauges are symmetric generalized metrics") {
  SUBCASE("on a metric embedding the gauge at level 2 is the metric") {
    const auto d = random_metric(5, 21);
    const auto chi = from_classical_metric(d, OrdinalSumTNorm::minimum());
    const auto g = level_gauge(chi, 2);
    CHECK(g.verdict.all_pass());
    for (int x = 0; x < 5; ++x) {
      for (int y = 0; y < 5; ++y) CHECK(g.d[x][y] == d.distance(x, y));
    }
  }
  SUBCASE("random min-norm spaces pass at several levels") {
    for (std::uint64_t seed = 110; seed <= 118; ++seed) {
      const auto m = random_space(OrdinalSumTNorm::minimum(), 5, seed);
      for (int n : {1, 2, 5, 10}) {
        CHECK(level_gauge(m, n).verdict.all_pass());
      }
    }
  }
  SUBCASE("other norms are rejected with a note") {
    const auto m = random_space(OrdinalSumTNorm::product(), 3, 2);
    CHECK_THROWS_AS(level_gauge(m, 2), std::invalid_argument);
  }
}

TEST_CASE("domination by the level basis") {
  const auto m = random_space(OrdinalSumTNorm::minimum(), 4, 77);
  SUBCASE("zero is dominated at the first level") {
    CHECK(dominating_level(m, 0, {0.0, 0.0, 0.0, 0.0}, 0.5, 10.0) == 1);
  }
  SUBCASE("a level's own radii are dominated") {
    const int bound = level_stabilization_bound(m, 0);
    const auto radii = level_radii(m, 0, bound).values;
    const auto found = dominating_level(m, 0, radii, 1e-9, 100.0);
    REQUIRE(found.has_value());
    CHECK(*found <= bound);
    const auto check = level_radii(m, 0, *found).values;
    for (int y = 0; y < 4; ++y) {
      CHECK(std::min(radii[y], 100.0) <= check[y] + 1e-9);
    }
  }
  SUBCASE("an unreachable candidate is reported as undominated") {
    // The radius at the center itself is always 0, so an infinite demand
    // there can never be covered once omega exceeds eps.
    CHECK_FALSE(
        dominating_level(m, 0, {kInf, kInf, kInf, kInf}, 0.5, 10.0).has_value());
  }
}

TEST_CASE("contraction checking between derived spaces") {
  const auto d = random_metric(4, 8);
  const auto m = from_classical_metric(d, OrdinalSumTNorm::minimum());
  const auto a = derive_approach_space(m);
  SUBCASE("identity") { CHECK(check_contraction({0, 1, 2, 3}, a, a).ok); }
  SUBCASE("an expansion is refused with a witness") {
    const ClassicalMetricSpace tight(FiniteCarrier({"a", "b"}),
                                     {{0.0, 1.0}, {1.0, 0.0}});
    const ClassicalMetricSpace wide(FiniteCarrier({"u", "v"}),
                                    {{0.0, 5.0}, {5.0, 0.0}});
    const auto src =
        derive_approach_space(from_classical_metric(tight, OrdinalSumTNorm::minimum()));
    const auto dst =
        derive_approach_space(from_classical_metric(wide, OrdinalSumTNorm::minimum()));
    const auto check = check_contraction({0, 1}, src, dst);
    CHECK_FALSE(check.ok);
    CHECK_FALSE(check.witness.empty());
  }
}
