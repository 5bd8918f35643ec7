#include <doctest.h>

#include <cmath>
#include <random>

#include "cantorcalc/set.hpp"
#include "support/oracles.hpp"

using namespace cantorcalc;

TEST_CASE("first removal step of the triadic set") {
  const PreFractal set = build_prefractal({1.0 / 3.0, RemovalMode::Proportional, 1});
  REQUIRE(set.intervals().size() == 2);
  CHECK(set.intervals()[0].left == 0.0);
  CHECK(set.intervals()[0].right == doctest::Approx(1.0 / 3.0).epsilon(1e-15));
  CHECK(set.intervals()[1].left == doctest::Approx(2.0 / 3.0).epsilon(1e-15));
  CHECK(set.intervals()[1].right == 1.0);
}

TEST_CASE("depth zero is the unit interval in either mode") {
  for (auto mode : {RemovalMode::Proportional, RemovalMode::Absolute}) {
    const PreFractal set = build_prefractal({0.5, mode, 0});
    REQUIRE(set.intervals().size() == 1);
    CHECK(set.intervals()[0].left == 0.0);
    CHECK(set.intervals()[0].right == 1.0);
  }
}

TEST_CASE("absolute removal at depth 2 for xi = 1/5") {
  // endpoints (1 -+ xi -+ 2 xi^2)/4 etc.: 0.18, 0.22, 0.4, 0.6, 0.78, 0.82
  const PreFractal set = build_prefractal({0.2, RemovalMode::Absolute, 2});
  REQUIRE(set.intervals().size() == 4);
  const double expect[4][2] = {
      {0.0, 0.18}, {0.22, 0.4}, {0.6, 0.78}, {0.82, 1.0}};
  for (int i = 0; i < 4; ++i) {
    CHECK(set.intervals()[i].left == doctest::Approx(expect[i][0]).epsilon(1e-15));
    CHECK(set.intervals()[i].right == doctest::Approx(expect[i][1]).epsilon(1e-15));
  }
}

TEST_CASE("builder rejects invalid parameters") {
  CHECK_THROWS_AS(build_prefractal({0.0, RemovalMode::Proportional, 1}),
                  std::domain_error);
  CHECK_THROWS_AS(build_prefractal({1.0, RemovalMode::Proportional, 1}),
                  std::domain_error);
  CHECK_THROWS_AS(build_prefractal({-0.3, RemovalMode::Proportional, 1}),
                  std::domain_error);
  CHECK_THROWS_AS(build_prefractal({0.5, RemovalMode::Proportional, -1}),
                  std::invalid_argument);
  CHECK_THROWS_AS(build_prefractal({0.5, RemovalMode::Proportional, 53}),
                  std::invalid_argument);
  // absolute removal of 0.81 does not fit inside pieces of length 0.05
  CHECK_THROWS_AS(build_prefractal({0.9, RemovalMode::Absolute, 2}),
                  std::domain_error);
}

TEST_CASE("structural invariants across depths") {
  for (double xi : {0.2, 1.0 / 3.0, 0.5, 0.7}) {
    PreFractal prev = build_prefractal({xi, RemovalMode::Proportional, 0});
    for (int k = 1; k <= 12; ++k) {
      const PreFractal cur = build_prefractal({xi, RemovalMode::Proportional, k});
      const auto ivs = cur.intervals();
      REQUIRE(ivs.size() == (std::size_t{1} << k));
      CHECK(ivs.front().left == 0.0);
      CHECK(ivs.back().right == 1.0);

      const double len = std::pow((1.0 - xi) / 2.0, k);
      for (std::size_t i = 0; i < ivs.size(); ++i) {
        CHECK(ivs[i].length() == doctest::Approx(len).epsilon(1e-12));
        if (i) CHECK(ivs[i].left > ivs[i - 1].right);
        // nested in exactly one parent
        int parents = 0;
        for (const Interval& up : prev.intervals())
          if (up.left <= ivs[i].left + 1e-15 && ivs[i].right <= up.right + 1e-15)
            ++parents;
        CHECK(parents == 1);
        // symmetric under x -> 1-x
        const Interval& mirror = ivs[ivs.size() - 1 - i];
        CHECK(ivs[i].left == doctest::Approx(1.0 - mirror.right).epsilon(1e-14));
      }
      prev = cur;
    }
  }
}

TEST_CASE("lebesgue measure") {
  CHECK(lebesgue_measure(build_prefractal({0.5, RemovalMode::Proportional, 2})) ==
        doctest::Approx(0.25).epsilon(1e-15));
  CHECK(lebesgue_measure(build_prefractal({1.0 / 3.0, RemovalMode::Proportional, 4})) ==
        doctest::Approx(std::pow(2.0 / 3.0, 4)).epsilon(1e-14));
  // absolute mode at depth 2 removes xi + 2 xi^2
  CHECK(lebesgue_measure(build_prefractal({0.2, RemovalMode::Absolute, 2})) ==
        doctest::Approx(0.72).epsilon(1e-14));

  for (double xi : {1.0 / 3.0, 0.47}) {
    for (int k = 1; k <= 20; ++k) {
      const double measured =
          lebesgue_measure(build_prefractal({xi, RemovalMode::Proportional, k}));
      const double bound = std::ldexp(1.0, k) * 1e-16;
      CHECK(std::abs(measured - std::pow(1.0 - xi, k)) <= bound + 1e-15);
    }
  }
}

TEST_CASE("modes coincide exactly when xi = 1/3 and differ for xi = 1/5") {
  for (int k = 1; k <= 10; ++k) {
    const PreFractal prop = build_prefractal({1.0 / 3.0, RemovalMode::Proportional, k});
    const PreFractal lit = build_prefractal({1.0 / 3.0, RemovalMode::Absolute, k});
    REQUIRE(prop.intervals().size() == lit.intervals().size());
    for (std::size_t i = 0; i < prop.intervals().size(); ++i) {
      CHECK(std::abs(prop.intervals()[i].left - lit.intervals()[i].left) <= 1e-12);
      CHECK(std::abs(prop.intervals()[i].right - lit.intervals()[i].right) <= 1e-12);
    }
  }
  const PreFractal prop = build_prefractal({0.2, RemovalMode::Proportional, 2});
  const PreFractal lit = build_prefractal({0.2, RemovalMode::Absolute, 2});
  CHECK(std::abs(prop.intervals()[0].right - lit.intervals()[0].right) > 0.01);  // 0.16 vs 0.18
}

TEST_CASE("endpoints agree with exact rational arithmetic") {
  struct Case {
    long long p, q;
    bool absolute;
  };
  for (const Case c : {Case{1, 3, false}, Case{1, 3, true}, Case{1, 5, false},
                       Case{1, 5, true}, Case{1, 2, false}, Case{2, 5, false}}) {
    for (int k = 1; k <= 12; ++k) {
      const auto exact = oracles::exact_endpoints(c.p, c.q, c.absolute, k);
      const PreFractal set = build_prefractal(
          {static_cast<double>(c.p) / static_cast<double>(c.q),
           c.absolute ? RemovalMode::Absolute : RemovalMode::Proportional, k});
      const auto ivs = set.intervals();
      REQUIRE(exact.nums.size() == ivs.size() * 2);
      for (std::size_t i = 0; i < ivs.size(); ++i) {
        CHECK(std::abs(ivs[i].left - exact.value(2 * i)) <= 1e-13);
        CHECK(std::abs(ivs[i].right - exact.value(2 * i + 1)) <= 1e-13);
      }
    }
  }
  // rational route confirms the 1/3 mode coincidence identically
  const auto a = oracles::exact_endpoints(1, 3, false, 10);
  const auto b = oracles::exact_endpoints(1, 3, true, 10);
  CHECK(a.denom == b.denom);
  CHECK(a.nums == b.nums);
}

TEST_CASE("hausdorff dimension formula") {
  CHECK(hausdorff_dimension(1.0 / 3.0) ==
        doctest::Approx(oracles::kDimOneThird).epsilon(1e-14));
  CHECK(hausdorff_dimension(0.2) ==
        doctest::Approx(oracles::kDimOneFifth).epsilon(1e-14));
  CHECK(hausdorff_dimension(0.5) == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(hausdorff_dimension(1e-9) == doctest::Approx(1.0).epsilon(1e-8));
  CHECK(hausdorff_dimension(0.999) < 0.1);

  double prev = 2.0;
  for (int i = 1; i <= 100; ++i) {
    const double d = hausdorff_dimension(i / 101.0);
    CHECK(d < prev);
    CHECK(d > 0.0);
    CHECK(d < 1.0);
    prev = d;
  }
  CHECK_THROWS_AS(hausdorff_dimension(0.0), std::domain_error);
  CHECK_THROWS_AS(hausdorff_dimension(1.0), std::domain_error);
  CHECK_THROWS_AS(hausdorff_dimension(-1.0), std::domain_error);
  CHECK_THROWS_AS(hausdorff_dimension(2.0), std::domain_error);
}

TEST_CASE("xi_for_dimension inverts the formula") {
  CHECK(xi_for_dimension(oracles::kDimOneThird) ==
        doctest::Approx(1.0 / 3.0).epsilon(1e-12));
  CHECK(xi_for_dimension(0.5) == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(xi_for_dimension(1.0) == doctest::Approx(0.0).epsilon(1e-14));
  for (int i = 1; i < 50; ++i) {
    const double z = i / 50.0;
    CHECK(hausdorff_dimension(xi_for_dimension(z)) ==
          doctest::Approx(z).epsilon(1e-12));
  }
  CHECK_THROWS_AS(xi_for_dimension(0.0), std::domain_error);
  CHECK_THROWS_AS(xi_for_dimension(1.5), std::domain_error);
}

TEST_CASE("flag function") {
  const PreFractal set = build_prefractal({1.0 / 3.0, RemovalMode::Proportional, 1});
  CHECK(set.flag({0.4, 0.6}) == 0);  // inside the removed middle third
  CHECK(set.flag({0.3, 0.5}) == 1);  // reaches past 1/3
  CHECK(set.flag({0.0, 1.0}) == 1);
  // gap cell bounded by the surviving endpoints does not count
  const double a = set.intervals()[0].right;
  const double b = set.intervals()[1].left;
  CHECK(set.flag({a, b}) == 0);
  // degenerate probes are point-membership queries
  CHECK(set.flag({a, a}) == 1);
  CHECK(set.flag({0.5, 0.5}) == 0);
  CHECK(set.flag({0.25, 0.25}) == 1);
}

TEST_CASE("membership at finite depth") {
  const PreFractal set = build_prefractal({1.0 / 3.0, RemovalMode::Proportional, 2});
  CHECK(set.contains(0.0));
  CHECK(set.contains(1.0));
  CHECK(set.contains(1.0 / 9.0));
  CHECK(!set.contains(0.5));
  CHECK(!set.contains(0.15));
  CHECK(!set.contains(-0.1));
  CHECK(!set.contains(1.1));
}

TEST_CASE("resolution reports the shortest interval") {
  const PreFractal set = build_prefractal({1.0 / 3.0, RemovalMode::Proportional, 5});
  CHECK(set.resolution() == doctest::Approx(std::pow(1.0 / 3.0, 5)).epsilon(1e-12));
}
