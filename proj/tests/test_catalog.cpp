#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "test_support.hpp"

using namespace riccikit;
using namespace testsup;

TEST_CASE("catalog listing") {
  const auto names = catalog::list_names();
  CHECK(names.size() == 8);
  CHECK(std::find(names.begin(), names.end(), "cigar") != names.end());
  CHECK(std::find(names.begin(), names.end(), "perturbed_non_soliton") != names.end());
}

TEST_CASE("unknown names and invalid params") {
  CHECK_THROWS_WITH_AS(catalog::make("moebius"), doctest::Contains("unknown-name"), GeometryError);
  CHECK_THROWS_WITH_AS(catalog::make("round_sphere", {{"radius", -1.0}}),
                       doctest::Contains("invalid-params"), GeometryError);
  CHECK_THROWS_AS(catalog::make("flat", {{"n", 1.0}}), GeometryError);
}

TEST_CASE("fixture sweep: every expected property of every entry") {
  for (const auto& name : catalog::list_names()) {
    CAPTURE(name);
    const auto entry =
        name == "flat" ? catalog::make(name, {{"n", 5}}) : catalog::make(name);
    const auto results = catalog::check_entry(entry, 30, 2024);
    CHECK(!results.empty());
    for (const auto& r : results) {
      CAPTURE(r.property);
      CAPTURE(r.measured);
      CAPTURE(r.expected);
      CHECK(r.pass);
    }
  }
}

TEST_CASE("cigar energy constant is cached on the entry") {
  const auto entry = catalog::make("cigar");
  REQUIRE(entry.soliton.hamilton_constant.has_value());
  CHECK(*entry.soliton.hamilton_constant == doctest::Approx(4.0));
}

TEST_CASE("product entry carries profile and fiber data for the classifier") {
  const auto entry = catalog::make("product_line_cross_fiber");
  REQUIRE(entry.profile.has_value());
  REQUIRE(entry.fiber.has_value());
  CHECK(entry.profile->n == 5);
  CHECK(entry.profile->lambda == 0.0);
  CHECK(entry.fiber->fiber_dim == 4);
}

TEST_CASE("schwarzschild chart respects the horizon margin") {
  const auto entry = catalog::make("euclidean_schwarzschild");
  Vec inside(4);
  inside << 1.0, 2.05, 1.4, 1.6;  // just outside rho = 2m but inside the margin
  CHECK_THROWS_WITH_AS(curvature_bundle(entry.soliton.chart, inside),
                       doctest::Contains("point-outside-domain"), GeometryError);
}

TEST_CASE("entries agree with their independent closed forms") {
  SUBCASE("cigar metric and potential") {
    const auto entry = catalog::make("cigar");
    Vec x(2);
    x << 0.7, -0.4;
    const double w = 1.0 / (1.0 + x.squaredNorm());
    CHECK((entry.soliton.chart.metric(x) - w * Mat::Identity(2, 2)).norm() < 1e-15);
    // stored internal potential is f = -F
    CHECK(entry.soliton.f_value(x) == doctest::Approx(-std::log(1.0 + x.squaredNorm())));
  }
  SUBCASE("round sphere metric determinant") {
    const auto entry = catalog::make("round_sphere", {{"n", 3}, {"radius", 2.0}});
    Vec x(3);
    x << 1.0, 1.2, 0.9;
    const Mat g = entry.soliton.chart.metric(x);
    CHECK(g(0, 0) == doctest::Approx(4.0));
    CHECK(g(1, 1) == doctest::Approx(4.0 * std::sin(1.0) * std::sin(1.0)));
  }
}
