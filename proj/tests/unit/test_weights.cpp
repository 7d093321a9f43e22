#include "sphmls/node_set.hpp"
#include "sphmls/weights.hpp"
#include "support.hpp"

#include <doctest.h>

using namespace sphmls;

TEST_CASE("hat squared profile") {
  const auto p = WeightProfile::hat_squared(1.0);
  CHECK(phi(p, 0.0) == 1.0);
  CHECK(phi(p, 0.5) == 0.25);
  CHECK(phi(p, 1.0) == 0.0);
  CHECK(phi(p, 1.5) == 0.0);
  CHECK(validate_profile(p).ok);
  CHECK(validate_profile(p).summary() == "ok");
}

TEST_CASE("weight between points") {
  const double delta = 0.4;
  const auto p = WeightProfile::hat_squared(delta);
  const auto y = SpherePoint::axis(3, 2);
  CHECK(weight(p, y, y) == 1.0);
  const auto half = SpherePoint::normalized(Vector{{std::sin(delta / 2), 0.0, std::cos(delta / 2)}});
  CHECK(weight(p, y, half) == doctest::Approx(0.25).epsilon(1e-12));
  const auto edge = SpherePoint::normalized(Vector{{std::sin(delta), 0.0, std::cos(delta)}});
  CHECK(weight(p, y, edge) <= 1e-28);
  CHECK(weight(p, y, SpherePoint::axis(3, 0)) == 0.0);
  CHECK_THROWS(p.with_delta(0.0));
  CHECK(p.with_delta(2.0).support_delta == 2.0);
}

TEST_CASE("weights are symmetric and bounded") {
  std::mt19937_64 rng(41);
  const auto p = WeightProfile::hat_squared(1.2);
  for (int t = 0; t < 10000; ++t) {
    const auto y = testing::random_point(rng);
    const auto z = testing::random_point(rng);
    const double w = weight(p, y, z);
    REQUIRE(w == weight(p, z, y));
    REQUIRE(w >= 0.0);
    REQUIRE(w <= 1.0);
  }
}

TEST_CASE("support agrees with cap queries") {
  std::mt19937_64 rng(42);
  std::uniform_real_distribution<double> radius(0.02, 1.5);
  const NodeSet nodes = fibonacci_grid(400);
  for (int t = 0; t < 200; ++t) {
    const auto y = testing::random_point(rng);
    const double delta = radius(rng);
    const auto p = WeightProfile::hat_squared(delta);
    const auto in_cap = nodes.neighbors_in_cap(y, delta);
    std::vector<std::size_t> positive;
    for (std::size_t i = 0; i < nodes.size(); ++i) {
      if (weight(p, y, nodes.point(i)) > 0.0) positive.push_back(i);
    }
    REQUIRE(positive == in_cap);
  }
}

TEST_CASE("hat power and custom profiles") {
  const auto cubic = WeightProfile::hat_power(1.0, 3.0);
  CHECK(phi(cubic, 0.5) == doctest::Approx(0.125));
  CHECK(phi(cubic, 2.0) == 0.0);
  CHECK(validate_profile(cubic).ok);
  CHECK_THROWS(WeightProfile::hat_power(1.0, 0.5));

  const auto table = WeightProfile::custom(1.0, {{0.0, 1.0}, {0.5, 0.5}, {1.0, 0.0}});
  CHECK(phi(table, 0.25) == doctest::Approx(0.75));
  CHECK(phi(table, 0.75) == doctest::Approx(0.25));
  CHECK(phi(table, 3.0) == 0.0);
  CHECK(validate_profile(table).ok);
  CHECK_THROWS(WeightProfile::custom(1.0, {}));
  CHECK_THROWS(WeightProfile::custom(1.0, {{0.5, 1.0}, {0.5, 0.0}}));
}

TEST_CASE("profile validation reports violations") {
  const auto zero = WeightProfile::custom(1.0, {{0.0, 0.0}});
  const auto rz = validate_profile(zero);
  CHECK_FALSE(rz.ok);
  REQUIRE_FALSE(rz.positivity_violations.empty());
  CHECK(rz.positivity_violations.front() == 0.0);
  CHECK(rz.support_violations.empty());

  const auto one = WeightProfile::custom(1.0, {{0.0, 1.0}});
  const auto r1 = validate_profile(one);
  CHECK_FALSE(r1.ok);
  REQUIRE_FALSE(r1.support_violations.empty());
  CHECK(r1.support_violations.front() == 1.0);
  CHECK(r1.positivity_violations.empty());
  CHECK(r1.summary().find("[1, pi]") != std::string::npos);

  // Vanishes before r = 1/2.
  const auto short_support = WeightProfile::custom(1.0, {{0.0, 1.0}, {0.4, 0.0}});
  const auto rs = validate_profile(short_support);
  CHECK_FALSE(rs.ok);
  CHECK(rs.positivity_violations.front() == doctest::Approx(0.4).epsilon(1e-3));
}
