#include "sphmls/node_set.hpp"
#include "support.hpp"

#include <doctest.h>

#include <numeric>

using namespace sphmls;

namespace {

double brute_separation(const NodeSet& nodes) {
  double best = M_PI;
  for (std::size_t i = 0; i < nodes.size(); ++i)
    for (std::size_t j = i + 1; j < nodes.size(); ++j)
      best = std::min(best, geodesic_distance(Vector(nodes.column(i)), Vector(nodes.column(j))));
  return best / 2.0;
}

// Exact covering radius: the maximum over Voronoi vertices, i.e. circumcenters of node
// triples with no node strictly closer than the triple.
double exact_fill(const NodeSet& nodes) {
  double h = 0.0;
  const std::size_t n = nodes.size();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      for (std::size_t k = j + 1; k < n; ++k) {
        const Eigen::Vector3d a = nodes.column(i), b = nodes.column(j), c = nodes.column(k);
        const Eigen::Vector3d normal = (b - a).cross(c - a);
        if (normal.norm() < 1e-14) continue;
        for (double sign : {1.0, -1.0}) {
          const Vector v = sign * normal.normalized();
          const double r = geodesic_distance(v, Vector(a));
          bool empty = true;
          for (std::size_t m = 0; m < n && empty; ++m) {
            empty = geodesic_distance(v, Vector(nodes.column(m))) >= r - 1e-12;
          }
          if (empty) h = std::max(h, r);
        }
      }
  return h;
}

std::vector<std::size_t> brute_cap(const NodeSet& nodes, const SpherePoint& c, double delta) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    if (geodesic_distance(c.coords(), Vector(nodes.column(i))) < delta) out.push_back(i);
  }
  return out;
}

NodeSet equator(int count) {
  std::vector<SpherePoint> pts;
  for (int i = 0; i < count; ++i) {
    const double a = 2.0 * M_PI * i / count;
    pts.push_back(SpherePoint::normalized(Vector{{std::cos(a), std::sin(a), 0.0}}));
  }
  return NodeSet(pts);
}

}  // namespace

TEST_CASE("node set construction") {
  CHECK_THROWS(NodeSet(std::vector<SpherePoint>{}));
  const auto e3 = SpherePoint::axis(3, 2);
  CHECK_THROWS_AS(NodeSet(std::vector<SpherePoint>{e3, e3}), std::invalid_argument);
  CHECK_THROWS_AS(NodeSet(std::vector<SpherePoint>{e3, SpherePoint::axis(4, 0)}), DimensionMismatch);
  const NodeSet two(std::vector<SpherePoint>{e3, -e3});
  CHECK(two.size() == 2);
  CHECK(two.dim() == 3);
  CHECK(two.point(1)[2] == -1.0);
}

TEST_CASE("fibonacci grid") {
  CHECK_THROWS(fibonacci_grid(0));
  const NodeSet g = fibonacci_grid(5);
  REQUIRE(g.size() == 11);
  for (std::size_t i = 0; i < g.size(); ++i) CHECK(std::abs(g.column(i).norm() - 1.0) < 1e-15);
  // i = 0 sits in the middle of the ascending z sequence.
  CHECK(g.column(5)[0] == doctest::Approx(1.0));
  CHECK(std::abs(g.column(5)[1]) < 1e-15);
  CHECK(std::abs(g.column(5)[2]) < 1e-15);
  CHECK(g.column(0)[2] == doctest::Approx(-10.0 / 11.0));
  CHECK(g.column(10)[2] == doctest::Approx(10.0 / 11.0));

  const double phi = (1.0 + std::sqrt(5.0)) / 2.0;
  const double lam = 2.0 * M_PI * (3.0 / phi - std::floor(3.0 / phi));
  const double s = std::sqrt(1.0 - 36.0 / 121.0);
  CHECK(g.column(8)[0] == doctest::Approx(s * std::cos(lam)).epsilon(1e-13));
  CHECK(g.column(8)[1] == doctest::Approx(s * std::sin(lam)).epsilon(1e-13));

  CHECK(fibonacci_grid(10).size() == 21);
}

TEST_CASE("separation distance") {
  const auto e3 = SpherePoint::axis(3, 2);
  CHECK(separation_distance(NodeSet(std::vector<SpherePoint>{e3, -e3})) == doctest::Approx(M_PI / 2).epsilon(1e-15));
  CHECK(separation_distance(equator(4)) == doctest::Approx(M_PI / 4).epsilon(1e-14));
  CHECK_THROWS(separation_distance(NodeSet(std::vector<SpherePoint>{e3})));
  for (std::size_t n : {5, 40, 300}) {
    const NodeSet g = fibonacci_grid(n);
    CHECK(separation_distance(g) == brute_separation(g));
    CHECK(g.separation() == separation_distance(g));
  }
}

TEST_CASE("separation above the all-pairs threshold") {
  const NodeSet g = fibonacci_grid(10100);
  const double q = separation_distance(g);
  // Neighbour scan oracle over a strip of the z-sorted grid.
  double best = M_PI;
  for (std::size_t i = 0; i < g.size(); ++i)
    for (std::size_t j = i + 1; j < std::min(g.size(), i + 400); ++j)
      best = std::min(best, geodesic_distance(Vector(g.column(i)), Vector(g.column(j))));
  CHECK(q == doctest::Approx(best / 2.0).epsilon(1e-12));
}

TEST_CASE("fill distance estimate") {
  const auto e3 = SpherePoint::axis(3, 2);
  SUBCASE("single node") {
    const FillEstimate f = fill_distance_estimate(NodeSet(std::vector<SpherePoint>{e3}), 1000000, 3);
    CHECK(f.h >= 0.99 * M_PI);
    CHECK(f.h <= M_PI);
    CHECK(f.random_probes == 1000000);
    CHECK(f.grid_probes >= 100);
  }
  SUBCASE("two antipodes") {
    const FillEstimate f = fill_distance_estimate(NodeSet(std::vector<SpherePoint>{e3, -e3}), 1000000, 3);
    CHECK(f.h <= M_PI / 2 + 1e-12);
    CHECK(f.h >= 0.99 * M_PI / 2);
  }
  SUBCASE("more probes never decrease the estimate") {
    const NodeSet g = fibonacci_grid(40);
    double last = 0.0;
    for (std::size_t s : {1, 10, 100, 1000, 10000}) {
      const double h = fill_distance_estimate(g, s, 7).h;
      CHECK(h >= last);
      last = h;
    }
  }
  SUBCASE("n = 10 against the exact covering radius") {
    const NodeSet g = fibonacci_grid(10);
    const double h = fill_distance_estimate(g, 1000000, 5).h;
    const double exact = exact_fill(g);
    // 10^6 probes leave gaps of about sqrt(4 pi / 10^6) = 0.0035 rad near a vertex.
    CHECK(h <= exact + 1e-12);
    CHECK(h >= exact - 0.0035);
    CHECK(h / brute_separation(g) < 2.0);
  }
  CHECK_THROWS(fill_distance_estimate(fibonacci_grid(5), 0, 1));
  CHECK_THROWS_AS(fill_distance_estimate(NodeSet(std::vector<SpherePoint>{SpherePoint::axis(4, 0)}), 10, 1),
                  DimensionMismatch);
}

TEST_CASE("neighbors in cap") {
  const NodeSet g = fibonacci_grid(20);
  std::vector<std::size_t> all(g.size());
  std::iota(all.begin(), all.end(), std::size_t{0});
  CHECK(g.neighbors_in_cap(SpherePoint::axis(3, 0), M_PI + 0.1) == all);
  const auto far = SpherePoint::normalized(Vector{{0.3, 0.2, 0.9}});
  const double nearest = g.nearest(far.coords(), g.size()).distance;
  CHECK(g.neighbors_in_cap(far, 0.5 * nearest).empty());
  CHECK_THROWS(g.neighbors_in_cap(far, 0.0));
  CHECK_THROWS_AS(g.neighbors_in_cap(SpherePoint::axis(4, 0), 0.1), DimensionMismatch);

  std::mt19937_64 rng(21);
  std::uniform_real_distribution<double> radius(1e-3, 3.3);
  for (std::size_t n : {20, 200, 3000}) {
    const NodeSet grid = fibonacci_grid(n);
    for (int t = 0; t < 100; ++t) {
      const auto c = testing::random_point(rng);
      const double delta = t < 50 ? radius(rng) : radius(rng) * 0.05;
      REQUIRE(grid.neighbors_in_cap(c, delta) == brute_cap(grid, c, delta));
    }
    // Polar caps and caps that straddle the date line.
    for (const auto& c : {SpherePoint::axis(3, 2), -SpherePoint::axis(3, 2), -SpherePoint::axis(3, 0)}) {
      REQUIRE(grid.neighbors_in_cap(c, 0.2) == brute_cap(grid, c, 0.2));
    }
  }

  SUBCASE("non-indexed dimension falls back to a scan") {
    std::vector<SpherePoint> pts;
    for (int i = 0; i < 300; ++i) pts.push_back(testing::random_point(rng, 4));
    const NodeSet four(pts);
    for (int t = 0; t < 50; ++t) {
      const auto c = testing::random_point(rng, 4);
      REQUIRE(four.neighbors_in_cap(c, 0.8) == brute_cap(four, c, 0.8));
    }
  }
}

TEST_CASE("nearest node") {
  const NodeSet g = fibonacci_grid(500);
  std::mt19937_64 rng(22);
  for (int t = 0; t < 200; ++t) {
    const auto c = testing::random_point(rng);
    double best = M_PI;
    std::size_t arg = 0;
    for (std::size_t i = 0; i < g.size(); ++i) {
      const double d = geodesic_distance(c.coords(), Vector(g.column(i)));
      if (d < best) best = d, arg = i;
    }
    const auto n = g.nearest(c.coords(), g.size());
    REQUIRE(n.index == arg);
    REQUIRE(n.distance == doctest::Approx(best).epsilon(1e-15));
  }
  const auto self = g.nearest(Vector(g.column(3)), 3);
  CHECK(self.index != 3);
  CHECK(self.distance > 0.0);
}

TEST_CASE("node count bound") {
  CHECK(node_count_in_cap_bound(0.1, 0.1, 2) == doctest::Approx(2.0));
  CHECK(node_count_in_cap_bound(0.1, 0.1, 3) == doctest::Approx(2.0 * M_PI));
  CHECK_THROWS(node_count_in_cap_bound(0.0, 0.1, 3));
  CHECK_THROWS(node_count_in_cap_bound(0.1, 0.1, 1));

  std::mt19937_64 rng(23);
  std::uniform_real_distribution<double> radius(0.01, 1.0);
  for (std::size_t n : {10, 80, 640, 5120}) {
    const NodeSet g = fibonacci_grid(n);
    const double q = g.separation();
    for (int t = 0; t < 1000; ++t) {
      const double delta = radius(rng);
      const auto count = static_cast<double>(g.neighbors_in_cap(testing::random_point(rng), delta).size());
      REQUIRE(count <= node_count_in_cap_bound(q, delta, 3));
    }
  }
}

TEST_CASE("uniformity of the fibonacci family") {
  double lo = 1e300, hi = 0.0;
  for (int k = 1; k <= 8; ++k) {
    const NodeSet g = fibonacci_grid(std::size_t{5} << k);
    const double u = fill_distance_estimate(g, 10000, 1).h / g.separation();
    lo = std::min(lo, u);
    hi = std::max(hi, u);
  }
  CHECK(hi / lo <= 2.5);
}

TEST_CASE("random uniform sphere") {
  CHECK_THROWS(random_uniform_sphere(0, 1));
  const auto a = random_uniform_sphere(100000, 42);
  REQUIRE(a.size() == 100000);
  Vector mean = Vector::Zero(3);
  for (const auto& p : a) {
    REQUIRE(std::abs(p.coords().norm() - 1.0) < 1e-15);
    mean += p.coords();
  }
  CHECK((mean / 100000.0).norm() <= 0.01);

  const auto b = random_uniform_sphere(100000, 42);
  bool same = true;
  for (std::size_t i = 0; i < a.size(); ++i) same = same && a[i].coords() == b[i].coords();
  CHECK(same);
  const auto prefix = random_uniform_sphere(10, 42);
  CHECK(prefix[9].coords() == a[9].coords());
  CHECK(random_uniform_sphere(1, 43)[0].coords() != a[0].coords());
  CHECK(random_uniform_sphere(5, 1, 5)[0].dim() == 5);
}
