#include "sphmls/geometry.hpp"
#include "support.hpp"

#include <doctest.h>

using namespace sphmls;

TEST_CASE("sphere point construction") {
  SpherePoint p{0.6, 0.0, 0.8};
  CHECK(p.dim() == 3);
  CHECK(p.coords().norm() == doctest::Approx(1.0).epsilon(1e-15));

  SUBCASE("near-unit input is renormalized") {
    SpherePoint q{0.6 * (1 + 1e-8), 0.0, 0.8 * (1 + 1e-8)};
    CHECK(std::abs(q.coords().norm() - 1.0) < 1e-15);
  }
  SUBCASE("off-sphere input is rejected") {
    CHECK_THROWS_AS((SpherePoint{1.0, 1.0, 0.0}), std::invalid_argument);
    CHECK_THROWS_AS((SpherePoint{1.0}), std::invalid_argument);
  }
  SUBCASE("normalized and axis helpers") {
    CHECK(SpherePoint::normalized(Vector{{0.0, 0.0, 5.0}}).coords() == Vector{{0.0, 0.0, 1.0}});
    CHECK_THROWS(SpherePoint::normalized(Vector::Zero(3)));
    CHECK(SpherePoint::north_pole(4)[3] == 1.0);
    CHECK((-SpherePoint::axis(3, 0))[0] == -1.0);
  }
}

TEST_CASE("geodesic distance examples") {
  const auto e1 = SpherePoint::axis(3, 0);
  const auto e2 = SpherePoint::axis(3, 1);
  const auto e3 = SpherePoint::axis(3, 2);
  CHECK(geodesic_distance(e3, e3) == 0.0);
  CHECK(geodesic_distance(e1, e2) == doctest::Approx(M_PI / 2).epsilon(1e-15));
  const SpherePoint y = SpherePoint::normalized(Vector{{0.3, -0.4, 0.5}});
  // arccos has an infinite slope at -1, so a rounding of eps in the dot product costs sqrt(2 eps).
  CHECK(std::abs(geodesic_distance(y, -y) - M_PI) <= 1e-7);

  SUBCASE("inner products above one are clamped") {
    const SpherePoint z = SpherePoint::normalized(Vector{{1.0, 1e-9, 1e-9}});
    CHECK(std::isfinite(geodesic_distance(z, z)));
    CHECK(geodesic_distance(z, z) >= 0.0);
  }
  SUBCASE("dimension mismatch") {
    CHECK_THROWS_AS(geodesic_distance(e3, SpherePoint::axis(4, 0)), DimensionMismatch);
  }
}

TEST_CASE("metric axioms on random triples") {
  std::mt19937_64 rng(11);
  double worst_triangle = 0.0;
  for (int t = 0; t < 10000; ++t) {
    const auto a = testing::random_point(rng);
    const auto b = testing::random_point(rng);
    const auto c = testing::random_point(rng);
    const double ab = geodesic_distance(a, b);
    REQUIRE(ab == geodesic_distance(b, a));
    REQUIRE(ab >= 0.0);
    REQUIRE(ab <= M_PI);
    worst_triangle = std::max(worst_triangle, ab - geodesic_distance(a, c) - geodesic_distance(c, b));
  }
  CHECK(worst_triangle <= 1e-12);
}

TEST_CASE("projection to the sphere") {
  CHECK(project_to_sphere(Vector::Zero(2)).coords() == Vector{{0.0, 0.0, 1.0}});
  const SpherePoint p = project_to_sphere(Vector{{0.6, 0.0}});
  CHECK(p[0] == doctest::Approx(0.6).epsilon(1e-15));
  CHECK(p[1] == 0.0);
  CHECK(p[2] == doctest::Approx(0.8).epsilon(1e-15));
  CHECK_THROWS_AS(project_to_sphere(Vector{{1.0, 0.0}}), DomainError);
  CHECK_THROWS_AS(project_to_sphere(Vector{{0.8, 0.7}}), DomainError);

  CHECK(inverse_projection(SpherePoint::axis(3, 2)) == Vector::Zero(2));
  const Vector x = inverse_projection(SpherePoint{0.6, 0.0, 0.8});
  CHECK(x[0] == doctest::Approx(0.6).epsilon(1e-15));
  CHECK(x[1] == 0.0);
  CHECK_THROWS_AS(inverse_projection(SpherePoint::normalized(Vector{{0.5, 0.5, -0.1}})), DomainError);
  CHECK_THROWS_AS(inverse_projection(SpherePoint::axis(3, 0)), DomainError);
}

TEST_CASE("projection round trip") {
  std::mt19937_64 rng(12);
  std::uniform_real_distribution<double> u(0.0, 0.99);
  for (int d : {2, 3, 5}) {
    double worst = 0.0;
    for (int t = 0; t < 10000; ++t) {
      Vector x = testing::random_vector(rng, d - 1);
      if (x.norm() > 0.0) x *= u(rng) / x.norm();
      worst = std::max(worst, (inverse_projection(project_to_sphere(x)) - x).norm());
    }
    CHECK(worst <= 1e-14);
  }
}

TEST_CASE("rotation to north") {
  const auto e3 = SpherePoint::axis(3, 2);
  CHECK(rotation_to_north(e3).matrix() == Matrix::Identity(3, 3));

  SUBCASE("antipode") {
    const Rotation r = rotation_to_north(-e3);
    CHECK((r.apply(-e3).coords() - e3.coords()).norm() <= 1e-15);
    CHECK(r.matrix().determinant() == doctest::Approx(1.0));
    CHECK(r.matrix()(0, 0) == 1.0);
    CHECK(r.matrix()(1, 1) == -1.0);
    CHECK(r.matrix()(2, 2) == -1.0);
  }

  SUBCASE("defining property and properness in several dimensions") {
    std::mt19937_64 rng(13);
    for (int d : {2, 3, 4, 6}) {
      double worst = 0.0;
      for (int t = 0; t < 2000; ++t) {
        const auto y = testing::random_point(rng, d);
        const Rotation r = rotation_to_north(y);
        worst = std::max(worst, (r.apply(y).coords() - SpherePoint::north_pole(d).coords()).norm());
        REQUIRE(std::abs(r.matrix().determinant() - 1.0) < 1e-12);
        REQUIRE((r.matrix().transpose() * r.matrix() - Matrix::Identity(d, d)).norm() < 1e-12);
      }
      CHECK(worst <= 1e-12);
    }
  }

  SUBCASE("d = 3 matches the rotation about y x e3") {
    std::mt19937_64 rng(14);
    for (int t = 0; t < 200; ++t) {
      const auto y = testing::random_point(rng);
      const Eigen::Vector3d v(y[0], y[1], y[2]);
      const Eigen::Vector3d axis = v.cross(Eigen::Vector3d::UnitZ()).normalized();
      const double angle = std::acos(std::clamp(v.z(), -1.0, 1.0));
      const Matrix expected = Eigen::AngleAxisd(angle, axis).toRotationMatrix();
      REQUIRE((rotation_to_north(y).matrix() - expected).norm() < 1e-12);
    }
  }

  SUBCASE("deterministic") {
    const auto y = SpherePoint::normalized(Vector{{0.1, 0.2, -0.3}});
    CHECK(rotation_to_north(y).matrix() == rotation_to_north(y).matrix());
  }

  SUBCASE("rotations preserve geodesic distance") {
    std::mt19937_64 rng(15);
    double worst = 0.0;
    for (int t = 0; t < 10000; ++t) {
      const auto y = testing::random_point(rng);
      const auto z = testing::random_point(rng);
      const Rotation r = rotation_to_north(testing::random_point(rng));
      worst = std::max(worst, std::abs(geodesic_distance(r.apply(y), r.apply(z)) - geodesic_distance(y, z)));
    }
    CHECK(worst <= 1e-12);
  }
}

TEST_CASE("rotation validation") {
  CHECK_THROWS(Rotation(Matrix::Constant(3, 3, 1.0)));
  Matrix reflection = Matrix::Identity(3, 3);
  reflection(0, 0) = -1.0;
  CHECK_THROWS(Rotation(reflection));
  const Rotation r = rotation_to_north(SpherePoint::normalized(Vector{{1.0, 2.0, 3.0}}));
  CHECK((r.inverse().matrix() * r.matrix() - Matrix::Identity(3, 3)).norm() < 1e-14);
}

TEST_CASE("cap membership is strict") {
  const auto e1 = SpherePoint::axis(3, 0);
  const auto e3 = SpherePoint::axis(3, 2);
  CHECK(cap_contains(SphericalCap(e3, M_PI / 2), e3));
  CHECK_FALSE(cap_contains(SphericalCap(e3, M_PI / 2), e1));
  CHECK_FALSE(cap_contains(SphericalCap(e3, M_PI), -e3));
  CHECK_THROWS(SphericalCap(e3, 0.0));
  CHECK_THROWS(SphericalCap(e3, 4.0));
}
