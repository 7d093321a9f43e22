#pragma once

#include <Eigen/Dense>

#include <cstddef>
#include <stdexcept>

namespace sphmls {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

class DimensionMismatch : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Unit vector in R^d, d >= 2. Inputs within 1e-6 of unit norm are accepted
// and renormalized; anything further off is rejected.
class SpherePoint {
 public:
  static constexpr double kUnitTolerance = 1e-6;

  explicit SpherePoint(Vector coords);
  SpherePoint(std::initializer_list<double> coords);

  // Projects any nonzero vector radially onto the sphere.
  static SpherePoint normalized(const Vector& v);
  // Standard basis vector e_axis (zero based) in R^dim.
  static SpherePoint axis(std::size_t dim, std::size_t axis);
  static SpherePoint north_pole(std::size_t dim) { return axis(dim, dim - 1); }

  std::size_t dim() const { return static_cast<std::size_t>(coords_.size()); }
  const Vector& coords() const { return coords_; }
  double operator[](std::size_t i) const { return coords_[static_cast<Eigen::Index>(i)]; }

  SpherePoint operator-() const;

 private:
  struct Trusted {};
  SpherePoint(Vector coords, Trusted) : coords_(std::move(coords)) {}

  Vector coords_;
};

// Proper rotation of R^d (orthogonal, det = +1).
class Rotation {
 public:
  explicit Rotation(Matrix m);
  static Rotation identity(std::size_t dim);

  std::size_t dim() const { return static_cast<std::size_t>(matrix_.rows()); }
  const Matrix& matrix() const { return matrix_; }

  SpherePoint apply(const SpherePoint& y) const;
  Vector apply(const Vector& v) const { return matrix_ * v; }
  Rotation inverse() const { return Rotation(matrix_.transpose(), true); }

 private:
  Rotation(Matrix m, bool) : matrix_(std::move(m)) {}
  Matrix matrix_;
};

// Open geodesic ball C_radius(center).
struct SphericalCap {
  SphericalCap(SpherePoint c, double r);

  SpherePoint center;
  double radius;
};

// Great circle distance in radians; the inner product is clamped to [-1, 1].
double geodesic_distance(const SpherePoint& y, const SpherePoint& z);
double geodesic_distance(const Vector& y, const Vector& z);

// (x, sqrt(1 - |x|^2)) for |x| < 1.
SpherePoint project_to_sphere(const Vector& x);

// Drops the last coordinate; requires y_d > 0.
Vector inverse_projection(const SpherePoint& y);

// Rotation R with R y = e_d. It is the minimal rotation in the plane spanned
// by y and e_d (for d = 3: the rotation about y x e_3 by angle d(y, e_3)),
// built from two reflections. The identity is returned for y = e_d, and the
// half turn in the (d-1, d) plane for points within 1e-12 of the antipode.
Rotation rotation_to_north(const SpherePoint& y);

bool cap_contains(const SphericalCap& cap, const SpherePoint& z);

}  // namespace sphmls
