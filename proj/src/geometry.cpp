#include "sphmls/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace sphmls {

namespace {

void require_same_dim(std::size_t a, std::size_t b) {
  if (a != b) {
    throw DimensionMismatch("dimension mismatch: " + std::to_string(a) + " vs " + std::to_string(b));
  }
}

}  // namespace

SpherePoint::SpherePoint(Vector coords) : coords_(std::move(coords)) {
  if (coords_.size() < 2) {
    throw std::invalid_argument("sphere points need dimension >= 2");
  }
  const double norm = coords_.norm();
  if (!std::isfinite(norm) || std::abs(norm - 1.0) > kUnitTolerance) {
    throw std::invalid_argument("coordinates are not of unit norm (norm = " + std::to_string(norm) + ")");
  }
  coords_ /= norm;
}

SpherePoint::SpherePoint(std::initializer_list<double> coords)
    : SpherePoint(Eigen::Map<const Vector>(coords.begin(), static_cast<Eigen::Index>(coords.size()))) {}

SpherePoint SpherePoint::normalized(const Vector& v) {
  if (v.size() < 2) {
    throw std::invalid_argument("sphere points need dimension >= 2");
  }
  const double norm = v.norm();
  if (!(norm > 0.0) || !std::isfinite(norm)) {
    throw std::invalid_argument("cannot normalize a zero or non-finite vector");
  }
  return SpherePoint(v / norm, Trusted{});
}

SpherePoint SpherePoint::axis(std::size_t dim, std::size_t axis) {
  if (dim < 2 || axis >= dim) {
    throw std::invalid_argument("invalid axis");
  }
  Vector v = Vector::Zero(static_cast<Eigen::Index>(dim));
  v[static_cast<Eigen::Index>(axis)] = 1.0;
  return SpherePoint(std::move(v), Trusted{});
}

SpherePoint SpherePoint::operator-() const { return SpherePoint(-coords_, Trusted{}); }

Rotation::Rotation(Matrix m) : matrix_(std::move(m)) {
  if (matrix_.rows() != matrix_.cols() || matrix_.rows() < 2) {
    throw std::invalid_argument("rotation must be a square matrix of size >= 2");
  }
  const Matrix defect = matrix_.transpose() * matrix_ - Matrix::Identity(matrix_.rows(), matrix_.cols());
  if (defect.cwiseAbs().maxCoeff() > 1e-10 || std::abs(matrix_.determinant() - 1.0) > 1e-10) {
    throw std::invalid_argument("matrix is not a proper rotation");
  }
}

Rotation Rotation::identity(std::size_t dim) {
  const auto n = static_cast<Eigen::Index>(dim);
  return Rotation(Matrix::Identity(n, n), true);
}

SpherePoint Rotation::apply(const SpherePoint& y) const {
  require_same_dim(dim(), y.dim());
  return SpherePoint::normalized(matrix_ * y.coords());
}

SphericalCap::SphericalCap(SpherePoint c, double r) : center(std::move(c)), radius(r) {
  if (!(r > 0.0) || r > M_PI) {
    throw std::invalid_argument("cap radius must lie in (0, pi]");
  }
}

double geodesic_distance(const Vector& y, const Vector& z) {
  require_same_dim(static_cast<std::size_t>(y.size()), static_cast<std::size_t>(z.size()));
  return std::acos(std::clamp(y.dot(z), -1.0, 1.0));
}

double geodesic_distance(const SpherePoint& y, const SpherePoint& z) {
  return geodesic_distance(y.coords(), z.coords());
}

SpherePoint project_to_sphere(const Vector& x) {
  const double r2 = x.squaredNorm();
  if (!(r2 < 1.0)) {
    throw DomainError("projection requires |x| < 1");
  }
  Vector y(x.size() + 1);
  y.head(x.size()) = x;
  y[x.size()] = std::sqrt(1.0 - r2);
  return SpherePoint::normalized(y);
}

Vector inverse_projection(const SpherePoint& y) {
  const auto d = static_cast<Eigen::Index>(y.dim());
  if (!(y.coords()[d - 1] > 0.0)) {
    throw DomainError("inverse projection requires a point in the open upper hemisphere");
  }
  return y.coords().head(d - 1);
}

Rotation rotation_to_north(const SpherePoint& y) {
  const auto d = static_cast<Eigen::Index>(y.dim());
  const Vector& v = y.coords();
  const double last = v[d - 1];
  if (last == 1.0 && v.head(d - 1).isZero(0.0)) {
    return Rotation::identity(y.dim());
  }
  if (last < -1.0 + 1e-12) {
    Matrix flip = Matrix::Identity(d, d);
    flip(d - 2, d - 2) = -1.0;
    flip(d - 1, d - 1) = -1.0;
    return Rotation(std::move(flip));
  }
  // Reflection across the hyperplane orthogonal to w = y + e_d sends y to
  // -e_d; flipping the last axis then sends -e_d to e_d.
  Vector w = v;
  w[d - 1] += 1.0;
  Matrix r = Matrix::Identity(d, d) - (2.0 / w.squaredNorm()) * (w * w.transpose());
  r.row(d - 1) *= -1.0;
  return Rotation(std::move(r));
}

bool cap_contains(const SphericalCap& cap, const SpherePoint& z) {
  return geodesic_distance(cap.center, z) < cap.radius;
}

}  // namespace sphmls
