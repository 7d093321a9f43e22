#pragma once

#include "sphmls/geometry.hpp"

#include <cmath>
#include <random>
#include <utility>
#include <vector>

namespace testing {

using sphmls::Matrix;
using sphmls::SpherePoint;
using sphmls::Vector;

inline Vector random_vector(std::mt19937_64& rng, Eigen::Index n, double lo = -1.0, double hi = 1.0) {
  std::uniform_real_distribution<double> u(lo, hi);
  Vector v(n);
  for (Eigen::Index i = 0; i < n; ++i) v[i] = u(rng);
  return v;
}

inline SpherePoint random_point(std::mt19937_64& rng, Eigen::Index d = 3) {
  std::normal_distribution<double> g;
  Vector v(d);
  for (Eigen::Index i = 0; i < d; ++i) v[i] = g(rng);
  return SpherePoint::normalized(v);
}

// Uniformly random proper rotation via QR of a Gaussian matrix.
inline Matrix random_rotation(std::mt19937_64& rng, Eigen::Index d = 3) {
  std::normal_distribution<double> g;
  Matrix a(d, d);
  for (Eigen::Index i = 0; i < d; ++i)
    for (Eigen::Index j = 0; j < d; ++j) a(i, j) = g(rng);
  Eigen::HouseholderQR<Matrix> qr(a);
  Matrix q = qr.householderQ();
  if (q.determinant() < 0) q.col(0) *= -1.0;
  return q;
}

// Gauss-Legendre nodes and weights on [-1, 1] by Newton iteration.
inline std::vector<std::pair<double, double>> gauss_legendre(int n) {
  std::vector<std::pair<double, double>> out;
  for (int i = 1; i <= n; ++i) {
    double x = std::cos(M_PI * (i - 0.25) / (n + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    out.emplace_back(x, 2.0 / ((1.0 - x * x) * dp * dp));
  }
  return out;
}

// Product rule on S^2 exact for polynomials of degree < min(2 n_theta, n_phi).
inline std::pair<std::vector<SpherePoint>, std::vector<double>> sphere_quadrature(int n_theta, int n_phi) {
  std::vector<SpherePoint> pts;
  std::vector<double> w;
  for (const auto& [z, wz] : gauss_legendre(n_theta)) {
    const double s = std::sqrt(1.0 - z * z);
    for (int j = 0; j < n_phi; ++j) {
      const double lam = 2.0 * M_PI * j / n_phi;
      pts.push_back(SpherePoint::normalized(Vector{{s * std::cos(lam), s * std::sin(lam), z}}));
      w.push_back(wz * 2.0 * M_PI / n_phi);
    }
  }
  return {pts, w};
}

}  // namespace testing
