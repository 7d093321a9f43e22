#pragma once

#include "sphmls/geometry.hpp"

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <vector>

namespace sphmls {

class CapIndex;

// Ordered, immutable collection of distinct points on S^{d-1}. Points are
// held column-wise in a d x N matrix. For d = 3 a latitude-band index
// accelerates cap queries; other dimensions fall back to a linear scan.
class NodeSet {
 public:
  explicit NodeSet(const std::vector<SpherePoint>& points);
  explicit NodeSet(Matrix columns);

  std::size_t size() const { return static_cast<std::size_t>(coords_.cols()); }
  std::size_t dim() const { return static_cast<std::size_t>(coords_.rows()); }
  const Matrix& coords() const { return coords_; }
  auto column(std::size_t i) const { return coords_.col(static_cast<Eigen::Index>(i)); }
  SpherePoint point(std::size_t i) const { return SpherePoint::normalized(coords_.col(static_cast<Eigen::Index>(i))); }

  // Indices i with d(y_i, center) < delta, ascending.
  std::vector<std::size_t> neighbors_in_cap(const Vector& center, double delta) const;
  std::vector<std::size_t> neighbors_in_cap(const SpherePoint& center, double delta) const {
    return neighbors_in_cap(center.coords(), delta);
  }

  struct Nearest {
    std::size_t index;
    double distance;
  };
  // Nearest node to `query`; `exclude` skips one index (pass size() for none).
  Nearest nearest(const Vector& query, std::size_t exclude) const;

  // Half the minimal pairwise distance, computed once and cached.
  double separation() const;

 private:
  struct Cache;

  void validate_and_index();

  Matrix coords_;
  std::shared_ptr<const CapIndex> index_;
  std::shared_ptr<Cache> cache_;
};

// Fibonacci grid with 2n+1 points on S^2: for i = -n..n, z_i = 2i/(2n+1),
// longitude 2*pi*i/phi mod 2*pi.
NodeSet fibonacci_grid(std::size_t n);

// All-pairs scan for N <= 2e4, nearest-neighbor queries above that.
double separation_distance(const NodeSet& nodes);

struct FillEstimate {
  double h;                   // radians; lower bound on the true fill distance
  std::size_t grid_probes;    // size of the refined Fibonacci probe grid
  std::size_t random_probes;  // seeded uniform probes
};

// Max over probe points of the distance to the nearest node. The probes are
// a Fibonacci grid with at least 100 N points plus `samples` seeded uniform
// random points; the random sequence for a seed is prefix-stable, so more
// samples never decrease the estimate. Only defined for d = 3.
FillEstimate fill_distance_estimate(const NodeSet& nodes, std::size_t samples, std::uint64_t seed);

// Upper bound ((q + delta)/q)^{d-1} (pi/2)^{d-2} on the number of nodes with
// separation q that fit in a cap of radius delta.
double node_count_in_cap_bound(double q, double delta, int d);

// Seeded points uniform on S^{d-1} (normalized Gaussian draws).
std::vector<SpherePoint> random_uniform_sphere(std::size_t m, std::uint64_t seed, std::size_t dim = 3);

}  // namespace sphmls
