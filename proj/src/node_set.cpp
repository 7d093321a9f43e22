#include "sphmls/node_set.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>
#include <numeric>
#include <random>
#include <stdexcept>
#include <string>

namespace sphmls {

namespace {

constexpr double kAngleMargin = 1e-9;

double polar_angle(double z) { return std::acos(std::clamp(z, -1.0, 1.0)); }

double longitude(double x, double y) {
  const double lon = std::atan2(y, x);
  return lon < 0.0 ? lon + 2.0 * M_PI : lon;
}

}  // namespace

// Latitude-band buckets with longitude-sorted entries (d = 3 only). A cap
// query scans the bands overlapping [theta_c - delta, theta_c + delta] and,
// when the cap avoids both poles, only the longitude window of half-width
// asin(sin(delta) / sin(theta_c)). Candidates are filtered with the exact
// geodesic distance, so results match a linear scan.
class CapIndex {
 public:
  explicit CapIndex(const Matrix& coords) {
    const auto n = static_cast<std::size_t>(coords.cols());
    band_count_ = std::max<std::size_t>(1, static_cast<std::size_t>(std::sqrt(static_cast<double>(n) / 2.0)));
    bands_.resize(band_count_);
    for (std::size_t i = 0; i < n; ++i) {
      const auto c = coords.col(static_cast<Eigen::Index>(i));
      bands_[band_of(polar_angle(c[2]))].push_back({longitude(c[0], c[1]), i});
    }
    for (auto& band : bands_) {
      std::sort(band.begin(), band.end(), [](const Entry& a, const Entry& b) { return a.lon < b.lon; });
    }
  }

  template <typename Visit>
  void candidates(const Vector& center, double delta, Visit&& visit) const {
    const double theta = polar_angle(center[2]);
    const double lo = theta - delta - kAngleMargin;
    const double hi = theta + delta + kAngleMargin;
    const std::size_t b0 = band_of(std::max(lo, 0.0));
    const std::size_t b1 = band_of(std::min(hi, M_PI));
    const bool full_circle = lo <= 0.0 || hi >= M_PI;
    double half_width = M_PI;
    if (!full_circle) {
      const double s = std::sin(delta) / std::sin(theta);
      half_width = s >= 1.0 ? M_PI : std::asin(s) + kAngleMargin;
    }
    const double lon_c = longitude(center[0], center[1]);
    for (std::size_t b = b0; b <= b1; ++b) {
      const auto& band = bands_[b];
      if (half_width >= M_PI) {
        for (const auto& e : band) visit(e.index);
        continue;
      }
      double from = lon_c - half_width;
      double to = lon_c + half_width;
      if (from < 0.0) {
        scan(band, from + 2.0 * M_PI, 2.0 * M_PI, visit);
        from = 0.0;
      }
      if (to > 2.0 * M_PI) {
        scan(band, 0.0, to - 2.0 * M_PI, visit);
        to = 2.0 * M_PI;
      }
      scan(band, from, to, visit);
    }
  }

 private:
  struct Entry {
    double lon;
    std::size_t index;
  };

  std::size_t band_of(double theta) const {
    const auto b = static_cast<std::size_t>(theta / M_PI * static_cast<double>(band_count_));
    return std::min(b, band_count_ - 1);
  }

  template <typename Visit>
  static void scan(const std::vector<Entry>& band, double from, double to, Visit& visit) {
    auto it = std::lower_bound(band.begin(), band.end(), from, [](const Entry& e, double v) { return e.lon < v; });
    for (; it != band.end() && it->lon <= to; ++it) visit(it->index);
  }

  std::size_t band_count_ = 1;
  std::vector<std::vector<Entry>> bands_;
};

struct NodeSet::Cache {
  std::once_flag separation_once;
  double separation = 0.0;
};

NodeSet::NodeSet(const std::vector<SpherePoint>& points) {
  if (points.empty()) {
    throw std::invalid_argument("a node set needs at least one point");
  }
  const auto d = static_cast<Eigen::Index>(points.front().dim());
  coords_.resize(d, static_cast<Eigen::Index>(points.size()));
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (points[i].dim() != points.front().dim()) {
      throw DimensionMismatch("node " + std::to_string(i) + " has a different dimension");
    }
    coords_.col(static_cast<Eigen::Index>(i)) = points[i].coords();
  }
  validate_and_index();
}

NodeSet::NodeSet(Matrix columns) : coords_(std::move(columns)) {
  if (coords_.cols() < 1 || coords_.rows() < 2) {
    throw std::invalid_argument("a node set needs at least one point of dimension >= 2");
  }
  for (Eigen::Index i = 0; i < coords_.cols(); ++i) {
    coords_.col(i) = SpherePoint(Vector(coords_.col(i))).coords();
  }
  validate_and_index();
}

void NodeSet::validate_and_index() {
  std::vector<std::size_t> order(size());
  std::iota(order.begin(), order.end(), 0);
  auto less = [this](std::size_t a, std::size_t b) {
    const auto ca = column(a);
    const auto cb = column(b);
    return std::lexicographical_compare(ca.begin(), ca.end(), cb.begin(), cb.end());
  };
  std::sort(order.begin(), order.end(), less);
  for (std::size_t k = 1; k < order.size(); ++k) {
    if (column(order[k - 1]) == column(order[k])) {
      throw std::invalid_argument("nodes " + std::to_string(order[k - 1]) + " and " + std::to_string(order[k]) +
                                  " coincide");
    }
  }
  if (dim() == 3) {
    index_ = std::make_shared<const CapIndex>(coords_);
  }
  cache_ = std::make_shared<Cache>();
}

std::vector<std::size_t> NodeSet::neighbors_in_cap(const Vector& center, double delta) const {
  if (!(delta > 0.0)) {
    throw std::invalid_argument("cap radius must be positive");
  }
  if (static_cast<std::size_t>(center.size()) != dim()) {
    throw DimensionMismatch("query center has the wrong dimension");
  }
  std::vector<std::size_t> out;
  auto visit = [&](std::size_t i) {
    if (std::acos(std::clamp(center.dot(column(i)), -1.0, 1.0)) < delta) out.push_back(i);
  };
  if (index_ && delta < M_PI) {
    index_->candidates(center, delta, visit);
    std::sort(out.begin(), out.end());
  } else {
    for (std::size_t i = 0; i < size(); ++i) visit(i);
  }
  return out;
}

NodeSet::Nearest NodeSet::nearest(const Vector& query, std::size_t exclude) const {
  if (size() == 1 && exclude == 0) {
    throw std::invalid_argument("no node left to compare against");
  }
  Nearest best{size(), M_PI * 2.0};
  auto consider = [&](std::size_t i) {
    if (i == exclude) return;
    const double dist = std::acos(std::clamp(query.dot(column(i)), -1.0, 1.0));
    if (dist < best.distance || (dist == best.distance && i < best.index)) best = {i, dist};
  };
  if (!index_) {
    for (std::size_t i = 0; i < size(); ++i) consider(i);
    return best;
  }
  double radius = 2.0 * std::sqrt(4.0 * M_PI / static_cast<double>(size()));
  while (true) {
    if (radius >= M_PI) {
      for (std::size_t i = 0; i < size(); ++i) consider(i);
      return best;
    }
    index_->candidates(query, radius, consider);
    if (best.distance < radius) return best;
    best = {size(), M_PI * 2.0};
    radius *= 2.0;
  }
}

double NodeSet::separation() const {
  std::call_once(cache_->separation_once, [this] { cache_->separation = separation_distance(*this); });
  return cache_->separation;
}

NodeSet fibonacci_grid(std::size_t n) {
  if (n == 0) {
    throw std::invalid_argument("fibonacci_grid requires n >= 1");
  }
  const double golden = (1.0 + std::sqrt(5.0)) / 2.0;
  const auto total = static_cast<long long>(2 * n + 1);
  const auto half = static_cast<long long>(n);
  Matrix pts(3, total);
  for (long long i = -half; i <= half; ++i) {
    const double z = 2.0 * static_cast<double>(i) / static_cast<double>(total);
    // i / phi mod 1 keeps the angle argument small for large i.
    double frac = std::fmod(static_cast<double>(i) / golden, 1.0);
    if (frac < 0.0) frac += 1.0;
    const double lon = 2.0 * M_PI * frac;
    const double r = std::sqrt(1.0 - z * z);
    pts.col(i + half) << r * std::cos(lon), r * std::sin(lon), z;
  }
  return NodeSet(std::move(pts));
}

double separation_distance(const NodeSet& nodes) {
  const std::size_t n = nodes.size();
  if (n < 2) {
    throw std::invalid_argument("separation distance needs at least two nodes");
  }
  const Matrix& c = nodes.coords();
  double min_dist = M_PI;
  if (n <= 20000) {
    double max_dot = -1.0;
    for (Eigen::Index i = 0; i < c.cols(); ++i) {
      for (Eigen::Index j = i + 1; j < c.cols(); ++j) {
        max_dot = std::max(max_dot, c.col(i).dot(c.col(j)));
      }
    }
    min_dist = std::acos(std::clamp(max_dot, -1.0, 1.0));
  } else {
    for (std::size_t i = 0; i < n; ++i) {
      min_dist = std::min(min_dist, nodes.nearest(Vector(nodes.column(i)), i).distance);
    }
  }
  return 0.5 * min_dist;
}

FillEstimate fill_distance_estimate(const NodeSet& nodes, std::size_t samples, std::uint64_t seed) {
  if (samples < 1) {
    throw std::invalid_argument("fill distance estimate needs at least one random probe");
  }
  if (nodes.dim() != 3) {
    throw DimensionMismatch("fill distance estimation is implemented for S^2 only");
  }
  const std::size_t probe_n = (100 * nodes.size() + 1) / 2;
  const NodeSet probes = fibonacci_grid(std::max<std::size_t>(probe_n, 1));
  double h = 0.0;
  for (std::size_t i = 0; i < probes.size(); ++i) {
    h = std::max(h, nodes.nearest(Vector(probes.column(i)), nodes.size()).distance);
  }
  for (const auto& p : random_uniform_sphere(samples, seed, 3)) {
    h = std::max(h, nodes.nearest(p.coords(), nodes.size()).distance);
  }
  return {h, probes.size(), samples};
}

double node_count_in_cap_bound(double q, double delta, int d) {
  if (!(q > 0.0) || !(delta > 0.0) || d < 2) {
    throw std::invalid_argument("node_count_in_cap_bound requires q > 0, delta > 0, d >= 2");
  }
  return std::pow((q + delta) / q, d - 1) * std::pow(M_PI / 2.0, d - 2);
}

std::vector<SpherePoint> random_uniform_sphere(std::size_t m, std::uint64_t seed, std::size_t dim) {
  if (m < 1) {
    throw std::invalid_argument("random_uniform_sphere requires m >= 1");
  }
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::vector<SpherePoint> out;
  out.reserve(m);
  Vector v(static_cast<Eigen::Index>(dim));
  while (out.size() < m) {
    for (Eigen::Index k = 0; k < v.size(); ++k) v[k] = gauss(rng);
    if (v.squaredNorm() > 1e-300) out.push_back(SpherePoint::normalized(v));
  }
  return out;
}

}  // namespace sphmls
