#include "sphmls/weights.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace sphmls {

WeightProfile WeightProfile::hat_power(double delta, double p) {
  if (!(p >= 1.0)) throw std::invalid_argument("hat power exponent must be >= 1");
  return {WeightKind::HatPower, delta, p, {}};
}

WeightProfile WeightProfile::custom(double delta, std::vector<std::pair<double, double>> knots) {
  if (knots.empty()) throw std::invalid_argument("custom weight profile needs at least one knot");
  for (std::size_t k = 1; k < knots.size(); ++k) {
    if (!(knots[k].first > knots[k - 1].first)) {
      throw std::invalid_argument("custom weight knots must be strictly increasing in r");
    }
  }
  return {WeightKind::Custom, delta, 2.0, std::move(knots)};
}

WeightProfile WeightProfile::with_delta(double delta) const {
  if (!(delta > 0.0)) throw std::invalid_argument("weight support radius must be positive");
  WeightProfile copy = *this;
  copy.support_delta = delta;
  return copy;
}

double phi(const WeightProfile& profile, double r) {
  switch (profile.kind) {
    case WeightKind::HatSquared: {
      const double t = std::max(1.0 - r, 0.0);
      return t * t;
    }
    case WeightKind::HatPower:
      return std::pow(std::max(1.0 - r, 0.0), profile.power);
    case WeightKind::Custom: {
      const auto& t = profile.table;
      if (r <= t.front().first) return t.front().second;
      if (r >= t.back().first) return t.back().second;
      auto hi = std::upper_bound(t.begin(), t.end(), r, [](double v, const auto& knot) { return v < knot.first; });
      auto lo = hi - 1;
      const double s = (r - lo->first) / (hi->first - lo->first);
      return (1.0 - s) * lo->second + s * hi->second;
    }
  }
  return 0.0;
}

double weight(const WeightProfile& profile, const SpherePoint& y, const SpherePoint& z) {
  if (!(profile.support_delta > 0.0)) throw std::invalid_argument("weight support radius must be positive");
  return phi(profile, geodesic_distance(y, z) / profile.support_delta);
}

std::string ProfileReport::summary() const {
  if (ok) return "ok";
  std::ostringstream os;
  if (!positivity_violations.empty()) {
    os << positivity_violations.size() << " non-positive value(s) on [0, 1/2], first at r = "
       << positivity_violations.front();
  }
  if (!support_violations.empty()) {
    if (!positivity_violations.empty()) os << "; ";
    os << support_violations.size() << " non-zero value(s) on [1, pi], first at r = " << support_violations.front();
  }
  return os.str();
}

ProfileReport validate_profile(const WeightProfile& profile) {
  constexpr int kSamples = 10000;
  std::vector<double> rs{0.0, 0.5, 1.0};
  for (int k = 0; k < kSamples; ++k) rs.push_back(M_PI * k / (kSamples - 1));
  std::sort(rs.begin(), rs.end());
  rs.erase(std::unique(rs.begin(), rs.end()), rs.end());

  ProfileReport report;
  for (double r : rs) {
    const double v = phi(profile, r);
    if (r <= 0.5 && !(v > 0.0)) report.positivity_violations.push_back(r);
    if (r >= 1.0 && v != 0.0) report.support_violations.push_back(r);
  }
  report.ok = report.positivity_violations.empty() && report.support_violations.empty();
  return report;
}

}  // namespace sphmls
