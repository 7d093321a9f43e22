#pragma once

#include "sphmls/geometry.hpp"

#include <string>
#include <utility>
#include <vector>

namespace sphmls {

enum class WeightKind { HatSquared, HatPower, Custom };

// Radial weight w(y, z) = phi(d(y, z) / support_delta).
struct WeightProfile {
  WeightKind kind = WeightKind::HatSquared;
  double support_delta = 1.0;
  double power = 2.0;  // HatPower exponent, >= 1
  // Custom: knots (r_k, phi_k), strictly increasing r; linear in between,
  // constant beyond the ends.
  std::vector<std::pair<double, double>> table;

  static WeightProfile hat_squared(double delta) { return {WeightKind::HatSquared, delta, 2.0, {}}; }
  static WeightProfile hat_power(double delta, double p);
  static WeightProfile custom(double delta, std::vector<std::pair<double, double>> knots);

  WeightProfile with_delta(double delta) const;
};

double phi(const WeightProfile& profile, double r);
double weight(const WeightProfile& profile, const SpherePoint& y, const SpherePoint& z);

struct ProfileReport {
  bool ok = true;
  std::vector<double> positivity_violations;  // r in [0, 1/2] with phi(r) <= 0
  std::vector<double> support_violations;     // r in [1, pi] with phi(r) != 0

  std::string summary() const;
};

// Samples phi on a 10^4-point grid of [0, pi] (plus r = 0, 1/2, 1).
ProfileReport validate_profile(const WeightProfile& profile);

}  // namespace sphmls
