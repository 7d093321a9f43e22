#include "sphmls/ansatz.hpp"

#include <array>
#include <cmath>

namespace sphmls {

// Y_l^0 = N_l0 P_l(z), Y_l^{+m} = sqrt2 N_lm P_l^m(z) cos(m phi),
// Y_l^{-m} = sqrt2 N_lm P_l^m(z) sin(m phi), without the Condon-Shortley
// phase. P_l^m(z) = (1 - z^2)^{m/2} Q_l^m(z), and on the sphere
// (1 - z^2)^{m/2} e^{i m phi} = (x + i y)^m, so no angles are formed.
void real_harmonics_row(int L, bool parity_only, const Vector& y, RowRef out) {
  if (y.size() != 3) {
    throw std::invalid_argument("real spherical harmonics are only available on S^2");
  }
  const double x = y[0];
  const double yy = y[1];
  const double z = y[2];

  if (L < 0 || L > kMaxHarmonicDegree) {
    throw std::invalid_argument("harmonic degree out of range");
  }
  constexpr int n = kMaxHarmonicDegree + 1;
  std::array<double, n> re;
  std::array<double, n> im;
  re[0] = 1.0;
  im[0] = 0.0;
  for (int m = 1; m <= L; ++m) {
    re[m] = re[m - 1] * x - im[m - 1] * yy;
    im[m] = re[m - 1] * yy + im[m - 1] * x;
  }

  // q[l][m] = Q_l^m(z)
  std::array<std::array<double, n>, n> q;
  double dfact = 1.0;
  for (int m = 0; m <= L; ++m) {
    if (m > 0) dfact *= 2.0 * m - 1.0;
    q[m][m] = dfact;
    if (m + 1 <= L) q[m + 1][m] = (2.0 * m + 1.0) * z * dfact;
    for (int l = m + 2; l <= L; ++l) {
      q[l][m] = ((2.0 * l - 1.0) * z * q[l - 1][m] - (l + m - 1.0) * q[l - 2][m]) / (l - m);
    }
  }

  Eigen::Index col = 0;
  for (int l = 0; l <= L; ++l) {
    if (parity_only && (l % 2) != (L % 2)) continue;
    const double base = (2.0 * l + 1.0) / (4.0 * M_PI);
    for (int m = -l; m <= l; ++m) {
      const int am = std::abs(m);
      // (l - |m|)! / (l + |m|)!
      double ratio = 1.0;
      for (int k = l - am + 1; k <= l + am; ++k) ratio /= k;
      const double norm = std::sqrt(base * ratio);
      double value;
      if (m == 0) {
        value = norm * q[l][0];
      } else if (m > 0) {
        value = M_SQRT2 * norm * q[l][am] * re[am];
      } else {
        value = M_SQRT2 * norm * q[l][am] * im[am];
      }
      out[col++] = value;
    }
  }
}

Matrix eval_real_harmonics(int L, bool parity_only, const std::vector<SpherePoint>& points) {
  if (L < 0) {
    throw std::invalid_argument("harmonic degree must be non-negative");
  }
  const AnsatzSpec spec{parity_only ? AnsatzKind::ParityHarmonicY : AnsatzKind::FullHarmonicY, L, 3};
  Matrix out(static_cast<Eigen::Index>(points.size()), static_cast<Eigen::Index>(basis_size(spec)));
  for (std::size_t i = 0; i < points.size(); ++i) {
    real_harmonics_row(L, parity_only, points[i].coords(), out.row(static_cast<Eigen::Index>(i)));
  }
  return out;
}

}  // namespace sphmls
