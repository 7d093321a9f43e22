#include "sphmls/taylor.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace sphmls {

namespace {

int total(const std::vector<int>& e) { return std::accumulate(e.begin(), e.end(), 0); }

}  // namespace

Rational TruncatedPolynomial::coefficient(const std::vector<int>& beta) const {
  const auto it = coefficients.find(beta);
  return it == coefficients.end() ? Rational(0) : it->second;
}

TruncatedPolynomial TruncatedPolynomial::operator*(const TruncatedPolynomial& other) const {
  TruncatedPolynomial out;
  out.degree_cap = std::min(degree_cap, other.degree_cap);
  for (const auto& [ea, ca] : coefficients) {
    for (const auto& [eb, cb] : other.coefficients) {
      std::vector<int> e(ea.size());
      for (std::size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
      if (total(e) > out.degree_cap) continue;
      Rational& slot = out.coefficients[e];
      slot += ca * cb;
      if (slot == 0) out.coefficients.erase(e);
    }
  }
  return out;
}

std::vector<Rational> sqrt_series(int L) {
  if (L < 0) throw std::invalid_argument("sqrt_series requires L >= 0");
  std::vector<Rational> c{Rational(1)};
  for (int k = 1; k <= L / 2; ++k) {
    c.push_back(c.back() * Rational(2 * k - 3, 2 * k));
  }
  return c;
}

TruncatedPolynomial pullback_polynomial(const MultiIndex& alpha, int L, int d) {
  if (d < 2 || L < 0 || alpha.size() != static_cast<std::size_t>(d)) {
    throw std::invalid_argument("pullback_polynomial: alpha must have length d >= 2 and L >= 0");
  }
  if (alpha.exponents.back() > 1) {
    throw std::invalid_argument("pullback_polynomial: alpha_d must be 0 or 1");
  }
  const std::vector<int> head(alpha.exponents.begin(), alpha.exponents.end() - 1);
  TruncatedPolynomial mono{L, {}};
  if (total(head) <= L) mono.coefficients[head] = 1;
  if (alpha.exponents.back() == 0) return mono;

  // W(x) = sqrt(1 - |x|^2) = sum_k c_k |x|^{2k}
  TruncatedPolynomial norm2{L, {}};
  for (std::size_t i = 0; i < head.size(); ++i) {
    std::vector<int> e(head.size(), 0);
    e[i] = 2;
    norm2.coefficients[e] = 1;
  }
  const std::vector<Rational> c = sqrt_series(L);
  TruncatedPolynomial power{L, {{std::vector<int>(head.size(), 0), Rational(1)}}};
  TruncatedPolynomial w{L, {}};
  for (std::size_t k = 0; k < c.size(); ++k) {
    if (k > 0) power = power * norm2;
    for (const auto& [e, v] : power.coefficients) {
      Rational& slot = w.coefficients[e];
      slot += c[k] * v;
    }
  }
  return mono * w;
}

Matrix TaylorMatrix::to_double() const {
  const auto n = static_cast<Eigen::Index>(rows.size());
  Matrix out(n, static_cast<Eigen::Index>(cols.size()));
  for (Eigen::Index i = 0; i < out.rows(); ++i) {
    for (Eigen::Index j = 0; j < out.cols(); ++j) {
      out(i, j) = entries[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)].convert_to<double>();
    }
  }
  return out;
}

TaylorMatrix taylor_matrix(int L, int d) {
  if (L < 0 || d < 2) throw std::invalid_argument("taylor_matrix requires L >= 0 and d >= 2");
  TaylorMatrix m;
  m.rows = enumerate_multiindices(L, d - 1);
  m.cols = enumerate_parity_multiindices(L, d);
  m.entries.assign(m.rows.size(), std::vector<Rational>(m.cols.size(), Rational(0)));
  for (std::size_t j = 0; j < m.cols.size(); ++j) {
    const TruncatedPolynomial p = pullback_polynomial(m.cols[j], L, d);
    for (std::size_t i = 0; i < m.rows.size(); ++i) {
      m.entries[i][j] = p.coefficient(m.rows[i].exponents);
    }
  }
  return m;
}

TriangularOrdering triangular_ordering(const TaylorMatrix& m) {
  TriangularOrdering out;
  const std::size_t n = m.cols.size();
  out.col_order.resize(n);
  std::iota(out.col_order.begin(), out.col_order.end(), 0);
  std::stable_sort(out.col_order.begin(), out.col_order.end(),
                   [&](std::size_t a, std::size_t b) { return m.cols[a].degree() < m.cols[b].degree(); });
  if (m.rows.size() != n) return out;

  std::vector<bool> used(n, false);
  for (std::size_t j : out.col_order) {
    const auto& a = m.cols[j].exponents;
    const std::vector<int> head(a.begin(), a.end() - 1);
    const auto it = std::find_if(m.rows.begin(), m.rows.end(), [&](const MultiIndex& b) { return b.exponents == head; });
    if (it == m.rows.end()) return out;
    const auto row = static_cast<std::size_t>(it - m.rows.begin());
    if (used[row]) return out;
    used[row] = true;
    out.row_order.push_back(row);
  }
  out.is_permutation = true;

  out.unit_lower_triangular = true;
  for (std::size_t i = 0; i < n && out.unit_lower_triangular; ++i) {
    for (std::size_t j = i; j < n; ++j) {
      const Rational& v = m.entries[out.row_order[i]][out.col_order[j]];
      if ((i == j && v != 1) || (j > i && v != 0)) {
        out.unit_lower_triangular = false;
        break;
      }
    }
  }
  return out;
}

Rational exact_determinant(const std::vector<std::vector<Rational>> &a_in) {
  auto a = a_in;
  const std::size_t n = a.size();
  for (const auto& row : a) {
    if (row.size() != n) throw std::invalid_argument("determinant of a non-square matrix");
  }
  Rational det = 1;
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t p = k;
    while (p < n && a[p][k] == 0) ++p;
    if (p == n) return 0;
    if (p != k) {
      std::swap(a[p], a[k]);
      det = -det;
    }
    det *= a[k][k];
    for (std::size_t i = k + 1; i < n; ++i) {
      if (a[i][k] == 0) continue;
      const Rational f = a[i][k] / a[k][k];
      for (std::size_t j = k; j < n; ++j) a[i][j] -= f * a[k][j];
    }
  }
  return det;
}

std::vector<Rational> exact_solve(std::vector<std::vector<Rational>> a, std::vector<Rational> b) {
  const std::size_t n = a.size();
  if (b.size() != n) throw std::invalid_argument("right-hand side size mismatch");
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t p = k;
    while (p < n && a[p][k] == 0) ++p;
    if (p == n) throw std::domain_error("singular matrix");
    std::swap(a[p], a[k]);
    std::swap(b[p], b[k]);
    for (std::size_t i = 0; i < n; ++i) {
      if (i == k || a[i][k] == 0) continue;
      const Rational f = a[i][k] / a[k][k];
      for (std::size_t j = k; j < n; ++j) a[i][j] -= f * a[k][j];
      b[i] -= f * b[k];
    }
  }
  for (std::size_t k = 0; k < n; ++k) b[k] /= a[k][k];
  return b;
}

}  // namespace sphmls
