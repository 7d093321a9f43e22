#pragma once

#include "sphmls/ansatz.hpp"

#include <boost/multiprecision/cpp_int.hpp>

#include <map>
#include <vector>

namespace sphmls {

using Rational = boost::multiprecision::cpp_rational;

// Polynomial on R^{d-1} with exact coefficients, truncated at total degree
// `degree_cap`. Keys are exponent vectors of length d-1.
struct TruncatedPolynomial {
  int degree_cap = 0;
  std::map<std::vector<int>, Rational> coefficients;

  Rational coefficient(const std::vector<int>& beta) const;
  // Product truncated at min(degree caps).
  TruncatedPolynomial operator*(const TruncatedPolynomial& other) const;
};

// c_0..c_{floor(L/2)} of sqrt(1 - t) = sum c_k t^k.
std::vector<Rational> sqrt_series(int L);

// Taylor polynomial of degree L at 0 of y^alpha o pi, alpha in B_{L,2}.
TruncatedPolynomial pullback_polynomial(const MultiIndex& alpha, int L, int d);

// Rows: beta in N_0^{d-1}, |beta| <= L (enumerate_multiindices order).
// Columns: alpha in B_{L,2} (enumerate_parity_multiindices order).
struct TaylorMatrix {
  std::vector<MultiIndex> rows;
  std::vector<MultiIndex> cols;
  std::vector<std::vector<Rational>> entries;  // entries[row][col]

  std::size_t size() const { return rows.size(); }
  Matrix to_double() const;
};

TaylorMatrix taylor_matrix(int L, int d);

struct TriangularOrdering {
  // Column j of the reordered matrix is original column col_order[j] (by
  // ascending |alpha|); row j is the original row with beta = alpha~ of that
  // column.
  std::vector<std::size_t> row_order;
  std::vector<std::size_t> col_order;
  bool is_permutation = false;
  bool unit_lower_triangular = false;
};

TriangularOrdering triangular_ordering(const TaylorMatrix& m);

// Exact determinant by Gaussian elimination over Q.
Rational exact_determinant(const std::vector<std::vector<Rational>>& a);

// Solves a x = b exactly; throws std::domain_error when a is singular.
std::vector<Rational> exact_solve(std::vector<std::vector<Rational>> a, std::vector<Rational> b);

}  // namespace sphmls
