#pragma once

#include "sphmls/geometry.hpp"

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace sphmls {

// Writable row view; rows of column-major matrices have a non-unit stride.
using RowRef = Eigen::Ref<Eigen::RowVectorXd, 0, Eigen::InnerStride<>>;

struct MultiIndex {
  std::vector<int> exponents;

  int degree() const;
  std::size_t size() const { return exponents.size(); }
  int operator[](std::size_t i) const { return exponents[i]; }
  auto operator<=>(const MultiIndex&) const = default;
};

enum class AnsatzKind {
  FullHarmonicY,        // all real Y_l^m, l <= L (d = 3)
  ParityHarmonicY,      // real Y_l^m with l = L mod 2 (d = 3)
  ParityMonomial,       // monomial basis B_{L,2}
  LocalParityMonomial,  // g(R_y .) for g in B_{L,2}
  TangentPolynomial,    // x^beta o pi^{-1} o R_y, |beta| <= L
};

std::string_view to_string(AnsatzKind kind);
AnsatzKind ansatz_kind_from_string(std::string_view name);

struct AnsatzSpec {
  AnsatzKind kind = AnsatzKind::ParityHarmonicY;
  int degree = 3;
  int dim = 3;

  bool center_dependent() const {
    return kind == AnsatzKind::LocalParityMonomial || kind == AnsatzKind::TangentPolynomial;
  }
  // Throws std::invalid_argument on harmonic kinds with dim != 3, L < 0, d < 2.
  void validate() const;
};

long long binomial(int n, int k);

// C(d-1+L, L) for the parity and tangent families; (L+1)^2 for all
// harmonics on S^2, i.e. C(d-1+L, L) + C(d-2+L, L-1).
std::size_t basis_size(const AnsatzSpec& spec);

// All beta in N_0^d with |beta| <= L. Ordered by ascending degree, then
// descending lexicographic within a degree (x_1 before x_2 ...).
std::vector<MultiIndex> enumerate_multiindices(int L, int d);

// B_{L,2}: |alpha| <= L, |alpha| = L mod 2, alpha_d <= 1, in the same order.
std::vector<MultiIndex> enumerate_parity_multiindices(int L, int d);

double eval_monomial(const MultiIndex& alpha, const Vector& y);
double eval_monomial(const MultiIndex& alpha, const SpherePoint& y);

inline constexpr int kMaxHarmonicDegree = 20;

// Real orthonormal spherical harmonics on S^2. Columns ordered by l, then
// m = -l..l; with parity_only only degrees l = L mod 2 are kept.
Matrix eval_real_harmonics(int L, bool parity_only, const std::vector<SpherePoint>& points);
void real_harmonics_row(int L, bool parity_only, const Vector& y, RowRef out);

class BasisEvaluator {
 public:
  const AnsatzSpec& spec() const { return spec_; }
  std::size_t size() const { return size_; }
  const std::optional<SpherePoint>& center() const { return center_; }
  const std::optional<Rotation>& rotation() const { return rotation_; }

  // Basis functions are divided by these factors when present.
  BasisEvaluator with_scaling(Vector factors) const;
  const std::optional<Vector>& scaling() const { return scaling_; }

  // Row of basis values at z. TangentPolynomial throws DomainError when
  // (R_y z)_d <= 0.
  void evaluate(const Vector& z, RowRef row) const;
  Eigen::RowVectorXd evaluate(const Vector& z) const;
  Eigen::RowVectorXd evaluate(const SpherePoint& z) const { return evaluate(z.coords()); }

 private:
  friend BasisEvaluator build_evaluator(const AnsatzSpec& spec, const std::optional<SpherePoint>& center);
  BasisEvaluator() = default;

  void evaluate_monomials(const Vector& y, const std::vector<MultiIndex>& indices,
                          RowRef row) const;

  AnsatzSpec spec_;
  std::size_t size_ = 0;
  std::vector<MultiIndex> indices_;
  std::optional<SpherePoint> center_;
  std::optional<Rotation> rotation_;
  std::optional<Vector> scaling_;
};

// The center must be given exactly when spec.center_dependent().
BasisEvaluator build_evaluator(const AnsatzSpec& spec, const std::optional<SpherePoint>& center = std::nullopt);

Matrix design_matrix(const BasisEvaluator& evaluator, const std::vector<SpherePoint>& points);
// Points as columns of a d x m matrix.
Matrix design_matrix(const BasisEvaluator& evaluator, const Matrix& points);

class NearZeroBasis : public std::runtime_error {
 public:
  NearZeroBasis(std::size_t column, const std::string& what) : std::runtime_error(what), column_(column) {}
  std::size_t column() const { return column_; }

 private:
  std::size_t column_;
};

struct RescaledDesign {
  Matrix design;
  Vector factors;  // column j was divided by factors[j]
};

// Scales columns so the weighted Gram matrix B^T W B has unit diagonal.
// Coefficients solved in the scaled basis map back as c_j = c'_j / factors[j].
RescaledDesign rescale_unit_diagonal(const Matrix& design, const Vector& weights);

}  // namespace sphmls
