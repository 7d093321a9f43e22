#include "sphmls/ansatz.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <numeric>
#include <string>

namespace sphmls {

int MultiIndex::degree() const { return std::accumulate(exponents.begin(), exponents.end(), 0); }

std::string_view to_string(AnsatzKind kind) {
  switch (kind) {
    case AnsatzKind::FullHarmonicY: return "all_harm";
    case AnsatzKind::ParityHarmonicY: return "even_harm";
    case AnsatzKind::ParityMonomial: return "even_mon";
    case AnsatzKind::LocalParityMonomial: return "even_mon_cent";
    case AnsatzKind::TangentPolynomial: return "tangent";
  }
  return "unknown";
}

AnsatzKind ansatz_kind_from_string(std::string_view name) {
  for (auto kind : {AnsatzKind::FullHarmonicY, AnsatzKind::ParityHarmonicY, AnsatzKind::ParityMonomial,
                    AnsatzKind::LocalParityMonomial, AnsatzKind::TangentPolynomial}) {
    if (name == to_string(kind)) return kind;
  }
  throw std::invalid_argument("unknown ansatz kind '" + std::string(name) + "'");
}

void AnsatzSpec::validate() const {
  if (degree < 0) throw std::invalid_argument("ansatz degree must be non-negative");
  if (dim < 2) throw std::invalid_argument("ansatz dimension must be >= 2");
  if (kind == AnsatzKind::FullHarmonicY || kind == AnsatzKind::ParityHarmonicY) {
    if (dim != 3) throw std::invalid_argument("harmonic ansatz kinds are only supported on S^2 (d = 3)");
    if (degree > kMaxHarmonicDegree) throw std::invalid_argument("harmonic degree too large");
  }
}

long long binomial(int n, int k) {
  if (k < 0 || n < 0 || k > n) return 0;
  k = std::min(k, n - k);
  long long r = 1;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

std::size_t basis_size(const AnsatzSpec& spec) {
  spec.validate();
  const int d = spec.dim;
  const int L = spec.degree;
  long long n = binomial(d - 1 + L, L);
  if (spec.kind == AnsatzKind::FullHarmonicY && L >= 1) n += binomial(d - 2 + L, L - 1);
  return static_cast<std::size_t>(n);
}

namespace {

// Exponent vectors of total degree `deg`, descending lexicographic.
void homogeneous(int deg, int d, std::vector<MultiIndex>& out) {
  std::vector<int> e(static_cast<std::size_t>(d), 0);
  std::function<void(int, int)> rec = [&](int pos, int left) {
    if (pos == d - 1) {
      e[static_cast<std::size_t>(pos)] = left;
      out.push_back({e});
      return;
    }
    for (int v = left; v >= 0; --v) {
      e[static_cast<std::size_t>(pos)] = v;
      rec(pos + 1, left - v);
    }
  };
  rec(0, deg);
}

}  // namespace

std::vector<MultiIndex> enumerate_multiindices(int L, int d) {
  if (d < 1 || L < 0) throw std::invalid_argument("enumerate_multiindices requires L >= 0, d >= 1");
  std::vector<MultiIndex> out;
  for (int deg = 0; deg <= L; ++deg) homogeneous(deg, d, out);
  return out;
}

std::vector<MultiIndex> enumerate_parity_multiindices(int L, int d) {
  if (d < 2 || L < 0) throw std::invalid_argument("enumerate_parity_multiindices requires L >= 0, d >= 2");
  std::vector<MultiIndex> out;
  for (int deg = L % 2; deg <= L; deg += 2) {
    std::vector<MultiIndex> level;
    homogeneous(deg, d, level);
    for (auto& a : level) {
      if (a.exponents.back() <= 1) out.push_back(std::move(a));
    }
  }
  return out;
}

double eval_monomial(const MultiIndex& alpha, const Vector& y) {
  if (alpha.size() != static_cast<std::size_t>(y.size())) {
    throw DimensionMismatch("multi-index and point differ in length");
  }
  double v = 1.0;
  for (std::size_t i = 0; i < alpha.size(); ++i) {
    for (int k = 0; k < alpha[i]; ++k) v *= y[static_cast<Eigen::Index>(i)];
  }
  return v;
}

double eval_monomial(const MultiIndex& alpha, const SpherePoint& y) { return eval_monomial(alpha, y.coords()); }

BasisEvaluator build_evaluator(const AnsatzSpec& spec, const std::optional<SpherePoint>& center) {
  spec.validate();
  if (spec.center_dependent() != center.has_value()) {
    throw std::invalid_argument(std::string("ansatz '") + std::string(to_string(spec.kind)) +
                                (center ? "' does not take a center" : "' requires a center"));
  }
  BasisEvaluator ev;
  ev.spec_ = spec;
  ev.size_ = basis_size(spec);
  switch (spec.kind) {
    case AnsatzKind::ParityMonomial:
    case AnsatzKind::LocalParityMonomial:
      ev.indices_ = enumerate_parity_multiindices(spec.degree, spec.dim);
      break;
    case AnsatzKind::TangentPolynomial:
      ev.indices_ = enumerate_multiindices(spec.degree, spec.dim - 1);
      break;
    default:
      break;
  }
  if (center) {
    if (center->dim() != static_cast<std::size_t>(spec.dim)) {
      throw DimensionMismatch("center dimension does not match the ansatz");
    }
    ev.center_ = *center;
    ev.rotation_ = rotation_to_north(*center);
  }
  return ev;
}

BasisEvaluator BasisEvaluator::with_scaling(Vector factors) const {
  if (static_cast<std::size_t>(factors.size()) != size_ || (factors.array() <= 0.0).any()) {
    throw std::invalid_argument("scaling needs one positive factor per basis function");
  }
  BasisEvaluator copy = *this;
  copy.scaling_ = std::move(factors);
  return copy;
}

void BasisEvaluator::evaluate_monomials(const Vector& y, const std::vector<MultiIndex>& indices,
                                        RowRef row) const {
  const int L = spec_.degree;
  const std::size_t d = indices.front().size();
  // powers[i * (L + 1) + k] = y_i^k
  std::vector<double> powers(d * static_cast<std::size_t>(L + 1));
  for (std::size_t i = 0; i < d; ++i) {
    double p = 1.0;
    for (int k = 0; k <= L; ++k) {
      powers[i * static_cast<std::size_t>(L + 1) + static_cast<std::size_t>(k)] = p;
      p *= y[static_cast<Eigen::Index>(i)];
    }
  }
  for (std::size_t j = 0; j < indices.size(); ++j) {
    double v = 1.0;
    for (std::size_t i = 0; i < d; ++i) {
      v *= powers[i * static_cast<std::size_t>(L + 1) + static_cast<std::size_t>(indices[j][i])];
    }
    row[static_cast<Eigen::Index>(j)] = v;
  }
}

void BasisEvaluator::evaluate(const Vector& z, RowRef row) const {
  if (z.size() != spec_.dim) {
    throw DimensionMismatch("evaluation point has the wrong dimension");
  }
  switch (spec_.kind) {
    case AnsatzKind::FullHarmonicY:
      real_harmonics_row(spec_.degree, false, z, row);
      break;
    case AnsatzKind::ParityHarmonicY:
      real_harmonics_row(spec_.degree, true, z, row);
      break;
    case AnsatzKind::ParityMonomial:
      evaluate_monomials(z, indices_, row);
      break;
    case AnsatzKind::LocalParityMonomial:
      evaluate_monomials(rotation_->apply(z), indices_, row);
      break;
    case AnsatzKind::TangentPolynomial: {
      const Vector u = rotation_->apply(z);
      if (!(u[u.size() - 1] > 0.0)) {
        throw DomainError("tangent polynomial evaluated outside the hemisphere around its center");
      }
      evaluate_monomials(u.head(u.size() - 1), indices_, row);
      break;
    }
  }
  if (scaling_) row.array() /= scaling_->transpose().array();
}

Eigen::RowVectorXd BasisEvaluator::evaluate(const Vector& z) const {
  Eigen::RowVectorXd row(static_cast<Eigen::Index>(size_));
  evaluate(z, row);
  return row;
}

Matrix design_matrix(const BasisEvaluator& evaluator, const Matrix& points) {
  Matrix out(points.cols(), static_cast<Eigen::Index>(evaluator.size()));
  for (Eigen::Index i = 0; i < points.cols(); ++i) {
    evaluator.evaluate(Vector(points.col(i)), out.row(i));
  }
  return out;
}

Matrix design_matrix(const BasisEvaluator& evaluator, const std::vector<SpherePoint>& points) {
  Matrix out(static_cast<Eigen::Index>(points.size()), static_cast<Eigen::Index>(evaluator.size()));
  for (std::size_t i = 0; i < points.size(); ++i) {
    evaluator.evaluate(points[i].coords(), out.row(static_cast<Eigen::Index>(i)));
  }
  return out;
}

RescaledDesign rescale_unit_diagonal(const Matrix& design, const Vector& weights) {
  if (weights.size() != design.rows()) {
    throw DimensionMismatch("one weight per design row is required");
  }
  if ((weights.array() < 0.0).any()) {
    throw std::invalid_argument("weights must be non-negative");
  }
  RescaledDesign out{design, Vector(design.cols())};
  for (Eigen::Index j = 0; j < design.cols(); ++j) {
    const double diag = (weights.array() * design.col(j).array().square()).sum();
    if (!(diag > 0.0) || !std::isfinite(diag)) {
      throw NearZeroBasis(static_cast<std::size_t>(j),
                          "basis column " + std::to_string(j) + " has a vanishing Gram diagonal");
    }
    out.factors[j] = std::sqrt(diag);
    out.design.col(j) /= out.factors[j];
  }
  return out;
}

}  // namespace sphmls
