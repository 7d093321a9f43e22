#pragma once

#include "sphmls/ansatz.hpp"
#include "sphmls/geometry.hpp"
#include "sphmls/node_set.hpp"
#include "sphmls/weights.hpp"

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace sphmls {

struct FixedDelta {
  double delta;
};
struct MultipleOfFill {
  double factor;  // delta = factor * h
};
using DeltaRule = std::variant<FixedDelta, MultipleOfFill>;

double resolve_delta(const DeltaRule& rule, double fill_distance);

struct MlsConfig {
  AnsatzSpec ansatz;
  WeightProfile profile = WeightProfile::hat_squared(1.0);
  DeltaRule delta_rule = MultipleOfFill{3.5};
  bool rescale_diagonal = true;
  // Also compute Backus-Gilbert coefficients, Lebesgue constant and Gram
  // condition in solve_local.
  bool condition_report = false;

  void validate() const;
};

struct MlsFit {
  SpherePoint center;
  std::vector<std::size_t> active_indices;
  Vector coefficients;  // original (unscaled) basis order
  double value_at_center = 0.0;
  std::optional<Vector> bg_coefficients;  // aligned with active_indices
  std::optional<double> lebesgue;
  std::optional<double> gram_condition;
};

enum class MlsErrorKind { NotEnoughNodes, NotUnisolvent, Domain };

std::string_view to_string(MlsErrorKind kind);

class MlsError : public std::runtime_error {
 public:
  MlsError(MlsErrorKind kind, const SpherePoint& center, std::size_t active, std::size_t basis, std::string detail);

  MlsErrorKind kind() const { return kind_; }
  const SpherePoint& center() const { return center_; }
  std::size_t active_count() const { return active_; }
  std::size_t basis_size() const { return basis_; }

 private:
  MlsErrorKind kind_;
  SpherePoint center_;
  std::size_t active_;
  std::size_t basis_;
};

// Fewer nodes with positive weight than basis functions.
class NotEnoughNodes : public MlsError {
 public:
  NotEnoughNodes(const SpherePoint& center, std::size_t active, std::size_t basis);
};

// Enough nodes, but diag(sqrt w) B has numerical rank < M: its smallest
// singular value is <= kRankTolerance times the largest.
class NotUnisolvent : public MlsError {
 public:
  NotUnisolvent(const SpherePoint& center, std::size_t active, std::size_t basis, double singular_ratio);
  double singular_ratio() const { return ratio_; }

 private:
  double ratio_;
};

inline constexpr double kRankTolerance = 1e-12;

// Weighted least-squares fit around `center` with support radius delta,
// solved through a Householder QR of diag(sqrt w) B. When the triangular
// factor is ill-conditioned the solve switches to its SVD.
MlsFit solve_local(const MlsConfig& config, const NodeSet& nodes, const Vector& samples, const SpherePoint& center,
                   double delta);

// a* = W B (B^T W B)^{-1} b(center), aligned with the returned active list.
struct BackusGilbert {
  std::vector<std::size_t> active_indices;
  Vector coefficients;
};
BackusGilbert backus_gilbert_coefficients(const MlsConfig& config, const NodeSet& nodes, const SpherePoint& center,
                                          double delta);

double lebesgue_constant(const Vector& a_star);

// 2-norm condition number of B^T W B (after the optional rescaling).
double gram_condition(const MlsConfig& config, const NodeSet& nodes, const SpherePoint& center, double delta);

enum class BatchPolicy { FailFast, RecordAndSkip };

struct BatchOptions {
  BatchPolicy policy = BatchPolicy::RecordAndSkip;
  unsigned threads = 1;  // 0 = hardware concurrency
  bool collect_diagnostics = false;
};

struct PointFailure {
  std::size_t index;
  MlsErrorKind kind;
  std::string message;
};

struct FieldResult {
  Vector values;                       // NaN where the solve failed
  std::vector<PointFailure> failures;  // ascending index
  std::vector<double> lebesgue;        // per point, when diagnostics were collected (NaN on failure)
  std::vector<double> gram_condition;  // per point, likewise
  double worst_condition = 0.0;
  double max_lebesgue = 0.0;
};

class FieldEvaluationError : public std::runtime_error {
 public:
  FieldEvaluationError(std::size_t index, MlsErrorKind kind, const std::string& what)
      : std::runtime_error(what), index_(index), kind_(kind) {}
  std::size_t index() const { return index_; }
  MlsErrorKind kind() const { return kind_; }

 private:
  std::size_t index_;
  MlsErrorKind kind_;
};

// Independent solve_local per evaluation point with delta resolved from the
// config's delta rule and fill distance h. Results are written per index, so
// they do not depend on the number of threads.
FieldResult mls_evaluate_field(const MlsConfig& config, const NodeSet& nodes, const Vector& samples,
                               const std::vector<SpherePoint>& eval_points, double h,
                               const BatchOptions& options = {});

}  // namespace sphmls
