#include "sphmls/mls.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <mutex>
#include <sstream>
#include <thread>

namespace sphmls {

namespace {

// Above this condition number of R the solve goes through its SVD.
constexpr double kTriangularConditionLimit = 1e8;

std::string describe(const SpherePoint& c) {
  std::ostringstream os;
  os.precision(6);
  os << '(';
  for (std::size_t i = 0; i < c.dim(); ++i) os << (i ? ", " : "") << c[i];
  os << ')';
  return os.str();
}

// Factorized weighted system around one center.
struct LocalSystem {
  std::vector<std::size_t> active;
  Vector sqrt_w;
  Vector scale;                   // solving basis = original basis / scale
  Eigen::RowVectorXd center_row;  // solving basis at the center
  Eigen::HouseholderQR<Matrix> qr;
  Matrix r;
  Eigen::JacobiSVD<Matrix> svd;
  double cond_r = 1.0;

  std::size_t m() const { return active.size(); }
  std::size_t basis() const { return static_cast<std::size_t>(r.cols()); }
  bool use_svd() const { return cond_r > kTriangularConditionLimit; }

  // Solves R x = rhs.
  Vector solve_r(const Vector& rhs) const {
    if (use_svd()) {
      return svd.matrixV() * (svd.matrixU().transpose() * rhs).cwiseQuotient(svd.singularValues());
    }
    return r.triangularView<Eigen::Upper>().solve(rhs);
  }
  // Solves R^T x = rhs.
  Vector solve_rt(const Vector& rhs) const {
    if (use_svd()) {
      return svd.matrixU() * (svd.matrixV().transpose() * rhs).cwiseQuotient(svd.singularValues());
    }
    return r.transpose().triangularView<Eigen::Lower>().solve(rhs);
  }
};

LocalSystem build_system(const MlsConfig& config, const NodeSet& nodes, const SpherePoint& center, double delta) {
  config.validate();
  if (!(delta > 0.0)) throw std::invalid_argument("support radius delta must be positive");
  if (center.dim() != nodes.dim() || static_cast<int>(nodes.dim()) != config.ansatz.dim) {
    throw DimensionMismatch("center, nodes and ansatz must share one dimension");
  }
  const WeightProfile profile = config.profile.with_delta(delta);
  const BasisEvaluator evaluator =
      build_evaluator(config.ansatz, config.ansatz.center_dependent() ? std::optional(center) : std::nullopt);
  const std::size_t basis = evaluator.size();

  LocalSystem sys;
  std::vector<double> w;
  for (std::size_t i : nodes.neighbors_in_cap(center, delta)) {
    const double dist = std::acos(std::clamp(center.coords().dot(nodes.column(i)), -1.0, 1.0));
    const double wi = phi(profile, dist / delta);
    if (wi > 0.0) {
      sys.active.push_back(i);
      w.push_back(wi);
    }
  }
  const std::size_t m = sys.active.size();
  if (m < basis) throw NotEnoughNodes(center, m, basis);

  const auto mi = static_cast<Eigen::Index>(m);
  const auto bi = static_cast<Eigen::Index>(basis);
  sys.sqrt_w.resize(mi);
  Matrix a(mi, bi);
  for (Eigen::Index k = 0; k < mi; ++k) {
    sys.sqrt_w[k] = std::sqrt(w[static_cast<std::size_t>(k)]);
    evaluator.evaluate(Vector(nodes.column(sys.active[static_cast<std::size_t>(k)])), a.row(k));
    a.row(k) *= sys.sqrt_w[k];
  }
  sys.center_row = evaluator.evaluate(center);
  sys.scale = Vector::Ones(bi);
  if (config.rescale_diagonal) {
    for (Eigen::Index j = 0; j < bi; ++j) {
      const double norm = a.col(j).norm();
      if (!(norm > 0.0) || !std::isfinite(norm)) throw NotUnisolvent(center, m, basis, 0.0);
      sys.scale[j] = norm;
      a.col(j) /= norm;
    }
    sys.center_row.array() /= sys.scale.transpose().array();
  }

  sys.qr.compute(a);
  sys.r = sys.qr.matrixQR().topRows(bi).triangularView<Eigen::Upper>();
  sys.svd.compute(sys.r, Eigen::ComputeFullU | Eigen::ComputeFullV);
  const Vector& sv = sys.svd.singularValues();
  const double smax = sv[0];
  const double smin = sv[bi - 1];
  if (!(smax > 0.0) || !std::isfinite(smax) || !(smin > kRankTolerance * smax)) {
    throw NotUnisolvent(center, m, basis, smax > 0.0 ? smin / smax : 0.0);
  }
  sys.cond_r = smax / smin;
  return sys;
}

Vector bg_from_system(const LocalSystem& sys) {
  const auto mi = static_cast<Eigen::Index>(sys.m());
  const auto bi = static_cast<Eigen::Index>(sys.basis());
  Vector padded = Vector::Zero(mi);
  padded.head(bi) = sys.solve_rt(sys.center_row.transpose());
  Vector a = sys.qr.householderQ() * padded;
  return a.cwiseProduct(sys.sqrt_w);
}

}  // namespace

double resolve_delta(const DeltaRule& rule, double fill_distance) {
  if (const auto* fixed = std::get_if<FixedDelta>(&rule)) {
    if (!(fixed->delta > 0.0)) throw std::invalid_argument("fixed delta must be positive");
    return fixed->delta;
  }
  const double factor = std::get<MultipleOfFill>(rule).factor;
  if (!(factor > 0.0)) throw std::invalid_argument("fill-distance multiple R must be positive");
  if (!(fill_distance > 0.0)) throw std::invalid_argument("fill distance must be positive");
  return factor * fill_distance;
}

void MlsConfig::validate() const {
  ansatz.validate();
  if (const auto* fixed = std::get_if<FixedDelta>(&delta_rule); fixed && !(fixed->delta > 0.0)) {
    throw std::invalid_argument("fixed delta must be positive");
  }
  if (const auto* mult = std::get_if<MultipleOfFill>(&delta_rule); mult && !(mult->factor > 0.0)) {
    throw std::invalid_argument("fill-distance multiple R must be positive");
  }
}

std::string_view to_string(MlsErrorKind kind) {
  switch (kind) {
    case MlsErrorKind::NotEnoughNodes: return "NotEnoughNodes";
    case MlsErrorKind::NotUnisolvent: return "NotUnisolvent";
    case MlsErrorKind::Domain: return "DomainError";
  }
  return "unknown";
}

MlsError::MlsError(MlsErrorKind kind, const SpherePoint& center, std::size_t active, std::size_t basis,
                   std::string detail)
    : std::runtime_error(std::string(to_string(kind)) + " at center " + describe(center) + ": " + std::move(detail)),
      kind_(kind),
      center_(center),
      active_(active),
      basis_(basis) {}

NotEnoughNodes::NotEnoughNodes(const SpherePoint& center, std::size_t active, std::size_t basis)
    : MlsError(MlsErrorKind::NotEnoughNodes, center, active, basis,
               std::to_string(active) + " active node(s) for " + std::to_string(basis) + " basis function(s)") {}

NotUnisolvent::NotUnisolvent(const SpherePoint& center, std::size_t active, std::size_t basis, double ratio)
    : MlsError(MlsErrorKind::NotUnisolvent, center, active, basis, [&] {
        std::ostringstream os;
        os << active << " active node(s), " << basis << " basis function(s), singular value ratio " << ratio
           << " <= tolerance " << kRankTolerance;
        return os.str();
      }()),
      ratio_(ratio) {}

MlsFit solve_local(const MlsConfig& config, const NodeSet& nodes, const Vector& samples, const SpherePoint& center,
                   double delta) {
  if (static_cast<std::size_t>(samples.size()) != nodes.size()) {
    throw DimensionMismatch("one sample per node is required");
  }
  const LocalSystem sys = build_system(config, nodes, center, delta);
  const auto mi = static_cast<Eigen::Index>(sys.m());
  const auto bi = static_cast<Eigen::Index>(sys.basis());

  Vector rhs(mi);
  for (Eigen::Index k = 0; k < mi; ++k) rhs[k] = sys.sqrt_w[k] * samples[static_cast<Eigen::Index>(sys.active[static_cast<std::size_t>(k)])];
  const Vector qtb = (sys.qr.householderQ().transpose() * rhs).head(bi);
  const Vector scaled = sys.solve_r(qtb);

  MlsFit fit{center, sys.active, scaled.cwiseQuotient(sys.scale), sys.center_row.dot(scaled), {}, {}, {}};
  if (config.condition_report) {
    Vector a = bg_from_system(sys);
    fit.lebesgue = lebesgue_constant(a);
    fit.bg_coefficients = std::move(a);
    fit.gram_condition = sys.cond_r * sys.cond_r;
  }
  return fit;
}

BackusGilbert backus_gilbert_coefficients(const MlsConfig& config, const NodeSet& nodes, const SpherePoint& center,
                                          double delta) {
  const LocalSystem sys = build_system(config, nodes, center, delta);
  return {sys.active, bg_from_system(sys)};
}

double lebesgue_constant(const Vector& a_star) { return a_star.cwiseAbs().sum(); }

double gram_condition(const MlsConfig& config, const NodeSet& nodes, const SpherePoint& center, double delta) {
  const LocalSystem sys = build_system(config, nodes, center, delta);
  return sys.cond_r * sys.cond_r;
}

FieldResult mls_evaluate_field(const MlsConfig& config, const NodeSet& nodes, const Vector& samples,
                               const std::vector<SpherePoint>& eval_points, double h, const BatchOptions& options) {
  const double delta = resolve_delta(config.delta_rule, h);
  MlsConfig local = config;
  local.condition_report = config.condition_report || options.collect_diagnostics;

  const std::size_t count = eval_points.size();
  const double nan = std::numeric_limits<double>::quiet_NaN();
  FieldResult result;
  result.values = Vector::Constant(static_cast<Eigen::Index>(count), nan);
  if (local.condition_report) {
    result.lebesgue.assign(count, nan);
    result.gram_condition.assign(count, nan);
  }
  std::vector<std::optional<PointFailure>> failures(count);
  std::atomic<std::size_t> next{0};
  std::atomic<bool> stop{false};

  auto work = [&] {
    while (!stop.load(std::memory_order_relaxed)) {
      const std::size_t i = next.fetch_add(1);
      if (i >= count) return;
      try {
        const MlsFit fit = solve_local(local, nodes, samples, eval_points[i], delta);
        result.values[static_cast<Eigen::Index>(i)] = fit.value_at_center;
        if (local.condition_report) {
          result.lebesgue[i] = *fit.lebesgue;
          result.gram_condition[i] = *fit.gram_condition;
        }
      } catch (const MlsError& e) {
        failures[i] = PointFailure{i, e.kind(), e.what()};
      } catch (const DomainError& e) {
        failures[i] = PointFailure{i, MlsErrorKind::Domain, e.what()};
      }
      if (failures[i] && options.policy == BatchPolicy::FailFast) stop = true;
    }
  };

  unsigned threads = options.threads == 0 ? std::max(1u, std::thread::hardware_concurrency()) : options.threads;
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, std::max<std::size_t>(count, 1)));
  if (threads <= 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(work);
    for (auto& th : pool) th.join();
  }

  for (auto& f : failures) {
    if (f) result.failures.push_back(std::move(*f));
  }
  if (options.policy == BatchPolicy::FailFast && !result.failures.empty()) {
    const auto& first = result.failures.front();
    throw FieldEvaluationError(first.index, first.kind,
                               "evaluation point " + std::to_string(first.index) + ": " + first.message);
  }
  for (std::size_t i = 0; i < result.lebesgue.size(); ++i) {
    if (!failures[i]) {
      result.max_lebesgue = std::max(result.max_lebesgue, result.lebesgue[i]);
      result.worst_condition = std::max(result.worst_condition, result.gram_condition[i]);
    }
  }
  return result;
}

}  // namespace sphmls
