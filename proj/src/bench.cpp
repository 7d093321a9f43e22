#include "sphmls/bench.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>

namespace sphmls {

namespace {

constexpr double kDeg = 180.0 / M_PI;
constexpr std::uint64_t kFillSeedSalt = 0x9e3779b97f4a7c15ULL;
const std::array<std::string, 4> kFixedColumns{"all_harm", "even_harm", "even_mon_cent", "tangent"};

}  // namespace

TestFunctionParams default_test_function() {
  auto term = [](double x, double y, double z, int n, double alpha, double c) {
    return TestFunctionParams::Term{SpherePoint::normalized(Vector{{x, y, z}}), alpha, c, n};
  };
  return {{
      term(0.0, 0.0, 1.0, 1, 5.0, 2.0),
      term(0.932039, 0.0, 0.362358, 1, 7.0, 0.5),
      term(-0.362154, 0.612280, 0.696707, 2, 6.0, -2.0),
      term(0.904035, 0.279651, -0.323290, 1, 5.0, -2.0),
      term(-0.047932, -0.424684, -0.904072, 1, 2.1, 0.2),
  }};
}

double test_function(const TestFunctionParams& params, const Vector& y, bool use_n_exponent) {
  double f = 0.0;
  for (const auto& t : params.terms) {
    const double e = -t.alpha * (1.0 - t.p.coords().dot(y));
    f += t.c * std::exp(use_n_exponent ? t.n * e : e);
  }
  return f;
}

double test_function(const TestFunctionParams& params, const SpherePoint& y, bool use_n_exponent) {
  return test_function(params, y.coords(), use_n_exponent);
}

AnsatzRun standard_ansatz(const std::string& name, int L) {
  const AnsatzKind kind = ansatz_kind_from_string(name);
  const double R = kind == AnsatzKind::FullHarmonicY ? 4.5 : 3.5;
  return {name, AnsatzSpec{kind, L, 3}, R};
}

std::vector<AnsatzRun> standard_ansatz_set(const std::vector<std::string>& names, int L) {
  std::vector<AnsatzRun> out;
  for (const auto& n : names) out.push_back(standard_ansatz(n, L));
  return out;
}

void SweepConfig::validate() const {
  if (test_set_size < 1) throw std::invalid_argument("test set size must be >= 1");
  if (grid_exponents.empty()) throw std::invalid_argument("sweep needs at least one grid exponent");
  for (int k : grid_exponents) {
    if (k < 0 || k > 40) throw std::invalid_argument("grid exponent out of range");
  }
  if (ansatz.empty()) throw std::invalid_argument("sweep needs at least one ansatz");
  for (const auto& a : ansatz) {
    a.spec.validate();
    if (!(a.R > 0.0)) throw std::invalid_argument("R must be positive for " + a.name);
  }
}

double SweepRecord::fill_deg() const { return fill * kDeg; }
double SweepRecord::separation_deg() const { return separation * kDeg; }

const AnsatzResult* SweepRecord::find(const std::string& name) const {
  for (const auto& r : results) {
    if (r.name == name) return &r;
  }
  return nullptr;
}

GridStats grid_stats(const NodeSet& nodes, std::size_t fill_samples, std::uint64_t seed) {
  const FillEstimate fill = fill_distance_estimate(nodes, fill_samples, seed ^ kFillSeedSalt);
  return {nodes.size(), fill.h, nodes.separation()};
}

std::vector<SweepRecord> run_sweep(const SweepConfig& config) {
  config.validate();
  const std::vector<SpherePoint> test_points = random_uniform_sphere(config.test_set_size, config.seed, 3);
  std::vector<double> exact(test_points.size());
  for (std::size_t i = 0; i < test_points.size(); ++i) {
    exact[i] = test_function(config.function, test_points[i], config.use_n_exponent);
  }

  std::vector<SweepRecord> records;
  for (int k : config.grid_exponents) {
    const std::size_t n = std::size_t{5} << k;
    const NodeSet nodes = fibonacci_grid(n);
    const GridStats stats = grid_stats(nodes, config.fill_samples, config.seed);

    Vector samples(static_cast<Eigen::Index>(nodes.size()));
    for (std::size_t i = 0; i < nodes.size(); ++i) {
      samples[static_cast<Eigen::Index>(i)] =
          test_function(config.function, Vector(nodes.column(i)), config.use_n_exponent);
    }

    SweepRecord rec{k, nodes.size(), stats.fill, stats.separation, {}};
    for (const auto& run : config.ansatz) {
      MlsConfig mls;
      mls.ansatz = run.spec;
      mls.delta_rule = MultipleOfFill{run.R};
      mls.rescale_diagonal = config.rescale_diagonal;
      const FieldResult field = mls_evaluate_field(mls, nodes, samples, test_points, stats.fill,
                                                   {BatchPolicy::RecordAndSkip, config.threads, true});
      AnsatzResult res{run.name, 0.0, field.worst_condition, field.max_lebesgue, field.failures.size()};
      for (std::size_t i = 0; i < test_points.size(); ++i) {
        const double v = field.values[static_cast<Eigen::Index>(i)];
        if (!std::isnan(v)) res.linf = std::max(res.linf, std::abs(v - exact[i]));
      }
      rec.results.push_back(res);
    }
    records.push_back(std::move(rec));
  }
  return records;
}

namespace {

CsvTable fixed_column_table(const std::vector<SweepRecord>& records, double AnsatzResult::*field) {
  CsvTable t;
  t.header = {"filldist_deg"};
  t.header.insert(t.header.end(), kFixedColumns.begin(), kFixedColumns.end());
  for (const auto& rec : records) {
    std::vector<std::optional<double>> row{rec.fill_deg()};
    for (const auto& name : kFixedColumns) {
      const AnsatzResult* r = rec.find(name);
      row.push_back(r && !r->failed() ? std::optional<double>(r->*field) : std::nullopt);
    }
    t.rows.push_back(std::move(row));
  }
  return t;
}

}  // namespace

CsvTable errors_table(const std::vector<SweepRecord>& records) {
  return fixed_column_table(records, &AnsatzResult::linf);
}

CsvTable conds_table(const std::vector<SweepRecord>& records) {
  return fixed_column_table(records, &AnsatzResult::worst_condition);
}

CsvTable lebesgue_table(const std::vector<SweepRecord>& records) {
  CsvTable t;
  t.header = {"filldist_deg"};
  if (!records.empty()) {
    for (const auto& r : records.front().results) t.header.push_back(r.name);
  }
  for (const auto& rec : records) {
    std::vector<std::optional<double>> row{rec.fill_deg()};
    for (std::size_t j = 1; j < t.header.size(); ++j) {
      const AnsatzResult* r = rec.find(t.header[j]);
      row.push_back(r && !r->failed() ? std::optional<double>(r->max_lebesgue) : std::nullopt);
    }
    t.rows.push_back(std::move(row));
  }
  return t;
}

CsvTable grid_table(const std::vector<GridStats>& stats) {
  CsvTable t;
  t.header = {"N", "fill_deg", "sep_deg", "uniformity"};
  for (const auto& s : stats) {
    t.rows.push_back({static_cast<double>(s.nodes), s.fill * kDeg, s.separation * kDeg, s.fill / s.separation});
  }
  return t;
}

CsvTable grid_table(const std::vector<SweepRecord>& records) {
  std::vector<GridStats> stats;
  for (const auto& r : records) stats.push_back({r.nodes, r.fill, r.separation});
  return grid_table(stats);
}

void write_sweep_csvs(const std::vector<SweepRecord>& records, const std::filesystem::path& outdir) {
  if (!std::filesystem::is_directory(outdir)) {
    throw IoError(outdir, "output directory does not exist");
  }
  write_csv(outdir / "errors.csv", errors_table(records));
  write_csv(outdir / "conds.csv", conds_table(records));
  write_csv(outdir / "lebesgue.csv", lebesgue_table(records));
  write_csv(outdir / "grid.csv", grid_table(records));
}

OrderFit fit_order(const std::vector<double>& h, const std::vector<double>& error) {
  if (h.size() != error.size()) throw std::invalid_argument("fit_order: size mismatch");
  if (h.size() < 3) throw std::invalid_argument("order estimation needs at least three usable records");
  const auto n = static_cast<Eigen::Index>(h.size());
  Matrix a(n, 2);
  Vector b(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    a(i, 0) = std::log(h[static_cast<std::size_t>(i)]);
    a(i, 1) = 1.0;
    b[i] = std::log(error[static_cast<std::size_t>(i)]);
  }
  const Vector x = a.colPivHouseholderQr().solve(b);
  const double rms = std::sqrt((a * x - b).squaredNorm() / static_cast<double>(n));
  return {x[0], x[1], rms, h.size()};
}

OrderFit estimate_order(const std::vector<SweepRecord>& records, const std::string& ansatz, double h_min_deg,
                        double h_max_deg) {
  std::vector<double> h;
  std::vector<double> err;
  for (const auto& rec : records) {
    const AnsatzResult* r = rec.find(ansatz);
    const double hd = rec.fill_deg();
    if (!r || r->failed() || hd < h_min_deg || hd > h_max_deg) continue;
    if (!(r->linf > 0.0) || !std::isfinite(r->linf)) continue;
    h.push_back(hd);
    err.push_back(r->linf);
  }
  return fit_order(h, err);
}

}  // namespace sphmls
