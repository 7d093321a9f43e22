#include "cli.hpp"

#include "sphmls/bench.hpp"
#include "sphmls/io.hpp"
#include "sphmls/mls.hpp"
#include "sphmls/node_set.hpp"
#include "sphmls/taylor.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>

namespace sphmls::cli {

namespace {

constexpr double kDeg = 180.0 / M_PI;

// Raised for inputs that parse but make no sense together.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct NumericalFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

double default_R(AnsatzKind kind) { return kind == AnsatzKind::FullHarmonicY ? 4.5 : 3.5; }

void emit_csv(const CsvTable& table, const std::string& path, std::ostream& out) {
  if (path.empty()) {
    write_csv(out, table);
  } else {
    write_csv(std::filesystem::path(path), table);
  }
}

struct GridOptions {
  std::optional<long long> n;
  std::optional<int> k;
  std::string out;
  std::size_t samples = 10000;
  std::uint64_t seed = 1;
};

int cmd_grid(const GridOptions& o, std::ostream& out) {
  if (o.n.has_value() == o.k.has_value()) throw UsageError("grid: give exactly one of --n and --k");
  if (o.n && *o.n < 1) throw UsageError("grid: --n must be >= 1");
  if (o.k && (*o.k < 0 || *o.k > 26)) throw UsageError("grid: --k must lie in [0, 26]");
  const std::size_t n = o.n ? static_cast<std::size_t>(*o.n) : std::size_t{5} << *o.k;
  const NodeSet nodes = fibonacci_grid(n);
  emit_csv(grid_table(std::vector<GridStats>{grid_stats(nodes, o.samples, o.seed)}), o.out, out);
  return kOk;
}

struct ApproxOptions {
  std::string nodes;
  std::string values;
  std::string eval;
  std::string out;
  std::string ansatz = "even_mon_cent";
  int L = 3;
  std::optional<double> R;
  std::optional<double> delta;
  unsigned threads = 1;
};

int cmd_approx(const ApproxOptions& o, std::ostream& out, std::ostream& err) {
  const AnsatzKind kind = ansatz_kind_from_string(o.ansatz);
  const std::vector<SpherePoint> pts = read_points(o.nodes);
  const std::vector<double> vals = read_values(o.values);
  const std::vector<SpherePoint> eval = read_points(o.eval);
  if (pts.empty()) throw UsageError("approx: node file holds no points");
  if (vals.size() != pts.size()) {
    throw UsageError("approx: " + std::to_string(vals.size()) + " value(s) for " + std::to_string(pts.size()) +
                     " node(s)");
  }
  const NodeSet nodes(pts);
  for (const auto& p : eval) {
    if (p.dim() != nodes.dim()) throw UsageError("approx: evaluation points and nodes differ in dimension");
  }

  MlsConfig config;
  config.ansatz = {kind, o.L, static_cast<int>(nodes.dim())};
  config.ansatz.validate();
  double h = 1.0;
  if (o.delta) {
    if (o.R) throw UsageError("approx: --R and --delta are mutually exclusive");
    config.delta_rule = FixedDelta{*o.delta};
  } else {
    if (nodes.dim() != 3) throw UsageError("approx: fill distance is only estimated on S^2; pass --delta");
    config.delta_rule = MultipleOfFill{o.R.value_or(default_R(kind))};
    h = fill_distance_estimate(nodes, 10000, 1).h;
  }
  config.validate();

  const Vector samples = Eigen::Map<const Vector>(vals.data(), static_cast<Eigen::Index>(vals.size()));
  const FieldResult r = mls_evaluate_field(config, nodes, samples, eval, h, {BatchPolicy::RecordAndSkip, o.threads});

  CsvTable t;
  t.header = {"index", "value", "failed"};
  std::vector<bool> failed(eval.size(), false);
  for (const auto& f : r.failures) failed[f.index] = true;
  for (std::size_t i = 0; i < eval.size(); ++i) {
    const double v = r.values[static_cast<Eigen::Index>(i)];
    t.rows.push_back({static_cast<double>(i), failed[i] ? std::nullopt : std::optional<double>(v), failed[i] ? 1.0 : 0.0});
  }
  emit_csv(t, o.out, out);

  if (!r.failures.empty()) {
    std::map<std::string, std::size_t> by_kind;
    for (const auto& f : r.failures) ++by_kind[std::string(to_string(f.kind))];
    err << r.failures.size() << " of " << eval.size() << " point(s) failed:";
    for (const auto& [k, c] : by_kind) err << ' ' << k << '=' << c;
    err << "\nfirst failure: " << r.failures.front().message << '\n';
  }
  if (!eval.empty() && r.failures.size() == eval.size()) throw NumericalFailure("approx: every evaluation point failed");
  return kOk;
}

struct SweepOptions {
  int kmin = 1;
  int kmax = 6;
  std::string ansatz_set = "all_harm,even_harm,even_mon_cent,tangent";
  std::uint64_t seed = 1;
  std::string outdir;
  std::size_t test_size = 10000;
  unsigned threads = 1;
  bool use_n_exponent = false;
  int L = 3;
  double h_min_deg = 0.3;
  double h_max_deg = 5.0;
};

int cmd_sweep(const SweepOptions& o, std::ostream& out) {
  if (o.kmin < 0 || o.kmax < o.kmin || o.kmax > 26) throw UsageError("sweep: need 0 <= kmin <= kmax <= 26");
  if (!std::filesystem::is_directory(o.outdir)) throw IoError(o.outdir, "output directory does not exist");
  SweepConfig config;
  for (int k = o.kmin; k <= o.kmax; ++k) config.grid_exponents.push_back(k);
  const auto names = split_list(o.ansatz_set);
  if (names.empty()) throw UsageError("sweep: empty --ansatz-set");
  config.ansatz = standard_ansatz_set(names, o.L);
  config.test_set_size = o.test_size;
  config.seed = o.seed;
  config.threads = o.threads;
  config.use_n_exponent = o.use_n_exponent;

  const auto records = run_sweep(config);
  write_sweep_csvs(records, o.outdir);

  for (const auto& rec : records) {
    out << "k=" << rec.k << " N=" << rec.nodes << " h=" << rec.fill_deg() << "deg";
    for (const auto& r : rec.results) {
      out << "  " << r.name << ": " << (r.failed() ? "failed(" + std::to_string(r.failures) + ")" : format_number(r.linf));
    }
    out << '\n';
  }
  for (const auto& name : names) {
    std::optional<OrderFit> fit;
    std::string window = "h in [" + format_number(o.h_min_deg) + ", " + format_number(o.h_max_deg) + "] deg";
    try {
      fit = estimate_order(records, name, o.h_min_deg, o.h_max_deg);
    } catch (const std::invalid_argument&) {
      try {
        fit = estimate_order(records, name, 0.0, 360.0);
        window = "all usable grids; fewer than 3 inside the stable window";
      } catch (const std::invalid_argument&) {
      }
    }
    if (fit) {
      char buf[64];
      std::snprintf(buf, sizeof buf, "%.3f", fit->slope);
      out << "slope " << name << ' ' << buf << " (" << fit->used << " grids, " << window << ")\n";
    } else {
      out << "slope " << name << " unavailable (fewer than 3 usable grids)\n";
    }
  }
  return kOk;
}

int cmd_taylor(int L, int d, std::ostream& out) {
  if (L < 0 || d < 2) throw UsageError("taylor: need L >= 0 and d >= 2");
  const TaylorMatrix m = taylor_matrix(L, d);
  const TriangularOrdering o = triangular_ordering(m);
  const Rational det = exact_determinant(m.entries);
  out << "size " << m.size() << "\n";
  out << "unit_lower_triangular " << (o.is_permutation && o.unit_lower_triangular ? "yes" : "no") << "\n";
  out << "determinant " << det << "\n";
  if (!(o.is_permutation && o.unit_lower_triangular) || abs(det) != 1) {
    throw NumericalFailure("taylor matrix is not unimodular");
  }
  return kOk;
}

struct LebesgueOptions {
  int k = 6;
  std::string ansatz = "even_harm";
  int L = 3;
  std::optional<double> R;
  std::size_t test_size = 1000;
  std::uint64_t seed = 1;
  unsigned threads = 1;
};

int cmd_lebesgue(const LebesgueOptions& o, std::ostream& out) {
  if (o.k < 0 || o.k > 26) throw UsageError("lebesgue: --k must lie in [0, 26]");
  const AnsatzKind kind = ansatz_kind_from_string(o.ansatz);
  const NodeSet nodes = fibonacci_grid(std::size_t{5} << o.k);
  const GridStats stats = grid_stats(nodes, 10000, o.seed);
  MlsConfig config;
  config.ansatz = {kind, o.L, 3};
  config.delta_rule = MultipleOfFill{o.R.value_or(default_R(kind))};
  const Vector zeros = Vector::Zero(static_cast<Eigen::Index>(nodes.size()));
  const FieldResult r = mls_evaluate_field(config, nodes, zeros, random_uniform_sphere(o.test_size, o.seed), stats.fill,
                                           {BatchPolicy::RecordAndSkip, o.threads, true});
  if (r.failures.size() == o.test_size) throw NumericalFailure("lebesgue: every evaluation point failed");
  out << "N " << nodes.size() << "\n";
  out << "fill_deg " << format_number(stats.fill * kDeg) << "\n";
  out << "max_lebesgue " << format_number(r.max_lebesgue) << "\n";
  out << "worst_condition " << format_number(r.worst_condition) << "\n";
  out << "failures " << r.failures.size() << "\n";
  return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Moving least squares approximation on the sphere", "sphmls"};
  app.require_subcommand(1);

  GridOptions grid;
  auto* g = app.add_subcommand("grid", "Fibonacci grid statistics");
  g->add_option("--n", grid.n, "points per hemisphere; N = 2n + 1");
  g->add_option("--k", grid.k, "grid exponent; n = 5 * 2^k");
  g->add_option("--out", grid.out, "CSV output path (default: stdout)");
  g->add_option("--samples", grid.samples, "random fill-distance probes")->check(CLI::PositiveNumber);
  g->add_option("--seed", grid.seed, "probe seed");

  ApproxOptions approx;
  auto* a = app.add_subcommand("approx", "MLS approximation of sampled data");
  a->add_option("--nodes", approx.nodes, "node file")->required();
  a->add_option("--values", approx.values, "one sample per node")->required();
  a->add_option("--eval", approx.eval, "evaluation points")->required();
  a->add_option("--out", approx.out, "CSV output path (default: stdout)");
  a->add_option("--ansatz", approx.ansatz, "all_harm, even_harm, even_mon, even_mon_cent or tangent");
  a->add_option("--L", approx.L, "ansatz degree")->check(CLI::NonNegativeNumber);
  a->add_option("--R", approx.R, "support radius as a multiple of the fill distance");
  a->add_option("--delta", approx.delta, "fixed support radius in radians");
  a->add_option("--threads", approx.threads, "worker threads (0 = all cores)");

  SweepOptions sweep;
  auto* s = app.add_subcommand("sweep", "convergence sweep over Fibonacci grids");
  s->add_option("--kmin", sweep.kmin, "first grid exponent");
  s->add_option("--kmax", sweep.kmax, "last grid exponent");
  s->add_option("--ansatz-set", sweep.ansatz_set, "comma separated ansatz names");
  s->add_option("--seed", sweep.seed, "test set seed");
  s->add_option("--outdir", sweep.outdir, "existing directory for the CSV files")->required();
  s->add_option("--test-size", sweep.test_size, "number of random test points")->check(CLI::PositiveNumber);
  s->add_option("--threads", sweep.threads, "worker threads (0 = all cores)");
  s->add_flag("--use-ni-exponent", sweep.use_n_exponent, "raise each exponential term to its n_i");
  s->add_option("--L", sweep.L, "ansatz degree")->check(CLI::NonNegativeNumber);
  s->add_option("--hmin-deg", sweep.h_min_deg, "lower end of the slope window");
  s->add_option("--hmax-deg", sweep.h_max_deg, "upper end of the slope window");

  int taylor_L = 3;
  int taylor_d = 3;
  auto* t = app.add_subcommand("taylor", "verify the Taylor matrix of the parity monomials");
  t->add_option("--L", taylor_L, "degree")->required();
  t->add_option("--d", taylor_d, "ambient dimension")->required();

  LebesgueOptions leb;
  auto* l = app.add_subcommand("lebesgue", "Lebesgue constants and Gram conditions on one grid");
  l->add_option("--k", leb.k, "grid exponent");
  l->add_option("--ansatz", leb.ansatz, "ansatz name");
  l->add_option("--L", leb.L, "ansatz degree")->check(CLI::NonNegativeNumber);
  l->add_option("--R", leb.R, "support radius as a multiple of the fill distance");
  l->add_option("--test-size", leb.test_size, "number of random centers")->check(CLI::PositiveNumber);
  l->add_option("--seed", leb.seed, "center seed");
  l->add_option("--threads", leb.threads, "worker threads (0 = all cores)");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << e.what() << "\n";
    CLI::App* sub = nullptr;
    for (auto* c : app.get_subcommands()) sub = c;
    err << (sub ? sub->help() : app.help());
    return kUsage;
  }

  try {
    if (g->parsed()) return cmd_grid(grid, out);
    if (a->parsed()) return cmd_approx(approx, out, err);
    if (s->parsed()) return cmd_sweep(sweep, out);
    if (t->parsed()) return cmd_taylor(taylor_L, taylor_d, out);
    if (l->parsed()) return cmd_lebesgue(leb, out);
  } catch (const IoError& e) {
    err << "I/O error: " << e.what() << "\n";
    return kIo;
  } catch (const NumericalFailure& e) {
    err << e.what() << "\n";
    return kNumerical;
  } catch (const MlsError& e) {
    err << e.what() << "\n";
    return kNumerical;
  } catch (const FieldEvaluationError& e) {
    err << e.what() << "\n";
    return kNumerical;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  }
  return kUsage;
}

}  // namespace sphmls::cli
