#include "irstool/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <stdexcept>

#include "irsim/analytics.hpp"
#include "irstool/config.hpp"
#include "irstool/errors.hpp"
#include "irstool/format.hpp"
#include "irstool/validate.hpp"

namespace irstool {

namespace {

constexpr char kSeColumns[] = "gamma_db,n_elements,operator,source,se_bits,std_err";
constexpr char kCcdfColumns[] =
    "n_elements,z,emp_survival,analytic_survival,abs_diff";

double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }

ExperimentKind kind_from_string(const std::string& name) {
  if (name == "se-vs-snr") return ExperimentKind::kSeVsSnr;
  if (name == "se-vs-n") return ExperimentKind::kSeVsN;
  if (name == "ccdf") return ExperimentKind::kCcdf;
  if (name == "validate") return ExperimentKind::kValidate;
  throw SpecError(
      "sim.kind must be one of se-vs-snr, se-vs-n, ccdf, validate; got '" +
      name + "'");
}

std::vector<double> default_gamma_sweep() {
  std::vector<double> grid;
  for (int db = 110; db <= 160; db += 5) grid.push_back(db);
  return grid;
}

std::vector<std::uint64_t> default_n_doublings() {
  std::vector<std::uint64_t> ns;
  for (std::uint64_t n = 2; n <= 512; n *= 2) ns.push_back(n);
  return ns;
}

std::string join_doubles(const std::vector<double>& values) {
  std::string out;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) out += ',';
    out += format_double(values[i]);
  }
  return out;
}

std::string join_u64s(const std::vector<std::uint64_t>& values) {
  std::string out;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) out += ',';
    out += format_u64(values[i]);
  }
  return out;
}

std::string position_str(irsim::Position p) {
  return format_double(p.x) + "," + format_double(p.y);
}

std::string position_list_str(const std::vector<irsim::Position>& ps) {
  std::string out;
  for (std::size_t i = 0; i < ps.size(); ++i) {
    if (i) out += ';';
    out += position_str(ps[i]);
  }
  return out;
}

ExperimentSpec spec_from_config(KeyValueConfig cfg) {
  ExperimentSpec spec;
  spec.kind = kind_from_string(cfg.get_string("sim.kind", "validate"));

  irsim::SimConfig& sim = spec.sim;
  sim.k_ues = cfg.get_u64("sim.k_ues", 10);
  sim.q_ues = cfg.get_u64("sim.q_ues", 10);
  sim.n_elements = cfg.get_u64("sim.n_elements", 64);
  sim.slots = cfg.get_u64("sim.slots", 1000);
  sim.trials = cfg.get_u64("sim.trials", 100);
  sim.seed = cfg.get_u64("sim.seed", 1);

  sim.layout.bs_x = cfg.get_position("layout.bs_x", {0.0, 200.0});
  sim.layout.bs_y = cfg.get_position("layout.bs_y", {200.0, 0.0});
  sim.layout.irs = cfg.get_position("layout.irs", {0.0, 0.0});
  const irsim::Position region =
      cfg.get_position("layout.region", {200.0, 200.0});
  sim.layout.region_x = region.x;
  sim.layout.region_y = region.y;
  sim.layout.x_ues = cfg.get_position_list("layout.x_ues", {});
  sim.layout.y_ues = cfg.get_position_list("layout.y_ues", {});

  spec.c0_db = cfg.get_double("pathloss.c0_db", -30.0);
  spec.c0_direct_db = cfg.get_double("pathloss.c0_direct_db", spec.c0_db);
  sim.pathloss.c0 = db_to_linear(spec.c0_db);
  sim.pathloss.c0_direct = db_to_linear(spec.c0_direct_db);
  sim.pathloss.d0 = cfg.get_double("pathloss.d0", 1.0);
  sim.pathloss.alpha_bs_irs = cfg.get_double("pathloss.alpha_bs_irs", 1.5);
  sim.pathloss.alpha_irs_ue = cfg.get_double("pathloss.alpha_irs_ue", 2.0);
  sim.pathloss.alpha_direct = cfg.get_double("pathloss.alpha_direct", 3.0);

  spec.output_dir = cfg.get_string("output.dir", ".");

  switch (spec.kind) {
    case ExperimentKind::kSeVsSnr:
      sim.gamma_db_grid =
          cfg.get_double_list("sweep.gamma_db", default_gamma_sweep());
      spec.n_sweep = cfg.get_u64_list("sweep.n_elements", {sim.n_elements});
      break;
    case ExperimentKind::kSeVsN:
      spec.n_sweep =
          cfg.get_u64_list("sweep.n_elements", default_n_doublings());
      sim.gamma_db_grid =
          cfg.get_double_list("sweep.fixed_gamma_db", {130.0, 150.0});
      for (std::uint64_t n : spec.n_sweep)
        if (n < 1)
          throw SpecError("sweep.n_elements: se-vs-n requires N >= 1");
      break;
    case ExperimentKind::kCcdf:
      spec.n_sweep =
          cfg.get_u64_list("sweep.n_elements", {0, 4, 16, 64, 256});
      spec.ccdf_grid_points = cfg.get_u64("sweep.grid_points", 512);
      if (spec.ccdf_grid_points < 2)
        throw SpecError("sweep.grid_points must be >= 2");
      if (sim.layout.y_ues.size() != 1)
        throw SpecError(
            "ccdf requires exactly one designated layout.y_ues entry");
      sim.q_ues = 1;
      break;
    case ExperimentKind::kValidate:
      break;
  }
  if (spec.kind != ExperimentKind::kValidate && spec.n_sweep.empty())
    throw SpecError("sweep.n_elements must be nonempty");
  if (spec.kind == ExperimentKind::kSeVsSnr && sim.gamma_db_grid.empty())
    throw SpecError("sweep.gamma_db must be nonempty");

  cfg.finish();
  try {
    sim.validate();
  } catch (const std::invalid_argument& e) {
    throw SpecError(e.what());
  }
  return spec;
}

// Per-UE-set averages of the closed-form bounds, matching the MC UE set.
double analytic_se_x(const std::vector<irsim::LinkBudget>& budgets,
                     std::uint64_t n, double gamma) {
  double acc = 0.0;
  for (const auto& b : budgets)
    acc += irsim::jensen_se_x({n, b.beta_r, b.beta_d, gamma});
  return acc / static_cast<double>(budgets.size());
}

double analytic_se_y(const std::vector<irsim::LinkBudget>& budgets,
                     std::uint64_t n, double gamma) {
  double acc = 0.0;
  for (const auto& b : budgets)
    acc += irsim::jensen_se_y({n, b.beta_r, b.beta_d, gamma});
  return acc / static_cast<double>(budgets.size());
}

std::string header_comment(const ExperimentSpec& resolved) {
  std::string out;
  for (const std::string& line : serialize_spec(resolved))
    out += "# " + line + "\n";
  return out;
}

void append_se_row(std::string& csv, double gamma_db, std::uint64_t n,
                   char op, const std::string& source, double se_bits,
                   double std_err) {
  csv += format_double(gamma_db);
  csv += ',';
  csv += format_u64(n);
  csv += ',';
  csv += op;
  csv += ',';
  csv += source;
  csv += ',';
  csv += format_double(se_bits);
  csv += ',';
  csv += format_double(std_err);
  csv += '\n';
}

std::string render_se_table(const ExperimentSpec& spec, unsigned threads,
                            bool with_slopes) {
  ExperimentSpec resolved = spec;
  irsim::resolve_ue_placement(resolved.sim);

  std::vector<irsim::LinkBudget> bx, by;
  for (const auto& ue : resolved.sim.layout.x_ues)
    bx.push_back(irsim::link_budget(ue, resolved.sim.layout.bs_x,
                                    resolved.sim.layout.irs,
                                    resolved.sim.pathloss));
  for (const auto& ue : resolved.sim.layout.y_ues)
    by.push_back(irsim::link_budget(ue, resolved.sim.layout.bs_y,
                                    resolved.sim.layout.irs,
                                    resolved.sim.pathloss));

  std::vector<std::vector<irsim::RoundRobinResult>> mc(resolved.n_sweep.size());
  for (std::size_t ni = 0; ni < resolved.n_sweep.size(); ++ni) {
    irsim::SimConfig cfg = resolved.sim;
    cfg.n_elements = resolved.n_sweep[ni];
    mc[ni] = irsim::run_round_robin(cfg, threads);
  }

  std::string csv = header_comment(resolved);
  csv += kSeColumns;
  csv += '\n';
  const auto& gammas = resolved.sim.gamma_db_grid;
  for (std::size_t gi = 0; gi < gammas.size(); ++gi) {
    const double gamma_lin = db_to_linear(gammas[gi]);
    for (std::size_t ni = 0; ni < resolved.n_sweep.size(); ++ni) {
      const std::uint64_t n = resolved.n_sweep[ni];
      const irsim::RoundRobinResult& r = mc[ni][gi];
      append_se_row(csv, gammas[gi], n, 'x', "mc", r.se_x.mean,
                    r.se_x.std_error);
      append_se_row(csv, gammas[gi], n, 'x', "analytic",
                    analytic_se_x(bx, n, gamma_lin), 0.0);
      append_se_row(csv, gammas[gi], n, 'y', "mc", r.se_y.mean,
                    r.se_y.std_error);
      append_se_row(csv, gammas[gi], n, 'y', "analytic",
                    analytic_se_y(by, n, gamma_lin), 0.0);
    }
  }

  if (with_slopes) {
    std::vector<std::uint64_t> ns = resolved.n_sweep;
    std::sort(ns.begin(), ns.end());
    ns.erase(std::unique(ns.begin(), ns.end()), ns.end());
    const std::size_t m = std::max<std::size_t>(2, ns.size() / 2);
    if (ns.size() < 2)
      throw SpecError("se-vs-n requires at least two distinct N values");
    const std::vector<std::uint64_t> fit_ns(ns.end() - m, ns.end());

    auto mc_mean = [&](std::uint64_t n, std::size_t gi, char op) {
      for (std::size_t ni = 0; ni < resolved.n_sweep.size(); ++ni) {
        if (resolved.n_sweep[ni] == n)
          return op == 'x' ? mc[ni][gi].se_x.mean : mc[ni][gi].se_y.mean;
      }
      throw std::logic_error("se-vs-n: N lookup failed");
    };
    for (std::size_t gi = 0; gi < gammas.size(); ++gi) {
      for (char op : {'x', 'y'}) {
        std::vector<std::pair<double, double>> pts;
        for (std::uint64_t n : fit_ns)
          pts.emplace_back(std::log2(static_cast<double>(n)),
                           mc_mean(n, gi, op));
        const irsim::SlopeFit fit = irsim::fit_slope(pts);
        append_se_row(csv, gammas[gi], fit_ns.front(), op, "slope_fit",
                      fit.slope, fit.r_squared);
      }
    }
  }
  return csv;
}

}  // namespace

std::string kind_name(ExperimentKind kind) {
  switch (kind) {
    case ExperimentKind::kSeVsSnr:
      return "se-vs-snr";
    case ExperimentKind::kSeVsN:
      return "se-vs-n";
    case ExperimentKind::kCcdf:
      return "ccdf";
    case ExperimentKind::kValidate:
      return "validate";
  }
  throw std::logic_error("unreachable experiment kind");
}

ExperimentSpec parse_spec_text(const std::string& text) {
  return spec_from_config(KeyValueConfig::parse_text(text));
}

ExperimentSpec load_spec(const std::filesystem::path& path) {
  return spec_from_config(KeyValueConfig::parse_file(path));
}

ExperimentSpec default_spec() { return parse_spec_text(""); }

std::vector<std::string> serialize_spec(const ExperimentSpec& spec) {
  std::vector<std::string> lines;
  lines.push_back("sim.kind = " + kind_name(spec.kind));
  lines.push_back("sim.seed = " + format_u64(spec.sim.seed));
  lines.push_back("sim.k_ues = " + format_u64(spec.sim.k_ues));
  lines.push_back("sim.q_ues = " + format_u64(spec.sim.q_ues));
  lines.push_back("sim.n_elements = " + format_u64(spec.sim.n_elements));
  lines.push_back("sim.slots = " + format_u64(spec.sim.slots));
  lines.push_back("sim.trials = " + format_u64(spec.sim.trials));
  lines.push_back("layout.bs_x = " + position_str(spec.sim.layout.bs_x));
  lines.push_back("layout.bs_y = " + position_str(spec.sim.layout.bs_y));
  lines.push_back("layout.irs = " + position_str(spec.sim.layout.irs));
  lines.push_back("layout.region = " +
                  position_str({spec.sim.layout.region_x,
                                spec.sim.layout.region_y}));
  if (!spec.sim.layout.x_ues.empty())
    lines.push_back("layout.x_ues = " +
                    position_list_str(spec.sim.layout.x_ues));
  if (!spec.sim.layout.y_ues.empty())
    lines.push_back("layout.y_ues = " +
                    position_list_str(spec.sim.layout.y_ues));
  lines.push_back("pathloss.c0_db = " + format_double(spec.c0_db));
  lines.push_back("pathloss.c0_direct_db = " +
                  format_double(spec.c0_direct_db));
  lines.push_back("pathloss.d0 = " + format_double(spec.sim.pathloss.d0));
  lines.push_back("pathloss.alpha_bs_irs = " +
                  format_double(spec.sim.pathloss.alpha_bs_irs));
  lines.push_back("pathloss.alpha_irs_ue = " +
                  format_double(spec.sim.pathloss.alpha_irs_ue));
  lines.push_back("pathloss.alpha_direct = " +
                  format_double(spec.sim.pathloss.alpha_direct));
  lines.push_back("output.dir = " + spec.output_dir.string());
  switch (spec.kind) {
    case ExperimentKind::kSeVsSnr:
      lines.push_back("sweep.n_elements = " + join_u64s(spec.n_sweep));
      lines.push_back("sweep.gamma_db = " +
                      join_doubles(spec.sim.gamma_db_grid));
      break;
    case ExperimentKind::kSeVsN:
      lines.push_back("sweep.n_elements = " + join_u64s(spec.n_sweep));
      lines.push_back("sweep.fixed_gamma_db = " +
                      join_doubles(spec.sim.gamma_db_grid));
      break;
    case ExperimentKind::kCcdf:
      lines.push_back("sweep.n_elements = " + join_u64s(spec.n_sweep));
      lines.push_back("sweep.grid_points = " +
                      format_u64(spec.ccdf_grid_points));
      break;
    case ExperimentKind::kValidate:
      break;
  }
  return lines;
}

std::string render_se_vs_snr(const ExperimentSpec& spec, unsigned threads) {
  if (spec.kind != ExperimentKind::kSeVsSnr)
    throw SpecError("render_se_vs_snr requires sim.kind = se-vs-snr");
  return render_se_table(spec, threads, false);
}

std::string render_se_vs_n(const ExperimentSpec& spec, unsigned threads) {
  if (spec.kind != ExperimentKind::kSeVsN)
    throw SpecError("render_se_vs_n requires sim.kind = se-vs-n");
  return render_se_table(spec, threads, true);
}

std::string render_ccdf(const ExperimentSpec& spec, unsigned threads) {
  if (spec.kind != ExperimentKind::kCcdf)
    throw SpecError("render_ccdf requires sim.kind = ccdf");
  (void)threads;  // sampling is per-(trial, N) streamed, already deterministic

  const irsim::SimConfig& sim = spec.sim;
  const irsim::LinkBudget budget = irsim::link_budget(
      sim.layout.y_ues.front(), sim.layout.bs_y, sim.layout.irs, sim.pathloss);
  const double beta_d = budget.beta_d;
  const double beta_tilde = budget.beta_r / beta_d;

  const std::uint64_t n_max =
      *std::max_element(spec.n_sweep.begin(), spec.n_sweep.end());
  const double lo = -8.0 * beta_d;
  const double hi =
      12.0 * beta_d * (1.0 + static_cast<double>(n_max) * beta_tilde);
  std::vector<double> grid(spec.ccdf_grid_points);
  for (std::size_t i = 0; i < grid.size(); ++i)
    grid[i] = lo + (hi - lo) * static_cast<double>(i) /
                       static_cast<double>(grid.size() - 1);

  std::string csv = header_comment(spec);
  csv += kCcdfColumns;
  csv += '\n';
  for (std::uint64_t n : spec.n_sweep) {
    std::vector<double> samples;
    samples.reserve(sim.trials * sim.slots);
    for (std::size_t t = 0; t < sim.trials; ++t) {
      irsim::RngStream rng =
          irsim::make_stream(sim.seed, irsim::StreamTag::kOffsets, t, n);
      const std::vector<double> chunk =
          irsim::sample_offsets(budget, n, sim.slots, rng);
      samples.insert(samples.end(), chunk.begin(), chunk.end());
    }
    const irsim::EmpiricalCcdf emp = irsim::empirical_ccdf(samples, grid);
    const irsim::CcdfParams params{n, beta_tilde, beta_d};
    for (std::size_t i = 0; i < grid.size(); ++i) {
      const double analytic = irsim::ccdf_z(params, grid[i]);
      csv += format_u64(n);
      csv += ',';
      csv += format_double(grid[i]);
      csv += ',';
      csv += format_double(emp.survival[i]);
      csv += ',';
      csv += format_double(analytic);
      csv += ',';
      csv += format_double(std::abs(emp.survival[i] - analytic));
      csv += '\n';
    }
  }
  return csv;
}

std::filesystem::path artifact_path(const ExperimentSpec& spec) {
  switch (spec.kind) {
    case ExperimentKind::kSeVsSnr:
      return spec.output_dir / "se_vs_snr.csv";
    case ExperimentKind::kSeVsN:
      return spec.output_dir / "se_vs_n.csv";
    case ExperimentKind::kCcdf:
      return spec.output_dir / "ccdf.csv";
    case ExperimentKind::kValidate:
      return spec.output_dir / "validation.txt";
  }
  throw std::logic_error("unreachable experiment kind");
}

void write_text_file(const std::filesystem::path& path,
                     const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open for writing: " + path.string());
  out << content;
  out.flush();
  if (!out.good()) throw IoError("failed writing: " + path.string());
}

namespace {

bool run_debug_phase_identity(const ExperimentSpec& spec) {
  ExperimentSpec resolved = spec;
  if (resolved.sim.layout.y_ues.empty())
    irsim::resolve_ue_placement(resolved.sim);
  const irsim::LinkBudget budget = irsim::link_budget(
      resolved.sim.layout.y_ues.front(), resolved.sim.layout.bs_y,
      resolved.sim.layout.irs, resolved.sim.pathloss);
  const std::size_t n =
      resolved.sim.n_elements >= 1 ? resolved.sim.n_elements : 16;
  const irsim::PhaseIdentityReport report =
      irsim::phase_identity_check(budget, n, 100000, resolved.sim.seed);
  std::printf("phase identity check: ks = %.6f over %zu samples -> %s\n",
              report.ks, report.n_samples, report.pass ? "pass" : "FAIL");
  return report.pass;
}

}  // namespace

int run_experiment(const ExperimentSpec& spec, unsigned threads) {
  std::error_code ec;
  std::filesystem::create_directories(spec.output_dir, ec);
  if (ec)
    throw IoError("cannot create output directory: " +
                  spec.output_dir.string());

  if (spec.kind == ExperimentKind::kValidate) {
    const ValidationReport report = run_validate(spec, threads);
    const std::string text = render_report(report);
    write_text_file(artifact_path(spec), text);
    std::fputs(text.c_str(), stdout);
    return report.all_pass() ? 0 : 1;
  }

  bool identity_ok = true;
  if (spec.debug_phase_identity) identity_ok = run_debug_phase_identity(spec);

  std::string csv;
  switch (spec.kind) {
    case ExperimentKind::kSeVsSnr:
      csv = render_se_vs_snr(spec, threads);
      break;
    case ExperimentKind::kSeVsN:
      csv = render_se_vs_n(spec, threads);
      break;
    default:
      csv = render_ccdf(spec, threads);
      break;
  }
  const std::filesystem::path path = artifact_path(spec);
  write_text_file(path, csv);
  std::printf("wrote %s\n", path.c_str());
  return identity_ok ? 0 : 1;
}

}  // namespace irstool
