#include "irsim/montecarlo.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <thread>

#include "irsim/irs.hpp"

namespace irsim {

namespace {

double log2_1p(double x) { return std::log1p(x) / std::numbers::ln2; }

// Slots assigned to UE index u under "slot s serves UE s mod count".
std::size_t rr_share(std::size_t slots, std::size_t count, std::size_t u) {
  return (slots + count - 1 - u) / count;
}

SeEstimate across_trials(const std::vector<double>& values) {
  SeEstimate est;
  est.n_samples = values.size();
  double sum = 0.0;
  for (double v : values) sum += v;
  est.mean = sum / static_cast<double>(values.size());
  if (values.size() > 1) {
    double ss = 0.0;
    for (double v : values) ss += (v - est.mean) * (v - est.mean);
    est.std_error = std::sqrt(ss / static_cast<double>(values.size() - 1)) /
                    std::sqrt(static_cast<double>(values.size()));
  }
  return est;
}

unsigned resolve_threads(unsigned requested, std::size_t work_items) {
  unsigned n = requested != 0 ? requested : std::thread::hardware_concurrency();
  if (n == 0) n = 1;
  return static_cast<unsigned>(
      std::min<std::size_t>(n, std::max<std::size_t>(work_items, 1)));
}

struct TrialSums {
  std::vector<double> x;  // k_ues * n_gammas rate sums
  std::vector<double> y;  // q_ues * n_gammas rate sums
};

TrialSums run_trial(const SimConfig& cfg, const std::vector<LinkBudget>& bx,
                    const std::vector<LinkBudget>& by,
                    const std::vector<double>& gammas, std::size_t trial) {
  const std::size_t n_g = gammas.size();
  TrialSums sums{std::vector<double>(cfg.k_ues * n_g, 0.0),
                 std::vector<double>(cfg.q_ues * n_g, 0.0)};
  for (std::size_t s = 0; s < cfg.slots; ++s) {
    const std::size_t k = s % cfg.k_ues;
    const std::size_t q = s % cfg.q_ues;

    RngStream rng_x = make_stream(cfg.seed, StreamTag::kFadingX, trial, s);
    const FadingDraw draw_x = sample_fading(bx[k], cfg.n_elements, rng_x);
    const double gain_x = beamformed_gain(draw_x);
    const double pow_x = gain_x * gain_x;

    RngStream rng_y = make_stream(cfg.seed, StreamTag::kFadingY, trial, s);
    const FadingDraw draw_y = sample_fading(by[q], cfg.n_elements, rng_y);
    RngStream rng_ph = make_stream(cfg.seed, StreamTag::kPhases, trial, s);
    const PhaseConfig phases = random_phases(cfg.n_elements, rng_ph);
    const double pow_y = std::norm(effective_channel(draw_y, phases).h);

    for (std::size_t gi = 0; gi < n_g; ++gi) {
      sums.x[k * n_g + gi] += log2_1p(gammas[gi] * pow_x);
      sums.y[q * n_g + gi] += log2_1p(gammas[gi] * pow_y);
    }
  }
  return sums;
}

}  // namespace

void SimConfig::validate() const {
  if (k_ues < 1 || q_ues < 1)
    throw std::invalid_argument("sim: k_ues and q_ues must be >= 1");
  if (slots < 1) throw std::invalid_argument("sim: slots must be >= 1");
  if (trials < 1) throw std::invalid_argument("sim: trials must be >= 1");
  if (gamma_db_grid.empty())
    throw std::invalid_argument("sim: gamma_db_grid must be nonempty");
  if (trials >= (1ull << 24))
    throw std::invalid_argument("sim: trials must be < 2^24");
  if (slots >= (1ull << 32))
    throw std::invalid_argument("sim: slots must be < 2^32");
  if (slots < k_ues || slots < q_ues)
    throw std::invalid_argument("sim: slots must cover every UE at least once");
  if (!layout.x_ues.empty() && layout.x_ues.size() != k_ues)
    throw std::invalid_argument("sim: layout.x_ues size must match k_ues");
  if (!layout.y_ues.empty() && layout.y_ues.size() != q_ues)
    throw std::invalid_argument("sim: layout.y_ues size must match q_ues");
  pathloss.validate();
}

void resolve_ue_placement(SimConfig& cfg) {
  cfg.validate();
  if (cfg.layout.x_ues.empty()) {
    RngStream rng = make_stream(cfg.seed, StreamTag::kUePlacement, 0, 0);
    cfg.layout.x_ues = sample_uniform_ues(cfg.k_ues, cfg.layout.region_x,
                                          cfg.layout.region_y, rng);
  }
  if (cfg.layout.y_ues.empty()) {
    RngStream rng = make_stream(cfg.seed, StreamTag::kUePlacement, 1, 0);
    cfg.layout.y_ues = sample_uniform_ues(cfg.q_ues, cfg.layout.region_x,
                                          cfg.layout.region_y, rng);
  }
}

std::vector<RoundRobinResult> run_round_robin(const SimConfig& cfg_in,
                                              unsigned threads) {
  SimConfig cfg = cfg_in;
  resolve_ue_placement(cfg);

  std::vector<LinkBudget> bx, by;
  bx.reserve(cfg.k_ues);
  by.reserve(cfg.q_ues);
  for (const auto& ue : cfg.layout.x_ues)
    bx.push_back(link_budget(ue, cfg.layout.bs_x, cfg.layout.irs, cfg.pathloss));
  for (const auto& ue : cfg.layout.y_ues)
    by.push_back(link_budget(ue, cfg.layout.bs_y, cfg.layout.irs, cfg.pathloss));

  std::vector<double> gammas(cfg.gamma_db_grid.size());
  for (std::size_t i = 0; i < gammas.size(); ++i)
    gammas[i] = std::pow(10.0, cfg.gamma_db_grid[i] / 10.0);
  const std::size_t n_g = gammas.size();

  std::vector<TrialSums> per_trial(cfg.trials);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t t = next.fetch_add(1); t < cfg.trials;
         t = next.fetch_add(1))
      per_trial[t] = run_trial(cfg, bx, by, gammas, t);
  };
  const unsigned n_workers = resolve_threads(threads, cfg.trials);
  if (n_workers <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(n_workers);
    for (unsigned w = 0; w < n_workers; ++w) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }

  // Deterministic reduction in trial order, identical for any worker count.
  std::vector<RoundRobinResult> results(n_g);
  std::vector<double> trial_vals(cfg.trials);
  for (std::size_t gi = 0; gi < n_g; ++gi) {
    RoundRobinResult& res = results[gi];
    res.gamma_db = cfg.gamma_db_grid[gi];
    res.per_ue_x.resize(cfg.k_ues);
    res.per_ue_y.resize(cfg.q_ues);

    std::vector<std::vector<double>> ue_vals;
    ue_vals.assign(cfg.k_ues, std::vector<double>(cfg.trials));
    for (std::size_t t = 0; t < cfg.trials; ++t) {
      double acc = 0.0;
      for (std::size_t k = 0; k < cfg.k_ues; ++k) {
        const double v = per_trial[t].x[k * n_g + gi] /
                         static_cast<double>(rr_share(cfg.slots, cfg.k_ues, k));
        ue_vals[k][t] = v;
        acc += v;
      }
      trial_vals[t] = acc / static_cast<double>(cfg.k_ues);
    }
    res.se_x = across_trials(trial_vals);
    for (std::size_t k = 0; k < cfg.k_ues; ++k)
      res.per_ue_x[k] = across_trials(ue_vals[k]);

    ue_vals.assign(cfg.q_ues, std::vector<double>(cfg.trials));
    for (std::size_t t = 0; t < cfg.trials; ++t) {
      double acc = 0.0;
      for (std::size_t q = 0; q < cfg.q_ues; ++q) {
        const double v = per_trial[t].y[q * n_g + gi] /
                         static_cast<double>(rr_share(cfg.slots, cfg.q_ues, q));
        ue_vals[q][t] = v;
        acc += v;
      }
      trial_vals[t] = acc / static_cast<double>(cfg.q_ues);
    }
    res.se_y = across_trials(trial_vals);
    for (std::size_t q = 0; q < cfg.q_ues; ++q)
      res.per_ue_y[q] = across_trials(ue_vals[q]);
  }
  return results;
}

std::vector<double> sample_offsets(const LinkBudget& budget,
                                   std::size_t n_elements,
                                   std::size_t n_samples, RngStream& rng) {
  if (n_samples < 1)
    throw std::invalid_argument("sample_offsets: n_samples must be >= 1");
  std::vector<double> z(n_samples);
  for (auto& zi : z) {
    const FadingDraw draw = sample_fading(budget, n_elements, rng);
    const PhaseConfig phases = random_phases(n_elements, rng);
    const double h1 = std::norm(effective_channel(draw, phases).h);
    zi = n_elements == 0 ? h1 : h1 - std::norm(draw.h_d);
  }
  return z;
}

EmpiricalCcdf empirical_ccdf(const std::vector<double>& samples,
                             const std::vector<double>& grid) {
  if (samples.empty()) throw std::invalid_argument("empirical_ccdf: no samples");
  if (grid.empty()) throw std::invalid_argument("empirical_ccdf: empty grid");
  if (!std::is_sorted(grid.begin(), grid.end()))
    throw std::invalid_argument("empirical_ccdf: grid must be sorted");
  std::vector<double> sorted = samples;
  std::sort(sorted.begin(), sorted.end());
  EmpiricalCcdf result;
  result.grid = grid;
  result.n_samples = samples.size();
  result.survival.resize(grid.size());
  const double n = static_cast<double>(samples.size());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const auto it = std::lower_bound(sorted.begin(), sorted.end(), grid[i]);
    result.survival[i] = static_cast<double>(sorted.end() - it) / n;
  }
  return result;
}

double ks_distance(const EmpiricalCcdf& emp,
                   const std::function<double(double)>& analytic) {
  double worst = 0.0;
  for (std::size_t i = 0; i < emp.grid.size(); ++i)
    worst = std::max(worst, std::abs(emp.survival[i] - analytic(emp.grid[i])));
  return worst;
}

double two_sample_ks(std::vector<double> a, std::vector<double> b) {
  if (a.empty() || b.empty())
    throw std::invalid_argument("two_sample_ks: empty sample set");
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  const double na = static_cast<double>(a.size());
  const double nb = static_cast<double>(b.size());
  std::size_t i = 0, j = 0;
  double worst = 0.0;
  while (i < a.size() && j < b.size()) {
    const double v = std::min(a[i], b[j]);
    while (i < a.size() && a[i] <= v) ++i;
    while (j < b.size() && b[j] <= v) ++j;
    worst = std::max(worst, std::abs(static_cast<double>(i) / na -
                                     static_cast<double>(j) / nb));
  }
  return worst;
}

static DominanceReport dominance_impl(const EmpiricalCcdf& small,
                                      const EmpiricalCcdf& large,
                                      const std::vector<double>& slack) {
  if (small.grid != large.grid)
    throw std::invalid_argument("dominance_check: grids must match");
  if (slack.size() != small.grid.size())
    throw std::invalid_argument("dominance_check: slack size must match grid");
  DominanceReport report;
  report.max_violation = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < small.grid.size(); ++i) {
    const double v = small.survival[i] - large.survival[i] - slack[i];
    if (v > report.max_violation) {
      report.max_violation = v;
      report.worst_z = small.grid[i];
    }
  }
  report.ordered = report.max_violation <= 0.0;
  return report;
}

DominanceReport dominance_check(const EmpiricalCcdf& ccdf_small_n,
                                const EmpiricalCcdf& ccdf_large_n,
                                double slack) {
  return dominance_impl(ccdf_small_n, ccdf_large_n,
                        std::vector<double>(ccdf_small_n.grid.size(), slack));
}

DominanceReport dominance_check(const EmpiricalCcdf& ccdf_small_n,
                                const EmpiricalCcdf& ccdf_large_n,
                                const std::vector<double>& slack) {
  return dominance_impl(ccdf_small_n, ccdf_large_n, slack);
}

std::vector<double> binomial_dominance_slack(const EmpiricalCcdf& a,
                                             const EmpiricalCcdf& b,
                                             double n_sigma) {
  if (a.grid != b.grid)
    throw std::invalid_argument("binomial_dominance_slack: grids must match");
  std::vector<double> slack(a.grid.size());
  for (std::size_t i = 0; i < slack.size(); ++i) {
    const double pa = a.survival[i];
    const double pb = b.survival[i];
    slack[i] = n_sigma * std::sqrt(pa * (1.0 - pa) /
                                       static_cast<double>(a.n_samples) +
                                   pb * (1.0 - pb) /
                                       static_cast<double>(b.n_samples));
  }
  return slack;
}

SlopeFit fit_slope(const std::vector<std::pair<double, double>>& points) {
  if (points.size() < 2)
    throw std::invalid_argument("fit_slope: need at least 2 points");
  double mx = 0.0, my = 0.0;
  for (const auto& [x, y] : points) {
    mx += x;
    my += y;
  }
  mx /= static_cast<double>(points.size());
  my /= static_cast<double>(points.size());
  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (const auto& [x, y] : points) {
    sxx += (x - mx) * (x - mx);
    sxy += (x - mx) * (y - my);
    syy += (y - my) * (y - my);
  }
  if (!(sxx > 0.0))
    throw std::invalid_argument("fit_slope: degenerate abscissae");
  SlopeFit fit;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  if (syy > 0.0) {
    const double ss_res = syy - fit.slope * sxy;
    fit.r_squared = std::clamp(1.0 - ss_res / syy, 0.0, 1.0);
  } else {
    fit.r_squared = 1.0;
  }
  return fit;
}

namespace {

// Recursive adaptive Simpson refinement; terminates when successive
// estimates agree to tol (Richardson-corrected).
double simpson_rec(const std::function<double(double)>& f, double a, double b,
                   double fa, double fm, double fb, double whole, double tol,
                   int depth) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m);
  const double rm = 0.5 * (m + b);
  const double flm = f(lm);
  const double frm = f(rm);
  const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  const double sum = left + right;
  if (depth <= 0 || std::abs(sum - whole) < 15.0 * tol)
    return sum + (sum - whole) / 15.0;
  return simpson_rec(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
         simpson_rec(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

double adaptive_simpson(const std::function<double(double)>& f, double a,
                        double b, double tol) {
  const double fa = f(a);
  const double m = 0.5 * (a + b);
  const double fm = f(m);
  const double fb = f(b);
  const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  return simpson_rec(f, a, b, fa, fm, fb, whole, tol, 48);
}

}  // namespace

double quadrature_ccdf_oracle(double mu1, double mu2, double z) {
  if (!(mu1 > 0.0 && mu2 > 0.0))
    throw std::invalid_argument("quadrature_ccdf_oracle: means must be > 0");

  // Inner tail mass Pr(E1 >= a), integrated numerically on x = a + mu1*t/(1-t).
  auto tail1 = [mu1](double a) {
    auto integrand = [mu1, a](double t) {
      if (t >= 1.0) return 0.0;
      const double x = a + mu1 * t / (1.0 - t);
      return std::exp(-x / mu1) / ((1.0 - t) * (1.0 - t));
    };
    return adaptive_simpson(integrand, 0.0, 1.0, 1e-13);
  };

  // Outer integral over y on y = mu2*u/(1-u); integrand has a kink where
  // y + z crosses zero, so split there for z < 0.
  auto outer = [&](double u) {
    if (u >= 1.0) return 0.0;
    const double y = mu2 * u / (1.0 - u);
    const double w = std::exp(-u / (1.0 - u)) / ((1.0 - u) * (1.0 - u));
    return w * tail1(std::max(0.0, y + z));
  };
  if (z < 0.0) {
    const double x = -z / mu2;
    const double u_kink = x / (1.0 + x);
    return adaptive_simpson(outer, 0.0, u_kink, 5e-13) +
           adaptive_simpson(outer, u_kink, 1.0, 5e-13);
  }
  return adaptive_simpson(outer, 0.0, 1.0, 1e-12);
}

CorrelationEstimate sample_power_correlation(const LinkBudget& budget,
                                             std::size_t n_elements,
                                             std::size_t n_pairs,
                                             RngStream& rng,
                                             std::size_t n_blocks) {
  if (n_pairs < 4) throw std::invalid_argument("sample_power_correlation: too few pairs");
  if (n_blocks < 2 || n_blocks > n_pairs)
    throw std::invalid_argument("sample_power_correlation: bad block count");
  std::vector<double> p1(n_pairs), p2(n_pairs);
  for (std::size_t i = 0; i < n_pairs; ++i) {
    const FadingDraw draw = sample_fading(budget, n_elements, rng);
    const PhaseConfig phases = random_phases(n_elements, rng);
    p1[i] = std::norm(effective_channel(draw, phases).h);
    p2[i] = std::norm(draw.h_d);
  }

  struct Moments {
    double sx = 0, sy = 0, sxx = 0, syy = 0, sxy = 0;
    std::size_t n = 0;
  };
  auto corr_of = [](const Moments& m) {
    const double n = static_cast<double>(m.n);
    const double cov = m.sxy - m.sx * m.sy / n;
    const double vx = m.sxx - m.sx * m.sx / n;
    const double vy = m.syy - m.sy * m.sy / n;
    return cov / std::sqrt(vx * vy);
  };

  Moments total;
  std::vector<Moments> blocks(n_blocks);
  const std::size_t block_len = n_pairs / n_blocks;
  for (std::size_t i = 0; i < n_pairs; ++i) {
    const std::size_t b = std::min(i / block_len, n_blocks - 1);
    auto add = [&](Moments& m) {
      m.sx += p1[i];
      m.sy += p2[i];
      m.sxx += p1[i] * p1[i];
      m.syy += p2[i] * p2[i];
      m.sxy += p1[i] * p2[i];
      ++m.n;
    };
    add(total);
    add(blocks[b]);
  }

  CorrelationEstimate est;
  est.n_pairs = n_pairs;
  est.rho = corr_of(total);

  std::vector<double> loo(n_blocks);
  double loo_mean = 0.0;
  for (std::size_t b = 0; b < n_blocks; ++b) {
    Moments m = total;
    m.sx -= blocks[b].sx;
    m.sy -= blocks[b].sy;
    m.sxx -= blocks[b].sxx;
    m.syy -= blocks[b].syy;
    m.sxy -= blocks[b].sxy;
    m.n -= blocks[b].n;
    loo[b] = corr_of(m);
    loo_mean += loo[b];
  }
  loo_mean /= static_cast<double>(n_blocks);
  double ss = 0.0;
  for (double v : loo) ss += (v - loo_mean) * (v - loo_mean);
  est.std_error = std::sqrt(ss * static_cast<double>(n_blocks - 1) /
                            static_cast<double>(n_blocks));
  return est;
}

PhaseIdentityReport phase_identity_check(const LinkBudget& budget,
                                         std::size_t n_elements,
                                         std::size_t n_samples,
                                         std::uint64_t seed, double threshold) {
  RngStream rng_a = make_stream(seed, StreamTag::kScratch, 0, 0);
  RngStream rng_b = make_stream(seed, StreamTag::kScratch, 1, 0);
  std::vector<double> a(n_samples), b(n_samples);
  for (std::size_t i = 0; i < n_samples; ++i) {
    const FadingDraw draw = sample_fading(budget, n_elements, rng_a);
    const PhaseConfig phases = random_phases(n_elements, rng_a);
    a[i] = std::abs(effective_channel(draw, phases).h);
  }
  for (std::size_t i = 0; i < n_samples; ++i) {
    const FadingDraw draw = sample_fading(budget, n_elements, rng_b);
    const FadingDraw other = sample_fading(budget, n_elements, rng_b);
    b[i] = std::abs(effective_channel(draw, optimal_phases(other)).h);
  }
  PhaseIdentityReport report;
  report.n_samples = n_samples;
  report.ks = two_sample_ks(std::move(a), std::move(b));
  report.pass = report.ks < threshold;
  return report;
}

}  // namespace irsim
