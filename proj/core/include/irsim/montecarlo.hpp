#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "irsim/analytics.hpp"
#include "irsim/fading.hpp"
#include "irsim/geometry.hpp"
#include "irsim/rng.hpp"

namespace irsim {

// Simulation configuration. Trials are independent repetitions used to attach
// standard errors; within a trial, channels redraw i.i.d. every slot.
struct SimConfig {
  std::size_t k_ues = 10;
  std::size_t q_ues = 10;
  std::size_t n_elements = 64;
  std::size_t slots = 1000;
  std::size_t trials = 100;
  std::vector<double> gamma_db_grid = {130.0};
  std::uint64_t seed = 1;
  NetworkLayout layout;
  PathLossParams pathloss;

  void validate() const;
};

struct SeEstimate {
  double mean = 0.0;
  double std_error = 0.0;
  std::size_t n_samples = 0;
};

// Sampled survival function on a fixed grid.
struct EmpiricalCcdf {
  std::vector<double> grid;
  std::vector<double> survival;
  std::size_t n_samples = 0;
};

struct SlopeFit {
  double slope = 0.0;
  double intercept = 0.0;
  double r_squared = 0.0;
};

struct DominanceReport {
  bool ordered = false;
  double max_violation = 0.0;  // worst (small - large - slack), > 0 when violated
  double worst_z = 0.0;
};

// Round-robin engine output for one transmit-SNR grid point.
struct RoundRobinResult {
  double gamma_db = 0.0;
  SeEstimate se_x;
  SeEstimate se_y;
  std::vector<SeEstimate> per_ue_x;
  std::vector<SeEstimate> per_ue_y;
};

// Fills empty UE lists with uniform placements drawn from the config seed;
// explicit lists pass through untouched.
void resolve_ue_placement(SimConfig& cfg);

// Runs trials x slots of round-robin scheduling for both operators and
// returns per-gamma sum-SE estimates (mean over UEs of per-UE time-averaged
// rate) plus per-UE estimates. Deterministic for any worker count; pass
// threads = 0 to use the hardware concurrency.
std::vector<RoundRobinResult> run_round_robin(const SimConfig& cfg,
                                              unsigned threads = 0);

// Draws n_samples of the OOB SNR offset Z_N = |h_1|^2 - 1{N>0} |h_2|^2 with
// h_1 the random-phase effective channel and h_2 the direct term of the same
// fading draw (paired, dependent).
std::vector<double> sample_offsets(const LinkBudget& budget,
                                   std::size_t n_elements,
                                   std::size_t n_samples, RngStream& rng);

EmpiricalCcdf empirical_ccdf(const std::vector<double>& samples,
                             const std::vector<double>& grid);

// Max over the grid of |empirical survival - analytic(z)|.
double ks_distance(const EmpiricalCcdf& emp,
                   const std::function<double(double)>& analytic);

// Max deviation between two sorted sample sets' empirical CDFs.
double two_sample_ks(std::vector<double> a, std::vector<double> b);

// Checks survival_large(z) >= survival_small(z) - slack on the shared grid.
DominanceReport dominance_check(const EmpiricalCcdf& ccdf_small_n,
                                const EmpiricalCcdf& ccdf_large_n,
                                double slack);
DominanceReport dominance_check(const EmpiricalCcdf& ccdf_small_n,
                                const EmpiricalCcdf& ccdf_large_n,
                                const std::vector<double>& slack);

// Per-point 3-sigma binomial slack for comparing two empirical CCDFs.
std::vector<double> binomial_dominance_slack(const EmpiricalCcdf& a,
                                             const EmpiricalCcdf& b,
                                             double n_sigma = 3.0);

// Ordinary least squares over (log2 N, SE) points.
SlopeFit fit_slope(const std::vector<std::pair<double, double>>& points);

// Pr(E1 - E2 >= z) for independent exponentials with means mu1, mu2, by
// adaptive numeric integration of the joint density (no closed forms).
double quadrature_ccdf_oracle(double mu1, double mu2, double z);

struct CorrelationEstimate {
  double rho = 0.0;
  double std_error = 0.0;  // delete-one block jackknife
  std::size_t n_pairs = 0;
};

// Sample Pearson correlation of paired (|h_1|^2, |h_2|^2) power gains under
// random phases, with a block-jackknife standard error.
CorrelationEstimate sample_power_correlation(const LinkBudget& budget,
                                             std::size_t n_elements,
                                             std::size_t n_pairs,
                                             RngStream& rng,
                                             std::size_t n_blocks = 50);

// Two-sample check that the OOB gain distribution under fresh random phases
// matches the one under phases optimized for an independent draw.
struct PhaseIdentityReport {
  double ks = 0.0;
  std::size_t n_samples = 0;
  bool pass = false;
};

PhaseIdentityReport phase_identity_check(const LinkBudget& budget,
                                         std::size_t n_elements,
                                         std::size_t n_samples,
                                         std::uint64_t seed,
                                         double threshold = 0.01);

}  // namespace irsim
