#include <doctest.h>

#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

#include "irsim/fading.hpp"
#include "irsim/geometry.hpp"
#include "irsim/rng.hpp"

using namespace irsim;

namespace {

constexpr double kSqrt2 = std::numbers::sqrt2;

}  // namespace

TEST_CASE("distance basics") {
  CHECK(distance({0, 0}, {3, 4}) == doctest::Approx(5.0));
  CHECK(distance({1, 1}, {1, 1}) == 0.0);
  CHECK(distance({-2, 0}, {2, 0}) == doctest::Approx(4.0));
}

TEST_CASE("path_loss power law") {
  PathLossParams params;
  CHECK(path_loss(params, 2.0, 100.0) == doctest::Approx(1e-7).epsilon(1e-12));
  CHECK(path_loss(params, 3.0, 1.0) == doctest::Approx(1e-3).epsilon(1e-12));
  CHECK(path_loss(params, 3.0, 200.0) ==
        doctest::Approx(1.25e-10).epsilon(1e-12));

  // Reference distance rescaling: gain depends on d/d0 only.
  PathLossParams scaled = params;
  scaled.d0 = 10.0;
  CHECK(path_loss(scaled, 2.0, 1000.0) ==
        doctest::Approx(path_loss(params, 2.0, 100.0)).epsilon(1e-12));
}

TEST_CASE("path_loss rejects bad inputs") {
  PathLossParams params;
  CHECK_THROWS_AS(path_loss(params, 2.0, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(path_loss(params, 2.0, -5.0), std::invalid_argument);

  PathLossParams bad_c0;
  bad_c0.c0 = 0.0;
  CHECK_THROWS_AS(path_loss(bad_c0, 2.0, 1.0), std::invalid_argument);

  PathLossParams bad_alpha;
  bad_alpha.alpha_irs_ue = 0.5;
  CHECK_THROWS_AS(bad_alpha.validate(), std::invalid_argument);

  PathLossParams bad_d0;
  bad_d0.d0 = -1.0;
  CHECK_THROWS_AS(bad_d0.validate(), std::invalid_argument);

  PathLossParams bad_direct;
  bad_direct.c0_direct = 0.0;
  CHECK_THROWS_AS(bad_direct.validate(), std::invalid_argument);
}

TEST_CASE("link_budget at the region center") {
  const NetworkLayout layout;
  const PathLossParams params;
  const Position ue{100.0, 100.0};

  const LinkBudget b = link_budget(ue, layout.bs_x, layout.irs, params);
  CHECK(b.beta_f == doctest::Approx(1e-3 * std::pow(200.0, -1.5)).epsilon(1e-12));
  CHECK(b.beta_g ==
        doctest::Approx(1e-3 * std::pow(kSqrt2 * 100.0, -2.0)).epsilon(1e-12));
  CHECK(b.beta_d ==
        doctest::Approx(1e-3 * std::pow(kSqrt2 * 100.0, -3.0)).epsilon(1e-12));
  CHECK(b.beta_r == b.beta_f * b.beta_g);

  // Separate direct-link reference gain scales beta_d only.
  PathLossParams split = params;
  split.c0_direct = 1e-6;
  const LinkBudget c = link_budget(ue, layout.bs_x, layout.irs, split);
  CHECK(c.beta_d == doctest::Approx(1e-3 * b.beta_d).epsilon(1e-12));
  CHECK(c.beta_f == b.beta_f);
  CHECK(c.beta_g == b.beta_g);
}

TEST_CASE("link_budget rejects coincident nodes") {
  const NetworkLayout layout;
  const PathLossParams params;
  CHECK_THROWS_AS(link_budget(layout.irs, layout.bs_x, layout.irs, params),
                  std::invalid_argument);
  CHECK_THROWS_AS(link_budget(layout.bs_x, layout.bs_x, layout.irs, params),
                  std::invalid_argument);
  CHECK_THROWS_AS(
      link_budget({100, 100}, layout.bs_x, layout.bs_x, params),
      std::invalid_argument);
}

TEST_CASE("sample_fading sizes and validation") {
  const LinkBudget budget{1.0, 0.5, 0.25, 0.125};
  RngStream rng = make_stream(1, StreamTag::kScratch, 100, 0);

  const FadingDraw draw = sample_fading(budget, 8, rng);
  CHECK(draw.n_elements() == 8);
  CHECK(draw.f.size() == 8);
  CHECK(draw.g.size() == 8);

  const FadingDraw empty = sample_fading(budget, 0, rng);
  CHECK(empty.n_elements() == 0);

  const LinkBudget bad{0.0, 0.5, 0.25, 0.125};
  CHECK_THROWS_AS(sample_fading(bad, 4, rng), std::invalid_argument);
}

TEST_CASE("sample_fading matches Rayleigh moments") {
  const LinkBudget budget{2.0, 0.5, 0.25, 0.125};
  const std::size_t n_elements = 4;
  const int n_draws = 200000;
  RngStream rng = make_stream(7, StreamTag::kScratch, 101, 0);

  double sum_hd_pow = 0.0;
  double sum_f_mag = 0.0;
  double sum_fg_mag = 0.0;
  for (int i = 0; i < n_draws; ++i) {
    const FadingDraw draw = sample_fading(budget, n_elements, rng);
    sum_hd_pow += std::norm(draw.h_d);
    for (std::size_t n = 0; n < n_elements; ++n) {
      sum_f_mag += std::abs(draw.f[n]);
      sum_fg_mag += std::abs(draw.f[n] * draw.g[n]);
    }
  }
  const double n_elem_samples = double(n_draws) * double(n_elements);
  const double pi = std::numbers::pi;

  // |h_d|^2 is exponential(beta_d): mean beta_d, std beta_d.
  const double mean_hd_pow = sum_hd_pow / n_draws;
  CHECK(std::abs(mean_hd_pow - budget.beta_d) <
        3.0 * budget.beta_d / std::sqrt(double(n_draws)));

  // |f_n| is Rayleigh: mean sqrt(pi*beta_f/4), variance beta_f*(1 - pi/4).
  const double mean_f_mag = sum_f_mag / n_elem_samples;
  const double f_target = std::sqrt(pi * budget.beta_f / 4.0);
  const double f_se =
      std::sqrt(budget.beta_f * (1.0 - pi / 4.0) / n_elem_samples);
  CHECK(std::abs(mean_f_mag - f_target) < 3.0 * f_se);

  // |f_n g_n| has mean (pi/4)*sqrt(beta_f*beta_g) and second moment
  // beta_f*beta_g.
  const double mean_fg_mag = sum_fg_mag / n_elem_samples;
  const double fg_target = (pi / 4.0) * std::sqrt(budget.beta_f * budget.beta_g);
  const double fg_se = std::sqrt(budget.beta_f * budget.beta_g *
                                 (1.0 - pi * pi / 16.0) / n_elem_samples);
  CHECK(std::abs(mean_fg_mag - fg_target) < 3.0 * fg_se);
}

TEST_CASE("fading phases are uniform") {
  const LinkBudget budget{1.0, 1.0, 1.0, 1.0};
  const int n_draws = 100000;
  RngStream rng = make_stream(5, StreamTag::kScratch, 102, 0);

  const int n_bins = 16;
  std::vector<int> counts(n_bins, 0);
  std::complex<double> resultant = 0.0;
  for (int i = 0; i < n_draws; ++i) {
    const FadingDraw draw = sample_fading(budget, 0, rng);
    const double phase = std::arg(draw.h_d);  // [-pi, pi]
    int bin = int((phase + std::numbers::pi) / (2.0 * std::numbers::pi) * n_bins);
    if (bin == n_bins) bin = n_bins - 1;
    counts[bin] += 1;
    resultant += draw.h_d / std::abs(draw.h_d);
  }

  // Chi-square with 15 dof; 37.697 is the 0.001 critical value.
  const double expected = double(n_draws) / n_bins;
  double chi2 = 0.0;
  for (int c : counts) chi2 += (c - expected) * (c - expected) / expected;
  CHECK(chi2 < 37.697);

  // Unit phasors average to zero; each component has std 1/sqrt(2n).
  const double se = std::sqrt(0.5 / n_draws);
  CHECK(std::abs(resultant.real() / n_draws) < 3.0 * se);
  CHECK(std::abs(resultant.imag() / n_draws) < 3.0 * se);
}

TEST_CASE("sample_uniform_ues bounds and determinism") {
  RngStream a = make_stream(3, StreamTag::kUePlacement, 0, 0);
  RngStream b = make_stream(3, StreamTag::kUePlacement, 0, 0);
  const auto ues_a = sample_uniform_ues(1000, 200.0, 200.0, a);
  const auto ues_b = sample_uniform_ues(1000, 200.0, 200.0, b);
  REQUIRE(ues_a.size() == 1000);
  for (std::size_t i = 0; i < ues_a.size(); ++i) {
    CHECK(ues_a[i].x == ues_b[i].x);
    CHECK(ues_a[i].y == ues_b[i].y);
    CHECK(ues_a[i].x >= 0.0);
    CHECK(ues_a[i].x <= 200.0);
    CHECK(ues_a[i].y >= 0.0);
    CHECK(ues_a[i].y <= 200.0);
  }

  RngStream c = make_stream(3, StreamTag::kUePlacement, 1, 0);
  CHECK_THROWS_AS(sample_uniform_ues(0, 200.0, 200.0, c), std::invalid_argument);
  CHECK_THROWS_AS(sample_uniform_ues(5, 0.0, 200.0, c), std::invalid_argument);
}

TEST_CASE("sample_uniform_ues covers the region uniformly") {
  RngStream rng = make_stream(9, StreamTag::kUePlacement, 2, 0);
  const int n = 100000;
  const auto ues = sample_uniform_ues(n, 200.0, 200.0, rng);
  double sum_x = 0.0;
  double sum_y = 0.0;
  for (const auto& ue : ues) {
    sum_x += ue.x;
    sum_y += ue.y;
  }
  // Per-axis mean 100 with standard error (200/sqrt(12))/sqrt(n).
  const double se = 200.0 / std::sqrt(12.0) / std::sqrt(double(n));
  CHECK(std::abs(sum_x / n - 100.0) < 3.0 * se);
  CHECK(std::abs(sum_y / n - 100.0) < 3.0 * se);
}
