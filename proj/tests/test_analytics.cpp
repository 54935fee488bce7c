#include <doctest.h>

#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "irsim/analytics.hpp"
#include "irsim/geometry.hpp"
#include "irsim/rng.hpp"

using namespace irsim;

namespace {

constexpr double kPi = std::numbers::pi;

PathLossParams calibrated_pathloss() {
  PathLossParams params;
  params.c0 = 1e-3;
  params.c0_direct = 1e-6;
  return params;
}

}  // namespace

TEST_CASE("jensen_se_x closed form") {
  // N = 0 collapses to the direct link.
  CHECK(jensen_se_x({0, 1.0, 1.0, 1.0}) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(jensen_se_x({0, 0.5, 3.0, 1.0}) == doctest::Approx(2.0).epsilon(1e-12));

  // N = 1, unit gains, unit SNR: mean gain is 2 + pi^{3/2}/4.
  const double expected = std::log2(3.0 + std::pow(kPi, 1.5) / 4.0);
  CHECK(jensen_se_x({1, 1.0, 1.0, 1.0}) ==
        doctest::Approx(expected).epsilon(1e-12));

  // Consistency with the mean-gain expression at arbitrary parameters.
  for (std::size_t n : {0u, 1u, 7u, 64u, 511u}) {
    const OperatorParams p{n, 3.5e-9, 2.2e-7, 1e13};
    const double via_gain = std::log2(1.0 + mean_gain_x(n, p.beta_r, p.beta_d) * p.gamma);
    CHECK(jensen_se_x(p) == doctest::Approx(via_gain).epsilon(1e-12));
  }
}

TEST_CASE("jensen_se_y closed form") {
  CHECK(jensen_se_y({3, 1.0, 1.0, 1.0}) ==
        doctest::Approx(std::log2(5.0)).epsilon(1e-12));
  CHECK(jensen_se_y({0, 9.9, 1.0, 3.0}) ==
        doctest::Approx(2.0).epsilon(1e-12));

  // At high SNR, doubling gamma adds one bit.
  const OperatorParams lo{16, 1e-8, 1e-9, 1e14};
  OperatorParams hi = lo;
  hi.gamma *= 2.0;
  CHECK(jensen_se_y(hi) - jensen_se_y(lo) == doctest::Approx(1.0).epsilon(1e-3));
}

TEST_CASE("operator params are validated") {
  CHECK_THROWS_AS(jensen_se_x({4, 0.0, 1.0, 1.0}), std::invalid_argument);
  CHECK_THROWS_AS(jensen_se_x({4, 1.0, -1.0, 1.0}), std::invalid_argument);
  CHECK_THROWS_AS(jensen_se_y({4, 1.0, 1.0, 0.0}), std::invalid_argument);
}

TEST_CASE("mean gains") {
  CHECK(mean_gain_x(0, 123.0, 0.75) == doctest::Approx(0.75).epsilon(1e-12));
  CHECK(mean_gain_y(0, 123.0, 0.75) == doctest::Approx(0.75).epsilon(1e-12));
  CHECK(mean_gain_y(10, 2.0, 1.0) == doctest::Approx(21.0).epsilon(1e-12));

  const double beta_r = 0.5;
  const double beta_d = 2.0;
  const double n = 16.0;
  const double expected =
      n * n * (kPi * kPi / 16.0) * beta_r +
      n * (beta_r - (kPi * kPi / 16.0) * beta_r +
           (std::pow(kPi, 1.5) / 4.0) * std::sqrt(beta_d * beta_r)) +
      beta_d;
  CHECK(mean_gain_x(16, beta_r, beta_d) ==
        doctest::Approx(expected).epsilon(1e-12));

  // Beamforming never loses to random phases, with equality only at N = 0.
  for (std::size_t k : {0u, 1u, 2u, 8u, 64u, 512u}) {
    CHECK(mean_gain_x(k, beta_r, beta_d) >= mean_gain_y(k, beta_r, beta_d));
  }
  CHECK(mean_gain_x(1, beta_r, beta_d) > mean_gain_y(1, beta_r, beta_d));
}

TEST_CASE("in-band bound dominates out-of-band bound") {
  for (std::size_t n = 1; n <= 512; n *= 2) {
    for (double gamma : {1e8, 1e12, 1e15}) {
      const OperatorParams p{n, 2.48e-9, 5.02e-9, gamma};
      CHECK(jensen_se_x(p) >= jensen_se_y(p));
    }
  }
}

TEST_CASE("high-SNR element-count slopes") {
  // Doubling N at high SNR adds ~2 bits in band and ~1 bit out of band.
  // Evaluated at UE (40, 40) with the calibrated direct-link reference gain;
  // the out-of-band slope needs N*beta_r comparable to beta_d to have
  // converged, which this geometry provides.
  const PathLossParams params = calibrated_pathloss();
  const NetworkLayout layout;
  const Position ue{40.0, 40.0};
  const LinkBudget bx = link_budget(ue, layout.bs_x, layout.irs, params);
  const LinkBudget by = link_budget(ue, layout.bs_y, layout.irs, params);
  const double gamma = 1e15;

  const double dx = jensen_se_x({512, bx.beta_r, bx.beta_d, gamma}) -
                    jensen_se_x({256, bx.beta_r, bx.beta_d, gamma});
  const double dy = jensen_se_y({512, by.beta_r, by.beta_d, gamma}) -
                    jensen_se_y({256, by.beta_r, by.beta_d, gamma});
  CHECK(std::abs(dx - 2.0) < 0.05);
  CHECK(std::abs(dy - 1.0) < 0.05);
}

TEST_CASE("ccdf_z closed form") {
  // Continuity at z = 0: both branches give (N bt + 1)/(N bt + 2).
  const CcdfParams p2{2, 1.0, 1.0};
  CHECK(ccdf_z(p2, 0.0) == doctest::Approx(0.75).epsilon(1e-12));
  CHECK(ccdf_z(p2, -1e-12) == doctest::Approx(0.75).epsilon(1e-6));

  const CcdfParams p4{4, 0.5, 1.0};
  CHECK(ccdf_z(p4, 0.0) == doctest::Approx(0.75).epsilon(1e-12));

  // Tails.
  CHECK(ccdf_z(p4, -1e6) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(ccdf_z(p4, 1e6) == doctest::Approx(0.0).epsilon(1e-12));

  // N = 0 reduces to the exponential survival of |h_d|^2.
  const CcdfParams p0{0, 0.5, 2.0};
  CHECK(ccdf_z(p0, -3.0) == 1.0);
  CHECK(ccdf_z(p0, 4.0) == doctest::Approx(std::exp(-2.0)).epsilon(1e-12));

  // Monotone nonincreasing and bounded.
  const CcdfParams p16{16, 0.25, 0.5};
  double prev = 1.0 + 1e-15;
  for (double z = -6.0; z <= 30.0; z += 0.125) {
    const double s = ccdf_z(p16, z);
    CHECK(s >= 0.0);
    CHECK(s <= 1.0);
    CHECK(s <= prev + 1e-15);
    prev = s;
  }
}

TEST_CASE("ccdf_z equals the independent-difference law with lifted mean") {
  // The offset survival is exactly that of E1 - E2 with E1 mean
  // beta_d (1 + N beta_tilde) and E2 mean beta_d.
  for (std::size_t n : {1u, 4u, 16u, 64u}) {
    const CcdfParams p{n, 0.37, 1.7};
    const double mu1 = p.beta_d * (1.0 + double(n) * p.beta_tilde);
    const double mu2 = p.beta_d;
    for (double z : {-5.0, -1.0, -1e-3, 0.0, 1e-3, 0.5, 3.0, 20.0}) {
      CHECK(ccdf_z(p, z) ==
            doctest::Approx(ccdf_limit(mu1, mu2, z)).epsilon(1e-12));
    }
  }
}

TEST_CASE("offset survival grows with element count") {
  // Adding elements shifts the offset distribution stochastically upward.
  const double beta_tilde = 0.3;
  const double beta_d = 1.0;
  const std::vector<std::size_t> ns = {1, 4, 16, 64, 256};
  for (std::size_t i = 0; i + 1 < ns.size(); ++i) {
    const CcdfParams small{ns[i], beta_tilde, beta_d};
    const CcdfParams large{ns[i + 1], beta_tilde, beta_d};
    for (double z = -10.0; z <= 50.0; z += 0.25) {
      CHECK(ccdf_z(large, z) >= ccdf_z(small, z));
    }
  }
}

TEST_CASE("prob_offset_negative") {
  CHECK(prob_offset_negative({4, 0.5, 1.0}) ==
        doctest::Approx(0.25).epsilon(1e-12));
  CHECK(prob_offset_negative({1, 1.0, 7.0}) ==
        doctest::Approx(1.0 / 3.0).epsilon(1e-12));

  // Consistent with the CDF just below zero.
  const CcdfParams p{16, 0.2, 1.0};
  CHECK(prob_offset_negative(p) ==
        doctest::Approx(1.0 - ccdf_z(p, -1e-13)).epsilon(1e-9));

  // Vanishes as the surface grows and never exceeds 1/2.
  double prev = 0.5;
  for (std::size_t n = 1; n <= 1u << 20; n *= 4) {
    const double pr = prob_offset_negative({n, 1.0, 1.0});
    CHECK(pr < prev);
    prev = pr;
  }
  CHECK(prob_offset_negative({1u << 20, 1.0, 1.0}) < 1e-5);

  CHECK_THROWS_AS(prob_offset_negative({0, 0.5, 1.0}), std::invalid_argument);
}

TEST_CASE("rho12 power correlation") {
  CHECK(rho12(0, 1.0, 1.0) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(rho12(2, 1.0, 2.0) == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(rho12(64, 0.05, 1.0) == doctest::Approx(1.0 / 4.2).epsilon(1e-12));
  CHECK_THROWS_AS(rho12(4, 0.0, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(rho12(4, 1.0, 0.0), std::invalid_argument);
}

TEST_CASE("simon_cdf basics") {
  // Symmetric independent case is centered.
  const SimonParams sym{1.0, 1.0, 0.0};
  CHECK(simon_cdf(sym, 0.0) == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(simon_cdf(sym, -50.0) == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(simon_cdf(sym, 50.0) == doctest::Approx(1.0).epsilon(1e-12));

  // Continuity at zero and monotonicity for an asymmetric correlated pair.
  const SimonParams p{5.0, 2.0, 0.3};
  CHECK(simon_cdf(p, -1e-12) == doctest::Approx(simon_cdf(p, 0.0)).epsilon(1e-9));
  double prev = -1e-15;
  for (double z = -20.0; z <= 60.0; z += 0.25) {
    const double v = simon_cdf(p, z);
    CHECK(v >= prev - 1e-15);
    CHECK(v >= 0.0);
    CHECK(v <= 1.0);
    prev = v;
  }

  CHECK_THROWS_AS(simon_cdf({1.0, 2.0, 0.0}, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(simon_cdf({2.0, 0.0, 0.0}, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(simon_cdf({2.0, 1.0, 1.0}, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(simon_cdf({2.0, 1.0, -0.1}, 0.0), std::invalid_argument);
}

TEST_CASE("simon_cdf recovers the independent limit") {
  // rho12 enters only squared, so rho12 = 1e-6 perturbs by ~1e-12.
  for (const auto& [mu1, mu2] : std::vector<std::pair<double, double>>{
           {3.0, 1.0}, {1.0, 1.0}, {5.0, 2.0}}) {
    const SimonParams sp{mu1, mu2, 1e-6};
    for (int i = 0; i < 64; ++i) {
      const double z = -8.0 * mu2 + (12.0 * mu1 + 8.0 * mu2) * i / 63.0;
      const double survival = 1.0 - simon_cdf(sp, z);
      CHECK(std::abs(survival - ccdf_limit(mu1, mu2, z)) < 1e-9);
    }
  }
}

TEST_CASE("simon_cdf is exact under amplitude correlation") {
  // The formula's correlation parameter is the complex-amplitude correlation
  // of the underlying Gaussian pair; the power correlation is its square.
  // Build h2 = r h1 + sqrt(1-r^2) w (scaled), difference the powers, and the
  // formula evaluated at rho12 = r must reproduce the empirical law.
  const double mu1 = 1.8;
  const double mu2 = 1.0;
  const double r = std::sqrt(5.0 / 9.0);  // power correlation 5/9
  const SimonParams sp{mu1, mu2, r};

  RngStream rng = make_stream(31, StreamTag::kScratch, 300, 0);
  const int n = 200000;
  const std::vector<double> zs = {-0.5, 0.0, 0.7};
  std::vector<int> below(zs.size(), 0);
  for (int i = 0; i < n; ++i) {
    const std::complex<double> u = rng.next_cnormal(1.0);
    const std::complex<double> w = rng.next_cnormal(1.0);
    const std::complex<double> h1 = std::sqrt(mu1) * u;
    const std::complex<double> h2 =
        std::sqrt(mu2) * (r * u + std::sqrt(1.0 - r * r) * w);
    const double z = std::norm(h1) - std::norm(h2);
    for (std::size_t j = 0; j < zs.size(); ++j) below[j] += (z < zs[j]);
  }
  for (std::size_t j = 0; j < zs.size(); ++j) {
    const double expected = simon_cdf(sp, zs[j]);
    const double se = std::sqrt(expected * (1.0 - expected) / n);
    CHECK(std::abs(double(below[j]) / n - expected) < 3.0 * se);
  }
}

TEST_CASE("ccdf_limit basics") {
  CHECK(ccdf_limit(3.0, 1.0, 0.0) == doctest::Approx(0.75).epsilon(1e-12));
  CHECK(ccdf_limit(1.0, 1.0, 0.0) == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(ccdf_limit(2.0, 3.0, -1e9) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(ccdf_limit(2.0, 3.0, 1e9) == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(ccdf_limit(2.0, 1.0, 2.0) ==
        doctest::Approx(2.0 / 3.0 * std::exp(-1.0)).epsilon(1e-12));
  CHECK_THROWS_AS(ccdf_limit(0.0, 1.0, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(ccdf_limit(1.0, -1.0, 0.0), std::invalid_argument);
}
