#include "irsim/analytics.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace irsim {

namespace {

constexpr double kPi = std::numbers::pi;
const double kPiSqOver16 = kPi * kPi / 16.0;
const double kPi32Over4 = std::sqrt(kPi * kPi * kPi) / 4.0;

double log2_1p(double x) { return std::log1p(x) / std::numbers::ln2; }

}  // namespace

void OperatorParams::validate() const {
  if (!(beta_r > 0.0)) throw std::invalid_argument("OperatorParams: beta_r must be > 0");
  if (!(beta_d > 0.0)) throw std::invalid_argument("OperatorParams: beta_d must be > 0");
  if (!(gamma > 0.0)) throw std::invalid_argument("OperatorParams: gamma must be > 0");
}

void CcdfParams::validate() const {
  if (!(beta_tilde > 0.0))
    throw std::invalid_argument("CcdfParams: beta_tilde must be > 0");
  if (!(beta_d > 0.0)) throw std::invalid_argument("CcdfParams: beta_d must be > 0");
}

double SimonParams::c() const { return mu1 * mu2 * (1.0 - rho12 * rho12); }

double SimonParams::simon_gamma() const {
  const double d = mu2 - mu1;
  return 2.0 * std::sqrt(d * d + 4.0 * c()) / c();
}

double SimonParams::alpha_plus() const {
  return simon_gamma() + 2.0 * (mu2 - mu1) / c();
}

double SimonParams::alpha_minus() const {
  return simon_gamma() - 2.0 * (mu2 - mu1) / c();
}

void SimonParams::validate() const {
  if (!(mu2 > 0.0 && mu1 >= mu2))
    throw std::invalid_argument("SimonParams: require mu1 >= mu2 > 0");
  if (!(rho12 >= 0.0 && rho12 < 1.0))
    throw std::invalid_argument("SimonParams: require 0 <= rho12 < 1");
  if (!(alpha_plus() > 0.0 && alpha_minus() > 0.0))
    throw std::invalid_argument("SimonParams: alpha_plus/alpha_minus must be > 0");
}

double jensen_se_x(const OperatorParams& p) {
  p.validate();
  return log2_1p(mean_gain_x(p.n_elements, p.beta_r, p.beta_d) * p.gamma);
}

double jensen_se_y(const OperatorParams& p) {
  p.validate();
  return log2_1p(mean_gain_y(p.n_elements, p.beta_r, p.beta_d) * p.gamma);
}

double mean_gain_x(std::size_t n_elements, double beta_r, double beta_d) {
  const double n = static_cast<double>(n_elements);
  return n * n * kPiSqOver16 * beta_r +
         n * (beta_r - kPiSqOver16 * beta_r +
              kPi32Over4 * std::sqrt(beta_d * beta_r)) +
         beta_d;
}

double mean_gain_y(std::size_t n_elements, double beta_r, double beta_d) {
  return static_cast<double>(n_elements) * beta_r + beta_d;
}

double ccdf_z(const CcdfParams& p, double z) {
  p.validate();
  if (p.n_elements == 0)
    return z < 0.0 ? 1.0 : std::exp(-z / p.beta_d);
  const double a = static_cast<double>(p.n_elements) * p.beta_tilde;
  if (z < 0.0) return 1.0 - std::exp(z / p.beta_d) / (a + 2.0);
  return (a + 1.0) / (a + 2.0) * std::exp(-z / (p.beta_d * (1.0 + a)));
}

double prob_offset_negative(const CcdfParams& p) {
  p.validate();
  if (p.n_elements < 1)
    throw std::invalid_argument("prob_offset_negative: requires N >= 1");
  return 1.0 / (static_cast<double>(p.n_elements) * p.beta_tilde + 2.0);
}

double rho12(std::size_t n_elements, double beta_r, double beta_d) {
  if (!(beta_r > 0.0 && beta_d > 0.0))
    throw std::invalid_argument("rho12: gains must be > 0");
  return 1.0 / (1.0 + static_cast<double>(n_elements) * beta_r / beta_d);
}

double simon_cdf(const SimonParams& sp, double z) {
  sp.validate();
  const double c = sp.c();
  const double g = sp.simon_gamma();
  if (z < 0.0) {
    const double am = sp.alpha_minus();
    return 8.0 / (c * g * am) * std::exp(am * z / 4.0);
  }
  const double ap = sp.alpha_plus();
  return 1.0 - 8.0 / (c * g * ap) * std::exp(-ap * z / 4.0);
}

double ccdf_limit(double mu1, double mu2, double z) {
  if (!(mu1 > 0.0 && mu2 > 0.0))
    throw std::invalid_argument("ccdf_limit: means must be > 0");
  if (z < 0.0) return 1.0 - mu2 / (mu1 + mu2) * std::exp(z / mu2);
  return mu1 / (mu1 + mu2) * std::exp(-z / mu1);
}

}  // namespace irsim
