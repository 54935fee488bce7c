#pragma once

#include <cstddef>

namespace irsim {

// Inputs to the closed-form spectral-efficiency expressions.
struct OperatorParams {
  std::size_t n_elements = 0;
  double beta_r = 0.0;
  double beta_d = 0.0;
  double gamma = 0.0;  // linear transmit SNR P/sigma^2

  void validate() const;
};

// Inputs to the SNR-offset distribution; beta_tilde = beta_r / beta_d.
struct CcdfParams {
  std::size_t n_elements = 0;
  double beta_tilde = 0.0;
  double beta_d = 0.0;

  void validate() const;
};

// Parameters of the dependent-exponential-difference CDF. mu1/mu2 are the
// means of the with-IRS and without-IRS power gains; rho12 their power
// correlation. simon_gamma is this law's own gamma symbol, named to avoid
// collision with the transmit SNR.
struct SimonParams {
  double mu1 = 0.0;
  double mu2 = 0.0;
  double rho12 = 0.0;

  double c() const;            // mu1*mu2*(1 - rho12^2)
  double simon_gamma() const;  // 2*sqrt((mu2-mu1)^2 + 4c)/c
  double alpha_plus() const;   // simon_gamma + 2(mu2-mu1)/c
  double alpha_minus() const;  // simon_gamma - 2(mu2-mu1)/c

  void validate() const;
};

// Jensen-bound ergodic SE for the in-band operator (beamformed IRS):
// log2(1 + [N^2 (pi^2/16) b_r + N(b_r - (pi^2/16) b_r
//           + (pi^{3/2}/4) sqrt(b_d b_r)) + b_d] * gamma).
double jensen_se_x(const OperatorParams& p);

// Jensen-bound ergodic SE for the OOB operator: log2(1 + (N b_r + b_d) gamma).
double jensen_se_y(const OperatorParams& p);

// Expected beamformed power gain E[(|h_d| + sum |f_n g_n|)^2].
double mean_gain_x(std::size_t n_elements, double beta_r, double beta_d);

// Expected OOB power gain E[|h_d + sum f_n g_n e^{j theta_n}|^2].
double mean_gain_y(std::size_t n_elements, double beta_r, double beta_d);

// Survival function of the OOB SNR offset Z_N. For N >= 1:
//   z <  0: 1 - e^{z/b_d} / (N bt + 2)
//   z >= 0: ((N bt + 1)/(N bt + 2)) e^{-z/(b_d (1 + N bt))}
// For N = 0, Z_0 = |h_d|^2: survival 1 below zero, e^{-z/b_d} above.
double ccdf_z(const CcdfParams& p, double z);

// Pr(Z_N < 0) = 1/(N bt + 2); the chance the surface strictly degrades the
// instantaneous OOB gain. Requires N >= 1.
double prob_offset_negative(const CcdfParams& p);

// Correlation coefficient of the with/without-IRS power gains:
// 1 / (1 + N beta_r / beta_d).
double rho12(std::size_t n_elements, double beta_r, double beta_d);

// CDF of the difference of dependent exponential gains:
//   z <  0: (8 / (c g a-)) e^{a- z / 4}
//   z >= 0: 1 - (8 / (c g a+)) e^{-a+ z / 4}
double simon_cdf(const SimonParams& sp, double z);

// Survival function of the difference of independent exponentials with means
// mu1, mu2: z < 0: 1 - mu2/(mu1+mu2) e^{z/mu2}; z >= 0: mu1/(mu1+mu2) e^{-z/mu1}.
double ccdf_limit(double mu1, double mu2, double z);

}  // namespace irsim
