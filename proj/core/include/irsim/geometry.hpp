#pragma once

#include <cmath>
#include <stdexcept>
#include <vector>

#include "irsim/rng.hpp"

namespace irsim {

struct Position {
  double x = 0.0;
  double y = 0.0;
};

inline double distance(const Position& a, const Position& b) {
  return std::hypot(a.x - b.x, a.y - b.y);
}

// Distance-based power-law path loss: gain = c0 * (d0 / d)^alpha.
// c0_direct lets the direct BS-UE link use its own reference gain; it
// defaults to c0 so plain three-exponent setups need not set it.
struct PathLossParams {
  double c0 = 1e-3;
  double d0 = 1.0;
  double alpha_bs_irs = 1.5;
  double alpha_irs_ue = 2.0;
  double alpha_direct = 3.0;
  double c0_direct = 1e-3;

  void validate() const {
    if (!(c0 > 0.0)) throw std::invalid_argument("pathloss: c0 must be > 0");
    if (!(c0_direct > 0.0))
      throw std::invalid_argument("pathloss: c0_direct must be > 0");
    if (!(d0 > 0.0)) throw std::invalid_argument("pathloss: d0 must be > 0");
    if (!(alpha_bs_irs >= 1.0 && alpha_irs_ue >= 1.0 && alpha_direct >= 1.0))
      throw std::invalid_argument("pathloss: each alpha must be >= 1");
  }
};

// Per-UE link gains; beta_r is the per-element cascaded gain beta_f*beta_g.
struct LinkBudget {
  double beta_d = 0.0;
  double beta_f = 0.0;
  double beta_g = 0.0;
  double beta_r = 0.0;
};

// Node geometry for the two-operator downlink. X-UEs are served by the
// IRS-controlling base station, Y-UEs by the other-band base station. Empty
// UE lists mean "place uniformly at random in [0,region_x] x [0,region_y]".
struct NetworkLayout {
  Position bs_x{0.0, 200.0};
  Position bs_y{200.0, 0.0};
  Position irs{0.0, 0.0};
  double region_x = 200.0;
  double region_y = 200.0;
  std::vector<Position> x_ues;
  std::vector<Position> y_ues;
};

inline double path_loss(const PathLossParams& params, double alpha, double d) {
  params.validate();
  if (!(d > 0.0)) throw std::invalid_argument("path_loss: distance must be > 0");
  return params.c0 * std::pow(params.d0 / d, alpha);
}

inline LinkBudget link_budget(const Position& ue, const Position& bs,
                              const Position& irs, const PathLossParams& params) {
  params.validate();
  const double d_bs_irs = distance(bs, irs);
  const double d_irs_ue = distance(irs, ue);
  const double d_bs_ue = distance(bs, ue);
  if (!(d_bs_irs > 0.0 && d_irs_ue > 0.0 && d_bs_ue > 0.0))
    throw std::invalid_argument("link_budget: coincident nodes");
  LinkBudget budget;
  budget.beta_f = params.c0 * std::pow(params.d0 / d_bs_irs, params.alpha_bs_irs);
  budget.beta_g = params.c0 * std::pow(params.d0 / d_irs_ue, params.alpha_irs_ue);
  budget.beta_d =
      params.c0_direct * std::pow(params.d0 / d_bs_ue, params.alpha_direct);
  budget.beta_r = budget.beta_f * budget.beta_g;
  return budget;
}

inline std::vector<Position> sample_uniform_ues(std::size_t count, double x_max,
                                                double y_max, RngStream& rng) {
  if (count < 1) throw std::invalid_argument("sample_uniform_ues: count >= 1");
  if (!(x_max > 0.0 && y_max > 0.0))
    throw std::invalid_argument("sample_uniform_ues: degenerate region");
  std::vector<Position> ues(count);
  for (auto& ue : ues) {
    ue.x = x_max * rng.next_unit();
    ue.y = y_max * rng.next_unit();
  }
  return ues;
}

}  // namespace irsim
