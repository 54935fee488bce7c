#pragma once

#include <complex>
#include <vector>

#include "irsim/geometry.hpp"
#include "irsim/rng.hpp"

namespace irsim {

// One Rayleigh-fading realization of all channels to a single UE: the direct
// scalar h_d and the per-element BS->IRS (f) and IRS->UE (g) vectors. Entries
// are independent CN(0, beta) with the per-link beta from the LinkBudget.
struct FadingDraw {
  std::complex<double> h_d;
  std::vector<std::complex<double>> f;
  std::vector<std::complex<double>> g;

  std::size_t n_elements() const { return f.size(); }
};

inline FadingDraw sample_fading(const LinkBudget& budget,
                                std::size_t n_elements, RngStream& rng) {
  if (!(budget.beta_d > 0.0 && budget.beta_f > 0.0 && budget.beta_g > 0.0))
    throw std::invalid_argument("sample_fading: budget gains must be > 0");
  FadingDraw draw;
  draw.h_d = rng.next_cnormal(budget.beta_d);
  draw.f.resize(n_elements);
  draw.g.resize(n_elements);
  for (std::size_t n = 0; n < n_elements; ++n)
    draw.f[n] = rng.next_cnormal(budget.beta_f);
  for (std::size_t n = 0; n < n_elements; ++n)
    draw.g[n] = rng.next_cnormal(budget.beta_g);
  return draw;
}

}  // namespace irsim
