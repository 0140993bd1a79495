#pragma once

// Semidiscrete dynamics on T_h:
//   conservative  i u_j' + (u_{j+1} - 2u_j + u_{j-1})/h^2 = 0
//   viscous       i u_j' + (u_{j+1} - 2u_j + u_{j-1})/h^2 = i a (u_{j+1} - 2u_j + u_{j-1})/h^2
// Mode k evolves as exp(-(i + a) t p_h(k)), a = 0 for the conservative scheme.

#include <memory>
#include <span>
#include <utility>
#include <vector>

#include "schrodinger_lab/spectral_core.hpp"

namespace schrodinger_lab {

enum class SchemeKind { conservative, viscous };

class SchemeConfig {
 public:
  static SchemeConfig conservative(GridSpec grid);
  // a > 0.
  static SchemeConfig viscous(GridSpec grid, double a);
  // a(h) = c h.
  static SchemeConfig viscous_linear(GridSpec grid, double c);

  [[nodiscard]] SchemeKind kind() const noexcept { return kind_; }
  [[nodiscard]] const GridSpec& grid() const noexcept { return grid_; }
  // Zero for the conservative scheme.
  [[nodiscard]] double viscosity() const noexcept { return a_; }
  // a(h)/h, the quantity bounded below by the viscosity condition.
  [[nodiscard]] double viscosity_over_h() const noexcept { return a_ / grid_.h(); }
  // p_h(k) for k = -N/2..N/2, index k + N/2.
  [[nodiscard]] std::span<const double> symbols() const noexcept { return *symbols_; }

 private:
  SchemeConfig(SchemeKind kind, GridSpec grid, double a);

  SchemeKind kind_;
  GridSpec grid_;
  double a_;
  std::shared_ptr<const std::vector<double>> symbols_;
};

struct EvolutionState {
  SchemeConfig config;
  double t;
  SpectralVector coeffs;
};

SpectralVector propagate(const SpectralVector& u0, double t, const SchemeConfig& config);
EvolutionState evolve(const EvolutionState& state, double dt);

GridVector solution_at_nodes(const SpectralVector& u0, double t, const SchemeConfig& config);

// (u_{j+1} - 2u_j + u_{j-1}) / h^2 with periodic wraparound.
GridVector discrete_laplacian(const GridVector& u);

// Classical RK4 in node space for du/dt = (i + a) Delta_h u, steps of size
// T/ceil(T/dt). Requires dt > 0 and 4 dt / h^2 <= 0.5.
GridVector ode_integrate(const GridVector& u0, double T, double dt, const SchemeConfig& config);

// dt = 0.1 h^2 / 4.
double default_ode_step(const GridSpec& grid);

// low: |k| <= cutoff, high: the rest; low + high = u.
std::pair<SpectralVector, SpectralVector> split_low_high(const SpectralVector& u, int cutoff);
// cutoff = floor(N/8).
std::pair<SpectralVector, SpectralVector> split_low_high(const SpectralVector& u);

}  // namespace schrodinger_lab
