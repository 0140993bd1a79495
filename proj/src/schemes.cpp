#include "schrodinger_lab/schemes.hpp"

#include <cmath>
#include <string>

#include "schrodinger_lab/errors.hpp"

namespace schrodinger_lab {
namespace {

constexpr const char* kModule = "schemes";

// y <- y + c x
void axpy(GridVector& y, cplx c, const GridVector& x) {
  for (std::size_t j = 0; j < y.size(); ++j) y[j] += c * x[j];
}

}  // namespace

SchemeConfig::SchemeConfig(SchemeKind kind, GridSpec grid, double a)
    : kind_(kind), grid_(grid), a_(a) {
  auto table = std::make_shared<std::vector<double>>(grid.nodes());
  for (int k = -grid.half(); k <= grid.half(); ++k) {
    (*table)[static_cast<std::size_t>(k + grid.half())] = symbol_p(grid, k);
  }
  symbols_ = std::move(table);
}

SchemeConfig SchemeConfig::conservative(GridSpec grid) {
  return SchemeConfig(SchemeKind::conservative, grid, 0.0);
}

SchemeConfig SchemeConfig::viscous(GridSpec grid, double a) {
  require(a > 0.0 && std::isfinite(a), kModule, "viscous scheme requires viscosity a > 0");
  return SchemeConfig(SchemeKind::viscous, grid, a);
}

SchemeConfig SchemeConfig::viscous_linear(GridSpec grid, double c) {
  require(c > 0.0, kModule, "viscosity constant c must be positive");
  return viscous(grid, c * grid.h());
}

SpectralVector propagate(const SpectralVector& u0, double t, const SchemeConfig& config) {
  require(t >= 0.0, kModule, "propagation time must be nonnegative");
  require(u0.grid() == config.grid(), kModule, "grid mismatch between data and scheme");
  const GridSpec& grid = u0.grid();
  const double a = config.viscosity();
  const auto symbols = config.symbols();
  SpectralVector out(grid);
  for (int k = -grid.half(); k <= grid.half(); ++k) {
    const double phase = t * symbols[static_cast<std::size_t>(k + grid.half())];
    out[k] = u0[k] * std::polar(a == 0.0 ? 1.0 : std::exp(-a * phase), -phase);
  }
  return out;
}

EvolutionState evolve(const EvolutionState& state, double dt) {
  return {state.config, state.t + dt, propagate(state.coeffs, dt, state.config)};
}

GridVector solution_at_nodes(const SpectralVector& u0, double t, const SchemeConfig& config) {
  return idft(propagate(u0, t, config));
}

GridVector discrete_laplacian(const GridVector& u) {
  const double inv_h2 = 1.0 / (u.grid().h() * u.grid().h());
  GridVector out(u.grid());
  const long n = static_cast<long>(u.size());
  for (long j = 0; j < n; ++j) {
    out[static_cast<std::size_t>(j)] =
        (u.periodic(j + 1) - 2.0 * u.periodic(j) + u.periodic(j - 1)) * inv_h2;
  }
  return out;
}

double default_ode_step(const GridSpec& grid) { return 0.1 * grid.h() * grid.h() / 4.0; }

GridVector ode_integrate(const GridVector& u0, double T, double dt, const SchemeConfig& config) {
  require(u0.grid() == config.grid(), kModule, "grid mismatch between data and scheme");
  require(dt > 0.0, kModule, "time step must be positive");
  require(T >= 0.0, kModule, "integration horizon must be nonnegative");
  const double h = u0.grid().h();
  require(dt * 4.0 / (h * h) <= 0.5, kModule,
          "time step violates stability bound 4 dt / h^2 <= 0.5 (dt=" + std::to_string(dt) + ")");

  const long steps = static_cast<long>(std::ceil(T / dt - 1e-9));
  GridVector u = u0;
  if (steps <= 0) return u;
  const double step = T / static_cast<double>(steps);
  const cplx rate(config.viscosity(), 1.0);
  auto rhs = [&](const GridVector& v) {
    GridVector d = discrete_laplacian(v);
    for (auto& x : d.values()) x *= rate;
    return d;
  };

  for (long s = 0; s < steps; ++s) {
    const GridVector k1 = rhs(u);
    GridVector stage = u;
    axpy(stage, 0.5 * step, k1);
    const GridVector k2 = rhs(stage);
    stage = u;
    axpy(stage, 0.5 * step, k2);
    const GridVector k3 = rhs(stage);
    stage = u;
    axpy(stage, step, k3);
    const GridVector k4 = rhs(stage);
    for (std::size_t j = 0; j < u.size(); ++j) {
      u[j] += step / 6.0 * (k1[j] + 2.0 * k2[j] + 2.0 * k3[j] + k4[j]);
    }
  }
  return u;
}

std::pair<SpectralVector, SpectralVector> split_low_high(const SpectralVector& u, int cutoff) {
  const GridSpec& grid = u.grid();
  require(cutoff >= 0 && cutoff <= grid.half(), kModule, "cutoff must lie in [0, N/2]");
  SpectralVector low(grid), high(grid);
  for (int k = -grid.half(); k <= grid.half(); ++k) {
    (std::abs(k) <= cutoff ? low : high)[k] = u[k];
  }
  return {std::move(low), std::move(high)};
}

std::pair<SpectralVector, SpectralVector> split_low_high(const SpectralVector& u) {
  return split_low_high(u, u.grid().N() / 8);
}

}  // namespace schrodinger_lab
