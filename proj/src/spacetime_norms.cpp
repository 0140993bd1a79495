#include "schrodinger_lab/spacetime_norms.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <set>
#include <vector>

#include "schrodinger_lab/errors.hpp"
#include "schrodinger_lab/parallel.hpp"

namespace schrodinger_lab {
namespace {

constexpr const char* kModule = "spacetime_norms";

// Below this |T z| the factored form 1 - E_P conj(E_Q) loses digits; fall back
// to damped_phase_integral, which is accurate everywhere.
constexpr double kFactoredThreshold = 1e-3;

struct PairTerm {
  cplx amplitude;  // multiplicity * u0(n) u0(r-n)
  double omega;    // p_h(n) + p_h(r-n)
  cplx decay;      // exp(-T (a+i) omega)
};

cplx bucket_integral(std::span<const PairTerm> terms, double a, double T) {
  cplx sum = 0.0;
  for (const PairTerm& P : terms) {
    cplx row = 0.0;
    for (const PairTerm& Q : terms) {
      const double s = a * (P.omega + Q.omega);
      const double q = P.omega - Q.omega;
      cplx J;
      if (T * std::hypot(s, q) < kFactoredThreshold) {
        J = damped_phase_integral({q, s, T});
      } else {
        const cplx numerator = 1.0 - P.decay * std::conj(Q.decay);
        J = numerator * cplx(s, -q) / (s * s + q * q);
      }
      row += std::conj(Q.amplitude) * J;
    }
    sum += P.amplitude * row;
  }
  return sum;
}

MixedNormResult finish(double fourth_power, double imag) {
  MixedNormResult res;
  res.fourth_power = fourth_power;
  res.imag_residual = std::abs(imag);
  res.value = std::pow(std::max(fourth_power, 0.0), 0.25);
  return res;
}

}  // namespace

cplx damped_phase_integral(const PhaseIntegralParams& p) {
  const cplx z(p.s, p.q);
  const cplx x = p.T * z;
  if (std::abs(x) < kSeriesThreshold) {
    return p.T * (1.0 - x / 2.0 + x * x / 6.0);
  }
  // 1 - exp(-x) split so that neither part cancels for small |x|.
  const double alpha = x.real();
  const double beta = x.imag();
  const double half_sin = std::sin(0.5 * beta);
  const cplx one_minus_exp(2.0 * half_sin * half_sin - std::cos(beta) * std::expm1(-alpha),
                           std::exp(-alpha) * std::sin(beta));
  return one_minus_exp / z;
}

MixedNormResult l4_mixed_analytic(const SpectralVector& u0, double T, const SchemeConfig& config) {
  require(u0.grid() == config.grid(), kModule, "grid mismatch between data and scheme");
  require(T > 0.0, kModule, "horizon T must be positive");
  const GridSpec& grid = u0.grid();
  const int half = grid.half();
  const double a = config.viscosity();
  const cplx rate(a, 1.0);

  std::vector<long> active;
  for (int k = -half; k <= half; ++k) {
    if (u0[k] != cplx(0.0)) active.push_back(k);
  }
  if (active.empty()) return finish(0.0, 0.0);

  std::vector<double> omega_of(grid.nodes());
  for (long k : active) omega_of[static_cast<std::size_t>(k + half)] = symbol_p(grid, k);

  // On the grid, phi_n1 phi_n2 conj(phi_n3 phi_n4) sums to zero unless
  // n1 + n2 = n3 + n4 mod (N+1), so pairs are bucketed by residue. For data
  // supported in |n| <= N/4 no sum wraps and this is the plain n1+n2=r grouping.
  const long period = static_cast<long>(grid.nodes());
  std::vector<std::vector<PairTerm>> buckets_terms(grid.nodes());
  for (std::size_t i = 0; i < active.size(); ++i) {
    for (std::size_t j = i; j < active.size(); ++j) {
      const long n = active[i], m = active[j];
      const double multiplicity = (i == j) ? 1.0 : 2.0;
      const double omega = omega_of[static_cast<std::size_t>(n + half)] +
                           omega_of[static_cast<std::size_t>(m + half)];
      const long residue = ((n + m) % period + period) % period;
      buckets_terms[static_cast<std::size_t>(residue)].push_back(
          {multiplicity * u0[static_cast<int>(n)] * u0[static_cast<int>(m)], omega,
           std::exp(-T * rate * omega)});
    }
  }

  std::vector<cplx> buckets(buckets_terms.size());
  parallel_for(buckets.size(), [&](std::size_t idx) {
    buckets[idx] = bucket_integral(buckets_terms[idx], a, T);
  });

  cplx total = 0.0;
  for (const cplx& b : buckets) total += b;
  return finish(total.real(), total.imag());
}

std::int64_t default_quadrature_panels(const GridSpec& grid, double T) {
  const double scale = static_cast<double>(grid.N() + 1);
  const double q_max = 8.0 * scale * scale;
  auto panels = static_cast<std::int64_t>(std::ceil(T * q_max / std::numbers::pi));
  panels = std::max<std::int64_t>(64, panels);
  return panels + (panels % 2);
}

MixedNormResult l4_mixed_quadrature(const SpectralVector& u0, double T, const SchemeConfig& config,
                                    const QuadratureOptions& options) {
  require(u0.grid() == config.grid(), kModule, "grid mismatch between data and scheme");
  require(T > 0.0, kModule, "horizon T must be positive");
  std::int64_t panels = options.panels;
  if (panels == 0) {
    require(options.auto_refine, kModule, "explicit panel count required without auto-refinement");
    panels = default_quadrature_panels(u0.grid(), T);
  }
  require(panels >= 2 && panels % 2 == 0, kModule, "Simpson panel count must be even and >= 2");

  auto integrand = [&](double t) {
    const double norm4 = lp_norm(solution_at_nodes(u0, t, config), 4.0);
    const double sq = norm4 * norm4;
    return sq * sq;
  };
  // Values at t_i = i T / n for the listed indices, reduced in index order.
  auto sum_at = [&](std::int64_t n, std::int64_t first, std::int64_t stride) {
    const std::int64_t count = (n - first + stride - 1) / stride;
    std::vector<double> values(static_cast<std::size_t>(std::max<std::int64_t>(count, 0)));
    parallel_for(values.size(), [&](std::size_t i) {
      const std::int64_t idx = first + static_cast<std::int64_t>(i) * stride;
      values[i] = integrand(T * static_cast<double>(idx) / static_cast<double>(n));
    });
    double s = 0.0;
    for (double v : values) s += v;
    return s;
  };

  const double ends = integrand(0.0) + integrand(T);
  double even_interior = sum_at(panels, 2, 2);
  double odd = sum_at(panels, 1, 2);
  auto simpson = [&](std::int64_t n) {
    return T / static_cast<double>(n) / 3.0 * (ends + 4.0 * odd + 2.0 * even_interior);
  };
  double current = simpson(panels);

  while (options.auto_refine) {
    const std::int64_t refined = 2 * panels;
    if (refined > options.max_panels) {
      throw std::runtime_error("spacetime_norms: Simpson refinement did not converge within " +
                               std::to_string(options.max_panels) + " panels");
    }
    even_interior += odd;
    odd = sum_at(refined, 1, 2);
    panels = refined;
    const double next = simpson(panels);
    const bool converged = std::abs(next - current) <= options.rel_tol * std::abs(next);
    current = next;
    if (converged) break;
  }

  MixedNormResult res = finish(current, 0.0);
  res.panels = panels;
  return res;
}

std::int64_t resonant_quadruple_count(std::span<const long> modes) {
  const std::set<long> unique(modes.begin(), modes.end());
  std::map<long, std::int64_t> pair_sums;
  for (long a : unique) {
    for (long b : unique) ++pair_sums[a + b];
  }
  std::int64_t count = 0;
  for (const auto& [sum, c] : pair_sums) count += c * c;
  return count;
}

}  // namespace schrodinger_lab
