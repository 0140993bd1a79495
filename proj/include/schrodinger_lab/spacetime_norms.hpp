#pragma once

// The mixed norm ||u||_{L^4(0,T; L^4(T_h))} of a scheme solution, computed two
// independent ways:
//  * analytic: by orthogonality, ||u(t)||_4^4 = sum_r |c_r(t)|^2 with
//    c_r(t) = sum_{n1+n2=r mod (N+1)} u0(n1) u0(n2) exp(-(i+a) t (p_h(n1)+p_h(n2))),
//    and every time integral of a cross term has a closed form. Sums only wrap
//    when the data reaches past |n| = N/4;
//  * quadrature: composite Simpson on t -> ||u(t)||_4^4 from node values.

#include <cstdint>
#include <span>

#include "schrodinger_lab/schemes.hpp"
#include "schrodinger_lab/spectral_core.hpp"

namespace schrodinger_lab {

struct PhaseIntegralParams {
  double q = 0.0;  // oscillation frequency
  double s = 0.0;  // damping rate, >= 0
  double T = 1.0;  // horizon, > 0
};

// |T (s + i q)| below this switches to the three-term series.
inline constexpr double kSeriesThreshold = 1e-8;

// Exact value of int_0^T exp(-t (s + i q)) dt.
cplx damped_phase_integral(const PhaseIntegralParams& p);

struct MixedNormResult {
  double value = 0.0;         // (fourth_power)^(1/4)
  double fourth_power = 0.0;  // int_0^T ||u(t)||_4^4 dt
  double imag_residual = 0.0;
  std::int64_t panels = 0;    // quadrature only
};

MixedNormResult l4_mixed_analytic(const SpectralVector& u0, double T, const SchemeConfig& config);

struct QuadratureOptions {
  // Starting panel count; 0 picks max(64, ceil(T q_max / pi)), q_max = 8(N+1)^2.
  std::int64_t panels = 0;
  bool auto_refine = true;
  double rel_tol = 1e-8;
  std::int64_t max_panels = std::int64_t{1} << 26;
};

std::int64_t default_quadrature_panels(const GridSpec& grid, double T);

MixedNormResult l4_mixed_quadrature(const SpectralVector& u0, double T, const SchemeConfig& config,
                                    const QuadratureOptions& options = {});

// Number of (n1,n2,n3,n4) in modes^4 with n1+n2 = n3+n4.
std::int64_t resonant_quadruple_count(std::span<const long> modes);

}  // namespace schrodinger_lab
