#pragma once

// Desk-scale reproductions of the three L^4 results for the semidiscrete
// schemes: blow-up of the conservative scheme on data concentrated near N/4,
// the uniform bound under spectral filtering |n| <= lambda N, and the uniform
// bound of the viscous scheme with a(h) >= c h. Plus the exponent-gap and
// pairwise-separation diagnostics those bounds rest on.

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "schrodinger_lab/schemes.hpp"
#include "schrodinger_lab/spacetime_norms.hpp"
#include "schrodinger_lab/spectral_core.hpp"

namespace schrodinger_lab {

// {n : |n| <= N/2, |n - N/4| < N^alpha}
struct LambdaSet {
  int N = 0;
  double alpha = 0.0;
  std::vector<long> members;  // sorted

  [[nodiscard]] std::size_t size() const noexcept { return members.size(); }
};

LambdaSet build_lambda_set(int N, double alpha);

// Unit coefficients on the members.
SpectralVector blowup_initial(const LambdaSet& set);

struct PowerLawFit {
  double slope = 0.0;
  double intercept = 0.0;
  double residual = 0.0;  // max |log y - (slope log x + intercept)|
};

struct Point2 {
  double x = 0.0;
  double y = 0.0;
};

// Least squares on (log x, log y); at least three points, all positive.
PowerLawFit fit_power_law(std::span<const Point2> points);

struct BlowupRow {
  int N = 0;
  std::size_t lambda_size = 0;
  double l2_initial = 0.0;
  double l4_mixed = 0.0;
  double ratio = 0.0;
  // Lower-bound mechanism: fourth_power >= cos(T q_max) T resonant_count.
  double fourth_power = 0.0;
  std::int64_t resonant_count = 0;
  double q_max = 0.0;  // max |q_h| over resonant quadruples of the set
  double mechanism_bound = 0.0;
};

struct BlowupReport {
  double alpha = 0.0;
  double T = 0.0;
  std::vector<BlowupRow> rows;
  PowerLawFit fit;
};

// alpha in (0, 1/3); Ns even, >= 8, strictly increasing; at least 3 of them.
BlowupReport run_blowup(double alpha, std::span<const int> Ns, double T);

// Largest |q_h| over resonant quadruples drawn from `modes`.
double max_resonant_q(const GridSpec& grid, std::span<const long> modes);

// Independent standard complex Gaussian coefficients on `modes`, normalized to
// unit L2 norm. The stream depends only on (seed, N, trial).
SpectralVector gaussian_data(const GridSpec& grid, std::span<const long> modes,
                             std::uint64_t seed, std::uint64_t trial);

std::uint64_t job_seed(std::uint64_t seed, int N, std::uint64_t trial);

struct UniformityRow {
  int N = 0;
  int trial = 0;
  double ratio = 0.0;
};

struct UniformityPerN {
  int N = 0;
  double max_ratio = 0.0;
  double min_ratio = 0.0;
};

// Conservative vs viscous behaviour on the blow-up datum.
struct BlowupContrastRow {
  int N = 0;
  std::size_t lambda_size = 0;
  double viscous_ratio = 0.0;
  double conservative_ratio = 0.0;
};

struct UniformityReport {
  std::string scheme;  // "conservative" or "viscous"
  std::string rule;    // e.g. "lambda=0.2", "a=1*h", "a=h^1.5"
  double T = 0.0;
  std::vector<UniformityRow> rows;  // sorted by N then trial
  std::vector<UniformityPerN> per_N;
  double global_max = 0.0;
  // (max - min) / min over the per-N maxima.
  double relative_spread = 0.0;
  // Max of the per-N maxima over the two smallest Ns.
  double baseline_max = 0.0;
  std::vector<BlowupContrastRow> contrast;
};

// global_max <= factor * baseline_max.
bool bounded(const UniformityReport& report, double factor);

struct FilterOptions {
  double lambda = 0.2;  // in (0, 1/4)
  std::vector<int> Ns;
  double T = 1.0;
  int trials = 20;
  std::uint64_t seed = 1;
  // Band mode: data on ||n| - N/4| >= epsilon N instead of |n| <= lambda N.
  std::optional<double> band_epsilon;
};

// Modes |n| <= floor(lambda N).
std::vector<long> filtered_modes(int N, double lambda);
std::vector<long> band_modes(int N, double epsilon);

UniformityReport run_filter(const FilterOptions& options);

struct ViscosityRule {
  enum class Kind { linear, power };
  Kind kind = Kind::linear;
  double value = 1.0;  // c in a = c h, or beta in a = h^beta

  static ViscosityRule linear(double c) { return {Kind::linear, c}; }
  static ViscosityRule power(double beta) { return {Kind::power, beta}; }

  [[nodiscard]] double a(const GridSpec& grid) const;
  [[nodiscard]] std::string describe() const;
};

struct ViscousOptions {
  ViscosityRule rule = ViscosityRule::linear(1.0);
  std::vector<int> Ns;
  double T = 1.0;
  int trials = 20;
  std::uint64_t seed = 1;
  bool include_blowup_data = false;
  double alpha = 0.3;
  // Ns for the blow-up contrast; empty means reuse Ns.
  std::vector<int> blowup_Ns;
};

UniformityReport run_viscous(const ViscousOptions& options);

struct GapProfileRow {
  long n = 0;
  double mu = 0.0;
};

struct GapReport {
  int N = 0;
  double lambda = 0.0;
  long r = 0;
  long lambda_N = 0;  // floor(lambda N)
  long split = 0;     // floor(r / 2)
  long argmax = 0;    // smallest n attaining the maximum of mu_h
  std::vector<GapProfileRow> profile;  // n = r - lambda_N .. lambda_N
  double constant = 0.0;  // 8(N+1)^2 cos(2 lambda pi) sin^2(pi/(N+1))
  // min of mu(n+1) - mu(n) over n = r - lambda_N .. split - 1 (+inf if empty)
  double min_increasing_gap = 0.0;
  // max of mu(n+1) - mu(n) over n = split + 1 .. lambda_N - 1 (-inf if empty)
  double max_decreasing_gap = 0.0;
  // largest |direct difference - closed form| relative to 8(N+1)^2
  double closed_form_error = 0.0;
  bool increasing_ok = false;
  bool decreasing_ok = false;
  bool unimodal = false;
};

// 0 < lambda < 1/4, 0 <= r <= 2 floor(lambda N). Gaps pass at constant * (1 - slack).
GapReport gap_report(int N, double lambda, long r, double slack = 1e-9);

// 16 sqrt(2): 8 cos(pi/4) (2/pi * pi)^2.
inline constexpr double kPairBoundFloor = 22.627416997969522;

struct PairBoundResult {
  int N = 0;
  long r = 0;
  double min_ratio = 0.0;  // +inf when no admissible pair
  long argmin_n = 0;
  long argmin_m = 0;
  std::int64_t pairs = 0;
};

// Min of |mu_pair(r,n,m)| / (|n-m| |r-n-m|) over n != m, n+m != r in
// {r - floor(N/8), ..., floor(r/2)}; 0 <= r <= floor(N/4).
PairBoundResult pair_bound_report(int N, long r);

}  // namespace schrodinger_lab
