#include "schrodinger_lab/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <sstream>

#include "schrodinger_lab/errors.hpp"

namespace schrodinger_lab {
namespace {

constexpr const char* kModule = "experiments";

void require_N_list(std::span<const int> Ns, std::size_t min_count) {
  require(Ns.size() >= min_count, kModule,
          "need at least " + std::to_string(min_count) + " values of N");
  for (std::size_t i = 0; i < Ns.size(); ++i) {
    require(Ns[i] >= 8 && Ns[i] % 2 == 0, kModule,
            "every N must be even and >= 8, got " + std::to_string(Ns[i]));
    if (i > 0) require(Ns[i] > Ns[i - 1], kModule, "N list must be strictly increasing");
  }
}

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

double ratio_for(const SpectralVector& u0, double T, const SchemeConfig& config) {
  const double l2 = std::sqrt(u0.energy());
  return l4_mixed_analytic(u0, T, config).value / l2;
}

void summarize(UniformityReport& report) {
  report.per_N.clear();
  for (const UniformityRow& row : report.rows) {
    if (report.per_N.empty() || report.per_N.back().N != row.N) {
      report.per_N.push_back({row.N, row.ratio, row.ratio});
    } else {
      auto& agg = report.per_N.back();
      agg.max_ratio = std::max(agg.max_ratio, row.ratio);
      agg.min_ratio = std::min(agg.min_ratio, row.ratio);
    }
  }
  if (report.per_N.empty()) return;
  double lo = std::numeric_limits<double>::infinity();
  double hi = 0.0;
  for (const auto& agg : report.per_N) {
    lo = std::min(lo, agg.max_ratio);
    hi = std::max(hi, agg.max_ratio);
  }
  report.global_max = hi;
  report.relative_spread = lo > 0.0 ? (hi - lo) / lo : std::numeric_limits<double>::infinity();
  report.baseline_max = report.per_N.front().max_ratio;
  if (report.per_N.size() > 1) {
    report.baseline_max = std::max(report.baseline_max, report.per_N[1].max_ratio);
  }
}

std::vector<long> full_spectrum(int N) {
  std::vector<long> modes;
  for (long n = -N / 2; n <= N / 2; ++n) modes.push_back(n);
  return modes;
}

std::string format_number(double x) {
  std::ostringstream os;
  os << x;
  return os.str();
}

}  // namespace

LambdaSet build_lambda_set(int N, double alpha) {
  require(alpha > 0.0 && alpha < 1.0, kModule, "alpha must lie in (0, 1)");
  require(N >= 8 && N % 2 == 0, kModule, "Lambda_N needs even N >= 8");
  LambdaSet set{N, alpha, {}};
  const double radius = std::pow(static_cast<double>(N), alpha);
  const double center = N / 4.0;
  for (long n = -N / 2; n <= N / 2; ++n) {
    if (std::abs(static_cast<double>(n) - center) < radius) set.members.push_back(n);
  }
  return set;
}

SpectralVector blowup_initial(const LambdaSet& set) {
  SpectralVector u(make_grid(set.N));
  for (long n : set.members) u.at(static_cast<int>(n)) = 1.0;
  return u;
}

PowerLawFit fit_power_law(std::span<const Point2> points) {
  require(points.size() >= 3, kModule, "power-law fit needs at least 3 points");
  double sx = 0.0, sy = 0.0;
  for (const auto& p : points) {
    require(p.x > 0.0 && p.y > 0.0, kModule, "power-law fit needs positive data");
    sx += std::log(p.x);
    sy += std::log(p.y);
  }
  const double n = static_cast<double>(points.size());
  const double mx = sx / n, my = sy / n;
  double sxx = 0.0, sxy = 0.0;
  for (const auto& p : points) {
    const double dx = std::log(p.x) - mx;
    sxx += dx * dx;
    sxy += dx * (std::log(p.y) - my);
  }
  require(sxx > 0.0, kModule, "power-law fit needs distinct x values");
  PowerLawFit fit;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  for (const auto& p : points) {
    fit.residual = std::max(
        fit.residual, std::abs(std::log(p.y) - (fit.slope * std::log(p.x) + fit.intercept)));
  }
  return fit;
}

double max_resonant_q(const GridSpec& grid, std::span<const long> modes) {
  const std::vector<long> sorted(modes.begin(), modes.end());
  auto member = [&](long n) { return std::binary_search(sorted.begin(), sorted.end(), n); };
  double q_max = 0.0;
  for (long n1 : sorted) {
    for (long n2 : sorted) {
      for (long n3 : sorted) {
        const long n4 = n1 + n2 - n3;
        if (!member(n4)) continue;
        q_max = std::max(q_max, std::abs(q_h(grid, {n1, n2, n3, n4})));
      }
    }
  }
  return q_max;
}

BlowupReport run_blowup(double alpha, std::span<const int> Ns, double T) {
  require(alpha > 0.0 && alpha < 1.0 / 3.0, kModule,
          "blow-up construction requires 0 < alpha < 1/3 so that max |q_h| ~ N^(3 alpha - 1) "
          "vanishes as N grows");
  require(T > 0.0, kModule, "horizon T must be positive");
  require_N_list(Ns, 3);

  BlowupReport report;
  report.alpha = alpha;
  report.T = T;
  std::vector<Point2> points;
  for (int N : Ns) {
    const LambdaSet set = build_lambda_set(N, alpha);
    const GridSpec grid = make_grid(N);
    const SpectralVector u0 = blowup_initial(set);
    const MixedNormResult mixed = l4_mixed_analytic(u0, T, SchemeConfig::conservative(grid));

    BlowupRow row;
    row.N = N;
    row.lambda_size = set.size();
    row.l2_initial = lp_norm(idft(u0), 2.0);
    row.l4_mixed = mixed.value;
    row.ratio = mixed.value / row.l2_initial;
    row.fourth_power = mixed.fourth_power;
    row.resonant_count = resonant_quadruple_count(set.members);
    row.q_max = max_resonant_q(grid, set.members);
    row.mechanism_bound = std::cos(T * row.q_max) * T * static_cast<double>(row.resonant_count);
    report.rows.push_back(row);
    points.push_back({static_cast<double>(N), row.ratio});
  }
  report.fit = fit_power_law(points);
  return report;
}

std::uint64_t job_seed(std::uint64_t seed, int N, std::uint64_t trial) {
  std::uint64_t s = splitmix64(seed);
  s = splitmix64(s ^ static_cast<std::uint64_t>(N));
  return splitmix64(s ^ (trial * 0xd1342543de82ef95ULL));
}

SpectralVector gaussian_data(const GridSpec& grid, std::span<const long> modes,
                             std::uint64_t seed, std::uint64_t trial) {
  require(!modes.empty(), kModule, "random data needs at least one mode");
  std::mt19937_64 engine(job_seed(seed, grid.N(), trial));
  std::normal_distribution<double> gauss(0.0, std::sqrt(0.5));
  SpectralVector u(grid);
  for (long n : modes) {
    const double re = gauss(engine);
    const double im = gauss(engine);
    u.at(static_cast<int>(n)) = cplx(re, im);
  }
  const double norm = std::sqrt(u.energy());
  u *= 1.0 / norm;
  return u;
}

bool bounded(const UniformityReport& report, double factor) {
  return report.global_max <= factor * report.baseline_max;
}

std::vector<long> filtered_modes(int N, double lambda) {
  const long cut = static_cast<long>(std::floor(lambda * N));
  std::vector<long> modes;
  for (long n = -cut; n <= cut; ++n) modes.push_back(n);
  return modes;
}

std::vector<long> band_modes(int N, double epsilon) {
  std::vector<long> modes;
  for (long n = -N / 2; n <= N / 2; ++n) {
    if (std::abs(std::abs(static_cast<double>(n)) - N / 4.0) >= epsilon * N) modes.push_back(n);
  }
  return modes;
}

UniformityReport run_filter(const FilterOptions& options) {
  if (options.band_epsilon) {
    require(*options.band_epsilon > 0.0 && *options.band_epsilon < 0.25, kModule,
            "band filter requires 0 < epsilon < 1/4");
  } else {
    require(options.lambda > 0.0 && options.lambda < 0.25, kModule,
            "filtered data requires 0 < lambda < 1/4");
  }
  require(options.trials >= 1, kModule, "trials must be >= 1");
  require(options.T > 0.0, kModule, "horizon T must be positive");
  require_N_list(options.Ns, 1);

  UniformityReport report;
  report.scheme = "conservative";
  report.rule = options.band_epsilon ? "band_epsilon=" + format_number(*options.band_epsilon)
                                     : "lambda=" + format_number(options.lambda);
  report.T = options.T;
  for (int N : options.Ns) {
    const GridSpec grid = make_grid(N);
    const auto modes =
        options.band_epsilon ? band_modes(N, *options.band_epsilon) : filtered_modes(N, options.lambda);
    const SchemeConfig config = SchemeConfig::conservative(grid);
    for (int trial = 0; trial < options.trials; ++trial) {
      const SpectralVector u0 =
          gaussian_data(grid, modes, options.seed, static_cast<std::uint64_t>(trial));
      report.rows.push_back({N, trial, ratio_for(u0, options.T, config)});
    }
  }
  summarize(report);
  return report;
}

double ViscosityRule::a(const GridSpec& grid) const {
  return kind == Kind::linear ? value * grid.h() : std::pow(grid.h(), value);
}

std::string ViscosityRule::describe() const {
  return kind == Kind::linear ? "a=" + format_number(value) + "*h"
                              : "a=h^" + format_number(value);
}

UniformityReport run_viscous(const ViscousOptions& options) {
  require(options.rule.value > 0.0, kModule,
          options.rule.kind == ViscosityRule::Kind::linear
              ? "viscosity constant c must be positive"
              : "viscosity exponent beta must be positive");
  require(options.trials >= 1, kModule, "trials must be >= 1");
  require(options.T > 0.0, kModule, "horizon T must be positive");
  require_N_list(options.Ns, 1);
  const std::vector<int>& contrast_Ns =
      options.blowup_Ns.empty() ? options.Ns : options.blowup_Ns;
  if (options.include_blowup_data) {
    require(options.alpha > 0.0 && options.alpha < 1.0, kModule, "alpha must lie in (0, 1)");
    require_N_list(contrast_Ns, 1);
  }

  UniformityReport report;
  report.scheme = "viscous";
  report.rule = options.rule.describe();
  report.T = options.T;
  for (int N : options.Ns) {
    const GridSpec grid = make_grid(N);
    const auto modes = full_spectrum(N);
    const SchemeConfig config = SchemeConfig::viscous(grid, options.rule.a(grid));
    for (int trial = 0; trial < options.trials; ++trial) {
      const SpectralVector u0 =
          gaussian_data(grid, modes, options.seed, static_cast<std::uint64_t>(trial));
      report.rows.push_back({N, trial, ratio_for(u0, options.T, config)});
    }
  }
  summarize(report);

  if (options.include_blowup_data) {
    for (int N : contrast_Ns) {
      const GridSpec grid = make_grid(N);
      const LambdaSet set = build_lambda_set(N, options.alpha);
      const SpectralVector u0 = blowup_initial(set);
      report.contrast.push_back(
          {N, set.size(),
           ratio_for(u0, options.T, SchemeConfig::viscous(grid, options.rule.a(grid))),
           ratio_for(u0, options.T, SchemeConfig::conservative(grid))});
    }
  }
  return report;
}

GapReport gap_report(int N, double lambda, long r, double slack) {
  require(lambda > 0.0 && lambda < 0.25, kModule, "gap report requires 0 < lambda < 1/4");
  const GridSpec grid = make_grid(N);
  const long lambda_N = static_cast<long>(std::floor(lambda * N));
  require(r >= 0 && r <= 2 * lambda_N, kModule,
          "r must lie in [0, 2 floor(lambda N)] = [0, " + std::to_string(2 * lambda_N) + "]");

  GapReport rep;
  rep.N = N;
  rep.lambda = lambda;
  rep.r = r;
  rep.lambda_N = lambda_N;
  rep.split = r / 2;

  const long lo = r - lambda_N;
  const MuSequence seq = mu_gap_seq(grid, r, lo, lambda_N);
  for (long n = lo; n <= lambda_N; ++n) rep.profile.push_back({n, seq.value(n)});

  const double scale = static_cast<double>(N + 1);
  const double s1 = std::sin(std::numbers::pi / scale);
  rep.constant = 8.0 * scale * scale * std::cos(2.0 * lambda * std::numbers::pi) * s1 * s1;

  rep.argmax = lo;
  for (const auto& row : rep.profile) {
    if (row.mu > seq.value(rep.argmax)) rep.argmax = row.n;
  }

  rep.min_increasing_gap = std::numeric_limits<double>::infinity();
  rep.max_decreasing_gap = -std::numeric_limits<double>::infinity();
  bool strictly_up = true, strictly_down = true;
  for (long n = lo; n < lambda_N; ++n) {
    const double d = seq.difference(n);
    const double closed = mu_gap_closed_form(grid, r, n);
    rep.closed_form_error =
        std::max(rep.closed_form_error, std::abs(d - closed) / std::max(std::abs(closed), rep.constant));
    if (n <= rep.split - 1) {
      rep.min_increasing_gap = std::min(rep.min_increasing_gap, d);
      strictly_up = strictly_up && d > 0.0;
    } else if (n >= rep.split + 1) {
      rep.max_decreasing_gap = std::max(rep.max_decreasing_gap, d);
      strictly_down = strictly_down && d < 0.0;
    }
  }
  rep.increasing_ok = rep.min_increasing_gap >= rep.constant * (1.0 - slack);
  rep.decreasing_ok = rep.max_decreasing_gap <= -rep.constant * (1.0 - slack);
  rep.unimodal = strictly_up && strictly_down && rep.argmax == rep.split;
  return rep;
}

PairBoundResult pair_bound_report(int N, long r) {
  const GridSpec grid = make_grid(N);
  require(r >= 0 && r <= N / 4, kModule,
          "r must lie in [0, floor(N/4)] = [0, " + std::to_string(N / 4) + "]");
  PairBoundResult res;
  res.N = N;
  res.r = r;
  res.min_ratio = std::numeric_limits<double>::infinity();
  const long lo = r - N / 8;
  const long hi = r / 2;
  for (long n = lo; n <= hi; ++n) {
    for (long m = n + 1; m <= hi; ++m) {
      if (n + m == r) continue;
      const double denom = static_cast<double>(std::abs(n - m)) * std::abs(r - n - m);
      const double ratio = std::abs(mu_pair(grid, r, n, m)) / denom;
      ++res.pairs;
      if (ratio < res.min_ratio) {
        res.min_ratio = ratio;
        res.argmin_n = n;
        res.argmin_m = m;
      }
    }
  }
  return res;
}

}  // namespace schrodinger_lab
