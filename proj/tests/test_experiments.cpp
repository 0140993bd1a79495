#include <doctest.h>

#include <cmath>
#include <numbers>

#include "oracles.hpp"
#include "schrodinger_lab/errors.hpp"
#include "schrodinger_lab/experiments.hpp"

using namespace schrodinger_lab;

TEST_CASE("build_lambda_set") {
  const LambdaSet fig2 = build_lambda_set(500, 0.25);
  std::vector<long> expected;
  for (long n = 121; n <= 129; ++n) expected.push_back(n);
  CHECK(fig2.members == expected);

  CHECK(build_lambda_set(128, 0.3).size() == 9);

  // N^alpha <= 1: only integers within distance < 1 of N/4.
  CHECK(build_lambda_set(64, 0.001).members == std::vector<long>{15, 16, 17});
  CHECK(build_lambda_set(66, 0.001).members == std::vector<long>{16, 17});

  for (int N = 8; N <= 2048; N *= 2) {
    for (double alpha : {0.1, 0.25, 0.3, 0.5, 0.9}) {
      const LambdaSet s = build_lambda_set(N, alpha);
      const double w = std::pow(N, alpha);
      CHECK(!s.members.empty());
      INFO("N=" << N << " alpha=" << alpha << " size=" << s.size());
      // window |n - N/4| < N^alpha, clipped at N/2
      if (N / 4.0 + w <= N / 2.0) CHECK(static_cast<double>(s.size()) >= 2.0 * w - 2.0);
      else CHECK(s.members.back() == N / 2);
      CHECK(static_cast<double>(s.size()) <= 2.0 * w + 1.0);
      for (long n : s.members) CHECK(std::abs(n) <= N / 2);
    }
  }
  CHECK_THROWS_AS(build_lambda_set(128, 0.0), PreconditionError);
  CHECK_THROWS_AS(build_lambda_set(128, 1.0), PreconditionError);
}

TEST_CASE("blowup_initial") {
  const LambdaSet s = build_lambda_set(500, 0.25);
  const SpectralVector u = blowup_initial(s);
  CHECK(u.energy() == 9.0);
  CHECK(lp_norm(idft(u), 2.0) == doctest::Approx(3.0).epsilon(1e-13));
  const LambdaSet empty{64, 0.3, {}};
  CHECK(blowup_initial(empty).energy() == 0.0);
}

TEST_CASE("fit_power_law") {
  std::vector<Point2> exact;
  for (double x : {2.0, 5.0, 11.0, 40.0}) exact.push_back({x, 2.0 * std::sqrt(x)});
  const PowerLawFit f = fit_power_law(exact);
  CHECK(f.slope == doctest::Approx(0.5).epsilon(1e-13));
  CHECK(f.intercept == doctest::Approx(std::log(2.0)).epsilon(1e-13));
  CHECK(f.residual < 1e-13);

  const std::vector<Point2> flat{{1, 3}, {2, 3}, {4, 3}};
  CHECK(std::abs(fit_power_law(flat).slope) < 1e-15);

  const std::vector<Point2> two{{1, 1}, {2, 2}};
  CHECK_THROWS_AS(fit_power_law(two), PreconditionError);
  const std::vector<Point2> bad{{1, 1}, {2, -2}, {3, 3}};
  CHECK_THROWS_AS(fit_power_law(bad), PreconditionError);
}

TEST_CASE("run_blowup") {
  const std::vector<int> Ns{128, 256, 512, 1024};
  const BlowupReport rep = run_blowup(0.3, Ns, 1.0);
  REQUIRE(rep.rows.size() == 4);
  for (const auto& row : rep.rows) {
    CHECK(row.l2_initial * row.l2_initial == doctest::Approx(static_cast<double>(row.lambda_size)).epsilon(1e-10));
    CHECK(row.resonant_count == oracle::count_resonant(build_lambda_set(row.N, 0.3).members));
    CHECK(row.ratio > 0.0);
  }
  for (std::size_t i = 1; i < rep.rows.size(); ++i) {
    if (rep.rows[i].lambda_size > rep.rows[i - 1].lambda_size) {
      CHECK(rep.rows[i].ratio >= rep.rows[i - 1].ratio);
    }
  }
  CHECK(rep.fit.slope > 0.0);

  SUBCASE("ratio is invariant under scaling the datum") {
    const LambdaSet s = build_lambda_set(256, 0.3);
    SpectralVector u = blowup_initial(s);
    const auto config = SchemeConfig::conservative(u.grid());
    const double base = l4_mixed_analytic(u, 1.0, config).value / std::sqrt(u.energy());
    u *= cplx(-2.5, 1.0);
    CHECK(l4_mixed_analytic(u, 1.0, config).value / std::sqrt(u.energy()) ==
          doctest::Approx(base).epsilon(1e-12));
  }
  SUBCASE("the -N/4 window gives the same ratio") {
    const LambdaSet s = build_lambda_set(512, 0.3);
    SpectralVector mirrored(make_grid(512));
    for (long n : s.members) mirrored[static_cast<int>(-n)] = 1.0;
    const auto config = SchemeConfig::conservative(mirrored.grid());
    CHECK(l4_mixed_analytic(mirrored, 1.0, config).fourth_power ==
          doctest::Approx(rep.rows[2].fourth_power).epsilon(1e-12));
  }
  SUBCASE("lower bound holds when T q_max is small") {
    // Short horizon: every cos(t q) stays near 1, so the fourth power is near T * count.
    const double T = 0.002;
    const BlowupReport short_rep = run_blowup(0.3, Ns, T);
    for (const auto& row : short_rep.rows) {
      CHECK(T * row.q_max < 0.2);
      CHECK(row.fourth_power >= 0.9 * T * static_cast<double>(row.resonant_count));
      CHECK(row.fourth_power >= row.mechanism_bound);
    }
  }
  CHECK_THROWS_AS(run_blowup(1.0 / 3.0, Ns, 1.0), PreconditionError);
  CHECK_THROWS_AS(run_blowup(0.3, std::vector<int>{128, 64, 256}, 1.0), PreconditionError);
  CHECK_THROWS_AS(run_blowup(0.3, std::vector<int>{128, 256}, 1.0), PreconditionError);
}

TEST_CASE("property: max |q_h| over Lambda_N quadruples scales like N^(3 alpha - 1)") {
  const double alpha = 0.3;
  std::vector<double> K;
  for (int N : {128, 256, 512, 1024, 2048, 4096, 8192}) {
    const GridSpec grid = make_grid(N);
    const double q = max_resonant_q(grid, build_lambda_set(N, alpha).members);
    K.push_back(q / std::pow(N, 3 * alpha - 1));
  }
  const auto [lo, hi] = std::minmax_element(K.begin(), K.end());
  CHECK(*hi / *lo < 2.0);
}

TEST_CASE("gaussian data") {
  const GridSpec grid = make_grid(64);
  const auto modes = filtered_modes(64, 0.2);
  CHECK(modes.size() == 25);
  const SpectralVector a = gaussian_data(grid, modes, 42, 3);
  const SpectralVector b = gaussian_data(grid, modes, 42, 3);
  const SpectralVector c = gaussian_data(grid, modes, 42, 4);
  CHECK(a.energy() == doctest::Approx(1.0).epsilon(1e-14));
  bool same = true, differs = false;
  for (int k = -32; k <= 32; ++k) {
    same = same && a[k] == b[k];
    differs = differs || a[k] != c[k];
    if (std::abs(k) > 12) CHECK(a[k] == cplx(0.0));
  }
  CHECK(same);
  CHECK(differs);
  CHECK(job_seed(1, 128, 0) != job_seed(1, 256, 0));
  CHECK(job_seed(1, 128, 0) != job_seed(2, 128, 0));
}

TEST_CASE("band_modes") {
  const auto modes = band_modes(64, 0.1);
  for (long n : modes) CHECK(std::abs(std::abs(n) - 16.0) >= 6.4);
  CHECK(std::find(modes.begin(), modes.end(), 16) == modes.end());
  CHECK(std::find(modes.begin(), modes.end(), 0) != modes.end());
}

TEST_CASE("run_filter") {
  FilterOptions opt;
  opt.lambda = 0.2;
  opt.Ns = {32, 64, 128};
  opt.trials = 4;
  opt.seed = 5;
  const UniformityReport rep = run_filter(opt);
  CHECK(rep.rows.size() == 12);
  CHECK(rep.per_N.size() == 3);
  for (const auto& row : rep.rows) CHECK(row.ratio >= 0.0);
  CHECK(bounded(rep, 1.3));

  const UniformityReport again = run_filter(opt);
  for (std::size_t i = 0; i < rep.rows.size(); ++i) CHECK(rep.rows[i].ratio == again.rows[i].ratio);

  SUBCASE("a single admissible mode gives ratio T^(1/4)") {
    FilterOptions single = opt;
    single.lambda = 0.01;  // floor(0.01 N) = 0 for N < 100
    single.Ns = {32, 64};
    single.T = 0.6;
    for (const auto& row : run_filter(single).rows) {
      CHECK(row.ratio == doctest::Approx(std::pow(0.6, 0.25)).epsilon(1e-14));
    }
  }
  SUBCASE("band mode") {
    FilterOptions band = opt;
    band.band_epsilon = 0.1;
    const UniformityReport b = run_filter(band);
    CHECK(b.rows.size() == 12);
    CHECK(b.rule == "band_epsilon=0.1");
  }
  FilterOptions bad = opt;
  bad.lambda = 0.25;
  CHECK_THROWS_AS(run_filter(bad), PreconditionError);
  bad = opt;
  bad.trials = 0;
  CHECK_THROWS_AS(run_filter(bad), PreconditionError);
}

TEST_CASE("run_viscous") {
  ViscousOptions opt;
  opt.Ns = {32, 64, 128};
  opt.trials = 3;
  opt.include_blowup_data = true;
  opt.blowup_Ns = {128, 256, 512, 1024};
  const UniformityReport rep = run_viscous(opt);
  CHECK(rep.rows.size() == 9);
  CHECK(rep.contrast.size() == 4);
  CHECK(bounded(rep, 1.3));
  for (const auto& c : rep.contrast) CHECK(c.viscous_ratio < c.conservative_ratio);
  CHECK(rep.contrast.back().viscous_ratio <= rep.contrast.front().viscous_ratio);
  CHECK(rep.contrast.back().conservative_ratio > rep.contrast.front().conservative_ratio);

  const UniformityReport again = run_viscous(opt);
  for (std::size_t i = 0; i < rep.rows.size(); ++i) CHECK(rep.rows[i].ratio == again.rows[i].ratio);

  SUBCASE("large viscosity drives the ratio to zero without a mean mode") {
    const GridSpec grid = make_grid(32);
    SpectralVector u(grid);
    u[3] = 1.0;
    u[-7] = 0.5;
    double previous = std::numeric_limits<double>::infinity();
    for (double c : {1.0, 1e2, 1e4, 1e6, 1e8}) {
      const double r = l4_mixed_analytic(u, 1.0, SchemeConfig::viscous_linear(grid, c)).value;
      CHECK(r < previous);
      CHECK(r > 0.0);
      previous = r;
    }
    CHECK(previous < 1e-2);
  }
  SUBCASE("exploratory power rule") {
    ViscousOptions p = opt;
    p.rule = ViscosityRule::power(1.5);
    p.include_blowup_data = false;
    const UniformityReport r = run_viscous(p);
    CHECK(r.rule == "a=h^1.5");
    CHECK(r.rows.size() == 9);
  }
  ViscousOptions bad = opt;
  bad.rule = ViscosityRule::linear(0.0);
  CHECK_THROWS_AS(run_viscous(bad), PreconditionError);
}

TEST_CASE("gap_report") {
  SUBCASE("Figure 3 setting") {
    const GapReport g = gap_report(150, 0.2, 25);
    CHECK(g.lambda_N == 30);
    CHECK(g.split == 12);
    CHECK(g.argmax == 12);
    CHECK(g.profile.size() == 36);
    CHECK(g.profile.front().n == -5);
    CHECK(g.profile.back().n == 30);
    CHECK(g.unimodal);
    CHECK(g.increasing_ok);
    CHECK(g.decreasing_ok);
    CHECK(g.closed_form_error < 1e-9);
    const double c = 8.0 * 151.0 * 151.0 * std::cos(0.4 * std::numbers::pi) *
                     std::pow(std::sin(std::numbers::pi / 151.0), 2);
    CHECK(g.constant == doctest::Approx(c).epsilon(1e-14));
  }
  SUBCASE("r = 0 peaks at n = 0") {
    const GapReport g = gap_report(100, 0.2, 0);
    CHECK(g.argmax == 0);
    CHECK(g.unimodal);
    for (const auto& row : g.profile) {
      CHECK(row.mu == doctest::Approx(-2.0 * symbol_p(make_grid(100), row.n)).epsilon(1e-15));
    }
  }
  SUBCASE("proven inequality, exhaustive sweep") {
    for (int N : {64, 128, 256, 512}) {
      const long lambda_N = static_cast<long>(std::floor(0.2 * N));
      for (long r = 0; r <= 2 * lambda_N; ++r) {
        const GapReport g = gap_report(N, 0.2, r);
        INFO("N=" << N << " r=" << r);
        CHECK(g.increasing_ok);
        CHECK(g.decreasing_ok);
        CHECK(g.unimodal);
      }
    }
  }
  CHECK_THROWS_AS(gap_report(150, 0.2, 61), PreconditionError);
  CHECK_THROWS_AS(gap_report(150, 0.2, -1), PreconditionError);
  CHECK_THROWS_AS(gap_report(150, 0.25, 10), PreconditionError);
}

TEST_CASE("pair_bound_report") {
  CHECK(kPairBoundFloor == doctest::Approx(16.0 * std::numbers::sqrt2).epsilon(1e-15));
  for (int N : {64, 128, 256}) {
    for (long r = 0; r <= N / 4; ++r) {
      const PairBoundResult p = pair_bound_report(N, r);
      INFO("N=" << N << " r=" << r);
      CHECK(p.min_ratio >= kPairBoundFloor - 1e-6);
    }
  }
  SUBCASE("adjacent pair with n + m = r - 1: ratio is |mu| itself") {
    const int N = 128;
    const GridSpec grid = make_grid(N);
    const long r = 20, n = 9, m = 10;  // |n - m| = 1, r - n - m = 1, both in {4..10}
    const double direct = std::abs(q_h(grid, {n, r - n, m, r - m}));
    CHECK(std::abs(mu_pair(grid, r, n, m)) == doctest::Approx(direct).epsilon(1e-12));
    CHECK(pair_bound_report(N, r).min_ratio <= direct);
  }
  SUBCASE("symmetric in n and m") {
    const GridSpec grid = make_grid(128);
    for (long n = -8; n <= 8; ++n)
      for (long m = -8; m <= 8; ++m)
        CHECK(std::abs(mu_pair(grid, 16, n, m)) == doctest::Approx(std::abs(mu_pair(grid, 16, m, n))).epsilon(1e-14));
  }
  CHECK_THROWS_AS(pair_bound_report(64, 17), PreconditionError);
  CHECK_THROWS_AS(pair_bound_report(64, -1), PreconditionError);
}
