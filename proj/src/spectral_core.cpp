#include "schrodinger_lab/spectral_core.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "fast_transform.hpp"
#include "schrodinger_lab/errors.hpp"

namespace schrodinger_lab {
namespace {

constexpr const char* kModule = "spectral_core";

// Hot path: only format the message on failure.
void require_mode(const GridSpec& grid, long n) {
  if (grid.contains_mode(n)) return;
  throw PreconditionError(kModule, "mode index " + std::to_string(n) +
                                       " outside [-N/2, N/2] for N=" + std::to_string(grid.N()));
}

void require_modes(const GridSpec& grid, const Quadruple& q) {
  require_mode(grid, q.n1);
  require_mode(grid, q.n2);
  require_mode(grid, q.n3);
  require_mode(grid, q.n4);
}

double scaled_sine(const GridSpec& grid, long numerator) {
  return std::sin(static_cast<double>(numerator) * std::numbers::pi / (grid.N() + 1));
}

}  // namespace

GridSpec::GridSpec(int N) : N_(N) {
  require(N >= 2 && N % 2 == 0, kModule,
          "N must be an even integer >= 2, got " + std::to_string(N));
}

GridSpec make_grid(int N) { return GridSpec(N); }

GridVector::GridVector(GridSpec grid) : grid_(grid), values_(grid.nodes()) {}

GridVector::GridVector(GridSpec grid, std::vector<cplx> values)
    : grid_(grid), values_(std::move(values)) {
  require(values_.size() == grid_.nodes(), kModule, "grid vector needs N+1 values");
}

const cplx& GridVector::periodic(long j) const noexcept {
  const long n = static_cast<long>(values_.size());
  const long wrapped = ((j % n) + n) % n;
  return values_[static_cast<std::size_t>(wrapped)];
}

SpectralVector::SpectralVector(GridSpec grid) : grid_(grid), coeffs_(grid.nodes()) {}

SpectralVector::SpectralVector(GridSpec grid, std::vector<cplx> flat_coeffs)
    : grid_(grid), coeffs_(std::move(flat_coeffs)) {
  require(coeffs_.size() == grid_.nodes(), kModule, "spectral vector needs N+1 coefficients");
}

cplx& SpectralVector::at(int k) {
  require_mode(grid_, k);
  return (*this)[k];
}

const cplx& SpectralVector::at(int k) const {
  require_mode(grid_, k);
  return (*this)[k];
}

double SpectralVector::energy() const noexcept {
  double sum = 0.0;
  for (const auto& c : coeffs_) sum += std::norm(c);
  return sum;
}

SpectralVector& SpectralVector::operator*=(cplx c) noexcept {
  for (auto& x : coeffs_) x *= c;
  return *this;
}

// Mode k lives at FFT bin k mod (N+1). Both endpoints +-N/2 map to distinct
// bins N/2 and N/2+1, so the N+1 modes cover every bin exactly once.
SpectralVector dft(const GridVector& v) {
  const GridSpec& grid = v.grid();
  const int n = static_cast<int>(grid.nodes());
  std::vector<cplx> bins(grid.nodes());
  detail::fft_forward(v.values(), bins);
  SpectralVector s(grid);
  const double h = grid.h();
  for (int k = -grid.half(); k <= grid.half(); ++k) {
    s[k] = h * bins[static_cast<std::size_t>((k + n) % n)];
  }
  return s;
}

GridVector idft(const SpectralVector& s) {
  const GridSpec& grid = s.grid();
  const int n = static_cast<int>(grid.nodes());
  std::vector<cplx> bins(grid.nodes());
  for (int k = -grid.half(); k <= grid.half(); ++k) {
    bins[static_cast<std::size_t>((k + n) % n)] = s[k];
  }
  GridVector v(grid);
  detail::fft_backward(bins, v.values());
  return v;
}

namespace reference {

SpectralVector dft(const GridVector& v) {
  const GridSpec& grid = v.grid();
  const double h = grid.h();
  SpectralVector s(grid);
  for (int k = -grid.half(); k <= grid.half(); ++k) {
    cplx sum = 0.0;
    for (int j = 0; j <= grid.N(); ++j) {
      // k*j reduced mod N+1 keeps the phase argument small.
      const long phase = (static_cast<long>(k) * j) % (grid.N() + 1);
      sum += v[static_cast<std::size_t>(j)] * std::polar(1.0, -2.0 * std::numbers::pi * phase * h);
    }
    s[k] = h * sum;
  }
  return s;
}

GridVector idft(const SpectralVector& s) {
  const GridSpec& grid = s.grid();
  const double h = grid.h();
  GridVector v(grid);
  for (int j = 0; j <= grid.N(); ++j) {
    cplx sum = 0.0;
    for (int k = -grid.half(); k <= grid.half(); ++k) {
      const long phase = (static_cast<long>(k) * j) % (grid.N() + 1);
      sum += s[k] * std::polar(1.0, 2.0 * std::numbers::pi * phase * h);
    }
    v[static_cast<std::size_t>(j)] = sum;
  }
  return v;
}

}  // namespace reference

double lp_norm(const GridVector& v, double p) {
  require(p >= 1.0, kModule, "lp_norm requires p >= 1");
  if (std::isinf(p)) {
    double m = 0.0;
    for (const auto& x : v.values()) m = std::max(m, std::abs(x));
    return m;
  }
  double sum = 0.0;
  if (p == 2.0) {
    for (const auto& x : v.values()) sum += std::norm(x);
  } else if (p == 4.0) {
    for (const auto& x : v.values()) {
      const double a = std::norm(x);
      sum += a * a;
    }
  } else {
    for (const auto& x : v.values()) sum += std::pow(std::abs(x), p);
  }
  return std::pow(v.grid().h() * sum, 1.0 / p);
}

double symbol_p(const GridSpec& grid, long n) {
  require_mode(grid, n);
  const double s = scaled_sine(grid, n);
  const double scale = static_cast<double>(grid.N() + 1);
  return 4.0 * scale * scale * s * s;
}

double q_h(const GridSpec& grid, const Quadruple& q) {
  require_modes(grid, q);
  return symbol_p(grid, q.n1) + symbol_p(grid, q.n2) - symbol_p(grid, q.n3) -
         symbol_p(grid, q.n4);
}

double q_h_factored(const GridSpec& grid, const Quadruple& q) {
  require_modes(grid, q);
  require(q.resonant(), kModule, "q_h_factored requires n1+n2 = n3+n4");
  const double scale = static_cast<double>(grid.N() + 1);
  const double angle = std::numbers::pi / (2.0 * scale);
  // Resonance makes both half-sums integers: (n1-n2+n3-n4)/2 = n1-n4, (n1-n2-n3+n4)/2 = n1-n3.
  return 8.0 * scale * scale * std::cos(static_cast<double>(q.n1 + q.n2) * 2.0 * angle) *
         std::sin(static_cast<double>(q.n1 - q.n2 + q.n3 - q.n4) * angle) *
         std::sin(static_cast<double>(q.n1 - q.n2 - q.n3 + q.n4) * angle);
}

double sigma_h(const GridSpec& grid, const Quadruple& q) {
  require_modes(grid, q);
  return symbol_p(grid, q.n1) + symbol_p(grid, q.n2) + symbol_p(grid, q.n3) +
         symbol_p(grid, q.n4);
}

MuSequence mu_gap_seq(const GridSpec& grid, long r, long lo, long hi) {
  require(lo <= hi, kModule, "mu_gap_seq requires lo <= hi");
  for (long n : {lo, hi}) {
    require_mode(grid, n);
    require_mode(grid, r - n);
  }
  MuSequence seq;
  seq.r = r;
  seq.lo = lo;
  seq.hi = hi;
  seq.values.reserve(static_cast<std::size_t>(hi - lo + 1));
  for (long n = lo; n <= hi; ++n) {
    seq.values.push_back(-symbol_p(grid, n) - symbol_p(grid, r - n));
  }
  for (std::size_t i = 1; i < seq.values.size(); ++i) {
    seq.differences.push_back(seq.values[i] - seq.values[i - 1]);
  }
  return seq;
}

double mu_gap_closed_form(const GridSpec& grid, long r, long n) {
  const double scale = static_cast<double>(grid.N() + 1);
  const double angle = std::numbers::pi / scale;
  return 8.0 * scale * scale * std::cos(static_cast<double>(r) * angle) *
         std::sin(static_cast<double>(r - 2 * n - 1) * angle) * std::sin(angle);
}

double mu_pair(const GridSpec& grid, long r, long n, long m) {
  for (long k : {n, r - n, m, r - m}) require_mode(grid, k);
  const double scale = static_cast<double>(grid.N() + 1);
  const double angle = std::numbers::pi / scale;
  return 8.0 * scale * scale * std::cos(static_cast<double>(r) * angle) *
         std::sin(static_cast<double>(n + m - r) * angle) *
         std::sin(static_cast<double>(n - m) * angle);
}

}  // namespace schrodinger_lab
