#pragma once

// Grid, discrete Fourier pair and the scalar symbols of the second-difference
// operator on the discrete torus T_h = {j h : j = 0..N}, h = 1/(N+1).

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace schrodinger_lab {

using cplx = std::complex<double>;

class GridSpec {
 public:
  // N even, N >= 2; use make_grid() for validated construction.
  explicit GridSpec(int N);

  [[nodiscard]] int N() const noexcept { return N_; }
  [[nodiscard]] int half() const noexcept { return N_ / 2; }
  [[nodiscard]] std::size_t nodes() const noexcept { return static_cast<std::size_t>(N_) + 1; }
  [[nodiscard]] double h() const noexcept { return 1.0 / (N_ + 1); }
  [[nodiscard]] double node(int j) const noexcept { return j * h(); }
  [[nodiscard]] bool contains_mode(long n) const noexcept { return n >= -half() && n <= half(); }

  friend bool operator==(const GridSpec&, const GridSpec&) = default;

 private:
  int N_;
};

GridSpec make_grid(int N);

// Physical-space values at nodes j = 0..N.
class GridVector {
 public:
  explicit GridVector(GridSpec grid);
  GridVector(GridSpec grid, std::vector<cplx> values);

  [[nodiscard]] const GridSpec& grid() const noexcept { return grid_; }
  [[nodiscard]] std::span<const cplx> values() const noexcept { return values_; }
  [[nodiscard]] std::span<cplx> values() noexcept { return values_; }
  [[nodiscard]] std::size_t size() const noexcept { return values_.size(); }

  cplx& operator[](std::size_t j) noexcept { return values_[j]; }
  const cplx& operator[](std::size_t j) const noexcept { return values_[j]; }

  // Periodic access: j = -1 reads node N, j = N+1 reads node 0.
  [[nodiscard]] const cplx& periodic(long j) const noexcept;

 private:
  GridSpec grid_;
  std::vector<cplx> values_;
};

// Fourier coefficients for modes k = -N/2..N/2, stored with offset N/2.
class SpectralVector {
 public:
  explicit SpectralVector(GridSpec grid);
  SpectralVector(GridSpec grid, std::vector<cplx> flat_coeffs);

  [[nodiscard]] const GridSpec& grid() const noexcept { return grid_; }
  [[nodiscard]] int min_mode() const noexcept { return -grid_.half(); }
  [[nodiscard]] int max_mode() const noexcept { return grid_.half(); }

  cplx& operator[](int k) noexcept { return coeffs_[static_cast<std::size_t>(k + grid_.half())]; }
  const cplx& operator[](int k) const noexcept {
    return coeffs_[static_cast<std::size_t>(k + grid_.half())];
  }
  cplx& at(int k);
  [[nodiscard]] const cplx& at(int k) const;

  [[nodiscard]] std::span<const cplx> flat() const noexcept { return coeffs_; }
  [[nodiscard]] std::span<cplx> flat() noexcept { return coeffs_; }

  // Sum of |coeff|^2, equal to the squared L2(T_h) norm of idft(*this).
  [[nodiscard]] double energy() const noexcept;

  SpectralVector& operator*=(cplx c) noexcept;

 private:
  GridSpec grid_;
  std::vector<cplx> coeffs_;
};

struct Quadruple {
  long n1 = 0, n2 = 0, n3 = 0, n4 = 0;

  [[nodiscard]] bool resonant() const noexcept { return n1 + n2 == n3 + n4; }
  [[nodiscard]] Quadruple swapped_halves() const noexcept { return {n3, n4, n1, n2}; }
};

// Fast transforms (FFT-backed).
SpectralVector dft(const GridVector& v);
GridVector idft(const SpectralVector& s);

// Direct O(N^2) summation; the reference the fast path is checked against.
namespace reference {
SpectralVector dft(const GridVector& v);
GridVector idft(const SpectralVector& s);
}  // namespace reference

// (h * sum_j |v_j|^p)^(1/p); p = infinity gives max_j |v_j|.
double lp_norm(const GridVector& v, double p);

// p_h(n) = 4 (N+1)^2 sin^2(n pi / (N+1)).
double symbol_p(const GridSpec& grid, long n);

double q_h(const GridSpec& grid, const Quadruple& q);
// 8(N+1)^2 cos((n1+n2)pi/(N+1)) sin((n1-n2+n3-n4)pi/(2(N+1))) sin((n1-n2-n3+n4)pi/(2(N+1)));
// resonant quadruples only.
double q_h_factored(const GridSpec& grid, const Quadruple& q);

double sigma_h(const GridSpec& grid, const Quadruple& q);

// mu_h(n) = -p_h(n) - p_h(r - n) on n = lo..hi.
struct MuSequence {
  long r = 0;
  long lo = 0;
  long hi = 0;
  std::vector<double> values;       // mu_h(lo), ..., mu_h(hi)
  std::vector<double> differences;  // mu_h(n+1) - mu_h(n), n = lo..hi-1

  [[nodiscard]] double value(long n) const { return values.at(static_cast<std::size_t>(n - lo)); }
  [[nodiscard]] double difference(long n) const {
    return differences.at(static_cast<std::size_t>(n - lo));
  }
};

MuSequence mu_gap_seq(const GridSpec& grid, long r, long lo, long hi);

// 8(N+1)^2 cos(pi r/(N+1)) sin(pi(r-2n-1)/(N+1)) sin(pi/(N+1)) = mu_h(n+1) - mu_h(n).
double mu_gap_closed_form(const GridSpec& grid, long r, long n);

// q_h(n, r-n, m, r-m) via its product form.
double mu_pair(const GridSpec& grid, long r, long n, long m);

}  // namespace schrodinger_lab
