#pragma once

// Test-only oracles. Each one recomputes a quantity from its definition
// without going through the library routine it is used to check.

#include <cmath>
#include <complex>
#include <cstdint>
#include <functional>
#include <numbers>
#include <random>
#include <vector>

namespace oracle {

using cplx = std::complex<double>;

inline double symbol(int N, long n) {
  const double h = 1.0 / (N + 1);
  const double s = std::sin(static_cast<double>(n) * std::numbers::pi * h);
  return 4.0 * s * s / (h * h);
}

// coeffs indexed k + N/2.
inline std::vector<cplx> direct_dft(int N, const std::vector<cplx>& v) {
  const double h = 1.0 / (N + 1);
  std::vector<cplx> out(v.size());
  for (int k = -N / 2; k <= N / 2; ++k) {
    cplx sum = 0.0;
    for (int j = 0; j <= N; ++j) {
      sum += v[static_cast<std::size_t>(j)] * std::exp(cplx(0.0, -2.0 * std::numbers::pi * k * j * h));
    }
    out[static_cast<std::size_t>(k + N / 2)] = h * sum;
  }
  return out;
}

// u_j(t) = sum_k c_k exp(-(i+a) t p(k)) exp(2 pi i k j h), term by term.
inline std::vector<cplx> direct_expansion(int N, const std::vector<cplx>& coeffs, double t, double a) {
  const double h = 1.0 / (N + 1);
  std::vector<cplx> u(static_cast<std::size_t>(N + 1));
  for (int j = 0; j <= N; ++j) {
    cplx sum = 0.0;
    for (int k = -N / 2; k <= N / 2; ++k) {
      const cplx c = coeffs[static_cast<std::size_t>(k + N / 2)];
      if (c == cplx(0.0)) continue;
      sum += c * std::exp(-cplx(a, 1.0) * t * symbol(N, k)) *
             std::exp(cplx(0.0, 2.0 * std::numbers::pi * k * j * h));
    }
    u[static_cast<std::size_t>(j)] = sum;
  }
  return u;
}

// sum over n1+n2 = n3+n4 of a(n1) a(n2) conj(a(n3)) conj(a(n4)), by enumeration.
// Sum of a(n1) a(n2) conj(a(n3) a(n4)) over n1+n2 = n3+n4, or over
// n1+n2 = n3+n4 mod (N+1) when `modular`, by brute force over all quadruples.
inline cplx resonant_sum(int N, const std::vector<cplx>& a, bool modular = false) {
  const int half = N / 2;
  auto at = [&](long n) { return a[static_cast<std::size_t>(n + half)]; };
  cplx sum = 0.0;
  for (long n1 = -half; n1 <= half; ++n1)
    for (long n2 = -half; n2 <= half; ++n2)
      for (long n3 = -half; n3 <= half; ++n3)
        for (long n4 = -half; n4 <= half; ++n4) {
          const long d = n1 + n2 - n3 - n4;
          if (modular ? d % (N + 1) != 0 : d != 0) continue;
          sum += at(n1) * at(n2) * std::conj(at(n3)) * std::conj(at(n4));
        }
  return sum;
}

inline std::int64_t count_resonant(const std::vector<long>& modes) {
  std::int64_t count = 0;
  for (long a : modes)
    for (long b : modes)
      for (long c : modes)
        for (long d : modes)
          if (a + b == c + d) ++count;
  return count;
}

// Adaptive Simpson for complex integrands.
class AdaptiveSimpson {
 public:
  explicit AdaptiveSimpson(std::function<cplx(double)> f) : f_(std::move(f)) {}

  cplx integrate(double a, double b, double tol) {
    const double m = 0.5 * (a + b);
    const cplx fa = f_(a), fb = f_(b), fm = f_(m);
    return recurse(a, b, fa, fm, fb, simpson(a, b, fa, fm, fb), tol, 50);
  }

 private:
  static cplx simpson(double a, double b, cplx fa, cplx fm, cplx fb) {
    return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  }

  cplx recurse(double a, double b, cplx fa, cplx fm, cplx fb, cplx whole, double tol, int depth) {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    const cplx flm = f_(lm), frm = f_(rm);
    const cplx left = simpson(a, m, fa, flm, fm);
    const cplx right = simpson(m, b, fm, frm, fb);
    const cplx delta = left + right - whole;
    if (depth <= 0 || std::abs(delta) <= 15.0 * tol) return left + right + delta / 15.0;
    return recurse(a, m, fa, flm, fm, left, tol / 2.0, depth - 1) +
           recurse(m, b, fm, frm, fb, right, tol / 2.0, depth - 1);
  }

  std::function<cplx(double)> f_;
};

inline std::vector<cplx> random_complex(std::mt19937_64& rng, std::size_t n) {
  std::normal_distribution<double> g;
  std::vector<cplx> v(n);
  for (auto& x : v) x = {g(rng), g(rng)};
  return v;
}

}  // namespace oracle
