#include "fast_transform.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>
#include <stdexcept>
#include <utility>

namespace schrodinger_lab::detail {
namespace {

struct PlanPair {
  fftw_plan forward = nullptr;
  fftw_plan backward = nullptr;
};

class PlanCache {
 public:
  ~PlanCache() {
    for (auto& [n, p] : plans_) {
      fftw_destroy_plan(p.forward);
      fftw_destroy_plan(p.backward);
    }
  }

  // The planner is not thread-safe; execution with fftw_execute_dft is.
  const PlanPair& get(int n) {
    std::lock_guard lock(mutex_);
    auto it = plans_.find(n);
    if (it != plans_.end()) return it->second;
    fftw_complex* in = fftw_alloc_complex(static_cast<std::size_t>(n));
    fftw_complex* out = fftw_alloc_complex(static_cast<std::size_t>(n));
    const unsigned flags = FFTW_ESTIMATE | FFTW_UNALIGNED;
    PlanPair p{fftw_plan_dft_1d(n, in, out, FFTW_FORWARD, flags),
               fftw_plan_dft_1d(n, in, out, FFTW_BACKWARD, flags)};
    fftw_free(in);
    fftw_free(out);
    if (!p.forward || !p.backward) throw std::runtime_error("fftw: plan creation failed");
    return plans_.emplace(n, p).first->second;
  }

 private:
  std::mutex mutex_;
  std::map<int, PlanPair> plans_;
};

PlanCache& cache() {
  static PlanCache c;
  return c;
}

void execute(fftw_plan plan, std::span<const std::complex<double>> in,
             std::span<std::complex<double>> out) {
  // FFTW may use `in` as scratch only for in-place plans; ours are out-of-place.
  auto* src = reinterpret_cast<fftw_complex*>(const_cast<std::complex<double>*>(in.data()));
  auto* dst = reinterpret_cast<fftw_complex*>(out.data());
  fftw_execute_dft(plan, src, dst);
}

}  // namespace

void fft_forward(std::span<const std::complex<double>> in, std::span<std::complex<double>> out) {
  const auto& p = cache().get(static_cast<int>(in.size()));
  execute(p.forward, in, out);
}

void fft_backward(std::span<const std::complex<double>> in, std::span<std::complex<double>> out) {
  const auto& p = cache().get(static_cast<int>(in.size()));
  execute(p.backward, in, out);
}

}  // namespace schrodinger_lab::detail
