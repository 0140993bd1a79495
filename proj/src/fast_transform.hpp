#pragma once

#include <complex>
#include <span>

namespace schrodinger_lab::detail {

// Unnormalized length-n transforms, out[k] = sum_j in[j] exp(sign 2 pi i j k / n).
// Thread-safe; plans are cached per length.
void fft_forward(std::span<const std::complex<double>> in, std::span<std::complex<double>> out);
void fft_backward(std::span<const std::complex<double>> in, std::span<std::complex<double>> out);

}  // namespace schrodinger_lab::detail
