#pragma once

#include <complex>
#include <cstddef>
#include <vector>

namespace follmer {

/// Thin wrapper over FFTW (complex-to-complex, 1d). Plans are cached per
/// transform size behind a mutex; execution on caller-owned buffers is
/// thread-safe.
namespace fft {

/// In-place forward DFT (no normalization).
void forward(std::vector<std::complex<double>>& data);

/// In-place inverse DFT, normalized by 1/N.
void inverse(std::vector<std::complex<double>>& data);

}  // namespace fft

}  // namespace follmer
