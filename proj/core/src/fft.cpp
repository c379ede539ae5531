#include "follmer/fft.hpp"

#include <fftw3.h>

#include <mutex>
#include <stdexcept>
#include <unordered_map>

namespace follmer::fft {

namespace {

// FFTW plan creation is not thread-safe; execution via fftw_execute_dft on
// distinct buffers is. Plans are created with FFTW_UNALIGNED so they accept
// any std::vector storage, and FFTW_ESTIMATE so planning never touches the
// data (and stays deterministic).
class PlanCache {
 public:
  fftw_plan get(std::size_t n, int sign) {
    std::lock_guard<std::mutex> lock(mutex_);
    const std::uint64_t key = (static_cast<std::uint64_t>(n) << 1) |
                              (sign == FFTW_FORWARD ? 0u : 1u);
    auto it = plans_.find(key);
    if (it != plans_.end()) return it->second;
    std::vector<std::complex<double>> scratch(n);
    fftw_plan plan = fftw_plan_dft_1d(
        static_cast<int>(n), reinterpret_cast<fftw_complex*>(scratch.data()),
        reinterpret_cast<fftw_complex*>(scratch.data()), sign,
        FFTW_ESTIMATE | FFTW_UNALIGNED);
    if (!plan) throw std::runtime_error("fftw plan creation failed");
    plans_.emplace(key, plan);
    return plan;
  }

 private:
  std::mutex mutex_;
  std::unordered_map<std::uint64_t, fftw_plan> plans_;
};

PlanCache& cache() {
  static PlanCache instance;
  return instance;
}

void execute(std::vector<std::complex<double>>& data, int sign) {
  if (data.empty()) throw std::invalid_argument("fft on empty buffer");
  fftw_plan plan = cache().get(data.size(), sign);
  auto* ptr = reinterpret_cast<fftw_complex*>(data.data());
  fftw_execute_dft(plan, ptr, ptr);
}

}  // namespace

void forward(std::vector<std::complex<double>>& data) {
  execute(data, FFTW_FORWARD);
}

void inverse(std::vector<std::complex<double>>& data) {
  execute(data, FFTW_BACKWARD);
  const double scale = 1.0 / static_cast<double>(data.size());
  for (auto& z : data) z *= scale;
}

}  // namespace follmer::fft
