#include "fft.hpp"

#include <fftw3.h>

#include <mutex>

#include "genloc/errors.hpp"

namespace genloc::detail {

namespace {

// FFTW's planner is not thread-safe; execution with new-array execute is.
std::mutex& planner_mutex() {
  static std::mutex mu;
  return mu;
}

struct Plan {
  fftw_plan plan = nullptr;
  ~Plan() {
    if (plan != nullptr) {
      std::lock_guard lock(planner_mutex());
      fftw_destroy_plan(plan);
    }
  }
};

}  // namespace

void fft_cube(std::vector<std::complex<double>>& data, int dim, int m, FftDirection dir) {
  if (dim < 1 || m < 1) throw ParameterError("fft_cube needs dim >= 1 and m >= 1");
  std::size_t total = 1;
  for (int i = 0; i < dim; ++i) total *= static_cast<std::size_t>(m);
  if (data.size() != total) throw DimensionError("fft_cube data size does not match m^dim");
  std::vector<int> shape(static_cast<std::size_t>(dim), m);
  auto* buf = reinterpret_cast<fftw_complex*>(data.data());
  Plan p;
  {
    std::lock_guard lock(planner_mutex());
    p.plan = fftw_plan_dft(dim, shape.data(), buf, buf,
                           dir == FftDirection::forward ? FFTW_FORWARD : FFTW_BACKWARD,
                           FFTW_ESTIMATE);
  }
  if (p.plan == nullptr) throw ResourceError("FFTW could not create a plan");
  fftw_execute_dft(p.plan, buf, buf);
}

}  // namespace genloc::detail
