#pragma once

#include <complex>
#include <vector>

namespace genloc::detail {

enum class FftDirection { forward, backward };

/// Unnormalized in-place N-d complex DFT over a row-major cube of side m:
/// forward sums x_k e^{-2 pi i jk/m}, backward uses e^{+...}.
void fft_cube(std::vector<std::complex<double>>& data, int dim, int m, FftDirection dir);

}  // namespace genloc::detail
