#pragma once

#include <complex>
#include <vector>

namespace critwave::detail {

// FFTW-backed complex-to-complex DFT, unnormalized (plain sum convention):
//   sign = -1: out[j] = sum_x in[x] e^{-2 pi i j.x / N}
//   sign = +1: out[x] = sum_j in[j] e^{+2 pi i j.x / N}
// dims are row-major, rank 1..3. Plans use FFTW_ESTIMATE only, so the
// algorithm choice (and hence the bit pattern of results) is reproducible
// run to run. Thread safe: plans and work buffers are cached per thread,
// plan creation is serialized globally.
void dft(const std::vector<int>& dims, int sign,
         const std::complex<double>* in, std::complex<double>* out);

}  // namespace critwave::detail
