#pragma once

#include <complex>
#include <cstddef>
#include <vector>

namespace qw {

// In-place iterative radix-2 forward DFT. Size must be a power of two.
void fft_pow2(std::vector<std::complex<double>>& a);

std::size_t next_pow2(std::size_t n);

}  // namespace qw
