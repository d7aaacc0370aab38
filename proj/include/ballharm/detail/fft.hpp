#pragma once

#include <complex>
#include <vector>

namespace ballharm::detail {

/// In-place iterative radix-2 FFT.  The size must be a power of two.
/// The inverse transform includes the 1/N factor.
void fft_inplace(std::vector<std::complex<double>>& data, bool inverse);

bool is_power_of_two(std::size_t n);

} // namespace ballharm::detail
