#pragma once

#include <vector>

#include "campanato/disk_geometry.hpp"

namespace campanato {

int next_pow2(int n);

// In-place radix-2 FFT; size must be a power of two.  inverse=true applies
// the conjugate transform without the 1/N normalization.
void fft_inplace(std::vector<cplx>& a, bool inverse = false);

// Fourier coefficients (1/M) * sum_j samples[j] e^{-2 pi i j m / M} for
// m = 0..M-1 (indices above M/2 alias to negative frequencies).
std::vector<cplx> fourier_coefficients(std::vector<cplx> samples);

// The M-th roots of unity e^{2 pi i j / M}, j = 0..M-1.
const std::vector<cplx>& circle_points(int M);

}  // namespace campanato
