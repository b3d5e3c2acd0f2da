#pragma once

#include <complex>
#include <vector>

namespace trotterlab {

// in-place unnormalized c2c transform over a row-major lattice
void fft_nd(std::complex<double>* data, const std::vector<int>& dims, int sign);

// in-place unnormalized DST-I (RODFT00), length n
void dst1(double* data, int n);

}  // namespace trotterlab
