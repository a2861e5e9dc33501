#pragma once

#include <complex>
#include <vector>

#include "pns/grid.hpp"

namespace pns {

using cplx = std::complex<double>;

// Complex-to-complex DFT pair with the convention
//   samples(x_j) = sum_k coeff(k) exp(2*pi*i k.x_j),   x_j = j/n,
// so forward (grid -> spectral) carries the 1/n^d normalization.
// Plans are cached per (dim, n) and created with FFTW_ESTIMATE so results
// are reproducible run to run. Calls are serialized internally.
namespace fft {

void backward(const TorusGrid& g, const std::vector<cplx>& spectral, std::vector<cplx>& grid);
void forward(const TorusGrid& g, const std::vector<cplx>& grid, std::vector<cplx>& spectral);

} // namespace fft
} // namespace pns
