#pragma once

#include <cstdint>

#include "pns/field.hpp"

namespace pns {

// Draw a mean-zero solenoidal field with Hermitian Gaussian coefficients
// of amplitude |k|^-spectral_decay, rescaled so that ||grad v||_2^2 equals
// grad_l2_sq_target exactly (Parseval). Deterministic for a fixed seed.
VectorField random_solenoidal(const TorusGrid& grid, std::uint64_t seed, double spectral_decay,
                              double grad_l2_sq_target);

} // namespace pns
