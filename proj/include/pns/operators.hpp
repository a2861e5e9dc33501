#pragma once

#include "pns/field.hpp"

namespace pns {

// Spectral <-> collocation transforms. to_spectral re-enforces the
// mean-zero / Hermitian / Nyquist invariants on its output.
GridField to_grid(const VectorField& v);
VectorField to_spectral(const GridField& samples);

// Evaluate the band-limited field on a pad_factor-times finer grid
// (zero padding in spectral space). Used for all nonlinear products.
GridField to_grid_padded(const VectorField& v, int pad_factor = 2);

// Truncate samples on a padded grid back to the spectral band of `target`.
// Adjoint of the zero-padding injection.
VectorField from_grid_truncated(const GridField& samples, const TorusGrid& target);

// Leray projection: v^(k) -= k (k.v^(k)) / |k|^2 for every k != 0.
VectorField project_solenoidal(const VectorField& v);

// Full gradient samples; component (i,j) = d_j v_i stored at slot i*d+j.
GridField gradient(const VectorField& v, int pad_factor = 1);

// Rate-of-strain tensor D v = (grad v + grad v^T)/2 on the (padded) grid.
SymTensorField sym_gradient(const VectorField& v, int pad_factor = 1);

// grad D v samples; component (i,j,l) = d_l (Dv)_ij at slot sym(i,j)*d + l.
GridField second_gradient(const VectorField& v, int pad_factor = 1);

// Pointwise divergence samples (should vanish for solenoidal fields).
GridField divergence(const VectorField& v);

// Forward transform of one real sample array on a (padded) grid, truncated
// to the band of `target`. No invariant enforcement; used by adjoints.
std::vector<cplx> forward_truncated(const TorusGrid& gpad, const std::vector<double>& samples,
                                    const TorusGrid& target);

} // namespace pns
