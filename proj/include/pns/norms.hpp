#pragma once

#include "pns/field.hpp"

namespace pns {

// Collocation quadrature with uniform weights 1/n^d. The pointwise
// magnitude is Euclidean over components (Frobenius for tensors, with the
// off-diagonal double count). q >= 1 required.
double lp_norm(const GridField& samples, double q);
double lp_norm(const SymTensorField& samples, double q);

// L^2(Omega) pairing of matching sample sets.
double inner_product(const GridField& a, const GridField& b);

double sup_norm(const GridField& samples);

// L^q norm of a band-limited field, evaluated on the 2x padded grid
// (q != 2 integrands are not trig polynomials of the base band).
double field_lp_norm(const VectorField& v, double q, int pad_factor = 2);

} // namespace pns
