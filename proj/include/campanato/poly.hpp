#pragma once

#include <vector>

#include "campanato/disk_geometry.hpp"

namespace campanato {

// Dense polynomials over C, coefficient c[k] multiplying z^k.  An empty or
// all-zero vector is the zero polynomial.  These are small helpers for the
// preimage machinery; degrees stay below the rational-form budget (64).

cplx poly_eval(const std::vector<cplx>& c, cplx z);
std::vector<cplx> poly_derivative(const std::vector<cplx>& c);
std::vector<cplx> poly_add(const std::vector<cplx>& a, const std::vector<cplx>& b);
std::vector<cplx> poly_sub(const std::vector<cplx>& a, const std::vector<cplx>& b);
std::vector<cplx> poly_mul(const std::vector<cplx>& a, const std::vector<cplx>& b);
std::vector<cplx> poly_scale(const std::vector<cplx>& a, cplx s);
// Drops leading coefficients smaller than eps relative to the largest one.
std::vector<cplx> poly_trim(std::vector<cplx> c, double eps = 1e-14);
int poly_degree(const std::vector<cplx>& c);

// All complex roots of the polynomial, via Durand-Kerner simultaneous
// iteration followed by a few Newton steps per root.  Degree 1 and 2 are
// solved in closed form.  Throws RootFindingDiverged when the iteration does
// not settle.
std::vector<cplx> poly_roots(const std::vector<cplx>& c);

}  // namespace campanato
