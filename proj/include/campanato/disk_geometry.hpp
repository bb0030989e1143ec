#pragma once

#include <complex>

#include "campanato/errors.hpp"

namespace campanato {

using cplx = std::complex<double>;

inline constexpr double two_pi = 6.283185307179586476925286766559;

// A point strictly inside the unit disk.
class DiskPoint {
  public:
    // Requires |v| < 1.
    explicit DiskPoint(cplx v);

    // Constructor for supremum grids: requires |v| < 1 - 1e-12 so that the
    // weights (1-|a|^2)^s stay representable.  Boundary data never goes
    // through DiskPoint; it uses circle samples directly.
    static DiskPoint grid_point(cplx v);

    cplx value() const { return v_; }
    double modulus() const { return std::abs(v_); }

  private:
    cplx v_;
};

// A closed sub-arc of the unit circle, stored as center angle (normalized to
// [0, 2*pi)) and half arc-length in (0, pi].  half_length == pi is the full
// circle.
struct CircleArc {
    double center_angle;
    double half_length;

    CircleArc(double center, double half);

    double length() const { return 2.0 * half_length; }
    bool is_full_circle() const { return half_length >= 3.14159265358979; }
    // Membership of e^{i*angle} up to the wrap-around of the circle.
    bool contains(double angle) const;
};

// Carleson box over an arc I: { r e^{i t} : 1 - |I|/(2 pi) <= r < 1, e^{it} in I }.
struct CarlesonBox {
    CircleArc arc;
    double inner_radius;

    bool contains(cplx z) const;
};

// sigma_b(z) = (b - z) / (1 - conj(b) z).  Involution of the disk for |b| < 1.
// Throws DegenerateDenominator when |1 - conj(b) z| < 1e-15.
cplx mobius(cplx b, cplx z);

// rho(z, w) = |sigma_w(z)|, the pseudo-hyperbolic distance.
double pseudo_hyperbolic(DiskPoint z, DiskPoint w);

// The boundary arc J(a) centered at arg(a) with half-length min(pi(1-|a|), pi).
CircleArc centered_arc(DiskPoint a);

CarlesonBox carleson_box(const CircleArc& arc);

}  // namespace campanato
