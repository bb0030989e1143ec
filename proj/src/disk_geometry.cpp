#include "campanato/disk_geometry.hpp"

#include <cmath>
#include <string>

namespace campanato {

namespace {

double wrap_angle(double t) {
    t = std::fmod(t, two_pi);
    if (t < 0) t += two_pi;
    return t;
}

// Distance between angles along the circle, in [0, pi].
double circle_distance(double s, double t) {
    double d = std::fabs(wrap_angle(s) - wrap_angle(t));
    return d > two_pi / 2 ? two_pi - d : d;
}

}  // namespace

DiskPoint::DiskPoint(cplx v) : v_(v) {
    if (!(std::abs(v) < 1.0))
        throw InputError("DiskPoint requires |value| < 1, got |" + std::to_string(std::abs(v)) + "|");
}

DiskPoint DiskPoint::grid_point(cplx v) {
    if (!(std::abs(v) < 1.0 - 1e-12))
        throw InputError("grid DiskPoint requires |value| < 1 - 1e-12");
    return DiskPoint(v);
}

CircleArc::CircleArc(double center, double half) : center_angle(wrap_angle(center)), half_length(half) {
    if (!(half > 0.0) || half > two_pi / 2 + 1e-15)
        throw InputError("CircleArc half-length must lie in (0, pi]");
    if (half_length > two_pi / 2) half_length = two_pi / 2;
}

bool CircleArc::contains(double angle) const {
    return circle_distance(angle, center_angle) <= half_length + 1e-15;
}

bool CarlesonBox::contains(cplx z) const {
    const double r = std::abs(z);
    if (r < inner_radius || r >= 1.0) return false;
    return arc.contains(std::arg(z));
}

cplx mobius(cplx b, cplx z) {
    const cplx den = 1.0 - std::conj(b) * z;
    if (std::abs(den) < 1e-15)
        throw DegenerateDenominator("mobius: |1 - conj(b) z| < 1e-15");
    return (b - z) / den;
}

double pseudo_hyperbolic(DiskPoint z, DiskPoint w) {
    return std::abs(mobius(w.value(), z.value()));
}

CircleArc centered_arc(DiskPoint a) {
    const double r = a.modulus();
    const double half = std::min((two_pi / 2) * (1.0 - r), two_pi / 2);
    // arg(0) = 0 by convention; the arc is the full circle there anyway.
    const double center = (r == 0.0) ? 0.0 : std::arg(a.value());
    return CircleArc(center, half);
}

CarlesonBox carleson_box(const CircleArc& arc) {
    return CarlesonBox{arc, 1.0 - arc.length() / two_pi};
}

}  // namespace campanato
