#include "campanato/poly.hpp"

#include <algorithm>
#include <cmath>

namespace campanato {

cplx poly_eval(const std::vector<cplx>& c, cplx z) {
    cplx acc = 0.0;
    for (std::size_t k = c.size(); k-- > 0;) acc = acc * z + c[k];
    return acc;
}

std::vector<cplx> poly_derivative(const std::vector<cplx>& c) {
    if (c.size() <= 1) return {};
    std::vector<cplx> d(c.size() - 1);
    for (std::size_t k = 1; k < c.size(); ++k) d[k - 1] = static_cast<double>(k) * c[k];
    return d;
}

std::vector<cplx> poly_add(const std::vector<cplx>& a, const std::vector<cplx>& b) {
    std::vector<cplx> r(std::max(a.size(), b.size()), 0.0);
    for (std::size_t k = 0; k < a.size(); ++k) r[k] += a[k];
    for (std::size_t k = 0; k < b.size(); ++k) r[k] += b[k];
    return r;
}

std::vector<cplx> poly_sub(const std::vector<cplx>& a, const std::vector<cplx>& b) {
    std::vector<cplx> r(std::max(a.size(), b.size()), 0.0);
    for (std::size_t k = 0; k < a.size(); ++k) r[k] += a[k];
    for (std::size_t k = 0; k < b.size(); ++k) r[k] -= b[k];
    return r;
}

std::vector<cplx> poly_mul(const std::vector<cplx>& a, const std::vector<cplx>& b) {
    if (a.empty() || b.empty()) return {};
    std::vector<cplx> r(a.size() + b.size() - 1, 0.0);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
    return r;
}

std::vector<cplx> poly_scale(const std::vector<cplx>& a, cplx s) {
    std::vector<cplx> r = a;
    for (auto& x : r) x *= s;
    return r;
}

std::vector<cplx> poly_trim(std::vector<cplx> c, double eps) {
    double scale = 0.0;
    for (const auto& x : c) scale = std::max(scale, std::abs(x));
    if (scale == 0.0) return {};
    while (!c.empty() && std::abs(c.back()) <= eps * scale) c.pop_back();
    return c;
}

int poly_degree(const std::vector<cplx>& c) {
    const auto t = poly_trim(c);
    return t.empty() ? -1 : static_cast<int>(t.size()) - 1;
}

namespace {

std::vector<cplx> quadratic_roots(cplx a, cplx b, cplx c) {
    // Numerically stable form: q = -(b + sgn * sqrt(b^2 - 4ac)) / 2.
    const cplx disc = std::sqrt(b * b - 4.0 * a * c);
    const cplx q = (std::real(std::conj(b) * disc) >= 0.0) ? -0.5 * (b + disc) : -0.5 * (b - disc);
    std::vector<cplx> roots;
    if (std::abs(a) > 0.0) roots.push_back(q / a);
    if (std::abs(q) > 0.0)
        roots.push_back(c / q);
    else
        roots.push_back(0.0);  // b^2 = 4ac and b = 0: double root at 0 handles c = 0
    return roots;
}

}  // namespace

std::vector<cplx> poly_roots(const std::vector<cplx>& c_in) {
    std::vector<cplx> c = poly_trim(c_in);
    const int deg = static_cast<int>(c.size()) - 1;
    if (deg <= 0) return {};
    if (deg == 1) return {-c[0] / c[1]};
    if (deg == 2) return quadratic_roots(c[2], c[1], c[0]);

    // Monic normalization, then Durand-Kerner from a slightly irrational
    // spiral inside the Cauchy root bound.
    std::vector<cplx> m(c.size());
    for (std::size_t k = 0; k < c.size(); ++k) m[k] = c[k] / c.back();
    double bound = 0.0;
    for (int k = 0; k < deg; ++k) bound = std::max(bound, std::abs(m[k]));
    bound = 1.0 + bound;

    std::vector<cplx> z(deg);
    for (int j = 0; j < deg; ++j) {
        const double t = two_pi * (j + 0.25) / deg + 0.5;
        z[j] = 0.7 * bound * cplx(std::cos(t), std::sin(t));
    }

    bool settled = false;
    for (int iter = 0; iter < 600 && !settled; ++iter) {
        settled = true;
        for (int j = 0; j < deg; ++j) {
            cplx den = 1.0;
            for (int k = 0; k < deg; ++k)
                if (k != j) den *= (z[j] - z[k]);
            if (std::abs(den) < 1e-300) {
                z[j] += cplx(1e-8, 1e-8) * (1.0 + std::abs(z[j]));
                settled = false;
                continue;
            }
            const cplx step = poly_eval(m, z[j]) / den;
            z[j] -= step;
            if (std::abs(step) > 1e-13 * (1.0 + std::abs(z[j]))) settled = false;
        }
    }
    if (!settled) throw RootFindingDiverged("poly_roots: Durand-Kerner did not converge");

    // Newton polish; skip steps that stall near multiple roots.
    const std::vector<cplx> d = poly_derivative(m);
    for (auto& r : z) {
        for (int it = 0; it < 8; ++it) {
            const cplx dp = poly_eval(d, r);
            if (std::abs(dp) < 1e-14) break;
            const cplx step = poly_eval(m, r) / dp;
            r -= step;
            if (std::abs(step) < 1e-15 * (1.0 + std::abs(r))) break;
        }
    }
    return z;
}

}  // namespace campanato
