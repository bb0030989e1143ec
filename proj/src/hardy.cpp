#include "campanato/hardy.hpp"

#include <algorithm>
#include <map>
#include <mutex>

#include "campanato/fourier.hpp"
#include "campanato/parallel.hpp"

namespace campanato {

// ---- Gauss-Legendre rules ---------------------------------------------------

const GaussRule& gauss_legendre(int order) {
    if (order < 1 || order > 4096) throw InputError("gauss_legendre: order out of range");
    static std::mutex mu;
    static std::map<int, GaussRule> cache;
    std::scoped_lock lock(mu);
    auto it = cache.find(order);
    if (it != cache.end()) return it->second;

    GaussRule rule;
    rule.nodes.resize(order);
    rule.weights.resize(order);
    const int n = order;
    for (int i = 0; i < (n + 1) / 2; ++i) {
        // Newton iteration on P_n from the Chebyshev-like initial guess.
        double x = std::cos(3.141592653589793 * (i + 0.75) / (n + 0.5));
        double dp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            double p0 = 1.0, p1 = x;
            for (int k = 2; k <= n; ++k) {
                const double p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            dp = n * (x * p1 - p0) / (x * x - 1.0);
            const double dx = p1 / dp;
            x -= dx;
            if (std::fabs(dx) < 1e-15) break;
        }
        const double w = 2.0 / ((1.0 - x * x) * dp * dp);
        rule.nodes[i] = -x;  // ascending order
        rule.nodes[n - 1 - i] = x;
        rule.weights[i] = w;
        rule.weights[n - 1 - i] = w;
    }
    return cache.emplace(order, std::move(rule)).first->second;
}

// ---- circle means -------------------------------------------------------------

namespace {

double circle_mean_sq(const AnalyticMap& f, double radius, int M) {
    const auto& pts = circle_points(M);
    std::vector<double> slot(M);
    parallel_for(M, [&](std::size_t j) { slot[j] = std::norm(f.eval(radius * pts[j])); });
    return pairwise_sum(slot) / M;
}

double boundary_mean_sq_adaptive(const AnalyticMap& f, int initial_nodes) {
    int M = next_pow2(std::clamp(initial_nodes, 256, 1 << 20));
    double prev = circle_mean_sq(f, 1.0, M);
    while (M < (1 << 20)) {
        M *= 2;
        const double cur = circle_mean_sq(f, 1.0, M);
        if (std::fabs(cur - prev) <= 1e-13 * std::max(cur, 1e-300)) return cur;
        prev = cur;
    }
    return prev;
}

}  // namespace

double mean_modulus_squared(const AnalyticMap& f, double radius, int circle_nodes) {
    if (!(radius >= 0.0 && radius <= 1.0)) throw InputError("mean_modulus_squared: radius must be in [0, 1]");
    return circle_mean_sq(f, radius, next_pow2(std::max(circle_nodes, 16)));
}

// ---- H^2 norms -----------------------------------------------------------------

double h2_norm_squared(const AnalyticMap& f, const QuadratureGrid& grid) {
    if (auto stream = f.exact_coefficients(4096)) {
        std::vector<double> sq(stream->coeffs.size());
        for (std::size_t k = 0; k < sq.size(); ++k) sq[k] = std::norm(stream->coeffs[k]);
        return two_pi * (pairwise_sum(sq) + stream->tail_energy);
    }
    return two_pi * boundary_mean_sq_adaptive(f, grid.circle_nodes);
}

double h2_norm(const AnalyticMap& f, const QuadratureGrid& grid) {
    return std::sqrt(h2_norm_squared(f, grid));
}

double h2_norm_quadrature(const AnalyticMap& f, int circle_nodes) {
    return std::sqrt(two_pi * circle_mean_sq(f, 1.0, next_pow2(std::max(circle_nodes, 16))));
}

// ---- Hardy-Littlewood identity --------------------------------------------------

namespace {

constexpr int kLogPanels = 34;  // dyadic panels of [2^-34, 1] in the u = r^2 variable

// int_0^1 g(u) (-ln u) du with g(u) the angular mean of |df(sqrt(u) xi)|^2.
double log_weight_integral(const AnalyticMap& df, int per_panel, int m_ang) {
    const GaussRule& gl = gauss_legendre(per_panel);
    const auto& pts = circle_points(m_ang);
    std::vector<double> slot(static_cast<std::size_t>(kLogPanels) * per_panel);
    parallel_for(slot.size(), [&](std::size_t idx) {
        const int k = static_cast<int>(idx) / per_panel;
        const int i = static_cast<int>(idx) % per_panel;
        const double lo = std::ldexp(1.0, -(k + 1));
        const double hi = std::ldexp(1.0, -k);
        const double mid = 0.5 * (hi + lo), half = 0.5 * (hi - lo);
        const double u = mid + half * gl.nodes[i];
        const double r = std::sqrt(u);
        double s = 0.0;
        for (int j = 0; j < m_ang; ++j) s += std::norm(df.eval(r * pts[j]));
        slot[idx] = half * gl.weights[i] * (s / m_ang) * (-std::log(u));
    });
    return pairwise_sum(slot);
}

}  // namespace

IdentityCheck hardy_littlewood_check(const AnalyticMap& f, const QuadratureGrid& grid) {
    const AnalyticMap df = f.derivative();

    int m_ang;
    if (auto deg = df.polynomial_degree())
        m_ang = next_pow2(std::max(2 * *deg + 2, 64));
    else
        m_ang = next_pow2(std::max(grid.circle_nodes / 4, 1024));

    int per_panel = std::max(4, grid.radial_nodes / 32);
    double prev = log_weight_integral(df, per_panel, m_ang);
    double lhs = prev;
    bool settled = false;
    for (int round = 0; round < 5; ++round) {
        per_panel *= 2;
        m_ang = std::min(2 * m_ang, 1 << 16);
        lhs = log_weight_integral(df, per_panel, m_ang);
        if (std::fabs(lhs - prev) <= 1e-6 * std::max(std::fabs(lhs), 1e-12)) {
            settled = true;
            break;
        }
        prev = lhs;
    }
    if (!settled)
        throw QuadratureNonConvergent("hardy_littlewood_check: radial refinement did not stabilize to 1e-6");

    // Closed-form remnant over [0, 2^-34]: g(0) * u0 (1 - ln u0).
    const double u0 = std::ldexp(1.0, -kLogPanels);
    lhs += std::norm(df.eval(0.0)) * u0 * (1.0 - std::log(u0));

    const AnalyticMap centered = AnalyticMap::difference(f, AnalyticMap::constant(f.eval(0.0)));
    const double rhs = h2_norm_squared(centered, grid) / two_pi;
    return IdentityCheck{lhs, rhs};
}

// ---- subordination-type norm comparison -----------------------------------------

RatioCheck composition_norm_check(const AnalyticMap& g, const CertifiedMap& psi,
                                  const QuadratureGrid& grid) {
    if (std::abs(g.eval(0.0)) > 1e-12)
        throw PreconditionViolated("composition_norm_check: g(0) must vanish (to 1e-12)");
    if (std::abs(psi.map.eval(0.0)) > 1e-12)
        throw PreconditionViolated("composition_norm_check: psi(0) must vanish (to 1e-12)");
    const double lhs = h2_norm(compose_trusted(g, psi.map), grid);
    const double rhs = h2_norm(g, grid) * h2_norm(psi.map, grid);
    return RatioCheck{lhs, rhs};
}

// ---- polar disk quadrature --------------------------------------------------------

double disk_integral(const std::function<double(cplx)>& h, const QuadratureGrid& grid) {
    constexpr int kPanels = 20;  // dyadic radial panels [2^-k-1, 2^-k]
    const int per_panel = std::max(8, grid.radial_nodes / kPanels);
    const int m_ang = next_pow2(std::max(grid.circle_nodes, 16));
    const GaussRule& gl = gauss_legendre(per_panel);
    const auto& pts = circle_points(m_ang);

    std::vector<double> slot(static_cast<std::size_t>(kPanels) * per_panel);
    parallel_for(slot.size(), [&](std::size_t idx) {
        const int k = static_cast<int>(idx) / per_panel;
        const int i = static_cast<int>(idx) % per_panel;
        const double lo = std::ldexp(1.0, -(k + 1));
        const double hi = std::ldexp(1.0, -k);
        const double mid = 0.5 * (hi + lo), half = 0.5 * (hi - lo);
        const double r = mid + half * gl.nodes[i];
        double s = 0.0;
        for (int j = 0; j < m_ang; ++j) {
            const double v = h(r * pts[j]);
            if (!std::isfinite(v)) throw NonFiniteSample("disk_integral: non-finite sample at a quadrature node");
            s += v;
        }
        slot[idx] = half * gl.weights[i] * r * s * (two_pi / m_ang);
    });
    return pairwise_sum(slot);
}

// ---- Poisson field -----------------------------------------------------------------

void PoissonField::build(std::vector<cplx> density) {
    nodes_ = static_cast<int>(density.size());
    auto modes = fourier_coefficients(std::move(density));
    const int half = nodes_ / 2;
    double scale = 0.0;
    for (int m = 0; m <= half; ++m) scale = std::max(scale, std::abs(modes[m]));
    int effective = 0;
    for (int m = half; m >= 1; --m) {
        if (std::abs(modes[m]) > 1e-17 * std::max(scale, 1e-300)) {
            effective = m;
            break;
        }
    }
    mean_ = modes[0].real();
    modes_.assign(modes.begin(), modes.begin() + effective + 1);
}

PoissonField::PoissonField(const AnalyticMap& f, int initial_nodes) {
    int M = next_pow2(std::clamp(initial_nodes, 256, 1 << 20));
    for (;;) {
        const auto& pts = circle_points(M);
        std::vector<cplx> density(M);
        parallel_for(M, [&](std::size_t j) { density[j] = std::norm(f.eval(pts[j])); });
        auto modes = fourier_coefficients(std::move(density));
        const int half = M / 2;
        double scale = 0.0, tail = 0.0;
        for (int m = 0; m <= half; ++m) {
            const double mag = std::abs(modes[m]);
            scale = std::max(scale, mag);
            if (m >= (7 * M) / 16) tail = std::max(tail, mag);
        }
        if (tail <= 1e-12 * std::max(scale, 1e-300) || M >= (1 << 20)) {
            nodes_ = M;
            mean_ = modes[0].real();
            int effective = 0;
            for (int m = half; m >= 1; --m) {
                if (std::abs(modes[m]) > 1e-17 * std::max(scale, 1e-300)) {
                    effective = m;
                    break;
                }
            }
            modes_.assign(modes.begin(), modes.begin() + effective + 1);
            return;
        }
        M *= 2;
    }
}

PoissonField::PoissonField(const std::vector<cplx>& boundary_values) {
    std::vector<cplx> density(boundary_values.size());
    for (std::size_t j = 0; j < density.size(); ++j) density[j] = std::norm(boundary_values[j]);
    build(std::move(density));
}

double PoissonField::value(cplx a) const {
    cplx pw = 1.0, acc = 0.0;
    for (std::size_t m = 1; m < modes_.size(); ++m) {
        pw *= a;
        acc += modes_[m] * pw;
    }
    return mean_ + 2.0 * acc.real();
}

}  // namespace campanato
