#include "campanato/seminorms.hpp"

#include <algorithm>

#include "campanato/fourier.hpp"
#include "campanato/parallel.hpp"

namespace campanato {

const char* space_label_name(SpaceLabel label) {
    switch (label) {
        case SpaceLabel::hardy_h2: return "hardy_h2";
        case SpaceLabel::morrey: return "morrey";
        case SpaceLabel::bmoa: return "bmoa";
        case SpaceLabel::lipschitz: return "lipschitz";
        case SpaceLabel::constants: return "constants";
    }
    return "unknown";
}

SpaceLabel classify_space(double p) {
    if (p <= 0.0) return SpaceLabel::hardy_h2;
    if (std::fabs(p - 1.0) <= 1e-12) return SpaceLabel::bmoa;
    if (p < 1.0) return SpaceLabel::morrey;
    if (p <= 3.0) return SpaceLabel::lipschitz;
    return SpaceLabel::constants;
}

// ---- grid -------------------------------------------------------------------

DiskGrid DiskGrid::geometric(int k_sup, int base_angles, int angle_cap) {
    if (k_sup < 1 || k_sup > 20) throw InputError("DiskGrid: k_sup must be in [1, 20]");
    if (base_angles < 4) throw InputError("DiskGrid: base_angles must be >= 4");
    if (angle_cap < base_angles) throw InputError("DiskGrid: angle_cap must be >= base_angles");
    return DiskGrid{k_sup, base_angles, angle_cap};
}

double DiskGrid::radius(int k) const { return 1.0 - std::ldexp(1.0, -k); }

int DiskGrid::angles_at(int k) const {
    if (k == 0) return 1;
    const double scaled = static_cast<double>(base_angles) * std::ldexp(1.0, k);
    return static_cast<int>(std::min<double>(scaled, angle_cap));
}

std::vector<DiskPoint> DiskGrid::points() const {
    std::vector<DiskPoint> pts;
    for (int k = 0; k <= k_sup; ++k) {
        const double r = radius(k);
        const int n = angles_at(k);
        for (int j = 0; j < n; ++j) {
            const double t = two_pi * j / n;
            pts.push_back(DiskPoint::grid_point(r * cplx(std::cos(t), std::sin(t))));
        }
    }
    return pts;
}

std::vector<int> DiskGrid::rings() const {
    std::vector<int> out;
    for (int k = 0; k <= k_sup; ++k) out.insert(out.end(), angles_at(k), k);
    return out;
}

// ---- seminorms -----------------------------------------------------------------

namespace {

void require_index_range(double p, const char* who) {
    if (!(p >= 0.0 && p < 2.0)) throw InputError(std::string(who) + ": requires p in [0, 2)");
}

SeminormEstimate grid_max(const std::vector<DiskPoint>& pts, const std::vector<double>& vals) {
    std::size_t best = 0;
    for (std::size_t i = 1; i < vals.size(); ++i)
        if (vals[i] > vals[best]) best = i;
    return SeminormEstimate{vals[best], pts[best]};
}

}  // namespace

SeminormEstimate star_seminorm(const AnalyticMap& f, double p, const DiskGrid& grid) {
    require_index_range(p, "star_seminorm");
    const PoissonField field(f);
    const auto pts = grid.points();
    std::vector<double> vals(pts.size());
    parallel_for(pts.size(), [&](std::size_t i) {
        const cplx a = pts[i].value();
        const double osc_sq = mobius_oscillation_sq(field, f, a);
        vals[i] = std::pow(1.0 - std::norm(a), 1.0 - p) * osc_sq;
    });
    auto est = grid_max(pts, vals);
    est.value = std::sqrt(est.value);
    return est;
}

double arc_seminorm(const AnalyticMap& f, double p, int arc_levels) {
    require_index_range(p, "arc_seminorm");
    if (arc_levels < 0 || arc_levels > 12) throw InputError("arc_seminorm: arc_levels must be in [0, 12]");

    const int M = next_pow2(std::max(4096, 1 << (arc_levels + 5)));
    const auto& pts = circle_points(M);
    std::vector<cplx> samples(M);
    parallel_for(M, [&](std::size_t j) { samples[j] = f.eval(pts[j]); });

    // Doubled prefix sums so cyclic windows need no wrap handling.
    std::vector<cplx> pre1(2 * M + 1, 0.0);
    std::vector<double> pre2(2 * M + 1, 0.0);
    for (int j = 0; j < 2 * M; ++j) {
        pre1[j + 1] = pre1[j] + samples[j % M];
        pre2[j + 1] = pre2[j] + std::norm(samples[j % M]);
    }

    const double dtheta = two_pi / M;
    double best_sq = 0.0;
    for (int level = 0; level <= arc_levels; ++level) {
        const int n = M >> level;  // samples per arc
        const double arc_len = n * dtheta;
        const double weight = std::pow(arc_len, -p);
        const int arcs = 1 << level;
        const int shifts = (level == 0) ? 1 : 2;  // half-shifting the full circle repeats it
        for (int s = 0; s < shifts; ++s) {
            const int offset = s * (n / 2);
            for (int i = 0; i < arcs; ++i) {
                const int start = i * n + offset;
                const cplx sum1 = pre1[start + n] - pre1[start];
                const double sum2 = pre2[start + n] - pre2[start];
                const double osc = std::max(sum2 - std::norm(sum1) / n, 0.0) * dtheta;
                best_sq = std::max(best_sq, weight * osc);
            }
        }
    }
    return std::sqrt(best_sq);
}

AnalyticMap test_function(DiskPoint b, double p) {
    if (b.modulus() > 0.97)
        throw TruncationBudgetExceeded("test_function: requires |b| <= 0.97");
    return AnalyticMap::test_fn(b.value(), p);
}

SeminormEstimate derivative_growth(const AnalyticMap& f, double p, const DiskGrid& grid) {
    require_index_range(p, "derivative_growth");
    const AnalyticMap df = f.derivative();
    const auto pts = grid.points();
    std::vector<double> vals(pts.size());
    parallel_for(pts.size(), [&](std::size_t i) {
        const cplx a = pts[i].value();
        vals[i] = std::pow(1.0 - std::norm(a), 0.5 * (3.0 - p)) * std::abs(df.eval(a));
    });
    return grid_max(pts, vals);
}

}  // namespace campanato
