#include "campanato/criteria.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <set>

#include "campanato/errors.hpp"
#include "campanato/fourier.hpp"
#include "campanato/parallel.hpp"

namespace campanato {

namespace {

constexpr double kNearBoundaryTol = 1e-12;

// Unit-circle nodes xi_j = e^{2 pi i j / m}, shared across evaluators so the
// per-point Poisson sums only stream precomputed arrays.
const std::vector<cplx>& unit_nodes(int m) {
    static std::mutex mu;
    static std::map<int, std::unique_ptr<const std::vector<cplx>>> table;
    std::lock_guard<std::mutex> lock(mu);
    auto it = table.find(m);
    if (it == table.end()) {
        auto nodes = std::make_unique<std::vector<cplx>>(m);
        auto& xs = *nodes;
        parallel_for(static_cast<std::size_t>(m), [&](std::size_t j) {
            xs[j] = std::polar(1.0, two_pi * static_cast<double>(j) / static_cast<double>(m));
        });
        it = table.emplace(m, std::move(nodes)).first;
    }
    return *it->second;
}

double mean_of(const std::vector<double>& xs) {
    return xs.empty() ? 0.0 : pairwise_sum(xs) / static_cast<double>(xs.size());
}

// UnboundedEvidence: least-squares slope of ln(ring max) against depth*ln 2
// (i.e. against -ln(1 - r_k)) over the deepest 8 rings is >= 0.1 with rms
// residual <= 0.05, using at least 6 positive rings.  BoundedEvidence: the
// running max moved by <= 2% over the deepest 4 rings.  Blow-up is tested
// first so a diverging quantity is never called stable merely because the
// divergence is slow.
Verdict evidence_verdict(const std::vector<double>& ring_max) {
    Verdict v;
    if (!ring_max.empty()) v.max_value = *std::max_element(ring_max.begin(), ring_max.end());
    const int n = static_cast<int>(ring_max.size());

    std::vector<double> xs, ys;
    for (int k = std::max(0, n - 8); k < n; ++k) {
        if (ring_max[k] > 0.0) {
            xs.push_back(static_cast<double>(k) * std::log(2.0));
            ys.push_back(std::log(ring_max[k]));
        }
    }
    if (xs.size() >= 6) {
        const double mx = mean_of(xs), my = mean_of(ys);
        double sxx = 0.0, sxy = 0.0;
        for (std::size_t i = 0; i < xs.size(); ++i) {
            sxx += (xs[i] - mx) * (xs[i] - mx);
            sxy += (xs[i] - mx) * (ys[i] - my);
        }
        const double slope = sxy / sxx;
        double ss = 0.0;
        for (std::size_t i = 0; i < xs.size(); ++i) {
            const double r = ys[i] - my - slope * (xs[i] - mx);
            ss += r * r;
        }
        const double rms = std::sqrt(ss / static_cast<double>(xs.size()));
        v.divergence_exponent = slope;
        v.fit_residual = rms;
        if (slope >= 0.1 && rms <= 0.05) {
            v.outcome = Outcome::unbounded_evidence;
            v.notes = "ring maxima grow like a positive power of 1/(1-|a|)";
            return v;
        }
    }

    if (n >= 4) {
        std::vector<double> running(ring_max);
        for (int k = 1; k < n; ++k) running[k] = std::max(running[k - 1], running[k]);
        const double last = running[n - 1];
        const double change = (last - running[n - 4]) / std::max(last, 1e-300);
        if (change <= 0.02) {
            v.outcome = Outcome::bounded_evidence;
            v.notes = "running max stable over the deepest 4 rings";
            return v;
        }
    }

    v.outcome = Outcome::inconclusive;
    v.notes = "no stable trend at this grid depth";
    return v;
}

bool is_constant_map(const AnalyticMap& map) {
    const auto degree = map.polynomial_degree();
    return degree.has_value() && *degree == 0;
}

// Angles of the (separated) near-maxima of |phi| on the unit circle: the
// directions along which |phi(a)| can actually approach 1.  An inner symbol,
// flat at modulus 1, yields ray_count roughly equispaced rays.
std::vector<double> boundary_peak_angles(const AnalyticMap& phi, int ray_count, double& boundary_sup) {
    const int m = 8192;
    std::vector<double> mod(m);
    parallel_for(static_cast<std::size_t>(m), [&](std::size_t j) {
        mod[j] = std::abs(phi.eval(std::polar(1.0, two_pi * static_cast<double>(j) / m)));
    });
    boundary_sup = *std::max_element(mod.begin(), mod.end());

    std::vector<char> blocked(m, 0);
    std::vector<double> angles;
    const int guard = m / (2 * ray_count);
    for (int pick = 0; pick < ray_count; ++pick) {
        int best = -1;
        for (int j = 0; j < m; ++j)
            if (!blocked[j] && (best < 0 || mod[j] > mod[best])) best = j;
        if (best < 0 || mod[best] < boundary_sup - 1e-9) break;
        angles.push_back(two_pi * static_cast<double>(best) / m);
        for (int d = -guard; d <= guard; ++d) blocked[((best + d) % m + m) % m] = 1;
    }
    std::sort(angles.begin(), angles.end());
    return angles;
}

constexpr int kRayDepth = 12;  // radii 1 - 2^-j, j = 0..12

// Tabulates `quantity` along boundary-approach rays and grades the decay.
VanishingProfile ray_profile(const CertifiedMap& phi, int ray_count,
                             const std::function<double(DiskPoint)>& quantity) {
    if (ray_count < 1 || ray_count > 64) throw InputError("ray count must lie in [1, 64]");

    VanishingProfile out;
    if (is_constant_map(phi.map)) {
        out.flag = VanishingFlag::vacuously_true;
        out.boundary_sup = std::abs(phi.map.eval(cplx(0.0, 0.0)));
        return out;
    }

    const std::vector<double> angles = boundary_peak_angles(phi.map, ray_count, out.boundary_sup);
    if (out.boundary_sup < 1.0 - 1e-6) {
        // |phi| stays uniformly inside the disk: nothing to vanish along.
        out.flag = VanishingFlag::vacuously_true;
        return out;
    }

    for (double angle : angles) {
        RayCurve curve;
        curve.angle = angle;
        for (int j = 0; j <= kRayDepth; ++j) {
            const double r = 1.0 - std::pow(2.0, -j);
            const DiskPoint a(std::polar(r, angle));
            curve.one_minus_phi.push_back(1.0 - std::abs(phi.map.eval(a.value())));
            curve.values.push_back(quantity(a));
        }
        curve.ray_max = *std::max_element(curve.values.begin(), curve.values.end());
        out.rays.push_back(std::move(curve));
    }

    bool all_decayed = true, any_non_decreasing = false;
    for (const RayCurve& curve : out.rays) {
        const int n = static_cast<int>(curve.values.size());
        for (int j = n - 3; j < n; ++j)
            if (!(curve.values[j] < 0.05 * curve.ray_max)) all_decayed = false;
        bool non_decreasing = true;
        for (int j = n - 4; j + 1 < n; ++j)
            if (!(curve.values[j + 1] >= curve.values[j] * (1.0 - 1e-9))) non_decreasing = false;
        if (non_decreasing) any_non_decreasing = true;
    }
    if (all_decayed)
        out.flag = VanishingFlag::vanishing;
    else if (any_non_decreasing)
        out.flag = VanishingFlag::not_vanishing;
    else
        out.flag = VanishingFlag::inconclusive;
    return out;
}

}  // namespace

const char* outcome_name(Outcome outcome) {
    switch (outcome) {
        case Outcome::bounded_evidence: return "BoundedEvidence";
        case Outcome::unbounded_evidence: return "UnboundedEvidence";
        case Outcome::inconclusive: return "Inconclusive";
    }
    return "Inconclusive";
}

const char* vanishing_flag_name(VanishingFlag flag) {
    switch (flag) {
        case VanishingFlag::vanishing: return "Vanishing";
        case VanishingFlag::not_vanishing: return "NotVanishing";
        case VanishingFlag::inconclusive: return "Inconclusive";
        case VanishingFlag::vacuously_true: return "VacuouslyTrue";
    }
    return "Inconclusive";
}

const char* regime_label_name(RegimeLabel label) {
    switch (label) {
        case RegimeLabel::converse_established: return "established";
        case RegimeLabel::converse_conjectural: return "conjectural";
    }
    return "conjectural";
}

RegimeLabel classify_regime(double p, double q) {
    if (!(p >= 0.0 && p < 2.0) || !(q >= 0.0 && q < 2.0))
        throw InputError("regime classification covers p, q in [0, 2)");
    const bool q_is_one = std::abs(q - 1.0) <= 1e-12;
    if (q_is_one || p > 1.0) return RegimeLabel::converse_established;
    return RegimeLabel::converse_conjectural;
}

// ============================================================================
// ThetaEvaluator
// ============================================================================

ThetaEvaluator::ThetaEvaluator(CertifiedMap phi, double p, double q)
    : phi_(std::move(phi)), p_(p), q_(q) {
    if (!(p_ >= 0.0 && p_ < 2.0) || !(q_ >= 0.0 && q_ < 2.0))
        throw InputError("theta indices must lie in [0, 2)");
    constant_ = is_constant_map(phi_.map);
    inner_ = !constant_ && phi_.map.is_inner();
}

int ThetaEvaluator::resolution_for(DiskPoint a, cplx b) const {
    // The density |sigma_b o phi|^2 varies on scale 1-|b| and the Poisson
    // kernel at a on scale 1-|a|; 64 nodes per unit of the finer scale keeps
    // the trapezoid error of this periodic analytic integrand near machine
    // precision (it decays like exp(-m * scale)).
    const double scale = std::min(1.0 - a.modulus(), 1.0 - std::abs(b));
    const double raw = 64.0 / std::max(scale, 1e-6);
    return next_pow2(static_cast<int>(std::clamp(raw, 4096.0, 1048576.0)));
}

const std::vector<cplx>& ThetaEvaluator::samples_at(int m) const {
    std::lock_guard<std::mutex> lock(mutex_);
    auto it = cache_.find(m);
    if (it == cache_.end()) {
        const std::vector<cplx>& nodes = unit_nodes(m);
        auto samples = std::make_unique<std::vector<cplx>>(m);
        auto& xs = *samples;
        const AnalyticMap& map = phi_.map;
        parallel_for(static_cast<std::size_t>(m), [&](std::size_t j) { xs[j] = map.eval(nodes[j]); });
        it = cache_.emplace(m, std::move(samples)).first;
    }
    return *it->second;
}

void ThetaEvaluator::prewarm(const std::vector<DiskPoint>& points) const {
    if (constant_ || inner_) return;
    std::set<int> sizes;
    for (const DiskPoint& a : points) {
        const cplx b = phi_.map.eval(a.value());
        if (1.0 - std::norm(b) < kNearBoundaryTol) continue;  // value() will refuse it anyway
        sizes.insert(resolution_for(a, b));
    }
    for (int m : sizes) samples_at(m);
}

double ThetaEvaluator::value(DiskPoint a) const {
    if (constant_) return 0.0;

    const cplx av = a.value();
    const cplx b = phi_.map.eval(av);
    const double one_minus_b2 = 1.0 - std::norm(b);
    if (one_minus_b2 < kNearBoundaryTol)
        throw NearBoundaryImage("theta: |phi(a)| is within 1e-12 of the unit circle");

    const double one_minus_a2 = 1.0 - std::norm(av);
    const double weight = std::pow(one_minus_a2, 1.0 - q_) / std::pow(one_minus_b2, 1.0 - p_);

    // psi_a = sigma_{phi(a)} o phi o sigma_a fixes 0, so ||psi_a||_2^2 equals
    // 2 pi times the Poisson average of |sigma_{phi(a)} o phi|^2 at a.  For an
    // inner symbol that boundary density is identically 1.
    if (inner_) return weight * two_pi;

    const int m = resolution_for(a, b);
    const std::vector<cplx>& phi_samples = samples_at(m);
    const std::vector<cplx>& nodes = unit_nodes(m);

    double sum = 0.0, comp = 0.0;  // compensated: up to 2^20 nonnegative terms
    for (int j = 0; j < m; ++j) {
        const cplx w = phi_samples[j];
        const double density = std::norm(b - w) / std::norm(1.0 - std::conj(b) * w);
        const double kernel = one_minus_a2 / std::norm(nodes[j] - av);
        const double term = density * kernel - comp;
        const double next = sum + term;
        comp = (next - sum) - term;
        sum = next;
    }
    return weight * two_pi * sum / static_cast<double>(m);
}

double theta(const CertifiedMap& phi, DiskPoint a, double p, double q) {
    return ThetaEvaluator(phi, p, q).value(a);
}

// ============================================================================
// Criterion sweeps
// ============================================================================

std::pair<CriterionProfile, Verdict> boundedness_profile(const CertifiedMap& phi, double p, double q,
                                                         const DiskGrid& grid, double split) {
    if (!(split > 0.0 && split < 1.0)) throw InputError("split radius must lie in (0, 1)");
    const ThetaEvaluator eval(phi, p, q);
    const std::vector<DiskPoint> points = grid.points();
    const std::vector<int> rings = grid.rings();
    eval.prewarm(points);

    CriterionProfile profile;
    profile.p = p;
    profile.q = q;
    profile.split = split;
    profile.rings = rings;
    profile.samples.assign(points.size(), ThetaSample{DiskPoint(cplx(0.0, 0.0)), cplx(0.0, 0.0), 0.0});
    parallel_for(points.size(), [&](std::size_t i) {
        profile.samples[i] = ThetaSample{points[i], eval.image(points[i]), eval.value(points[i])};
    });

    std::size_t best = 0;
    std::vector<double> ring_max(static_cast<std::size_t>(grid.ring_count()), 0.0);
    for (std::size_t i = 0; i < profile.samples.size(); ++i) {
        const ThetaSample& s = profile.samples[i];
        if (s.theta > profile.samples[best].theta) best = i;
        double& side = std::abs(s.phi_a) <= split ? profile.inside_split_max : profile.outside_split_max;
        side = std::max(side, s.theta);
        ring_max[static_cast<std::size_t>(rings[i])] = std::max(ring_max[static_cast<std::size_t>(rings[i])], s.theta);
    }
    profile.max_theta = profile.samples[best].theta;
    profile.argmax = points[best];

    Verdict verdict = evidence_verdict(ring_max);
    profile.boundary_trend = verdict.divergence_exponent;
    return {std::move(profile), std::move(verdict)};
}

VanishingProfile vanishing_profile(const CertifiedMap& phi, double p, double q, int ray_count) {
    const ThetaEvaluator eval(phi, p, q);
    return ray_profile(phi, ray_count, [&eval](DiskPoint a) { return eval.value(a); });
}

DerivativeCriterion derivative_criterion(const CertifiedMap& phi, double p, const DiskGrid& grid) {
    if (!(p >= 0.0 && p < 2.0)) throw InputError("derivative criterion requires p in [0, 2)");
    const AnalyticMap dphi = phi.map.derivative();
    const std::vector<DiskPoint> points = grid.points();
    const std::vector<int> rings = grid.rings();

    std::vector<double> values(points.size(), 0.0);
    parallel_for(points.size(), [&](std::size_t i) {
        const cplx av = points[i].value();
        const double ratio = (1.0 - std::norm(av)) / (1.0 - std::norm(phi.map.eval(av)));
        values[i] = std::pow(ratio, 0.5 * (3.0 - p)) * std::abs(dphi.eval(av));
    });

    DerivativeCriterion out;
    std::size_t best = 0;
    std::vector<double> ring_max(static_cast<std::size_t>(grid.ring_count()), 0.0);
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (values[i] > values[best]) best = i;
        ring_max[static_cast<std::size_t>(rings[i])] = std::max(ring_max[static_cast<std::size_t>(rings[i])], values[i]);
    }
    out.value = values[best];
    out.argmax = points[best];
    out.verdict = evidence_verdict(ring_max);
    return out;
}

VanishingProfile derivative_vanishing(const CertifiedMap& phi, double p, int ray_count) {
    if (!(p >= 0.0 && p < 2.0)) throw InputError("derivative criterion requires p in [0, 2)");
    const AnalyticMap dphi = phi.map.derivative();
    return ray_profile(phi, ray_count, [&phi, &dphi, p](DiskPoint a) {
        const cplx av = a.value();
        const double ratio = (1.0 - std::norm(av)) / (1.0 - std::norm(phi.map.eval(av)));
        return std::pow(ratio, 0.5 * (3.0 - p)) * std::abs(dphi.eval(av));
    });
}

RatioCheck norm_transfer_bound_check(const CertifiedMap& phi, double p, const AnalyticMap& f,
                                     const DiskGrid& grid) {
    if (!(p >= 0.0 && p <= 1.0)) throw InputError("transfer bound requires p in [0, 1]");
    const double c0 = std::abs(phi.map.eval(cplx(0.0, 0.0)));
    if (c0 >= 1.0 - kNearBoundaryTol)
        throw NearBoundaryImage("transfer constant degenerates as |phi(0)| -> 1");
    const double lhs = star_seminorm(compose_trusted(f, phi.map), p, grid).value;
    const double factor = std::pow((1.0 + c0) / (1.0 - c0), 0.5 * (1.0 - p));
    const double rhs = factor * star_seminorm(f, p, grid).value;
    return RatioCheck{lhs, rhs};
}

std::vector<LevelMeasurePoint> level_measure_diagnostic(const CertifiedMap& phi, double p, double q,
                                                        double s, const std::vector<double>& t_grid,
                                                        const DiskGrid& grid) {
    if (std::abs(q - 1.0) > 1e-12) throw InputError("level measure diagnostic requires q = 1");
    if (!(p >= 0.0 && p < 2.0)) throw InputError("level measure diagnostic requires p in [0, 2)");
    if (!(s > 0.0 && s < 1.0)) throw InputError("restriction radius s must lie in (0, 1)");
    for (double t : t_grid)
        if (!(t > 0.0 && t < 1.0)) throw InputError("level thresholds must lie in (0, 1)");

    std::vector<DiskPoint> qualifying;
    std::vector<double> weights;
    for (const DiskPoint& a : grid.points()) {
        const cplx b = phi.map.eval(a.value());
        if (std::abs(b) > s) continue;
        qualifying.push_back(a);
        weights.push_back(std::pow(1.0 - std::norm(a.value()), 1.0 - q) /
                          std::pow(1.0 - std::norm(b), 1.0 - p));
    }

    std::vector<LevelMeasurePoint> curve;
    curve.reserve(t_grid.size());
    for (double t : t_grid) {
        std::vector<double> vals(qualifying.size(), 0.0);
        parallel_for(qualifying.size(), [&](std::size_t i) {
            vals[i] = weights[i] * level_set(phi, qualifying[i], t).total_length;
        });
        const double best = vals.empty() ? 0.0 : *std::max_element(vals.begin(), vals.end());
        curve.push_back(LevelMeasurePoint{t, best});
    }
    return curve;
}

}  // namespace campanato
