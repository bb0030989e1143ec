#include "campanato/carleson.hpp"

#include <algorithm>
#include <cmath>

#include "campanato/fourier.hpp"
#include "campanato/parallel.hpp"

namespace campanato {

namespace {

constexpr double kMergeSlack = 1e-12;

ArcUnion full_circle_union() {
    ArcUnion out;
    out.arcs.emplace_back(3.141592653589793, 3.141592653589793);
    out.total_length = two_pi;
    return out;
}

}  // namespace

ArcUnion normalize_arcs(std::vector<CircleArc> arcs) {
    ArcUnion out;
    if (arcs.empty()) return out;

    std::vector<std::pair<double, double>> iv;  // [start, end), end - start = length
    iv.reserve(arcs.size());
    for (const CircleArc& a : arcs) {
        if (a.is_full_circle()) return full_circle_union();
        double s = std::fmod(a.center_angle - a.half_length, two_pi);
        if (s < 0) s += two_pi;
        iv.emplace_back(s, s + a.length());
    }
    std::sort(iv.begin(), iv.end());

    std::vector<std::pair<double, double>> merged;
    for (const auto& v : iv) {
        if (!merged.empty() && v.first <= merged.back().second + kMergeSlack)
            merged.back().second = std::max(merged.back().second, v.second);
        else
            merged.push_back(v);
    }
    // The last interval may spill past 2 pi into the first one.
    if (merged.size() >= 2 && merged.back().second >= merged.front().first + two_pi - kMergeSlack) {
        merged.front().first = merged.back().first - two_pi;
        merged.front().second = std::max(merged.front().second, merged.back().second - two_pi);
        merged.pop_back();
    }

    for (const auto& v : merged) {
        const double len = v.second - v.first;
        if (len >= two_pi - kMergeSlack) return full_circle_union();
        if (len <= kMergeSlack) continue;
        out.arcs.emplace_back(0.5 * (v.first + v.second), 0.5 * len);
        out.total_length += len;
    }
    std::sort(out.arcs.begin(), out.arcs.end(), [](const CircleArc& a, const CircleArc& b) {
        return a.center_angle - a.half_length < b.center_angle - b.half_length;
    });
    return out;
}

// ---- capacity --------------------------------------------------------------

double hausdorff_capacity_upper(const ArcUnion& e, double p) {
    if (!(p > 0.0) || p > 1.0) throw InputError("hausdorff_capacity_upper: p must lie in (0, 1]");
    if (e.arcs.size() > 64)
        throw TooManyArcs("hausdorff_capacity_upper: more than 64 component arcs");
    if (e.empty()) return 0.0;
    if (e.is_full_circle()) return std::pow(two_pi, p);

    const int n = static_cast<int>(e.arcs.size());
    if (n == 1) return std::pow(e.arcs[0].length(), p);

    // Arc starts/lengths in circular order plus the gap after each arc.
    std::vector<double> start(n), len(n), gap(n);
    for (int i = 0; i < n; ++i) {
        double s = std::fmod(e.arcs[i].center_angle - e.arcs[i].half_length, two_pi);
        if (s < 0) s += two_pi;
        start[i] = s;
        len[i] = e.arcs[i].length();
    }
    for (int i = 0; i < n; ++i) {
        const double next = start[(i + 1) % n] + (i + 1 == n ? two_pi : 0.0);
        gap[i] = next - (start[i] + len[i]);
    }

    double best = std::pow(two_pi, p);  // all gaps bridged: one full-circle cover

    if (n <= 20) {
        // Exact within the covering class: force gap c open, then interval DP
        // over the remaining linear sequence of arcs.
        std::vector<double> pos_start(n), pos_end(n), dp(n);
        for (int c = 0; c < n; ++c) {
            double t = 0.0;
            for (int m = 0; m < n; ++m) {
                const int i = (c + 1 + m) % n;
                pos_start[m] = t;
                pos_end[m] = t + len[i];
                t = pos_end[m] + gap[i];
            }
            for (int i = 0; i < n; ++i) {
                dp[i] = std::pow(pos_end[i] - pos_start[0], p);
                for (int j = 1; j <= i; ++j)
                    dp[i] = std::min(dp[i], dp[j - 1] + std::pow(pos_end[i] - pos_start[j], p));
            }
            best = std::min(best, dp[n - 1]);
        }
        return best;
    }

    // Greedy gap-merging for 21..64 arcs: repeatedly bridge the gap whose
    // merge lowers the total cost the most.
    std::vector<double> span(len);     // span of each current run
    std::vector<double> after(gap);    // gap after each current run
    auto cost = [&](double s) { return std::pow(s, p); };
    while (span.size() > 1) {
        int argbest = -1;
        double delta_best = -1e-15;
        for (std::size_t i = 0; i < span.size(); ++i) {
            const std::size_t j = (i + 1) % span.size();
            const double merged = span[i] + after[i] + span[j];
            if (merged > two_pi) continue;
            const double delta = cost(merged) - cost(span[i]) - cost(span[j]);
            if (delta < delta_best) {
                delta_best = delta;
                argbest = static_cast<int>(i);
            }
        }
        if (argbest < 0) break;
        const std::size_t i = static_cast<std::size_t>(argbest), j = (i + 1) % span.size();
        span[i] = span[i] + after[i] + span[j];
        after[i] = after[j];
        span.erase(span.begin() + j);
        after.erase(after.begin() + j);
    }
    double total = 0.0;
    for (double s : span) total += cost(s);
    return std::min(best, total);
}

// ---- level sets ------------------------------------------------------------

namespace {

double bisect_crossing(const std::function<double(double)>& modulus, double t, double theta_out,
                       double theta_in) {
    for (int it = 0; it < 64 && std::fabs(theta_in - theta_out) > 1e-10; ++it) {
        const double mid = 0.5 * (theta_in + theta_out);
        (modulus(mid) > t ? theta_in : theta_out) = mid;
    }
    return 0.5 * (theta_in + theta_out);
}

ArcUnion super_level_arcs(const std::function<double(double)>& modulus, double t, int m) {
    std::vector<double> vals(m);
    parallel_for(static_cast<std::size_t>(m), [&](std::size_t j) {
        vals[j] = modulus(two_pi * static_cast<double>(j) / m);
    });

    int super_count = 0;
    for (double v : vals) super_count += v > t;
    if (super_count == m) return full_circle_union();
    if (super_count == 0) return {};

    // Rotate so the scan starts on a sub-threshold node, then collect maximal
    // super-threshold runs in continuous angles.
    int off = 0;
    while (vals[off] > t) ++off;
    const double h = two_pi / m;
    std::vector<CircleArc> arcs;
    int j = 0;
    while (j < m) {
        while (j < m && !(vals[(off + j) % m] > t)) ++j;
        if (j >= m) break;
        const int run_begin = j;
        while (j < m && vals[(off + j) % m] > t) ++j;
        const int run_end = j - 1;  // inclusive; j < m here because vals[off] <= t
        const double theta_begin = (off + run_begin) * h;
        const double theta_end = (off + run_end) * h;
        const double left = bisect_crossing(modulus, t, theta_begin - h, theta_begin);
        const double right = bisect_crossing(modulus, t, theta_end + h, theta_end);
        const double width = right - left;
        if (width > 1e-12) arcs.emplace_back(0.5 * (left + right), 0.5 * width);
    }
    return normalize_arcs(std::move(arcs));
}

}  // namespace

ArcUnion level_set(const CertifiedMap& phi, DiskPoint a, double t, int boundary_nodes) {
    if (!(t > 0.0 && t < 1.0)) throw InputError("level_set: threshold must lie in (0, 1)");
    const int m = next_pow2(std::clamp(boundary_nodes, 256, 1 << 20));
    const cplx b = phi.map.eval(a.value());
    if (!(std::abs(b) < 1.0 - 1e-12))
        throw NearBoundaryImage("level_set: |phi(a)| is within 1e-12 of the boundary");
    const AnalyticMap psi = compose_trusted(AnalyticMap::moebius(b),
                                            compose_trusted(phi.map, AnalyticMap::moebius(a.value())));
    return super_level_arcs(
        [&](double theta) { return std::abs(psi.eval(std::polar(1.0, theta))); }, t, m);
}

// ---- Carleson box norms ------------------------------------------------------

namespace {

// mu(S) over [rlo, rhi] x [tlo, thi] for dmu = |df|^2 (1 - r^2) dm by tensor Gauss.
double patch_mass(const AnalyticMap& df, double rlo, double rhi, double tlo, double thi,
                  const GaussRule& gr, const GaussRule& ga) {
    const double rmid = 0.5 * (rhi + rlo), rhalf = 0.5 * (rhi - rlo);
    const double tmid = 0.5 * (thi + tlo), thalf = 0.5 * (thi - tlo);
    double sum = 0.0;
    for (std::size_t ir = 0; ir < gr.nodes.size(); ++ir) {
        const double r = rmid + rhalf * gr.nodes[ir];
        const double wr = rhalf * gr.weights[ir] * (1.0 - r * r) * r;
        double ang = 0.0;
        for (std::size_t it = 0; it < ga.nodes.size(); ++it) {
            const double theta = tmid + thalf * ga.nodes[it];
            ang += thalf * ga.weights[it] * std::norm(df.eval(std::polar(r, theta)));
        }
        sum += wr * ang;
    }
    return sum;
}

}  // namespace

CarlesonMeasureEstimate carleson_norm(const AnalyticMap& f, double p, int depth) {
    if (!(p > 0.0 && p <= 3.0)) throw InputError("carleson_norm: p must lie in (0, 3]");
    if (depth < 0 || depth > 12) throw InputError("carleson_norm: depth must lie in [0, 12]");

    const AnalyticMap df = f.derivative();
    const int sectors = 1 << (depth + 1);  // half-arc resolution at the deepest level
    constexpr int kAnnuli = 30;            // [1 - 2^-k, 1 - 2^-(k+1)); drops r >= 1 - 2^-30
    const GaussRule& gr = gauss_legendre(12);
    const GaussRule& ga = gauss_legendre(4);

    // Shared polar cell table; boxes sum cells, so one depth tiles its annulus
    // exactly.
    std::vector<double> cell(static_cast<std::size_t>(kAnnuli) * sectors);
    parallel_for(cell.size(), [&](std::size_t idx) {
        const int k = static_cast<int>(idx) / sectors;
        const int j = static_cast<int>(idx) % sectors;
        const double rlo = 1.0 - std::ldexp(1.0, -k);
        const double rhi = 1.0 - std::ldexp(1.0, -(k + 1));
        cell[idx] = patch_mass(df, rlo, rhi, two_pi * j / sectors, two_pi * (j + 1) / sectors, gr, ga);
    });

    // suffix[k][j] = mass of { r >= 1 - 2^-k } x [0, theta_j): O(1) box queries.
    std::vector<double> suffix(static_cast<std::size_t>(kAnnuli) * (sectors + 1), 0.0);
    for (int k = kAnnuli - 1; k >= 0; --k) {
        for (int j = 0; j < sectors; ++j) {
            const double deeper = k + 1 < kAnnuli ? suffix[(k + 1) * (sectors + 1) + j + 1] -
                                                        suffix[(k + 1) * (sectors + 1) + j]
                                                  : 0.0;
            suffix[k * (sectors + 1) + j + 1] =
                suffix[k * (sectors + 1) + j] + cell[k * sectors + j] + deeper;
        }
    }

    CarlesonMeasureEstimate out;
    out.p = p;
    for (int d = 0; d <= depth; ++d) {
        const int width = sectors >> d;  // sectors per arc
        const double arc_len = two_pi * std::ldexp(1.0, -d);
        const double weight = std::pow(arc_len, -p);
        const int copies = d == 0 ? 1 : 2;  // the half-shifted full circle is the same arc
        for (int shift = 0; shift < copies; ++shift) {
            for (int i = 0; i < (1 << d); ++i) {
                const int s = i * width + shift * (width / 2);
                double mass;
                if (s + width <= sectors) {
                    mass = suffix[d * (sectors + 1) + s + width] - suffix[d * (sectors + 1) + s];
                } else {  // shifted arc wrapping past 2 pi
                    mass = suffix[d * (sectors + 1) + sectors] - suffix[d * (sectors + 1) + s] +
                           suffix[d * (sectors + 1) + (s + width - sectors)];
                }
                const double value = weight * mass;
                if (value > out.value) {
                    out.value = value;
                    const double lo = two_pi * s / sectors;
                    out.witness_arc = CircleArc(std::fmod(lo + 0.5 * arc_len, two_pi), 0.5 * arc_len);
                    out.dyadic_depth = d;
                }
            }
        }
    }
    return out;
}

namespace {

double sector_mass(const AnalyticMap& f, double inner, double tlo, double thi, int radial_nodes,
                   int angular_panels) {
    const AnalyticMap df = f.derivative();
    const GaussRule& gr = gauss_legendre(std::max(4, radial_nodes / 8));
    const GaussRule& ga = gauss_legendre(8);

    // Dyadic radial panels from the floor toward the boundary.
    std::vector<std::pair<double, double>> panels;
    double lo = inner;
    while (1.0 - lo > std::ldexp(1.0, -40)) {
        const double hi = 0.5 * (1.0 + lo);
        panels.emplace_back(lo, hi);
        lo = hi;
    }
    const int slices = std::max(1, angular_panels / 32);
    std::vector<double> slot(panels.size() * slices);
    parallel_for(slot.size(), [&](std::size_t idx) {
        const auto& [rlo, rhi] = panels[idx / slices];
        const int s = static_cast<int>(idx % slices);
        const double a0 = tlo + (thi - tlo) * s / slices;
        const double a1 = tlo + (thi - tlo) * (s + 1) / slices;
        slot[idx] = patch_mass(df, rlo, rhi, a0, a1, gr, ga);
    });
    return pairwise_sum(slot);
}

}  // namespace

double box_mass(const AnalyticMap& f, const CircleArc& arc, int radial_nodes, int angular_panels) {
    return sector_mass(f, 1.0 - arc.length() / two_pi, arc.center_angle - arc.half_length,
                       arc.center_angle + arc.half_length, radial_nodes, angular_panels);
}

double annulus_mass(const AnalyticMap& f, double inner, int radial_nodes, int angular_panels) {
    if (!(inner >= 0.0 && inner < 1.0)) throw InputError("annulus_mass: inner radius must lie in [0, 1)");
    return sector_mass(f, inner, 0.0, two_pi, radial_nodes, angular_panels);
}

// ---- fourth moment -----------------------------------------------------------

namespace {

double boundary_fourth_moment(const AnalyticMap& f) {
    int m = 4096;
    double prev = -1.0;
    for (;;) {
        const auto& pts = circle_points(m);
        std::vector<double> vals(m);
        parallel_for(static_cast<std::size_t>(m), [&](std::size_t j) {
            const double sq = std::norm(f.eval(pts[j]));
            vals[j] = sq * sq;
        });
        const double cur = two_pi * pairwise_sum(vals) / m;
        if (prev >= 0.0 && std::fabs(cur - prev) <= 1e-12 * std::max(cur, 1e-300)) return cur;
        if (m >= (1 << 17))
            throw QuadratureNonConvergent("fourth moment: boundary mean did not stabilize");
        prev = cur;
        m *= 2;
    }
}

}  // namespace

RatioCheck fourth_moment_check(const AnalyticMap& f, double p, const DiskGrid& grid) {
    if (std::abs(f.eval(0.0)) > 1e-12)
        throw PreconditionViolated("fourth_moment_check: requires f(0) = 0");
    if (!(p > 0.0 && p < 2.0)) throw InputError("fourth_moment_check: p must lie in (0, 2)");

    const double lhs = boundary_fourth_moment(f);
    const double star = star_seminorm(f, p, grid).value;

    double rhs;
    if (p >= 1.0) {
        rhs = star * star * h2_norm_squared(f);
    } else {
        // Capacitary branch: rhs = star^2 int_0^tmax t H^p_inf({|f| > t}) dt.
        const int m = 8192;
        const auto modulus = [&](double theta) { return std::abs(f.eval(std::polar(1.0, theta))); };
        std::vector<double> vals(m);
        parallel_for(static_cast<std::size_t>(m), [&](std::size_t j) {
            vals[j] = modulus(two_pi * static_cast<double>(j) / m);
        });
        const double tmax = *std::max_element(vals.begin(), vals.end());
        if (tmax <= 1e-300) return {lhs, 0.0};

        constexpr int kLevels = 64;
        std::vector<double> t(kLevels), h(kLevels);
        for (int i = 0; i < kLevels; ++i)
            t[i] = tmax * std::pow(1e-4, 1.0 - static_cast<double>(i) / (kLevels - 1));
        parallel_for(kLevels, [&](std::size_t i) {
            h[i] = hausdorff_capacity_upper(super_level_arcs(modulus, t[i], m), p);
        });
        double integral = 0.5 * t[0] * t[0] * h[0];  // remnant below the lowest level
        for (int i = 0; i + 1 < kLevels; ++i)
            integral += 0.5 * (t[i + 1] - t[i]) * (t[i] * h[i] + t[i + 1] * h[i + 1]);
        rhs = star * star * integral;
    }
    return {lhs, rhs};
}

}  // namespace campanato
