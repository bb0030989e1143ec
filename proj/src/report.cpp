#include "campanato/report.hpp"

#include <chrono>
#include <cmath>
#include <fstream>
#include <iostream>
#include <utility>
#include <vector>

#include "json.hpp"

#include "campanato/carleson.hpp"
#include "campanato/criteria.hpp"
#include "campanato/errors.hpp"
#include "campanato/nevanlinna.hpp"
#include "campanato/parallel.hpp"
#include "campanato/symbol_dsl.hpp"

namespace campanato {

namespace {

using json = nlohmann::ordered_json;

struct Timer {
    std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
    double ms() const {
        return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    }
};

void validate(const RunConfig& c) {
    if (c.format != "json" && c.format != "csv") throw InputError("format must be json or csv");
    if (c.k_sup < 1 || c.k_sup > 20) throw InputError("k_sup must lie in [1, 20]");
    if (c.base_angles < 4 || c.base_angles > 4096) throw InputError("base angle count must lie in [4, 4096]");
    if (c.angle_cap < c.base_angles || c.angle_cap > 8192)
        throw InputError("angle cap must lie in [base_angles, 8192]");
    if (c.circle_nodes < 64 || c.circle_nodes > (1 << 20))
        throw InputError("circle node count must lie in [64, 2^20]");
    if (c.radial_nodes < 8 || c.radial_nodes > 4096) throw InputError("radial node count must lie in [8, 4096]");
    if (c.depth < 0 || c.depth > 12) throw InputError("dyadic depth must lie in [0, 12]");
    if (c.arc_levels < 0 || c.arc_levels > 12) throw InputError("arc level count must lie in [0, 12]");
    if (!(c.split > 0.0 && c.split < 1.0)) throw InputError("split must lie in (0, 1)");
    if (c.rays < 1 || c.rays > 64) throw InputError("ray count must lie in [1, 64]");
}

DiskGrid grid_of(const RunConfig& c) { return DiskGrid::geometric(c.k_sup, c.base_angles, c.angle_cap); }
QuadratureGrid quad_of(const RunConfig& c) { return QuadratureGrid{c.circle_nodes, c.radial_nodes}; }

AnalyticMap parse_function(const RunConfig& c) {
    return c.function_dsl.empty() ? AnalyticMap::identity() : parse_symbol(c.function_dsl);
}

CertifiedMap certified_symbol(const RunConfig& c) {
    if (c.symbol_dsl.empty()) throw InputError("this command requires --symbol");
    return certify(parse_symbol(c.symbol_dsl));
}

json complex_json(cplx z) { return json{{"re", z.real()}, {"im", z.imag()}}; }

json point_json(DiskPoint a) {
    json j = complex_json(a.value());
    j["abs"] = a.modulus();
    return j;
}

json verdict_json(const Verdict& v) {
    return json{{"outcome", outcome_name(v.outcome)},
                {"max_value", v.max_value},
                {"divergence_exponent", v.divergence_exponent},
                {"fit_residual", v.fit_residual},
                {"notes", v.notes}};
}

json certificate_json(const SelfMapCertificate& c) {
    return json{{"method", c.method_name()},
                {"boundary_max_modulus", c.boundary_max_modulus},
                {"sample_count", c.sample_count}};
}

json config_json(const RunConfig& c) {
    return json{{"command", c.command},
                {"symbol", c.symbol_dsl},
                {"f", c.function_dsl},
                {"p", c.p},
                {"q", c.q},
                {"grid", json{{"k_sup", c.k_sup}, {"base_angles", c.base_angles}, {"angle_cap", c.angle_cap}}},
                {"quadrature", json{{"circle_nodes", c.circle_nodes}, {"radial_nodes", c.radial_nodes}}},
                {"depth", c.depth},
                {"arc_levels", c.arc_levels},
                {"split", c.split},
                {"rays", c.rays},
                {"format", c.format}};
}

json regime_json(const RunConfig& c) {
    return json{{"p", c.p}, {"q", c.q}, {"label", regime_label_name(classify_regime(c.p, c.q))}};
}

json norm_results(const AnalyticMap& f, const RunConfig& c) {
    const SeminormEstimate star = star_seminorm(f, c.p, grid_of(c));
    return json{{"h2_norm", h2_norm(f, quad_of(c))},
                {"star_seminorm", json{{"value", star.value}, {"argmax", point_json(star.argmax)}}},
                {"arc_seminorm", arc_seminorm(f, c.p, c.arc_levels)},
                {"space", space_label_name(classify_space(c.p))}};
}

json criterion_results(const CertifiedMap& cert, const RunConfig& c, CriterionProfile* profile_out) {
    const DiskGrid grid = grid_of(c);
    auto [profile, verdict] = boundedness_profile(cert, c.p, c.q, grid, c.split);
    const DerivativeCriterion deriv = derivative_criterion(cert, c.p, grid);

    json samples = json::array();
    for (std::size_t i = 0; i < profile.samples.size(); ++i) {
        const ThetaSample& s = profile.samples[i];
        samples.push_back(json{{"ring", profile.rings[i]},
                               {"a", complex_json(s.a.value())},
                               {"phi_a", complex_json(s.phi_a)},
                               {"theta", s.theta}});
    }
    json out{{"theta", json{{"max", profile.max_theta},
                            {"argmax", point_json(profile.argmax)},
                            {"inside_split_max", profile.inside_split_max},
                            {"outside_split_max", profile.outside_split_max},
                            {"boundary_trend", profile.boundary_trend},
                            {"verdict", verdict_json(verdict)},
                            {"samples", std::move(samples)}}},
             {"derivative", json{{"max", deriv.value},
                                 {"argmax", point_json(deriv.argmax)},
                                 {"verdict", verdict_json(deriv.verdict)}}}};
    if (profile_out) *profile_out = std::move(profile);
    return out;
}

json rays_json(const VanishingProfile& v) {
    json rays = json::array();
    for (const RayCurve& ray : v.rays) {
        json pts = json::array();
        for (std::size_t j = 0; j < ray.values.size(); ++j)
            pts.push_back(json{{"one_minus_phi", ray.one_minus_phi[j]}, {"value", ray.values[j]}});
        rays.push_back(json{{"angle", ray.angle}, {"ray_max", ray.ray_max}, {"points", std::move(pts)}});
    }
    return json{{"flag", vanishing_flag_name(v.flag)}, {"boundary_sup", v.boundary_sup}, {"rays", std::move(rays)}};
}

json vanishing_results(const CertifiedMap& cert, const RunConfig& c) {
    return json{{"theta_rays", rays_json(vanishing_profile(cert, c.p, c.q, c.rays))},
                {"derivative_rays", rays_json(derivative_vanishing(cert, c.p, c.rays))}};
}

json identity_entry(const char* name, double lhs, double rhs, double rel, double tol) {
    return json{{"name", name}, {"lhs", lhs}, {"rhs", rhs},
                {"rel_error", rel}, {"tolerance", tol}, {"pass", rel <= tol}};
}

json identities_results(const CertifiedMap& cert, const AnalyticMap& f, const RunConfig& c) {
    json checks = json::array();
    const auto guarded = [&checks](const char* name, auto&& body) {
        try {
            checks.push_back(body());
        } catch (const Error& e) {
            checks.push_back(json{{"name", name}, {"error", e.what()}, {"pass", false}});
        }
    };

    guarded("parseval", [&] {
        // Coefficient route against plain boundary quadrature; maps without a
        // closed-form coefficient stream use the adaptive spectral mean.
        const auto stream = f.exact_coefficients();
        double lhs = 0.0;
        const char* method = "spectral";
        if (stream) {
            std::vector<double> sq;
            sq.reserve(stream->coeffs.size());
            for (cplx ck : stream->coeffs) sq.push_back(std::norm(ck));
            lhs = two_pi * (pairwise_sum(sq) + stream->tail_energy);
            method = "coefficient";
        } else {
            lhs = h2_norm_squared(f, quad_of(c));
        }
        const double rhs = h2_norm_quadrature(f, c.circle_nodes);
        const double rel = std::abs(lhs - rhs) / std::max(std::abs(rhs), 1e-12);
        json j = identity_entry("parseval", lhs, rhs, rel, 1e-10);
        j["method"] = method;
        return j;
    });

    guarded("hardy_littlewood", [&] {
        const IdentityCheck chk = hardy_littlewood_check(f, quad_of(c));
        return identity_entry("hardy_littlewood", chk.lhs, chk.rhs, chk.rel_error(), 1e-6);
    });

    guarded("change_of_variable", [&] {
        const IdentityCheck chk = change_of_variable_check(f, cert);
        return identity_entry("change_of_variable", chk.lhs, chk.rhs, chk.rel_error(), 1e-4);
    });

    guarded("norm_counting", [&] {
        const IdentityCheck chk = norm_counting_identity(cert, DiskPoint(cplx(0.0, 0.0)));
        return identity_entry("norm_counting", chk.lhs, chk.rhs, chk.rel_error(), 1e-4);
    });

    guarded("smith_bound", [&] {
        // Recentre so the bound's vanishing-at-zero hypothesis holds.
        const cplx b0 = cert.map.eval(cplx(0.0, 0.0));
        const CertifiedMap psi = certify(compose_trusted(AnalyticMap::moebius(b0), cert.map));
        const SmithCheck chk = smith_bound_check(psi);
        return json{{"name", "smith_bound"}, {"w_star", chk.w_star}, {"worst_ratio", chk.worst_ratio},
                    {"tolerance", 1.0 + 1e-6}, {"pass", chk.worst_ratio <= 1.0 + 1e-6}};
    });

    bool all = true;
    for (const auto& e : checks) all = all && e.value("pass", false);
    return json{{"checks", std::move(checks)}, {"all_pass", all}};
}

json nevanlinna_results(const CertifiedMap& cert, const RunConfig&) {
    json out;
    const cplx b0 = cert.map.eval(cplx(0.0, 0.0));
    const CertifiedMap psi = certify(compose_trusted(AnalyticMap::moebius(b0), cert.map));
    const SmithCheck smith = smith_bound_check(psi);
    out["smith"] = json{{"w_star", smith.w_star}, {"worst_ratio", smith.worst_ratio},
                        {"pass", smith.worst_ratio <= 1.0 + 1e-6}};

    json counts = json::array();
    for (const cplx w : {cplx(0.3, 0.0), cplx(-0.2, 0.4), cplx(0.0, 0.6)}) {
        try {
            counts.push_back(json{{"w", complex_json(w)}, {"value", counting_function(cert.map, w)}});
        } catch (const Error& e) {
            counts.push_back(json{{"w", complex_json(w)}, {"error", e.what()}});
        }
    }
    out["counting"] = std::move(counts);

    try {
        const IdentityCheck chk = norm_counting_identity(cert, DiskPoint(cplx(0.0, 0.0)));
        out["norm_counting"] = json{{"lhs", chk.lhs}, {"rhs", chk.rhs},
                                    {"rel_error", chk.rel_error()}, {"tolerance", 1e-4},
                                    {"pass", chk.rel_error() <= 1e-4}};
    } catch (const Error& e) {
        out["norm_counting"] = json{{"error", e.what()}, {"pass", false}};
    }
    return out;
}

json carleson_results(const AnalyticMap& f, const RunConfig& c) {
    // Recentred copy: the box measure only sees f', and the moment bound
    // requires f(0) = 0.
    const AnalyticMap g = AnalyticMap::difference(f, AnalyticMap::constant(f.eval(cplx(0.0, 0.0))));
    const CarlesonMeasureEstimate est = carleson_norm(g, c.p, c.depth);
    json out{{"carleson_norm",
              json{{"value", est.value},
                   {"witness", json{{"center_angle", est.witness_arc.center_angle},
                                    {"half_length", est.witness_arc.half_length}}},
                   {"depth", est.dyadic_depth}}}};
    if (c.p > 0.0 && c.p < 2.0) {
        const RatioCheck fm = fourth_moment_check(g, c.p, grid_of(c));
        out["fourth_moment"] = json{{"lhs", fm.lhs}, {"rhs", fm.rhs}, {"ratio", fm.ratio()}};
    }
    return out;
}

std::string csv_of_profile(const CriterionProfile& profile) {
    std::string out = "ring,a_re,a_im,a_abs,phi_re,phi_im,theta\n";
    for (std::size_t i = 0; i < profile.samples.size(); ++i) {
        const ThetaSample& s = profile.samples[i];
        out += std::to_string(profile.rings[i]);
        out += ',';
        out += format_real(s.a.value().real());
        out += ',';
        out += format_real(s.a.value().imag());
        out += ',';
        out += format_real(s.a.modulus());
        out += ',';
        out += format_real(s.phi_a.real());
        out += ',';
        out += format_real(s.phi_a.imag());
        out += ',';
        out += format_real(s.theta);
        out += '\n';
    }
    return out;
}

void write_payload(const RunConfig& c, const std::string& payload) {
    if (c.output_path.empty()) {
        std::cout << payload;
        return;
    }
    std::ofstream file(c.output_path);
    if (!file) throw InputError("cannot open output path: " + c.output_path);
    file << payload;
}

}  // namespace

int run(const RunConfig& config) {
    try {
        validate(config);
        if (config.format == "csv" && config.command != "criterion")
            throw InputError("csv output is the flat projection of criterion profile samples; "
                             "use --format json for other commands");

        const Timer total;
        json report;
        report["schema_version"] = 1;
        report["config"] = config_json(config);

        CriterionProfile profile;
        if (config.command == "norm") {
            report["results"] = norm_results(parse_function(config), config);
        } else if (config.command == "criterion") {
            const CertifiedMap cert = certified_symbol(config);
            report["certificate"] = certificate_json(cert.certificate);
            report["results"] = criterion_results(cert, config, &profile);
            report["regime"] = regime_json(config);
        } else if (config.command == "vanishing") {
            const CertifiedMap cert = certified_symbol(config);
            report["certificate"] = certificate_json(cert.certificate);
            report["results"] = vanishing_results(cert, config);
            report["regime"] = regime_json(config);
        } else if (config.command == "identities") {
            const CertifiedMap cert = certified_symbol(config);
            report["certificate"] = certificate_json(cert.certificate);
            report["results"] = identities_results(cert, parse_function(config), config);
        } else if (config.command == "nevanlinna") {
            const CertifiedMap cert = certified_symbol(config);
            report["certificate"] = certificate_json(cert.certificate);
            report["results"] = nevanlinna_results(cert, config);
        } else if (config.command == "carleson") {
            report["results"] = carleson_results(parse_function(config), config);
        } else if (config.command == "full-report") {
            const CertifiedMap cert = certified_symbol(config);
            const AnalyticMap f = parse_function(config);
            report["certificate"] = certificate_json(cert.certificate);
            json results;
            results["criterion"] = criterion_results(cert, config, nullptr);
            results["vanishing"] = vanishing_results(cert, config);
            results["identities"] = identities_results(cert, f, config);
            results["nevanlinna"] = nevanlinna_results(cert, config);
            results["carleson"] = carleson_results(f, config);
            report["results"] = std::move(results);
            report["regime"] = regime_json(config);
        } else {
            throw InputError("unknown command: " + config.command);
        }

        std::string payload;
        if (config.format == "csv") {
            payload = csv_of_profile(profile);
        } else {
            if (config.timings) report["timings"] = json{{"total_ms", total.ms()}};
            payload = report.dump(2) + "\n";
        }
        write_payload(config, payload);
        return 0;
    } catch (const InputError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const CertificationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const NumericError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
}

}  // namespace campanato
