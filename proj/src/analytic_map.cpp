#include "campanato/analytic_map.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>

#include "campanato/fourier.hpp"
#include "campanato/poly.hpp"

namespace campanato {

namespace {

using NodePtr = std::shared_ptr<const MapNode>;

NodePtr make_node(MapNode n) { return std::make_shared<const MapNode>(std::move(n)); }

cplx ipow(cplx z, int n) {
    cplx acc = 1.0;
    while (n > 0) {
        if (n & 1) acc *= z;
        z *= z;
        n >>= 1;
    }
    return acc;
}

cplx eval_node(const MapNode& n, cplx z);

cplx blaschke_factor(cplx zero, cplx z) {
    if (zero == cplx(0.0)) return z;
    return mobius(zero, z);
}

cplx eval_node(const MapNode& n, cplx z) {
    switch (n.kind) {
        case MapKind::constant:
            return n.a;
        case MapKind::monomial:
            return ipow(z, n.degree);
        case MapKind::affine:
            return n.a + n.b * z;
        case MapKind::scale:
            return n.b * z;
        case MapKind::moebius:
            return mobius(n.b, z);
        case MapKind::test_fn: {
            const cplx den = 1.0 - std::conj(n.b) * z;
            if (std::abs(den) < 1e-15) throw DegenerateDenominator("test_fn: denominator below 1e-15");
            return n.a / den;  // n.a caches (1-|b|^2)^{(1+p)/2}
        }
        case MapKind::taylor:
            return poly_eval(n.coeffs, z);
        case MapKind::blaschke: {
            cplx acc = n.a;
            for (const cplx& zk : n.coeffs) acc *= blaschke_factor(zk, z);
            return acc;
        }
        case MapKind::compose:
            return eval_node(*n.lhs, eval_node(*n.rhs, z));
        case MapKind::sum:
            return eval_node(*n.lhs, z) + eval_node(*n.rhs, z);
        case MapKind::difference:
            return eval_node(*n.lhs, z) - eval_node(*n.rhs, z);
        case MapKind::product:
            return eval_node(*n.lhs, z) * eval_node(*n.rhs, z);
    }
    throw Error("eval: unreachable node kind");
}

}  // namespace

AnalyticMap MapNode::left() const { return AnalyticMap(lhs); }
AnalyticMap MapNode::right() const { return AnalyticMap(rhs); }

// ---- factories -------------------------------------------------------------

AnalyticMap AnalyticMap::constant(cplx c) {
    MapNode n{};
    n.kind = MapKind::constant;
    n.a = c;
    return AnalyticMap(make_node(std::move(n)));
}

AnalyticMap AnalyticMap::monomial(int deg) {
    if (deg < 0) throw InputError("monomial: degree must be >= 0");
    MapNode n{};
    n.kind = MapKind::monomial;
    n.degree = deg;
    return AnalyticMap(make_node(std::move(n)));
}

AnalyticMap AnalyticMap::affine(cplx alpha, cplx beta) {
    MapNode n{};
    n.kind = MapKind::affine;
    n.a = alpha;
    n.b = beta;
    return AnalyticMap(make_node(std::move(n)));
}

AnalyticMap AnalyticMap::scale(cplx s) {
    MapNode n{};
    n.kind = MapKind::scale;
    n.b = s;
    return AnalyticMap(make_node(std::move(n)));
}

AnalyticMap AnalyticMap::moebius(cplx b) {
    if (!(std::abs(b) < 1.0)) throw InputError("moebius: requires |b| < 1");
    MapNode n{};
    n.kind = MapKind::moebius;
    n.b = b;
    return AnalyticMap(make_node(std::move(n)));
}

AnalyticMap AnalyticMap::test_fn(cplx b, double p) {
    if (!(std::abs(b) < 1.0)) throw InputError("test_fn: requires |b| < 1");
    MapNode n{};
    n.kind = MapKind::test_fn;
    n.b = b;
    n.p = p;
    n.a = std::pow(1.0 - std::norm(b), 0.5 * (1.0 + p));
    return AnalyticMap(make_node(std::move(n)));
}

AnalyticMap AnalyticMap::taylor(std::vector<cplx> coeffs, double tail_bound) {
    if (coeffs.empty()) coeffs.push_back(0.0);
    if (!(tail_bound >= 0.0)) throw InputError("taylor: tail bound must be >= 0");
    MapNode n{};
    n.kind = MapKind::taylor;
    n.coeffs = std::move(coeffs);
    n.tail = tail_bound;
    return AnalyticMap(make_node(std::move(n)));
}

AnalyticMap AnalyticMap::blaschke(std::vector<cplx> zeros, cplx unimodular) {
    for (const cplx& z : zeros)
        if (!(std::abs(z) < 1.0)) throw InputError("blaschke: zeros must lie inside the disk");
    const double um = std::abs(unimodular);
    if (std::fabs(um - 1.0) > 1e-12) throw InputError("blaschke: prefactor must be unimodular");
    MapNode n{};
    n.kind = MapKind::blaschke;
    n.coeffs = std::move(zeros);
    n.a = unimodular / um;
    return AnalyticMap(make_node(std::move(n)));
}

AnalyticMap AnalyticMap::compose(AnalyticMap outer, AnalyticMap inner) {
    certify_self_map(inner);  // throws NotSelfMap when the inner factor escapes the disk
    return compose_trusted(std::move(outer), std::move(inner));
}

AnalyticMap AnalyticMap::sum(AnalyticMap f, AnalyticMap g) { return make_binary(MapKind::sum, std::move(f), std::move(g)); }
AnalyticMap AnalyticMap::difference(AnalyticMap f, AnalyticMap g) {
    return make_binary(MapKind::difference, std::move(f), std::move(g));
}
AnalyticMap AnalyticMap::product(AnalyticMap f, AnalyticMap g) {
    return make_binary(MapKind::product, std::move(f), std::move(g));
}

AnalyticMap compose_trusted(AnalyticMap outer, AnalyticMap inner) {
    return AnalyticMap::make_binary(MapKind::compose, std::move(outer), std::move(inner));
}

AnalyticMap AnalyticMap::make_binary(MapKind kind, AnalyticMap f, AnalyticMap g) {
    MapNode n{};
    n.kind = kind;
    n.lhs = std::make_shared<const MapNode>(f.node());
    n.rhs = std::make_shared<const MapNode>(g.node());
    return AnalyticMap(make_node(std::move(n)));
}

// ---- evaluation and calculus ----------------------------------------------

cplx AnalyticMap::eval(cplx z) const { return eval_node(*node_, z); }

AnalyticMap AnalyticMap::derivative() const {
    const MapNode& n = *node_;
    switch (n.kind) {
        case MapKind::constant:
            return constant(0.0);
        case MapKind::monomial:
            if (n.degree == 0) return constant(0.0);
            if (n.degree == 1) return constant(1.0);
            return product(constant(static_cast<double>(n.degree)), monomial(n.degree - 1));
        case MapKind::affine:
            return constant(n.b);
        case MapKind::scale:
            return constant(n.b);
        case MapKind::moebius:
            // sigma_b' = (|b|^2 - 1)/(1 - conj(b) z)^2 = -(test_fn(b,0))^2
            return product(constant(-1.0), compose_trusted(monomial(2), test_fn(n.b, 0.0)));
        case MapKind::test_fn: {
            // d/dz kappa/(1 - conj(b) z) = conj(b) kappa / (1 - conj(b) z)^2
            const cplx factor = std::conj(n.b) * std::pow(1.0 - std::norm(n.b), 0.5 * (n.p - 1.0));
            return product(constant(factor), compose_trusted(monomial(2), test_fn(n.b, 0.0)));
        }
        case MapKind::taylor:
            // Derivative of the stored polynomial part; the dropped tail is not tracked.
            return taylor(poly_derivative(n.coeffs), 0.0);
        case MapKind::blaschke: {
            if (n.coeffs.empty()) return constant(0.0);
            auto factor = [](cplx zk) {
                return zk == cplx(0.0) ? monomial(1) : moebius(zk);
            };
            auto dfactor = [](cplx zk) {
                return zk == cplx(0.0) ? constant(1.0)
                                       : product(constant(-1.0), compose_trusted(monomial(2), test_fn(zk, 0.0)));
            };
            std::optional<AnalyticMap> acc;
            for (std::size_t k = 0; k < n.coeffs.size(); ++k) {
                std::optional<AnalyticMap> term;
                for (std::size_t j = 0; j < n.coeffs.size(); ++j) {
                    AnalyticMap piece = (j == k) ? dfactor(n.coeffs[j]) : factor(n.coeffs[j]);
                    term = term ? product(*term, piece) : piece;
                }
                acc = acc ? sum(*acc, *term) : *term;
            }
            return product(constant(n.a), *acc);
        }
        case MapKind::compose:
            return product(compose_trusted(n.left().derivative(), n.right()), n.right().derivative());
        case MapKind::sum:
            return sum(n.left().derivative(), n.right().derivative());
        case MapKind::difference:
            return difference(n.left().derivative(), n.right().derivative());
        case MapKind::product:
            return sum(product(n.left().derivative(), n.right()), product(n.left(), n.right().derivative()));
    }
    throw Error("derivative: unreachable node kind");
}

// ---- structural predicates --------------------------------------------------

bool AnalyticMap::is_inner() const {
    const MapNode& n = *node_;
    switch (n.kind) {
        case MapKind::monomial:
            return n.degree >= 1;
        case MapKind::moebius:
        case MapKind::blaschke:
            return true;
        case MapKind::scale:
            return std::fabs(std::abs(n.b) - 1.0) < 1e-15;
        case MapKind::compose:
        case MapKind::product:
            return n.left().is_inner() && n.right().is_inner();
        default:
            return false;
    }
}

bool AnalyticMap::all_closed_form() const {
    const MapNode& n = *node_;
    switch (n.kind) {
        case MapKind::taylor:
            return n.tail == 0.0;
        case MapKind::compose:
        case MapKind::sum:
        case MapKind::difference:
        case MapKind::product:
            return n.left().all_closed_form() && n.right().all_closed_form();
        default:
            return true;
    }
}

std::optional<int> AnalyticMap::polynomial_degree() const {
    const MapNode& n = *node_;
    switch (n.kind) {
        case MapKind::constant:
            return 0;
        case MapKind::monomial:
            return n.degree;
        case MapKind::affine:
            return n.b == cplx(0.0) ? 0 : 1;
        case MapKind::scale:
            return n.b == cplx(0.0) ? 0 : 1;
        case MapKind::taylor:
            if (n.tail > 0.0) return std::nullopt;
            return std::max(poly_degree(n.coeffs), 0);
        case MapKind::blaschke:
            // Polynomial exactly when every zero sits at the origin.
            for (const cplx& zk : n.coeffs)
                if (zk != cplx(0.0)) return std::nullopt;
            return static_cast<int>(n.coeffs.size());
        case MapKind::moebius:
        case MapKind::test_fn:
            return std::nullopt;
        case MapKind::compose: {
            const auto d1 = n.left().polynomial_degree(), d2 = n.right().polynomial_degree();
            if (d1 && d2) return *d1 * *d2;
            return std::nullopt;
        }
        case MapKind::sum:
        case MapKind::difference: {
            // Upper bound when leading terms cancel; callers only rely on it
            // for quadrature exactness thresholds.
            const auto d1 = n.left().polynomial_degree(), d2 = n.right().polynomial_degree();
            if (d1 && d2) return std::max(*d1, *d2);
            return std::nullopt;
        }
        case MapKind::product: {
            const auto d1 = n.left().polynomial_degree(), d2 = n.right().polynomial_degree();
            if (d1 && d2) return *d1 + *d2;
            return std::nullopt;
        }
    }
    return std::nullopt;
}

// ---- coefficient access ------------------------------------------------------

std::optional<CoefficientStream> AnalyticMap::exact_coefficients(int n_max) const {
    const MapNode& n = *node_;
    switch (n.kind) {
        case MapKind::constant:
            return CoefficientStream{{n.a}, 0.0};
        case MapKind::monomial: {
            if (n.degree > n_max) return CoefficientStream{std::vector<cplx>(n_max + 1, 0.0), 1.0};
            std::vector<cplx> c(n.degree + 1, 0.0);
            c.back() = 1.0;
            return CoefficientStream{std::move(c), 0.0};
        }
        case MapKind::affine:
            return CoefficientStream{{n.a, n.b}, 0.0};
        case MapKind::scale:
            return CoefficientStream{{0.0, n.b}, 0.0};
        case MapKind::taylor:
            if (n.tail > 0.0) return std::nullopt;
            return CoefficientStream{n.coeffs, 0.0};
        case MapKind::moebius: {
            // sigma_b = b - (1-|b|^2) sum_{n>=1} conj(b)^{n-1} z^n
            const double bb = std::norm(n.b);
            std::vector<cplx> c(n_max + 1, 0.0);
            c[0] = n.b;
            cplx pw = 1.0;
            for (int k = 1; k <= n_max; ++k) {
                c[k] = -(1.0 - bb) * pw;
                pw *= std::conj(n.b);
            }
            // Exact remaining mass: (1-|b|^2) |b|^{2 n_max}.
            const double tail = (1.0 - bb) * std::pow(bb, n_max);
            return CoefficientStream{std::move(c), tail};
        }
        case MapKind::test_fn: {
            const double bb = std::norm(n.b);
            std::vector<cplx> c(n_max + 1, 0.0);
            cplx pw = 1.0;
            for (int k = 0; k <= n_max; ++k) {
                c[k] = n.a * pw;
                pw *= std::conj(n.b);
            }
            // kappa^2 |b|^{2(n_max+1)} / (1 - |b|^2), exact geometric remainder.
            const double kappa2 = std::norm(n.a);
            const double tail = (bb == 0.0) ? 0.0 : kappa2 * std::pow(bb, n_max + 1) / (1.0 - bb);
            return CoefficientStream{std::move(c), tail};
        }
        case MapKind::sum:
        case MapKind::difference: {
            auto s1 = n.left().exact_coefficients(n_max);
            auto s2 = n.right().exact_coefficients(n_max);
            if (!s1 || !s2) return std::nullopt;
            const double sign = (n.kind == MapKind::sum) ? 1.0 : -1.0;
            std::vector<cplx> c(std::max(s1->coeffs.size(), s2->coeffs.size()), 0.0);
            for (std::size_t k = 0; k < s1->coeffs.size(); ++k) c[k] += s1->coeffs[k];
            for (std::size_t k = 0; k < s2->coeffs.size(); ++k) c[k] += sign * s2->coeffs[k];
            // Sub-additive bound on the combined remainder.
            const double t = std::sqrt(s1->tail_energy) + std::sqrt(s2->tail_energy);
            return CoefficientStream{std::move(c), t * t};
        }
        default:
            return std::nullopt;
    }
}

TaylorRecovery AnalyticMap::taylor_coefficients(int n_max) const {
    if (n_max < 1) throw InputError("taylor_coefficients: n_max must be >= 1");
    if (auto exact = exact_coefficients(n_max)) {
        exact->coeffs.resize(n_max + 1, 0.0);
        return TaylorRecovery{std::move(exact->coeffs), std::sqrt(exact->tail_energy)};
    }

    // Circle-sampling recovery: c_n = r^{-n} (1/M) sum_j f(r w^j) w^{-jn}.
    const double r = all_closed_form() ? 1.0 - 1e-6 : 0.999;
    const int M = next_pow2(std::max(1024, 4 * (n_max + 1)));
    const auto& pts = circle_points(M);
    std::vector<cplx> samples(M);
    for (int j = 0; j < M; ++j) samples[j] = eval(r * pts[j]);
    const auto hat = fourier_coefficients(std::move(samples));

    std::vector<cplx> c(n_max + 1);
    double rp = 1.0;
    for (int k = 0; k <= n_max; ++k) {
        c[k] = hat[k] / rp;
        rp *= r;
    }

    double scale = 0.0;
    for (const auto& x : c) scale = std::max(scale, std::abs(x));
    const int w0 = (7 * n_max) / 8;
    double wmax = 0.0, w1 = 0.0, w2 = 0.0;
    for (int k = w0; k <= n_max; ++k) {
        const double m = std::abs(c[k]);
        wmax = std::max(wmax, m);
        if (k < w0 + (n_max - w0) / 2)
            w1 = std::max(w1, m);
        else
            w2 = std::max(w2, m);
    }
    if (wmax > 1e-12 * std::max(1.0, scale))
        throw CoefficientRecoveryUnstable("taylor_coefficients: no decay below 1e-12 before n_max=" +
                                          std::to_string(n_max));

    // Coarse geometric extrapolation of the dropped tail.
    const double ratio = std::clamp(w2 / std::max(w1, 1e-300), 1e-6, 0.999);
    const double tail = wmax * ratio / std::sqrt(1.0 - ratio * ratio);
    return TaylorRecovery{std::move(c), tail};
}

// ---- printing and structural equality ---------------------------------------

std::string format_real(double x) {
    char buf[40];
    const auto res = std::to_chars(buf, buf + sizeof buf, x);
    return std::string(buf, res.ptr);
}

std::string format_complex(cplx z) {
    std::string s = format_real(z.real());
    const double im = z.imag();
    s += std::signbit(im) ? '-' : '+';
    s += format_real(std::fabs(im));
    s += 'i';
    return s;
}

namespace {

std::string pretty_list(const std::vector<cplx>& xs) {
    std::string s = "[";
    for (std::size_t k = 0; k < xs.size(); ++k) {
        if (k) s += ',';
        s += format_complex(xs[k]);
    }
    return s + "]";
}

}  // namespace

std::string AnalyticMap::pretty() const {
    const MapNode& n = *node_;
    switch (n.kind) {
        case MapKind::constant:
            return "const(" + format_complex(n.a) + ")";
        case MapKind::monomial:
            return "monomial(" + std::to_string(n.degree) + ")";
        case MapKind::affine:
            return "affine(" + format_complex(n.a) + "," + format_complex(n.b) + ")";
        case MapKind::scale:
            return "scale(" + format_complex(n.b) + ")";
        case MapKind::moebius:
            return "mobius(" + format_complex(n.b) + ")";
        case MapKind::test_fn:
            return "testfn(" + format_complex(n.b) + "," + format_real(n.p) + ")";
        case MapKind::taylor:
            return "poly(" + pretty_list(n.coeffs) + ")";
        case MapKind::blaschke:
            if (n.a == cplx(1.0)) return "blaschke(" + pretty_list(n.coeffs) + ")";
            return "blaschke(" + pretty_list(n.coeffs) + "," + format_complex(n.a) + ")";
        case MapKind::compose:
            return "compose(" + n.left().pretty() + "," + n.right().pretty() + ")";
        case MapKind::sum:
            return "sum(" + n.left().pretty() + "," + n.right().pretty() + ")";
        case MapKind::difference:
            return "diff(" + n.left().pretty() + "," + n.right().pretty() + ")";
        case MapKind::product:
            return "prod(" + n.left().pretty() + "," + n.right().pretty() + ")";
    }
    throw Error("pretty: unreachable node kind");
}

bool AnalyticMap::same_structure(const AnalyticMap& other) const {
    const MapNode& x = *node_;
    const MapNode& y = *other.node_;
    if (x.kind != y.kind || x.degree != y.degree) return false;
    if (x.a != y.a || x.b != y.b || x.p != y.p || x.tail != y.tail) return false;
    if (x.coeffs != y.coeffs) return false;
    const bool has_children = static_cast<bool>(x.lhs);
    if (has_children != static_cast<bool>(y.lhs)) return false;
    if (!has_children) return true;
    return x.left().same_structure(y.left()) && x.right().same_structure(y.right());
}

// ---- self-map certification ---------------------------------------------------

namespace {

// Rigorous sup_T bound when the structure admits one that is either tight or
// already <= 1; nullopt defers to boundary sampling.
std::optional<double> structural_sup_bound(const MapNode& n) {
    constexpr double kTol = 1.0 + 1e-10;
    switch (n.kind) {
        case MapKind::constant:
            return std::abs(n.a);
        case MapKind::monomial:
            return 1.0;
        case MapKind::affine:
            return std::abs(n.a) + std::abs(n.b);  // attained at arg z = arg(conj(alpha) beta)
        case MapKind::scale:
            return std::abs(n.b);
        case MapKind::moebius:
        case MapKind::blaschke:
            return 1.0;
        case MapKind::test_fn:
            return std::abs(n.a) / (1.0 - std::abs(n.b));
        case MapKind::compose: {
            const auto inner = structural_sup_bound(*n.rhs);
            if (!inner || *inner > 1.0) return std::nullopt;
            const auto outer = structural_sup_bound(*n.lhs);
            if (!outer || *outer > kTol) return std::nullopt;  // outer may still shrink on the inner range
            return *outer;
        }
        case MapKind::product: {
            const auto b1 = structural_sup_bound(*n.lhs);
            const auto b2 = structural_sup_bound(*n.rhs);
            if (!b1 || !b2) return std::nullopt;
            const double prod = *b1 * *b2;
            if (prod > kTol) return std::nullopt;  // upper bound only; let sampling decide
            return prod;
        }
        default:
            return std::nullopt;
    }
}

}  // namespace

SelfMapCertificate certify_self_map(const AnalyticMap& phi, int boundary_samples) {
    constexpr double kTol = 1.0 + 1e-10;
    if (auto bound = structural_sup_bound(phi.node())) {
        if (*bound <= kTol)
            return SelfMapCertificate{SelfMapCertificate::Method::exact_closed_form, *bound, 0};
        throw NotSelfMap("certify_self_map: closed-form boundary bound " + format_real(*bound) + " exceeds 1");
    }

    const int M = std::max(boundary_samples, 64);
    const auto& pts = circle_points(next_pow2(M));
    const int m = static_cast<int>(pts.size());
    const AnalyticMap dphi = phi.derivative();
    double maxmod = 0.0, maxder = 0.0;
    for (const cplx& xi : pts) {
        maxmod = std::max(maxmod, std::abs(phi.eval(xi)));
        maxder = std::max(maxder, std::abs(dphi.eval(xi)));
    }
    // Between samples |phi| can grow by at most half the spacing times the
    // boundary derivative; 1.5 covers the derivative's own variation.
    const double margin = (two_pi / 2 / m) * maxder * 1.5;
    const double bound = maxmod + margin;
    if (bound <= kTol) return SelfMapCertificate{SelfMapCertificate::Method::boundary_sampling, bound, m};
    throw NotSelfMap("certify_self_map: sampled boundary bound " + format_real(bound) + " exceeds 1");
}

CertifiedMap certify(AnalyticMap phi, int boundary_samples) {
    SelfMapCertificate cert = certify_self_map(phi, boundary_samples);
    return CertifiedMap{std::move(phi), cert};
}

// ---- rational normal form -----------------------------------------------------

namespace {

struct RawRational {
    std::vector<cplx> num, den;
};

void check_budget(const RawRational& r, int budget) {
    if (poly_degree(r.num) > budget || poly_degree(r.den) > budget)
        throw DegreeBudgetExceeded("rational_form: degree budget " + std::to_string(budget) + " exceeded");
}

RawRational rational_node(const MapNode& n, int budget) {
    RawRational r;
    switch (n.kind) {
        case MapKind::constant:
            r = {{n.a}, {1.0}};
            break;
        case MapKind::monomial: {
            std::vector<cplx> num(n.degree + 1, 0.0);
            num.back() = 1.0;
            r = {std::move(num), {1.0}};
            break;
        }
        case MapKind::affine:
            r = {{n.a, n.b}, {1.0}};
            break;
        case MapKind::scale:
            r = {{0.0, n.b}, {1.0}};
            break;
        case MapKind::moebius:
            r = {{n.b, -1.0}, {1.0, -std::conj(n.b)}};
            break;
        case MapKind::test_fn:
            r = {{n.a}, {1.0, -std::conj(n.b)}};
            break;
        case MapKind::taylor:
            // The stored polynomial part; truncated tails have no rational form.
            r = {n.coeffs, {1.0}};
            break;
        case MapKind::blaschke: {
            r = {{n.a}, {1.0}};
            for (const cplx& zk : n.coeffs) {
                if (zk == cplx(0.0)) {
                    r.num = poly_mul(r.num, {0.0, 1.0});
                } else {
                    r.num = poly_mul(r.num, {zk, -1.0});
                    r.den = poly_mul(r.den, {1.0, -std::conj(zk)});
                }
            }
            break;
        }
        case MapKind::sum:
        case MapKind::difference: {
            const RawRational f = rational_node(*n.lhs, budget);
            const RawRational g = rational_node(*n.rhs, budget);
            const auto cross1 = poly_mul(f.num, g.den);
            const auto cross2 = poly_mul(g.num, f.den);
            r.num = (n.kind == MapKind::sum) ? poly_add(cross1, cross2) : poly_sub(cross1, cross2);
            r.den = poly_mul(f.den, g.den);
            break;
        }
        case MapKind::product: {
            const RawRational f = rational_node(*n.lhs, budget);
            const RawRational g = rational_node(*n.rhs, budget);
            r.num = poly_mul(f.num, g.num);
            r.den = poly_mul(f.den, g.den);
            break;
        }
        case MapKind::compose: {
            // (P_o/Q_o)(P_i/Q_i): homogenize with powers of Q_i.
            const RawRational o = rational_node(*n.lhs, budget);
            const RawRational i = rational_node(*n.rhs, budget);
            const int d = std::max<int>(std::max(poly_degree(o.num), poly_degree(o.den)), 0);
            std::vector<std::vector<cplx>> pi_pow(d + 1), qi_pow(d + 1);
            pi_pow[0] = {1.0};
            qi_pow[0] = {1.0};
            for (int k = 1; k <= d; ++k) {
                pi_pow[k] = poly_mul(pi_pow[k - 1], i.num);
                qi_pow[k] = poly_mul(qi_pow[k - 1], i.den);
            }
            auto expand = [&](const std::vector<cplx>& c) {
                std::vector<cplx> acc;
                for (int k = 0; k <= d; ++k) {
                    const cplx ck = (k < static_cast<int>(c.size())) ? c[k] : cplx(0.0);
                    if (ck == cplx(0.0)) continue;
                    acc = poly_add(acc, poly_scale(poly_mul(pi_pow[k], qi_pow[d - k]), ck));
                }
                if (acc.empty()) acc = {0.0};
                return acc;
            };
            r.num = expand(o.num);
            r.den = expand(o.den);
            break;
        }
    }
    r.num = poly_trim(r.num);
    r.den = poly_trim(r.den);
    if (r.den.empty()) throw Error("rational_form: denominator vanished");
    if (r.num.empty()) r.num = {0.0};
    check_budget(r, budget);
    return r;
}

}  // namespace

RationalForm rational_form(const AnalyticMap& f, int degree_budget) {
    if (degree_budget < 1 || degree_budget > 64)
        throw InputError("rational_form: degree budget must lie in [1, 64]");
    RawRational r = rational_node(f.node(), degree_budget);
    return RationalForm{std::move(r.num), std::move(r.den)};
}

}  // namespace campanato
