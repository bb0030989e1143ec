#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "campanato/disk_geometry.hpp"

namespace campanato {

enum class MapKind {
    constant,    // z -> c
    monomial,    // z -> z^n
    affine,      // z -> alpha + beta z
    scale,       // z -> s z
    moebius,     // z -> (b - z)/(1 - conj(b) z), |b| < 1
    test_fn,     // z -> (1-|b|^2)^{(1+p)/2} / (1 - conj(b) z)
    taylor,      // truncated power series with an H^2 bound on the dropped tail
    blaschke,    // u * prod_k factor(z_k), factor = z for z_k = 0, sigma_{z_k} otherwise
    compose,
    sum,
    difference,
    product,
};

struct MapNode;

struct SelfMapCertificate {
    enum class Method { exact_closed_form, boundary_sampling };
    Method method;
    double boundary_max_modulus;  // rigorous bound for sup_T |phi|
    int sample_count;             // 0 on the closed-form path

    const char* method_name() const {
        return method == Method::exact_closed_form ? "exact_closed_form" : "boundary_sampling";
    }
};

// Exact Taylor data for maps whose coefficients have closed form: the leading
// coefficients plus the exact remaining H^2 mass sum_{n > N} |c_n|^2.
struct CoefficientStream {
    std::vector<cplx> coeffs;
    double tail_energy;  // sum of |c_n|^2 beyond the stored range
};

// Coefficients recovered by circle sampling, with a coarse bound on the
// H^2 mass of everything beyond the recovered range.
struct TaylorRecovery {
    std::vector<cplx> coeffs;
    double tail_bound;
};

// Immutable expression tree for an analytic function on the unit disk.
// Copies are shallow and cheap.
class AnalyticMap {
  public:
    static AnalyticMap constant(cplx c);
    static AnalyticMap monomial(int n);
    static AnalyticMap identity() { return monomial(1); }
    static AnalyticMap affine(cplx alpha, cplx beta);
    static AnalyticMap scale(cplx s);
    static AnalyticMap moebius(cplx b);
    static AnalyticMap test_fn(cplx b, double p);
    static AnalyticMap taylor(std::vector<cplx> coeffs, double tail_bound = 0.0);
    static AnalyticMap blaschke(std::vector<cplx> zeros, cplx unimodular = 1.0);

    // Certifies that `inner` maps the disk into itself (throws NotSelfMap).
    static AnalyticMap compose(AnalyticMap outer, AnalyticMap inner);
    static AnalyticMap sum(AnalyticMap f, AnalyticMap g);
    static AnalyticMap difference(AnalyticMap f, AnalyticMap g);
    static AnalyticMap product(AnalyticMap f, AnalyticMap g);

    cplx eval(cplx z) const;
    AnalyticMap derivative() const;

    // True when the boundary modulus is identically 1 by construction
    // (monomials, Moebius transforms, Blaschke products, rotations, and
    // their compositions/products).
    bool is_inner() const;
    // No truncated Taylor data anywhere in the tree.
    bool all_closed_form() const;
    // Exact degree when the tree is a polynomial.
    std::optional<int> polynomial_degree() const;
    // Closed-form coefficient data when every node admits it.
    std::optional<CoefficientStream> exact_coefficients(int n_max = 4096) const;
    // Coefficients a_0..a_{n_max}: exact when closed form, otherwise circle
    // sampling at radius 1-1e-6 (0.999 when truncated Taylor data is present)
    // with discrete Fourier inversion.  Throws CoefficientRecoveryUnstable
    // when the recovered sequence fails to decay below 1e-12 before n_max.
    TaylorRecovery taylor_coefficients(int n_max = 256) const;

    const MapNode& node() const { return *node_; }
    std::string pretty() const;
    bool same_structure(const AnalyticMap& other) const;

  private:
    explicit AnalyticMap(std::shared_ptr<const MapNode> n) : node_(std::move(n)) {}
    static AnalyticMap make_binary(MapKind kind, AnalyticMap f, AnalyticMap g);
    std::shared_ptr<const MapNode> node_;

    friend struct MapNode;
    friend AnalyticMap compose_trusted(AnalyticMap, AnalyticMap);
};

// Shortest round-trip decimal forms, shared by pretty-printing and reports.
std::string format_real(double x);
std::string format_complex(cplx z);  // canonical "RE+IMi" / "RE-IMi"

struct MapNode {
    MapKind kind;
    cplx a{};                  // constant c / affine alpha / test_fn scale / blaschke unimodular
    cplx b{};                  // affine beta / scale s / moebius b / test_fn b
    double p = 0.0;            // test_fn exponent
    int degree = 0;            // monomial degree
    std::vector<cplx> coeffs;  // taylor coefficients or blaschke zeros
    double tail = 0.0;         // taylor: H^2 bound on the dropped tail
    std::shared_ptr<const MapNode> lhs, rhs;

    AnalyticMap left() const;
    AnalyticMap right() const;
};

// Composition that skips re-certifying the inner factor.  For internal use
// when the inner map is already certified or is a disk automorphism built
// in-house (conjugations sigma_b . phi . sigma_a, chain rules, ...).
AnalyticMap compose_trusted(AnalyticMap outer, AnalyticMap inner);

// Rigorous sup_T |phi| bound: closed form where the tree structure gives a
// tight value, otherwise boundary sampling at `boundary_samples` points plus
// a Lipschitz margin from max |phi'| and the sample spacing.  Throws
// NotSelfMap when the bound exceeds 1 + 1e-10.
SelfMapCertificate certify_self_map(const AnalyticMap& phi, int boundary_samples = 8192);

struct CertifiedMap {
    AnalyticMap map;
    SelfMapCertificate certificate;
};

CertifiedMap certify(AnalyticMap phi, int boundary_samples = 8192);

// f as a quotient num/den of polynomials (coefficient vectors, constant
// term first).  Denominators are Blaschke-type products, zero-free on the
// closed disk, so clearing them introduces no spurious in-disk roots.
struct RationalForm {
    std::vector<cplx> num, den;
};

RationalForm rational_form(const AnalyticMap& f, int degree_budget = 64);

}  // namespace campanato
