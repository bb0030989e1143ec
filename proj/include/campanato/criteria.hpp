#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <utility>

#include "campanato/carleson.hpp"

namespace campanato {

// Evidence grades for "sup < inf" / "limit = 0" style statements, which are
// undecidable from finite samples: every verdict is graded evidence from a
// fitted trend, never a proof.
enum class Outcome { bounded_evidence, unbounded_evidence, inconclusive };
const char* outcome_name(Outcome outcome);

enum class VanishingFlag { vanishing, not_vanishing, inconclusive, vacuously_true };
const char* vanishing_flag_name(VanishingFlag flag);

struct Verdict {
    Outcome outcome = Outcome::inconclusive;
    double max_value = 0.0;            // grid max of the criterion quantity
    double divergence_exponent = 0.0;  // fitted slope of ln(ring max) vs ring depth * ln 2
    double fit_residual = 0.0;         // rms residual of that fit
    std::string notes;
};

struct ThetaSample {
    DiskPoint a;
    cplx phi_a;
    double theta;
};

// The composition-criterion quantity
//   theta(a) = (1-|a|^2)^{1-q} / (1-|phi(a)|^2)^{1-p} * ||sigma_{phi(a)} o phi o sigma_a||_2^2
// over a supremum grid, with the case split at |phi(a)| <= split recorded.
struct CriterionProfile {
    double p = 0.0, q = 0.0;
    double split = 0.9;
    std::vector<ThetaSample> samples;  // aligned with the grid's points()
    std::vector<int> rings;            // aligned ring indices
    double max_theta = 0.0;
    DiskPoint argmax{cplx(0, 0)};
    double boundary_trend = 0.0;              // divergence exponent of the ring maxima
    double inside_split_max = 0.0;            // over samples with |phi(a)| <= split
    double outside_split_max = 0.0;           // over samples with |phi(a)| > split
};

// Evaluates theta at single points with the per-symbol boundary samples
// cached across resolutions.  The H^2 norm of psi_a = sigma_{phi(a)} o phi o
// sigma_a is computed through the Poisson representation
//   ||psi_a||_2^2 = 2 pi P[|sigma_{phi(a)} o phi|^2](a),
// exact for the boundary density and spectrally accurate in the node count;
// inner symbols short-circuit to 2 pi exactly.
class ThetaEvaluator {
  public:
    ThetaEvaluator(CertifiedMap phi, double p, double q);

    double value(DiskPoint a) const;  // throws NearBoundaryImage when 1-|phi(a)|^2 < 1e-12
    cplx image(DiskPoint a) const { return phi_.map.eval(a.value()); }
    const CertifiedMap& symbol() const { return phi_; }

    // Computes (in parallel) and caches the sample resolutions the given grid
    // points will request, so later value() calls only read.
    void prewarm(const std::vector<DiskPoint>& points) const;

  private:
    const std::vector<cplx>& samples_at(int m) const;
    int resolution_for(DiskPoint a, cplx b) const;

    CertifiedMap phi_;
    double p_, q_;
    bool constant_ = false, inner_ = false;
    mutable std::mutex mutex_;
    mutable std::map<int, std::unique_ptr<const std::vector<cplx>>> cache_;
};

double theta(const CertifiedMap& phi, DiskPoint a, double p, double q);

// Grid sweep of theta plus an evidence verdict from the ring maxima.
// p, q in [0, 2).
std::pair<CriterionProfile, Verdict> boundedness_profile(const CertifiedMap& phi, double p, double q,
                                                         const DiskGrid& grid = {}, double split = 0.9);

// One boundary-approach ray: values tabulated at a = (1 - 2^-j) e^{i angle}.
struct RayCurve {
    double angle = 0.0;
    std::vector<double> one_minus_phi;  // 1 - |phi(a)| per depth
    std::vector<double> values;         // criterion quantity per depth
    double ray_max = 0.0;
};

struct VanishingProfile {
    VanishingFlag flag = VanishingFlag::inconclusive;
    std::vector<RayCurve> rays;
    double boundary_sup = 0.0;  // sampled sup_T |phi|
};

// Decay of theta along rays toward the boundary maxima of |phi| (the extremal
// approaches to |phi(a)| -> 1).  VacuouslyTrue when sup_T |phi| < 1 - 1e-6 or
// phi is constant; Vanishing when every ray's deepest 3 values sit below 5%
// of its ray max; NotVanishing when some ray is non-decreasing over the
// deepest 4 depths; else Inconclusive.
VanishingProfile vanishing_profile(const CertifiedMap& phi, double p, double q, int ray_count = 8);

// Derivative-based criterion quantity
//   ((1-|a|^2)/(1-|phi(a)|^2))^{(3-p)/2} |phi'(a)|,
// grid sup with verdict; the two-sided equivalence with the theta criterion
// covers p in (1, 2), and the sweep stays available on [0, 2) as a
// diagnostic.
struct DerivativeCriterion {
    double value = 0.0;
    DiskPoint argmax{cplx(0, 0)};
    Verdict verdict;
};

DerivativeCriterion derivative_criterion(const CertifiedMap& phi, double p, const DiskGrid& grid = {});

// Ray variant of the same quantity (the compactness-flavored little-o check).
VanishingProfile derivative_vanishing(const CertifiedMap& phi, double p, int ray_count = 8);

// Transfer bound for the star seminorm under composition, p in [0, 1]:
//   lhs = ||f o phi||_* vs rhs = ((1+|phi(0)|)/(1-|phi(0)|))^{(1-p)/2} ||f||_*.
// Both sides are grid lower bounds of true suprema, so comparisons carry a
// few percent of slack.
RatioCheck norm_transfer_bound_check(const CertifiedMap& phi, double p, const AnalyticMap& f,
                                     const DiskGrid& grid = {});

struct LevelMeasurePoint {
    double t = 0.0;
    double value = 0.0;
};

// For each threshold t: sup over grid points with |phi(a)| <= s of
//   (1-|a|^2)^{1-q} / (1-|phi(a)|^2)^{1-p} * |{xi : |sigma_{phi(a)} o phi o sigma_a (xi)| > t}|.
// Requires q = 1 (the hypothesis of the level-set decay lemma this
// diagnoses); the curve should decay as t -> 1 for non-inner symbols and
// stays flat at 2 pi for inner ones.
std::vector<LevelMeasurePoint> level_measure_diagnostic(const CertifiedMap& phi, double p, double q,
                                                        double s, const std::vector<double>& t_grid,
                                                        const DiskGrid& grid = {});

// Whether the compactness converse (vanishing theta along |phi(a)| -> 1
// implies compactness) is established for this index pair or remains open.
enum class RegimeLabel { converse_established, converse_conjectural };
const char* regime_label_name(RegimeLabel label);
RegimeLabel classify_regime(double p, double q);

}  // namespace campanato
