#pragma once

#include "hyperpart/covering.hpp"
#include "hyperpart/disks.hpp"
#include "hyperpart/kernels.hpp"
#include "hyperpart/partition.hpp"
#include "hyperpart/polynomial.hpp"

#include <complex>
#include <cstdint>
#include <optional>
#include <vector>

namespace hyperpart {

// Data of one approximation problem: target polynomial p to reproduce inside
// every translated disk, background g on the base disk, precision index s1,
// verification radius k1, and the continuity budget delta0 on |z| <= R1.
struct TargetSpec {
    Polynomial p;
    Polynomial g;              // default: zero polynomial
    std::int64_t s1 = 1;
    double k1 = 0.0;
    double C_radius = 0.0;     // defaults to k1 when <= 0
    double eps0 = 0.0;
    double R1 = 0.0;
    double delta0 = 0.0;

    void validate() const;
    double half_budget() const { return 1.0 / (2.0 * static_cast<double>(s1)); }
};

// Largest shift delta0 <= 0.99 with |p(z) - p(w)| < 1/(2 s1) whenever
// |z| <= R1 and |z - w| < delta0, certified through the coefficient
// majorization of |p'| on |z| <= R1 + 1.
double continuity_delta(const Polynomial& p, double R1, std::int64_t s1);

struct TargetPiece {
    Disk disk;
    std::complex<double> shift;  // disk center w*mu(w); h(z) = p(z - shift)
    std::int64_t level = 0, n = 0;
};

// The piecewise target h on L = base disk + translated disks: g on the base,
// p(z - shift) on each piece. Evaluation outside L is an error.
struct PiecewiseTarget {
    Disk base;
    Polynomial g;
    Polynomial p;
    std::vector<TargetPiece> pieces;

    // index of the piece containing z, -1 for the base disk; throws
    // ValidationError outside L
    std::int64_t which(std::complex<double> z) const;
    std::complex<double> eval(std::complex<double> z) const;
    std::int64_t disk_count() const {
        return static_cast<std::int64_t>(pieces.size()) + 1;
    }
};

// Assembles h over the truncated enumeration and re-checks pairwise
// disjointness of the assembled disks (throws ValidationError on overlap).
PiecewiseTarget build_h(const Partition& part, const Truncation& t,
                        const TargetSpec& target,
                        std::int64_t max_disks = 4096);

enum class Precision { Double, Extended };

struct FitOptions {
    std::int64_t degree = 40;
    std::int64_t samples_per_disk = 0;  // 0: auto = max(2*degree + 2, 16)
    Precision precision = Precision::Double;
    // Pivot cut for the orthogonalization, relative to the largest pivot;
    // directions below it get a zero coefficient. 0 selects 1e-13 for either
    // precision: the cut is set by the double-precision evaluation of the
    // fitted coefficients, not by the solve precision, and a looser cut lets
    // coefficients grow past what evaluation cancellation can absorb.
    double rcond = 0.0;
};

struct FitResult {
    Polynomial f;      // scaled basis, scale = rho
    double rho = 0.0;  // max disk |center| + c4
    std::int64_t degree = 0;
    std::int64_t samples_per_disk = 0;
    std::int64_t rank = 0;  // surviving basis directions, <= degree + 1
    Precision precision = Precision::Double;
    double residual_max = 0.0;  // max |f - h| over the fit samples
};

// Discrete least squares for f on boundary-plus-center samples of every disk
// of L, scaled-monomial basis, Householder QR (never normal equations).
// Well-separated disks make the high-order basis directions numerically
// dependent, so past a geometry-set rank the fit stops improving and extra
// degrees are truncated away. Throws IllConditionedError when fewer
// directions survive than the target polynomials themselves span.
FitResult fit_polynomial(const PiecewiseTarget& h, const FitOptions& opt);

// Empirical per-disk sup of |f - h| over rings at radii c4*{1, 0.9, 0.5} and
// the center; base disk first, then pieces in order.
std::vector<double> sup_error(const Polynomial& f, const PiecewiseTarget& h,
                              std::int64_t samples_per_ring);

struct MembershipPoint {
    SectorPoint a;
    std::int64_t level = 0, n = 0;
    std::int64_t lambda_index = 0;  // n(a): source index of mu(w0(a))
    double defect = 0.0;
    bool within_m1 = true;
    bool translate_inside = true;  // k1 + defect <= c4
    double sup_err = 0.0;          // sup_{|z|<=k1 sampled} |f(z + mu*a) - p(z)|
    double fit_err = 0.0;          // certified fit error on the located disk
    double cont_bound = 0.0;       // derivative bound * defect
    double margin = 0.0;           // 1/s1 - sup_err
    bool pass = false;
};

struct MembershipReport {
    std::int64_t grid_r = 0, grid_theta = 0;
    std::int64_t m1 = 0;
    std::int64_t zsamples = 0;
    double pass_fraction = 0.0;
    double worst_margin = 0.0;
    SectorPoint worst_a;
    double max_defect = 0.0;
    std::vector<MembershipPoint> points;
};

// E-set membership over an inclusive nr x ntheta grid of the config sector:
// for each a, locate w0, take n(a) = source index of mu(w0), and sample
// |f(z + mu(w0) a) - p(z)| over |z| <= k1 rings. Pass needs n(a) <= m1 and
// sup < 1/s1.
MembershipReport verify_membership(const Polynomial& f, const Partition& part,
                                   const PiecewiseTarget& h,
                                   const std::vector<double>& per_disk_errors,
                                   const TargetSpec& target, std::int64_t m1,
                                   std::int64_t nr, std::int64_t ntheta,
                                   std::int64_t zsamples = 64,
                                   ExecMode mode = ExecMode::Serial);

} // namespace hyperpart
