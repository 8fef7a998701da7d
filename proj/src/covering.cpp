#include "hyperpart/covering.hpp"
#include "hyperpart/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace hyperpart {

namespace {
constexpr double kPi = 3.14159265358979323846;
} // namespace

Coverage locate(const SectorPoint& a, const Partition& part) {
    const PartitionConfig& cfg = part.config();
    if (!(a.r >= cfg.r0 && a.r <= cfg.R0))
        throw ValidationError("locate: radius outside [r0, R0]");
    if (!(a.theta >= cfg.theta0 && a.theta <= cfg.thetaT))
        throw ValidationError("locate: angle outside [theta0, thetaT]");

    const RadialLadder& lad = part.ladder();
    const std::int64_t lv = lad.floor_index(a.r);

    Coverage cov;
    cov.r1 = lad.r(lv);
    if (lad.crossed() && lv == lad.nu0()) {
        cov.r2 = cfg.R0;
        cov.radial_clamp = true;
    } else if (!lad.crossed() && lv == lad.top_level()) {
        cov.r2 = lad.horizon();
        cov.radial_clamp = true;
    } else {
        cov.r2 = lad.r(lv + 1);
    }

    const AngularPartition& ang = part.level(lv);
    const std::int64_t n = ang.floor_index(a.theta);
    cov.w0 = part.at(lv, n);
    cov.theta1 = cov.w0.theta;
    if (n == ang.nu_max()) {
        cov.theta2 = cfg.thetaT;
        cov.angular_clamp = true;
    } else {
        cov.theta2 = ang.theta(n + 1);
    }

    DiskAssignment da = assign_mu(cov.w0, part.mu(), cfg);
    cov.mu_index = da.mu_index;
    cov.mu0 = da.mu_value;
    cov.lambda_index = da.lambda_index;

    // |a - w0|^2 = dr^2 + 4 r r1 sin^2(pi dtheta): no cancellation when both
    // differences are tiny, unlike the direct complex subtraction.
    const double dr = a.r - cov.r1;
    const double dth = a.theta - cov.theta1;
    const double s = std::sin(kPi * dth);
    const double dist = std::sqrt(dr * dr + 4.0 * a.r * cov.r1 * s * s);
    const double mu_abs = std::abs(cov.mu0);
    cov.defect = mu_abs * dist;
    cov.defect_normalized = cfg.mode == ConstantsMode::Derived
                                ? cov.defect / cfg.delta0
                                : std::numeric_limits<double>::quiet_NaN();
    cov.bracket_bound =
        mu_abs * ((cov.r2 - cov.r1) + 2.0 * kPi * cfg.R0 * (cov.theta2 - cov.theta1));
    return cov;
}

double defect_global_bound(const PartitionConfig& cfg) {
    return (2.0 * kPi * cfg.R0 + 1.0) * cfg.c2;
}

double defect_bound(const PartitionConfig& cfg, const MuView& mu,
                    std::int64_t level, std::int64_t mprime) {
    if (level < 0) throw ValidationError("defect_bound: negative level");
    if (mprime < 1) throw ValidationError("defect_bound: density must be >= 1");
    const std::int64_t m1 = m1_of(mu, mprime, cfg.c3());
    // Radial width c2/|mu_{m1}|, worst on-level mu is mu_{m1}; angular width
    // c2/|mu(w0)| cancels against |mu(w0)| exactly.
    const double radial = mu.modulus(m1) * (cfg.c2 / mu.modulus(m1));
    return radial + 2.0 * kPi * cfg.R0 * cfg.c2;
}

std::int64_t uniform_bound_m1(const Partition& part, const Truncation& t) {
    if (t.max_levels < 0 && !part.ladder().crossed())
        throw ExhaustionError(
            "uniform_bound_m1: full-sector request on an uncrossed ladder "
            "(horizon " + std::to_string(part.ladder().horizon()) +
            "); pass an explicit level cap");
    std::int64_t best = 0;
    part.for_each(t, [&](const PartitionPoint& p) {
        DiskAssignment da = assign_mu(p, part.mu(), part.config());
        best = std::max(best, da.lambda_index);
    });
    return best;
}

} // namespace hyperpart
