#pragma once

#include "hyperpart/disks.hpp"
#include "hyperpart/partition.hpp"

#include <complex>
#include <cstdint>

namespace hyperpart {

struct SectorPoint {
    double r = 0.0;
    double theta = 0.0;  // turns
    std::complex<double> value() const { return r * unit_phase(theta); }
};

// Result of the bracket search: the partition point w0 at the lower corner of
// the bracket containing a, with the covering defect |mu(w0)| * |a - w0|.
struct Coverage {
    PartitionPoint w0;
    double r1 = 0.0, r2 = 0.0;          // radial bracket, r2 = R0 on the clamp
    double theta1 = 0.0, theta2 = 0.0;  // angular bracket, theta2 = thetaT on the clamp
    bool radial_clamp = false;
    bool angular_clamp = false;
    std::int64_t mu_index = 0;
    std::complex<double> mu0;
    std::int64_t lambda_index = 0;
    double defect = 0.0;
    double defect_normalized = 0.0;  // defect / delta0 in derived mode, else NaN
    // per-bracket analytic bound |mu0| * ((r2-r1) + 2*pi*R0*(theta2-theta1))
    double bracket_bound = 0.0;
};

// Bracket search: radial bisection on the ladder, then angular bisection on
// the located level. Half-open brackets [lo, hi) with closed clamps at R0 and
// thetaT. Throws ValidationError outside the sector and ExhaustionError past
// the horizon of an uncrossed ladder.
Coverage locate(const SectorPoint& a, const Partition& part);

// (2*pi*R0 + 1) * c2: the sector-wide defect bound. Equals delta0 / 2 under
// derived constants, where covering is the design guarantee; under free
// constants it is reported for comparison only.
double defect_global_bound(const PartitionConfig& cfg);

// Same bound assembled from the level's actual chain pieces: the radial step
// c2/|mu_{m1(m')}| scaled by the largest mu on the level plus the angular
// contribution 2*pi*R0*c2. Touches the witness, so exhaustion surfaces here.
double defect_bound(const PartitionConfig& cfg, const MuView& mu,
                    std::int64_t level, std::int64_t mprime);

// Largest source-sequence index among the mu values assigned over the
// truncated enumeration; 0 when the truncation is empty. With max_levels < 0
// the whole sector is requested, which needs a crossed ladder.
std::int64_t uniform_bound_m1(const Partition& part, const Truncation& t);

} // namespace hyperpart
