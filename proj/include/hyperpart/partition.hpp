#pragma once

#include "hyperpart/witness.hpp"

#include <complex>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <vector>

namespace hyperpart {

// Angles are dimensionless turns throughout: theta = 1 is a full revolution,
// the unit phase is exp(2*pi*i*theta). Sector widths never exceed 1/4.
std::complex<double> unit_phase(double theta_turns);

enum class ConstantsMode { Free, Derived };

// Sector [r0, R0] x [theta0, thetaT] plus the constant chain
//   c3 = c4 / (r0 * c2),  c1 = 4 * (c3 + 1).
// Free mode picks c2 in (0,1) and c4 > 1 directly. Derived mode computes
//   c2 = delta0 / (2 * (2*pi*R0 + 1)),  c4 = R1 + delta0
// from an approximation budget delta0 in (0,1) and disk parameter R1 >= 1,
// which makes the per-point covering bound come out at delta0 / 2.
struct PartitionConfig {
    double r0 = 0.0, R0 = 0.0;
    double theta0 = 0.0, thetaT = 0.0;
    ConstantsMode mode = ConstantsMode::Free;
    double c2 = 0.0, c4 = 0.0;
    double delta0 = 0.0, R1 = 0.0;  // populated in derived mode only

    double c3() const { return c4 / (r0 * c2); }
    double c1() const { return 4.0 * (c3() + 1.0); }

    static PartitionConfig free_constants(double r0, double R0, double theta0,
                                          double thetaT, double c2, double c4);
    static PartitionConfig derived_constants(double r0, double R0, double theta0,
                                             double thetaT, double delta0, double R1);
    void validate() const;
};

// Minimal index M >= m with sum_{k=m}^{M} 1/|mu_k| > c3/|mu_m|.
// Always >= m + 1 because c3 > 1. Logarithmic via doubling plus bisection on
// the monotone partial sum.
std::int64_t m1_of(const MuView& mu, std::int64_t m, double c3);

// Block period sigma_m = c2 * sum_{k=m}^{m1(m)} 1/|mu_k|.
double sigma_of(const MuView& mu, std::int64_t m, double c2, double c3);

// ---------------------------------------------------------------------------
// angular partition at one density
// ---------------------------------------------------------------------------
//
// theta_0 = theta0, theta_{nu+1} = theta_nu + c2/|mu_{m+nu}| for nu < P,
// extended periodically: theta at nu = k*P + j equals theta_j + k*sigma,
// where P = m1(m) - m + 1. Base thetas come from the running recursion when
// P is small enough to cache; otherwise (huge first blocks under derived
// constants) they evaluate through the closed-form partial sum.
class AngularPartition {
public:
    AngularPartition(const MuView* mu, std::int64_t m, const PartitionConfig& cfg);

    std::int64_t density() const { return m_; }
    std::int64_t m1() const { return m1_; }
    std::int64_t period() const { return P_; }
    double sigma() const { return sigma_; }
    std::int64_t nu_max() const { return nu_max_; }

    double theta(std::int64_t nu) const;
    std::pair<std::int64_t, std::int64_t> decompose(std::int64_t nu) const {
        return {nu / P_, nu % P_};
    }
    // Largest nu in [0, nu_max] with theta(nu) <= t; requires theta0 <= t.
    std::int64_t floor_index(double t) const;
    // Inclusive index range whose thetas lie in [wlo, whi]; nullopt when empty.
    std::optional<std::pair<std::int64_t, std::int64_t>>
    index_window(double wlo, double whi) const;

private:
    double base_theta(std::int64_t j) const;

    const MuView* mu_;
    std::int64_t m_, m1_, P_;
    double theta0_, thetaT_, c2_;
    double sigma_;
    std::int64_t nu_max_;
    std::vector<double> cache_;  // base thetas, filled when P is cacheable
};

// ---------------------------------------------------------------------------
// radial ladder
// ---------------------------------------------------------------------------
//
// m-chain m_1 = m1(1), m_{nu+1} = m1(m_nu + 1); radii r_0 = r0,
// r_{nu+1} = r_nu + c2/|mu_{m_{nu+1}}|. Walks until the first radius above
// R0 or until the level budget runs out; nu0 is the last level with
// r_{nu0} <= R0. Under derived constants the chain depth needed to cross R0
// is beyond any budget, so partial ladders carry an explicit horizon.
class RadialLadder {
public:
    bool crossed() const { return crossed_; }
    std::int64_t nu0() const;             // requires crossed()
    std::int64_t top_level() const { return static_cast<std::int64_t>(r_.size()) - 1; }
    double horizon() const { return r_.back(); }
    double r(std::int64_t nu) const { return r_.at(static_cast<std::size_t>(nu)); }
    std::int64_t mchain(std::int64_t nu) const { return m_.at(static_cast<std::size_t>(nu)); }
    // Largest nu with usable level data and r(nu) <= x. Levels are usable up
    // to nu0 when crossed, else up to the last computed level. Throws
    // ExhaustionError for x past the horizon of an uncrossed ladder.
    std::int64_t floor_index(double x) const;

private:
    friend RadialLadder build_radial_ladder(const PartitionConfig&, const MuView&,
                                            std::int64_t);
    std::vector<double> r_;
    std::vector<std::int64_t> m_;
    bool crossed_ = false;
};

RadialLadder build_radial_ladder(const PartitionConfig& cfg, const MuView& mu,
                                 std::int64_t max_levels = 1'000'000);

// ---------------------------------------------------------------------------
// the assembled partition
// ---------------------------------------------------------------------------

struct PartitionPoint {
    std::int64_t level = 0;    // ladder index
    std::int64_t n = 0;        // angular index on the level, 0-based
    std::int64_t k = 0, j = 0; // n = k*P + j, 0 <= j < P
    std::int64_t density = 0;  // m' (1 on level 0, m_level + 1 above)
    double r = 0.0;
    double theta = 0.0;        // turns
    std::complex<double> w() const { return r * unit_phase(theta); }
};

struct Truncation {
    std::int64_t max_levels = -1;            // level count cap, -1 = all
    std::int64_t max_points_per_level = -1;  // -1 = all
    std::optional<std::pair<double, double>> theta_window;
};

class Partition {
public:
    Partition(PartitionConfig cfg, MuView mu, std::int64_t ladder_budget = 1'000'000);

    const PartitionConfig& config() const { return cfg_; }
    const MuView& mu() const { return mu_; }
    const RadialLadder& ladder() const { return ladder_; }

    std::int64_t density_of_level(std::int64_t level) const;
    const AngularPartition& level(std::int64_t nu) const;  // built on demand, cached
    // Number of levels with level data: nu0 + 1 when crossed, else all computed.
    std::int64_t usable_levels() const;

    PartitionPoint at(std::int64_t level, std::int64_t n) const;
    void for_each(const Truncation& t,
                  const std::function<void(const PartitionPoint&)>& fn) const;
    std::vector<PartitionPoint> collect(const Truncation& t) const;
    // Builds every usable level eagerly. After this, point queries on a
    // cacheable-period partition touch no mutable state, so concurrent reads
    // need no witness-side synchronization.
    void warm_levels() const;

private:
    PartitionConfig cfg_;
    MuView mu_;
    RadialLadder ladder_;
    mutable std::map<std::int64_t, std::unique_ptr<AngularPartition>> levels_;
    mutable std::mutex cache_mutex_;
};

} // namespace hyperpart
