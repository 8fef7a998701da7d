#include "hyperpart/partition.hpp"
#include "hyperpart/numeric.hpp"

#include <algorithm>
#include <cmath>

namespace hyperpart {

namespace {
constexpr double kPi = 3.14159265358979323846;
// Base-theta cache ceiling. Periods beyond it occur only under derived
// constants, where the witness is closed-form and evaluation is pure.
constexpr std::int64_t kAngularCacheLimit = 1 << 16;
} // namespace

std::complex<double> unit_phase(double theta_turns) {
    const double a = 2.0 * kPi * theta_turns;
    return {std::cos(a), std::sin(a)};
}

// ---------------------------------------------------------------------------
// PartitionConfig
// ---------------------------------------------------------------------------

PartitionConfig PartitionConfig::free_constants(double r0, double R0, double theta0,
                                                double thetaT, double c2, double c4) {
    PartitionConfig c;
    c.r0 = r0; c.R0 = R0; c.theta0 = theta0; c.thetaT = thetaT;
    c.mode = ConstantsMode::Free;
    c.c2 = c2; c.c4 = c4;
    c.validate();
    return c;
}

PartitionConfig PartitionConfig::derived_constants(double r0, double R0, double theta0,
                                                   double thetaT, double delta0, double R1) {
    if (!(delta0 > 0.0 && delta0 < 1.0))
        throw ValidationError("config: delta0 must lie in (0, 1)");
    if (!(R1 >= 1.0))
        throw ValidationError("config: R1 must be >= 1");
    PartitionConfig c;
    c.r0 = r0; c.R0 = R0; c.theta0 = theta0; c.thetaT = thetaT;
    c.mode = ConstantsMode::Derived;
    c.delta0 = delta0; c.R1 = R1;
    c.c2 = delta0 / (2.0 * (2.0 * kPi * R0 + 1.0));
    c.c4 = R1 + delta0;
    c.validate();
    return c;
}

void PartitionConfig::validate() const {
    if (!(r0 > 0.0) || !(R0 >= r0))
        throw ValidationError("config: need 0 < r0 <= R0");
    if (!(theta0 >= 0.0) || !(thetaT >= theta0) || !(thetaT <= 1.0))
        throw ValidationError("config: need 0 <= theta0 <= thetaT <= 1");
    if (!(thetaT - theta0 <= 0.25))
        throw ValidationError("config: sector width must not exceed a quarter turn");
    if (!(c2 > 0.0 && c2 < 1.0))
        throw ValidationError("config: c2 must lie in (0, 1)");
    if (!(c4 > 1.0))
        throw ValidationError("config: c4 must exceed 1");
    if (!(c3() > 1.0))
        throw ValidationError("config: c4 / (r0 * c2) must exceed 1");
}

// ---------------------------------------------------------------------------
// m1 search
// ---------------------------------------------------------------------------

std::int64_t m1_of(const MuView& mu, std::int64_t m, double c3) {
    if (m < 1) throw ValidationError("m1_of: need m >= 1");
    if (!(c3 > 1.0)) throw ValidationError("m1_of: need c3 > 1");
    const double threshold = c3 / mu.modulus(m);

    // One term is never enough (c3 > 1), so start past m and double until the
    // strict inequality holds, then bisect the monotone predicate.
    std::int64_t lo = m;                      // predicate false here
    std::int64_t span = 1;
    std::int64_t hi = m + span;
    while (!(mu.partial_sum(m, hi) > threshold)) {
        lo = hi;
        span *= 2;
        hi = m + span;
    }
    while (hi - lo > 1) {
        std::int64_t mid = lo + (hi - lo) / 2;
        if (mu.partial_sum(m, mid) > threshold)
            hi = mid;
        else
            lo = mid;
    }
    return hi;
}

double sigma_of(const MuView& mu, std::int64_t m, double c2, double c3) {
    if (!(c2 > 0.0)) throw ValidationError("sigma_of: need c2 > 0");
    const std::int64_t m1 = m1_of(mu, m, c3);
    return c2 * mu.partial_sum(m, m1);
}

// ---------------------------------------------------------------------------
// AngularPartition
// ---------------------------------------------------------------------------

AngularPartition::AngularPartition(const MuView* mu, std::int64_t m,
                                   const PartitionConfig& cfg)
    : mu_(mu), m_(m), theta0_(cfg.theta0), thetaT_(cfg.thetaT), c2_(cfg.c2) {
    m1_ = m1_of(*mu_, m_, cfg.c3());
    P_ = m1_ - m_ + 1;

    if (P_ + 1 <= kAngularCacheLimit) {
        // Base thetas by the defining recursion.
        cache_.resize(static_cast<std::size_t>(P_) + 1);
        cache_[0] = theta0_;
        for (std::int64_t nu = 0; nu < P_; ++nu)
            cache_[static_cast<std::size_t>(nu + 1)] =
                cache_[static_cast<std::size_t>(nu)] + c2_ / mu_->modulus(m_ + nu);
        sigma_ = cache_.back() - theta0_;
    } else {
        sigma_ = c2_ * mu_->partial_sum(m_, m1_);
    }

    // nu_max: largest nu with theta(nu) <= thetaT. Guess the period count,
    // fix up exactly, then bisect j inside the final block.
    std::int64_t k = static_cast<std::int64_t>(std::floor((thetaT_ - theta0_) / sigma_));
    if (k < 0) k = 0;
    while (k > 0 && theta(k * P_) > thetaT_) --k;
    while (theta((k + 1) * P_) <= thetaT_) ++k;
    std::int64_t jlo = 0, jhi = P_;  // theta(k*P_ + jlo) <= thetaT < theta(k*P_ + jhi)
    while (jhi - jlo > 1) {
        std::int64_t mid = jlo + (jhi - jlo) / 2;
        if (theta(k * P_ + mid) <= thetaT_)
            jlo = mid;
        else
            jhi = mid;
    }
    nu_max_ = k * P_ + jlo;
}

double AngularPartition::base_theta(std::int64_t j) const {
    if (!cache_.empty()) return cache_[static_cast<std::size_t>(j)];
    if (j == 0) return theta0_;
    return theta0_ + c2_ * mu_->partial_sum(m_, m_ + j - 1);
}

double AngularPartition::theta(std::int64_t nu) const {
    if (nu < 0) throw ValidationError("theta: negative index");
    const std::int64_t k = nu / P_, j = nu % P_;
    return base_theta(j) + static_cast<double>(k) * sigma_;
}

std::int64_t AngularPartition::floor_index(double t) const {
    if (!(t >= theta0_)) throw ValidationError("floor_index: angle below theta0");
    if (theta(nu_max_) <= t) return nu_max_;
    std::int64_t lo = 0, hi = nu_max_;  // theta(lo) <= t < theta(hi)
    while (hi - lo > 1) {
        std::int64_t mid = lo + (hi - lo) / 2;
        if (theta(mid) <= t)
            lo = mid;
        else
            hi = mid;
    }
    return lo;
}

std::optional<std::pair<std::int64_t, std::int64_t>>
AngularPartition::index_window(double wlo, double whi) const {
    if (whi < wlo) return std::nullopt;
    std::int64_t start = 0;
    std::int64_t stop = nu_max_;
    if (theta(0) < wlo) {
        std::int64_t lo = 0, hi = stop + 1;  // theta(lo) < wlo
        while (hi - lo > 1) {
            std::int64_t mid = lo + (hi - lo) / 2;
            if (mid <= stop && theta(mid) < wlo)
                lo = mid;
            else
                hi = mid;
        }
        start = hi;
    }
    if (start > stop || theta(start) > whi) return std::nullopt;
    std::int64_t lo = start, hi = stop + 1;  // theta(lo) <= whi
    while (hi - lo > 1) {
        std::int64_t mid = lo + (hi - lo) / 2;
        if (theta(mid) <= whi)
            lo = mid;
        else
            hi = mid;
    }
    return std::make_pair(start, lo);
}

// ---------------------------------------------------------------------------
// RadialLadder
// ---------------------------------------------------------------------------

std::int64_t RadialLadder::nu0() const {
    if (!crossed_)
        throw ExhaustionError("ladder: R0 not crossed within the level budget (horizon " +
                              std::to_string(r_.back()) + ")");
    return static_cast<std::int64_t>(r_.size()) - 2;
}

std::int64_t RadialLadder::floor_index(double x) const {
    const std::int64_t top = crossed_ ? nu0() : top_level();
    if (!(x >= r_[0]))
        throw ValidationError("ladder: radius below r0");
    if (!crossed_ && x > r_.back())
        throw ExhaustionError("ladder: radius " + std::to_string(x) +
                              " beyond computed horizon " + std::to_string(r_.back()) +
                              "; deeper levels need a larger walk budget");
    // r_ is nondecreasing; find the last usable level at or below x.
    auto it = std::upper_bound(r_.begin(), r_.begin() + top + 1, x);
    return static_cast<std::int64_t>(it - r_.begin()) - 1;
}

RadialLadder build_radial_ladder(const PartitionConfig& cfg, const MuView& mu,
                                 std::int64_t max_levels) {
    if (max_levels < 1) throw ValidationError("ladder: need a positive level budget");
    cfg.validate();
    mu.require_gaps_above(cfg.c1());

    RadialLadder lad;
    lad.r_.push_back(cfg.r0);
    lad.m_.push_back(1);
    const double c3 = cfg.c3();
    // Anchor recursion: m_{nu+1} = m1(density of level nu), i.e. m_1 = m1(1)
    // and m_{nu+1} = m1(m_nu + 1) afterwards; level nu+1 then has density
    // m_{nu+1} + 1 and radius r_nu + c2/|mu_{m_{nu+1}}|.
    std::int64_t density = 1;
    while (lad.r_.back() <= cfg.R0 &&
           static_cast<std::int64_t>(lad.r_.size()) <= max_levels) {
        std::int64_t mn = m1_of(mu, density, c3);
        double rn = lad.r_.back() + cfg.c2 / mu.modulus(mn);
        lad.m_.push_back(mn);
        lad.r_.push_back(rn);
        density = mn + 1;
        if (rn > cfg.R0) {
            lad.crossed_ = true;
            break;
        }
    }
    return lad;
}

// ---------------------------------------------------------------------------
// Partition
// ---------------------------------------------------------------------------

Partition::Partition(PartitionConfig cfg, MuView mu, std::int64_t ladder_budget)
    : cfg_(std::move(cfg)), mu_(std::move(mu)),
      ladder_(build_radial_ladder(cfg_, mu_, ladder_budget)) {}

std::int64_t Partition::density_of_level(std::int64_t level) const {
    if (level < 0 || level > ladder_.top_level())
        throw ValidationError("partition: no such level");
    return level == 0 ? 1 : ladder_.mchain(level) + 1;
}

std::int64_t Partition::usable_levels() const {
    return (ladder_.crossed() ? ladder_.nu0() : ladder_.top_level()) + 1;
}

const AngularPartition& Partition::level(std::int64_t nu) const {
    if (nu < 0 || nu >= usable_levels())
        throw ValidationError("partition: level out of range");
    std::lock_guard<std::mutex> lock(cache_mutex_);
    auto it = levels_.find(nu);
    if (it == levels_.end()) {
        auto ap = std::make_unique<AngularPartition>(&mu_, density_of_level(nu), cfg_);
        it = levels_.emplace(nu, std::move(ap)).first;
    }
    return *it->second;
}

PartitionPoint Partition::at(std::int64_t lv, std::int64_t n) const {
    const AngularPartition& ang = level(lv);
    if (n < 0 || n > ang.nu_max())
        throw ValidationError("partition: angular index out of range");
    PartitionPoint p;
    p.level = lv;
    p.n = n;
    auto kj = ang.decompose(n);
    p.k = kj.first;
    p.j = kj.second;
    p.density = ang.density();
    p.r = ladder_.r(lv);
    p.theta = ang.theta(n);
    return p;
}

void Partition::for_each(const Truncation& t,
                         const std::function<void(const PartitionPoint&)>& fn) const {
    std::int64_t nlevels = usable_levels();
    if (t.max_levels >= 0) nlevels = std::min(nlevels, t.max_levels);
    for (std::int64_t lv = 0; lv < nlevels; ++lv) {
        const AngularPartition& ang = level(lv);
        std::int64_t start = 0;
        std::int64_t stop = ang.nu_max();
        if (t.theta_window) {
            auto rng = ang.index_window(t.theta_window->first, t.theta_window->second);
            if (!rng) continue;
            start = rng->first;
            stop = rng->second;
        }
        std::int64_t count = 0;
        for (std::int64_t n = start; n <= stop; ++n) {
            if (t.max_points_per_level >= 0 && count >= t.max_points_per_level) break;
            fn(at(lv, n));
            ++count;
        }
    }
}

std::vector<PartitionPoint> Partition::collect(const Truncation& t) const {
    std::vector<PartitionPoint> out;
    for_each(t, [&out](const PartitionPoint& p) { out.push_back(p); });
    return out;
}

void Partition::warm_levels() const {
    const std::int64_t n = usable_levels();
    for (std::int64_t lv = 0; lv < n; ++lv) level(lv);
}

} // namespace hyperpart
