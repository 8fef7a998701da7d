#include "hyperpart/disks.hpp"
#include "hyperpart/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

namespace hyperpart {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kInf = std::numeric_limits<double>::infinity();

struct PointKey {
    std::int64_t level = -1, n = -1;  // (-1, -1) is the base disk
};

// Margin bookkeeping shared by the verifiers.
struct Accum {
    CategoryStats stats;
    void init(PairCategory c, double floor_value, bool exhaustive) {
        stats.category = c;
        stats.analytic_floor = floor_value;
        stats.min_margin = kInf;
        stats.exhaustive = exhaustive;
    }
    void feed(double margin, PointKey a, PointKey b) {
        ++stats.pairs_checked;
        if (margin < stats.min_margin) {
            stats.min_margin = margin;
            stats.a_level = a.level;
            stats.a_n = a.n;
            stats.b_level = b.level;
            stats.b_n = b.n;
        }
    }
};

SeparationReport finish(std::vector<Accum>&& acc, double jordan_slack,
                        std::int64_t points) {
    SeparationReport rep;
    rep.min_margin = kInf;
    rep.jordan_min_slack = jordan_slack;
    rep.points = points;
    for (auto& a : acc) {
        rep.min_margin = std::min(rep.min_margin, a.stats.min_margin);
        if (a.stats.pairs_checked > 0 && !(a.stats.min_margin > 0.0))
            rep.all_positive = false;
        rep.categories.push_back(a.stats);
    }
    return rep;
}

PairCategory categorize(const PartitionPoint& a, const PartitionPoint& b) {
    if (a.level != b.level) return PairCategory::DifferentLevel;
    return a.j == b.j ? PairCategory::SameLevelSameMu : PairCategory::SameLevelDiffMu;
}

// Half-open level ranges surviving the truncation: (level, first n, last n).
struct LevelRange {
    std::int64_t level = 0, first = 0, last = 0;
    std::int64_t count() const { return last - first + 1; }
};

std::vector<LevelRange> truncated_ranges(const Partition& part, const Truncation& t) {
    std::int64_t nlevels = part.usable_levels();
    if (t.max_levels >= 0) nlevels = std::min(nlevels, t.max_levels);
    std::vector<LevelRange> out;
    for (std::int64_t lv = 0; lv < nlevels; ++lv) {
        const AngularPartition& ang = part.level(lv);
        std::int64_t first = 0, last = ang.nu_max();
        if (t.theta_window) {
            auto rng = ang.index_window(t.theta_window->first, t.theta_window->second);
            if (!rng) continue;
            first = rng->first;
            last = rng->second;
        }
        if (t.max_points_per_level >= 0)
            last = std::min(last, first + t.max_points_per_level - 1);
        if (last < first) continue;
        out.push_back({lv, first, last});
    }
    return out;
}

std::uint64_t pick(std::mt19937_64& gen, std::uint64_t n) {
    return n == 0 ? 0 : gen() % n;  // slight modulo bias, harmless for sampling
}

} // namespace

Disk base_disk(const PartitionConfig& cfg) {
    cfg.validate();
    return Disk{{0.0, 0.0}, cfg.c4};
}

double separation(const Disk& d1, const Disk& d2) {
    return std::abs(d1.center - d2.center) - d1.radius - d2.radius;
}

DiskAssignment assign_mu(const PartitionPoint& point, const MuView& mu,
                         const PartitionConfig& cfg) {
    if (point.density < 1 || point.j < 0)
        throw ValidationError("assign_mu: malformed partition point");
    DiskAssignment a;
    a.point = point;
    a.mu_index = point.density + point.j;
    a.mu_value = mu.value(a.mu_index);
    a.lambda_index = mu.source_index(a.mu_index);
    a.disk = Disk{point.w() * a.mu_value, cfg.c4};
    return a;
}

const char* pair_category_name(PairCategory c) {
    switch (c) {
        case PairCategory::BaseVsTranslate: return "base-vs-translate";
        case PairCategory::DifferentLevel: return "different-level";
        case PairCategory::SameLevelSameMu: return "same-level-same-mu";
        case PairCategory::SameLevelDiffMu: return "same-level-diff-mu";
    }
    return "?";
}

SeparationReport verify_base(const Partition& part, const Truncation& t) {
    const PartitionConfig& cfg = part.config();
    const Disk base = base_disk(cfg);
    const double floor_value = cfg.r0 * cfg.c1() - 2.0 * cfg.c4;

    std::vector<Accum> acc(1);
    acc[0].init(PairCategory::BaseVsTranslate, floor_value, true);
    std::int64_t points = 0;
    part.for_each(t, [&](const PartitionPoint& p) {
        ++points;
        DiskAssignment da = assign_mu(p, part.mu(), cfg);
        acc[0].feed(separation(base, da.disk), PointKey{-1, -1},
                    PointKey{p.level, p.n});
    });
    return finish(std::move(acc), kInf, points);
}

SeparationReport verify_pairwise(const Partition& part, const Truncation& t,
                                 std::uint64_t seed,
                                 std::int64_t exhaustive_threshold,
                                 std::int64_t samples_per_category) {
    if (exhaustive_threshold < 0 || samples_per_category < 0)
        throw ValidationError("verify_pairwise: negative budget");
    const PartitionConfig& cfg = part.config();
    const MuView& mu = part.mu();
    const double lemma_floor = cfg.r0 * cfg.c1() - 2.0 * cfg.c4;
    const double equal_mu_floor = 2.0 * cfg.c4;

    std::vector<LevelRange> ranges = truncated_ranges(part, t);
    std::int64_t npoints = 0;
    for (const auto& r : ranges) npoints += r.count();

    // Overflow-safe pair count check: n*(n-1)/2 <= threshold.
    bool exhaustive = true;
    if (npoints > 1 && npoints - 1 > (2 * exhaustive_threshold) / npoints)
        exhaustive = false;

    std::vector<Accum> acc(3);
    acc[0].init(PairCategory::DifferentLevel, lemma_floor, exhaustive);
    acc[1].init(PairCategory::SameLevelSameMu, equal_mu_floor, exhaustive);
    acc[2].init(PairCategory::SameLevelDiffMu, lemma_floor, exhaustive);
    auto accum_of = [&](PairCategory c) -> Accum& {
        switch (c) {
            case PairCategory::DifferentLevel: return acc[0];
            case PairCategory::SameLevelSameMu: return acc[1];
            default: return acc[2];
        }
    };

    double jordan_slack = kInf;
    auto check_pair = [&](const PartitionPoint& pa, const PartitionPoint& pb) {
        DiskAssignment da = assign_mu(pa, mu, cfg);
        DiskAssignment db = assign_mu(pb, mu, cfg);
        PairCategory c = categorize(pa, pb);
        accum_of(c).feed(separation(da.disk, db.disk), PointKey{pa.level, pa.n},
                         PointKey{pb.level, pb.n});
        if (pa.level == pb.level) {
            const double dthe = std::abs(pa.theta - pb.theta);
            if (dthe > 0.0 && dthe < 0.25)
                jordan_slack =
                    std::min(jordan_slack, std::sin(kPi * dthe) - 2.0 * dthe);
        }
    };

    if (exhaustive) {
        std::vector<PartitionPoint> pts;
        pts.reserve(static_cast<std::size_t>(npoints));
        for (const auto& r : ranges)
            for (std::int64_t n = r.first; n <= r.last; ++n)
                pts.push_back(part.at(r.level, n));
        for (std::size_t i = 0; i < pts.size(); ++i)
            for (std::size_t k = i + 1; k < pts.size(); ++k)
                check_pair(pts[i], pts[k]);
        return finish(std::move(acc), jordan_slack, npoints);
    }

    std::mt19937_64 gen(seed);
    auto random_point = [&](const LevelRange& r) {
        return part.at(r.level, r.first + static_cast<std::int64_t>(pick(
                                              gen, static_cast<std::uint64_t>(r.count()))));
    };

    // Stratum 1: different levels.
    if (ranges.size() >= 2) {
        for (std::int64_t s = 0; s < samples_per_category; ++s) {
            std::size_t i = static_cast<std::size_t>(pick(gen, ranges.size()));
            std::size_t k = static_cast<std::size_t>(pick(gen, ranges.size() - 1));
            if (k >= i) ++k;
            check_pair(random_point(ranges[i]), random_point(ranges[k]));
        }
    }

    // Stratum 2: same level, both subcategories via random index pairs.
    for (std::int64_t s = 0; s < samples_per_category; ++s) {
        const LevelRange& r = ranges[pick(gen, ranges.size())];
        if (r.count() < 2) continue;
        std::int64_t n1 = r.first + static_cast<std::int64_t>(
                                        pick(gen, static_cast<std::uint64_t>(r.count())));
        std::int64_t n2 = r.first + static_cast<std::int64_t>(pick(
                                        gen, static_cast<std::uint64_t>(r.count() - 1)));
        if (n2 >= n1) ++n2;
        check_pair(part.at(r.level, n1), part.at(r.level, n2));
    }

    // Stratum 3: same level, equal mu (the 2*c4 floor), reachable only when a
    // level spans more than one period.
    for (std::int64_t s = 0; s < samples_per_category; ++s) {
        const LevelRange& r = ranges[pick(gen, ranges.size())];
        const std::int64_t P = part.level(r.level).period();
        std::int64_t n1 = r.first + static_cast<std::int64_t>(
                                        pick(gen, static_cast<std::uint64_t>(r.count())));
        const std::int64_t j = n1 % P;
        // k-range of indices congruent to j within [first, last]
        if (r.last < j) continue;
        std::int64_t kmin = 0;
        if (r.first > j) kmin = (r.first - j + P - 1) / P;
        const std::int64_t kmax = (r.last - j) / P;
        if (kmax <= kmin) continue;  // one representative only
        const std::int64_t k1 = n1 / P;
        std::int64_t k2 = kmin + static_cast<std::int64_t>(
                                     pick(gen, static_cast<std::uint64_t>(kmax - kmin)));
        if (k2 >= k1) ++k2;
        check_pair(part.at(r.level, n1), part.at(r.level, k2 * P + j));
    }

    return finish(std::move(acc), jordan_slack, npoints);
}

} // namespace hyperpart
