#include "hyperpart/kernels.hpp"
#include "hyperpart/errors.hpp"
#include "hyperpart/numeric.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

namespace hyperpart {

void for_index(std::int64_t n, ExecMode mode,
               const std::function<void(std::int64_t)>& fn) {
    if (n < 0) throw ValidationError("for_index: negative count");
    if (mode == ExecMode::Parallel && parallel_available()) {
        detail::for_index_omp(n, fn);
        return;
    }
    for (std::int64_t i = 0; i < n; ++i) fn(i);
}

namespace {
struct DefectSlot {
    double defect = 0.0;
    double normalized = 0.0;
    bool exhausted = false;
    bool over_bracket = false;
};
} // namespace

CoveringScan scan_covering(const Partition& part, std::int64_t nsamples,
                           std::uint64_t seed, ExecMode mode) {
    if (nsamples < 0) throw ValidationError("scan_covering: negative sample count");
    const PartitionConfig& cfg = part.config();
    const bool derived = cfg.mode == ConstantsMode::Derived;

    CoveringScan scan;
    scan.samples = nsamples;
    scan.seed = seed;
    scan.global_bound = defect_global_bound(cfg);
    scan.delta0 = derived ? cfg.delta0 : std::numeric_limits<double>::quiet_NaN();
    scan.max_normalized =
        derived ? 0.0 : std::numeric_limits<double>::quiet_NaN();
    scan.worst = SectorPoint{cfg.r0, cfg.theta0};
    if (nsamples == 0) return scan;

    const auto pts =
        halton_rect(nsamples, seed, cfg.r0, cfg.R0, cfg.theta0, cfg.thetaT);
    std::vector<DefectSlot> slots(static_cast<std::size_t>(nsamples));

    // A generic witness mutates its caches on first touch; warm everything
    // serially so the parallel phase is read-only.
    if (mode == ExecMode::Parallel && !part.mu().is_closed_form())
        part.warm_levels();

    for_index(nsamples, mode, [&](std::int64_t i) {
        const SectorPoint a{pts[static_cast<std::size_t>(i)].first,
                            pts[static_cast<std::size_t>(i)].second};
        DefectSlot& slot = slots[static_cast<std::size_t>(i)];
        try {
            Coverage cov = locate(a, part);
            slot.defect = cov.defect;
            slot.normalized = cov.defect_normalized;
            slot.over_bracket = cov.defect > cov.bracket_bound;
        } catch (const ExhaustionError&) {
            slot.exhausted = true;
        }
    });

    CompensatedSum mean;
    for (std::int64_t i = 0; i < nsamples; ++i) {
        const DefectSlot& slot = slots[static_cast<std::size_t>(i)];
        if (slot.exhausted) {
            ++scan.exhausted;
            continue;
        }
        ++scan.located;
        mean.add(slot.defect);
        if (slot.over_bracket) ++scan.over_bracket_bound;
        if (derived) {
            if (slot.defect >= cfg.delta0) ++scan.over_delta0;
            scan.max_normalized = std::max(scan.max_normalized, slot.normalized);
        }
        if (slot.defect > scan.max_defect) {
            scan.max_defect = slot.defect;
            scan.worst = SectorPoint{pts[static_cast<std::size_t>(i)].first,
                                     pts[static_cast<std::size_t>(i)].second};
            scan.worst_index = i;
        }
    }
    if (scan.located > 0)
        scan.mean_defect = mean.value() / static_cast<double>(scan.located);
    return scan;
}

} // namespace hyperpart
