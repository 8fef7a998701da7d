#pragma once

#include "hyperpart/partition.hpp"

#include <complex>
#include <cstdint>
#include <vector>

namespace hyperpart {

struct Disk {
    std::complex<double> center;
    double radius = 0.0;
};

// Closed disk of radius c4 about the origin. Every family member shares this
// radius.
Disk base_disk(const PartitionConfig& cfg);

// Center distance minus both radii; positive means disjoint closed disks.
double separation(const Disk& d1, const Disk& d2);

struct DiskAssignment {
    PartitionPoint point;
    std::int64_t mu_index = 0;      // witness index m' + j
    std::complex<double> mu_value;  // mu(w)
    std::int64_t lambda_index = 0;  // index of mu(w) in the source sequence
    Disk disk;                      // center w * mu(w), radius c4
};

// mu(w) for the point at angular index n = k*P + j on its level: the witness
// entry m' + j, where m' is the level density. Deterministic in the point.
DiskAssignment assign_mu(const PartitionPoint& point, const MuView& mu,
                         const PartitionConfig& cfg);

// Disjointness comes in four flavors with distinct analytic floors:
//   base vs translate      |w||mu(w)| >= r0*c1 > 2*c4
//   different levels       centers differ by >= r0*c1
//   same level, same mu    centers differ by >= 4*c4 (chord + Jordan)
//   same level, diff mu    centers differ by >= r0*c1
enum class PairCategory {
    BaseVsTranslate,
    DifferentLevel,
    SameLevelSameMu,
    SameLevelDiffMu,
};

const char* pair_category_name(PairCategory c);

struct CategoryStats {
    PairCategory category = PairCategory::BaseVsTranslate;
    double analytic_floor = 0.0;  // lemma floor for the margin in this category
    double min_margin = 0.0;      // +inf when no pair was checked
    std::int64_t pairs_checked = 0;
    bool exhaustive = true;
    // argmin pair; the base disk is encoded as level = -1, n = -1
    std::int64_t a_level = -1, a_n = -1;
    std::int64_t b_level = -1, b_n = -1;
};

struct SeparationReport {
    std::vector<CategoryStats> categories;
    double min_margin = 0.0;  // min over categories, +inf when empty
    bool all_positive = true;
    // min of sin(pi*dtheta) - 2*dtheta over same-level pairs, dtheta in (0, 1/4);
    // +inf when no such pair occurred
    double jordan_min_slack = 0.0;
    std::int64_t points = 0;
};

// Margins of every translated disk against the base disk, over the truncated
// enumeration. Failures are reported through min_margin, never thrown.
SeparationReport verify_base(const Partition& part, const Truncation& t);

// Pairwise margins among translated disks. All pairs are checked when their
// count stays within exhaustive_threshold; beyond it, pairs are sampled per
// category (same-level equal-mu pairs have the tightest floor and get their
// own stratum).
SeparationReport verify_pairwise(const Partition& part, const Truncation& t,
                                 std::uint64_t seed = 0,
                                 std::int64_t exhaustive_threshold = 2'000'000,
                                 std::int64_t samples_per_category = 250'000);

} // namespace hyperpart
