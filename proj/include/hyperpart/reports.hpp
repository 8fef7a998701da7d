#pragma once

#include "hyperpart/approx.hpp"
#include "hyperpart/covering.hpp"
#include "hyperpart/disks.hpp"
#include "hyperpart/kernels.hpp"
#include "hyperpart/partition.hpp"
#include "hyperpart/sequence.hpp"

#include <string>

namespace hyperpart {

// All report builders return serialized JSON text (pretty, 2-space indent,
// trailing newline) so callers never depend on the JSON library directly.

std::string sequence_json(const ComplexSequence& seq, std::int64_t prefix);

std::string witness_json(const MuView& mu, std::int64_t prefix);

std::string partition_points_jsonl(const Partition& part, const Truncation& t);

std::string disks_jsonl(const Partition& part, const Truncation& t);

std::string separation_json(const SeparationReport& rep);

// Invariant sweep over the truncation's level range: sigma < 1/4 per level
// and strict ladder monotonicity.
struct PartitionInvariants {
    std::int64_t levels_checked = 0;
    double sigma_max = 0.0;
    bool sigma_ok = true;
    bool ladder_monotone = true;
    bool crossed = false;
    double horizon = 0.0;
};

PartitionInvariants check_partition_invariants(const Partition& part,
                                               const Truncation& t);

std::string geometry_json(const SeparationReport& base,
                          const SeparationReport& pairwise,
                          const PartitionInvariants& inv);

// Derived mode gates on every sample locating with defect < delta0; free mode
// reports the same numbers with the gate off.
bool covering_pass(const CoveringScan& scan, const PartitionConfig& cfg);

std::string covering_json(const CoveringScan& scan, const PartitionConfig& cfg);

std::string certificate_json(const Partition& part, const Truncation& t,
                             const TargetSpec& target, const PiecewiseTarget& h,
                             const FitResult& fit,
                             const std::vector<double>& per_disk_errors,
                             const MembershipReport& rep, std::int64_t m1);

// Writes content to path via a temp file in the same directory followed by a
// rename, so readers never observe a partial file. Throws IoError on failure.
void atomic_write_text(const std::string& path, const std::string& content);

} // namespace hyperpart
