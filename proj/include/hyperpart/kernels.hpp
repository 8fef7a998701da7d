#pragma once

#include "hyperpart/covering.hpp"
#include "hyperpart/partition.hpp"

#include <cstdint>
#include <functional>

namespace hyperpart {

// Batch work runs either as a plain loop or under OpenMP. Both paths compute
// per-index values into index-owned slots and reduce serially afterwards, so
// the two modes produce bit-identical results; Parallel silently degrades to
// Serial in builds without OpenMP.
enum class ExecMode { Serial, Parallel };

bool parallel_available();

// fn(i) for i in [0, n); fn must only write state owned by index i.
void for_index(std::int64_t n, ExecMode mode,
               const std::function<void(std::int64_t)>& fn);

namespace detail {
void for_index_omp(std::int64_t n, const std::function<void(std::int64_t)>& fn);
} // namespace detail

// Quasi-random covering sweep over the config sector: defect statistics,
// per-bracket bound violations, and the count of samples past the horizon of
// an uncrossed ladder (those locate nothing and are the honest failure mode
// of deep-constant configs).
struct CoveringScan {
    std::int64_t samples = 0;
    std::int64_t located = 0;
    std::int64_t exhausted = 0;          // beyond the ladder horizon
    std::int64_t over_delta0 = 0;        // derived mode: defect >= delta0
    std::int64_t over_bracket_bound = 0; // defect > per-bracket analytic bound
    double max_defect = 0.0;
    double mean_defect = 0.0;            // over located samples
    double max_normalized = 0.0;         // derived mode, else NaN
    double global_bound = 0.0;           // (2*pi*R0 + 1) * c2
    double delta0 = 0.0;                 // NaN in free mode
    SectorPoint worst;                   // argmax defect
    std::int64_t worst_index = -1;
    std::uint64_t seed = 0;
};

CoveringScan scan_covering(const Partition& part, std::int64_t nsamples,
                           std::uint64_t seed, ExecMode mode);

} // namespace hyperpart
