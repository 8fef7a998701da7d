#pragma once

#include "hyperpart/approx.hpp"
#include "hyperpart/kernels.hpp"
#include "hyperpart/partition.hpp"
#include "hyperpart/sequence.hpp"
#include "hyperpart/witness.hpp"

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace hyperpart {

struct SequenceSpec {
    SeqKind kind = SeqKind::Arithmetic;
    double alpha = 0.0, beta = 1.0;           // arithmetic
    Rational M0;                              // prop61
    std::int64_t cap = 0;                     // prop61
    std::vector<std::complex<double>> terms;  // explicit
};

// One run = sector + constants + sequence + witness rule + work sizes.
// Loaded from a JSON document; unknown keys are rejected so presets cannot
// silently drift.
struct RunConfig {
    PartitionConfig pconfig;
    SequenceSpec sequence;
    std::optional<double> witness_gap;  // nullopt: auto, use c1
    Truncation truncation;
    std::int64_t ladder_budget = 1'000'000;
    std::int64_t covering_samples = 10'000;
    std::optional<TargetSpec> target;
    FitOptions fit;
    std::int64_t grid_nr = 32, grid_ntheta = 32;
    std::int64_t zsamples = 64;
    std::int64_t sup_multiplier = 8;  // sup_error sampling vs fit sampling
    std::int64_t sequence_prefix = 64;
    std::uint64_t seed = 0;
    ExecMode exec = ExecMode::Serial;
    std::string out;  // default report path; empty means stdout, --out overrides

    double effective_gap() const {
        return witness_gap ? *witness_gap : pconfig.c1();
    }
    std::shared_ptr<ComplexSequence> make_sequence() const;
    MuView make_witness(std::shared_ptr<const ComplexSequence> src) const;
};

RunConfig parse_config(const std::string& json_text);
RunConfig load_config(const std::string& path);

} // namespace hyperpart
