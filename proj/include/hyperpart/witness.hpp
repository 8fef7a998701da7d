#pragma once

#include "hyperpart/numeric.hpp"
#include "hyperpart/sequence.hpp"

#include <complex>
#include <cstdint>
#include <memory>

namespace hyperpart {

// Read-only view of the gapped subsequence (mu_k) that drives partitions.
// Two backings:
//   * closed form: mu_k = alpha + beta*k; partial sums evaluate through the
//     digamma difference in O(1), so index scales like 1e15 stay cheap;
//   * generic: lazily extended greedy extraction over a source sequence with
//     compensated cached prefix sums.
//
// Validity (|mu_1| > bound, gaps > bound with the bound >= c1 of the config
// in use) is checked structurally for closed forms and on the materialized
// prefix for generic backings.
class MuView {
public:
    static MuView from_witness(const ComplexSequence& source, const SigmaWitness& w);
    // Greedy-on-demand backing; picks materialize as the partition asks.
    static MuView lazy(std::shared_ptr<const ComplexSequence> source, double M);
    static MuView closed_form(double alpha, double beta,
                              std::int64_t index0, std::int64_t index_step);

    double gap_bound() const { return M_; }
    bool is_closed_form() const { return closed_; }

    double modulus(std::int64_t k) const;                 // |mu_k|, 1-based
    std::complex<double> value(std::int64_t k) const;     // mu_k
    std::int64_t source_index(std::int64_t k) const;      // index into Lambda

    // Sum of 1/|mu_k| for k = m..M.
    double partial_sum(std::int64_t m, std::int64_t M) const;

    // Largest k this view can serve (INT64_MAX for closed forms).
    std::int64_t capacity() const;

    // Throws ValidationError unless |mu_1| > bound and all reachable gaps
    // exceed bound. `prefix` limits the gap scan for generic backings.
    void require_gaps_above(double bound, std::int64_t prefix = 4096) const;

private:
    MuView() = default;
    void extend_to(std::int64_t k) const;

    bool closed_ = false;
    double M_ = 0.0;
    // closed form
    double alpha_ = 0.0, beta_ = 0.0;
    std::int64_t index0_ = 0, index_step_ = 0;
    // generic
    std::shared_ptr<const ComplexSequence> source_;
    mutable std::vector<std::int64_t> indices_;
    mutable std::vector<std::complex<double>> values_;
    mutable std::vector<double> moduli_;
    mutable std::vector<double> prefix_sums_;   // prefix_sums_[k] = sum_{i<=k} 1/|mu_i|
    mutable CompensatedSum run_;
    mutable bool source_done_ = false;
};

} // namespace hyperpart
