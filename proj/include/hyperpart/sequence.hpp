#pragma once

#include "hyperpart/bigint.hpp"
#include "hyperpart/errors.hpp"

#include <complex>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace hyperpart {

// All sequence indices are 1-based.

// ---------------------------------------------------------------------------
// factorial-block sequence
// ---------------------------------------------------------------------------
//
// Blocks D_1 = {1}, D_n = {a_n + v : v = 0..([a_n]+1)!} for n >= 2, chained by
// min D_{n+1} = M0 * max D_n. Every block is an integer-step progression, so
// within a block consecutive ratios are 1 + 1/term while each block boundary
// jumps by the factor M0 exactly. Block boundaries a_n are kept as exact
// rationals; terms materialize lazily and only up to the enumeration cap.

struct Prop61Params {
    Rational M0;              // > 1
    std::int64_t cap = 0;     // hard enumeration cap, > 0
};

struct Prop61Block {
    int index = 0;                 // block number n, 1-based
    Rational a;                    // a_n = min of the block
    std::int64_t first = 0;        // global index of a_n
    std::int64_t last = 0;         // global index of max D_n; cap+1 if beyond cap
    bool truncated = false;        // block extends past the cap
    std::optional<BigInt> size_factorial;  // ([a_n]+1)!, absent when saturated
};

class Prop61Blocks {
public:
    explicit Prop61Blocks(Prop61Params params);

    Rational term(std::int64_t n) const;          // exact; CapacityError past cap
    const Prop61Block& block_of(std::int64_t n) const;
    const Prop61Block& block(int index) const;    // blocks touching [1, cap] only
    int blocks_within_cap() const;
    const Prop61Params& params() const { return params_; }

private:
    void extend_to(std::int64_t n) const;

    Prop61Params params_;
    mutable std::vector<Prop61Block> blocks_;
    mutable bool exhausted_ = false;  // last materialized block is truncated
};

// ---------------------------------------------------------------------------
// ComplexSequence
// ---------------------------------------------------------------------------

enum class SeqKind { Arithmetic, Prop61, Explicit };

class ComplexSequence {
public:
    // lambda_n = alpha + beta * n; alpha >= 0, beta > 0 keep all terms positive.
    static ComplexSequence arithmetic(double alpha, double beta);
    static ComplexSequence prop61(Prop61Params params);
    // Finite nonzero list.
    static ComplexSequence explicit_list(std::vector<std::complex<double>> terms);

    SeqKind kind() const { return kind_; }
    std::complex<double> term(std::int64_t n) const;
    double modulus(std::int64_t n) const;

    // Largest valid index: cap for prop61, list size for explicit,
    // INT64_MAX for arithmetic.
    std::int64_t max_index() const;

    double alpha() const { return alpha_; }
    double beta() const { return beta_; }
    const Prop61Blocks* blocks() const { return blocks_.get(); }
    // Exact value, available for arithmetic-with-exact-parameters and prop61.
    std::optional<Rational> exact_term(std::int64_t n) const;

private:
    ComplexSequence() = default;
    SeqKind kind_ = SeqKind::Arithmetic;
    double alpha_ = 0.0, beta_ = 1.0;
    std::shared_ptr<const Prop61Blocks> blocks_;
    std::vector<std::complex<double>> terms_;
};

// ---------------------------------------------------------------------------
// diagnostics over sequences
// ---------------------------------------------------------------------------

struct RatioProfile {
    std::vector<double> ratios;   // |lambda_{n+1}| / |lambda_n|, n = 1..N
    double prefix_limsup = 0.0;   // max over the tail half of the prefix
};

RatioProfile ratio_profile(const ComplexSequence& seq, std::int64_t N);

// For prop61 sequences: exact consecutive ratios over [1, N].
std::vector<Rational> ratio_profile_exact(const ComplexSequence& seq, std::int64_t N);

enum class DivergenceTag { Analytic, Empirical };

// Strictly gapped subsequence extracted from a source sequence. Gaps obey
// |mu_{k+1}| - |mu_k| > M and |mu_1| > M with exact IEEE comparisons.
struct SigmaWitness {
    double M = 0.0;
    std::vector<std::int64_t> indices;   // into the source sequence
    std::vector<double> moduli;          // |lambda| at those indices
    std::vector<double> partial_sums;    // prefix sums of 1/|mu_k|, compensated
    DivergenceTag divergence = DivergenceTag::Empirical;
    // Present when the witness values form an arithmetic progression
    // mu_k = alpha_w + beta_w * k with affine source indices.
    struct ClosedForm {
        double alpha = 0.0, beta = 0.0;
        std::int64_t index0 = 0, index_step = 0;  // source index = index0 + (k-1)*step
    };
    std::optional<ClosedForm> closed_form;
};

// Greedy left-to-right extraction: take the first term with modulus > M, then
// repeatedly the first later term whose modulus exceeds the previous pick by
// more than M. Arithmetic sources yield a closed form and skip
// materialization beyond `count` probes.
SigmaWitness extract_sigma_witness(const ComplexSequence& seq, double M, std::int64_t count);

// Arithmetic progressions D'_n = {a_n + k*N1 : k = 0..([a_n]+1)!/N1} with
// N1 = N0 + 1, restricted to the given block range of a prop61 sequence.
// All gaps (within and across blocks) are checked to exceed N0 exactly.
SigmaWitness extract_claim3(const ComplexSequence& seq, std::int64_t N0,
                            int block_first, int block_last);

struct HarmonicTail {
    double lhs = 0.0;   // sum_{k=n+1}^{m} 1/k, direct compensated summation
    double rhs = 0.0;   // log(m / (n * e))
    bool holds = false;
};

// Requires m > n >= 3; the window |H_n - ln n - gamma| < 1/2 needs n >= 3.
HarmonicTail harmonic_tail_check(std::int64_t n, std::int64_t m);

struct GrowthIndexEstimate {
    double value = 0.0;
    bool exact = false;   // structural (arithmetic, prop61) vs prefix heuristic
};

// Estimate of the infimum over subsequences of limsup |lambda_{n+1}/lambda_n|:
// 1 for arithmetic, M0 for prop61 (both structural), otherwise the prefix
// limsup of consecutive ratios.
GrowthIndexEstimate i_lambda_estimate(const ComplexSequence& seq, std::int64_t N);

} // namespace hyperpart
