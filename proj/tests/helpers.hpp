#pragma once

// Shared fixtures and reference oracles for the unit suites.
//
// Oracles are deliberately plain: long double loops, direct summation, exact
// rationals. They share no code path with the library routines they check, so
// an agreement failure always points at the library (or at a genuinely
// borderline comparison, which the tests avoid by construction).

#include "hyperpart/bigint.hpp"
#include "hyperpart/partition.hpp"
#include "hyperpart/witness.hpp"

#include <cstdint>
#include <functional>
#include <vector>

namespace testutil {

// Reference free-mode run: sector [0.9, 1.05] x [0, 0.25] turns, c2 = 0.9,
// c4 = 1.05, witness mu_k = 10k. Constant chain: c3 = 35/27, c1 = 248/27.
inline hyperpart::PartitionConfig ref_config() {
    return hyperpart::PartitionConfig::free_constants(0.9, 1.05, 0.0, 0.25, 0.9,
                                                      1.05);
}

inline hyperpart::MuView ref_mu() {
    return hyperpart::MuView::closed_form(0.0, 10.0, 1, 1);
}

// ---------------------------------------------------------------------------
// oracle: m1 by direct scan
// ---------------------------------------------------------------------------

// First M >= m with sum_{k=m}^{M} 1/mod(k) > c3/mod(m), found by a plain
// accumulate-and-test loop in long double.
inline std::int64_t
oracle_m1(const std::function<long double(std::int64_t)>& mod, std::int64_t m,
          double c3) {
    const long double threshold = static_cast<long double>(c3) / mod(m);
    long double acc = 0.0L;
    for (std::int64_t M = m;; ++M) {
        acc += 1.0L / mod(M);
        if (acc > threshold) return M;
    }
}

// ---------------------------------------------------------------------------
// oracle: radial ladder by direct recursion
// ---------------------------------------------------------------------------

struct OracleLadder {
    std::vector<std::int64_t> anchors;  // m_1, m_2, ...
    std::vector<long double> radii;     // r_0, r_1, ...
    std::int64_t nu0 = -1;              // last index with r <= R0; -1 if never crossed
};

// m_1 = m1(1), m_{nu+1} = m1(m_nu + 1), r_{nu+1} = r_nu + c2/mod(m_{nu+1}),
// walked until the radius first exceeds R0 or max_levels anchors were taken.
inline OracleLadder
oracle_ladder(const std::function<long double(std::int64_t)>& mod, double r0,
              double R0, double c2, double c3, std::int64_t max_levels) {
    OracleLadder lad;
    lad.radii.push_back(static_cast<long double>(r0));
    std::int64_t density = 1;
    for (std::int64_t nu = 0; nu < max_levels; ++nu) {
        const std::int64_t mn = oracle_m1(mod, density, c3);
        const long double rn =
            lad.radii.back() + static_cast<long double>(c2) / mod(mn);
        lad.anchors.push_back(mn);
        lad.radii.push_back(rn);
        density = mn + 1;
        if (rn > static_cast<long double>(R0)) {
            lad.nu0 = nu;
            break;
        }
    }
    return lad;
}

// ---------------------------------------------------------------------------
// oracle: factorial-block sequence by direct materialization
// ---------------------------------------------------------------------------

// First `count` terms of the block sequence: D_1 = {1},
// D_{n+1} = {a + v : v = 0..([a]+1)!} with a = M0 * max D_n. Exact rationals;
// `count` must stay small enough that block factorials are materializable.
inline std::vector<hyperpart::Rational>
oracle_prop61_prefix(const hyperpart::Rational& M0, std::int64_t count) {
    using hyperpart::BigInt;
    using hyperpart::Rational;
    std::vector<Rational> out;
    out.push_back(Rational(1));
    while (static_cast<std::int64_t>(out.size()) < count) {
        const Rational a = M0 * out.back();
        const BigInt arg = hyperpart::rational_floor(a) + 1;
        BigInt fact = 1;
        for (BigInt i = 2; i <= arg; ++i) fact *= i;
        for (BigInt v = 0; v <= fact; ++v) {
            out.push_back(a + Rational(v));
            if (static_cast<std::int64_t>(out.size()) >= count) break;
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// oracle: greedy gapped-subsequence extraction
// ---------------------------------------------------------------------------

// Greedy scan over explicit moduli: first index with modulus > M, then
// repeatedly the first later index whose modulus exceeds the last pick by
// more than M. Returns indices (1-based).
inline std::vector<std::int64_t>
oracle_greedy_witness(const std::vector<double>& moduli, double M) {
    std::vector<std::int64_t> picks;
    double last = 0.0;
    for (std::size_t i = 0; i < moduli.size(); ++i) {
        const bool take = picks.empty() ? moduli[i] > M : moduli[i] - last > M;
        if (take) {
            picks.push_back(static_cast<std::int64_t>(i) + 1);
            last = moduli[i];
        }
    }
    return picks;
}

} // namespace testutil
