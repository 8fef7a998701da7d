#pragma once

#include <cmath>
#include <cstdint>
#include <utility>
#include <vector>

namespace hyperpart {

// ---------------------------------------------------------------------------
// compensated summation
// ---------------------------------------------------------------------------

// Neumaier variant of Kahan summation: the running compensation also absorbs
// the case |term| > |sum|.
class CompensatedSum {
public:
    void add(double x) {
        double t = sum_ + x;
        if (std::abs(sum_) >= std::abs(x))
            comp_ += (sum_ - t) + x;
        else
            comp_ += (x - t) + sum_;
        sum_ = t;
    }
    double value() const { return sum_ + comp_; }

private:
    double sum_ = 0.0;
    double comp_ = 0.0;
};

// ---------------------------------------------------------------------------
// digamma
// ---------------------------------------------------------------------------

// psi(x) for x > 0. Asymptotic Bernoulli series after shifting x above the
// series threshold; relative accuracy ~1e-15 over the range used here.
double digamma(double x);

// psi(y) - psi(x) for 0 < x <= y, computed without the subtractive
// cancellation a naive difference suffers when (y - x) / x is small.
// The log term becomes log1p((y-x)/x) and each Bernoulli correction is
// expanded as an explicit difference; both factors carry the small quantity
// (y - x) symbolically instead of recovering it by cancellation.
double digamma_diff(double x, double y);

// Sum of 1 / (a + b*k) for k = m..M (inclusive), m <= M, all terms positive.
// Closed form via digamma_diff; exact to ~1e-14 relative at any index scale.
double arithmetic_recip_sum(double a, double b, std::int64_t m, std::int64_t M);

// Same sum by direct compensated summation. O(M - m); reference oracle.
double arithmetic_recip_sum_direct(double a, double b, std::int64_t m, std::int64_t M);

// ---------------------------------------------------------------------------
// quasi-random sampling
// ---------------------------------------------------------------------------

// Radical-inverse (van der Corput) value of index i in the given base.
double radical_inverse(std::uint64_t i, std::uint32_t base);

// 2-D Halton points (bases 2 and 3) with a seeded Cranley-Patterson rotation,
// mapped into [lo0,hi0] x [lo1,hi1]. Deterministic for a fixed seed.
std::vector<std::pair<double, double>>
halton_rect(std::size_t n, std::uint64_t seed,
            double lo0, double hi0, double lo1, double hi1);

} // namespace hyperpart
