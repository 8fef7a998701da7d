#include "hyperpart/numeric.hpp"
#include "hyperpart/errors.hpp"

#include <cmath>
#include <limits>

namespace hyperpart {

namespace {

// Coefficients s_n of x^(-2n) in the asymptotic expansion
//   psi(x) ~ ln x - 1/(2x) + sum_n s_n x^(-2n),  s_n = -B_{2n} / (2n).
constexpr double kPsiSeries[] = {
    -1.0 / 12.0,
    +1.0 / 120.0,
    -1.0 / 252.0,
    +1.0 / 240.0,
    -1.0 / 132.0,
    +691.0 / 32760.0,
    -1.0 / 12.0,
};
constexpr double kPsiThreshold = 10.0;

double psi_series_tail(double x) {
    const double u2 = 1.0 / (x * x);
    double p = u2, acc = 0.0;
    for (double s : kPsiSeries) {
        acc += s * p;
        p *= u2;
    }
    return acc;
}

// psi(x + dxy) - psi(x) with both x and x + dxy at or above kPsiThreshold
// (dxy may be negative). dxy is authoritative; the difference is assembled
// term by term so the result keeps full relative accuracy even when dxy / x
// is below 1 ulp.
double psi_asym_diff(double x, double dxy) {
    if (dxy == 0.0) return 0.0;
    const double y = x + dxy;
    const double u = 1.0 / x, v = 1.0 / y;
    const double udiff = dxy * u * v;          // u - v, cancellation-free
    const double U = u * u, V = v * v;
    const double D1 = udiff * (u + v);         // U - V

    // d_n = U^n - V^n = D1 * sum_{i<n} U^i V^(n-1-i)
    double acc = 0.0;
    const int nterms = static_cast<int>(sizeof(kPsiSeries) / sizeof(kPsiSeries[0]));
    for (int n = 1; n <= nterms; ++n) {
        double geo = 0.0, Ui = 1.0;
        for (int i = 0; i < n; ++i) {
            double Vj = 1.0;
            for (int j = 0; j < n - 1 - i; ++j) Vj *= V;
            geo += Ui * Vj;
            Ui *= U;
        }
        acc -= kPsiSeries[n - 1] * D1 * geo;
    }
    return std::log1p(dxy / x) + 0.5 * dxy * u * v + acc;
}

} // namespace

double digamma(double x) {
    if (!(x > 0.0)) throw ValidationError("digamma: argument must be positive");
    double acc = 0.0;
    while (x < kPsiThreshold) {
        acc -= 1.0 / x;
        x += 1.0;
    }
    return acc + std::log(x) - 0.5 / x + psi_series_tail(x);
}

double digamma_diff(double x, double y) {
    if (!(x > 0.0) || y < x) throw ValidationError("digamma_diff: need 0 < x <= y");
    // Raise each argument past the series threshold independently:
    // psi(x) = psi(x+1) - 1/x contributes +1/x, psi(y) = psi(y+1) - 1/y
    // contributes -1/y. Both loops terminate with the pair inside the
    // asymptotic regime; the residual gap may be negative, which
    // psi_asym_diff accepts.
    CompensatedSum shifts;
    while (x < kPsiThreshold) {
        shifts.add(1.0 / x);
        x += 1.0;
    }
    while (y < kPsiThreshold) {
        shifts.add(-1.0 / y);
        y += 1.0;
    }
    return shifts.value() + psi_asym_diff(x, y - x);
}

double arithmetic_recip_sum(double a, double b, std::int64_t m, std::int64_t M) {
    if (!(b > 0.0) || M < m) throw ValidationError("arithmetic_recip_sum: need b > 0, m <= M");
    const double q = a / b;
    if (!(q + static_cast<double>(m) > 0.0))
        throw ValidationError("arithmetic_recip_sum: nonpositive term in range");

    // Small ranges are summed directly: exact, cheap, and avoids relying on
    // the asymptotic series where the closed form buys nothing.
    if (M - m <= 64) return arithmetic_recip_sum_direct(a, b, m, M);

    double x = q + static_cast<double>(m);
    double dxy = static_cast<double>(M - m + 1);
    CompensatedSum shifts;
    while (x < kPsiThreshold) {
        shifts.add(1.0 / x);
        x += 1.0;
        dxy -= 1.0;
    }
    return (shifts.value() + psi_asym_diff(x, dxy)) / b;
}

double arithmetic_recip_sum_direct(double a, double b, std::int64_t m, std::int64_t M) {
    if (!(b > 0.0) || M < m) throw ValidationError("arithmetic_recip_sum_direct: need b > 0, m <= M");
    CompensatedSum s;
    for (std::int64_t k = m; k <= M; ++k)
        s.add(1.0 / (a + b * static_cast<double>(k)));
    return s.value();
}

double radical_inverse(std::uint64_t i, std::uint32_t base) {
    double inv = 1.0 / base, f = inv, r = 0.0;
    while (i > 0) {
        r += f * static_cast<double>(i % base);
        i /= base;
        f *= inv;
    }
    return r;
}

namespace {
std::uint64_t splitmix64(std::uint64_t& s) {
    s += 0x9e3779b97f4a7c15ull;
    std::uint64_t z = s;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}
} // namespace

std::vector<std::pair<double, double>>
halton_rect(std::size_t n, std::uint64_t seed,
            double lo0, double hi0, double lo1, double hi1) {
    std::uint64_t s = seed;
    const double rot0 = static_cast<double>(splitmix64(s) >> 11) * 0x1p-53;
    const double rot1 = static_cast<double>(splitmix64(s) >> 11) * 0x1p-53;
    std::vector<std::pair<double, double>> out;
    out.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        double u = radical_inverse(i + 1, 2) + rot0;
        double v = radical_inverse(i + 1, 3) + rot1;
        u -= std::floor(u);
        v -= std::floor(v);
        out.emplace_back(lo0 + u * (hi0 - lo0), lo1 + v * (hi1 - lo1));
    }
    return out;
}

} // namespace hyperpart
