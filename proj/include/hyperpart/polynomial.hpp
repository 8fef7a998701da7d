#pragma once

#include <complex>
#include <cstdint>
#include <vector>

namespace hyperpart {

// f(z) = sum_k coeffs[k] * (z/scale)^k. scale = 1 is the plain monomial
// basis; fits use scale = rho so that |z/scale| <= 1 on the sampled region.
struct Polynomial {
    std::vector<std::complex<double>> coeffs;
    double scale = 1.0;

    static Polynomial zero() { return {}; }
    static Polynomial constant(std::complex<double> c) { return {{c}, 1.0}; }
    static Polynomial monomial(std::vector<std::complex<double>> c) {
        return {std::move(c), 1.0};
    }

    std::int64_t degree() const;  // -1 for the zero polynomial
    std::complex<double> eval(std::complex<double> z) const;

    // Coefficients re-expressed over new_scale; throws NumericalError if the
    // conversion leaves the double range.
    Polynomial rescaled(double new_scale) const;
    Polynomial to_monomial() const { return rescaled(1.0); }

    // sup_{|z| <= radius} |f'(z)| majorized coefficientwise:
    // sum_k k*|c_k|*(radius/scale)^(k-1) / scale.
    double derivative_bound(double radius) const;
};

} // namespace hyperpart
