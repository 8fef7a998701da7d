#include "hyperpart/polynomial.hpp"
#include "hyperpart/errors.hpp"

#include <cmath>

namespace hyperpart {

std::int64_t Polynomial::degree() const {
    for (std::size_t i = coeffs.size(); i > 0; --i)
        if (coeffs[i - 1] != std::complex<double>(0.0, 0.0))
            return static_cast<std::int64_t>(i) - 1;
    return -1;
}

std::complex<double> Polynomial::eval(std::complex<double> z) const {
    if (coeffs.empty()) return {0.0, 0.0};
    const std::complex<double> u = z / scale;
    std::complex<double> acc = coeffs.back();
    for (std::size_t i = coeffs.size() - 1; i > 0; --i)
        acc = acc * u + coeffs[i - 1];
    return acc;
}

Polynomial Polynomial::rescaled(double new_scale) const {
    if (!(new_scale > 0.0))
        throw ValidationError("polynomial: scale must be positive");
    Polynomial out;
    out.scale = new_scale;
    out.coeffs.resize(coeffs.size());
    const double ratio = new_scale / scale;
    double pw = 1.0;
    for (std::size_t k = 0; k < coeffs.size(); ++k) {
        out.coeffs[k] = coeffs[k] * pw;
        if (!std::isfinite(out.coeffs[k].real()) || !std::isfinite(out.coeffs[k].imag()))
            throw NumericalError("polynomial: basis conversion overflowed");
        pw *= ratio;
    }
    return out;
}

double Polynomial::derivative_bound(double radius) const {
    if (!(radius >= 0.0))
        throw ValidationError("polynomial: derivative bound needs radius >= 0");
    const double t = radius / scale;
    double pw = 1.0;  // t^(k-1)
    double acc = 0.0;
    for (std::size_t k = 1; k < coeffs.size(); ++k) {
        acc += static_cast<double>(k) * std::abs(coeffs[k]) * pw;
        pw *= t;
    }
    return acc / scale;
}

} // namespace hyperpart
