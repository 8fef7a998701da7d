#pragma once

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/multiprecision/cpp_complex.hpp>

#include <complex>

namespace hyperpart {

// Extended working precision for high-degree fits: binary128-significand
// floats (roughly 38 decimal digits), expression templates off so the types
// behave like plain scalars inside the solver.
using QReal = boost::multiprecision::number<
    boost::multiprecision::cpp_bin_float<128, boost::multiprecision::digit_base_2>,
    boost::multiprecision::et_off>;

using QComplex = boost::multiprecision::cpp_complex<
    128, boost::multiprecision::backends::digit_base_2>;

inline QComplex to_q(std::complex<double> z) {
    return QComplex(QReal(z.real()), QReal(z.imag()));
}

inline std::complex<double> from_q(const QComplex& z) {
    return {static_cast<double>(z.real()), static_cast<double>(z.imag())};
}

} // namespace hyperpart
