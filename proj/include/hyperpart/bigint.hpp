#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <optional>

namespace hyperpart {

using BigInt   = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

// Largest factorial argument the exact path will compute. 10000! has about
// 36k digits and costs milliseconds; beyond that the value could not be used
// for anything enumerable anyway.
constexpr std::int64_t kFactorialLimit = 10000;

// n! exactly, or nullopt when n exceeds kFactorialLimit.
std::optional<BigInt> exact_factorial(std::int64_t n);

// min(n!, cap) without computing n! when it is astronomically large.
// Returns cap + 1 to signal saturation.
std::int64_t saturating_factorial(std::int64_t n, std::int64_t cap);

// Exact floor of a nonnegative rational.
BigInt rational_floor(const Rational& q);

} // namespace hyperpart
