#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <string>
#include <string_view>

namespace sr {

// Exact rational scalar. cpp_rational keeps values in lowest terms with a
// positive denominator, which is exactly the invariant we need. No floating
// point anywhere in the library.
using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

// "p" for integers, "p/q" otherwise. q is always positive.
std::string rat_to_string(const Rat& r);

// Accepts "p" and "p/q". Throws std::invalid_argument on malformed input.
Rat rat_from_string(std::string_view s);

inline Rat rat(long long num, long long den = 1) { return Rat(num, den); }

}  // namespace sr
