#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <string>

namespace synchrolab {

using BigInt = boost::multiprecision::cpp_int;
using BigRational = boost::multiprecision::cpp_rational;

inline BigInt big_pow(BigInt base, unsigned exp) {
    BigInt r = 1;
    while (exp) {
        if (exp & 1u) r *= base;
        base *= base;
        exp >>= 1u;
    }
    return r;
}

inline BigInt factorial(unsigned k) {
    BigInt r = 1;
    for (unsigned i = 2; i <= k; ++i) r *= i;
    return r;
}

// "num/den" in lowest terms; integers render without the denominator.
inline std::string rational_to_string(const BigRational& q) {
    BigInt num = boost::multiprecision::numerator(q);
    BigInt den = boost::multiprecision::denominator(q);
    if (den == 1) return num.str();
    return num.str() + "/" + den.str();
}

inline double rational_to_double(const BigRational& q) {
    return q.convert_to<double>();
}

} // namespace synchrolab
