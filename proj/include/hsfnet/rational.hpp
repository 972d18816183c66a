#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <string>

namespace hsfnet {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

// Exact rational scalar with a float view. All closed-form evaluators
// return this so that reports can carry both representations.
struct ExactScalar {
    Rational value;

    ExactScalar() = default;
    ExactScalar(Rational v) : value(std::move(v)) {}
    ExactScalar(const BigInt& v) : value(v) {}
    ExactScalar(long v) : value(v) {}

    double approx() const { return value.convert_to<double>(); }

    // "num/den" with the denominator omitted when it is 1.
    std::string str() const {
        std::string s = numerator(value).str();
        if (denominator(value) != 1) {
            s += "/";
            s += denominator(value).str();
        }
        return s;
    }
};

// Exact conversion: every finite double is a dyadic rational.
inline Rational rational_from_double(double x) { return Rational(x); }

inline BigInt int_pow(BigInt base, unsigned exp) {
    BigInt r = 1;
    while (exp) {
        if (exp & 1) r *= base;
        base *= base;
        exp >>= 1;
    }
    return r;
}

// m^e for the graph-family parameters (m >= 2, e >= 0).
inline BigInt mpow(int m, int e) { return int_pow(BigInt(m), static_cast<unsigned>(e)); }

}  // namespace hsfnet
