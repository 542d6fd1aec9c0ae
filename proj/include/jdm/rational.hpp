#pragma once

#include <cstdint>

#include <boost/rational.hpp>

namespace jdm {

using Rational = boost::rational<std::int64_t>;

inline bool is_integral(const Rational& r) { return r.denominator() == 1; }

// boost keeps the denominator positive, so floor division on the numerator is enough.
inline std::int64_t floor_of(const Rational& r) {
    const std::int64_t n = r.numerator();
    const std::int64_t d = r.denominator();
    std::int64_t q = n / d;
    if (n % d != 0 && n < 0) --q;
    return q;
}

inline std::int64_t ceil_of(const Rational& r) {
    return is_integral(r) ? r.numerator() : floor_of(r) + 1;
}

}  // namespace jdm
