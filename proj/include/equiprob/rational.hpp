#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <vector>

namespace eqp {

// mpq_class canonicalizes after every arithmetic op, so values stay reduced
// with a positive denominator.
using Rational = mpq_class;
using RationalVec = std::vector<Rational>;

// long is 64 bits on the supported (LP64) targets.
static_assert(sizeof(long) == sizeof(long long), "gmpxx conversions assume LP64");

inline Rational make_rational(long long num, long long den = 1) {
    Rational r(mpz_class(static_cast<long>(num)), mpz_class(static_cast<long>(den)));
    r.canonicalize();
    return r;
}

inline Rational from_int(long long v) { return Rational(static_cast<long>(v)); }

// "num/den", or just "num" for integers.
inline std::string to_string(const Rational& r) { return r.get_str(10); }

inline Rational parse_rational(const std::string& s) {
    Rational r(s, 10);
    r.canonicalize();
    return r;
}

inline double to_double(const Rational& r) { return r.get_d(); }

inline Rational dot(const RationalVec& a, const RationalVec& b) {
    Rational s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

inline RationalVec to_rational(const std::vector<long long>& v) {
    RationalVec out;
    out.reserve(v.size());
    for (long long x : v) out.push_back(from_int(x));
    return out;
}

}  // namespace eqp
