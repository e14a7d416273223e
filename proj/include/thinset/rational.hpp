#pragma once

// Exact integer and rational scalars used throughout the library.
// Both are GMP values; every rational is kept in canonical (reduced) form.

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace thinset {

using Integer = mpz_class;
using Rational = mpq_class;

struct error : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct domain_error : error {
    using error::error;
};
struct precondition_error : error {
    using error::error;
};
struct schema_error : error {
    using error::error;
};

Rational make_rational(const Integer& num, const Integer& den);

/// Parses "p/q", "p", or "-p/q" into a canonical rational.
Rational parse_rational(std::string_view text);
Integer parse_integer(std::string_view text);

/// "num/den" for every value, including integers ("3/1"), so the wire form is uniform.
std::string to_wire(const Rational& r);
std::string to_wire(const Integer& z);

Integer floor_of(const Rational& r);
/// {x} = x - floor(x), always in [0,1).
Rational frac(const Rational& r);

inline Integer from_u64(std::uint64_t v) {
    Integer z;
    mpz_import(z.get_mpz_t(), 1, 1, sizeof(v), 0, 0, &v);
    return z;
}

inline std::uint64_t to_u64(const Integer& z) {
    if (sgn(z) < 0 || mpz_sizeinbase(z.get_mpz_t(), 2) > 64)
        throw domain_error("integer does not fit in 64 bits: " + z.get_str());
    std::uint64_t v = 0;
    mpz_export(&v, nullptr, -1, sizeof(v), 0, 0, z.get_mpz_t());
    return v;
}

} // namespace thinset
