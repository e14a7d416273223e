#pragma once

#include "thinset/interval.hpp"
#include "thinset/rational.hpp"

namespace thinset {

/// An element of the circle group R/Z, held as its reduced representative in [0, 1).
class CircleRational {
public:
    CircleRational() = default;
    /// Throws domain_error unless 0 <= x < 1.
    explicit CircleRational(Rational x);
    /// Reduces any rational mod 1.
    static CircleRational reduce(const Rational& x) { return CircleRational(frac(x)); }
    static CircleRational parse(std::string_view text) { return CircleRational(parse_rational(text)); }

    const Rational& value() const { return value_; }
    const Integer& num() const { return value_.get_num(); }
    const Integer& den() const { return value_.get_den(); }

    friend bool operator==(const CircleRational&, const CircleRational&) = default;

private:
    Rational value_{0};
};

/// ||x|| = min({x}, 1 - {x}).
Rational dist_to_int(const Rational& x);

/// {a * x}.
CircleRational mult_mod1(const Integer& a, const CircleRational& x);

/// Upper constant used in place of pi; 22/7 > pi.
inline const Rational& pi_upper() {
    static const Rational v(22, 7);
    return v;
}

/// [2||x||, (22/7)||x||], an enclosure of |sin(pi x)|.
RatInterval sin_envelope(const Rational& x);

} // namespace thinset
