#include "thinset/circle.hpp"

namespace thinset {

CircleRational::CircleRational(Rational x) : value_(std::move(x)) {
    value_.canonicalize();
    if (value_ < 0 || value_ >= 1) throw domain_error("circle element outside [0,1): " + to_wire(value_));
}

Rational dist_to_int(const Rational& x) {
    Rational f = frac(x);
    Rational g = 1 - f;
    return f <= g ? f : g;
}

CircleRational mult_mod1(const Integer& a, const CircleRational& x) {
    Integer r = a * x.num();
    mpz_fdiv_r(r.get_mpz_t(), r.get_mpz_t(), x.den().get_mpz_t());
    return CircleRational(make_rational(r, x.den()));
}

RatInterval sin_envelope(const Rational& x) {
    Rational d = dist_to_int(x);
    return {2 * d, pi_upper() * d};
}

} // namespace thinset
