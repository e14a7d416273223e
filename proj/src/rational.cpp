#include "thinset/rational.hpp"

namespace thinset {

Rational make_rational(const Integer& num, const Integer& den) {
    if (den == 0) throw domain_error("zero denominator");
    Rational r(num, den);
    r.canonicalize();
    return r;
}

Integer parse_integer(std::string_view text) {
    if (text.empty()) throw schema_error("empty integer");
    std::size_t i = (text[0] == '-' || text[0] == '+') ? 1 : 0;
    if (i == text.size()) throw schema_error("malformed integer: " + std::string(text));
    for (std::size_t j = i; j < text.size(); ++j)
        if (text[j] < '0' || text[j] > '9') throw schema_error("malformed integer: " + std::string(text));
    std::string digits(text[0] == '+' ? text.substr(1) : text);
    return Integer(digits, 10);
}

Rational parse_rational(std::string_view text) {
    auto slash = text.find('/');
    if (slash == std::string_view::npos) return Rational(parse_integer(text));
    Integer num = parse_integer(text.substr(0, slash));
    Integer den = parse_integer(text.substr(slash + 1));
    if (den == 0) throw schema_error("zero denominator: " + std::string(text));
    return make_rational(num, den);
}

std::string to_wire(const Rational& r) {
    return r.get_num().get_str() + "/" + r.get_den().get_str();
}

std::string to_wire(const Integer& z) { return z.get_str(); }

Integer floor_of(const Rational& r) {
    Integer q;
    mpz_fdiv_q(q.get_mpz_t(), r.get_num_mpz_t(), r.get_den_mpz_t());
    return q;
}

Rational frac(const Rational& r) {
    Integer rem;
    mpz_fdiv_r(rem.get_mpz_t(), r.get_num_mpz_t(), r.get_den_mpz_t());
    return make_rational(rem, r.get_den());
}

} // namespace thinset
