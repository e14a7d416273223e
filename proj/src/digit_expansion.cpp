#include "thinset/digit_expansion.hpp"

#include <vector>

namespace thinset {

namespace {

void check_digits(const ArithmeticSequence& seq, const std::map<std::size_t, Integer>& digits) {
    for (const auto& [n, c] : digits) {
        if (n == 0) throw domain_error("digits are indexed from 1");
        if (c < 0 || c >= static_cast<unsigned long>(seq.ratio(n)))
            throw domain_error("digit c_" + std::to_string(n) + " = " + c.get_str() + " outside [0, q_n)");
    }
}

/// Numerator of x_k over u_k.
Integer partial_numerator(const DigitExpansion& e, std::size_t k) {
    const auto& seq = e.sequence();
    Integer acc = 0;
    std::size_t at = 0;
    for (auto it = e.nonzero_digits().begin(); it != e.nonzero_digits().end() && it->first <= k; ++it) {
        acc *= seq.span(at, it->first);
        acc += it->second;
        at = it->first;
    }
    acc *= seq.span(at, k);
    return acc;
}

} // namespace

DigitExpansion::DigitExpansion(ArithmeticSequence seq, std::map<std::size_t, Integer> digits, std::size_t depth,
                               bool exact)
    : seq_(std::move(seq)), digits_(std::move(digits)), depth_(depth), exact_(exact) {
    std::erase_if(digits_, [](const auto& kv) { return kv.second == 0; });
    check_digits(seq_, digits_);
}

DigitExpansion DigitExpansion::truncated(ArithmeticSequence seq, std::map<std::size_t, Integer> digits,
                                         std::size_t depth) {
    if (!digits.empty() && digits.rbegin()->first > depth)
        throw domain_error("digit index beyond truncation depth");
    return DigitExpansion(std::move(seq), std::move(digits), depth, false);
}

DigitExpansion DigitExpansion::finitely_supported(ArithmeticSequence seq, std::map<std::size_t, Integer> digits,
                                                  std::size_t depth) {
    std::size_t last = digits.empty() ? 0 : digits.rbegin()->first;
    return DigitExpansion(std::move(seq), std::move(digits), std::max(depth, last), true);
}

DigitExpansion DigitExpansion::with_symbolic_support(SetDescriptor s) const {
    DigitExpansion copy = *this;
    copy.symbolic_support_ = std::move(s);
    return copy;
}

Integer DigitExpansion::digit(std::size_t n) const {
    if (!known_to(n))
        throw insufficient_digits("digit " + std::to_string(n) + " requested beyond truncation depth " +
                                      std::to_string(depth_),
                                  n);
    auto it = digits_.find(n);
    return it == digits_.end() ? Integer(0) : it->second;
}

DigitExpansion expand(const CircleRational& x, const ArithmeticSequence& seq, std::size_t depth) {
    if (depth < 1) throw domain_error("expand needs depth >= 1");
    // rho_k = u_k (x - x_k) = R / D stays in [0, 1).
    const Integer& D = x.den();
    Integer R = x.num();
    std::map<std::size_t, Integer> digits;
    Integer t, c;
    for (std::size_t n = 1; n <= depth; ++n) {
        t = R * static_cast<unsigned long>(seq.ratio(n));
        mpz_fdiv_qr(c.get_mpz_t(), R.get_mpz_t(), t.get_mpz_t(), D.get_mpz_t());
        if (c != 0) digits.emplace(n, c);
    }
    if (R == 0) return DigitExpansion::finitely_supported(seq, std::move(digits), depth);
    return DigitExpansion::truncated(seq, std::move(digits), depth);
}

CircleRational reconstruct(const DigitExpansion& e, std::size_t depth) {
    if (!e.known_to(depth))
        throw insufficient_digits("reconstruct to depth " + std::to_string(depth) + " but digits stop at " +
                                      std::to_string(e.depth()),
                                  depth);
    return CircleRational(make_rational(partial_numerator(e, depth), e.sequence().term(depth)));
}

CircleRational reconstruct(const DigitExpansion& e) { return reconstruct(e, e.depth()); }

SetDescriptor support(const DigitExpansion& e) {
    if (e.symbolic_support()) return *e.symbolic_support();
    std::vector<std::uint64_t> idx;
    idx.reserve(e.nonzero_digits().size());
    for (const auto& [n, c] : e.nonzero_digits()) idx.push_back(n);
    return SetDescriptor::finite(std::move(idx));
}

RatInterval tail_bound(const ArithmeticSequence& seq, std::size_t k) {
    if (k < 1) throw domain_error("tail_bound needs k >= 1");
    return {Rational(0), make_rational(Integer(1), seq.term(k))};
}

FracEnclosure frac_scaled(const Integer& a, const DigitExpansion& e, std::size_t k) {
    if (a < 1) throw domain_error("frac_scaled needs a >= 1");
    if (!e.known_to(k))
        throw insufficient_digits("frac_scaled at " + std::to_string(k) + " beyond truncation depth " +
                                      std::to_string(e.depth()),
                                  k);
    Integer u = e.sequence().term(k);
    Integer head = a * partial_numerator(e, k);
    mpz_fdiv_r(head.get_mpz_t(), head.get_mpz_t(), u.get_mpz_t());
    return FracEnclosure::from_span(make_rational(head, u), make_rational(a, u));
}

} // namespace thinset
