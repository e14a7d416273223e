#include "thinset/arithmetic_sequence.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>

namespace thinset {

namespace {

std::uint64_t parse_u64(std::string_view s) {
    while (!s.empty() && s.front() == ' ') s.remove_prefix(1);
    while (!s.empty() && s.back() == ' ') s.remove_suffix(1);
    std::uint64_t v = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size() || s.empty())
        throw schema_error("malformed ratio: '" + std::string(s) + "'");
    return v;
}

} // namespace

ArithmeticSequence ArithmeticSequence::cyclic(std::vector<std::uint64_t> period) {
    if (period.empty()) throw domain_error("empty ratio period");
    for (auto q : period)
        if (q < 2) throw domain_error("cycled ratios must be at least 2");
    return ArithmeticSequence(Kind::cyclic, std::move(period));
}

ArithmeticSequence ArithmeticSequence::factorial() { return ArithmeticSequence(Kind::factorial, {}); }

ArithmeticSequence ArithmeticSequence::finite(std::vector<std::uint64_t> ratios) {
    if (ratios.empty()) throw domain_error("empty ratio list");
    if (ratios[0] < 1) throw domain_error("q_1 must be at least 1");
    for (std::size_t i = 1; i < ratios.size(); ++i)
        if (ratios[i] < 2) throw domain_error("q_n must be at least 2 for n >= 2");
    return ArithmeticSequence(Kind::finite, std::move(ratios));
}

ArithmeticSequence ArithmeticSequence::parse(std::string_view spec) {
    if (spec == "dyadic") return dyadic();
    if (spec == "factorial") return factorial();
    if (spec.starts_with("geometric:")) return geometric(parse_u64(spec.substr(10)));
    if (spec.size() >= 2 && spec.front() == '[' && spec.back() == ']') {
        std::vector<std::uint64_t> period;
        auto body = spec.substr(1, spec.size() - 2);
        while (!body.empty()) {
            auto comma = body.find(',');
            period.push_back(parse_u64(body.substr(0, comma)));
            if (comma == std::string_view::npos) break;
            body.remove_prefix(comma + 1);
        }
        return cyclic(std::move(period));
    }
    throw schema_error("unknown sequence spec: '" + std::string(spec) + "'");
}

std::uint64_t ArithmeticSequence::ratio(std::size_t n) const {
    if (n == 0) throw domain_error("ratios are indexed from 1");
    switch (kind_) {
    case Kind::cyclic: return ratios_[(n - 1) % ratios_.size()];
    case Kind::factorial: return n;
    case Kind::finite:
        if (n > ratios_.size()) throw domain_error("ratio index " + std::to_string(n) + " beyond finite list");
        return ratios_[n - 1];
    }
    return 0;
}

Integer ArithmeticSequence::term(std::size_t n) const {
    Integer u = 1;
    switch (kind_) {
    case Kind::cyclic: {
        Integer period_product = 1;
        for (auto q : ratios_) period_product *= static_cast<unsigned long>(q);
        mpz_pow_ui(u.get_mpz_t(), period_product.get_mpz_t(), n / ratios_.size());
        for (std::size_t j = 0; j < n % ratios_.size(); ++j) u *= static_cast<unsigned long>(ratios_[j]);
        break;
    }
    case Kind::factorial: mpz_fac_ui(u.get_mpz_t(), n); break;
    case Kind::finite:
        for (std::size_t j = 1; j <= n; ++j) u *= static_cast<unsigned long>(ratio(j));
        break;
    }
    return u;
}

Integer ArithmeticSequence::span(std::size_t from, std::size_t to) const {
    if (to < from) throw domain_error("span with to < from");
    Integer r = 1;
    if (kind_ == Kind::cyclic) {
        const std::size_t L = ratios_.size();
        std::size_t n = from;
        for (; n < to && n % L != 0; ++n) r *= static_cast<unsigned long>(ratio(n + 1));
        if (std::size_t periods = (to - n) / L; periods > 0) {
            Integer period_product = 1, p;
            for (auto q : ratios_) period_product *= static_cast<unsigned long>(q);
            mpz_pow_ui(p.get_mpz_t(), period_product.get_mpz_t(), periods);
            r *= p;
            n += periods * L;
        }
        for (; n < to; ++n) r *= static_cast<unsigned long>(ratio(n + 1));
        return r;
    }
    for (std::size_t n = from + 1; n <= to; ++n) r *= static_cast<unsigned long>(ratio(n));
    return r;
}

std::optional<std::size_t> ArithmeticSequence::max_index() const {
    if (kind_ == Kind::finite) return ratios_.size();
    return std::nullopt;
}

std::optional<std::uint64_t> ArithmeticSequence::geometric_base() const {
    if (kind_ == Kind::cyclic && ratios_.size() == 1) return ratios_[0];
    return std::nullopt;
}

std::optional<std::size_t> ArithmeticSequence::first_term_at_least(const Integer& bound, std::size_t from) const {
    if (auto b = geometric_base()) {
        // Log estimate lands a few steps below the answer; step up from there.
        double bits = static_cast<double>(mpz_sizeinbase(bound.get_mpz_t(), 2));
        double est = (bits - 1.0) / std::log2(static_cast<double>(*b)) - 2.0;
        std::size_t k = std::max<std::size_t>(from, est > 0 ? static_cast<std::size_t>(est) : 0);
        Integer u = term(k);
        while (u < bound) {
            u *= static_cast<unsigned long>(*b);
            ++k;
        }
        return k;
    }
    Integer u = term(from);
    std::size_t k = from;
    while (u < bound) {
        if (auto m = max_index(); m && k >= *m) return std::nullopt;
        ++k;
        u *= static_cast<unsigned long>(ratio(k));
    }
    return k;
}

std::string ArithmeticSequence::spec() const {
    switch (kind_) {
    case Kind::factorial: return "factorial";
    case Kind::cyclic:
        if (ratios_.size() == 1) return ratios_[0] == 2 ? "dyadic" : "geometric:" + std::to_string(ratios_[0]);
        [[fallthrough]];
    case Kind::finite: {
        std::string s = "[";
        for (std::size_t i = 0; i < ratios_.size(); ++i) s += (i ? "," : "") + std::to_string(ratios_[i]);
        return s + "]";
    }
    }
    return {};
}

} // namespace thinset
