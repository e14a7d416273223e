#include "thinset/integer_sequence.hpp"

#include <charconv>

namespace thinset {

namespace {

std::uint64_t parse_small(std::string_view s, const char* what) {
    std::uint64_t v = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (s.empty() || ec != std::errc{} || ptr != s.data() + s.size())
        throw schema_error(std::string("malformed ") + what + ": '" + std::string(s) + "'");
    return v;
}

} // namespace

IntegerSequence IntegerSequence::scaled_geometric(Integer c, std::uint64_t base) {
    if (c < 1) throw domain_error("scale must be >= 1");
    if (base < 2) throw domain_error("base must be >= 2");
    IntegerSequence s;
    s.scale_ = std::move(c);
    s.base_ = base;
    return s;
}

IntegerSequence IntegerSequence::from_arithmetic(ArithmeticSequence seq) {
    if (seq.kind() == ArithmeticSequence::Kind::finite)
        throw domain_error("a scanning sequence needs an unbounded ratio generator");
    IntegerSequence s;
    s.arith_ = std::move(seq);
    return s;
}

IntegerSequence IntegerSequence::parse(std::string_view spec, const std::optional<ArithmeticSequence>& u) {
    std::string compact;
    for (char ch : spec)
        if (ch != ' ') compact += ch;
    std::string_view s = compact;
    if (s == "u" || s == "u_n") {
        if (!u) throw schema_error("sequence spec 'u' needs --seq");
        return from_arithmetic(*u);
    }
    if (s.starts_with("u_n:")) return from_arithmetic(ArithmeticSequence::parse(s.substr(4)));
    if (s == "n!") return from_arithmetic(ArithmeticSequence::factorial());
    if (s.ends_with("^n")) {
        auto body = s.substr(0, s.size() - 2);
        Integer c = 1;
        if (auto star = body.find('*'); star != std::string_view::npos) {
            c = parse_integer(body.substr(0, star));
            body = body.substr(star + 1);
        }
        return scaled_geometric(c, parse_small(body, "base"));
    }
    throw schema_error("unknown sequence spec: '" + std::string(spec) + "'");
}

Integer IntegerSequence::term(std::uint64_t n) const {
    if (n < 1) throw domain_error("sequence terms are indexed from 1");
    if (arith_) return arith_->term(n);
    Integer p;
    mpz_ui_pow_ui(p.get_mpz_t(), base_, n);
    return scale_ * p;
}

std::uint64_t IntegerSequence::step(std::uint64_t n) const {
    if (arith_) return arith_->ratio(n);
    return base_;
}

Integer IntegerSequence::residue(std::uint64_t n, const Integer& m) const {
    Integer r;
    if (arith_) {
        if (auto b = arith_->geometric_base()) {
            Integer bb = static_cast<unsigned long>(*b), e = from_u64(n);
            mpz_powm(r.get_mpz_t(), bb.get_mpz_t(), e.get_mpz_t(), m.get_mpz_t());
            return r;
        }
        r = 1;
        for (std::uint64_t j = 1; j <= n; ++j) {
            r *= static_cast<unsigned long>(arith_->ratio(j));
            mpz_mod(r.get_mpz_t(), r.get_mpz_t(), m.get_mpz_t());
        }
        return r;
    }
    Integer bb = static_cast<unsigned long>(base_), e = from_u64(n);
    mpz_powm(r.get_mpz_t(), bb.get_mpz_t(), e.get_mpz_t(), m.get_mpz_t());
    r *= scale_;
    mpz_mod(r.get_mpz_t(), r.get_mpz_t(), m.get_mpz_t());
    return r;
}

std::optional<bool> IntegerSequence::eventually_divisible_by(const Integer& d) const {
    if (d < 1) throw domain_error("divisor must be positive");
    Integer rest = d, g;
    Integer multiplier;
    if (arith_) {
        if (arith_->kind() == ArithmeticSequence::Kind::factorial) return true;
        multiplier = 1;
        for (auto q : arith_->ratios()) multiplier *= static_cast<unsigned long>(q);
    } else {
        mpz_gcd(g.get_mpz_t(), rest.get_mpz_t(), scale_.get_mpz_t());
        rest /= g;
        multiplier = static_cast<unsigned long>(base_);
    }
    // Strip every prime that the repeated multiplier supplies.
    for (;;) {
        mpz_gcd(g.get_mpz_t(), rest.get_mpz_t(), multiplier.get_mpz_t());
        if (g == 1) break;
        rest /= g;
    }
    return rest == 1;
}

std::uint64_t IntegerSequence::first_divisible_index(const Integer& d) const {
    if (eventually_divisible_by(d) != true) throw precondition_error("D never divides the sequence");
    auto divides = [&](std::uint64_t n) { return residue(n, d) == 0; };
    std::uint64_t hi = 1;
    while (!divides(hi)) hi *= 2;
    std::uint64_t lo = hi / 2;  // !divides(lo) or lo == 0
    while (hi - lo > 1) {
        std::uint64_t mid = lo + (hi - lo) / 2;
        (divides(mid) ? hi : lo) = mid;
    }
    return hi;
}

std::uint64_t IntegerSequence::first_index_at_least(const Integer& bound, std::uint64_t from) const {
    if (from < 1) from = 1;
    if (arith_) {
        auto k = arith_->first_term_at_least(bound, from);
        return *k;
    }
    // c * b^n >= bound  <=>  b^n >= ceil(bound / c).
    Integer need;
    mpz_cdiv_q(need.get_mpz_t(), bound.get_mpz_t(), scale_.get_mpz_t());
    auto k = ArithmeticSequence::geometric(base_).first_term_at_least(need, from);
    return std::max<std::uint64_t>(*k, from);
}

std::optional<std::uint64_t> IntegerSequence::base() const {
    if (arith_) return arith_->geometric_base();
    return base_;
}

std::string IntegerSequence::spec() const {
    if (arith_) return arith_->kind() == ArithmeticSequence::Kind::factorial ? "n!" : "u_n:" + arith_->spec();
    return (scale_ == 1 ? "" : scale_.get_str() + "*") + std::to_string(base_) + "^n";
}

WeightRule WeightRule::explicit_list(std::vector<Rational> values) {
    for (auto& v : values) {
        v.canonicalize();
        if (v <= 0) throw domain_error("weights must be positive");
    }
    return WeightRule(Kind::explicit_list, std::move(values));
}

WeightRule WeightRule::parse(std::string_view spec) {
    if (spec == "one" || spec == "1") return constant();
    if (spec == "harmonic" || spec == "1/n") return harmonic();
    if (spec == "inverse-square" || spec == "1/n^2") return inverse_square();
    if (spec.size() >= 2 && spec.front() == '[' && spec.back() == ']') {
        std::vector<Rational> vals;
        auto body = spec.substr(1, spec.size() - 2);
        while (!body.empty()) {
            auto comma = body.find(',');
            auto item = body.substr(0, comma);
            while (!item.empty() && item.front() == ' ') item.remove_prefix(1);
            while (!item.empty() && item.back() == ' ') item.remove_suffix(1);
            vals.push_back(parse_rational(item));
            if (comma == std::string_view::npos) break;
            body.remove_prefix(comma + 1);
        }
        return explicit_list(std::move(vals));
    }
    throw schema_error("unknown weight spec: '" + std::string(spec) + "'");
}

Rational WeightRule::at(std::uint64_t n) const {
    if (n < 1) throw domain_error("weights are indexed from 1");
    switch (kind_) {
    case Kind::constant: return Rational(1);
    case Kind::harmonic: return make_rational(Integer(1), from_u64(n));
    case Kind::inverse_square: {
        Integer nn = from_u64(n);
        return make_rational(Integer(1), nn * nn);
    }
    case Kind::explicit_list:
        if (n > values_.size()) throw domain_error("weight index beyond explicit list");
        return values_[n - 1];
    }
    return {};
}

std::optional<std::uint64_t> WeightRule::max_index() const {
    if (kind_ == Kind::explicit_list) return values_.size();
    return std::nullopt;
}

std::string WeightRule::spec() const {
    switch (kind_) {
    case Kind::constant: return "one";
    case Kind::harmonic: return "harmonic";
    case Kind::inverse_square: return "inverse-square";
    case Kind::explicit_list: {
        std::string s = "[";
        for (std::size_t i = 0; i < values_.size(); ++i) s += (i ? "," : "") + values_[i].get_str();
        return s + "]";
    }
    }
    return {};
}

} // namespace thinset
