#include "thinset/digit_expansion.hpp"
#include "thinset/json_io.hpp"

#include <doctest.h>

#include <random>

using namespace thinset;

namespace {

std::vector<Integer> digits_of(const DigitExpansion& e) {
    std::vector<Integer> d;
    for (std::size_t n = 1; n <= e.depth(); ++n) d.push_back(e.digit(n));
    return d;
}

std::vector<Integer> ints(std::initializer_list<int> v) { return {v.begin(), v.end()}; }

Rational R(const char* s) { return parse_rational(s); }

// Random sequence with ratios in [2, 9].
ArithmeticSequence random_seq(std::mt19937_64& rng) {
    std::uniform_int_distribution<int> len(1, 5), q(2, 9);
    std::vector<std::uint64_t> p(len(rng));
    for (auto& r : p) r = q(rng);
    return ArithmeticSequence::cyclic(p);
}

Integer random_below(std::mt19937_64& rng, const Integer& bound) {
    static gmp_randclass g(gmp_randinit_default);
    g.seed(rng());
    return g.get_z_range(bound);
}

} // namespace

TEST_CASE("rational wire format") {
    CHECK(to_wire(R("6/8")) == "3/4");
    CHECK(to_wire(Rational(5)) == "5/1");
    CHECK(parse_rational("-2/4") == Rational(-1, 2));
    CHECK_THROWS_AS(parse_rational("1/0"), error);
    CHECK_THROWS_AS(parse_rational("abc"), error);
    CHECK(frac(R("-1/3")) == R("2/3"));
    CHECK(floor_of(R("-1/3")) == -1);
    CHECK(to_u64(from_u64(UINT64_MAX)) == UINT64_MAX);
}

TEST_CASE("arithmetic sequences") {
    auto d = ArithmeticSequence::dyadic();
    CHECK(d.term(0) == 1);
    CHECK(d.term(10) == 1024);
    CHECK(d.span(3, 7) == 16);
    auto f = ArithmeticSequence::factorial();
    CHECK(f.ratio(1) == 1);
    CHECK(f.term(4) == 24);
    CHECK(f.span(2, 5) == 60);
    auto c = ArithmeticSequence::parse("[2,3]");
    CHECK(c.term(4) == 36);
    CHECK(c.span(1, 4) == 18);
    CHECK(ArithmeticSequence::parse("geometric:5").term(3) == 125);
    CHECK(ArithmeticSequence::parse("factorial") == f);
    CHECK_THROWS_AS(ArithmeticSequence::parse("[1,2]"), error);
    CHECK_THROWS_AS(ArithmeticSequence::parse("nope"), error);

    auto fin = ArithmeticSequence::finite({1, 3, 2});
    CHECK(fin.term(3) == 6);
    CHECK(*fin.max_index() == 3);

    SUBCASE("u_n divides u_{n+1} and grows") {
        for (auto s : {d, f, c, fin}) {
            std::size_t top = s.max_index().value_or(25);
            for (std::size_t n = 0; n < top; ++n) {
                CHECK(s.term(n + 1) % s.term(n) == 0);
                if (n >= 1) CHECK(s.term(n + 1) > s.term(n));
            }
        }
    }
    SUBCASE("first_term_at_least") {
        CHECK(*d.first_term_at_least(Integer(1000)) == 10);
        CHECK(*d.first_term_at_least(Integer(1024)) == 10);
        CHECK(*f.first_term_at_least(Integer(121)) == 6);
        CHECK(*d.first_term_at_least(Integer(1), 7) == 7);
        CHECK(!fin.first_term_at_least(Integer(7)));
    }
}

TEST_CASE("expand examples") {
    auto e = expand(CircleRational::parse("5/8"), ArithmeticSequence::finite({2, 2, 2}), 3);
    CHECK(digits_of(e) == ints({1, 0, 1}));
    e = expand(CircleRational::parse("1/3"), ArithmeticSequence::dyadic(), 6);
    CHECK(digits_of(e) == ints({0, 1, 0, 1, 0, 1}));
    e = expand(CircleRational::parse("1/2"), ArithmeticSequence::factorial(), 4);
    CHECK(digits_of(e) == ints({0, 1, 0, 0}));
    CHECK(e.is_finitely_supported());
    CHECK(reconstruct(e) == CircleRational::parse("1/2"));
    CHECK_THROWS_AS(CircleRational::parse("1"), domain_error);
    CHECK_THROWS_AS(CircleRational::parse("-1/2"), domain_error);
}

TEST_CASE("reconstruct examples") {
    auto e = DigitExpansion::finitely_supported(ArithmeticSequence::dyadic(), {{1, 1}, {3, 1}}, 3);
    CHECK(reconstruct(e) == CircleRational::parse("5/8"));
    auto z = DigitExpansion::finitely_supported(ArithmeticSequence::factorial(), {}, 7);
    CHECK(reconstruct(z).value() == 0);
    auto f = DigitExpansion::finitely_supported(ArithmeticSequence::factorial(), {{2, 1}}, 2);
    CHECK(reconstruct(f) == CircleRational::parse("1/2"));

    auto t = DigitExpansion::truncated(ArithmeticSequence::dyadic(), {{2, 1}}, 4);
    CHECK(reconstruct(t, 4) == CircleRational::parse("1/4"));
    CHECK_THROWS_AS(reconstruct(t, 5), insufficient_digits);
    CHECK_THROWS_AS(t.digit(5), insufficient_digits);
    CHECK_THROWS_AS(DigitExpansion::truncated(ArithmeticSequence::dyadic(), {{2, 2}}, 4), error);
}

TEST_CASE("support") {
    auto e = DigitExpansion::finitely_supported(ArithmeticSequence::dyadic(), {{1, 1}, {3, 1}}, 3);
    CHECK(support(e).elements_upto(100) == std::vector<std::uint64_t>{1, 3});
    auto z = DigitExpansion::finitely_supported(ArithmeticSequence::dyadic(), {}, 3);
    CHECK(support(z).elements_upto(100).empty());
    auto s = z.with_symbolic_support(SetDescriptor::shifted(SetDescriptor::geometric(2), 1));
    CHECK(support(s).as_shifted() != nullptr);
}

TEST_CASE("dist_to_int, mult_mod1, tail_bound, sin_envelope examples") {
    CHECK(dist_to_int(R("5/8")) == R("3/8"));
    CHECK(dist_to_int(Rational(0)) == 0);
    CHECK(dist_to_int(R("7/3")) == R("1/3"));

    CHECK(mult_mod1(Integer(3), CircleRational::parse("5/8")) == CircleRational::parse("7/8"));
    CHECK(mult_mod1(Integer(8), CircleRational::parse("5/8")).value() == 0);
    CHECK(mult_mod1(Integer(5), CircleRational::parse("1/3")) == CircleRational::parse("2/3"));

    CHECK(tail_bound(ArithmeticSequence::dyadic(), 3) == RatInterval(0, R("1/8")));
    CHECK(tail_bound(ArithmeticSequence::factorial(), 3) == RatInterval(0, R("1/6")));
    auto f = ArithmeticSequence::factorial();
    for (std::size_t k = 1; k < 12; ++k)
        CHECK(tail_bound(f, k).hi == tail_bound(f, k + 1).hi * Rational(from_u64(f.ratio(k + 1))));

    CHECK(sin_envelope(Rational(0)) == RatInterval(0, 0));
    CHECK(sin_envelope(R("1/2")) == RatInterval(1, R("11/7")));
    RatInterval s6 = sin_envelope(R("1/6"));
    CHECK(s6 == RatInterval(R("1/3"), R("11/21")));
    CHECK(s6.contains(R("1/2")));
}

TEST_CASE("frac_scaled examples") {
    auto e = DigitExpansion::finitely_supported(ArithmeticSequence::dyadic(), {{1, 1}, {3, 1}}, 3);
    FracEnclosure f = frac_scaled(Integer(4), e, 3);
    CHECK(f.span == RatInterval(R("1/2"), 1));
    CHECK(f.wraps);
    REQUIRE(f.pieces.size() == 2);

    auto z = DigitExpansion::finitely_supported(ArithmeticSequence::dyadic(), {}, 1);
    FracEnclosure g = frac_scaled(Integer(1), z, 1);
    CHECK(g.span == RatInterval(0, R("1/2")));
    CHECK(!g.wraps);

    // single digit at m+1: {2^m x} = 1/2 exactly, enclosure starts there
    for (std::size_t m = 1; m < 20; ++m) {
        auto e1 = DigitExpansion::finitely_supported(ArithmeticSequence::dyadic(), {{m + 1, 1}}, m + 1);
        Integer a = ArithmeticSequence::dyadic().term(m);
        FracEnclosure h = frac_scaled(a, e1, m + 1);
        CHECK(h.span.lo == R("1/2"));
        CHECK(h.span.contains(mult_mod1(a, reconstruct(e1)).value()));
    }
}

TEST_CASE("property: expansion round trip and digit bounds") {
    std::mt19937_64 rng(20240611);
    std::vector<ArithmeticSequence> seqs = {ArithmeticSequence::dyadic(), ArithmeticSequence::factorial()};
    for (int i = 0; i < 6; ++i) seqs.push_back(random_seq(rng));
    std::uniform_int_distribution<std::size_t> kd(1, 30);
    for (int trial = 0; trial < 400; ++trial) {
        const auto& seq = seqs[trial % seqs.size()];
        std::size_t k = kd(rng);
        Integer u = seq.term(k);
        CircleRational x(make_rational(random_below(rng, u), u));
        DigitExpansion e = expand(x, seq, k);
        CHECK(reconstruct(e, k) == x);
        for (auto& [n, c] : e.nonzero_digits()) {
            CHECK(c > 0);
            CHECK(c < from_u64(seq.ratio(n)));
        }
        // remainder decay along the way
        for (std::size_t j = 1; j <= k; ++j) {
            Rational rem = x.value() - reconstruct(e, j).value();
            CHECK(rem >= 0);
            CHECK(rem < make_rational(Integer(1), seq.term(j)));
        }
    }
}

TEST_CASE("property: remainder decay for rationals that do not terminate") {
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 100; ++trial) {
        Integer den(std::uniform_int_distribution<int>(2, 10000)(rng));
        CircleRational x(make_rational(random_below(rng, den), den));
        auto seq = trial % 2 ? ArithmeticSequence::dyadic() : random_seq(rng);
        DigitExpansion e = expand(x, seq, 40);
        Rational rem = x.value() - reconstruct(e, 40).value();
        CHECK(rem >= 0);
        CHECK(rem < make_rational(Integer(1), seq.term(40)));
    }
}

TEST_CASE("property: norm axioms") {
    std::mt19937_64 rng(99);
    std::uniform_int_distribution<int> num(-5000, 5000), den(1, 997), am(1, 50);
    for (int trial = 0; trial < 500; ++trial) {
        Rational x(num(rng), den(rng)), y(num(rng), den(rng));
        x.canonicalize();
        y.canonicalize();
        Rational nx = dist_to_int(x);
        CHECK(nx == dist_to_int(-x));
        CHECK(nx >= 0);
        CHECK(nx <= Rational(1, 2));
        CHECK(dist_to_int(x + y) <= nx + dist_to_int(y));
        int a = am(rng);
        CHECK(dist_to_int(a * x) <= a * nx);
        RatInterval s = sin_envelope(x);
        CHECK(s.lo <= s.hi);
        CHECK((s.hi == 0) == (nx == 0));
    }
}

TEST_CASE("property: frac_scaled contains the exact product") {
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 200; ++trial) {
        auto seq = trial % 3 == 0 ? ArithmeticSequence::factorial() : random_seq(rng);
        std::size_t k = std::uniform_int_distribution<std::size_t>(1, 15)(rng);
        Integer u = seq.term(k);
        CircleRational x(make_rational(random_below(rng, u), u));
        DigitExpansion e = expand(x, seq, k);
        Integer a(std::uniform_int_distribution<int>(1, 1000)(rng));
        std::size_t last = e.nonzero_digits().empty() ? 1 : e.nonzero_digits().rbegin()->first;
        for (std::size_t kk = std::max<std::size_t>(last, 1); kk <= k; ++kk) {
            FracEnclosure f = frac_scaled(a, e, kk);
            CHECK(f.span.contains(mult_mod1(a, x).value()));
        }
    }
}

TEST_CASE("interval enclosure helpers") {
    FracEnclosure f = FracEnclosure::from_span(R("3/4"), R("1/2"));
    CHECK(f.wraps);
    CHECK(f.pieces[0] == RatInterval(R("3/4"), 1));
    CHECK(f.pieces[1] == RatInterval(0, R("1/4")));
    CHECK(f.norm_range() == RatInterval(0, R("1/4")));
    FracEnclosure g = FracEnclosure::from_span(R("1/4"), R("1/2"));
    CHECK(g.norm_range() == RatInterval(R("1/4"), R("1/2")));
    CHECK(g.inside(RatInterval(R("1/4"), R("7/8"))));
    CHECK(FracEnclosure::from_span(0, 2).pieces.size() == 1);
    CHECK_THROWS_AS(RatInterval(1, 0), error);
}

TEST_CASE("expansion JSON round trip") {
    auto e = expand(CircleRational::parse("5/8"), ArithmeticSequence::dyadic(), 3);
    auto j = json_io::to_json(e);
    CHECK(j["digits"]["1"] == "1");
    CHECK(j["digits"]["3"] == "1");
    CHECK(j["depth"] == 3);
    auto back = json_io::expansion_from_json(j);
    CHECK(back.nonzero_digits() == e.nonzero_digits());
    CHECK(back.sequence() == e.sequence());
    CHECK(json_io::to_json(back) == j);

    auto fin = DigitExpansion::truncated(ArithmeticSequence::finite({1, 3, 2}), {{2, 2}}, 3);
    auto jf = json_io::to_json(fin);
    CHECK(json_io::to_json(json_io::expansion_from_json(jf)) == jf);
    auto fac = DigitExpansion::truncated(ArithmeticSequence::factorial(), {{5, 4}}, 9);
    CHECK(json_io::to_json(json_io::expansion_from_json(json_io::to_json(fac))) == json_io::to_json(fac));

    json_io::json bad = j;
    bad["digits"]["2"] = "7";
    CHECK_THROWS_AS(json_io::expansion_from_json(bad), schema_error);
    bad = j;
    bad.erase("depth");
    CHECK_THROWS_AS(json_io::expansion_from_json(bad), schema_error);
}
