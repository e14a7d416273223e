#include "thinset/ideal.hpp"
#include "thinset/json_io.hpp"

#include <doctest.h>

#include <random>

using namespace thinset;

namespace {

SetDescriptor evens() { return SetDescriptor::progression(2, 2); }

SetDescriptor random_set(std::mt19937_64& rng) {
    std::uniform_int_distribution<int> kind(0, 3), small(1, 9);
    switch (kind(rng)) {
    case 0: {
        std::vector<std::uint64_t> v;
        for (std::uint64_t x = 1; x < 60; ++x)
            if (small(rng) < 3) v.push_back(x);
        return SetDescriptor::finite(v);
    }
    case 1: return SetDescriptor::progression(small(rng), small(rng));
    case 2: return SetDescriptor::geometric(small(rng) + 1);
    default: return SetDescriptor::shifted(SetDescriptor::progression(small(rng), small(rng) + 1), small(rng) - 5);
    }
}

std::vector<std::uint64_t> brute(const SetDescriptor& s, std::uint64_t n) {
    std::vector<std::uint64_t> v;
    for (std::uint64_t x = 1; x <= n; ++x)
        if (s.contains(x)) v.push_back(x);
    return v;
}

} // namespace

TEST_CASE("prefix_density examples") {
    CHECK(prefix_density(evens(), 10) == Rational(1, 2));
    CHECK(prefix_density(SetDescriptor::finite({1, 2, 3}), 100) == Rational(3, 100));
    CHECK(prefix_density(SetDescriptor::geometric(2), 1024) == make_rational(Integer(10), Integer(1024)));
    CHECK_THROWS_AS(prefix_density(evens(), 0), error);

    EnumeratedSet e;
    e.formula = "short";
    e.nth = [](std::uint64_t k) -> std::optional<std::uint64_t> {
        if (k > 3) return std::nullopt;
        return k * 10;
    };
    e.known_infinite = true;
    try {
        prefix_density(SetDescriptor::enumerated(e), 100);
        FAIL("expected exhaustion");
    } catch (const exhaustion_error& x) {
        CHECK(x.partial_count == 3);
    }
}

TEST_CASE("exact_density examples") {
    CHECK(*exact_density(SetDescriptor::progression(5, 3)) == Rational(1, 3));
    CHECK(*exact_density(SetDescriptor::geometric(2)) == 0);
    CHECK(*exact_density(SetDescriptor::finite({4, 7})) == 0);
    CHECK(*exact_density(SetDescriptor::shifted(evens(), 3)) == Rational(1, 2));
    CHECK(*exact_density(SetDescriptor::powers_of_k(2)) == 0);
    EnumeratedSet e;
    e.formula = "mystery";
    e.nth = [](std::uint64_t k) -> std::optional<std::uint64_t> { return 2 * k; };
    CHECK(!exact_density(SetDescriptor::enumerated(e)));
}

TEST_CASE("ideal_member examples") {
    CHECK(ideal_member(IdealDescriptor::density(), SetDescriptor::geometric(2)).member());
    CHECK(ideal_member(IdealDescriptor::density(), evens()).not_member());
    CHECK(ideal_member(IdealDescriptor::fin(), SetDescriptor::geometric(2)).not_member());
    CHECK(ideal_member(IdealDescriptor::fin(), SetDescriptor::finite({1, 5})).member());
    CHECK(ideal_member(IdealDescriptor::summable(), SetDescriptor::geometric(3)).member());
    CHECK(ideal_member(IdealDescriptor::summable(), SetDescriptor::progression(1, 7)).not_member());
    CHECK(ideal_member(IdealDescriptor::summable(), SetDescriptor::powers_of_k(2)).member());

    EnumeratedSet e;
    e.formula = "mystery";
    e.nth = [](std::uint64_t k) -> std::optional<std::uint64_t> { return k * k * k; };
    Verdict v = ideal_member(IdealDescriptor::density(), SetDescriptor::enumerated(e), 1000);
    CHECK(v.inconclusive());
    CHECK(!v.trace.empty());
}

TEST_CASE("ideal descriptor parsing") {
    CHECK(IdealDescriptor::parse("density") == IdealDescriptor::density());
    CHECK(IdealDescriptor::parse("fin") == IdealDescriptor::fin());
    CHECK(IdealDescriptor::parse("summable") == IdealDescriptor::summable());
    CHECK(IdealDescriptor::parse("summable:1/2").exponent() == Rational(1, 2));
    CHECK_THROWS_AS(IdealDescriptor::parse("summable:2"), error);
    CHECK_THROWS_AS(IdealDescriptor::parse("bogus"), error);
    for (auto i : {IdealDescriptor::fin(), IdealDescriptor::density(), IdealDescriptor::summable(Rational(1, 3))})
        CHECK(json_io::ideal_from_json(json_io::to_json(i)) == i);
}

TEST_CASE("shift_set examples") {
    auto g = shift_set(SetDescriptor::geometric(2), 1);
    CHECK(g.elements_upto(20) == std::vector<std::uint64_t>{3, 5, 9, 17});
    CHECK(shift_set(SetDescriptor::finite({1, 2}), -1).elements_upto(10) == std::vector<std::uint64_t>{1});
    auto s = SetDescriptor::progression(3, 4);
    CHECK(shift_set(s, 0).elements_upto(50) == s.elements_upto(50));
}

TEST_CASE("translation_invariant_in examples") {
    CHECK(translation_invariant_in(IdealDescriptor::density(), SetDescriptor::geometric(2), 5).member());
    CHECK(translation_invariant_in(IdealDescriptor::fin(), SetDescriptor::finite({2, 9}), 5).member());
    CHECK(translation_invariant_in(IdealDescriptor::summable(), SetDescriptor::geometric(2), 10).member());
    CHECK_THROWS_AS(translation_invariant_in(IdealDescriptor::density(), evens(), 3), precondition_error);
}

TEST_CASE("non_snt_witness") {
    CHECK(!non_snt_witness(IdealDescriptor::fin()));
    for (auto I : {IdealDescriptor::density(), IdealDescriptor::summable()}) {
        auto w = non_snt_witness(I);
        REQUIRE(w);
        REQUIRE(w->as_geometric());
        CHECK(w->as_geometric()->base == 2);
        CHECK(w->provably_finite() == std::optional<bool>(false));
        CHECK(ideal_member(I, *w).member());
        CHECK(translation_invariant_in(I, *w, 20).member());
    }
}

TEST_CASE("set enumeration against membership") {
    std::mt19937_64 rng(11);
    for (int t = 0; t < 200; ++t) {
        auto s = random_set(rng);
        auto v = s.elements_upto(300);
        CHECK(v == brute(s, 300));
        CHECK(s.count_upto(300) == v.size());
        for (std::size_t i = 1; i < v.size(); ++i) CHECK(v[i - 1] < v[i]);
    }
    auto u = SetDescriptor::set_union({evens(), SetDescriptor::progression(3, 3), SetDescriptor::finite({1, 2})});
    auto v = u.elements_upto(20);
    CHECK(v == std::vector<std::uint64_t>{1, 2, 3, 4, 6, 8, 9, 10, 12, 14, 15, 16, 18, 20});
    CHECK(*exact_density(SetDescriptor::set_union({SetDescriptor::progression(1, 2), evens()})) == 1);
}

TEST_CASE("property: union subadditivity and window bounds") {
    std::mt19937_64 rng(12);
    std::uniform_int_distribution<std::uint64_t> nd(1, 2000);
    for (int t = 0; t < 200; ++t) {
        auto a = random_set(rng), b = random_set(rng);
        std::uint64_t n = nd(rng);
        CHECK(prefix_density(SetDescriptor::set_union({a, b}), n) <= prefix_density(a, n) + prefix_density(b, n));
        DensityEstimate d = estimate_density(a, n);
        CHECK(0 <= d.lower);
        CHECK(d.lower <= d.upper);
        CHECK(d.upper <= 1);
        if (d.exact && *d.exact > 0 && a.as_progression()) {
            // progression prefix counts are within one of N * d
            Rational count = prefix_density(a, n) * n;
            Rational diff = count - *d.exact * n;
            CHECK(abs(diff) <= 1 + Rational(a.as_progression()->start) * *d.exact);
        }
    }
}

TEST_CASE("property: downward closure for finite subsets") {
    std::mt19937_64 rng(13);
    for (int t = 0; t < 200; ++t) {
        auto b = random_set(rng);
        auto elems = b.elements_upto(200);
        std::vector<std::uint64_t> sub;
        for (auto x : elems)
            if (rng() % 2) sub.push_back(x);
        auto a = SetDescriptor::finite(sub);
        for (auto I : {IdealDescriptor::fin(), IdealDescriptor::density(), IdealDescriptor::summable()}) {
            if (ideal_member(I, b, 2000).member()) CHECK(!ideal_member(I, a, 2000).not_member());
            // finite sets belong to every free ideal
            CHECK(ideal_member(I, a, 2000).member());
        }
    }
}

TEST_CASE("set descriptor JSON round trip") {
    std::mt19937_64 rng(14);
    for (int t = 0; t < 50; ++t) {
        auto s = random_set(rng);
        auto j = json_io::to_json(s);
        auto back = json_io::set_from_json(j);
        CHECK(back.elements_upto(500) == s.elements_upto(500));
        CHECK(json_io::to_json(back) == j);
    }
    auto p = SetDescriptor::powers_of_k(2);
    CHECK(json_io::set_from_json(json_io::to_json(p)).elements_upto(100) == p.elements_upto(100));
    CHECK_THROWS_AS(json_io::set_from_json(json_io::json{{"kind", "mystery"}}), schema_error);
}
