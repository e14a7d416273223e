// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include "thinset/json_io.hpp"
#include "thinset/thinsets.hpp"
#include "thinset/witness.hpp"

#include <chrono>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>

using namespace thinset;

namespace {

struct Result {
    bool ok = true;
    std::string detail;
};

Integer pow2(std::size_t k) {
    Integer d;
    mpz_ui_pow_ui(d.get_mpz_t(), 2, k);
    return d;
}

// certificates shared by criteria 3-5 and 9
std::vector<WitnessCertificate> g_certs;

WitnessCertificate make_cert(Theorem t, const std::string& seq, const std::string& a, std::uint64_t count) {
    auto s = ArithmeticSequence::parse(seq);
    auto plan = plan_witness(t, s, IntegerSequence::parse(a, s), IdealDescriptor::density(), count);
    return build_and_verify(plan);
}

Result c1_round_trip() {
    std::mt19937_64 rng(1);
    gmp_randclass g(gmp_randinit_default);
    g.seed(rng());
    std::uniform_int_distribution<std::size_t> kd(1, 30);
    std::uniform_int_distribution<int> len(1, 6), q(2, 12);
    int bad = 0;
    for (int t = 0; t < 1000; ++t) {
        ArithmeticSequence seq = ArithmeticSequence::dyadic();
        if (t % 3 == 1) seq = ArithmeticSequence::factorial();
        if (t % 3 == 2) {
            std::vector<std::uint64_t> r(len(rng));
            for (auto& x : r) x = q(rng);
            seq = ArithmeticSequence::cyclic(r);
        }
        std::size_t k = kd(rng);
        Integer u = seq.term(k);
        CircleRational x(make_rational(g.get_z_range(u), u));
        if (reconstruct(expand(x, seq, k), k) != x) ++bad;
    }
    return {bad == 0, std::to_string(bad) + " mismatches in 1000"};
}

Result c2_digit_choice() {
    int bad = 0, total = 0;
    for (std::uint64_t q = 2; q <= 64; ++q)
        for (std::uint64_t v = 1; v < q; ++v) {
            ++total;
            DigitChoice c = digit_choice(q, Integer(static_cast<unsigned long>(v)));
            std::uint64_t m = v <= q - v ? 2 * v : 2 * (q - v);
            Rational f = frac(Rational(static_cast<unsigned long>(c.c * c.l), static_cast<unsigned long>(q)));
            if (c.l != v || c.m != m || c.c != q / m || f < Rational(1, 4) || f > Rational(3, 4)) ++bad;
        }
    return {bad == 0, std::to_string(total) + " pairs, " + std::to_string(bad) + " outside [1/4, 3/4]"};
}

Result c3_th6() {
    WitnessCertificate c = make_cert(Theorem::th6, "dyadic", "3*2^n", 16);
    g_certs.push_back(c);
    bool inside = c.checks.size() == 16;
    for (const auto& ch : c.checks)
        inside = inside && ch.pass && ch.interval.subset_of(RatInterval(Rational(1, 4), Rational(7, 8)));
    Verdict sup = membership_by_support(c.expansion, IdealDescriptor::density());
    Verdict v = ideal_convergence(c.expansion, IntegerSequence::from_arithmetic(c.plan.seq), IdealDescriptor::density(),
                                  100000, Rational(1, 8));
    double dens = v.trace.empty() ? 1.0 : v.trace.back().value;
    bool ok = c.pass && inside && sup.member() && !v.not_member() && !v.trace.empty() && dens <= 0.02;
    std::ostringstream d;
    d << "pass=" << c.pass << " intervals in [1/4,7/8]=" << inside << " support=" << to_string(sup.outcome)
      << " density(E_1/8 to 1e5)=" << dens << " verdict=" << to_string(v.outcome);
    return {ok, d.str()};
}

Result c4_th2() {
    bool ok = true;
    std::ostringstream d;
    for (std::uint64_t p : {2, 3, 5}) {
        std::string ps = std::to_string(p);
        WitnessCertificate c = make_cert(Theorem::th2, "geometric:" + ps, "2*" + ps + "^n", 12);
        g_certs.push_back(c);
        Rational T(static_cast<long>(p - 1), static_cast<long>(p * p));
        bool above = c.checks.size() == 12;
        for (const auto& ch : c.checks)
            above = above && ch.interval.hi < 1 && ch.interval.lo > T && ch.interval.hi < 1 - T;
        ok = ok && c.pass && above;
        d << "p=" << p << ":" << (c.pass && above ? "ok" : "bad") << " ";
    }
    return {ok, d.str()};
}

Result c5_th1() {
    bool ok = true;
    std::size_t blocks = 0;
    for (const char* a : {"2^n", "3*2^n"}) {
        WitnessCertificate c = make_cert(Theorem::th1, "dyadic", a, 6);
        g_certs.push_back(c);
        ok = ok && c.pass && !c.blocks.empty();
        for (std::size_t b = 0; b < c.blocks.size(); ++b) {
            const BlockCheck& bc = c.blocks[b];
            Rational bound = Rational(44, 7) / static_cast<long>(std::max<std::size_t>(c.plan.indices[b].k, 1));
            ok = ok && bc.bound == bound && bc.sum_upper <= bound;
            ++blocks;
        }
    }
    return {ok, std::to_string(blocks) + " blocks within 2(22/7)/k"};
}

Result c6_decompose() {
    int bad = 0;
    for (auto s : {ArithmeticSequence::dyadic(), ArithmeticSequence::factorial()})
        for (long a = 1; a <= 10000; ++a) {
            std::size_t k = 0;
            while (Integer(a) % s.term(k + 1) == 0) ++k;
            Decomposition d = decompose(s, Integer(a));
            if (d.k != k || d.v * s.term(k) != a) ++bad;
        }
    return {bad == 0, std::to_string(bad) + " mismatches in 20000"};
}

Result c7_nset() {
    auto r = nset_partial_sums(CircleRational::parse("1/3"), IntegerSequence::parse("2^n"), WeightRule::harmonic(),
                               10000);
    Rational h = 0;
    for (long n = 1; n <= 10000; ++n) h += Rational(1, n);
    const RatInterval& s = r.norm_sums.back();
    bool ok = r.checkpoints.back() == 10000 && s.lo == h / 3 && s.hi == h / 3 && s.lo > 3 &&
              r.growth == Growth3::divergent_evidence;
    std::ostringstream d;
    d << "S_10000 = H/3 ~ " << s.lo.get_d() << ", growth " << to_string(r.growth);
    return {ok, d.str()};
}

Result c8_soundness() {
    std::mt19937_64 rng(8);
    const auto supp = SetDescriptor::shifted(SetDescriptor::geometric(2), 1);
    const auto dy = ArithmeticSequence::dyadic();
    const auto a = IntegerSequence::from_arithmetic(dy);
    const IdealDescriptor I = IdealDescriptor::density();
    std::uniform_int_distribution<std::uint64_t> top(1000, 100000);
    int runs = 0, bad = 0, support_bad = 0;
    for (int t = 0; t < 100; ++t) {
        std::uint64_t depth = t % 10 == 0 ? 100000 : top(rng) / (t % 2 ? 1 : 10);
        std::size_t trunc = depth + 64;
        std::map<std::size_t, Integer> digits;
        for (auto s : supp.elements_upto(trunc))
            if (rng() % 2) digits[s] = 1;
        auto e = DigitExpansion::truncated(dy, digits, trunc).with_symbolic_support(supp);
        if (!membership_by_support(e, I).member()) ++support_bad;
        for (std::uint64_t d : {std::uint64_t{1}, std::uint64_t{10}, std::uint64_t{100}, depth}) {
            auto eps = default_eps_grid()[runs % 4];
            ++runs;
            if (ideal_convergence(e, a, I, d, eps).not_member()) ++bad;
        }
    }
    return {bad == 0 && support_bad == 0, "100 expansions, " + std::to_string(runs) + " runs, " +
                                               std::to_string(bad) + " NotMember, " + std::to_string(support_bad) +
                                               " support failures"};
}

Result c9_round_trip() {
    int bad = 0;
    for (const auto& c : g_certs) {
        std::string text = json_io::to_json(c).dump();
        WitnessCertificate back = json_io::certificate_from_json(json_io::json::parse(text));
        VerifyReport r = verify_certificate(back);
        if (!r.pass || !back.pass || json_io::to_json(back).dump() != text) ++bad;
    }
    return {bad == 0 && g_certs.size() == 6,
            std::to_string(g_certs.size()) + " certificates, " + std::to_string(bad) + " failures"};
}

} // namespace

int main() {
    std::vector<std::pair<std::string, std::function<Result()>>> criteria = {
        {"expansion round trip", c1_round_trip},
        {"digit choice inequality", c2_digit_choice},
        {"th6 certificate, support rule, exceptional density", c3_th6},
        {"th2 certificates for p = 2, 3, 5", c4_th2},
        {"th1 block bounds", c5_th1},
        {"decomposition oracle", c6_decompose},
        {"N-set divergence evidence", c7_nset},
        {"verdict soundness", c8_soundness},
        {"certificate round trip", c9_round_trip},
    };
    int failed = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        auto start = std::chrono::steady_clock::now();
        Result r;
        try {
            r = criteria[i].second();
        } catch (const std::exception& e) {
            r = {false, std::string("exception: ") + e.what()};
        }
        double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        if (!r.ok) ++failed;
        std::cout << (r.ok ? "PASS" : "FAIL") << " " << i + 1 << " " << criteria[i].first << ": " << r.detail << " ("
                  << secs << " s)" << std::endl;
    }
    return failed ? 1 : 0;
}
