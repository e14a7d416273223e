#include "thinset/witness.hpp"

#include "thinset/thinsets.hpp"

#include <algorithm>
#include <exception>
#include <map>
#include <sstream>

namespace thinset {

std::string to_string(Theorem t) {
    switch (t) {
    case Theorem::th6: return "th6";
    case Theorem::th1: return "th1";
    case Theorem::th2: return "th2";
    }
    return "?";
}

Theorem theorem_from_string(std::string_view s) {
    if (s == "th6") return Theorem::th6;
    if (s == "th1") return Theorem::th1;
    if (s == "th2") return Theorem::th2;
    throw schema_error("unknown theorem tag: " + std::string(s));
}

Decomposition decompose(const ArithmeticSequence& seq, const Integer& a) {
    if (a < 1) throw domain_error("decompose needs a >= 1");
    Decomposition d;
    d.v = a;
    if (auto p = seq.geometric_base()) {
        Integer f = from_u64(*p);
        d.k = mpz_remove(d.v.get_mpz_t(), a.get_mpz_t(), f.get_mpz_t());
        return d;
    }
    auto last = seq.max_index();
    while (!last || d.k < *last) {
        std::uint64_t q = seq.ratio(d.k + 1);
        if (!mpz_divisible_ui_p(d.v.get_mpz_t(), q)) break;
        mpz_divexact_ui(d.v.get_mpz_t(), d.v.get_mpz_t(), q);
        ++d.k;
    }
    return d;
}

DigitChoice digit_choice(std::uint64_t q, const Integer& v) {
    if (q < 2) throw precondition_error("digit_choice needs q >= 2");
    std::uint64_t l = mpz_fdiv_ui(v.get_mpz_t(), q);
    if (l == 0) throw precondition_error("digit_choice needs q not dividing v");
    DigitChoice d;
    d.l = l;
    d.l_prime = q - l;
    d.m = 2 * std::min(d.l, d.l_prime);
    if (!(d.m > 1 && d.m <= q)) throw error("digit_choice: m out of range");
    d.c = q / d.m;
    return d;
}

namespace detail {

Rational scaled_inv_span_upper(const ArithmeticSequence& seq, const Integer& v, std::size_t from, std::size_t to,
                               bool* exact) {
    if (to < from) throw domain_error("span with to < from");
    // Every ratio past q_1 is at least 2, so the span is at least 2^(to-from-1).
    std::size_t bits = mpz_sizeinbase(v.get_mpz_t(), 2);
    if (to - from >= bits + 65) {
        if (exact) *exact = false;
        Rational r(Integer(1), Integer(1) << 64);
        return r;
    }
    return make_rational(v, seq.span(from, to));
}

namespace {
const Integer& grid() {
    static const Integer g = Integer(1) << 64;
    return g;
}
} // namespace

Rational round_up(const Rational& x) {
    if (x.get_den() <= grid()) return x;
    Integer n = x.get_num() * grid();
    Integer q;
    mpz_cdiv_q(q.get_mpz_t(), n.get_mpz_t(), x.get_den_mpz_t());
    return make_rational(q, grid());
}

Rational round_down(const Rational& x) {
    if (x.get_den() <= grid()) return x;
    Integer n = x.get_num() * grid();
    Integer q;
    mpz_fdiv_q(q.get_mpz_t(), n.get_mpz_t(), x.get_den_mpz_t());
    return make_rational(q, grid());
}

} // namespace detail

namespace {

// k_n and v_n along a_n, with closed forms where the chain allows them.
class KTrack {
public:
    KTrack(const ArithmeticSequence& seq, const IntegerSequence& a, std::uint64_t scan_factor)
        : seq_(seq), a_(a), scan_factor_(std::max<std::uint64_t>(scan_factor, 1)) {
        if (a.arithmetic() && *a.arithmetic() == seq) {
            mode_ = Mode::same_chain;
        } else if (auto p = seq.geometric_base(); p && a.base()) {
            mode_ = Mode::formula;
            std::uint64_t rest = *p;
            c_rest_ = a.scale();
            b_rest_ = from_u64(*a.base());
            for (std::uint64_t f = 2; f * f <= rest; ++f) {
                if (rest % f) continue;
                Prime pr{f, 0, 0, 0};
                while (rest % f == 0) rest /= f, ++pr.e;
                add_prime(pr);
            }
            if (rest > 1) add_prime(Prime{rest, 1, 0, 0});
            for (auto& pr : primes_)
                if (pr.beta == 0) bounded_ = true;
        }
    }

    Decomposition at(std::uint64_t n) const {
        switch (mode_) {
        case Mode::same_chain: return Decomposition{n, Integer(1)};
        case Mode::formula: {
            Decomposition d;
            d.k = k_formula(n);
            Integer br;
            mpz_pow_ui(br.get_mpz_t(), b_rest_.get_mpz_t(), n);
            d.v = c_rest_ * br;
            for (auto& pr : primes_) {
                std::uint64_t ex = pr.alpha + n * pr.beta - d.k * pr.e;
                Integer t;
                mpz_ui_pow_ui(t.get_mpz_t(), pr.p, ex);
                d.v *= t;
            }
            return d;
        }
        case Mode::generic: return decompose(seq_, a_.term(n));
        }
        return {};
    }

    std::size_t k_at(std::uint64_t n) const { return mode_ == Mode::formula ? k_formula(n) : at(n).k; }

    // Smallest n >= n_lo with k_n >= K.
    std::uint64_t first_reaching(std::size_t K, std::uint64_t n_lo) const {
        if (mode_ == Mode::same_chain) return std::max<std::uint64_t>(K, n_lo);
        if (k_at(n_lo) >= K) return n_lo;
        if (mode_ == Mode::formula) {
            if (bounded_) fail(K, n_lo);
            std::uint64_t n = n_lo;
            for (auto& pr : primes_) {
                std::uint64_t need = K * pr.e;
                if (need > pr.alpha) n = std::max(n, (need - pr.alpha + pr.beta - 1) / pr.beta);
            }
            return n;
        }
        std::uint64_t limit = scan_factor_ * std::max<std::uint64_t>({n_lo, K, 16});
        std::uint64_t lo = n_lo, hi = n_lo;
        for (;;) {
            hi = std::min(limit, hi * 2);
            if (k_at(hi) >= K) break;
            if (hi == limit) fail(K, limit);
            lo = hi;
        }
        while (hi - lo > 1) {
            std::uint64_t mid = lo + (hi - lo) / 2;
            (k_at(mid) >= K ? hi : lo) = mid;
        }
        return hi;
    }

private:
    enum class Mode { same_chain, formula, generic };
    struct Prime {
        std::uint64_t p, e, alpha, beta;
    };

    void add_prime(Prime pr) {
        Integer f = from_u64(pr.p);
        pr.alpha = mpz_remove(c_rest_.get_mpz_t(), c_rest_.get_mpz_t(), f.get_mpz_t());
        pr.beta = mpz_remove(b_rest_.get_mpz_t(), b_rest_.get_mpz_t(), f.get_mpz_t());
        primes_.push_back(pr);
    }

    std::size_t k_formula(std::uint64_t n) const {
        std::uint64_t k = UINT64_MAX;
        for (auto& pr : primes_) k = std::min(k, (pr.alpha + n * pr.beta) / pr.e);
        return k;
    }

    [[noreturn]] void fail(std::size_t K, std::uint64_t upto) const {
        throw not_absorbing("k_n stays below " + std::to_string(K) + " for n <= " + std::to_string(upto) +
                            ": a = " + a_.spec() + " does not absorb u = " + seq_.spec());
    }

    const ArithmeticSequence& seq_;
    const IntegerSequence& a_;
    std::uint64_t scan_factor_;
    Mode mode_ = Mode::generic;
    std::vector<Prime> primes_;
    Integer c_rest_, b_rest_;
    bool bounded_ = false;
};

std::uint64_t next_in(const SetDescriptor& s, std::uint64_t x) {
    Cursor c = s.cursor();
    while (auto e = c.next())
        if (*e >= x) return *e;
    throw not_absorbing("witness set " + s.describe() + " has no element >= " + std::to_string(x));
}

// Smallest k > from with u_k / u_from >= bound.
std::size_t span_reaching(const ArithmeticSequence& seq, std::size_t from, const Integer& bound) {
    Integer prod(1);
    std::size_t k = from;
    while (prod < bound) {
        ++k;
        if (auto m = seq.max_index(); m && k > *m)
            throw precondition_error("sequence " + seq.spec() + " ends before the plan can continue");
        prod *= from_u64(seq.ratio(k));
    }
    return std::max(k, from + 1);
}

std::uint64_t pow2_floor(std::uint64_t i) {
    if (i >= 63) throw precondition_error("th1 schedule k >= 2^i overflows past 62 indices");
    return std::uint64_t(1) << i;
}

// Lower bound on k_{n_i} imposed by the previous selection.
std::size_t lower_k(Theorem tag, const std::optional<PlannedIndex>& prev, const ArithmeticSequence& seq,
                    std::uint64_t i, std::string& why) {
    std::size_t K = 0;
    if (!prev) {
        if (tag == Theorem::th1) {
            K = pow2_floor(i);
            why = "k >= 2^" + std::to_string(i);
        }
        return K;
    }
    if (tag == Theorem::th2) {
        Integer need = from_u64(prev->k) + (2 * from_u64(prev->n) + 1) * prev->v;
        if (mpz_sizeinbase(need.get_mpz_t(), 2) > 62) throw precondition_error("th2 schedule overflows");
        K = to_u64(need);
        why = "k >= " + std::to_string(prev->k) + " + (2*" + std::to_string(prev->n) + "+1)*" + prev->v.get_str();
        return K;
    }
    K = span_reaching(seq, prev->k, 8 * prev->v);
    why = "u_k/u_" + std::to_string(prev->k) + " >= 8*" + prev->v.get_str() + " first at k = " + std::to_string(K);
    if (tag == Theorem::th1) {
        std::size_t p2 = pow2_floor(i);
        if (p2 > K) K = p2;
        why += ", k >= 2^" + std::to_string(i);
    }
    return K;
}

PlannedIndex fill(Theorem tag, const ArithmeticSequence& seq, std::uint64_t i, std::uint64_t n, Decomposition d) {
    PlannedIndex p;
    p.i = i;
    p.n = n;
    p.k = d.k;
    p.v = std::move(d.v);
    p.q = seq.ratio(p.k + 1);
    if (tag == Theorem::th2) {
        p.digit = 1;
    } else {
        p.choice = digit_choice(p.q, p.v);
        p.digit = from_u64(p.choice.c);
    }
    return p;
}

} // namespace

WitnessPlan plan_witness(Theorem tag, const ArithmeticSequence& seq, const IntegerSequence& a,
                         const IdealDescriptor& ideal, std::uint64_t count, PlanOptions opt) {
    WitnessPlan plan;
    plan.theorem = tag;
    plan.seq = seq;
    plan.a = a;
    plan.ideal = ideal;
    plan.weights = WeightRule::harmonic();

    if (tag == Theorem::th2) {
        if (!seq.geometric_base()) throw precondition_error("th2 needs u_n = p^n, got " + seq.spec());
        Verdict link = weight_ideal_link(plan.weights, ideal);
        if (!link.member())
            throw unsupported_ideal("harmonic weights do not force summable sets into " + ideal.spec());
    } else {
        plan.witness_set = non_snt_witness(ideal);
        if (!plan.witness_set) throw unsupported_ideal(ideal.spec() + " is snt: no translation invariant witness set");
    }
    if (count == 0) return plan;

    KTrack track(seq, a, opt.scan_factor);
    std::optional<PlannedIndex> prev;
    for (std::uint64_t i = 1; i <= count + 1; ++i) {
        std::string why;
        std::size_t K = lower_k(tag, prev, seq, i, why);
        std::uint64_t n_lo = prev ? prev->n + 1 : 1;
        std::uint64_t n = track.first_reaching(K, n_lo);
        if (tag != Theorem::th2) {
            for (;;) {
                std::size_t k = track.k_at(n);
                if (plan.witness_set->contains(k)) break;
                K = next_in(*plan.witness_set, k);
                n = track.first_reaching(K, n);
            }
            if (!why.empty()) why += ", ";
            why += "k in " + plan.witness_set->describe();
        }
        PlannedIndex p = fill(tag, seq, i, n, track.at(n));
        std::ostringstream log;
        log << "i=" << i << " n=" << n << " k=" << p.k << " v=" << p.v.get_str();
        if (!why.empty()) log << ": " << why;
        if (i <= count) {
            plan.growth_log.push_back(log.str());
            plan.indices.push_back(p);
        } else {
            plan.growth_log.push_back(log.str() + " (lookahead)");
            plan.lookahead = p;
        }
        prev = std::move(p);
    }
    return plan;
}

namespace {

std::map<std::size_t, Integer> plan_digits(const WitnessPlan& plan) {
    std::map<std::size_t, Integer> d;
    for (auto& p : plan.indices) d[p.k + 1] = p.digit;
    return d;
}

std::size_t truncation_for(const WitnessPlan& plan, std::size_t idx) {
    if (idx + 1 < plan.indices.size()) return plan.indices[idx + 1].k;
    if (!plan.lookahead) throw precondition_error("plan has no lookahead index");
    return plan.lookahead->k;
}

RatInterval target_for(const WitnessPlan& plan, bool& strict) {
    if (plan.theorem == Theorem::th2) {
        Rational p(from_u64(*plan.seq.geometric_base()));
        Rational t = (p - 1) / (p * p);
        strict = true;
        return {t, 1 - t};
    }
    strict = false;
    return {Rational(1, 4), Rational(7, 8)};
}

bool inside_target(const IndexCheck& c) {
    if (c.wraps || c.interval.hi >= 1) return false;
    if (c.strict) return c.interval.lo > c.target.lo && c.interval.hi < c.target.hi;
    return c.interval.subset_of(c.target);
}

IndexCheck compute_check(const WitnessPlan& plan, const std::map<std::size_t, Integer>& digits, std::size_t idx) {
    const PlannedIndex& p = plan.indices[idx];
    std::size_t T = truncation_for(plan, idx);
    IndexCheck c;
    c.i = p.i;
    c.target = target_for(plan, c.strict);

    // {a x} = {v * sum_{s > k} c_s u_k / u_s}; digits at s <= k only add integers.
    Rational head(0);
    for (auto it = digits.upper_bound(p.k); it != digits.end() && it->first <= T; ++it)
        head += make_rational(it->second * p.v, plan.seq.span(p.k, it->first));
    head = frac(head);
    c.tail_width = detail::scaled_inv_span_upper(plan.seq, p.v, p.k, T);
    Rational hi = detail::round_up(head + c.tail_width);
    c.interval = RatInterval(head, hi);
    c.wraps = hi >= 1;
    c.pass = inside_target(c);
    return c;
}

constexpr std::size_t kNearTerms = 1024;

// Block (k_{i-1}, k_i] of sum_j r_j |sin(pi u_j x)| for idx = i-1 >= 1.
BlockCheck compute_block(const WitnessPlan& plan, std::size_t idx) {
    const PlannedIndex& prev = plan.indices[idx - 1];
    const PlannedIndex& cur = plan.indices[idx];
    const std::size_t T = truncation_for(plan, idx);
    const std::size_t s = cur.k + 1;
    const Rational pi = pi_upper();
    BlockCheck b;
    b.i = cur.i;
    b.first = prev.k + 1;
    b.last = cur.k;

    // {u_j x} <= c_s u_j / u_s + u_j / u_T for j in the block.
    auto y_upper = [&](std::size_t j, bool* exact) -> Rational {
        return detail::scaled_inv_span_upper(plan.seq, cur.digit, j, s, exact) +
               detail::scaled_inv_span_upper(plan.seq, Integer(1), j, T, exact);
    };

    Rational sum(0);
    std::size_t near_from = b.first;
    if (b.last + 1 - b.first > kNearTerms) {
        // u_j at least doubles along the block, so sum_{j <= J} u_j <= 2 u_J.
        std::size_t J = b.last - kNearTerms;
        near_from = J + 1;
        bool ex = true;
        sum += pi * plan.weights.at(b.first) * 2 * y_upper(J, &ex);
        b.exact = false;
    }
    for (std::size_t j = near_from; j <= b.last; ++j) {
        bool ex = true;
        Rational y = y_upper(j, &ex);
        if (!ex) b.exact = false;
        if (y > Rational(1, 2)) y = Rational(1, 2);
        sum += plan.weights.at(j) * pi * y;
    }
    b.sum_upper = detail::round_up(sum);
    // r_0 is undefined; a block starting at 1 uses r_1.
    b.bound = 2 * pi * plan.weights.at(std::max<std::size_t>(prev.k, 1));
    b.pass = b.sum_upper <= b.bound;
    return b;
}

SetDescriptor support_set(const WitnessPlan& plan) {
    if (plan.witness_set) return SetDescriptor::shifted(*plan.witness_set, 1);
    std::vector<std::uint64_t> e;
    for (auto& p : plan.indices) e.push_back(p.k + 1);
    return SetDescriptor::finite(e);
}

Verdict support_verdict(const WitnessPlan& plan, const DigitExpansion& e) {
    if (plan.theorem != Theorem::th2) return membership_by_support(e, plan.ideal);
    Verdict v;
    for (auto& p : plan.indices) {
        if (p.i >= 2 && p.k + 1 < p.i * p.i) {
            v.note = "k_{n_" + std::to_string(p.i) + "} = " + std::to_string(p.k) + " < i^2 - 1";
            return v;
        }
    }
    Verdict link = weight_ideal_link(plan.weights, plan.ideal);
    if (!link.member()) {
        v.note = "weight link failed: " + link.note;
        return v;
    }
    v.outcome = Outcome::member;
    v.certificate = "k_{n_i} >= k_{n_(i-1)} + 2 n_(i-1) + 1 gives k_{n_i} >= i^2 - 1, so sum of " +
                    plan.weights.spec() + " weights over the support converges; " + link.certificate;
    return v;
}

template <class F>
void for_each_index(std::size_t n, kernels::Exec exec, F f) {
    if (exec == kernels::Exec::serial) {
        for (std::size_t i = 0; i < n; ++i) f(i);
        return;
    }
    std::exception_ptr err;
#pragma omp parallel for schedule(dynamic, 1)
    for (std::size_t i = 0; i < n; ++i) {
        try {
            f(i);
        } catch (...) {
#pragma omp critical(witness_err)
            if (!err) err = std::current_exception();
        }
    }
    if (err) std::rethrow_exception(err);
}

DigitExpansion assemble(const WitnessPlan& plan) {
    std::size_t depth = plan.lookahead ? plan.lookahead->k : 0;
    DigitExpansion e = DigitExpansion::truncated(plan.seq, plan_digits(plan), depth);
    if (plan.witness_set) e = e.with_symbolic_support(support_set(plan));
    return e;
}

} // namespace

WitnessCertificate build_and_verify(const WitnessPlan& plan, VerifyOptions opt) {
    WitnessCertificate cert;
    cert.plan = plan;
    cert.expansion = assemble(plan);
    auto digits = plan_digits(plan);
    const std::size_t n = plan.indices.size();

    cert.checks.resize(n);
    for_each_index(n, opt.exec, [&](std::size_t i) { cert.checks[i] = compute_check(plan, digits, i); });

    if (plan.theorem != Theorem::th6 && n >= 2) {
        cert.blocks.resize(n - 1);
        for_each_index(n - 1, opt.exec, [&](std::size_t i) { cert.blocks[i] = compute_block(plan, i + 1); });
    }

    cert.support = support_set(plan);
    cert.support_verdict = support_verdict(plan, cert.expansion);
    cert.pass = cert.support_verdict.member() &&
                std::all_of(cert.checks.begin(), cert.checks.end(), [](auto& c) { return c.pass; }) &&
                std::all_of(cert.blocks.begin(), cert.blocks.end(), [](auto& b) { return b.pass; });
    return cert;
}

VerifyReport verify_certificate(const WitnessCertificate& cert, VerifyOptions opt) {
    VerifyReport rep;
    const WitnessPlan& plan = cert.plan;
    auto bad = [&](const std::string& m) { rep.mismatches.push_back(m); };
    auto at = [](std::uint64_t i) { return "index " + std::to_string(i) + ": "; };

    // Plan data against the sequences themselves.
    if (plan.theorem == Theorem::th2) {
        if (!plan.seq.geometric_base()) bad("th2 plan over a non-geometric sequence");
    } else if (!plan.witness_set) {
        bad("plan has no witness set");
    }
    if (!rep.mismatches.empty()) return rep;

    KTrack track(plan.seq, plan.a, PlanOptions{}.scan_factor);
    std::vector<const PlannedIndex*> all;
    for (auto& p : plan.indices) all.push_back(&p);
    if (plan.lookahead) all.push_back(&*plan.lookahead);
    if (!plan.indices.empty() && !plan.lookahead) bad("plan has no lookahead index");

    const PlannedIndex* prev = nullptr;
    for (std::size_t t = 0; t < all.size(); ++t) {
        const PlannedIndex& p = *all[t];
        if (p.i != t + 1) bad(at(p.i) + "out of sequence (expected " + std::to_string(t + 1) + ")");
        if (p.n < 1) {
            bad(at(p.i) + "n must be >= 1");
            continue;
        }
        Decomposition d = track.at(p.n);
        if (d.k != p.k || d.v != p.v) {
            bad(at(p.i) + "decomposition of a_" + std::to_string(p.n) + " is (" + std::to_string(d.k) + ", " +
                d.v.get_str() + ")");
            continue;
        }
        if (p.q != plan.seq.ratio(p.k + 1)) bad(at(p.i) + "q does not match q_{k+1}");
        if (plan.theorem == Theorem::th2) {
            if (p.digit != 1) bad(at(p.i) + "th2 digit must be 1");
        } else {
            DigitChoice ch = digit_choice(p.q, p.v);
            if (ch.l != p.choice.l || ch.l_prime != p.choice.l_prime || ch.m != p.choice.m || ch.c != p.choice.c)
                bad(at(p.i) + "digit parameters differ from the formula");
            if (p.digit != ch.c) bad(at(p.i) + "digit " + p.digit.get_str() + " != " + std::to_string(ch.c));
            if (!plan.witness_set->contains(p.k)) bad(at(p.i) + "k not in the witness set");
        }
        if (prev) {
            if (p.n <= prev->n) bad(at(p.i) + "indices not increasing");
            std::string why;
            std::size_t K = lower_k(plan.theorem, *prev, plan.seq, p.i, why);
            if (p.k < K) bad(at(p.i) + "violates " + why);
        } else if (plan.theorem == Theorem::th1 && p.k < 2) {
            bad(at(p.i) + "violates k >= 2^1");
        }
        prev = &p;
    }

    auto digits = plan_digits(plan);
    if (cert.expansion.nonzero_digits() != digits) {
        for (auto& [s, c] : digits) {
            auto it = cert.expansion.nonzero_digits().find(s);
            if (it == cert.expansion.nonzero_digits().end() || it->second != c)
                bad("digit at " + std::to_string(s) + " differs from the plan");
        }
        for (auto& [s, c] : cert.expansion.nonzero_digits())
            if (!digits.count(s)) bad("unplanned digit at " + std::to_string(s));
    }
    if (!(cert.expansion.sequence() == plan.seq)) bad("expansion sequence differs from the plan");
    if (!rep.mismatches.empty()) return rep;

    const std::size_t n = plan.indices.size();
    if (cert.checks.size() != n) {
        bad("expected " + std::to_string(n) + " checks, found " + std::to_string(cert.checks.size()));
        return rep;
    }
    std::vector<IndexCheck> fresh(n);
    for_each_index(n, opt.exec, [&](std::size_t i) { fresh[i] = compute_check(plan, digits, i); });
    bool all_pass = true;
    for (std::size_t i = 0; i < n; ++i) {
        const IndexCheck& s = cert.checks[i];
        const IndexCheck& f = fresh[i];
        if (s.i != f.i) bad("check " + std::to_string(i + 1) + " labelled " + std::to_string(s.i));
        if (!(s.target == f.target)) bad(at(f.i) + "target differs");
        if (!f.interval.subset_of(s.interval)) {
            bad(at(f.i) + "recomputed interval [" + to_wire(f.interval.lo) + ", " + to_wire(f.interval.hi) +
                "] escapes the stored one");
        } else if (!(f.interval == s.interval)) {
            rep.notes.push_back(at(f.i) + "recomputed interval is tighter than the stored one");
        }
        if (s.pass != f.pass) bad(at(f.i) + "stored pass flag disagrees with recomputation");
        if (s.pass && !inside_target(s)) bad(at(f.i) + "stored interval leaves the target");
        all_pass = all_pass && f.pass;
    }

    std::size_t nb = (plan.theorem != Theorem::th6 && n >= 2) ? n - 1 : 0;
    if (cert.blocks.size() != nb) {
        bad("expected " + std::to_string(nb) + " blocks, found " + std::to_string(cert.blocks.size()));
        return rep;
    }
    std::vector<BlockCheck> fb(nb);
    for_each_index(nb, opt.exec, [&](std::size_t i) { fb[i] = compute_block(plan, i + 1); });
    for (std::size_t i = 0; i < nb; ++i) {
        const BlockCheck& s = cert.blocks[i];
        const BlockCheck& f = fb[i];
        std::string tag = "block " + std::to_string(f.i) + ": ";
        if (s.first != f.first || s.last != f.last) bad(tag + "range differs");
        if (s.bound != f.bound) bad(tag + "bound differs");
        if (f.sum_upper > s.sum_upper) bad(tag + "recomputed sum exceeds the stored one");
        else if (f.sum_upper < s.sum_upper) rep.notes.push_back(tag + "recomputed sum is tighter");
        if (s.pass != f.pass) bad(tag + "stored pass flag disagrees with recomputation");
        all_pass = all_pass && f.pass;
    }

    Verdict sv = support_verdict(plan, assemble(plan));
    if (sv.outcome != cert.support_verdict.outcome) bad("support verdict differs: " + to_string(sv.outcome));
    all_pass = all_pass && sv.member();
    if (cert.pass != all_pass) bad("stored overall pass flag disagrees with recomputation");

    rep.pass = rep.mismatches.empty() && all_pass;
    return rep;
}

} // namespace thinset
