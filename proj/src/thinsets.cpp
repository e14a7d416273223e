#include "thinset/thinsets.hpp"

#include <algorithm>

namespace thinset {

namespace {

std::vector<std::uint64_t> trace_points(std::uint64_t depth) {
    std::vector<std::uint64_t> cps;
    for (std::uint64_t c = 10; c < depth; c *= 10) cps.push_back(c);
    if (depth > 0) cps.push_back(depth);
    return cps;
}

struct Structural {
    Outcome outcome = Outcome::inconclusive;
    std::string certificate;
    std::uint64_t vanish_from = 0;
};

/// Exact-rational certificates for multiplicative chains a_{n+1} = a_n * step.
Structural structural(const IntegerSequence& a, const CircleRational& x) {
    Structural s;
    if (x.num() == 0) {
        s.outcome = Outcome::member;
        s.certificate = "x = 0";
        s.vanish_from = 1;
        return s;
    }
    const Integer& D = x.den();
    auto ev = a.eventually_divisible_by(D);
    if (ev == true) {
        s.vanish_from = a.first_divisible_index(D);
        s.outcome = Outcome::member;
        s.certificate = "terminating: " + D.get_str() + " divides a_n for n >= " + std::to_string(s.vanish_from) +
                        ", so ||a_n x|| = 0 from there on";
    } else if (ev == false) {
        s.outcome = Outcome::not_member;
        s.certificate = "periodic obstruction: the denominator " + D.get_str() +
                        " never divides a_n, so ||a_n x|| >= 1/" + D.get_str() +
                        " for every n and the exceptional set at that level is all of N";
    }
    return s;
}

struct Cycle {
    std::uint64_t preperiod = 0;  // cycle starts at n = preperiod + 1
    std::uint64_t period = 0;
};

/// Brent cycle search on s_{n+1} = b s_n mod D, bounded by `budget` steps.
std::optional<Cycle> find_cycle(const IntegerSequence& a, const CircleRational& x, std::uint64_t budget) {
    auto b = a.base();
    if (!b) return std::nullopt;
    const Integer& D = x.den();
    auto f = [&](Integer& s) {
        mpz_mul_ui(s.get_mpz_t(), s.get_mpz_t(), *b);
        mpz_mod(s.get_mpz_t(), s.get_mpz_t(), D.get_mpz_t());
    };
    Integer s1 = a.residue(1, D) * x.num();
    mpz_mod(s1.get_mpz_t(), s1.get_mpz_t(), D.get_mpz_t());
    std::uint64_t power = 1, lam = 1, steps = 0;
    Integer tortoise = s1, hare = s1;
    f(hare);
    while (tortoise != hare) {
        if (++steps > budget) return std::nullopt;
        if (power == lam) {
            tortoise = hare;
            power *= 2;
            lam = 0;
        }
        f(hare);
        ++lam;
    }
    Cycle c;
    c.period = lam;
    tortoise = s1;
    hare = s1;
    for (std::uint64_t i = 0; i < lam; ++i) f(hare);
    while (tortoise != hare) {
        if (++steps > 2 * budget) return std::nullopt;
        f(tortoise);
        f(hare);
        ++c.preperiod;
    }
    return c;
}

struct MaskScan {
    std::vector<std::uint32_t> masks;
    bool exact = false;
};

MaskScan scan_masks(const ScanSubject& x, const IntegerSequence& a, const std::vector<Rational>& eps,
                    std::uint64_t depth, kernels::Exec exec) {
    MaskScan out;
    if (auto ex = x.exact()) {
        out.masks = kernels::exceptional_masks(a, *ex, eps, depth, exec);
        out.exact = true;
        return out;
    }
    const DigitExpansion& e = *x.expansion();
    const std::size_t K = e.depth();
    Integer M = e.sequence().term(K);
    const CircleRational head = reconstruct(e, K);
    Integer N = head.num() * (M / head.den());
    auto enc = kernels::enclosed_masks(a, N, M, eps, depth, exec);
    if (enc.first_undecided != 0) {
        Rational finest = *std::min_element(eps.begin(), eps.end());
        Integer need = a.term(enc.first_undecided) * finest.get_den() * 8;
        auto k = e.sequence().first_term_at_least(need, K);
        std::size_t required = k ? *k : K + 1;
        throw insufficient_digits("index " + std::to_string(enc.first_undecided) + " is undecided at truncation depth " +
                                      std::to_string(K) + "; digits to depth >= " + std::to_string(required) +
                                      " are needed",
                                  required);
    }
    out.masks = std::move(enc.masks);
    return out;
}

ExceptionalStats stats_for(const std::vector<std::uint32_t>& masks, std::size_t bit, const Rational& eps) {
    ExceptionalStats st;
    st.eps = eps;
    const std::uint64_t depth = masks.size();
    auto cps = trace_points(depth);
    std::size_t next = 0;
    for (std::uint64_t n = 1; n <= depth; ++n) {
        if (masks[n - 1] & (1u << bit)) {
            ++st.count;
            st.last_index = n;
            st.indices.push_back(n);
        }
        if (next < cps.size() && n == cps[next]) {
            st.prefix_density.push_back({n, static_cast<double>(st.count) / static_cast<double>(n)});
            ++next;
        }
    }
    return st;
}

} // namespace

std::optional<CircleRational> ScanSubject::exact() const {
    if (auto x = std::get_if<CircleRational>(&value_)) return *x;
    const auto& e = std::get<DigitExpansion>(value_);
    if (e.is_finitely_supported()) return reconstruct(e);
    return std::nullopt;
}

std::string ScanSubject::describe() const {
    if (auto x = std::get_if<CircleRational>(&value_)) return to_wire(x->value());
    const auto& e = std::get<DigitExpansion>(value_);
    return std::string(e.is_finitely_supported() ? "finitely supported" : "truncated") + " expansion over " +
           e.sequence().spec() + ", depth " + std::to_string(e.depth()) + ", " +
           std::to_string(e.nonzero_digits().size()) + " nonzero digits";
}

std::vector<Rational> default_eps_grid() { return {Rational(1, 4), Rational(1, 8), Rational(1, 16), Rational(1, 64)}; }

ConvergenceReport classical_convergence(const ScanSubject& x, const IntegerSequence& a, std::uint64_t depth,
                                        std::vector<Rational> eps, ScanOptions opt) {
    if (depth < 1) throw domain_error("depth must be >= 1");
    if (eps.empty()) throw domain_error("empty eps grid");
    for (auto& e : eps) e.canonicalize();
    std::sort(eps.begin(), eps.end(), [](const Rational& l, const Rational& r) { return l > r; });
    eps.erase(std::unique(eps.begin(), eps.end()), eps.end());

    ConvergenceReport rep;
    rep.subject = x.describe();
    rep.sequence = a.spec();
    rep.depth = depth;
    MaskScan scan = scan_masks(x, a, eps, depth, opt.exec);

    // Larger eps => smaller exceptional set.
    for (std::uint64_t n = 0; n < depth; ++n)
        for (std::size_t j = 1; j < eps.size(); ++j)
            if ((scan.masks[n] >> (j - 1) & 1u) && !(scan.masks[n] >> j & 1u))
                throw error("exceptional sets not nested at n = " + std::to_string(n + 1));

    for (std::size_t j = 0; j < eps.size(); ++j) rep.per_eps.push_back(stats_for(scan.masks, j, eps[j]));

    rep.verdict.cutoff = depth;
    rep.verdict.trace = rep.per_eps.back().prefix_density;
    if (scan.exact) {
        CircleRational ex = *x.exact();
        Structural s = structural(a, ex);
        rep.verdict.outcome = s.outcome;
        rep.verdict.certificate = s.certificate;
        if (auto cyc = find_cycle(a, ex, depth); cyc && cyc->preperiod + cyc->period <= depth) {
            for (std::size_t j = 0; j < eps.size(); ++j) {
                std::uint64_t hits = 0;
                for (std::uint64_t n = cyc->preperiod; n < cyc->preperiod + cyc->period; ++n)
                    hits += (scan.masks[n] >> j) & 1u;
                rep.per_eps[j].periodic_density = make_rational(from_u64(hits), from_u64(cyc->period));
            }
            rep.verdict.note = "residues enter a cycle of length " + std::to_string(cyc->period) + " after " +
                               std::to_string(cyc->preperiod) + " steps";
        }
        if (s.outcome == Outcome::inconclusive) rep.verdict.note += "no structural certificate for this sequence";
    } else {
        const auto& last = rep.per_eps.front();
        rep.verdict.outcome = Outcome::inconclusive;
        rep.verdict.note = "truncated expansion: exceptional indices at eps = " + last.eps.get_str() +
                           (last.count ? " recur up to n = " + std::to_string(last.last_index) : " absent") +
                           " (evidence only)";
    }
    return rep;
}

Verdict membership_by_support(const DigitExpansion& e, const IdealDescriptor& ideal) {
    Verdict v;
    SetDescriptor supp = support(e);
    Verdict in = ideal_member(ideal, supp);
    if (!in.member()) {
        v.note = "support rule inapplicable: supp = " + supp.describe() + " is " + to_string(in.outcome) + " of " +
                 ideal.spec();
        return v;
    }
    Verdict inv = translation_invariant_in(ideal, supp, 8);
    if (!inv.member()) {
        v.note = "support rule inapplicable: translation invariance not certified (" + inv.note + ")";
        return v;
    }
    v.outcome = Outcome::member;
    v.certificate = "support rule: supp = " + supp.describe() + " is in " + ideal.spec() + " (" + in.certificate +
                    ") and " + ideal.spec() + "-translation invariant (" + inv.certificate + ")";
    return v;
}

Verdict ideal_convergence(const ScanSubject& x, const IntegerSequence& a, const IdealDescriptor& ideal,
                          std::uint64_t depth, const Rational& eps, ScanOptions opt) {
    if (depth < 1) throw domain_error("depth must be >= 1");
    Verdict v;
    v.cutoff = depth;
    if (auto ex = x.exact(); ex && ex->num() == 0) {
        v.outcome = Outcome::member;
        v.certificate = "x = 0";
        return v;
    }
    std::optional<Verdict> by_support;
    if (const DigitExpansion* e = x.expansion(); e && a.arithmetic() && *a.arithmetic() == e->sequence())
        by_support = membership_by_support(*e, ideal);

    MaskScan scan = scan_masks(x, a, {eps}, depth, opt.exec);
    ExceptionalStats st = stats_for(scan.masks, 0, eps);
    v.trace = st.prefix_density;
    std::string summary = "|E| = " + std::to_string(st.count) + " up to " + std::to_string(depth) + " at eps = " +
                          eps.get_str();

    if (by_support && by_support->member()) {
        v.outcome = Outcome::member;
        v.certificate = by_support->certificate;
        v.note = summary;
        return v;
    }
    if (scan.exact) {
        Structural s = structural(a, *x.exact());
        v.outcome = s.outcome;
        v.certificate = s.certificate;
        if (s.outcome == Outcome::not_member) v.certificate += "; N is in no proper ideal, so " + ideal.spec() + " fails";
        v.note = summary;
        return v;
    }
    v.note = summary + "; no certificate for a truncated expansion (evidence only)";
    return v;
}

std::string to_string(Growth3 g) {
    switch (g) {
    case Growth3::bounded_evidence: return "bounded-evidence";
    case Growth3::divergent_evidence: return "divergent-evidence";
    case Growth3::inconclusive: return "inconclusive";
    }
    return {};
}

Growth3 growth_from_string(std::string_view s) {
    if (s == "bounded-evidence") return Growth3::bounded_evidence;
    if (s == "divergent-evidence") return Growth3::divergent_evidence;
    if (s == "inconclusive") return Growth3::inconclusive;
    throw schema_error("unknown growth classification: " + std::string(s));
}

namespace {

// For x built over (u_n) with a = u_n: between support points s' < s the
// increments of sum r_j ||u_j x|| over j in (s'-1, s-1] should stay below
// 2 (22/7) r_{s'-1}. If every computed block does, and the r-sum over the
// symbolic support converges, the series is majorized by a convergent one.
std::optional<std::string> block_majorant(const ScanSubject& x, const IntegerSequence& a, const WeightRule& r,
                                          const std::vector<Rational>& upper_prefix) {
    const DigitExpansion* e = x.expansion();
    if (!e || upper_prefix.empty() || !e->symbolic_support()) return std::nullopt;
    if (!a.arithmetic() || !(*a.arithmetic() == e->sequence())) return std::nullopt;
    const SetDescriptor& S = *e->symbolic_support();
    std::string summable;
    switch (r.kind()) {
    case WeightRule::Kind::constant:
        if (S.provably_finite() != true) return std::nullopt;
        summable = "finite support";
        break;
    case WeightRule::Kind::harmonic: {
        Verdict v = ideal_member(IdealDescriptor::summable(), S);
        if (!v.member()) return std::nullopt;
        summable = v.certificate;
        break;
    }
    case WeightRule::Kind::inverse_square: summable = "sum 1/n^2 converges"; break;
    case WeightRule::Kind::explicit_list: return std::nullopt;
    }
    const std::uint64_t depth = upper_prefix.size() - 1;
    std::vector<std::uint64_t> ks;
    for (auto& [s, c] : e->nonzero_digits())
        if (s >= 2 && s - 1 <= depth) ks.push_back(s - 1);
    if (ks.size() < 2) return std::nullopt;
    for (std::size_t i = 1; i < ks.size(); ++i) {
        Rational inc = pi_upper() * (upper_prefix[ks[i]] - upper_prefix[ks[i - 1]]);
        if (inc > 2 * pi_upper() * r.at(ks[i - 1])) return std::nullopt;
    }
    return "block increments over " + std::to_string(ks.size() - 1) + " support gaps stay below 2(22/7) r_{k_(i-1)}; " +
           summable + " (evidence only)";
}

} // namespace

SummabilityReport nset_partial_sums(const ScanSubject& x, const IntegerSequence& a, const WeightRule& r,
                                    std::uint64_t depth, NsetOptions opt) {
    if (depth < 1) throw domain_error("depth must be >= 1");
    SummabilityReport rep;
    rep.weights = r.spec();
    rep.checkpoints = trace_points(depth);
    if (opt.ramp_at <= depth) rep.checkpoints.push_back(opt.ramp_at);
    std::sort(rep.checkpoints.begin(), rep.checkpoints.end());
    rep.checkpoints.erase(std::unique(rep.checkpoints.begin(), rep.checkpoints.end()), rep.checkpoints.end());

    std::optional<CircleRational> ex = x.exact();
    std::vector<Rational> upper_prefix;  // truncated subjects only: sum_{n <= m} r_n hi_n
    if (ex) {
        for (auto& s : kernels::weighted_norm_sums(a, *ex, r, rep.checkpoints, opt.exec))
            rep.norm_sums.push_back(RatInterval::point(s));
    } else {
        const DigitExpansion& e = *x.expansion();
        Rational lo = 0, hi = 0;
        std::size_t next = 0;
        upper_prefix.push_back(hi);
        for (std::uint64_t n = 1; n <= depth; ++n) {
            FracEnclosure enc = frac_scaled(a.term(n), e, e.depth());
            if (enc.span.width() >= 1)
                throw insufficient_digits("a_" + std::to_string(n) + " x is unconstrained at truncation depth " +
                                              std::to_string(e.depth()),
                                          e.depth() + 1);
            RatInterval nr = enc.norm_range();
            Rational w = r.at(n);
            lo += w * nr.lo;
            hi += w * nr.hi;
            upper_prefix.push_back(hi);
            if (n == rep.checkpoints[next]) {
                rep.norm_sums.emplace_back(lo, hi);
                ++next;
            }
        }
    }
    for (const auto& s : rep.norm_sums) {
        rep.lower_envelope.push_back(2 * s.lo);
        rep.upper_envelope.push_back(pi_upper() * s.hi);
    }

    Structural st;
    if (ex) st = structural(a, *ex);
    if (st.outcome == Outcome::member) {
        rep.growth = Growth3::bounded_evidence;
        rep.reason = st.certificate;
    } else if (auto why = block_majorant(x, a, r, upper_prefix)) {
        rep.growth = Growth3::bounded_evidence;
        rep.reason = *why;
    } else if (opt.ramp_at <= depth) {
        auto it = std::find(rep.checkpoints.begin(), rep.checkpoints.end(), opt.ramp_at);
        const Rational& at_ramp = rep.norm_sums[static_cast<std::size_t>(it - rep.checkpoints.begin())].lo;
        if (at_ramp >= opt.ramp_value) {
            rep.growth = Growth3::divergent_evidence;
            rep.reason = "S_" + std::to_string(opt.ramp_at) + " = " + std::to_string(at_ramp.get_d()) +
                         " >= " + opt.ramp_value.get_str() + " (evidence only)";
        }
    }
    if (rep.growth == Growth3::inconclusive && rep.reason.empty()) rep.reason = "no certificate and below the ramp";
    return rep;
}

Verdict weight_ideal_link(const WeightRule& r, const IdealDescriptor& ideal) {
    using K = IdealDescriptor::Kind;
    Verdict v;
    auto yes = [&](std::string why) {
        v.outcome = Outcome::member;
        v.certificate = std::move(why);
        return v;
    };
    auto no = [&](std::string why, const SetDescriptor& counter) {
        v.outcome = Outcome::not_member;
        v.certificate = std::move(why);
        v.note = "counterexample: " + counter.describe();
        return v;
    };
    switch (r.kind()) {
    case WeightRule::Kind::constant:
        return yes("finite weighted sums with r_n = 1 force A finite, and finite sets lie in every free ideal");
    case WeightRule::Kind::harmonic:
        if (ideal.kind() == K::density) return yes("sum_{n in A} 1/n < inf forces d(A) = 0");
        if (ideal.kind() == K::summable && ideal.exponent() == 1) return yes("identical to the ideal's definition");
        if (ideal.kind() == K::summable && ideal.exponent() <= Rational(1, 2))
            return no("sum 1/k^2 converges but sum 1/k^(2s) diverges for s <= 1/2", SetDescriptor::powers_of_k(2));
        if (ideal.kind() == K::fin) return no("sum 1/2^k converges on an infinite set", SetDescriptor::geometric(2));
        break;
    case WeightRule::Kind::inverse_square:
        return no("sum 1/n^2 converges on N itself, which lies in no proper ideal", SetDescriptor::naturals());
    case WeightRule::Kind::explicit_list: break;
    }
    v.note = "pair not in the certified table";
    return v;
}

} // namespace thinset
