#include "thinset/ideal.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace thinset {

std::string to_string(Outcome o) {
    switch (o) {
    case Outcome::member: return "Member";
    case Outcome::not_member: return "NotMember";
    case Outcome::inconclusive: return "Inconclusive";
    }
    return {};
}

Outcome outcome_from_string(std::string_view s) {
    if (s == "Member") return Outcome::member;
    if (s == "NotMember") return Outcome::not_member;
    if (s == "Inconclusive") return Outcome::inconclusive;
    throw schema_error("unknown verdict: " + std::string(s));
}

IdealDescriptor IdealDescriptor::summable(Rational exponent) {
    exponent.canonicalize();
    if (exponent <= 0 || exponent > 1) throw domain_error("summable ideal exponent must lie in (0, 1]");
    return IdealDescriptor(Kind::summable, std::move(exponent));
}

IdealDescriptor IdealDescriptor::parse(std::string_view spec) {
    if (spec == "fin") return fin();
    if (spec == "density") return density();
    if (spec == "summable") return summable();
    if (spec.starts_with("summable:")) return summable(parse_rational(spec.substr(9)));
    throw schema_error("unknown ideal spec: '" + std::string(spec) + "'");
}

std::string IdealDescriptor::spec() const {
    switch (kind_) {
    case Kind::fin: return "fin";
    case Kind::density: return "density";
    case Kind::summable: return exponent_ == 1 ? "summable" : "summable:" + exponent_.get_str();
    }
    return {};
}

namespace {

/// A set that agrees, up to finitely many elements, with a union of residue
/// classes modulo `period`.
struct Periodic {
    std::uint64_t period = 1;
    std::vector<bool> residues{false};
};

constexpr std::uint64_t kMaxPeriod = 1u << 20;

Periodic widen(const Periodic& p, std::uint64_t period) {
    Periodic out{period, std::vector<bool>(period, false)};
    for (std::uint64_t r = 0; r < period; ++r) out.residues[r] = p.residues[r % p.period];
    return out;
}

std::optional<Periodic> periodic_form(const SetDescriptor& s);

/// Density-zero pieces are absorbed as the empty residue pattern.
std::optional<Periodic> periodic_or_null(const SetDescriptor& s) {
    if (auto p = periodic_form(s)) return p;
    if (auto d = exact_density(s); d && *d == 0) return Periodic{};
    return std::nullopt;
}

std::optional<Periodic> periodic_form(const SetDescriptor& s) {
    if (auto p = s.as_progression()) {
        if (p->step > kMaxPeriod) return std::nullopt;
        Periodic out{p->step, std::vector<bool>(p->step, false)};
        out.residues[p->start % p->step] = true;
        return out;
    }
    if (auto sh = s.as_shifted()) {
        auto inner = periodic_form(sh->inner);
        if (!inner) return std::nullopt;
        auto L = static_cast<std::int64_t>(inner->period);
        Periodic out{inner->period, std::vector<bool>(inner->period, false)};
        for (std::int64_t r = 0; r < L; ++r)
            if (inner->residues[r]) out.residues[((r + sh->offset) % L + L) % L] = true;
        return out;
    }
    if (auto u = s.as_union()) {
        Periodic acc;
        bool any_periodic = false;
        for (const auto& part : u->parts) {
            auto p = periodic_or_null(part);
            if (!p) return std::nullopt;
            any_periodic = any_periodic || p->period > 1 || p->residues[0];
            std::uint64_t L = std::lcm(acc.period, p->period);
            if (L > kMaxPeriod) return std::nullopt;
            auto a = widen(acc, L), b = widen(*p, L);
            for (std::uint64_t r = 0; r < L; ++r) a.residues[r] = a.residues[r] || b.residues[r];
            acc = std::move(a);
        }
        if (!any_periodic) return std::nullopt;
        return acc;
    }
    return std::nullopt;
}

/// A certified positive lower bound on the lower density.
std::optional<Rational> lower_density_bound(const SetDescriptor& s) {
    if (auto d = exact_density(s); d && *d > 0) return d;
    if (auto e = s.as_enumerated(); e && e->growth.kind == Growth::Kind::linear && e->growth.rate > 0)
        return Rational(1, static_cast<unsigned long>(e->growth.rate));
    if (auto sh = s.as_shifted()) return lower_density_bound(sh->inner);
    if (auto u = s.as_union()) {
        std::optional<Rational> best;
        for (const auto& p : u->parts)
            if (auto b = lower_density_bound(p); b && (!best || *b > *best)) best = b;
        return best;
    }
    return std::nullopt;
}

std::optional<std::uint64_t> poly_degree(const EnumeratedSet& e) {
    if (!e.formula.starts_with("poly:")) return std::nullopt;
    try {
        return std::stoull(e.formula.substr(5));
    } catch (...) {
        return std::nullopt;
    }
}

/// Whether sum_{n in S} 1/n^s converges, when a comparison certificate exists.
std::optional<bool> summable_certificate(const SetDescriptor& s, const Rational& exponent, std::string& why) {
    if (s.as_finite()) {
        why = "finite set";
        return true;
    }
    if (s.as_progression()) {
        why = "progression under 1/n^s, s <= 1: comparison with the harmonic series";
        return false;
    }
    if (s.as_geometric()) {
        why = "geometric set: sum of b^(-ks) converges";
        return true;
    }
    if (auto sh = s.as_shifted()) {
        auto r = summable_certificate(sh->inner, exponent, why);
        if (r) why = "shift of " + why + " (limit comparison)";
        return r;
    }
    if (auto u = s.as_union()) {
        bool all = true;
        for (const auto& p : u->parts) {
            std::string sub;
            auto r = summable_certificate(p, exponent, sub);
            if (r == false) {
                why = "union containing a divergent part: " + sub;
                return false;
            }
            if (!r) all = false;
        }
        if (all) {
            why = "finite union of convergent parts";
            return true;
        }
        return std::nullopt;
    }
    if (auto e = s.as_enumerated()) {
        if (auto p = poly_degree(*e)) {
            bool conv = Rational(static_cast<unsigned long>(*p)) * exponent > 1;
            why = "k^" + std::to_string(*p) + " series: p*s " + (conv ? "> 1" : "<= 1");
            return conv;
        }
        if (e->growth.kind == Growth::Kind::linear) {
            why = "linear growth certificate: comparison with the harmonic series";
            return false;
        }
    }
    return std::nullopt;
}

std::vector<std::uint64_t> checkpoints(std::uint64_t n) {
    std::vector<std::uint64_t> cps;
    for (std::uint64_t c = 10; c < n; c *= 10) cps.push_back(c);
    cps.push_back(n);
    return cps;
}

std::vector<TracePoint> density_trace(const SetDescriptor& s, std::uint64_t cutoff) {
    std::vector<TracePoint> trace;
    auto cps = checkpoints(cutoff);
    auto c = s.cursor();
    std::uint64_t count = 0;
    auto v = c.next();
    for (auto cp : cps) {
        while (v && *v <= cp) {
            ++count;
            v = c.next();
        }
        trace.push_back({cp, static_cast<double>(count) / static_cast<double>(cp)});
    }
    return trace;
}

std::vector<TracePoint> partial_sum_trace(const SetDescriptor& s, const Rational& exponent, std::uint64_t cutoff) {
    std::vector<TracePoint> trace;
    const double e = exponent.get_d();
    double sum = 0;
    auto c = s.cursor();
    auto v = c.next();
    for (auto cp : checkpoints(cutoff)) {
        while (v && *v <= cp) {
            sum += std::pow(static_cast<double>(*v), -e);
            v = c.next();
        }
        trace.push_back({cp, sum});
    }
    return trace;
}

} // namespace

Rational prefix_density(const SetDescriptor& s, std::uint64_t n) {
    if (n < 1) throw domain_error("prefix_density needs n >= 1");
    std::uint64_t count = 0;
    auto c = s.cursor();
    bool exhausted = true;
    while (auto v = c.next()) {
        if (*v > n) {
            exhausted = false;
            break;
        }
        ++count;
    }
    if (exhausted && s.as_enumerated())
        throw exhaustion_error("enumerated set exhausted before " + std::to_string(n) + " after " +
                                   std::to_string(count) + " elements",
                               count);
    return make_rational(from_u64(count), from_u64(n));
}

std::optional<Rational> exact_density(const SetDescriptor& s) {
    if (s.as_finite() || s.as_geometric()) return Rational(0);
    if (auto p = s.as_progression()) return Rational(1, static_cast<unsigned long>(p->step));
    if (auto sh = s.as_shifted()) return exact_density(sh->inner);
    if (auto u = s.as_union()) {
        bool all_zero = true;
        for (const auto& part : u->parts) {
            auto d = exact_density(part);
            if (!d) return std::nullopt;
            if (*d != 0) all_zero = false;
        }
        if (all_zero) return Rational(0);
        auto p = periodic_form(s);
        if (!p) return std::nullopt;
        auto hits = static_cast<unsigned long>(std::count(p->residues.begin(), p->residues.end(), true));
        return make_rational(Integer(hits), from_u64(p->period));
    }
    if (auto e = s.as_enumerated(); e && e->growth.kind == Growth::Kind::superlinear) return Rational(0);
    return std::nullopt;
}

DensityEstimate estimate_density(const SetDescriptor& s, std::uint64_t n) {
    if (n < 1) throw domain_error("estimate_density needs n >= 1");
    DensityEstimate est;
    est.cutoff = n;
    est.exact = exact_density(s);
    const std::uint64_t window_start = std::max<std::uint64_t>(1, n / 2);
    std::uint64_t count = 0;
    auto c = s.cursor();
    auto v = c.next();
    bool first = true;
    for (std::uint64_t m = 1; m <= n; ++m) {
        while (v && *v <= m) {
            ++count;
            v = c.next();
        }
        if (m < window_start) continue;
        Rational r = make_rational(from_u64(count), from_u64(m));
        if (first || r < est.lower) est.lower = r;
        if (first || r > est.upper) est.upper = r;
        first = false;
    }
    return est;
}

Verdict ideal_member(const IdealDescriptor& ideal, const SetDescriptor& s, std::uint64_t cutoff) {
    Verdict v;
    v.cutoff = cutoff;
    switch (ideal.kind()) {
    case IdealDescriptor::Kind::fin: {
        auto fin = s.provably_finite();
        if (fin == true) {
            v.outcome = Outcome::member;
            v.certificate = "finite descriptor";
        } else if (fin == false) {
            v.outcome = Outcome::not_member;
            v.certificate = "infinite descriptor";
        } else {
            v.note = "finiteness not decidable from descriptor; counts are evidence only";
            auto cps = checkpoints(cutoff);
            for (auto cp : cps) v.trace.push_back({cp, static_cast<double>(s.count_upto(cp))});
        }
        return v;
    }
    case IdealDescriptor::Kind::density: {
        auto d = exact_density(s);
        if (d && *d == 0) {
            v.outcome = Outcome::member;
            v.certificate = "exact density 0";
        } else if (d) {
            v.outcome = Outcome::not_member;
            v.certificate = "exact density " + d->get_str();
        } else if (auto lb = lower_density_bound(s)) {
            v.outcome = Outcome::not_member;
            v.certificate = "lower density >= " + lb->get_str();
        } else {
            v.note = "density not certified; prefix densities are evidence only";
            v.trace = density_trace(s, cutoff);
        }
        return v;
    }
    case IdealDescriptor::Kind::summable: {
        std::string why;
        auto r = summable_certificate(s, ideal.exponent(), why);
        if (r == true) {
            v.outcome = Outcome::member;
            v.certificate = "convergent: " + why;
        } else if (r == false) {
            v.outcome = Outcome::not_member;
            v.certificate = "divergent: " + why;
        } else {
            v.note = "no comparison certificate; partial sums are evidence only";
            v.trace = partial_sum_trace(s, ideal.exponent(), cutoff);
        }
        return v;
    }
    }
    return v;
}

SetDescriptor shift_set(const SetDescriptor& s, std::int64_t t) { return SetDescriptor::shifted(s, t); }

Verdict translation_invariant_in(const IdealDescriptor& ideal, const SetDescriptor& s, std::int64_t shift_range,
                                 std::uint64_t cutoff) {
    Verdict base = ideal_member(ideal, s, cutoff);
    if (base.not_member())
        throw precondition_error("translation invariance needs a member of " + ideal.spec() + "; " + s.describe() +
                                 " is not (" + base.certificate + ")");
    Verdict v;
    v.cutoff = cutoff;
    if (base.member()) {
        v.outcome = Outcome::member;
        switch (ideal.kind()) {
        case IdealDescriptor::Kind::fin: v.certificate = "shifts of finite sets are finite"; break;
        case IdealDescriptor::Kind::density: v.certificate = "natural density is shift invariant"; break;
        case IdealDescriptor::Kind::summable:
            v.certificate = "limit comparison: (m+t)^s/m^s -> 1, so every shift keeps the series convergent";
            break;
        }
        return v;
    }
    std::uint64_t inconclusive = 0;
    for (std::int64_t t = -shift_range; t <= shift_range; ++t) {
        Verdict shifted = ideal_member(ideal, shift_set(s, t), cutoff);
        if (shifted.not_member()) {
            v.outcome = Outcome::not_member;
            v.certificate = "shift by " + std::to_string(t) + " leaves the ideal (" + shifted.certificate + ")";
            return v;
        }
        if (shifted.inconclusive()) ++inconclusive;
        v.trace.push_back({static_cast<std::uint64_t>(t + shift_range), shifted.member() ? 1.0 : 0.5});
    }
    v.note = "checked shifts |t| <= " + std::to_string(shift_range) + "; " + std::to_string(inconclusive) +
             " inconclusive, none excluded (evidence only)";
    return v;
}

std::optional<SetDescriptor> non_snt_witness(const IdealDescriptor& ideal) {
    if (ideal.kind() == IdealDescriptor::Kind::fin) return std::nullopt;
    return SetDescriptor::geometric(2);
}

} // namespace thinset
