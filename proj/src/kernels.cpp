#include "thinset/kernels.hpp"

#include <omp.h>

#include <algorithm>

namespace thinset::kernels {

namespace {

/// Walks s_n = a_n * mult mod m for n in [first, last], calling f(n, s_n).
template <class F>
void walk(const IntegerSequence& a, const Integer& mult, const Integer& m, std::uint64_t first, std::uint64_t last,
          F&& f) {
    if (first > last) return;
    // Dyadic moduli (truncations over 2^n) reduce with a mask.
    const std::size_t bits = mpz_sizeinbase(m.get_mpz_t(), 2);
    const bool pow2 = mpz_scan1(m.get_mpz_t(), 0) == bits - 1;
    auto reduce = [&](Integer& s) {
        if (pow2)
            mpz_fdiv_r_2exp(s.get_mpz_t(), s.get_mpz_t(), bits - 1);
        else
            mpz_mod(s.get_mpz_t(), s.get_mpz_t(), m.get_mpz_t());
    };
    Integer s = a.residue(first, m) * mult;
    reduce(s);
    for (std::uint64_t n = first;; ++n) {
        f(n, s);
        if (n == last) break;
        mpz_mul_ui(s.get_mpz_t(), s.get_mpz_t(), a.step(n + 1));
        reduce(s);
    }
}

struct Thresholds {
    // ||s/D|| >= p/q  <=>  q * min(s, D - s) >= p * D
    std::vector<Integer> rhs;
    std::vector<Integer> scale_big;
};

Thresholds make_thresholds(const std::vector<Rational>& eps, const Integer& D) {
    if (eps.size() > 32) throw domain_error("at most 32 thresholds per scan");
    Thresholds t;
    for (const auto& e : eps) {
        if (e <= 0) throw domain_error("thresholds must be positive");
        t.rhs.push_back(e.get_num() * D);
        t.scale_big.push_back(e.get_den());
    }
    return t;
}

std::uint32_t classify(const Integer& s, const Integer& D, const Thresholds& t, Integer& scratch, Integer& other) {
    other = D - s;
    const Integer& m = (other < s) ? other : s;
    std::uint32_t mask = 0;
    for (std::size_t j = 0; j < t.rhs.size(); ++j) {
        scratch = m * t.scale_big[j];
        if (scratch >= t.rhs[j]) mask |= (1u << j);
    }
    return mask;
}

/// Sum of p_i / q_i over a range by pairwise combination; canonicalized once.
struct Fraction {
    Integer p;
    Integer q;
};

Fraction split_sum(std::vector<Fraction>& terms, std::size_t lo, std::size_t hi) {
    if (hi - lo == 1) return terms[lo];
    std::size_t mid = lo + (hi - lo) / 2;
    Fraction l = split_sum(terms, lo, mid), r = split_sum(terms, mid, hi);
    if (l.q == r.q) return {l.p + r.p, l.q};
    return {l.p * r.q + r.p * l.q, l.q * r.q};
}

Rational sum_terms(std::vector<Fraction>& terms) {
    if (terms.empty()) return Rational(0);
    Fraction f = split_sum(terms, 0, terms.size());
    return make_rational(f.p, f.q);
}

} // namespace

std::uint64_t chunk_length(std::uint64_t depth) { return std::max<std::uint64_t>(256, (depth + 63) / 64); }

std::vector<std::uint32_t> exceptional_masks(const IntegerSequence& a, const CircleRational& x,
                                             const std::vector<Rational>& eps, std::uint64_t depth, Exec exec) {
    std::vector<std::uint32_t> masks(depth, 0);
    if (depth == 0) return masks;
    const Integer& D = x.den();
    const Thresholds t = make_thresholds(eps, D);
    if (exec == Exec::serial) {
        Integer scratch, other;
        walk(a, x.num(), D, 1, depth, [&](std::uint64_t n, const Integer& s) {
            masks[n - 1] = classify(s, D, t, scratch, other);
        });
        return masks;
    }
    const std::uint64_t len = chunk_length(depth);
    const auto chunks = static_cast<std::int64_t>((depth + len - 1) / len);
#pragma omp parallel for schedule(dynamic, 1)
    for (std::int64_t c = 0; c < chunks; ++c) {
        Integer scratch, other;
        const std::uint64_t first = static_cast<std::uint64_t>(c) * len + 1;
        const std::uint64_t last = std::min(depth, first + len - 1);
        walk(a, x.num(), D, first, last, [&](std::uint64_t n, const Integer& s) {
            masks[n - 1] = classify(s, D, t, scratch, other);
        });
    }
    return masks;
}

std::vector<Rational> weighted_norm_sums(const IntegerSequence& a, const CircleRational& x, const WeightRule& r,
                                         const std::vector<std::uint64_t>& checkpoints, Exec exec) {
    if (checkpoints.empty()) return {};
    for (std::size_t i = 1; i < checkpoints.size(); ++i)
        if (checkpoints[i] <= checkpoints[i - 1]) throw domain_error("checkpoints must increase");
    const std::uint64_t depth = checkpoints.back();
    if (auto m = r.max_index(); m && *m < depth) throw domain_error("weights run out before the scan depth");
    const Integer& D = x.den();
    // r_n ||a_n x|| = r_n * min(s, D - s) / D; the 1/D factor is applied at the end.
    auto term = [&](std::uint64_t n, const Integer& s) {
        Integer m = D - s;
        if (s < m) m = s;
        Rational w = r.at(n);
        return Fraction{m * w.get_num(), w.get_den()};
    };

    std::vector<Rational> out;
    out.reserve(checkpoints.size());
    if (exec == Exec::serial) {
        Rational acc = 0;
        std::size_t next = 0;
        walk(a, x.num(), D, 1, depth, [&](std::uint64_t n, const Integer& s) {
            Fraction f = term(n, s);
            acc += make_rational(f.p, f.q);
            if (n == checkpoints[next]) {
                out.push_back(acc / D);
                ++next;
            }
        });
        return out;
    }

    // Segments cut at every checkpoint and every chunk boundary.
    std::vector<std::uint64_t> cuts = checkpoints;
    const std::uint64_t len = chunk_length(depth);
    for (std::uint64_t b = len; b < depth; b += len) cuts.push_back(b);
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
    std::vector<Rational> seg(cuts.size());
    const auto nseg = static_cast<std::int64_t>(cuts.size());
#pragma omp parallel for schedule(dynamic, 1)
    for (std::int64_t i = 0; i < nseg; ++i) {
        const std::uint64_t first = i == 0 ? 1 : cuts[i - 1] + 1;
        std::vector<Fraction> terms;
        terms.reserve(cuts[i] - first + 1);
        walk(a, x.num(), D, first, cuts[i], [&](std::uint64_t n, const Integer& s) { terms.push_back(term(n, s)); });
        seg[i] = sum_terms(terms);
    }
    Rational acc = 0;
    std::size_t next = 0;
    for (std::size_t i = 0; i < cuts.size(); ++i) {
        acc += seg[i];
        if (cuts[i] == checkpoints[next]) {
            out.push_back(acc / D);
            ++next;
        }
    }
    return out;
}

} // namespace thinset::kernels

namespace thinset::kernels {

namespace {

/// ||t/M|| >= p/q exactly for integers t in [lo, hi] (and reals in the same closed range).
struct Band {
    Integer lo;
    Integer hi;
};

std::vector<Band> make_bands(const std::vector<Rational>& eps, const Integer& M) {
    if (eps.size() > 32) throw domain_error("at most 32 thresholds per scan");
    std::vector<Band> b;
    for (const auto& e : eps) {
        if (e <= 0) throw domain_error("thresholds must be positive");
        Band band;
        Integer pm = e.get_num() * M;
        mpz_cdiv_q(band.lo.get_mpz_t(), pm.get_mpz_t(), e.get_den_mpz_t());
        band.hi = M - band.lo;
        b.push_back(std::move(band));
    }
    return b;
}

} // namespace

EnclosedMasks enclosed_masks(const IntegerSequence& a, const Integer& head_num, const Integer& modulus,
                             const std::vector<Rational>& eps, std::uint64_t depth, Exec exec) {
    EnclosedMasks out;
    out.masks.assign(depth, 0);
    if (depth == 0) return out;
    const Integer& M = modulus;
    const std::vector<Band> bands = make_bands(eps, M);
    std::vector<std::uint8_t> undecided(depth, 0);

    // {a_n x} lies in [s, s + w] / M with w = a_n; above p/q iff the whole
    // range sits in the band, undecided when it only meets it.
    auto run_chunk = [&](std::uint64_t first, std::uint64_t last) {
        Integer w = a.term(first);
        bool saturated = w >= M;
        Integer end;
        walk(a, head_num, M, first, last, [&](std::uint64_t n, const Integer& s) {
            if (n > first && !saturated) {
                mpz_mul_ui(w.get_mpz_t(), w.get_mpz_t(), a.step(n));
                saturated = w >= M;
            }
            if (saturated) {
                // The enclosure covers the whole circle; no threshold <= 1/2 is decided.
                if (!bands.empty()) undecided[n - 1] = 1;
                return;
            }
            mpz_add(end.get_mpz_t(), s.get_mpz_t(), w.get_mpz_t());
            const bool wraps = end >= M;
            if (wraps) end -= M;
            std::uint32_t mask = 0;
            for (std::size_t j = 0; j < bands.size(); ++j) {
                const Band& b = bands[j];
                bool meets;
                if (!wraps) {
                    if (s >= b.lo && end <= b.hi) {
                        mask |= (1u << j);
                        continue;
                    }
                    meets = s <= b.hi && end >= b.lo;
                } else {
                    meets = s <= b.hi || end >= b.lo;
                }
                if (meets) undecided[n - 1] = 1;
            }
            out.masks[n - 1] = mask;
        });
    };

    if (exec == Exec::serial) {
        run_chunk(1, depth);
    } else {
        const std::uint64_t len = chunk_length(depth);
        const auto chunks = static_cast<std::int64_t>((depth + len - 1) / len);
#pragma omp parallel for schedule(dynamic, 1)
        for (std::int64_t c = 0; c < chunks; ++c) {
            const std::uint64_t first = static_cast<std::uint64_t>(c) * len + 1;
            run_chunk(first, std::min(depth, first + len - 1));
        }
    }
    for (std::uint64_t n = 0; n < depth; ++n)
        if (undecided[n]) {
            out.first_undecided = n + 1;
            break;
        }
    return out;
}

} // namespace thinset::kernels
