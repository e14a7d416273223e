#include "thinset/interval.hpp"

#include "thinset/circle.hpp"

#include <algorithm>

namespace thinset {

RatInterval::RatInterval(Rational lo_, Rational hi_) : lo(std::move(lo_)), hi(std::move(hi_)) {
    if (hi < lo) throw domain_error("interval with hi < lo: [" + to_wire(lo) + ", " + to_wire(hi) + "]");
}

FracEnclosure FracEnclosure::from_span(const Rational& start, const Rational& width) {
    if (start < 0 || start >= 1) throw domain_error("enclosure start outside [0,1)");
    if (width < 0) throw domain_error("negative enclosure width");
    FracEnclosure e;
    e.span = RatInterval(start, start + width);
    if (e.span.hi < 1) {
        e.pieces.push_back(e.span);
    } else if (width >= 1) {
        e.wraps = true;
        e.pieces.emplace_back(Rational(0), Rational(1));
    } else {
        e.wraps = true;
        e.pieces.emplace_back(start, Rational(1));
        e.pieces.emplace_back(Rational(0), e.span.hi - 1);
    }
    return e;
}

bool FracEnclosure::inside(const RatInterval& target) const {
    return std::all_of(pieces.begin(), pieces.end(), [&](const RatInterval& p) { return p.subset_of(target); });
}

RatInterval FracEnclosure::norm_range() const {
    static const Rational half(1, 2);
    Rational lo = half, hi = 0;
    for (const auto& p : pieces) {
        Rational a = dist_to_int(p.lo), b = dist_to_int(p.hi);
        lo = std::min(lo, std::min(a, b));
        hi = std::max(hi, p.contains(half) ? half : std::max(a, b));
    }
    return {lo, hi};
}

} // namespace thinset
