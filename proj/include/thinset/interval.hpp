#pragma once

#include "thinset/rational.hpp"

#include <vector>

namespace thinset {

/// Closed interval [lo, hi] with exact rational endpoints.
struct RatInterval {
    Rational lo;
    Rational hi;

    RatInterval() = default;
    RatInterval(Rational lo_, Rational hi_);
    static RatInterval point(const Rational& x) { return {x, x}; }

    bool contains(const Rational& x) const { return lo <= x && x <= hi; }
    bool subset_of(const RatInterval& other) const { return other.lo <= lo && hi <= other.hi; }
    Rational width() const { return hi - lo; }

    friend bool operator==(const RatInterval& a, const RatInterval& b) { return a.lo == b.lo && a.hi == b.hi; }
};

/// An interval [start, start + width] of reals read modulo 1.
///
/// `span` keeps the unreduced interval. When it reaches or crosses an
/// integer, `wraps` is set and `pieces` lists the two arcs in [0, 1]; a
/// span of width >= 1 covers the whole circle and has the single piece [0, 1].
struct FracEnclosure {
    RatInterval span;
    bool wraps = false;
    std::vector<RatInterval> pieces;

    /// start must lie in [0, 1); width >= 0.
    static FracEnclosure from_span(const Rational& start, const Rational& width);

    /// True when every point of every piece lies inside target.
    bool inside(const RatInterval& target) const;
    /// Range of the distance-to-nearest-integer over all pieces.
    RatInterval norm_range() const;
};

} // namespace thinset
