#pragma once

#include "thinset/rational.hpp"

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace thinset {

/// A divisibility chain u_0 = 1, u_n = q_1 * ... * q_n.
///
/// Ratios come from one of three generators: a period that is repeated
/// forever (dyadic is the period {2}), the factorial ratios q_n = n, or an
/// explicit finite list. q_1 may be 1; every later ratio is at least 2.
class ArithmeticSequence {
public:
    enum class Kind { cyclic, factorial, finite };

    static ArithmeticSequence cyclic(std::vector<std::uint64_t> period);
    static ArithmeticSequence dyadic() { return cyclic({2}); }
    static ArithmeticSequence geometric(std::uint64_t base) { return cyclic({base}); }
    static ArithmeticSequence factorial();
    static ArithmeticSequence finite(std::vector<std::uint64_t> ratios);

    /// Accepts "dyadic", "factorial", "geometric:b" and "[q1,q2,...]" (cycled).
    static ArithmeticSequence parse(std::string_view spec);

    Kind kind() const { return kind_; }
    const std::vector<std::uint64_t>& ratios() const { return ratios_; }

    /// q_n for n >= 1.
    std::uint64_t ratio(std::size_t n) const;
    /// u_n for n >= 0.
    Integer term(std::size_t n) const;
    /// u_to / u_from = q_{from+1} * ... * q_to, for from <= to.
    Integer span(std::size_t from, std::size_t to) const;
    /// Largest index with a defined ratio; nullopt for unbounded generators.
    std::optional<std::size_t> max_index() const;
    /// b when u_n = b^n.
    std::optional<std::uint64_t> geometric_base() const;

    /// Smallest k >= from with u_k >= bound; nullopt if a finite list runs out.
    std::optional<std::size_t> first_term_at_least(const Integer& bound, std::size_t from = 0) const;

    std::string spec() const;

    friend bool operator==(const ArithmeticSequence&, const ArithmeticSequence&) = default;

private:
    ArithmeticSequence(Kind kind, std::vector<std::uint64_t> ratios) : kind_(kind), ratios_(std::move(ratios)) {}

    Kind kind_;
    std::vector<std::uint64_t> ratios_;
};

} // namespace thinset
