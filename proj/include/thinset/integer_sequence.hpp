#pragma once

// Increasing integer sequences (a_n) that drive the scans, and the weight
// sequences (r_n) used by summability reports.

#include "thinset/arithmetic_sequence.hpp"
#include "thinset/rational.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace thinset {

/// a_n for n >= 1, with a_{n+1} = a_n * step(n+1).
///
/// Two families: scaled geometric a_n = c * b^n, and a_n = u_n taken from an
/// arithmetic sequence. Both are multiplicative chains, so once D divides a
/// term it divides every later term.
class IntegerSequence {
public:
    static IntegerSequence scaled_geometric(Integer c, std::uint64_t base);
    static IntegerSequence from_arithmetic(ArithmeticSequence seq);

    /// "c*b^n", "b^n", "n!", or "u" / "u_n" (requires the arithmetic sequence).
    static IntegerSequence parse(std::string_view spec, const std::optional<ArithmeticSequence>& u = std::nullopt);

    Integer term(std::uint64_t n) const;
    /// a_n / a_{n-1} for n >= 2.
    std::uint64_t step(std::uint64_t n) const;
    /// a_n mod m.
    Integer residue(std::uint64_t n, const Integer& m) const;

    /// Whether D divides a_n for all large n; nullopt when undecidable.
    std::optional<bool> eventually_divisible_by(const Integer& d) const;
    /// Smallest n with D | a_n, when eventually_divisible_by(D) holds.
    std::uint64_t first_divisible_index(const Integer& d) const;

    /// Smallest n >= from with a_n >= bound.
    std::uint64_t first_index_at_least(const Integer& bound, std::uint64_t from = 1) const;

    const std::optional<ArithmeticSequence>& arithmetic() const { return arith_; }
    std::optional<std::uint64_t> base() const;
    const Integer& scale() const { return scale_; }

    std::string spec() const;

private:
    Integer scale_{1};
    std::uint64_t base_ = 0;
    std::optional<ArithmeticSequence> arith_;
};

/// Weights r_n: 1, 1/n, 1/n^2, or an explicit finite list.
class WeightRule {
public:
    enum class Kind { constant, harmonic, inverse_square, explicit_list };

    static WeightRule constant() { return WeightRule(Kind::constant, {}); }
    static WeightRule harmonic() { return WeightRule(Kind::harmonic, {}); }
    static WeightRule inverse_square() { return WeightRule(Kind::inverse_square, {}); }
    static WeightRule explicit_list(std::vector<Rational> values);
    /// "one", "harmonic" (alias "1/n"), "inverse-square" (alias "1/n^2"), or "[r1,r2,...]".
    static WeightRule parse(std::string_view spec);

    Kind kind() const { return kind_; }
    const std::vector<Rational>& values() const { return values_; }
    Rational at(std::uint64_t n) const;
    /// Largest index with a defined weight; nullopt when unbounded.
    std::optional<std::uint64_t> max_index() const;
    std::string spec() const;

private:
    WeightRule(Kind k, std::vector<Rational> v) : kind_(k), values_(std::move(v)) {}
    Kind kind_;
    std::vector<Rational> values_;
};

} // namespace thinset
