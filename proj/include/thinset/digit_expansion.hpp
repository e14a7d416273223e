#pragma once

#include "thinset/arithmetic_sequence.hpp"
#include "thinset/circle.hpp"
#include "thinset/interval.hpp"
#include "thinset/set_descriptor.hpp"

#include <cstddef>
#include <map>
#include <optional>

namespace thinset {

struct insufficient_digits : error {
    insufficient_digits(const std::string& what, std::size_t required_depth)
        : error(what), required(required_depth) {}
    std::size_t required;
};

/// Digits c_n of x = sum c_n / u_n over an arithmetic sequence.
///
/// Digits are known for indices 1..depth. A finitely supported expansion is
/// exact: every digit beyond depth is zero. A truncated expansion says
/// nothing past depth, so it only pins x to [x_depth, x_depth + 1/u_depth].
/// Only nonzero digits are stored.
class DigitExpansion {
public:
    static DigitExpansion truncated(ArithmeticSequence seq, std::map<std::size_t, Integer> digits, std::size_t depth);
    static DigitExpansion finitely_supported(ArithmeticSequence seq, std::map<std::size_t, Integer> digits,
                                             std::size_t depth = 0);

    /// Attaches the index set the digits were built from when it is known
    /// symbolically (witness constructions).
    DigitExpansion with_symbolic_support(SetDescriptor s) const;

    const ArithmeticSequence& sequence() const { return seq_; }
    const std::map<std::size_t, Integer>& nonzero_digits() const { return digits_; }
    std::size_t depth() const { return depth_; }
    bool is_finitely_supported() const { return exact_; }
    const std::optional<SetDescriptor>& symbolic_support() const { return symbolic_support_; }

    /// c_n; throws insufficient_digits beyond a truncation.
    Integer digit(std::size_t n) const;
    bool known_to(std::size_t k) const { return exact_ || k <= depth_; }

private:
    DigitExpansion(ArithmeticSequence seq, std::map<std::size_t, Integer> digits, std::size_t depth, bool exact);

    ArithmeticSequence seq_;
    std::map<std::size_t, Integer> digits_;
    std::size_t depth_;
    bool exact_;
    std::optional<SetDescriptor> symbolic_support_;
};

/// Greedy canonical digits: c_{k+1} = floor(u_{k+1} (x - x_k)).
DigitExpansion expand(const CircleRational& x, const ArithmeticSequence& seq, std::size_t depth);

/// x_depth = sum_{n <= depth} c_n / u_n.
CircleRational reconstruct(const DigitExpansion& e, std::size_t depth);
/// Partial sum up to the stored depth.
CircleRational reconstruct(const DigitExpansion& e);

SetDescriptor support(const DigitExpansion& e);

/// [0, 1/u_k]: encloses sum_{n > k} c_n / u_n for any admissible digits.
RatInterval tail_bound(const ArithmeticSequence& seq, std::size_t k);

/// {a x_k} widened by a / u_k, read mod 1.
FracEnclosure frac_scaled(const Integer& a, const DigitExpansion& e, std::size_t k);

} // namespace thinset
