#pragma once

// Certificate-producing witness constructions.
//
// Each construction picks a subsequence a_{n_i} of (a_n), builds a point x
// whose digits over (u_n) sit at the indices k_{n_i} + 1, and verifies with
// exact rational enclosures that ||a_{n_i} x|| stays away from 0 on every
// planned index while the support of x obeys the ideal rule.
//
//   th6  x lies in t^I_(u_n) but not in t_(a_n); target {a_{n_i} x} in [1/4, 7/8].
//   th1  as th6, plus sum (1/j)|sin(pi u_j x)| < inf, checked block by block.
//   th2  u_n = p^n, digits 1; target ||a_{n_i} x|| > (p-1)/p^2, plus block sums.

#include "thinset/digit_expansion.hpp"
#include "thinset/ideal.hpp"
#include "thinset/integer_sequence.hpp"
#include "thinset/kernels.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace thinset {

struct unsupported_ideal : error {
    using error::error;
};
struct not_absorbing : error {
    using error::error;
};

/// a = u_k * v with k maximal, so q_{k+1} does not divide v.
struct Decomposition {
    std::size_t k = 0;
    Integer v;
};

Decomposition decompose(const ArithmeticSequence& seq, const Integer& a);

/// Digit parameters for one planned index: l = v mod q, l' = q - l,
/// m = 2 min(l, l'), c = floor(q / m).
struct DigitChoice {
    std::uint64_t l = 0;
    std::uint64_t l_prime = 0;
    std::uint64_t m = 0;
    std::uint64_t c = 0;
};

DigitChoice digit_choice(std::uint64_t q, const Integer& v);

enum class Theorem { th6, th1, th2 };
std::string to_string(Theorem t);
Theorem theorem_from_string(std::string_view s);

struct PlannedIndex {
    std::uint64_t i = 0;  // 1-based position in the subsequence
    std::uint64_t n = 0;  // index into (a_n)
    std::size_t k = 0;
    Integer v;
    std::uint64_t q = 0;  // q_{k+1}
    DigitChoice choice;   // th6 / th1 only
    Integer digit;        // c placed at index k + 1
};

struct WitnessPlan {
    Theorem theorem = Theorem::th6;
    ArithmeticSequence seq = ArithmeticSequence::dyadic();
    IntegerSequence a = IntegerSequence::scaled_geometric(Integer(1), 2);
    IdealDescriptor ideal = IdealDescriptor::density();
    WeightRule weights = WeightRule::harmonic();
    std::optional<SetDescriptor> witness_set;
    std::vector<PlannedIndex> indices;
    /// The next selection after the last planned index; its k fixes the
    /// truncation, and hence the tail, for the last check.
    std::optional<PlannedIndex> lookahead;
    std::vector<std::string> growth_log;
};

struct PlanOptions {
    /// Give up on finding k_n large enough after scanning this many times the start index.
    std::uint64_t scan_factor = 4;
};

WitnessPlan plan_witness(Theorem tag, const ArithmeticSequence& seq, const IntegerSequence& a,
                         const IdealDescriptor& ideal, std::uint64_t count, PlanOptions opt = {});

struct IndexCheck {
    std::uint64_t i = 0;
    /// Enclosure of {a_{n_i} x}, unreduced: lo in [0,1), hi may reach past 1 when `wraps`.
    RatInterval interval;
    bool wraps = false;
    RatInterval target;
    /// Open target (th2) rather than closed (th6 / th1).
    bool strict = false;
    /// Width of the tail part a_{n_i} / u_{k_{n_{i+1}}}, rounded up.
    Rational tail_width;
    bool pass = false;
};

struct BlockCheck {
    std::uint64_t i = 0;       // block (k_{n_{i-1}}, k_{n_i}]
    std::size_t first = 0;
    std::size_t last = 0;
    /// Upper bound on sum_j r_j (22/7) ||u_j x|| over the block.
    Rational sum_upper;
    Rational bound;
    /// True when every term was evaluated exactly (no far-tail majorant).
    bool exact = true;
    bool pass = false;
};

struct WitnessCertificate {
    WitnessPlan plan;
    DigitExpansion expansion = DigitExpansion::finitely_supported(ArithmeticSequence::dyadic(), {});
    std::vector<IndexCheck> checks;
    SetDescriptor support = SetDescriptor::finite({});
    Verdict support_verdict;
    std::vector<BlockCheck> blocks;
    bool pass = false;
};

struct VerifyOptions {
    kernels::Exec exec = kernels::Exec::parallel;
};

WitnessCertificate build_and_verify(const WitnessPlan& plan, VerifyOptions opt = {});

struct VerifyReport {
    bool pass = false;
    std::vector<std::string> mismatches;
    std::vector<std::string> notes;
};

/// Recomputes every check from the plan and digits alone. Stored intervals
/// must contain the recomputed ones.
VerifyReport verify_certificate(const WitnessCertificate& cert, VerifyOptions opt = {});

namespace detail {

/// Upper bound on v / (u_to / u_from). Exact unless the span is so long that
/// the quotient is below 2^-64, in which case 2^-64 is returned and `exact`
/// is cleared.
Rational scaled_inv_span_upper(const ArithmeticSequence& seq, const Integer& v, std::size_t from, std::size_t to,
                               bool* exact = nullptr);

/// Rounds up onto the 2^-64 grid when the denominator exceeds 2^64.
Rational round_up(const Rational& x);
Rational round_down(const Rational& x);

} // namespace detail

} // namespace thinset
