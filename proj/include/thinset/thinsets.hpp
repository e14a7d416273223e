#pragma once

// Evidence for membership of x in characterized subgroups t_(a_n)(T) and
// their ideal versions, plus N-set summability reports.

#include "thinset/digit_expansion.hpp"
#include "thinset/ideal.hpp"
#include "thinset/integer_sequence.hpp"
#include "thinset/kernels.hpp"

#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace thinset {

/// The point under test: an exact rational or a digit expansion.
class ScanSubject {
public:
    ScanSubject(CircleRational x) : value_(std::move(x)) {}
    ScanSubject(DigitExpansion e) : value_(std::move(e)) {}

    /// The exact rational when known (finitely supported expansions included).
    std::optional<CircleRational> exact() const;
    const DigitExpansion* expansion() const { return std::get_if<DigitExpansion>(&value_); }
    std::string describe() const;

private:
    std::variant<CircleRational, DigitExpansion> value_;
};

std::vector<Rational> default_eps_grid();

/// Exceptional set E_eps = {n <= depth : ||a_n x|| >= eps}.
struct ExceptionalStats {
    Rational eps;
    std::uint64_t count = 0;
    std::uint64_t last_index = 0;
    std::vector<TracePoint> prefix_density;
    std::vector<std::uint64_t> indices;
    /// Exact density of the eventually periodic exceptional set, when the cycle was found.
    std::optional<Rational> periodic_density;
};

struct ConvergenceReport {
    std::string subject;
    std::string sequence;
    std::uint64_t depth = 0;
    std::vector<ExceptionalStats> per_eps;  // eps in decreasing order
    Verdict verdict;
};

struct ScanOptions {
    kernels::Exec exec = kernels::Exec::parallel;
};

ConvergenceReport classical_convergence(const ScanSubject& x, const IntegerSequence& a, std::uint64_t depth,
                                        std::vector<Rational> eps = default_eps_grid(), ScanOptions opt = {});

Verdict ideal_convergence(const ScanSubject& x, const IntegerSequence& a, const IdealDescriptor& ideal,
                          std::uint64_t depth, const Rational& eps, ScanOptions opt = {});

/// Sufficient rule: supp(x) in I and I-translation invariant => x in t^I_(u_n).
Verdict membership_by_support(const DigitExpansion& e, const IdealDescriptor& ideal);

enum class Growth3 { bounded_evidence, divergent_evidence, inconclusive };
std::string to_string(Growth3 g);
Growth3 growth_from_string(std::string_view s);

struct SummabilityReport {
    std::string weights;
    std::vector<std::uint64_t> checkpoints;
    /// Exact sum_{n <= N} r_n ||a_n x|| at each checkpoint (enclosed when x is truncated).
    std::vector<RatInterval> norm_sums;
    /// sum r_n 2||a_n x|| and sum r_n (22/7)||a_n x||: bracket sum r_n |sin(pi a_n x)|.
    std::vector<Rational> lower_envelope;
    std::vector<Rational> upper_envelope;
    Growth3 growth = Growth3::inconclusive;
    std::string reason;
};

struct NsetOptions {
    kernels::Exec exec = kernels::Exec::parallel;
    /// divergent-evidence when S_N >= ramp_value at N = ramp_at.
    std::uint64_t ramp_at = 10000;
    Rational ramp_value = Rational(3);
};

SummabilityReport nset_partial_sums(const ScanSubject& x, const IntegerSequence& a, const WeightRule& r,
                                    std::uint64_t depth, NsetOptions opt = {});

/// Whether sum_{n in A} r_n < inf forces A into the ideal (certified table).
Verdict weight_ideal_link(const WeightRule& r, const IdealDescriptor& ideal);

} // namespace thinset
