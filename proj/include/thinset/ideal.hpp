#pragma once

// Ideals on N, three-valued membership verdicts and density computations.

#include "thinset/rational.hpp"
#include "thinset/set_descriptor.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace thinset {

inline constexpr std::uint64_t kDefaultCutoff = 100000;

enum class Outcome { member, not_member, inconclusive };

std::string to_string(Outcome o);
Outcome outcome_from_string(std::string_view s);

struct TracePoint {
    std::uint64_t n = 0;
    double value = 0.0;
};

/// Member and NotMember are only ever produced by a named certificate or an
/// exact computation; prefix scans on their own yield Inconclusive.
struct Verdict {
    Outcome outcome = Outcome::inconclusive;
    std::string certificate;
    std::string note;
    std::uint64_t cutoff = 0;
    std::vector<TracePoint> trace;

    bool member() const { return outcome == Outcome::member; }
    bool not_member() const { return outcome == Outcome::not_member; }
    bool inconclusive() const { return outcome == Outcome::inconclusive; }
};

class IdealDescriptor {
public:
    enum class Kind { fin, density, summable };

    static IdealDescriptor fin() { return IdealDescriptor(Kind::fin, Rational(0)); }
    static IdealDescriptor density() { return IdealDescriptor(Kind::density, Rational(0)); }
    /// {A : sum_{n in A} 1/n^s < inf}, 0 < s <= 1.
    static IdealDescriptor summable(Rational exponent = Rational(1));
    /// "fin", "density", "summable", "summable:s".
    static IdealDescriptor parse(std::string_view spec);

    Kind kind() const { return kind_; }
    const Rational& exponent() const { return exponent_; }
    std::string spec() const;

    friend bool operator==(const IdealDescriptor&, const IdealDescriptor&) = default;

private:
    IdealDescriptor(Kind k, Rational s) : kind_(k), exponent_(std::move(s)) {}
    Kind kind_;
    Rational exponent_;
};

struct DensityEstimate {
    std::uint64_t cutoff = 0;
    Rational lower;
    Rational upper;
    std::optional<Rational> exact;
};

/// Thrown when an enumerated set stops producing elements before the cutoff.
struct exhaustion_error : error {
    exhaustion_error(const std::string& what, std::uint64_t partial) : error(what), partial_count(partial) {}
    std::uint64_t partial_count;
};

Rational prefix_density(const SetDescriptor& s, std::uint64_t n);
std::optional<Rational> exact_density(const SetDescriptor& s);
/// Running min/max of |S ∩ [1,m]|/m over the tail window m in [n/2, n].
DensityEstimate estimate_density(const SetDescriptor& s, std::uint64_t n);

Verdict ideal_member(const IdealDescriptor& ideal, const SetDescriptor& s, std::uint64_t cutoff = kDefaultCutoff);

SetDescriptor shift_set(const SetDescriptor& s, std::int64_t t);

/// Requires s not to be a certified non-member; throws precondition_error otherwise.
Verdict translation_invariant_in(const IdealDescriptor& ideal, const SetDescriptor& s, std::int64_t shift_range,
                                 std::uint64_t cutoff = kDefaultCutoff);

/// An infinite member of the ideal all of whose shifts stay in the ideal;
/// nullopt for Fin, which has no infinite members.
std::optional<SetDescriptor> non_snt_witness(const IdealDescriptor& ideal);

} // namespace thinset
