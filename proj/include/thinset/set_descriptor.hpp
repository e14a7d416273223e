#pragma once

// Symbolic subsets of N = {1, 2, 3, ...}.

#include "thinset/rational.hpp"

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace thinset {

/// What is known about how fast an enumerated set grows.
struct Growth {
    enum class Kind { unknown, superlinear, linear };
    Kind kind = Kind::unknown;
    /// For linear growth: the k-th element is at most rate * k.
    std::uint64_t rate = 0;

    static Growth unknown() { return {}; }
    static Growth superlinear() { return {Kind::superlinear, 0}; }
    static Growth linear(std::uint64_t rate) { return {Kind::linear, rate}; }
};

/// Forward-only enumeration of a set in increasing order. Copying a cursor
/// copies its position.
class Cursor {
public:
    explicit Cursor(std::function<std::optional<std::uint64_t>()> next) : next_(std::move(next)) {}
    std::optional<std::uint64_t> next() { return next_(); }

private:
    std::function<std::optional<std::uint64_t>()> next_;
};

class SetDescriptor;

struct FiniteSet {
    std::vector<std::uint64_t> elements;  // strictly increasing, all >= 1
};
struct Progression {
    std::uint64_t start;  // >= 1
    std::uint64_t step;   // >= 1
};
struct GeometricSet {
    std::uint64_t base;  // {base^k : k >= 1}, base >= 2
};
struct ShiftedSet;
struct UnionSet;
struct EnumeratedSet {
    /// Human-readable rule; catalog rules ("poly:s") round-trip through JSON.
    std::string formula;
    /// k-th element for k >= 1, strictly increasing in k; nullopt once exhausted.
    std::function<std::optional<std::uint64_t>(std::uint64_t)> nth;
    Growth growth;
    bool known_infinite = false;
};

/// Immutable handle to a symbolic set. Cheap to copy; safe to share.
class SetDescriptor {
public:
    struct Node;

    static SetDescriptor finite(std::vector<std::uint64_t> elements);
    static SetDescriptor progression(std::uint64_t start, std::uint64_t step);
    static SetDescriptor geometric(std::uint64_t base);
    static SetDescriptor shifted(SetDescriptor inner, std::int64_t offset);
    static SetDescriptor set_union(std::vector<SetDescriptor> parts);
    static SetDescriptor enumerated(EnumeratedSet e);
    /// {k^power : k >= 1}.
    static SetDescriptor powers_of_k(std::uint64_t power);
    static SetDescriptor naturals() { return progression(1, 1); }

    const FiniteSet* as_finite() const;
    const Progression* as_progression() const;
    const GeometricSet* as_geometric() const;
    const ShiftedSet* as_shifted() const;
    const UnionSet* as_union() const;
    const EnumeratedSet* as_enumerated() const;

    Cursor cursor() const;
    bool contains(std::uint64_t x) const;
    /// |S ∩ [1, n]|. Enumerated sets that run dry early report what they have.
    std::uint64_t count_upto(std::uint64_t n) const;
    /// Elements <= n, increasing.
    std::vector<std::uint64_t> elements_upto(std::uint64_t n) const;

    /// true/false when finiteness is provable from the descriptor.
    std::optional<bool> provably_finite() const;

    std::string describe() const;

private:
    explicit SetDescriptor(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
    std::shared_ptr<const Node> node_;
};

struct ShiftedSet {
    SetDescriptor inner;
    std::int64_t offset;
};
struct UnionSet {
    std::vector<SetDescriptor> parts;
};

using SetVariant = std::variant<FiniteSet, Progression, GeometricSet, ShiftedSet, UnionSet, EnumeratedSet>;

struct SetDescriptor::Node {
    SetVariant value;
};

} // namespace thinset
