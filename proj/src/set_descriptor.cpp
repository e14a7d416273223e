#include "thinset/set_descriptor.hpp"

#include <algorithm>
#include <limits>

namespace thinset {

namespace {

constexpr std::uint64_t kMax = std::numeric_limits<std::uint64_t>::max();

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};

std::optional<std::uint64_t> checked_pow(std::uint64_t base, std::uint64_t exp) {
    std::uint64_t r = 1;
    for (std::uint64_t i = 0; i < exp; ++i) {
        if (r > kMax / base) return std::nullopt;
        r *= base;
    }
    return r;
}

} // namespace

SetDescriptor SetDescriptor::finite(std::vector<std::uint64_t> elements) {
    std::sort(elements.begin(), elements.end());
    elements.erase(std::unique(elements.begin(), elements.end()), elements.end());
    if (!elements.empty() && elements.front() == 0) throw domain_error("finite set elements must be >= 1");
    return SetDescriptor(std::make_shared<const Node>(Node{FiniteSet{std::move(elements)}}));
}

SetDescriptor SetDescriptor::progression(std::uint64_t start, std::uint64_t step) {
    if (start < 1 || step < 1) throw domain_error("progression needs start >= 1 and step >= 1");
    return SetDescriptor(std::make_shared<const Node>(Node{Progression{start, step}}));
}

SetDescriptor SetDescriptor::geometric(std::uint64_t base) {
    if (base < 2) throw domain_error("geometric set needs base >= 2");
    return SetDescriptor(std::make_shared<const Node>(Node{GeometricSet{base}}));
}

SetDescriptor SetDescriptor::shifted(SetDescriptor inner, std::int64_t offset) {
    if (offset == 0) return inner;
    return SetDescriptor(std::make_shared<const Node>(Node{ShiftedSet{std::move(inner), offset}}));
}

SetDescriptor SetDescriptor::set_union(std::vector<SetDescriptor> parts) {
    if (parts.size() == 1) return parts.front();
    return SetDescriptor(std::make_shared<const Node>(Node{UnionSet{std::move(parts)}}));
}

SetDescriptor SetDescriptor::enumerated(EnumeratedSet e) {
    if (!e.nth) throw domain_error("enumerated set without generator");
    return SetDescriptor(std::make_shared<const Node>(Node{std::move(e)}));
}

SetDescriptor SetDescriptor::powers_of_k(std::uint64_t power) {
    if (power < 1) throw domain_error("power must be >= 1");
    EnumeratedSet e;
    e.formula = "poly:" + std::to_string(power);
    e.nth = [power](std::uint64_t k) { return checked_pow(k, power); };
    e.growth = power >= 2 ? Growth::superlinear() : Growth::linear(1);
    e.known_infinite = true;
    return enumerated(std::move(e));
}

const FiniteSet* SetDescriptor::as_finite() const { return std::get_if<FiniteSet>(&node_->value); }
const Progression* SetDescriptor::as_progression() const { return std::get_if<Progression>(&node_->value); }
const GeometricSet* SetDescriptor::as_geometric() const { return std::get_if<GeometricSet>(&node_->value); }
const ShiftedSet* SetDescriptor::as_shifted() const { return std::get_if<ShiftedSet>(&node_->value); }
const UnionSet* SetDescriptor::as_union() const { return std::get_if<UnionSet>(&node_->value); }
const EnumeratedSet* SetDescriptor::as_enumerated() const { return std::get_if<EnumeratedSet>(&node_->value); }

Cursor SetDescriptor::cursor() const {
    return std::visit(
        overloaded{
            [](const FiniteSet& f) {
                return Cursor([elems = f.elements, i = std::size_t{0}]() mutable -> std::optional<std::uint64_t> {
                    if (i >= elems.size()) return std::nullopt;
                    return elems[i++];
                });
            },
            [](const Progression& p) {
                return Cursor([p, next = std::optional<std::uint64_t>(p.start)]() mutable {
                    auto out = next;
                    if (next) next = (*next > kMax - p.step) ? std::nullopt : std::optional(*next + p.step);
                    return out;
                });
            },
            [](const GeometricSet& g) {
                return Cursor([g, next = std::optional<std::uint64_t>(g.base)]() mutable {
                    auto out = next;
                    if (next) next = (*next > kMax / g.base) ? std::nullopt : std::optional(*next * g.base);
                    return out;
                });
            },
            [](const ShiftedSet& s) {
                return Cursor([inner = s.inner.cursor(), t = s.offset]() mutable -> std::optional<std::uint64_t> {
                    while (auto v = inner.next()) {
                        if (t < 0) {
                            auto drop = static_cast<std::uint64_t>(-t);
                            if (*v > drop) return *v - drop;
                        } else {
                            auto add = static_cast<std::uint64_t>(t);
                            if (*v > kMax - add) return std::nullopt;
                            return *v + add;
                        }
                    }
                    return std::nullopt;
                });
            },
            [](const UnionSet& u) {
                std::vector<Cursor> cursors;
                std::vector<std::optional<std::uint64_t>> heads;
                for (const auto& p : u.parts) {
                    cursors.push_back(p.cursor());
                    heads.push_back(cursors.back().next());
                }
                return Cursor([cursors = std::move(cursors), heads = std::move(heads)]() mutable
                              -> std::optional<std::uint64_t> {
                    std::optional<std::uint64_t> best;
                    for (const auto& h : heads)
                        if (h && (!best || *h < *best)) best = h;
                    if (!best) return std::nullopt;
                    for (std::size_t i = 0; i < heads.size(); ++i)
                        if (heads[i] == best) heads[i] = cursors[i].next();
                    return best;
                });
            },
            [](const EnumeratedSet& e) {
                return Cursor([nth = e.nth, k = std::uint64_t{1}, done = false]() mutable -> std::optional<std::uint64_t> {
                    if (done) return std::nullopt;
                    auto v = nth(k++);
                    if (!v) done = true;
                    return v;
                });
            },
        },
        node_->value);
}

bool SetDescriptor::contains(std::uint64_t x) const {
    if (x == 0) return false;
    return std::visit(
        overloaded{
            [x](const FiniteSet& f) { return std::binary_search(f.elements.begin(), f.elements.end(), x); },
            [x](const Progression& p) { return x >= p.start && (x - p.start) % p.step == 0; },
            [x](const GeometricSet& g) {
                std::uint64_t y = x;
                if (y < g.base) return false;
                while (y % g.base == 0) y /= g.base;
                return y == 1;
            },
            [x](const ShiftedSet& s) {
                if (s.offset >= 0) {
                    auto t = static_cast<std::uint64_t>(s.offset);
                    return x > t && s.inner.contains(x - t);
                }
                auto t = static_cast<std::uint64_t>(-s.offset);
                return x <= kMax - t && s.inner.contains(x + t);
            },
            [x](const UnionSet& u) {
                return std::any_of(u.parts.begin(), u.parts.end(), [x](const SetDescriptor& p) { return p.contains(x); });
            },
            [this, x](const EnumeratedSet&) {
                auto c = cursor();
                while (auto v = c.next()) {
                    if (*v == x) return true;
                    if (*v > x) return false;
                }
                return false;
            },
        },
        node_->value);
}

std::uint64_t SetDescriptor::count_upto(std::uint64_t n) const {
    if (auto f = as_finite())
        return static_cast<std::uint64_t>(std::upper_bound(f->elements.begin(), f->elements.end(), n) - f->elements.begin());
    if (auto p = as_progression()) return n >= p->start ? (n - p->start) / p->step + 1 : 0;
    std::uint64_t count = 0;
    auto c = cursor();
    while (auto v = c.next()) {
        if (*v > n) break;
        ++count;
    }
    return count;
}

std::vector<std::uint64_t> SetDescriptor::elements_upto(std::uint64_t n) const {
    std::vector<std::uint64_t> out;
    auto c = cursor();
    while (auto v = c.next()) {
        if (*v > n) break;
        out.push_back(*v);
    }
    return out;
}

std::optional<bool> SetDescriptor::provably_finite() const {
    return std::visit(
        overloaded{
            [](const FiniteSet&) -> std::optional<bool> { return true; },
            [](const Progression&) -> std::optional<bool> { return false; },
            [](const GeometricSet&) -> std::optional<bool> { return false; },
            [](const ShiftedSet& s) { return s.inner.provably_finite(); },
            [](const UnionSet& u) -> std::optional<bool> {
                bool all_finite = true;
                for (const auto& p : u.parts) {
                    auto f = p.provably_finite();
                    if (f == false) return false;
                    if (!f) all_finite = false;
                }
                if (all_finite) return true;
                return std::nullopt;
            },
            [](const EnumeratedSet& e) -> std::optional<bool> {
                if (e.known_infinite) return false;
                return std::nullopt;
            },
        },
        node_->value);
}

std::string SetDescriptor::describe() const {
    return std::visit(
        overloaded{
            [](const FiniteSet& f) {
                std::string s = "{";
                for (std::size_t i = 0; i < f.elements.size() && i < 8; ++i) s += (i ? "," : "") + std::to_string(f.elements[i]);
                if (f.elements.size() > 8) s += ",... (" + std::to_string(f.elements.size()) + " elements)";
                return s + "}";
            },
            [](const Progression& p) { return "{" + std::to_string(p.start) + "+" + std::to_string(p.step) + "k}"; },
            [](const GeometricSet& g) { return "{" + std::to_string(g.base) + "^k}"; },
            [](const ShiftedSet& s) {
                return "(" + s.inner.describe() + (s.offset > 0 ? "+" : "") + std::to_string(s.offset) + ")";
            },
            [](const UnionSet& u) {
                std::string s;
                for (std::size_t i = 0; i < u.parts.size(); ++i) s += (i ? " u " : "") + u.parts[i].describe();
                return "(" + s + ")";
            },
            [](const EnumeratedSet& e) { return "enumerated[" + e.formula + "]"; },
        },
        node_->value);
}

} // namespace thinset
