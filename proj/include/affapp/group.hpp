#pragma once

// Finite group carriers.
//
// Elements are indices 0..order-1 and the identity is always index 0. Small
// groups are stored as a dense Cayley table; large groups with a closed-form
// multiplication (the JK groups) are "rule based" and carry their rules as
// function objects.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <numeric>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "affapp/errors.hpp"

namespace affapp {

using Elem = std::uint32_t;

class Group {
public:
    using MulFn = std::function<Elem(Elem, Elem)>;
    using InvFn = std::function<Elem(Elem)>;

    /// Largest order that is stored as a dense table.
    static constexpr std::size_t kDenseLimit = 2048;

    /// Wraps a raw row-major table. Nothing is checked beyond entry range; use
    /// validate() for the group axioms.
    static Group from_table(std::string name, std::size_t order, std::vector<Elem> table,
                            std::vector<Elem> generators) {
        if (order == 0) throw ParameterError("group order must be positive");
        if (order > kDenseLimit)
            throw CapacityError("order " + std::to_string(order) + " exceeds the dense table limit " +
                                std::to_string(kDenseLimit));
        if (table.size() != order * order) throw FormatError("table has wrong size");
        Group g;
        g.name_ = std::move(name);
        g.order_ = order;
        g.table_.resize(table.size());
        for (std::size_t i = 0; i < table.size(); ++i) {
            if (table[i] >= order) throw FormatError("table entry out of range");
            g.table_[i] = static_cast<std::uint16_t>(table[i]);
        }
        g.inverse_.assign(order, static_cast<std::uint16_t>(order));
        for (std::size_t a = 0; a < order; ++a)
            for (std::size_t b = 0; b < order; ++b)
                if (g.table_[a * order + b] == 0) {
                    g.inverse_[a] = static_cast<std::uint16_t>(b);
                    break;
                }
        g.set_generators(std::move(generators));
        return g;
    }

    /// Builds the dense table by evaluating `mul` on every pair.
    template <class Mul>
    static Group tabulate(std::string name, std::size_t order, Mul&& mul,
                          std::vector<Elem> generators) {
        if (order > kDenseLimit)
            throw CapacityError("order " + std::to_string(order) + " exceeds the dense table limit " +
                                std::to_string(kDenseLimit));
        std::vector<Elem> table(order * order);
        for (Elem a = 0; a < order; ++a)
            for (Elem b = 0; b < order; ++b) table[a * order + b] = mul(a, b);
        return from_table(std::move(name), order, std::move(table), std::move(generators));
    }

    /// A carrier defined by formulas. `center` lists the central elements as
    /// supplied by the construction.
    static Group from_rules(std::string name, std::size_t order, MulFn mul, InvFn inv,
                            std::vector<Elem> generators, std::vector<Elem> center) {
        if (order == 0) throw ParameterError("group order must be positive");
        Group g;
        g.name_ = std::move(name);
        g.order_ = order;
        g.mul_fn_ = std::move(mul);
        g.inv_fn_ = std::move(inv);
        g.rule_center_ = std::move(center);
        g.set_generators(std::move(generators));
        return g;
    }

    std::size_t order() const noexcept { return order_; }
    bool is_dense() const noexcept { return !table_.empty(); }
    const std::string& name() const noexcept { return name_; }
    std::span<const Elem> generators() const noexcept { return generators_; }

    Elem mul(Elem a, Elem b) const {
        if (!table_.empty()) return table_[static_cast<std::size_t>(a) * order_ + b];
        return mul_fn_(a, b);
    }

    /// For a malformed dense table without a right inverse this returns order().
    Elem inv(Elem a) const {
        if (!table_.empty()) return inverse_[a];
        return inv_fn_(a);
    }

    const std::optional<std::vector<Elem>>& rule_center() const noexcept { return rule_center_; }

    friend bool operator==(const Group& a, const Group& b) {
        if (a.order_ != b.order_ || !a.is_dense() || !b.is_dense()) return false;
        return a.table_ == b.table_;
    }

private:
    void set_generators(std::vector<Elem> gens) {
        if (gens.empty()) {
            gens.resize(order_);
            std::iota(gens.begin(), gens.end(), Elem{0});
        }
        for (Elem x : gens)
            if (x >= order_) throw FormatError("generator index out of range");
        generators_ = std::move(gens);
    }

    std::string name_;
    std::size_t order_ = 0;
    std::vector<std::uint16_t> table_;
    std::vector<std::uint16_t> inverse_;
    MulFn mul_fn_;
    InvFn inv_fn_;
    std::vector<Elem> generators_;
    std::optional<std::vector<Elem>> rule_center_;
};

/// A total function on a group, given by its image table.
struct GroupFunction {
    std::vector<Elem> images;

    Elem operator()(Elem x) const { return images[x]; }
    std::size_t size() const noexcept { return images.size(); }
    bool valid_for(const Group& g) const {
        return images.size() == g.order() &&
               std::all_of(images.begin(), images.end(), [&](Elem y) { return y < g.order(); });
    }
    friend bool operator==(const GroupFunction&, const GroupFunction&) = default;
};

inline GroupFunction identity_function(const Group& g) {
    GroupFunction f;
    f.images.resize(g.order());
    std::iota(f.images.begin(), f.images.end(), Elem{0});
    return f;
}

/// Sorted element list of the subgroup generated by `gens`.
inline std::vector<Elem> generated_subgroup(const Group& g, std::span<const Elem> gens) {
    std::vector<char> seen(g.order(), 0);
    std::vector<Elem> out{0};
    seen[0] = 1;
    for (std::size_t i = 0; i < out.size(); ++i)
        for (Elem s : gens) {
            Elem y = g.mul(out[i], s);
            if (!seen[y]) {
                seen[y] = 1;
                out.push_back(y);
            }
        }
    std::sort(out.begin(), out.end());
    return out;
}

struct ValidationReport {
    bool exhaustive = true;
    std::size_t triples_checked = 0;
    bool associative = true;
    bool identity = true;
    bool identity_unique = true;
    bool inverses = true;
    bool generated = true;
    std::vector<std::string> failures;

    bool ok() const noexcept {
        return associative && identity && identity_unique && inverses && generated;
    }
};

/// Checks the group axioms. Associativity is exhaustive up to order
/// `exhaustive_limit` and sampled on `samples` random triples above it.
inline ValidationReport validate(const Group& g, std::size_t samples = 1'000'000,
                                 std::uint64_t seed = 0x5eed, std::size_t exhaustive_limit = 512) {
    ValidationReport r;
    const auto n = static_cast<Elem>(g.order());

    for (Elem x = 0; x < n; ++x) {
        if (g.mul(0, x) != x || g.mul(x, 0) != x) {
            r.identity = false;
            r.failures.push_back("index 0 is not a two-sided identity at " + std::to_string(x));
            break;
        }
    }
    for (Elem x = 1; x < n; ++x) {
        if (g.mul(x, x) == x) {
            r.identity_unique = false;
            r.failures.push_back("element " + std::to_string(x) + " is a second idempotent");
            break;
        }
    }
    for (Elem x = 0; x < n; ++x) {
        Elem y = g.inv(x);
        if (y >= n || g.mul(x, y) != 0 || g.mul(y, x) != 0) {
            r.inverses = false;
            r.failures.push_back("element " + std::to_string(x) + " has no two-sided inverse");
            break;
        }
    }

    auto check = [&](Elem a, Elem b, Elem c) {
        ++r.triples_checked;
        if (g.mul(g.mul(a, b), c) != g.mul(a, g.mul(b, c))) {
            r.associative = false;
            r.failures.push_back("associativity fails at (" + std::to_string(a) + "," +
                                 std::to_string(b) + "," + std::to_string(c) + ")");
            return false;
        }
        return true;
    };
    if (g.order() <= exhaustive_limit) {
        for (Elem a = 0; a < n && r.associative; ++a)
            for (Elem b = 0; b < n && r.associative; ++b)
                for (Elem c = 0; c < n; ++c)
                    if (!check(a, b, c)) break;
    } else {
        r.exhaustive = false;
        std::mt19937_64 rng(seed);
        std::uniform_int_distribution<Elem> pick(0, n - 1);
        for (std::size_t i = 0; i < samples; ++i)
            if (!check(pick(rng), pick(rng), pick(rng))) break;
    }

    if (r.identity && generated_subgroup(g, g.generators()).size() != g.order()) {
        r.generated = false;
        r.failures.push_back("generators do not generate the carrier");
    }
    return r;
}

inline bool is_abelian(const Group& g) {
    for (Elem s : g.generators())
        for (Elem t : g.generators())
            if (g.mul(s, t) != g.mul(t, s)) return false;
    return true;
}

inline std::vector<Elem> center(const Group& g) {
    if (g.rule_center()) return *g.rule_center();
    std::vector<Elem> z;
    for (Elem x = 0; x < g.order(); ++x) {
        bool central = true;
        for (Elem s : g.generators())
            if (g.mul(x, s) != g.mul(s, x)) {
                central = false;
                break;
            }
        if (central) z.push_back(x);
    }
    return z;
}

inline std::uint64_t element_order(const Group& g, Elem x) {
    std::uint64_t k = 1;
    for (Elem y = x; y != 0; y = g.mul(y, x)) ++k;
    return k;
}

inline std::vector<std::uint64_t> element_orders(const Group& g) {
    std::vector<std::uint64_t> out(g.order());
    for (Elem x = 0; x < g.order(); ++x) out[x] = element_order(g, x);
    return out;
}

inline std::uint64_t exponent(const Group& g) {
    std::uint64_t e = 1;
    for (Elem x = 0; x < g.order(); ++x) e = std::lcm(e, element_order(g, x));
    return e;
}

/// Componentwise product; element (a, b) has index a * |B| + b.
inline Group direct_product(const Group& a, const Group& b) {
    if (!a.is_dense() || !b.is_dense())
        throw CapacityError("direct products need dense factors");
    const std::size_t m = b.order();
    const std::size_t n = a.order() * m;
    if (n > Group::kDenseLimit)
        throw CapacityError("product order " + std::to_string(n) + " exceeds the dense table limit");
    std::vector<Elem> gens;
    for (Elem s : a.generators())
        if (s != 0) gens.push_back(static_cast<Elem>(s * m));
    for (Elem t : b.generators())
        if (t != 0) gens.push_back(t);
    if (gens.empty()) gens.push_back(0);
    return Group::tabulate(
        "product(" + a.name() + "," + b.name() + ")", n,
        [&](Elem x, Elem y) {
            return static_cast<Elem>(a.mul(x / m, y / m) * m + b.mul(x % m, y % m));
        },
        std::move(gens));
}

}  // namespace affapp
