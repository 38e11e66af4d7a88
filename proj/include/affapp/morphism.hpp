#pragma once

// Endomorphisms, automorphisms and affine maps of dense carriers.
//
// Endomorphisms are found by backtracking over the images of a short
// generating sequence g_1..g_k. After choosing images for g_1..g_i the map is
// extended over <g_1..g_i> along a BFS tree of the right Cayley graph and every
// Cayley edge a -> a*g_j is checked; an inconsistent edge prunes the branch.
// Checking all edges of the Cayley graph of the full group is equivalent to the
// homomorphism property, so leaves need no further test.

#include <algorithm>
#include <atomic>
#include <cmath>
#include <mutex>
#include <span>
#include <thread>
#include <vector>

#include "affapp/group.hpp"

namespace affapp {

struct Morphism {
    std::vector<Elem> images;
    bool is_automorphism = false;

    Elem operator()(Elem x) const { return images[x]; }
    friend bool operator==(const Morphism&, const Morphism&) = default;
};

/// x -> constant * endo(x)
struct AffineMap {
    Elem constant = 0;
    Morphism endo;

    Elem apply(const Group& g, Elem x) const { return g.mul(constant, endo.images[x]); }
    std::vector<Elem> table(const Group& g) const {
        std::vector<Elem> t(g.order());
        for (Elem x = 0; x < g.order(); ++x) t[x] = apply(g, x);
        return t;
    }
};

struct EnumerationOptions {
    std::size_t capacity = 64;
    unsigned threads = 0;  // 0: hardware concurrency
};

inline bool is_homomorphism(const Group& g, std::span<const Elem> images) {
    if (images.size() != g.order()) return false;
    for (Elem a = 0; a < g.order(); ++a)
        for (Elem b = 0; b < g.order(); ++b)
            if (images[g.mul(a, b)] != g.mul(images[a], images[b])) return false;
    return true;
}

inline bool is_bijective(std::span<const Elem> images) {
    std::vector<char> hit(images.size(), 0);
    for (Elem y : images) {
        if (y >= images.size() || hit[y]) return false;
        hit[y] = 1;
    }
    return true;
}

/// Greedy generating sequence: repeatedly adjoin the element that enlarges the
/// generated subgroup most (smallest index on ties). Every step at least
/// doubles the subgroup, so the length is at most log2 |G|.
inline std::vector<Elem> minimal_generating_sequence(const Group& g) {
    std::vector<Elem> gens;
    std::vector<Elem> sub{0};
    while (sub.size() < g.order()) {
        std::vector<char> in(g.order(), 0);
        for (Elem x : sub) in[x] = 1;
        Elem best = 0;
        std::vector<Elem> best_sub;
        for (Elem x = 1; x < g.order(); ++x) {
            if (in[x]) continue;
            gens.push_back(x);
            auto h = generated_subgroup(g, gens);
            gens.pop_back();
            if (h.size() > best_sub.size()) {
                best = x;
                best_sub = std::move(h);
                if (best_sub.size() == g.order()) break;
            }
        }
        gens.push_back(best);
        sub = std::move(best_sub);
    }
    return gens;
}

namespace detail {

struct GeneratorLevel {
    std::vector<Elem> members;  // BFS order, identity first
    std::vector<Elem> parent;   // indexed by element
    std::vector<std::uint8_t> via;
};

class EndoSearch {
public:
    EndoSearch(const Group& g, std::vector<Elem> gens) : g_(g), gens_(std::move(gens)) {
        const auto n = g.order();
        orders_ = element_orders(g);
        for (std::size_t i = 0; i < gens_.size(); ++i) {
            GeneratorLevel lv;
            lv.parent.assign(n, 0);
            lv.via.assign(n, 0);
            std::vector<char> seen(n, 0);
            seen[0] = 1;
            lv.members.push_back(0);
            for (std::size_t q = 0; q < lv.members.size(); ++q) {
                const Elem a = lv.members[q];
                for (std::size_t j = 0; j <= i; ++j) {
                    const Elem b = g.mul(a, gens_[j]);
                    if (!seen[b]) {
                        seen[b] = 1;
                        lv.parent[b] = a;
                        lv.via[b] = static_cast<std::uint8_t>(j);
                        lv.members.push_back(b);
                    }
                }
            }
            levels_.push_back(std::move(lv));
        }
        for (std::size_t i = 0; i < gens_.size(); ++i) {
            std::vector<Elem> c;
            for (Elem y = 0; y < n; ++y)
                if (orders_[gens_[i]] % orders_[y] == 0) c.push_back(y);
            candidates_.push_back(std::move(c));
        }
    }

    std::size_t first_choices() const { return gens_.empty() ? 1 : candidates_[0].size(); }

    /// All endomorphisms whose first generator image is candidate `choice`.
    void run_branch(std::size_t choice, std::vector<Morphism>& out) const {
        std::vector<Elem> phi(g_.order(), 0);
        std::vector<Elem> img(gens_.size(), 0);
        if (gens_.empty()) {
            out.push_back(Morphism{{0}, true});
            return;
        }
        img[0] = candidates_[0][choice];
        if (consistent(0, img, phi)) descend(1, img, phi, out);
    }

private:
    bool consistent(std::size_t level, const std::vector<Elem>& img, std::vector<Elem>& phi) const {
        const auto& lv = levels_[level];
        for (std::size_t q = 1; q < lv.members.size(); ++q) {
            const Elem b = lv.members[q];
            phi[b] = g_.mul(phi[lv.parent[b]], img[lv.via[b]]);
        }
        for (Elem a : lv.members)
            for (std::size_t j = 0; j <= level; ++j)
                if (phi[g_.mul(a, gens_[j])] != g_.mul(phi[a], img[j])) return false;
        return true;
    }

    void descend(std::size_t level, std::vector<Elem>& img, std::vector<Elem>& phi,
                 std::vector<Morphism>& out) const {
        if (level == gens_.size()) {
            Morphism m{phi, false};
            m.is_automorphism = is_bijective(m.images);
            out.push_back(std::move(m));
            return;
        }
        for (Elem y : candidates_[level]) {
            img[level] = y;
            if (consistent(level, img, phi)) descend(level + 1, img, phi, out);
        }
    }

    const Group& g_;
    std::vector<Elem> gens_;
    std::vector<std::uint64_t> orders_;
    std::vector<GeneratorLevel> levels_;
    std::vector<std::vector<Elem>> candidates_;
};

inline void require_enumerable(const Group& g, std::size_t capacity) {
    if (!g.is_dense()) throw CapacityError(g.name() + ": endomorphism enumeration needs a dense carrier");
    if (g.order() > capacity)
        throw CapacityError(g.name() + ": order " + std::to_string(g.order()) +
                            " exceeds the enumeration limit " + std::to_string(capacity));
}

}  // namespace detail

/// Every endomorphism, sorted lexicographically by image table.
inline std::vector<Morphism> enumerate_endomorphisms(const Group& g, EnumerationOptions opt = {}) {
    detail::require_enumerable(g, opt.capacity);
    detail::EndoSearch search(g, minimal_generating_sequence(g));

    std::vector<Morphism> all;
    std::mutex mu;
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        std::vector<Morphism> local;
        for (std::size_t c; (c = next.fetch_add(1)) < search.first_choices();) search.run_branch(c, local);
        std::lock_guard lock(mu);
        all.insert(all.end(), std::make_move_iterator(local.begin()), std::make_move_iterator(local.end()));
    };
    const unsigned threads = opt.threads ? opt.threads : std::max(1u, std::thread::hardware_concurrency());
    {
        std::vector<std::jthread> pool;
        for (unsigned t = 1; t < threads; ++t) pool.emplace_back(worker);
        worker();
    }
    std::sort(all.begin(), all.end(), [](const Morphism& a, const Morphism& b) { return a.images < b.images; });
    return all;
}

/// All |G| * |End(G)| affine maps, grouped by endomorphism then by constant.
inline std::vector<AffineMap> affine_maps(std::span<const Morphism> endos, std::size_t order) {
    std::vector<AffineMap> out;
    out.reserve(endos.size() * order);
    for (const auto& e : endos)
        for (Elem c = 0; c < order; ++c) out.push_back(AffineMap{c, e});
    return out;
}

inline std::vector<AffineMap> enumerate_affine_maps(const Group& g, EnumerationOptions opt = {}) {
    return affine_maps(enumerate_endomorphisms(g, opt), g.order());
}

/// Orbits of Aut(G) on G; classes are sorted and ordered by smallest element,
/// so {identity} always comes first.
inline std::vector<std::vector<Elem>> automorphism_orbits(const Group& g, std::span<const Morphism> endos) {
    std::vector<const Morphism*> autos;
    for (const auto& e : endos)
        if (e.is_automorphism) autos.push_back(&e);
    std::vector<char> done(g.order(), 0);
    std::vector<std::vector<Elem>> orbits;
    for (Elem x = 0; x < g.order(); ++x) {
        if (done[x]) continue;
        std::vector<Elem> orbit;
        for (const auto* a : autos) {
            const Elem y = a->images[x];
            if (!done[y]) {
                done[y] = 1;
                orbit.push_back(y);
            }
        }
        std::sort(orbit.begin(), orbit.end());
        orbits.push_back(std::move(orbit));
    }
    return orbits;
}

inline std::vector<std::vector<Elem>> automorphism_orbits(const Group& g, EnumerationOptions opt = {}) {
    return automorphism_orbits(g, enumerate_endomorphisms(g, opt));
}

}  // namespace affapp
