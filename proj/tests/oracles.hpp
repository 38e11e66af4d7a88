#pragma once

// Slow, independent reference computations used as test oracles. Nothing here
// shares code with the search or enumeration paths under test.

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <vector>

#include "affapp/group.hpp"

namespace oracle {

using affapp::Elem;
using affapp::Group;

/// Mixed-radix odometer over all n^n image tables.
inline bool next_table(std::vector<Elem>& t, std::size_t base) {
    for (auto& v : t) {
        if (++v < base) return true;
        v = 0;
    }
    return false;
}

/// Every endomorphism, by filtering all n^n tables with the homomorphism test.
inline std::vector<std::vector<Elem>> endomorphisms(const Group& g) {
    const auto n = g.order();
    std::vector<std::vector<Elem>> out;
    std::vector<Elem> t(n, 0);
    do {
        bool hom = true;
        for (Elem a = 0; a < n && hom; ++a)
            for (Elem b = 0; b < n && hom; ++b) hom = t[g.mul(a, b)] == g.mul(t[a], t[b]);
        if (hom) out.push_back(t);
    } while (next_table(t, n));
    return out;
}

inline std::vector<std::vector<Elem>> affine_tables(const Group& g, const std::vector<std::vector<Elem>>& endos,
                                                    bool affine) {
    std::vector<std::vector<Elem>> fam;
    for (const auto& e : endos) {
        if (!affine) {
            fam.push_back(e);
            continue;
        }
        for (Elem c = 0; c < g.order(); ++c) {
            std::vector<Elem> t(g.order());
            for (Elem x = 0; x < g.order(); ++x) t[x] = g.mul(c, e[x]);
            fam.push_back(t);
        }
    }
    return fam;
}

inline std::size_t app(const std::vector<Elem>& f, const std::vector<std::vector<Elem>>& fam) {
    std::size_t best = 0;
    for (const auto& h : fam) {
        std::size_t a = 0;
        for (std::size_t x = 0; x < f.size(); ++x) a += f[x] == h[x];
        best = std::max(best, a);
    }
    return best;
}

/// min over all n^n functions of the max agreement with the family.
inline std::size_t minmax(const Group& g, const std::vector<std::vector<Elem>>& fam) {
    std::vector<Elem> f(g.order(), 0);
    std::size_t best = g.order();
    do best = std::min(best, app(f, fam));
    while (next_table(f, g.order()));
    return best;
}

/// Whether some permutation of 0..m-1 moves every point to another class.
inline bool avoiding_exists(const std::vector<std::size_t>& class_of) {
    std::vector<std::size_t> perm(class_of.size());
    std::iota(perm.begin(), perm.end(), std::size_t{0});
    do {
        bool ok = true;
        for (std::size_t i = 0; i < perm.size() && ok; ++i) ok = class_of[i] != class_of[perm[i]];
        if (ok) return true;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return false;
}

/// All set partitions of 0..m-1 as restricted growth strings.
inline std::vector<std::vector<std::size_t>> set_partitions(std::size_t m) {
    std::vector<std::vector<std::size_t>> out;
    std::vector<std::size_t> a(m, 0);
    auto rec = [&](auto&& self, std::size_t i, std::size_t maxv) -> void {
        if (i == m) {
            out.push_back(a);
            return;
        }
        for (std::size_t v = 0; v <= maxv + 1; ++v) {
            a[i] = v;
            self(self, i + 1, std::max(maxv, v));
        }
    };
    if (m == 0) {
        out.push_back({});
        return out;
    }
    a[0] = 0;
    rec(rec, 1, 0);
    return out;
}

}  // namespace oracle
