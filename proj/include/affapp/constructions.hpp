#pragma once

// Explicit hard functions and partition-avoiding permutations.

#include <algorithm>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "affapp/approx.hpp"
#include "affapp/constructors.hpp"
#include "affapp/group.hpp"
#include "affapp/jk.hpp"
#include "affapp/morphism.hpp"

namespace affapp {

/// On Z/n: non-generators go to 1, a generator x goes to x*x mod n.
/// Its endomorphic approximability is 1.
inline GroupFunction cyclic_enapp_witness(std::size_t n) {
    if (n < 2) throw ArgumentError("cyclic witness needs n >= 2");
    GroupFunction f;
    f.images.resize(n);
    for (std::size_t x = 0; x < n; ++x)
        f.images[x] = std::gcd(x, n) == 1 ? static_cast<Elem>(x * x % n) : Elem{1};
    return f;
}

/// x -> x^2 in the ring Z/p.
inline GroupFunction prime_square_witness(std::size_t p) {
    if (!jk::is_prime(p)) throw ArgumentError("prime square witness needs a prime");
    GroupFunction f;
    f.images.resize(p);
    for (std::size_t x = 0; x < p; ++x) f.images[x] = static_cast<Elem>(x * x % p);
    return f;
}

/// On Z/p^k: x = rem + quot * p  ->  rem + quot.
inline GroupFunction rem_quot_witness(std::size_t p, std::size_t k) {
    if (!jk::is_prime(p)) throw ArgumentError("rem-quot witness needs a prime");
    if (k < 1) throw ArgumentError("rem-quot witness needs k >= 1");
    std::size_t n = 1;
    for (std::size_t i = 0; i < k; ++i) n *= p;
    GroupFunction f;
    f.images.resize(n);
    for (std::size_t x = 0; x < n; ++x) f.images[x] = static_cast<Elem>((x % p + x / p) % n);
    return f;
}

struct NamedWitness {
    std::string name;
    std::string group_spec;
    Metric metric = Metric::affine;
    std::size_t claimed = 0;  // upper bound on the approximability
    GroupFunction function;
};

/// The three small-group witnesses:
///   z6-swap  on cyclic(6), read as Z/2 x Z/3:  (x, y) -> (y mod 2, x)
///   klein    on elemabelian(2,2): (0,0),(1,0),(0,1),(1,1) -> (1,0),(1,0),(0,1),(0,1)
///   sym3     on dihedral(6) = {1, r, r^2, s, sr, sr^2}: -> 1, r, r, 1, r^2, r^2
inline std::vector<NamedWitness> small_group_witnesses() {
    GroupFunction swap;
    swap.images.resize(6);
    for (Elem n = 0; n < 6; ++n) {
        const Elem x = n % 2, y = n % 3;
        for (Elem m = 0; m < 6; ++m)
            if (m % 2 == y % 2 && m % 3 == x) swap.images[n] = m;
    }
    return {
        {"z6-swap", "cyclic(6)", Metric::affine, 2, swap},
        {"klein", "elemabelian(2,2)", Metric::endo, 2, GroupFunction{{1, 1, 2, 2}}},
        {"sym3", "dihedral(6)", Metric::affine, 2, GroupFunction{{0, 1, 1, 0, 2, 2}}},
    };
}

/// Resolves cyclic-enapp:N, prime-square:P, rem-quot:P,K, z6-swap, klein, sym3.
inline NamedWitness named_witness(const std::string& name) {
    const auto colon = name.find(':');
    const std::string head = name.substr(0, colon);
    std::vector<std::size_t> args;
    if (colon != std::string::npos) {
        std::string rest = name.substr(colon + 1);
        std::size_t pos = 0;
        while (pos <= rest.size()) {
            const auto comma = std::min(rest.find(',', pos), rest.size());
            const std::string tok = rest.substr(pos, comma - pos);
            if (tok.empty() || tok.find_first_not_of("0123456789") != std::string::npos || tok.size() > 9)
                throw ArgumentError("bad witness argument in '" + name + "'");
            args.push_back(std::stoul(tok));
            pos = comma + 1;
        }
    }
    auto want = [&](std::size_t k) {
        if (args.size() != k) throw ArgumentError("witness '" + head + "' takes " + std::to_string(k) + " argument(s)");
    };
    if (head == "cyclic-enapp") {
        want(1);
        return {name, "cyclic(" + std::to_string(args[0]) + ")", Metric::endo, 1, cyclic_enapp_witness(args[0])};
    }
    if (head == "prime-square") {
        want(1);
        return {name, "cyclic(" + std::to_string(args[0]) + ")", Metric::affine, 2, prime_square_witness(args[0])};
    }
    if (head == "rem-quot") {
        want(2);
        std::size_t n = 1;
        for (std::size_t i = 0; i < args[1]; ++i) n *= args[0];
        auto f = rem_quot_witness(args[0], args[1]);
        return {name, "cyclic(" + std::to_string(n) + ")", Metric::affine, args[0], std::move(f)};
    }
    want(0);
    for (auto& w : small_group_witnesses())
        if (w.name == head) return w;
    throw ArgumentError("unknown witness '" + name + "'");
}

// ---------------------------------------------------------------------------
// Partition-avoiding permutations.

struct Partition {
    std::size_t m = 0;
    std::vector<std::vector<Elem>> classes;

    /// Throws ArgumentError unless the classes are nonempty, disjoint and cover 0..m-1.
    void check() const {
        std::vector<char> seen(m, 0);
        std::size_t total = 0;
        for (const auto& c : classes) {
            if (c.empty()) throw ArgumentError("partition has an empty class");
            for (Elem x : c) {
                if (x >= m) throw ArgumentError("partition element out of range");
                if (seen[x]) throw ArgumentError("partition classes overlap");
                seen[x] = 1;
                ++total;
            }
        }
        if (total != m) throw ArgumentError("partition does not cover the ground set");
    }

    std::vector<std::size_t> class_of() const {
        std::vector<std::size_t> out(m);
        for (std::size_t i = 0; i < classes.size(); ++i)
            for (Elem x : classes[i]) out[x] = i;
        return out;
    }

    /// Consecutive classes of the given sizes.
    static Partition from_sizes(const std::vector<std::size_t>& sizes) {
        Partition p;
        for (std::size_t s : sizes) {
            std::vector<Elem> c(s);
            std::iota(c.begin(), c.end(), static_cast<Elem>(p.m));
            p.m += s;
            p.classes.push_back(std::move(c));
        }
        return p;
    }
};

inline bool is_avoiding(const Partition& p, const std::vector<Elem>& perm) {
    if (perm.size() != p.m || !is_bijective(perm)) return false;
    const auto cls = p.class_of();
    for (Elem x = 0; x < p.m; ++x)
        if (cls[x] == cls[perm[x]]) return false;
    return true;
}

/// A permutation moving every point to another class, or none if some class
/// holds more than half the points. While at least 6 points remain, the
/// smallest points of the two largest classes are swapped; the last <= 5
/// points are settled by lexicographic search.
inline std::optional<std::vector<Elem>> build_avoiding_permutation(const Partition& p) {
    p.check();
    for (const auto& c : p.classes)
        if (2 * c.size() > p.m) return std::nullopt;

    std::vector<std::vector<Elem>> rest = p.classes;
    for (auto& c : rest) std::sort(c.begin(), c.end());
    std::vector<Elem> perm(p.m);
    std::size_t remaining = p.m;

    while (remaining >= 6) {
        std::size_t first = rest.size(), second = rest.size();
        for (std::size_t i = 0; i < rest.size(); ++i) {
            if (first == rest.size() || rest[i].size() > rest[first].size()) {
                second = first;
                first = i;
            } else if (second == rest.size() || rest[i].size() > rest[second].size()) {
                second = i;
            }
        }
        const Elem a = rest[first].front(), b = rest[second].front();
        perm[a] = b;
        perm[b] = a;
        rest[first].erase(rest[first].begin());
        rest[second].erase(rest[second].begin());
        remaining -= 2;
    }

    std::vector<Elem> pts;
    std::vector<std::size_t> cls;
    for (std::size_t i = 0; i < rest.size(); ++i)
        for (Elem x : rest[i]) {
            pts.push_back(x);
            cls.push_back(i);
        }
    // keep points in ascending order for a canonical lexicographic search
    std::vector<std::size_t> by_point(pts.size());
    std::iota(by_point.begin(), by_point.end(), std::size_t{0});
    std::sort(by_point.begin(), by_point.end(), [&](auto i, auto j) { return pts[i] < pts[j]; });
    std::vector<Elem> sp;
    std::vector<std::size_t> sc;
    for (auto i : by_point) {
        sp.push_back(pts[i]);
        sc.push_back(cls[i]);
    }
    std::vector<std::size_t> sigma(sp.size());
    std::iota(sigma.begin(), sigma.end(), std::size_t{0});
    do {
        bool ok = true;
        for (std::size_t i = 0; i < sigma.size() && ok; ++i) ok = sc[i] != sc[sigma[i]];
        if (ok) {
            for (std::size_t i = 0; i < sigma.size(); ++i) perm[sp[i]] = sp[sigma[i]];
            return perm;
        }
    } while (std::next_permutation(sigma.begin(), sigma.end()));
    throw Error("avoiding permutation search failed on a balanced partition");
}

/// A bijective automorphism-orbit-avoiding function (fixes 1, moves every other
/// element out of its Aut-orbit), or none if there is a dominating orbit.
inline std::optional<std::vector<Elem>> find_aoa_permutation(const Group& g,
                                                             const std::vector<std::vector<Elem>>& orbits) {
    // ground set G \ {1}, element x at position x - 1
    Partition part;
    part.m = g.order() - 1;
    for (const auto& o : orbits) {
        if (o.front() == 0) continue;
        std::vector<Elem> c;
        for (Elem x : o) c.push_back(x - 1);
        part.classes.push_back(std::move(c));
    }
    auto perm = build_avoiding_permutation(part);
    if (!perm) return std::nullopt;
    std::vector<Elem> f(g.order(), 0);
    for (Elem x = 1; x < g.order(); ++x) f[x] = (*perm)[x - 1] + 1;
    return f;
}

inline std::optional<std::vector<Elem>> find_aoa_permutation(const Group& g, EnumerationOptions opt = {}) {
    return find_aoa_permutation(g, automorphism_orbits(g, opt));
}

}  // namespace affapp
