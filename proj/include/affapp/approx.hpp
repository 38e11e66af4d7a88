#pragma once

// Approximability of functions on groups by endomorphisms and affine maps.
//
// app_F(f) is the largest number of arguments on which f agrees with a member
// of F. The worst case over all functions on G is computed exactly by a
// threshold search: for k = lower bound, lower bound + 1, ... look for a
// function whose agreement with every family member stays <= k, assigning
// f(x) element by element and keeping one agreement counter per member.

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <numeric>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "affapp/group.hpp"
#include "affapp/morphism.hpp"

namespace affapp {

enum class Metric { endo, affine };

inline std::string_view metric_name(Metric m) { return m == Metric::endo ? "enapp" : "affapp"; }

inline Metric parse_metric(std::string_view s) {
    if (s == "enapp" || s == "endo") return Metric::endo;
    if (s == "affapp" || s == "affine") return Metric::affine;
    throw ArgumentError("unknown metric '" + std::string(s) + "'");
}

/// A family of maps given by evaluation tables.
struct Family {
    Metric metric = Metric::endo;
    std::vector<std::vector<Elem>> tables;
};

inline Family make_family(const Group& g, Metric metric, std::span<const Morphism> endos) {
    Family fam{metric, {}};
    if (metric == Metric::endo) {
        for (const auto& e : endos) fam.tables.push_back(e.images);
    } else {
        for (const auto& a : affine_maps(endos, g.order())) fam.tables.push_back(a.table(g));
    }
    return fam;
}

struct Approximation {
    std::size_t value = 0;
    std::size_t best = 0;  // index of a maximizing family member
};

inline std::size_t agreement(std::span<const Elem> f, std::span<const Elem> h) {
    std::size_t c = 0;
    for (std::size_t x = 0; x < f.size(); ++x) c += f[x] == h[x];
    return c;
}

inline Approximation approximability(std::span<const Elem> f, const Family& fam) {
    if (fam.tables.empty()) throw ArgumentError("empty family");
    Approximation best;
    for (std::size_t i = 0; i < fam.tables.size(); ++i) {
        const std::size_t c = agreement(f, fam.tables[i]);
        if (c > best.value || i == 0) best = {c, i};
        if (best.value == f.size()) break;
    }
    return best;
}

inline std::size_t approximability(const Group& g, const GroupFunction& f, Metric metric,
                                   EnumerationOptions opt = {}) {
    if (!f.valid_for(g)) throw ArgumentError("function does not match the group");
    const auto endos = enumerate_endomorphisms(g, opt);
    return approximability(f.images, make_family(g, metric, endos)).value;
}

// ---------------------------------------------------------------------------
// Lower-bound certificates.

/// A tuple (u_1..u_l) such that every target tuple is hit by some endomorphism.
/// u_1 ranges over Aut-orbit representatives, the rest in increasing order, and
/// every entry must have order exp(G).
inline std::optional<std::vector<Elem>> find_universal_tuple(const Group& g, std::size_t l,
                                                             std::span<const Morphism> endos) {
    if (l == 0) throw ArgumentError("tuple length must be positive");
    const std::size_t n = g.order();
    std::size_t targets = 1;
    for (std::size_t i = 0; i < l; ++i) {
        if (targets > endos.size() / n + 1) return std::nullopt;
        targets *= n;
    }
    if (targets > endos.size()) return std::nullopt;

    const auto orders = element_orders(g);
    const std::uint64_t e = exponent(g);
    std::vector<Elem> full_order;
    for (Elem x = 0; x < n; ++x)
        if (orders[x] == e) full_order.push_back(x);
    if (full_order.size() < l) return std::nullopt;

    std::vector<Elem> reps;
    for (const auto& orbit : automorphism_orbits(g, endos))
        if (orders[orbit.front()] == e) reps.push_back(orbit.front());

    std::vector<char> hit(targets);
    auto universal = [&](const std::vector<Elem>& u) {
        std::fill(hit.begin(), hit.end(), 0);
        std::size_t covered = 0;
        for (const auto& phi : endos) {
            std::size_t key = 0;
            for (std::size_t i = l; i-- > 0;) key = key * n + phi.images[u[i]];
            if (!hit[key]) {
                hit[key] = 1;
                if (++covered == targets) return true;
            }
        }
        return false;
    };

    std::vector<Elem> u(l);
    for (Elem first : reps) {
        u[0] = first;
        std::vector<Elem> rest;
        for (Elem x : full_order)
            if (x != first) rest.push_back(x);
        if (rest.size() < l - 1) continue;
        // all (l-1)-subsets of rest, increasing
        std::vector<std::size_t> idx(l - 1);
        std::iota(idx.begin(), idx.end(), std::size_t{0});
        while (true) {
            for (std::size_t i = 0; i + 1 < l; ++i) u[i + 1] = rest[idx[i]];
            if (universal(u)) return u;
            std::size_t i = l - 1;
            while (i > 0 && idx[i - 1] == rest.size() - (l - 1) + (i - 1)) --i;
            if (i == 0) break;
            ++idx[i - 1];
            for (std::size_t j = i; j < l - 1; ++j) idx[j] = idx[j - 1] + 1;
        }
    }
    return std::nullopt;
}

enum class BoundKind { none, constants, universal_tuple, dominating_orbit };

inline std::string_view bound_kind_name(BoundKind k) {
    switch (k) {
        case BoundKind::constants: return "constants";
        case BoundKind::universal_tuple: return "universal-tuple";
        case BoundKind::dominating_orbit: return "dominating-orbit";
        default: return "none";
    }
}

struct LowerBoundEvidence {
    BoundKind kind = BoundKind::none;
    std::size_t bound = 0;
    std::vector<Elem> elements;  // the tuple or the orbit
};

struct LowerBounds {
    std::size_t endo = 0;
    std::size_t affine = 1;
    LowerBoundEvidence endo_evidence;
    LowerBoundEvidence affine_evidence;
    std::optional<std::vector<Elem>> universal_tuple;  // longest found
    std::optional<std::vector<Elem>> dominating_orbit;
};

inline std::optional<std::vector<Elem>> find_dominating_orbit(const Group& g, std::span<const Morphism> endos) {
    if (g.order() < 2) return std::nullopt;
    for (auto& orbit : automorphism_orbits(g, endos))
        if (orbit.front() != 0 && 2 * orbit.size() > g.order() - 1) return orbit;
    return std::nullopt;
}

/// Universal l-tuple => enapp >= l, affapp >= l + 1 (nontrivial G);
/// dominating orbit => affapp >= 2; constants => affapp >= 1.
inline LowerBounds lower_bound_certificates(const Group& g, std::span<const Morphism> endos) {
    LowerBounds lb;
    lb.affine_evidence = {BoundKind::constants, 1, {}};
    for (std::size_t l = 1;; ++l) {
        auto u = find_universal_tuple(g, l, endos);
        if (!u) break;
        lb.universal_tuple = std::move(u);
    }
    if (lb.universal_tuple) {
        lb.endo = lb.universal_tuple->size();
        lb.endo_evidence = {BoundKind::universal_tuple, lb.endo, *lb.universal_tuple};
        if (g.order() > 1) {
            lb.affine = lb.endo + 1;
            lb.affine_evidence = {BoundKind::universal_tuple, lb.affine, *lb.universal_tuple};
        }
    }
    lb.dominating_orbit = find_dominating_orbit(g, endos);
    if (lb.dominating_orbit && lb.affine < 2) {
        lb.affine = 2;
        lb.affine_evidence = {BoundKind::dominating_orbit, 2, *lb.dominating_orbit};
    }
    return lb;
}

/// An affine map agreeing with f on all of xs, if one exists: fix x in xs and
/// look for an endomorphism phi with phi(y^-1 x) = f(y)^-1 f(x) for all y in xs;
/// then x -> f(x) phi(x)^-1 phi(.) is the map.
inline std::optional<AffineMap> difference_criterion(const Group& g, const GroupFunction& f,
                                                     std::span<const Elem> xs,
                                                     std::span<const Morphism> endos) {
    if (xs.empty()) throw ArgumentError("difference criterion needs a nonempty set");
    const Elem x = xs.front();
    for (const auto& phi : endos) {
        bool ok = true;
        for (Elem y : xs)
            if (phi.images[g.mul(g.inv(y), x)] != g.mul(g.inv(f(y)), f(x))) {
                ok = false;
                break;
            }
        if (ok) return AffineMap{g.mul(f(x), g.inv(phi.images[x])), phi};
    }
    return std::nullopt;
}

/// f(x) outside {phi(x) : phi in End(G)} for every x; none if some x is universal.
inline std::optional<GroupFunction> enapp_zero_witness(const Group& g, std::span<const Morphism> endos) {
    GroupFunction f;
    f.images.resize(g.order());
    std::vector<char> reach(g.order());
    for (Elem x = 0; x < g.order(); ++x) {
        std::fill(reach.begin(), reach.end(), 0);
        for (const auto& phi : endos) reach[phi.images[x]] = 1;
        auto it = std::find(reach.begin(), reach.end(), 0);
        if (it == reach.end()) return std::nullopt;
        f.images[x] = static_cast<Elem>(it - reach.begin());
    }
    return f;
}

// ---------------------------------------------------------------------------
// Worst-case search.

struct SearchStats {
    std::uint64_t nodes = 0;
    double seconds = 0;
};

struct ApproxCertificate {
    Metric metric = Metric::endo;
    bool exact = false;
    std::optional<std::size_t> value;  // set iff exact
    std::size_t lower_bound = 0;  // certificate bound, raised by exhausted thresholds
    std::size_t upper_bound = 0;
    LowerBoundEvidence evidence;
    std::optional<GroupFunction> witness;  // achieves upper_bound
    SearchStats stats;
};

struct SearchOptions {
    std::uint64_t budget = 1'000'000'000;  // search nodes
    bool bounds_only = false;
    EnumerationOptions enumeration;
};

namespace detail {

class ThresholdSearch {
public:
    ThresholdSearch(const Group& g, const Family& fam) : n_(g.order()), maps_(fam.tables.size()) {
        hits_.resize(n_ * n_);
        for (std::size_t m = 0; m < maps_; ++m)
            for (Elem x = 0; x < n_; ++x) hits_[x * n_ + fam.tables[m][x]].push_back(static_cast<std::uint32_t>(m));

        // translations preserve affapp, so f(1) = 1 loses nothing
        fixed_identity_ = fam.metric == Metric::affine;
        std::vector<std::pair<std::size_t, Elem>> disc;
        for (Elem x = fixed_identity_ ? 1 : 0; x < n_; ++x) {
            std::size_t d = 0;
            for (Elem v = 0; v < n_; ++v) d += !hits_[x * n_ + v].empty();
            disc.emplace_back(d, x);
        }
        std::stable_sort(disc.begin(), disc.end(), [](auto& a, auto& b) { return a.first > b.first; });
        for (auto& [d, x] : disc) order_.push_back(x);
    }

    enum class Outcome { found, infeasible, exhausted };

    /// Looks for f with agreement <= k against every member.
    Outcome run(std::size_t k, std::uint64_t budget, std::uint64_t& nodes, std::vector<Elem>& f) {
        counts_.assign(maps_, 0);
        f.assign(n_, 0);
        k_ = k;
        budget_ = budget;
        nodes_ = &nodes;
        if (fixed_identity_) {
            if (!apply(0, 0)) return Outcome::infeasible;
            f[0] = 0;
        }
        return descend(0, f);
    }

    /// Greedy assignment without threshold.
    std::vector<Elem> greedy() {
        counts_.assign(maps_, 0);
        std::vector<Elem> f(n_, 0);
        k_ = static_cast<std::size_t>(-1);
        if (fixed_identity_) apply(0, 0);
        for (Elem x : order_) {
            auto cands = candidates(x);
            f[x] = cands.front().v;
            apply(x, f[x]);
        }
        return f;
    }

private:
    struct Candidate {
        std::size_t newmax;
        std::uint64_t load;
        Elem v;
    };

    std::vector<Candidate> candidates(Elem x) const {
        std::vector<Candidate> out;
        for (Elem v = 0; v < n_; ++v) {
            std::size_t mx = 0;
            std::uint64_t load = 0;
            for (auto m : hits_[x * n_ + v]) {
                mx = std::max<std::size_t>(mx, counts_[m] + 1u);
                load += counts_[m];
            }
            if (mx <= k_) out.push_back({mx, load, v});
        }
        std::sort(out.begin(), out.end(), [](const Candidate& a, const Candidate& b) {
            if (a.newmax != b.newmax) return a.newmax < b.newmax;
            if (a.load != b.load) return a.load < b.load;
            return a.v < b.v;
        });
        return out;
    }

    bool apply(Elem x, Elem v) {
        bool ok = true;
        for (auto m : hits_[x * n_ + v]) ok &= ++counts_[m] <= k_;
        return ok;
    }
    void undo(Elem x, Elem v) {
        for (auto m : hits_[x * n_ + v]) --counts_[m];
    }

    Outcome descend(std::size_t pos, std::vector<Elem>& f) {
        if (pos == order_.size()) return Outcome::found;
        const Elem x = order_[pos];
        for (const auto& c : candidates(x)) {
            if (++*nodes_ > budget_) return Outcome::exhausted;
            apply(x, c.v);
            f[x] = c.v;
            const auto r = descend(pos + 1, f);
            if (r != Outcome::infeasible) return r;
            undo(x, c.v);
        }
        return Outcome::infeasible;
    }

    std::size_t n_;
    std::size_t maps_;
    std::vector<std::vector<std::uint32_t>> hits_;
    std::vector<Elem> order_;
    bool fixed_identity_ = false;
    std::vector<std::uint32_t> counts_;
    std::size_t k_ = 0;
    std::uint64_t budget_ = 0;
    std::uint64_t* nodes_ = nullptr;
};

}  // namespace detail

/// Exact min over all functions on G of their F-approximability, or bounds if
/// the node budget runs out.
inline ApproxCertificate worst_case_value(const Group& g, Metric metric, SearchOptions opt = {}) {
    const auto t0 = std::chrono::steady_clock::now();
    const auto endos = enumerate_endomorphisms(g, opt.enumeration);
    const auto lb = lower_bound_certificates(g, endos);
    const Family fam = make_family(g, metric, endos);

    ApproxCertificate cert;
    cert.metric = metric;
    cert.lower_bound = metric == Metric::endo ? lb.endo : lb.affine;
    cert.evidence = metric == Metric::endo ? lb.endo_evidence : lb.affine_evidence;

    detail::ThresholdSearch search(g, fam);
    GroupFunction greedy{search.greedy()};
    cert.upper_bound = approximability(greedy.images, fam).value;
    cert.witness = greedy;

    auto finish = [&] {
        cert.stats.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        return cert;
    };
    if (opt.bounds_only) return finish();

    std::vector<Elem> f;
    for (std::size_t k = cert.lower_bound; k < cert.upper_bound; ++k) {
        const auto r = search.run(k, opt.budget, cert.stats.nodes, f);
        if (r == detail::ThresholdSearch::Outcome::exhausted) {
            cert.lower_bound = k;
            return finish();
        }
        if (r == detail::ThresholdSearch::Outcome::found) {
            cert.upper_bound = k;
            cert.witness = GroupFunction{f};
            break;
        }
        // infeasible at k: the value is at least k + 1
        cert.lower_bound = k + 1;
    }
    cert.exact = true;
    cert.lower_bound = std::min(cert.lower_bound, cert.upper_bound);
    cert.value = cert.upper_bound;
    return finish();
}

}  // namespace affapp
