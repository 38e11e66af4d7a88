#pragma once

// Constructors for every group family used by the tool, the construction
// expression language, and the hard-coded catalog of groups of order <= 15.
//
// Construction expressions (either call or colon syntax):
//   cyclic(n)  elemabelian(p,r)  dihedral(2n)  dicyclic(4n)  sym(n)  alt(n)
//   heis(p)  modmax(p)  jk(p,l1,l2)  product(A,B)  file(path)
//   cyclic:6   elemabelian:2,3   jk:3,0,1   file:groups/q8.txt

#include <algorithm>
#include <cctype>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "affapp/cayley.hpp"
#include "affapp/group.hpp"
#include "affapp/jk.hpp"

namespace affapp {

namespace detail {

inline std::vector<Elem> greedy_generators(const Group& g) {
    std::vector<Elem> gens;
    std::vector<Elem> sub{0};
    while (sub.size() < g.order()) {
        std::vector<char> in(g.order(), 0);
        for (Elem x : sub) in[x] = 1;
        Elem next = 0;
        while (in[next]) ++next;
        gens.push_back(next);
        sub = generated_subgroup(g, gens);
    }
    if (gens.empty()) gens.push_back(0);
    return gens;
}

inline Group with_greedy_generators(Group g) {
    std::vector<Elem> table(g.order() * g.order());
    for (Elem a = 0; a < g.order(); ++a)
        for (Elem b = 0; b < g.order(); ++b) table[a * g.order() + b] = g.mul(a, b);
    auto gens = greedy_generators(g);
    return Group::from_table(g.name(), g.order(), std::move(table), std::move(gens));
}

inline void require(bool ok, const std::string& msg) {
    if (!ok) throw ParameterError(msg);
}

}  // namespace detail

inline Group cyclic(std::size_t n) {
    detail::require(n >= 1, "cyclic: n must be positive");
    return Group::tabulate("cyclic(" + std::to_string(n) + ")", n,
                           [n](Elem a, Elem b) { return static_cast<Elem>((a + b) % n); },
                           {n > 1 ? Elem{1} : Elem{0}});
}

/// (Z/p)^r; index = sum of coordinate_i * p^i.
inline Group elemabelian(std::size_t p, std::size_t r) {
    detail::require(jk::is_prime(p), "elemabelian: p must be prime");
    detail::require(r >= 1, "elemabelian: rank must be positive");
    std::size_t n = 1;
    std::vector<Elem> gens;
    for (std::size_t i = 0; i < r; ++i) {
        gens.push_back(static_cast<Elem>(n));
        n *= p;
        if (n > Group::kDenseLimit) throw CapacityError("elemabelian: order exceeds the dense limit");
    }
    return Group::tabulate(
        "elemabelian(" + std::to_string(p) + "," + std::to_string(r) + ")", n,
        [p, r](Elem a, Elem b) {
            Elem out = 0, w = 1;
            for (std::size_t i = 0; i < r; ++i) {
                out += static_cast<Elem>(((a % p) + (b % p)) % p) * w;
                a /= p;
                b /= p;
                w *= p;
            }
            return out;
        },
        std::move(gens));
}

/// Dihedral group of the given order 2n. Index k is r^k, index n + k is s r^k.
inline Group dihedral(std::size_t order) {
    detail::require(order >= 4 && order % 2 == 0, "dihedral: order must be even and >= 4");
    const std::size_t n = order / 2;
    return Group::tabulate(
        "dihedral(" + std::to_string(order) + ")", order,
        [n](Elem x, Elem y) {
            const std::size_t i = x % n, j = y % n;
            const bool sx = x >= n, sy = y >= n;
            // r^i s = s r^-i
            const std::size_t k = sy ? (j + n - i) % n : (i + j) % n;
            return static_cast<Elem>(k + ((sx != sy) ? n : 0));
        },
        {1, static_cast<Elem>(n)});
}

/// Dicyclic group of order 4n: <a, x | a^2n = 1, x^2 = a^n, x a x^-1 = a^-1>.
/// Index k is a^k, index 2n + k is x a^k.
inline Group dicyclic(std::size_t order) {
    detail::require(order >= 8 && order % 4 == 0, "dicyclic: order must be a multiple of 4 and >= 8");
    const std::size_t m = order / 2;  // order of a
    const std::size_t n = order / 4;
    return Group::tabulate(
        "dicyclic(" + std::to_string(order) + ")", order,
        [m, n](Elem x, Elem y) {
            const std::size_t i = x % m, j = y % m;
            const bool tx = x >= m, ty = y >= m;
            if (!tx && !ty) return static_cast<Elem>((i + j) % m);
            if (!tx && ty) return static_cast<Elem>(m + (j + m - i) % m);
            if (tx && !ty) return static_cast<Elem>(m + (i + j) % m);
            return static_cast<Elem>((n + j + m - i) % m);
        },
        {1, static_cast<Elem>(m)});
}

namespace detail {

inline Group permutation_group(std::string name, std::vector<std::vector<int>> perms) {
    // perms[0] is the identity because the lists are generated in lexicographic order
    std::sort(perms.begin(), perms.end());
    const std::size_t n = perms.size();
    auto index_of = [&](const std::vector<int>& p) {
        return static_cast<Elem>(std::lower_bound(perms.begin(), perms.end(), p) - perms.begin());
    };
    Group g = Group::tabulate(
        std::move(name), n,
        [&](Elem a, Elem b) {
            // (a b)(i) = a(b(i))
            std::vector<int> c(perms[a].size());
            for (std::size_t i = 0; i < c.size(); ++i) c[i] = perms[a][perms[b][i]];
            return index_of(c);
        },
        {0});
    return with_greedy_generators(std::move(g));
}

inline std::vector<std::vector<int>> all_permutations(int n, bool even_only) {
    std::vector<int> p(n);
    for (int i = 0; i < n; ++i) p[i] = i;
    std::vector<std::vector<int>> out;
    do {
        if (even_only) {
            int inversions = 0;
            for (int i = 0; i < n; ++i)
                for (int j = i + 1; j < n; ++j) inversions += p[i] > p[j];
            if (inversions % 2) continue;
        }
        out.push_back(p);
    } while (std::next_permutation(p.begin(), p.end()));
    return out;
}

}  // namespace detail

/// Symmetric group on n points, elements in lexicographic order of their images.
inline Group sym(int n) {
    detail::require(n >= 1, "sym: degree must be positive");
    if (n > 6) throw CapacityError("sym: degree above 6 exceeds the dense limit");
    return detail::permutation_group("sym(" + std::to_string(n) + ")", detail::all_permutations(n, false));
}

inline Group alt(int n) {
    detail::require(n >= 1, "alt: degree must be positive");
    if (n > 7) throw CapacityError("alt: degree above 7 exceeds the dense limit");
    return detail::permutation_group("alt(" + std::to_string(n) + ")", detail::all_permutations(n, true));
}

/// Nonabelian group of order p^3 and exponent p:
/// <x, y, t | x central, t y t^-1 = x y>, element x^a y^b t^c at a + p b + p^2 c.
inline Group heis(std::size_t p) {
    detail::require(jk::is_prime(p) && p != 2, "heis: p must be an odd prime");
    const std::size_t n = p * p * p;
    return Group::tabulate(
        "heis(" + std::to_string(p) + ")", n,
        [p](Elem u, Elem v) {
            const std::size_t a1 = u % p, b1 = (u / p) % p, c1 = u / (p * p);
            const std::size_t a2 = v % p, b2 = (v / p) % p, c2 = v / (p * p);
            const std::size_t a = (a1 + a2 + c1 * b2) % p;
            return static_cast<Elem>(a + p * ((b1 + b2) % p) + p * p * ((c1 + c2) % p));
        },
        {static_cast<Elem>(p), static_cast<Elem>(p * p)});
}

/// Nonabelian group of order p^3 and exponent p^2:
/// <x, t | x^{p^2} = t^p = 1, t x t^-1 = x^{1+p}>, element x^a t^c at a + p^2 c.
inline Group modmax(std::size_t p) {
    detail::require(jk::is_prime(p) && p != 2, "modmax: p must be an odd prime");
    const std::size_t m = p * p;
    return Group::tabulate(
        "modmax(" + std::to_string(p) + ")", m * p,
        [p, m](Elem u, Elem v) {
            const std::size_t a1 = u % m, c1 = u / m, a2 = v % m, c2 = v / m;
            std::size_t twist = 1;
            for (std::size_t i = 0; i < c1; ++i) twist = twist * (1 + p) % m;
            return static_cast<Elem>((a1 + a2 * twist) % m + m * ((c1 + c2) % p));
        },
        {1, static_cast<Elem>(m)});
}

// ---------------------------------------------------------------------------
// Construction expressions.

namespace detail {

struct SpecParser {
    std::string_view s;
    std::size_t pos = 0;

    [[noreturn]] void fail(const std::string& msg) const {
        throw FormatError("group spec '" + std::string(s) + "': " + msg);
    }
    void skip() {
        while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
    }
    std::string ident() {
        skip();
        std::size_t b = pos;
        while (pos < s.size() && (std::isalnum(static_cast<unsigned char>(s[pos])) || s[pos] == '_')) ++pos;
        if (b == pos) fail("expected a family name");
        return std::string(s.substr(b, pos - b));
    }
    std::size_t number() {
        skip();
        std::size_t b = pos;
        while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
        if (b == pos) fail("expected a number");
        if (pos - b > 9) fail("number too large");
        return std::stoul(std::string(s.substr(b, pos - b)));
    }
    bool eat(char c) {
        skip();
        if (pos < s.size() && s[pos] == c) {
            ++pos;
            return true;
        }
        return false;
    }
    void expect(char c) {
        if (!eat(c)) fail(std::string("expected '") + c + "'");
    }
};

}  // namespace detail

/// A parsed construction expression.
struct GroupSpec {
    std::string family;
    std::vector<std::size_t> args;
    std::vector<GroupSpec> factors;  // product only
    std::string path;                // file only

    /// Canonical call-syntax rendering; equal specs render identically.
    std::string canonical() const {
        if (family == "file") return "file(" + path + ")";
        std::string out = family + "(";
        if (family == "product") {
            out += factors[0].canonical() + "," + factors[1].canonical();
        } else {
            for (std::size_t i = 0; i < args.size(); ++i) out += (i ? "," : "") + std::to_string(args[i]);
        }
        return out + ")";
    }
};

namespace detail {

inline std::size_t arity(const std::string& family) {
    if (family == "elemabelian") return 2;
    if (family == "jk") return 3;
    if (family == "product") return 2;
    if (family == "cyclic" || family == "dihedral" || family == "dicyclic" || family == "sym" ||
        family == "alt" || family == "heis" || family == "modmax")
        return 1;
    return 0;
}

inline GroupSpec parse_spec(SpecParser& ps) {
    GroupSpec spec;
    spec.family = ps.ident();
    if (spec.family == "file") {
        ps.skip();
        if (ps.eat(':')) {
            spec.path = std::string(ps.s.substr(ps.pos));
            ps.pos = ps.s.size();
        } else {
            ps.expect('(');
            std::size_t end = ps.s.rfind(')');
            if (end == std::string_view::npos || end < ps.pos) ps.fail("unterminated file(...)");
            spec.path = std::string(ps.s.substr(ps.pos, end - ps.pos));
            ps.pos = end + 1;
        }
        if (spec.path.empty()) ps.fail("empty file path");
        return spec;
    }
    const std::size_t n = arity(spec.family);
    if (n == 0) ps.fail("unknown family '" + spec.family + "'");
    if (spec.family == "product") {
        ps.expect('(');
        spec.factors.push_back(parse_spec(ps));
        ps.expect(',');
        spec.factors.push_back(parse_spec(ps));
        ps.expect(')');
        return spec;
    }
    bool call = ps.eat('(');
    if (!call) ps.expect(':');
    for (std::size_t i = 0; i < n; ++i) {
        if (i) ps.expect(',');
        spec.args.push_back(ps.number());
    }
    if (call) ps.expect(')');
    return spec;
}

}  // namespace detail

inline GroupSpec parse_group_spec(std::string_view text) {
    detail::SpecParser ps{text};
    GroupSpec spec = detail::parse_spec(ps);
    ps.skip();
    if (ps.pos != text.size()) ps.fail("trailing characters");
    return spec;
}

struct ConstructOptions {
    bool allow_large_jk = false;
};

/// Builds and validates the carrier described by `spec`.
inline Group construct(const GroupSpec& spec, ConstructOptions opt = {}) {
    const auto& f = spec.family;
    const auto& a = spec.args;
    Group g = [&]() -> Group {
        if (f == "cyclic") return cyclic(a[0]);
        if (f == "elemabelian") return elemabelian(a[0], a[1]);
        if (f == "dihedral") return dihedral(a[0]);
        if (f == "dicyclic") return dicyclic(a[0]);
        if (f == "sym") return sym(static_cast<int>(a[0]));
        if (f == "alt") return alt(static_cast<int>(a[0]));
        if (f == "heis") return heis(a[0]);
        if (f == "modmax") return modmax(a[0]);
        if (f == "jk") {
            auto params = jk::make_params(static_cast<std::uint32_t>(a[0]), static_cast<std::uint32_t>(a[1]),
                                          static_cast<std::uint32_t>(a[2]), opt.allow_large_jk);
            return jk::JKGroup(params).carrier();
        }
        if (f == "product")
            return direct_product(construct(spec.factors[0], opt), construct(spec.factors[1], opt));
        if (f == "file") return load_cayley_file(spec.path);
        throw FormatError("unknown family '" + f + "'");
    }();
    auto report = validate(g);
    if (!report.ok()) throw GroupAxiomError(g.name() + " failed validation: " + report.failures.front());
    return g;
}

inline Group construct(std::string_view text, ConstructOptions opt = {}) {
    return construct(parse_group_spec(text), opt);
}

/// One representative of every isomorphism class of order <= n (n <= 15),
/// ordered by order and then as listed in the classical classification.
inline std::vector<Group> catalog_up_to(std::size_t n) {
    if (n > 15) throw CapacityError("catalog: only orders up to 15 are classified");
    static const std::vector<std::pair<std::size_t, std::vector<std::string>>> kClasses = {
        {1, {"cyclic(1)"}},
        {2, {"cyclic(2)"}},
        {3, {"cyclic(3)"}},
        {4, {"cyclic(4)", "elemabelian(2,2)"}},
        {5, {"cyclic(5)"}},
        {6, {"cyclic(6)", "sym(3)"}},
        {7, {"cyclic(7)"}},
        {8, {"cyclic(8)", "product(cyclic(4),cyclic(2))", "elemabelian(2,3)", "dihedral(8)", "dicyclic(8)"}},
        {9, {"cyclic(9)", "elemabelian(3,2)"}},
        {10, {"cyclic(10)", "dihedral(10)"}},
        {11, {"cyclic(11)"}},
        {12, {"cyclic(12)", "product(cyclic(6),cyclic(2))", "dihedral(12)", "alt(4)", "dicyclic(12)"}},
        {13, {"cyclic(13)"}},
        {14, {"cyclic(14)", "dihedral(14)"}},
        {15, {"cyclic(15)"}},
    };
    std::vector<Group> out;
    for (const auto& [order, specs] : kClasses) {
        if (order > n) break;
        for (const auto& s : specs) out.push_back(construct(s));
    }
    return out;
}

}  // namespace affapp
