#pragma once

// Hamming-ball counting and the general approximability bounds.

#include <cmath>
#include <numbers>
#include <span>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "affapp/errors.hpp"

namespace affapp {

using BigInt = boost::multiprecision::cpp_int;

struct CircleBall {
    BigInt gamma;  // functions at distance exactly k
    BigInt nu;     // functions at distance at most k
};

inline BigInt binomial(std::size_t n, std::size_t k) {
    if (k > n) return 0;
    BigInt r = 1;
    for (std::size_t i = 1; i <= k; ++i) {
        r *= n - k + i;
        r /= i;
    }
    return r;
}

inline BigInt big_pow(std::size_t base, std::size_t exp) {
    BigInt r = 1;
    for (std::size_t i = 0; i < exp; ++i) r *= base;
    return r;
}

/// gamma_k = C(m1,k) (m2-1)^k,  nu_k = gamma_0 + ... + gamma_k
inline CircleBall circle_and_ball_sizes(std::size_t m1, std::size_t m2, std::size_t k) {
    if (k > m1) throw ParameterError("k must lie in 0..m1");
    if (m2 < 1) throw ParameterError("m2 must be positive");
    CircleBall out;
    for (std::size_t i = 0; i <= k; ++i) {
        BigInt g = binomial(m1, i) * big_pow(m2 - 1, i);
        out.nu += g;
        if (i == k) out.gamma = g;
    }
    return out;
}

struct Rational {
    BigInt num;
    BigInt den;

    double value() const { return static_cast<double>(num) / static_cast<double>(den); }
    std::string str() const {
        return den == 1 ? num.str() : num.str() + "/" + den.str();
    }
};

enum class UpperBranch { e_squared, log_terms };

inline const char* upper_branch_name(UpperBranch b) {
    return b == UpperBranch::e_squared ? "e^2*m1/m2" : "fval*ln(m2)+ln(m1)";
}

struct BoundReport {
    std::size_t m1 = 0;
    std::size_t m2 = 0;
    double fval = 0;
    double L = 0;  // log_{m2} m1
    std::vector<BigInt> gamma;
    std::vector<BigInt> nu;
    Rational lower;  // max{1, m1/m2}, reduced
    double upper = 0;
    double upper_e_squared = 0;
    double upper_log_terms = 0;
    UpperBranch active = UpperBranch::e_squared;
};

/// Lower bound max{1, m1/m2} for families containing the constants; upper bound
/// max{e^2 m1/m2, fval ln m2 + ln m1} for families of size at most m2^fval.
inline BoundReport gen_app_bounds(std::size_t m1, std::size_t m2, double fval) {
    if (m1 < 2 || m2 < 2) throw ParameterError("m1 and m2 must be at least 2");
    if (!(fval > 0)) throw ParameterError("fval must be positive");
    BoundReport r;
    r.m1 = m1;
    r.m2 = m2;
    r.fval = fval;
    r.L = std::log(static_cast<double>(m1)) / std::log(static_cast<double>(m2));
    for (std::size_t k = 0; k <= m1; ++k) {
        auto cb = circle_and_ball_sizes(m1, m2, k);
        r.gamma.push_back(cb.gamma);
        r.nu.push_back(cb.nu);
    }
    if (m1 <= m2) {
        r.lower = {1, 1};
    } else {
        const BigInt g = boost::multiprecision::gcd(BigInt(m1), BigInt(m2));
        r.lower = {BigInt(m1) / g, BigInt(m2) / g};
    }
    constexpr double e2 = std::numbers::e * std::numbers::e;
    r.upper_e_squared = e2 * static_cast<double>(m1) / static_cast<double>(m2);
    r.upper_log_terms = fval * std::log(static_cast<double>(m2)) + std::log(static_cast<double>(m1));
    r.active = r.upper_e_squared >= r.upper_log_terms ? UpperBranch::e_squared : UpperBranch::log_terms;
    r.upper = std::max(r.upper_e_squared, r.upper_log_terms);
    return r;
}

struct MainBounds {
    double endo = 0;    // ln^2 n / ln 2 + ln n
    double affine = 0;  // ln^2 n / ln 2 + 2 ln n
};

inline MainBounds main_theorem_bounds(std::size_t n) {
    if (n < 2) throw ParameterError("group order must be at least 2");
    const double x = std::log(static_cast<double>(n));
    MainBounds b{x * x / std::numbers::ln2 + x, x * x / std::numbers::ln2 + 2 * x};
    if (n >= 8 && b.endo < std::numbers::e * std::numbers::e - 1e-9)
        throw Error("main bound below e^2 at n = " + std::to_string(n));
    return b;
}

/// min over all g: [m1] -> [m2] of max over the family of agreements with g.
/// Functions are image tables of length m1. Exhaustive branch and bound over g;
/// at each point, values that no member takes there are interchangeable, so
/// only one of them is tried.
inline std::size_t brute_force_app(std::size_t m1, std::size_t m2,
                                   std::span<const std::vector<std::size_t>> family) {
    if (m1 == 0 || m2 == 0) throw ParameterError("m1 and m2 must be positive");
    BigInt space = big_pow(m2, m1);
    if (space > 1000000) throw CapacityError("brute_force_app needs m2^m1 <= 10^6");
    for (const auto& h : family) {
        if (h.size() != m1) throw ParameterError("family member has the wrong length");
        for (auto v : h)
            if (v >= m2) throw ParameterError("family member value out of range");
    }
    if (family.empty()) return 0;

    // hits[x][j] = members taking the j-th distinct value at x; an empty list is the free value
    std::vector<std::vector<std::vector<std::size_t>>> hits(m1);
    for (std::size_t x = 0; x < m1; ++x) {
        std::vector<std::vector<std::size_t>> by_value(m2);
        for (std::size_t i = 0; i < family.size(); ++i) by_value[family[i][x]].push_back(i);
        bool free_value = false;
        for (auto& members : by_value) {
            if (members.empty()) {
                free_value = true;
                continue;
            }
            hits[x].push_back(std::move(members));
        }
        if (free_value) hits[x].insert(hits[x].begin(), std::vector<std::size_t>{});
    }

    std::vector<std::size_t> count(family.size(), 0);
    std::size_t best = m1 + 1;
    std::size_t cur_max = 0;

    auto rec = [&](auto&& self, std::size_t x) -> void {
        if (cur_max >= best) return;
        if (x == m1) {
            best = cur_max;
            return;
        }
        for (const auto& members : hits[x]) {
            const std::size_t saved = cur_max;
            for (auto i : members) cur_max = std::max(cur_max, ++count[i]);
            self(self, x + 1);
            for (auto i : members) --count[i];
            cur_max = saved;
        }
    };
    rec(rec, 0);
    return best;
}

}  // namespace affapp
