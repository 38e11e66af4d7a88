#pragma once

// Jonah-Konvisser groups J_{p,lambda}.
//
// J_{p,lambda} is the class-2 p-group on a1, a2, b1, b2 with
//   a1^p = [a1,b1],  a2^p = [a1, b1^l1 b2^l2],  b1^p = [a2, b1 b2],  b2^p = [a2,b2],
//   [a1,a2] = [b1,b2] = 1.
// Every element has a unique normal form
//   a1^k1 a2^k2 b1^l1 b2^l2 [a1,b1]^r1 [a1,b2]^r2 [a2,b1]^r3 [a2,b2]^r4
// and is stored as the octuple (k1,k2,l1,l2,r1,r2,r3,r4). The element index is
// the octuple read as a base-p number with k1 as the least significant digit,
// so the center (k = l = 0) is exactly the multiples of p^4.
//
// Everything that needs the full endomorphism classification (endo_reachable and
// the verifiers built on it) requires lambda2 = 1 and is conditional on that
// classification: every endomorphism is either a homomorphism into the center,
// or id + phi for such a homomorphism phi.

#include <array>
#include <atomic>
#include <chrono>
#include <cstdint>
#include <mutex>
#include <optional>
#include <random>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "affapp/group.hpp"

namespace affapp::jk {

using Octuple = std::array<std::uint32_t, 8>;
using Vec4 = std::array<std::uint32_t, 4>;
using Mat4 = std::array<Vec4, 4>;

inline bool is_prime(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

struct Params {
    std::uint32_t p = 3;
    std::uint32_t lambda1 = 0;
    std::uint32_t lambda2 = 1;

    bool classified() const noexcept { return lambda2 == 1; }
    std::string name() const {
        return "jk(" + std::to_string(p) + "," + std::to_string(lambda1) + "," +
               std::to_string(lambda2) + ")";
    }
};

/// Validates (p, lambda). Primes above 3 need `allow_large` (order p^8).
inline Params make_params(std::uint32_t p, std::uint32_t lambda1, std::uint32_t lambda2,
                          bool allow_large = false) {
    if (!is_prime(p) || p == 2) throw ParameterError("jk: p must be an odd prime");
    if (p > 3 && !allow_large)
        throw CapacityError("jk: p > 3 needs the large-group flag (order " + std::to_string(p) +
                            "^8)");
    if (p > 13) throw CapacityError("jk: p > 13 does not fit 32-bit element indices");
    const bool ok = (lambda1 == 1 && lambda2 == 0) || (lambda2 == 1 && lambda1 < p);
    if (!ok) throw ParameterError("jk: lambda must be (1,0) or (l1,1) with 0 <= l1 < p");
    return Params{p, lambda1, lambda2};
}

class JKGroup {
public:
    explicit JKGroup(Params params) : params_(params) {
        const std::uint32_t p = params_.p;
        pow_[0] = 1;
        for (int i = 1; i <= 8; ++i) pow_[i] = pow_[i - 1] * p;
    }

    const Params& params() const noexcept { return params_; }
    std::uint32_t p() const noexcept { return params_.p; }
    std::size_t order() const noexcept { return pow_[8]; }
    std::size_t center_order() const noexcept { return pow_[4]; }

    Octuple decode(Elem x) const {
        Octuple o{};
        for (int i = 0; i < 8; ++i) {
            o[i] = x % params_.p;
            x /= params_.p;
        }
        return o;
    }

    Elem encode(const Octuple& o) const {
        Elem x = 0;
        for (int i = 7; i >= 0; --i) x = x * params_.p + o[i];
        return x;
    }

    /// Normal form of x*y. Central parts add; moving the a-part of y left across
    /// the b-part of x contributes -l_i(x) k_j(y) to [a_j,b_i]; each overflow of
    /// an a/b exponent adds the central value of that generator's p-th power.
    Octuple multiply(const Octuple& x, const Octuple& y) const {
        const std::int64_t p = params_.p;
        std::array<std::int64_t, 4> r{};
        for (int i = 0; i < 4; ++i) r[i] = static_cast<std::int64_t>(x[4 + i]) + y[4 + i];
        // [a_j, b_i] sits at r[2(j-1) + (i-1)]
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j)
                r[2 * j + i] -= static_cast<std::int64_t>(x[2 + i]) * y[j];

        Octuple z{};
        for (int i = 0; i < 4; ++i) {
            std::uint32_t s = x[i] + y[i];
            if (s >= params_.p) {
                s -= params_.p;
                add_pth_power(r, i);
            }
            z[i] = s;
        }
        for (int i = 0; i < 4; ++i) z[4 + i] = static_cast<std::uint32_t>(((r[i] % p) + p) % p);
        return z;
    }

    Elem mul(Elem a, Elem b) const { return encode(multiply(decode(a), decode(b))); }

    Octuple inverse(const Octuple& x) const {
        const std::uint32_t p = params_.p;
        Octuple y{};
        for (int i = 0; i < 4; ++i) y[i] = (p - x[i]) % p;
        Octuple t = multiply(x, y);  // central by construction
        for (int i = 0; i < 4; ++i) y[4 + i] = (p - t[4 + i]) % p;
        return y;
    }

    Elem inv(Elem a) const { return encode(inverse(decode(a))); }

    /// Closed-form p-th power, valid for lambda2 = 1:
    /// r = (k1 + lambda1 k2, k2, l1, l1 + l2), k = l = 0.
    Octuple power_formula(const Octuple& x) const {
        if (!params_.classified()) throw ScopeError("power formula requires lambda2 = 1");
        const std::uint32_t p = params_.p;
        Octuple z{};
        z[4] = (x[0] + params_.lambda1 * x[1]) % p;
        z[5] = x[1] % p;
        z[6] = x[2] % p;
        z[7] = (x[2] + x[3]) % p;
        return z;
    }

    static bool is_central(const Octuple& x) noexcept {
        return x[0] == 0 && x[1] == 0 && x[2] == 0 && x[3] == 0;
    }
    bool is_central(Elem x) const noexcept { return x % pow_[4] == 0; }

    Elem a1() const noexcept { return pow_[0]; }
    Elem a2() const noexcept { return pow_[1]; }
    Elem b1() const noexcept { return pow_[2]; }
    Elem b2() const noexcept { return pow_[3]; }

    /// Rule-based carrier; too large for a dense table.
    affapp::Group carrier() const {
        JKGroup self = *this;
        std::vector<Elem> z;
        z.reserve(center_order());
        for (Elem t = 0; t < center_order(); ++t) z.push_back(t * pow_[4]);
        return affapp::Group::from_rules(
            params_.name(), order(), [self](Elem a, Elem b) { return self.mul(a, b); },
            [self](Elem a) { return self.inv(a); }, {a1(), a2(), b1(), b2()}, std::move(z));
    }

private:
    void add_pth_power(std::array<std::int64_t, 4>& r, int generator) const {
        switch (generator) {
            case 0: r[0] += 1; break;  // a1^p = [a1,b1]
            case 1:                    // a2^p = [a1,b1]^l1 [a1,b2]^l2
                r[0] += params_.lambda1;
                r[1] += params_.lambda2;
                break;
            case 2:  // b1^p = [a2,b1][a2,b2]
                r[2] += 1;
                r[3] += 1;
                break;
            default: r[3] += 1; break;  // b2^p = [a2,b2]
        }
    }

    Params params_;
    std::array<std::uint32_t, 9> pow_{};
};

// ---------------------------------------------------------------------------
// Linear algebra over F_p for the sigma map.

inline std::uint32_t pow_mod(std::uint64_t b, std::uint64_t e, std::uint64_t m) {
    std::uint64_t r = 1 % m;
    b %= m;
    while (e) {
        if (e & 1) r = r * b % m;
        b = b * b % m;
        e >>= 1;
    }
    return static_cast<std::uint32_t>(r);
}

inline std::uint32_t det_mod(Mat4 m, std::uint32_t p) {
    std::uint64_t det = 1;
    for (int c = 0; c < 4; ++c) {
        int piv = -1;
        for (int r = c; r < 4; ++r)
            if (m[r][c] % p) {
                piv = r;
                break;
            }
        if (piv < 0) return 0;
        if (piv != c) {
            std::swap(m[piv], m[c]);
            det = (p - det % p) % p;
        }
        det = det * m[c][c] % p;
        const std::uint64_t inv = pow_mod(m[c][c], p - 2, p);
        for (int r = c + 1; r < 4; ++r) {
            const std::uint64_t f = m[r][c] * inv % p;
            for (int k = c; k < 4; ++k) m[r][k] = static_cast<std::uint32_t>((m[r][k] + p - f * m[c][k] % p) % p);
        }
    }
    return static_cast<std::uint32_t>(det);
}

inline Mat4 mat_mul(const Mat4& a, const Mat4& b, std::uint32_t p) {
    Mat4 c{};
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) {
            std::uint64_t s = 0;
            for (int k = 0; k < 4; ++k) s += static_cast<std::uint64_t>(a[i][k]) * b[k][j];
            c[i][j] = static_cast<std::uint32_t>(s % p);
        }
    return c;
}

inline Mat4 identity4() {
    Mat4 m{};
    for (int i = 0; i < 4; ++i) m[i][i] = 1;
    return m;
}

inline Mat4 mat_pow(Mat4 b, std::uint64_t e, std::uint32_t p) {
    Mat4 r = identity4();
    while (e) {
        if (e & 1) r = mat_mul(r, b, p);
        b = mat_mul(b, b, p);
        e >>= 1;
    }
    return r;
}

/// An automorphism of F_p^4 with no nonzero fixed vector.
class SigmaMap {
public:
    /// Rejects singular matrices and matrices with eigenvalue 1.
    static SigmaMap make(std::uint32_t p, const Mat4& matrix) {
        SigmaMap s = unchecked(p, matrix);
        if (det_mod(s.m_, p) == 0) throw ArgumentError("sigma is not invertible");
        Mat4 shifted = s.m_;
        for (int i = 0; i < 4; ++i) shifted[i][i] = (shifted[i][i] + p - 1) % p;
        if (det_mod(shifted, p) == 0)
            throw ArgumentError("sigma is not fixed-point free (1 is an eigenvalue)");
        return s;
    }

    /// No checks; used to build deliberately bad maps.
    static SigmaMap unchecked(std::uint32_t p, const Mat4& matrix) {
        SigmaMap s;
        s.p_ = p;
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j) s.m_[i][j] = matrix[i][j] % p;
        return s;
    }

    std::uint32_t p() const noexcept { return p_; }
    const Mat4& matrix() const noexcept { return m_; }

    Vec4 apply(const Vec4& v) const {
        Vec4 out{};
        for (int i = 0; i < 4; ++i) {
            std::uint64_t s = 0;
            for (int j = 0; j < 4; ++j) s += static_cast<std::uint64_t>(m_[i][j]) * v[j];
            out[i] = static_cast<std::uint32_t>(s % p_);
        }
        return out;
    }

private:
    std::uint32_t p_ = 2;
    Mat4 m_{};
};

/// Companion matrix of x^4 + c3 x^3 + c2 x^2 + c1 x + c0.
inline Mat4 companion(const Vec4& c, std::uint32_t p) {
    Mat4 m{};
    for (int i = 1; i < 4; ++i) m[i][i - 1] = 1;
    for (int i = 0; i < 4; ++i) m[i][3] = (p - c[i] % p) % p;
    return m;
}

/// Whether `m` has multiplicative order exactly p^4 - 1.
inline bool has_singer_order(const Mat4& m, std::uint32_t p) {
    const std::uint64_t n = static_cast<std::uint64_t>(p) * p * p * p - 1;
    if (mat_pow(m, n, p) != identity4()) return false;
    std::uint64_t rest = n;
    for (std::uint64_t q = 2; q <= rest; ++q) {
        if (rest % q) continue;
        while (rest % q == 0) rest /= q;
        if (mat_pow(m, n / q, p) == identity4()) return false;
    }
    return true;
}

/// Companion matrix of the lexicographically first primitive quartic over F_p.
inline SigmaMap singer_sigma(std::uint32_t p) {
    for (std::uint32_t c3 = 0; c3 < p; ++c3)
        for (std::uint32_t c2 = 0; c2 < p; ++c2)
            for (std::uint32_t c1 = 0; c1 < p; ++c1)
                for (std::uint32_t c0 = 1; c0 < p; ++c0) {
                    Mat4 m = companion({c0, c1, c2, c3}, p);
                    if (has_singer_order(m, p)) return SigmaMap::make(p, m);
                }
    throw Error("no primitive quartic found");  // unreachable for primes
}

/// Applies sigma to (k1,k2,l1,l2) and to (r1,r2,r3,r4) separately.
inline GroupFunction final_prop_function(const JKGroup& j, const SigmaMap& sigma) {
    if (!j.params().classified()) throw ScopeError("requires lambda2 = 1");
    if (sigma.p() != j.p()) throw ArgumentError("sigma is over the wrong field");
    GroupFunction f;
    f.images.resize(j.order());
    for (Elem x = 0; x < j.order(); ++x) {
        Octuple o = j.decode(x);
        Vec4 top = sigma.apply({o[0], o[1], o[2], o[3]});
        Vec4 bottom = sigma.apply({o[4], o[5], o[6], o[7]});
        f.images[x] = j.encode({top[0], top[1], top[2], top[3], bottom[0], bottom[1], bottom[2], bottom[3]});
    }
    return f;
}

/// Whether some endomorphism sends d to e, by the classification:
/// identity only goes to identity; a nontrivial central d goes to 1 or d;
/// a noncentral d goes anywhere in Z(J) or in d Z(J).
inline bool endo_reachable(const JKGroup& j, const Octuple& d, const Octuple& e) {
    if (!j.params().classified()) throw ScopeError("classification requires lambda2 = 1");
    const bool d_identity = d == Octuple{};
    const bool e_identity = e == Octuple{};
    if (d_identity) return e_identity;
    if (JKGroup::is_central(d)) return e_identity || e == d;
    if (JKGroup::is_central(e)) return true;
    return d[0] == e[0] && d[1] == e[1] && d[2] == e[2] && d[3] == e[3];
}

inline bool endo_reachable(const JKGroup& j, Elem d, Elem e) {
    return endo_reachable(j, j.decode(d), j.decode(e));
}

enum class ScanMode { full, sampled };

struct VerifyReport {
    ScanMode mode = ScanMode::full;
    std::uint64_t pairs_scanned = 0;
    std::uint64_t violation_count = 0;
    /// First violating pairs (x, y) in lexicographic order, capped.
    std::vector<std::pair<Elem, Elem>> violations;
    double seconds = 0;

    bool ok() const noexcept { return violation_count == 0; }
};

struct VerifyOptions {
    ScanMode mode = ScanMode::full;
    std::uint64_t samples = 1'000'000;
    std::uint64_t seed = 1;
    std::size_t max_reported = 64;
    unsigned threads = 0;  // 0: hardware concurrency
};

/// Checks that no two distinct x, y have y^-1 x endo-reachable to f(y)^-1 f(x).
/// Zero violations means f agrees with every affine map on at most one point.
inline VerifyReport verify_affapp_one(const JKGroup& j, const GroupFunction& f, VerifyOptions opt = {}) {
    if (!j.params().classified()) throw ScopeError("classification requires lambda2 = 1");
    if (f.size() != j.order()) throw ArgumentError("function has the wrong domain size");
    const auto t0 = std::chrono::steady_clock::now();
    const auto n = static_cast<Elem>(j.order());

    std::vector<Octuple> dec(n);
    std::vector<Elem> inv(n);
    for (Elem x = 0; x < n; ++x) {
        dec[x] = j.decode(x);
        inv[x] = j.encode(j.inverse(dec[x]));
    }
    auto violates = [&](Elem x, Elem y) {
        Octuple d = j.multiply(dec[inv[y]], dec[x]);
        Octuple e = j.multiply(dec[inv[f.images[y]]], dec[f.images[x]]);
        return endo_reachable(j, d, e);
    };

    VerifyReport report;
    report.mode = opt.mode;
    std::mutex mu;
    auto record = [&](std::uint64_t scanned, std::uint64_t count, std::vector<std::pair<Elem, Elem>>& found) {
        std::lock_guard lock(mu);
        report.pairs_scanned += scanned;
        report.violation_count += count;
        report.violations.insert(report.violations.end(), found.begin(), found.end());
    };

    unsigned threads = opt.threads ? opt.threads : std::max(1u, std::thread::hardware_concurrency());
    if (opt.mode == ScanMode::full) {
        std::atomic<Elem> next{0};
        auto worker = [&] {
            std::uint64_t scanned = 0, count = 0;
            std::vector<std::pair<Elem, Elem>> found;
            for (Elem y; (y = next.fetch_add(1)) < n;)
                for (Elem x = 0; x < n; ++x) {
                    if (x == y) continue;
                    ++scanned;
                    if (violates(x, y)) {
                        ++count;
                        if (found.size() < opt.max_reported) found.emplace_back(x, y);
                    }
                }
            record(scanned, count, found);
        };
        std::vector<std::jthread> pool;
        for (unsigned t = 1; t < threads; ++t) pool.emplace_back(worker);
        worker();
    } else {
        std::mt19937_64 rng(opt.seed);
        std::uniform_int_distribution<Elem> pick(0, n - 1);
        std::uint64_t scanned = 0, count = 0;
        std::vector<std::pair<Elem, Elem>> found;
        while (scanned < opt.samples) {
            Elem x = pick(rng), y = pick(rng);
            if (x == y) continue;
            ++scanned;
            if (violates(x, y)) {
                ++count;
                if (found.size() < opt.max_reported) found.emplace_back(x, y);
            }
        }
        record(scanned, count, found);
    }
    std::sort(report.violations.begin(), report.violations.end());
    if (report.violations.size() > opt.max_reported) report.violations.resize(opt.max_reported);
    report.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return report;
}

/// A function with f(g) outside the endo-reachable set of g for every g.
inline GroupFunction enapp_zero_witness(const JKGroup& j) {
    if (!j.params().classified()) throw ScopeError("classification requires lambda2 = 1");
    const auto n = static_cast<Elem>(j.order());
    const auto q4 = static_cast<Elem>(j.center_order());
    GroupFunction f;
    f.images.resize(n);
    f.images[0] = 1;
    for (Elem g = 1; g < n; ++g) {
        if (j.is_central(g)) {
            // smallest central element other than 1 and g
            f.images[g] = g == q4 ? 2 * q4 : q4;
        } else {
            // smallest noncentral coset representative different from g's coset
            const Elem coset = g % q4;
            f.images[g] = coset == 1 ? 2 : 1;
        }
    }
    return f;
}

struct ClassificationReport {
    std::uint64_t samples = 0;
    std::uint64_t failures = 0;
    bool ok() const noexcept { return failures == 0; }
};

/// Draws random linear maps psi from the quotient (k1,k2,l1,l2) into the center,
/// forms phi = psi o projection, and checks that phi and id + phi are
/// multiplicative on a random pair.
inline ClassificationReport sample_check_classification(const JKGroup& j, std::uint64_t samples,
                                                        std::uint64_t seed = 7,
                                                        const std::optional<Mat4>& fixed_psi = {}) {
    if (!j.params().classified()) throw ScopeError("classification requires lambda2 = 1");
    const std::uint32_t p = j.p();
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<std::uint32_t> coef(0, p - 1);
    std::uniform_int_distribution<Elem> pick(0, static_cast<Elem>(j.order() - 1));
    ClassificationReport rep;
    for (std::uint64_t s = 0; s < samples; ++s) {
        Mat4 psi{};
        if (fixed_psi) {
            psi = *fixed_psi;
        } else {
            for (auto& row : psi)
                for (auto& c : row) c = coef(rng);
        }
        const SigmaMap lin = SigmaMap::unchecked(p, psi);
        auto phi = [&](const Octuple& x) {
            Vec4 r = lin.apply({x[0], x[1], x[2], x[3]});
            return Octuple{0, 0, 0, 0, r[0], r[1], r[2], r[3]};
        };
        auto id_plus_phi = [&](const Octuple& x) { return j.multiply(x, phi(x)); };
        const Octuple x = j.decode(pick(rng));
        const Octuple y = j.decode(pick(rng));
        const Octuple xy = j.multiply(x, y);
        ++rep.samples;
        if (phi(xy) != j.multiply(phi(x), phi(y)) ||
            id_plus_phi(xy) != j.multiply(id_plus_phi(x), id_plus_phi(y)))
            ++rep.failures;
    }
    return rep;
}

}  // namespace affapp::jk
