#pragma once

// Exact integer and residue arithmetic: Bezout coefficients, reduction,
// 2x2 integer matrices and their inverses modulo k, and the parameter
// tuple (n, m, d, a, b) every other module is built on.

#include <array>
#include <cstdint>
#include <limits>
#include <numeric>
#include <ostream>
#include <stdexcept>
#include <string>

#include "hsym/errors.hpp"

namespace hsym {

using Int = std::int64_t;

namespace detail {

__extension__ typedef __int128 Wide;

inline Int narrow(Wide v)
{
    if (v > std::numeric_limits<Int>::max() || v < std::numeric_limits<Int>::min())
        throw std::overflow_error("hsym: 64-bit overflow in exact arithmetic");
    return static_cast<Int>(v);
}

} // namespace detail

/// Least nonnegative residue of x modulo k (k >= 1).
inline Int mod(Int x, Int k)
{
    Int r = x % k;
    return r < 0 ? r + k : r;
}

inline Int wmod(detail::Wide x, Int k)
{
    auto r = static_cast<Int>(x % k);
    return r < 0 ? r + k : r;
}

inline Int mulmod(Int x, Int y, Int k)
{
    return wmod(static_cast<detail::Wide>(x) * y, k);
}

inline Int checked_mul(Int x, Int y)
{
    Int r;
    if (__builtin_mul_overflow(x, y, &r))
        throw std::overflow_error("hsym: 64-bit overflow in exact arithmetic");
    return r;
}

struct BezoutResult {
    Int g;
    Int alpha;
    Int beta;

    friend bool operator==(const BezoutResult&, const BezoutResult&) = default;
};

/// Extended Euclid. g = gcd(|x|, |y|) >= 0 and alpha*x + beta*y = g;
/// bezout(0, 0) = {0, 0, 0}.
inline BezoutResult bezout(Int x, Int y)
{
    Int r0 = x, r1 = y;
    Int s0 = 1, s1 = 0;
    Int t0 = 0, t1 = 1;
    while (r1 != 0) {
        Int q = r0 / r1;
        Int tmp = r0 - q * r1;
        r0 = r1;
        r1 = tmp;
        tmp = s0 - q * s1;
        s0 = s1;
        s1 = tmp;
        tmp = t0 - q * t1;
        t0 = t1;
        t1 = tmp;
    }
    if (r0 < 0) {
        r0 = -r0;
        s0 = -s0;
        t0 = -t0;
    }
    if (r0 == 0)
        return {0, 0, 0};
    return {r0, s0, t0};
}

/// Integers n, m, d, a, b with d | n, d | m, n | abd, m | abd.
class GroupParams {
public:
    /// d = gcd(n, m), a = n / d, b = m / d.
    static GroupParams canonical(Int n, Int m)
    {
        if (n < 1 || m < 1)
            throw InvalidParams("n and m must be positive");
        Int d = std::gcd(n, m);
        return GroupParams(n, m, d, n / d, m / d);
    }

    static GroupParams general(Int n, Int m, Int d, Int a, Int b)
    {
        if (n < 1 || m < 1 || d < 1 || a < 1 || b < 1)
            throw InvalidParams("n, m, d, a, b must be positive");
        if (n % d != 0 || m % d != 0)
            throw InvalidParams("d must divide both n and m");
        Int abd = checked_mul(checked_mul(a, b), d);
        if (abd % n != 0 || abd % m != 0)
            throw InvalidParams("n and m must both divide abd");
        return GroupParams(n, m, d, a, b);
    }

    Int n() const noexcept { return n_; }
    Int m() const noexcept { return m_; }
    Int d() const noexcept { return d_; }
    Int a() const noexcept { return a_; }
    Int b() const noexcept { return b_; }
    Int ab() const noexcept { return a_ * b_; }
    Int lcm() const noexcept { return std::lcm(n_, m_); }

    bool is_canonical() const noexcept
    {
        return d_ == std::gcd(n_, m_) && a_ * d_ == n_ && b_ * d_ == m_;
    }

    /// Moduli of the four 2x2 blocks (n, d, d, m), indexed by block row/col.
    Int block_modulus(int block_row, int block_col) const noexcept
    {
        if (block_row == 0)
            return block_col == 0 ? n_ : d_;
        return block_col == 0 ? d_ : m_;
    }

    /// Modulus governing entry (r, c) of a 4x4 matrix, 0-based.
    Int entry_modulus(int r, int c) const noexcept { return block_modulus(r / 2, c / 2); }

    /// Number of congruence classes n^4 d^8 m^4, saturating at Int max.
    Int quotient_size() const noexcept
    {
        Int result = 1;
        auto times = [&](Int f, int count) {
            for (int i = 0; i < count; ++i) {
                if (__builtin_mul_overflow(result, f, &result)) {
                    result = std::numeric_limits<Int>::max();
                    return false;
                }
            }
            return true;
        };
        times(n_, 4) && times(d_, 8) && times(m_, 4);
        return result;
    }

    friend bool operator==(const GroupParams&, const GroupParams&) = default;

    friend std::ostream& operator<<(std::ostream& os, const GroupParams& p)
    {
        return os << "(n=" << p.n_ << ", m=" << p.m_ << ", d=" << p.d_ << ", a=" << p.a_
                  << ", b=" << p.b_ << ")";
    }

private:
    GroupParams(Int n, Int m, Int d, Int a, Int b) : n_(n), m_(m), d_(d), a_(a), b_(b) {}

    Int n_, m_, d_, a_, b_;
};

/// 2x2 integer matrix, row-major.
struct IntMat2 {
    std::array<Int, 4> e{1, 0, 0, 1};

    constexpr IntMat2() = default;
    constexpr IntMat2(Int a00, Int a01, Int a10, Int a11) : e{a00, a01, a10, a11} {}

    constexpr Int operator()(int r, int c) const { return e[static_cast<std::size_t>(2 * r + c)]; }
    constexpr Int& operator()(int r, int c) { return e[static_cast<std::size_t>(2 * r + c)]; }

    static constexpr IntMat2 identity() { return {1, 0, 0, 1}; }
    static constexpr IntMat2 zero() { return {0, 0, 0, 0}; }
    /// (0 1; -1 0)
    static constexpr IntMat2 j2() { return {0, 1, -1, 0}; }
    static constexpr IntMat2 unit(int r, int c)
    {
        IntMat2 u = zero();
        u(r, c) = 1;
        return u;
    }

    constexpr IntMat2 transpose() const { return {e[0], e[2], e[1], e[3]}; }
    /// Adjugate; equals the inverse whenever det = 1.
    constexpr IntMat2 adjugate() const { return {e[3], -e[1], -e[2], e[0]}; }

    friend IntMat2 operator*(const IntMat2& x, const IntMat2& y)
    {
        IntMat2 r;
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j)
                r(i, j) = detail::narrow(static_cast<detail::Wide>(x(i, 0)) * y(0, j) +
                                         static_cast<detail::Wide>(x(i, 1)) * y(1, j));
        return r;
    }

    friend IntMat2 operator-(const IntMat2& x) { return {-x.e[0], -x.e[1], -x.e[2], -x.e[3]}; }

    friend bool operator==(const IntMat2&, const IntMat2&) = default;

    friend std::ostream& operator<<(std::ostream& os, const IntMat2& x)
    {
        return os << "[[" << x.e[0] << "," << x.e[1] << "],[" << x.e[2] << "," << x.e[3] << "]]";
    }
};

inline Int det2(const IntMat2& x)
{
    return detail::narrow(static_cast<detail::Wide>(x(0, 0)) * x(1, 1) -
                          static_cast<detail::Wide>(x(0, 1)) * x(1, 0));
}

inline Int det2_mod(const IntMat2& x, Int k)
{
    return wmod(static_cast<detail::Wide>(x(0, 0)) * x(1, 1) -
                   static_cast<detail::Wide>(x(0, 1)) * x(1, 0),
               k);
}

/// 2x2 matrix over Z_k with entries held in [0, k).
class ResidueMat2 {
public:
    ResidueMat2(const IntMat2& m, Int modulus) : modulus_(modulus)
    {
        if (modulus < 1)
            throw InvalidParams("modulus must be positive");
        for (std::size_t i = 0; i < 4; ++i)
            m_.e[i] = mod(m.e[i], modulus);
    }

    Int modulus() const noexcept { return modulus_; }
    const IntMat2& value() const noexcept { return m_; }
    Int operator()(int r, int c) const { return m_(r, c); }

    friend ResidueMat2 operator*(const ResidueMat2& x, const ResidueMat2& y)
    {
        if (x.modulus_ != y.modulus_)
            throw ParamMismatch("residue matrices over different moduli");
        IntMat2 r;
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j)
                r(i, j) = wmod(static_cast<detail::Wide>(x(i, 0)) * y(0, j) +
                                  static_cast<detail::Wide>(x(i, 1)) * y(1, j),
                              x.modulus_);
        return {r, x.modulus_};
    }

    friend bool operator==(const ResidueMat2&, const ResidueMat2&) = default;

    friend std::ostream& operator<<(std::ostream& os, const ResidueMat2& x)
    {
        return os << x.m_ << " mod " << x.modulus_;
    }

private:
    IntMat2 m_;
    Int modulus_;
};

/// Inverse of x over Z_k via the adjugate; throws NonInvertible unless
/// gcd(det x, k) = 1.
inline ResidueMat2 inv2_mod(const IntMat2& x, Int k)
{
    if (k < 1)
        throw InvalidParams("modulus must be positive");
    Int det = det2_mod(x, k);
    auto [g, alpha, beta] = bezout(det, k);
    if (g != 1 && k != 1)
        throw NonInvertible("determinant " + std::to_string(det) + " is not a unit mod " +
                            std::to_string(k));
    Int det_inv = mod(alpha, k);
    IntMat2 adj = x.adjugate();
    IntMat2 r;
    for (std::size_t i = 0; i < 4; ++i)
        r.e[i] = mulmod(mod(adj.e[i], k), det_inv, k);
    return {r, k};
}

} // namespace hsym
