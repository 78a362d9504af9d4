#pragma once

// Congruence classes of the monoid of 4x4 integer matrices
//
//     [ A11   a*A12 ]
//     [ b*A21   A22 ]
//
// compared blockwise modulo (n, d, d, m), together with the star
// involution, the class j of diag(J2, J2), and the symmetry group
// G = { x : x* j x = j } with its two membership tests.

#include <array>
#include <cstddef>
#include <ostream>
#include <string>
#include <vector>

#include "hsym/arith.hpp"

namespace hsym {

using Mat4 = std::array<std::array<Int, 4>, 4>;

/// Canonical representative of a class [A]. Entries are stored with the
/// a and b factors stripped from the off-diagonal blocks (the matrix
/// A-tilde), each reduced into [0, modulus) for its block.
class SElement {
public:
    using Entries = std::array<Int, 16>;

    static SElement identity(const GroupParams& p)
    {
        Mat4 m{};
        for (int i = 0; i < 4; ++i)
            m[i][i] = 1;
        return from_stripped(p, m);
    }

    static SElement from_stripped(const GroupParams& p, const Mat4& stripped)
    {
        SElement x(p);
        for (int r = 0; r < 4; ++r)
            for (int c = 0; c < 4; ++c)
                x.e_[idx(r, c)] = mod(stripped[r][c], p.entry_modulus(r, c));
        return x;
    }

    /// From a full integer matrix in the monoid. Throws BlockDivisibility if
    /// the upper-right block is not divisible by a or the lower-left by b.
    static SElement from_full(const GroupParams& p, const Mat4& full)
    {
        Mat4 stripped = full;
        for (int r = 0; r < 4; ++r) {
            for (int c = 0; c < 4; ++c) {
                if (r / 2 == c / 2)
                    continue;
                Int f = r < 2 ? p.a() : p.b();
                if (full[r][c] % f != 0)
                    throw BlockDivisibility("entry (" + std::to_string(r + 1) + "," +
                                            std::to_string(c + 1) + ") = " +
                                            std::to_string(full[r][c]) + " is not divisible by " +
                                            (r < 2 ? "a" : "b") + " = " + std::to_string(f));
                stripped[r][c] = full[r][c] / f;
            }
        }
        return from_stripped(p, stripped);
    }

    static SElement from_blocks(const GroupParams& p, const IntMat2& a11, const IntMat2& a12,
                                const IntMat2& a21, const IntMat2& a22)
    {
        Mat4 m{};
        const IntMat2* blocks[2][2] = {{&a11, &a12}, {&a21, &a22}};
        for (int r = 0; r < 4; ++r)
            for (int c = 0; c < 4; ++c)
                m[r][c] = (*blocks[r / 2][c / 2])(r % 2, c % 2);
        return from_stripped(p, m);
    }

    static SElement block_diag(const GroupParams& p, const IntMat2& s, const IntMat2& t)
    {
        return from_blocks(p, s, IntMat2::zero(), IntMat2::zero(), t);
    }

    const GroupParams& params() const noexcept { return p_; }
    const Entries& entries() const noexcept { return e_; }

    /// Stripped canonical entry, 0-based.
    Int operator()(int r, int c) const { return e_[idx(r, c)]; }

    IntMat2 block(int block_row, int block_col) const
    {
        int r0 = 2 * block_row, c0 = 2 * block_col;
        return {(*this)(r0, c0), (*this)(r0, c0 + 1), (*this)(r0 + 1, c0), (*this)(r0 + 1, c0 + 1)};
    }

    Mat4 stripped() const
    {
        Mat4 m{};
        for (int r = 0; r < 4; ++r)
            for (int c = 0; c < 4; ++c)
                m[r][c] = (*this)(r, c);
        return m;
    }

    /// The canonical integer representative with a, b factors restored.
    Mat4 full() const
    {
        Mat4 m = stripped();
        for (int r = 0; r < 4; ++r)
            for (int c = 0; c < 4; ++c)
                if (r / 2 != c / 2)
                    m[r][c] *= r < 2 ? p_.a() : p_.b();
        return m;
    }

    friend bool operator==(const SElement&, const SElement&) = default;

    friend bool operator<(const SElement& x, const SElement& y) { return x.e_ < y.e_; }

    friend std::ostream& operator<<(std::ostream& os, const SElement& x)
    {
        os << "[";
        for (int r = 0; r < 4; ++r) {
            os << (r ? "; " : "");
            for (int c = 0; c < 4; ++c)
                os << (c ? " " : "") << x(r, c);
        }
        return os << "]";
    }

private:
    explicit SElement(const GroupParams& p) : p_(p) {}

    static constexpr std::size_t idx(int r, int c) { return static_cast<std::size_t>(4 * r + c); }

    GroupParams p_;
    Entries e_{};
};

struct SElementHash {
    std::size_t operator()(const SElement& x) const noexcept
    {
        std::size_t h = 1469598103934665603ull;
        for (Int v : x.entries()) {
            h ^= static_cast<std::size_t>(v) + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
        }
        return h;
    }
};

} // namespace hsym

template <>
struct std::hash<hsym::SElement> : hsym::SElementHash {};

namespace hsym {

/// Product of classes. In stripped coordinates the term A_rt * B_tc picks
/// up a factor ab exactly when rows r and columns c lie in the same block
/// and t lies in the other one.
inline SElement s_mul(const SElement& x, const SElement& y)
{
    const GroupParams& p = x.params();
    if (!(p == y.params()))
        throw ParamMismatch("s_mul: operands have different parameters");
    const Int ab = p.ab();
    Mat4 c{};
    for (int r = 0; r < 4; ++r) {
        for (int col = 0; col < 4; ++col) {
            detail::Wide acc = 0;
            for (int t = 0; t < 4; ++t) {
                detail::Wide term = static_cast<detail::Wide>(x(r, t)) * y(t, col);
                if (r / 2 == col / 2 && t / 2 != r / 2)
                    term *= ab;
                acc += term;
            }
            c[r][col] = wmod(acc, p.entry_modulus(r, col));
        }
    }
    return SElement::from_stripped(p, c);
}

inline SElement operator*(const SElement& x, const SElement& y) { return s_mul(x, y); }

/// A* = [A11^T, a A21^T; b A12^T, A22^T]; on stripped entries this is the
/// plain transpose.
inline SElement s_star(const SElement& x)
{
    Mat4 t{};
    for (int r = 0; r < 4; ++r)
        for (int c = 0; c < 4; ++c)
            t[r][c] = x(c, r);
    return SElement::from_stripped(x.params(), t);
}

/// The class of diag(J2, J2).
inline SElement j_element(const GroupParams& p)
{
    return SElement::block_diag(p, IntMat2::j2(), IntMat2::j2());
}

inline SElement minus_one(const GroupParams& p)
{
    return SElement::block_diag(p, -IntMat2::identity(), -IntMat2::identity());
}

/// x* j x = j.
inline bool is_member_def(const SElement& x)
{
    SElement j = j_element(x.params());
    return s_star(x) * j * x == j;
}

struct CongruenceFailure {
    std::string constraint; ///< "n:(1,2)", "m:(3,4)" or "d:(i,j)", 1-based column pair
    Int lhs;                ///< reduced left-hand side
    Int rhs;                ///< required residue
    Int modulus;
};

struct MembershipCertificate {
    bool verdict = true;
    std::vector<CongruenceFailure> failures;
};

/// det of the 2x2 submatrix of A-tilde on columns (i, j) and rows (k, l), 1-based.
inline detail::Wide stripped_minor(const SElement& x, int i, int j, int k, int l)
{
    return static_cast<detail::Wide>(x(k - 1, i - 1)) * x(l - 1, j - 1) -
           static_cast<detail::Wide>(x(k - 1, j - 1)) * x(l - 1, i - 1);
}

/// Determinant criterion for membership in G: six congruences on 2x2
/// minors of A-tilde.
inline MembershipCertificate is_member_criterion(const SElement& x)
{
    const GroupParams& p = x.params();
    const detail::Wide ab = p.ab();
    MembershipCertificate cert;
    auto require = [&](std::string id, detail::Wide value, Int rhs, Int modulus) {
        Int lhs = wmod(value, modulus);
        if (lhs != mod(rhs, modulus)) {
            cert.verdict = false;
            cert.failures.push_back({std::move(id), lhs, mod(rhs, modulus), modulus});
        }
    };
    require("n:(1,2)", stripped_minor(x, 1, 2, 1, 2) + ab * stripped_minor(x, 1, 2, 3, 4), 1, p.n());
    require("m:(3,4)", ab * stripped_minor(x, 3, 4, 1, 2) + stripped_minor(x, 3, 4, 3, 4), 1, p.m());
    static constexpr int mixed[4][2] = {{1, 3}, {1, 4}, {2, 3}, {2, 4}};
    for (const auto& [i, j] : mixed)
        require("d:(" + std::to_string(i) + "," + std::to_string(j) + ")",
                stripped_minor(x, i, j, 1, 2) + stripped_minor(x, i, j, 3, 4), 0, p.d());
    return cert;
}

/// Cheap boolean form of the determinant criterion.
inline bool is_member(const SElement& x)
{
    const GroupParams& p = x.params();
    const detail::Wide ab = p.ab();
    if (wmod(stripped_minor(x, 1, 2, 1, 2) + ab * stripped_minor(x, 1, 2, 3, 4), p.n()) != mod(1, p.n()))
        return false;
    if (wmod(ab * stripped_minor(x, 3, 4, 1, 2) + stripped_minor(x, 3, 4, 3, 4), p.m()) != mod(1, p.m()))
        return false;
    static constexpr int mixed[4][2] = {{1, 3}, {1, 4}, {2, 3}, {2, 4}};
    for (const auto& [i, j] : mixed)
        if (wmod(stripped_minor(x, i, j, 1, 2) + stripped_minor(x, i, j, 3, 4), p.d()) != 0)
            return false;
    return true;
}

/// x^{-1} = j* x* j for x in G.
inline SElement g_inverse(const SElement& x)
{
    if (!is_member_def(x))
        throw NotAMember("g_inverse: element is not in G");
    SElement j = j_element(x.params());
    return s_star(j) * s_star(x) * j;
}

} // namespace hsym
