#pragma once

// G as an extension
//
//     1 -> S_{d,n} x S_{d,m} -> G_{n,m} -> Sp_k(4, Z_d) -> 1,   k = nm / d^2,
//
// where Sp_k is defined through the twisted product *_k on M4(Z_d), pi
// strips the a, b factors and reduces mod d, and S_{k,l} is the group of
// classes [I + kA] in M2(Z_l) with Tr A + k det A = 0 mod l/k.

#include <algorithm>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <unordered_set>
#include <vector>

#include "hsym/closure.hpp"
#include "hsym/enumeration.hpp"

namespace hsym {

/// Element of M4(Z_d) with the twist k held mod d.
struct SpkElement {
    Int d = 1;
    Int k = 0;
    std::array<Int, 16> e{};

    static SpkElement make(Int d, Int k, const Mat4& m)
    {
        if (d < 1)
            throw InvalidParams("modulus must be positive");
        SpkElement x{d, mod(k, d), {}};
        for (int r = 0; r < 4; ++r)
            for (int c = 0; c < 4; ++c)
                x.e[static_cast<std::size_t>(4 * r + c)] = mod(m[r][c], d);
        return x;
    }

    static SpkElement identity(Int d, Int k)
    {
        Mat4 m{};
        for (int i = 0; i < 4; ++i)
            m[i][i] = 1;
        return make(d, k, m);
    }

    static SpkElement j(Int d, Int k)
    {
        Mat4 m{};
        m[0][1] = m[2][3] = 1;
        m[1][0] = m[3][2] = -1;
        return make(d, k, m);
    }

    Int operator()(int r, int c) const { return e[static_cast<std::size_t>(4 * r + c)]; }

    Mat4 matrix() const
    {
        Mat4 m{};
        for (int r = 0; r < 4; ++r)
            for (int c = 0; c < 4; ++c)
                m[r][c] = (*this)(r, c);
        return m;
    }

    SpkElement transpose() const
    {
        Mat4 t{};
        for (int r = 0; r < 4; ++r)
            for (int c = 0; c < 4; ++c)
                t[r][c] = (*this)(c, r);
        return make(d, k, t);
    }

    friend bool operator==(const SpkElement&, const SpkElement&) = default;
    friend bool operator<(const SpkElement& x, const SpkElement& y) { return x.e < y.e; }
};

struct SpkElementHash {
    std::size_t operator()(const SpkElement& x) const noexcept
    {
        std::size_t h = 0xcbf29ce484222325ull;
        for (Int v : x.e)
            h ^= static_cast<std::size_t>(v) + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
        return h;
    }
};

} // namespace hsym

template <>
struct std::hash<hsym::SpkElement> : hsym::SpkElementHash {};

namespace hsym {

/// Twisted product on integer 4x4 matrices; the cross-block terms
/// A12 B21 and A21 B12 on the diagonal blocks are multiplied by k.
inline Mat4 star_k_product(const Mat4& x, const Mat4& y, Int k)
{
    Mat4 c{};
    for (int r = 0; r < 4; ++r)
        for (int col = 0; col < 4; ++col) {
            Int acc = 0;
            for (int t = 0; t < 4; ++t) {
                Int term = checked_mul(x[r][t], y[t][col]);
                if (r / 2 == col / 2 && t / 2 != r / 2)
                    term = checked_mul(term, k);
                acc += term;
            }
            c[r][col] = acc;
        }
    return c;
}

/// nu(A) = [A11, k A12; A21, A22], which carries *_k to the ordinary product.
inline Mat4 nu_embed(const Mat4& x, Int k)
{
    Mat4 r = x;
    for (int i = 0; i < 2; ++i)
        for (int j = 2; j < 4; ++j)
            r[i][j] = checked_mul(r[i][j], k);
    return r;
}

inline Mat4 plain_product(const Mat4& x, const Mat4& y)
{
    Mat4 c{};
    for (int r = 0; r < 4; ++r)
        for (int col = 0; col < 4; ++col)
            for (int t = 0; t < 4; ++t)
                c[r][col] += checked_mul(x[r][t], y[t][col]);
    return c;
}

inline SpkElement star_k(const SpkElement& x, const SpkElement& y)
{
    if (x.d != y.d || x.k != y.k)
        throw ParamMismatch("star_k: operands over different (d, k)");
    return SpkElement::make(x.d, x.k, star_k_product(x.matrix(), y.matrix(), x.k));
}

/// x^T *_k j *_k x = j.
inline bool is_spk_member(const SpkElement& x)
{
    SpkElement j = SpkElement::j(x.d, x.k);
    return star_k(star_k(x.transpose(), j), x) == j;
}

struct SpkTable {
    Int d;
    Int k;
    std::vector<SpkElement> elements; ///< sorted
    std::size_t order() const noexcept { return elements.size(); }
};

/// Images under pi of the standard generators of G; they do not depend on n, m.
inline std::vector<SpkElement> spk_generators(Int d, Int k)
{
    std::vector<SpkElement> out;
    Mat4 r1{};
    for (int i = 0; i < 4; ++i)
        r1[i][i] = 1;
    r1[0][3] = r1[2][1] = 1;
    out.push_back(SpkElement::make(d, k, r1));
    const IntMat2 id = IntMat2::identity(), u{1, 1, 0, 1}, j2 = IntMat2::j2();
    auto bd = [&](const IntMat2& s, const IntMat2& t) {
        Mat4 m{};
        for (int r = 0; r < 2; ++r)
            for (int c = 0; c < 2; ++c) {
                m[r][c] = s(r, c);
                m[r + 2][c + 2] = t(r, c);
            }
        return SpkElement::make(d, k, m);
    };
    out.push_back(bd(j2, id));
    out.push_back(bd(u, id));
    out.push_back(bd(id, j2));
    out.push_back(bd(id, u));
    return out;
}

/// All of Sp_k(4, Z_d). The exhaustive method fills columns one at a time
/// over all d^16 candidates, pruning a partial matrix as soon as an entry
/// of x^T *_k j *_k x between filled columns differs from j (entry (i, j)
/// depends only on columns i and j). Every survivor is re-checked against
/// the full definition. The bfs method closes the generator images.
inline SpkTable enumerate_spk(Int d, Int k, EnumerationMethod method, Int budget = default_budget)
{
    if (d < 1)
        throw InvalidParams("modulus must be positive");
    std::vector<SpkElement> out;
    if (method == EnumerationMethod::bfs_closure) {
        auto gens = spk_generators(d, k);
        out = bfs_closure<SpkElement>(SpkElement::identity(d, k), gens, star_k,
                                      static_cast<std::size_t>(budget));
    } else {
        Int candidates = 1;
        for (int i = 0; i < 16; ++i)
            if (__builtin_mul_overflow(candidates, d, &candidates) || candidates > budget)
                throw BudgetExceeded("exhaustive Sp_k enumeration exceeds budget");
        const Int kk = mod(k, d);
        const SpkElement jel = SpkElement::j(d, kk);
        const Int col_count = d * d * d * d;
        Mat4 cur{};
        auto form_ok = [&](int upto) {
            Mat4 t{};
            for (int r = 0; r < 4; ++r)
                for (int c = 0; c < 4; ++c)
                    t[r][c] = cur[c][r];
            Mat4 g = star_k_product(star_k_product(t, jel.matrix(), kk), cur, kk);
            for (int i = 0; i <= upto; ++i)
                for (int j = 0; j <= upto; ++j)
                    if (mod(g[i][j], d) != jel(i, j))
                        return false;
            return true;
        };
        auto recurse = [&](auto&& self, int col) -> void {
            if (col == 4) {
                auto x = SpkElement::make(d, kk, cur);
                if (is_spk_member(x))
                    out.push_back(x);
                return;
            }
            for (Int code = 0; code < col_count; ++code) {
                Int c = code;
                for (int r = 0; r < 4; ++r) {
                    cur[r][col] = c % d;
                    c /= d;
                }
                if (form_ok(col))
                    self(self, col + 1);
            }
            for (int r = 0; r < 4; ++r)
                cur[r][col] = 0;
        };
        recurse(recurse, 0);
    }
    std::sort(out.begin(), out.end());
    return {d, mod(k, d), std::move(out)};
}

/// pi: G_{n,m} -> Sp_{nm/d^2}(4, Z_d).
inline SpkElement project_pi(const SElement& x)
{
    const GroupParams& p = x.params();
    if (!p.is_canonical())
        throw InvalidParams("projection needs d = gcd(n, m)");
    if (!is_member_def(x))
        throw NotAMember("project_pi: element is not in G");
    return SpkElement::make(p.d(), p.ab(), x.stripped());
}

/// The twist nm / d^2 for canonical parameters.
inline Int projection_twist(const GroupParams& p) { return mod(p.ab(), p.d()); }

/// True iff pi(x) is the identity.
inline bool kernel_membership(const SElement& x)
{
    return project_pi(x) == SpkElement::identity(x.params().d(), x.params().ab());
}

/// Kernel of pi by its explicit form: off-diagonal blocks vanish, the
/// diagonal blocks are I + dA with det = 1 mod n and I + dB with det = 1
/// mod m.
inline bool kernel_explicit(const SElement& x)
{
    const GroupParams& p = x.params();
    const Int d = p.d();
    for (int r = 0; r < 4; ++r)
        for (int c = 0; c < 4; ++c) {
            if (r / 2 != c / 2) {
                if (x(r, c) != 0)
                    return false;
            } else if (mod(x(r, c) - (r == c ? 1 : 0), d) != 0) {
                return false;
            }
        }
    return det2_mod(x.block(0, 0), p.n()) == mod(1, p.n()) &&
           det2_mod(x.block(1, 1), p.m()) == mod(1, p.m());
}

/// Tr A + k det A = 0 mod l/k.
inline bool trace_det_condition(const IntMat2& a, Int k, Int l)
{
    return mod(a(0, 0) + a(1, 1) + checked_mul(k, det2(a)), l / k) == 0;
}

/// S_{k,l} from its definition: [I + kA] for A over Z_{l/k} satisfying the
/// trace-determinant condition. Entries are residues mod l.
inline std::vector<IntMat2> enumerate_skl(Int k, Int l)
{
    if (k < 1 || l < 1 || l % k != 0)
        throw InvalidParams("S_{k,l} needs k | l");
    const Int q = l / k;
    std::vector<IntMat2> out;
    for (Int a = 0; a < q; ++a)
        for (Int b = 0; b < q; ++b)
            for (Int c = 0; c < q; ++c)
                for (Int dd = 0; dd < q; ++dd) {
                    IntMat2 A{a, b, c, dd};
                    if (trace_det_condition(A, k, l))
                        out.push_back(ResidueMat2({1 + k * a, k * b, k * c, 1 + k * dd}, l).value());
                }
    std::sort(out.begin(), out.end(), [](const IntMat2& x, const IntMat2& y) { return x.e < y.e; });
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

/// S_{k,l} as { M in M2(Z_l) : M = I mod k, det M = 1 mod l }.
inline std::vector<IntMat2> enumerate_skl_by_det(Int k, Int l)
{
    if (k < 1 || l < 1 || l % k != 0)
        throw InvalidParams("S_{k,l} needs k | l");
    std::vector<IntMat2> out;
    for (Int a = 0; a < l; ++a)
        for (Int b = 0; b < l; ++b)
            for (Int c = 0; c < l; ++c)
                for (Int dd = 0; dd < l; ++dd) {
                    IntMat2 M{a, b, c, dd};
                    if (mod(a - 1, k) || mod(b, k) || mod(c, k) || mod(dd - 1, k))
                        continue;
                    if (det2_mod(M, l) == mod(1, l))
                        out.push_back(M);
                }
    return out;
}

struct SequenceCheck {
    std::string name;
    bool pass;
    std::optional<std::string> counterexample;
};

struct ExactSequenceReport {
    GroupParams params;
    Int twist = 0;
    bool degenerate = false; ///< d = 1: Sp over Z_1 is trivial and pi has everything as kernel
    std::size_t order_g = 0;
    std::size_t order_kernel = 0;
    std::size_t order_spk = 0;
    std::size_t order_s_dn = 0;
    std::size_t order_s_dm = 0;
    std::vector<SequenceCheck> checks;

    bool pass() const
    {
        return std::all_of(checks.begin(), checks.end(), [](const auto& c) { return c.pass; });
    }
};

namespace detail {

template <class T>
std::string to_text(const T& x)
{
    std::ostringstream os;
    os << x;
    return os.str();
}

inline std::string to_text(const SpkElement& x)
{
    std::ostringstream os;
    os << "[";
    for (int r = 0; r < 4; ++r) {
        os << (r ? "; " : "");
        for (int c = 0; c < 4; ++c)
            os << (c ? " " : "") << x(r, c);
    }
    os << "]";
    return os.str();
}

} // namespace detail

/// Orders of G, ker pi, S_{d,n}, S_{d,m} and Sp_k each computed separately,
/// plus multiplicativity and surjectivity of pi. Pairs for the
/// multiplicativity check are exhaustive up to `max_pairs`, sampled beyond.
inline ExactSequenceReport verify_exact_sequence(const GroupParams& p, Int budget = default_budget,
                                                 std::size_t max_pairs = 1'000'000)
{
    if (!p.is_canonical())
        throw InvalidParams("the extension is defined for d = gcd(n, m)");
    ExactSequenceReport rep{p, 0, false, 0, 0, 0, 0, 0, {}};
    const Int d = p.d();
    rep.twist = projection_twist(p);
    rep.degenerate = d == 1;

    GroupTable g = p.quotient_size() <= budget
                       ? enumerate_group(p, EnumerationMethod::exhaustive, budget)
                       : enumerate_group(p, EnumerationMethod::bfs_closure, budget);
    rep.order_g = g.order();

    Int spk_candidates = 1;
    bool spk_exhaustive = true;
    for (int i = 0; i < 16 && spk_exhaustive; ++i)
        spk_exhaustive = !__builtin_mul_overflow(spk_candidates, d, &spk_candidates) &&
                         spk_candidates <= budget;
    SpkTable spk = enumerate_spk(d, rep.twist,
                                 spk_exhaustive ? EnumerationMethod::exhaustive
                                                : EnumerationMethod::bfs_closure,
                                 budget);
    rep.order_spk = spk.order();
    rep.order_s_dn = enumerate_skl(d, p.n()).size();
    rep.order_s_dm = enumerate_skl(d, p.m()).size();

    // (1) pi is multiplicative.
    {
        SequenceCheck c{"pi multiplicative", true, std::nullopt};
        const std::size_t total = g.order() * g.order();
        auto check_pair = [&](const SElement& x, const SElement& y) {
            if (!(project_pi(x * y) == star_k(project_pi(x), project_pi(y)))) {
                c.pass = false;
                c.counterexample = detail::to_text(x) + " * " + detail::to_text(y);
                return false;
            }
            return true;
        };
        if (total <= max_pairs) {
            for (const auto& x : g.elements) {
                for (const auto& y : g.elements)
                    if (!check_pair(x, y))
                        break;
                if (!c.pass)
                    break;
            }
        } else {
            std::mt19937_64 rng(0x5eed);
            std::uniform_int_distribution<std::size_t> pick(0, g.order() - 1);
            for (std::size_t i = 0; i < max_pairs && c.pass; ++i)
                check_pair(g.elements[pick(rng)], g.elements[pick(rng)]);
        }
        rep.checks.push_back(std::move(c));
    }

    // (2) pi is onto.
    {
        std::unordered_set<SpkElement> image;
        std::size_t kernel = 0;
        for (const auto& x : g.elements) {
            auto y = project_pi(x);
            image.insert(y);
            if (kernel_membership(x))
                ++kernel;
        }
        rep.order_kernel = kernel;
        SequenceCheck c{"pi surjective", true, std::nullopt};
        for (const auto& y : spk.elements)
            if (!image.count(y)) {
                c.pass = false;
                c.counterexample = detail::to_text(y);
                break;
            }
        if (c.pass && image.size() != spk.order()) {
            c.pass = false;
            c.counterexample = "image has elements outside Sp_k";
        }
        rep.checks.push_back(std::move(c));
    }

    // (3) kernel order matches S_{d,n} x S_{d,m}.
    rep.checks.push_back({"|ker pi| = |S_{d,n}| |S_{d,m}|",
                          rep.order_kernel == rep.order_s_dn * rep.order_s_dm,
                          rep.order_kernel == rep.order_s_dn * rep.order_s_dm
                              ? std::nullopt
                              : std::optional<std::string>(std::to_string(rep.order_kernel) +
                                                           " != " +
                                                           std::to_string(rep.order_s_dn) + " * " +
                                                           std::to_string(rep.order_s_dm))});

    // (4) |G| = |ker pi| |Sp_k|.
    bool ok = rep.order_g == rep.order_kernel * rep.order_spk;
    rep.checks.push_back({"|G| = |ker pi| |Sp_k|", ok,
                          ok ? std::nullopt
                             : std::optional<std::string>(
                                   std::to_string(rep.order_g) + " != " +
                                   std::to_string(rep.order_kernel) + " * " +
                                   std::to_string(rep.order_spk))});
    return rep;
}

} // namespace hsym
