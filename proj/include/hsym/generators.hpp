#pragma once

// Generators of G: the classes r(k) = r(1)^k and the block-diagonal
// subgroup R = { diag(S, T) : det S = 1 mod n, det T = 1 mod m }, words
// over them, and the constructive factorization of any element of G
// into such a word.

#include <sstream>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "hsym/selement.hpp"

namespace hsym {

/// r(k): identity with stripped entries k at (1,4) and (3,2).
inline SElement make_r(const GroupParams& p, Int k)
{
    Mat4 m{};
    for (int i = 0; i < 4; ++i)
        m[i][i] = 1;
    m[0][3] = k;
    m[2][1] = k;
    return SElement::from_stripped(p, m);
}

/// r(1)^k, with k stored mod d.
struct RPower {
    Int k = 0;

    friend bool operator==(const RPower&, const RPower&) = default;
};

/// diag(S, T) with det S = 1 mod n and det T = 1 mod m; S stored mod n, T mod m.
struct BlockDiag {
    IntMat2 s;
    IntMat2 t;

    friend bool operator==(const BlockDiag&, const BlockDiag&) = default;
};

using GeneratorToken = std::variant<RPower, BlockDiag>;

inline GeneratorToken make_rpower(const GroupParams& p, Int k) { return RPower{mod(k, p.d())}; }

inline GeneratorToken make_blockdiag(const GroupParams& p, const IntMat2& s, const IntMat2& t)
{
    if (det2_mod(s, p.n()) != mod(1, p.n()))
        throw InvalidParams("block-diagonal generator: det S is not 1 mod n");
    if (det2_mod(t, p.m()) != mod(1, p.m()))
        throw InvalidParams("block-diagonal generator: det T is not 1 mod m");
    return BlockDiag{ResidueMat2(s, p.n()).value(), ResidueMat2(t, p.m()).value()};
}

inline SElement token_element(const GroupParams& p, const GeneratorToken& tok)
{
    if (const auto* r = std::get_if<RPower>(&tok))
        return make_r(p, r->k);
    const auto& bd = std::get<BlockDiag>(tok);
    return SElement::block_diag(p, bd.s, bd.t);
}

struct GeneratorWord {
    GroupParams params;
    std::vector<GeneratorToken> tokens;
};

/// Left-to-right product of the tokens; the empty word is the identity.
inline SElement eval_word(const GeneratorWord& w)
{
    SElement acc = SElement::identity(w.params);
    for (const auto& tok : w.tokens)
        acc = acc * token_element(w.params, tok);
    return acc;
}

/// r(1) together with diag(J2, I), diag(U, I), diag(I, J2), diag(I, U) where
/// U = (1 1; 0 1).
inline std::vector<SElement> standard_generators(const GroupParams& p)
{
    const IntMat2 id = IntMat2::identity();
    const IntMat2 u{1, 1, 0, 1};
    return {make_r(p, 1), SElement::block_diag(p, IntMat2::j2(), id),
            SElement::block_diag(p, u, id), SElement::block_diag(p, id, IntMat2::j2()),
            SElement::block_diag(p, id, u)};
}

/// The four block-diagonal generators alone; their closure is R.
inline std::vector<SElement> block_generators(const GroupParams& p)
{
    auto g = standard_generators(p);
    g.erase(g.begin());
    return g;
}

// ---------------------------------------------------------------------------
// Conjugation identities for the auxiliary generators.

/// [[I, -a k E11], [b k E22, I]] = diag(I, -J2) r(k) diag(I, J2)
inline SElement aux_e11(const GroupParams& p, Int k)
{
    return SElement::from_blocks(p, IntMat2::identity(), IntMat2{-k, 0, 0, 0},
                                 IntMat2{0, 0, 0, k}, IntMat2::identity());
}

/// [[I, -a k E22], [b k E11, I]] = diag(J2, I) r(k) diag(-J2, I)
inline SElement aux_e22(const GroupParams& p, Int k)
{
    return SElement::from_blocks(p, IntMat2::identity(), IntMat2{0, 0, 0, -k},
                                 IntMat2{k, 0, 0, 0}, IntMat2::identity());
}

/// [[I, a k E21], [b k E21, I]] = diag(-J2, J2) r(k) diag(J2, -J2)
inline SElement aux_e21(const GroupParams& p, Int k)
{
    return SElement::from_blocks(p, IntMat2::identity(), IntMat2{0, 0, k, 0},
                                 IntMat2{0, 0, k, 0}, IntMat2::identity());
}

namespace detail {

struct Conjugation {
    BlockDiag left;
    BlockDiag right;
};

inline Conjugation aux_conjugation(const GroupParams& p, int which)
{
    const IntMat2 id = IntMat2::identity(), j = IntMat2::j2();
    auto bd = [&](const IntMat2& s, const IntMat2& t) {
        return std::get<BlockDiag>(make_blockdiag(p, s, t));
    };
    switch (which) {
    case 0:
        return {bd(id, -j), bd(id, j)};
    case 1:
        return {bd(j, id), bd(-j, id)};
    default:
        return {bd(-j, j), bd(j, -j)};
    }
}

} // namespace detail

struct IdentityCheck {
    std::string name;
    SElement lhs;
    SElement rhs;
    bool holds;
};

/// Evaluates both sides of the three conjugation identities at k = 1.
inline std::vector<IdentityCheck> conjugation_identities(const GroupParams& p)
{
    std::vector<IdentityCheck> out;
    const char* names[3] = {"(i) E11/E22", "(ii) E22/E11", "(iii) E21/E21"};
    SElement lhs[3] = {aux_e11(p, 1), aux_e22(p, 1), aux_e21(p, 1)};
    for (int i = 0; i < 3; ++i) {
        auto c = detail::aux_conjugation(p, i);
        SElement rhs = token_element(p, c.left) * make_r(p, 1) * token_element(p, c.right);
        out.push_back({names[i], lhs[i], rhs, lhs[i] == rhs});
    }
    return out;
}

// ---------------------------------------------------------------------------
// Decomposition.

namespace detail {

class WordBuilder {
public:
    explicit WordBuilder(const GroupParams& p) : p_(p) {}

    void push(GeneratorToken tok)
    {
        if (auto* r = std::get_if<RPower>(&tok)) {
            if (r->k == 0)
                return;
            if (!tokens_.empty())
                if (auto* prev = std::get_if<RPower>(&tokens_.back())) {
                    prev->k = mod(prev->k + r->k, p_.d());
                    if (prev->k == 0)
                        tokens_.pop_back();
                    return;
                }
        } else {
            auto& bd = std::get<BlockDiag>(tok);
            if (!tokens_.empty())
                if (auto* prev = std::get_if<BlockDiag>(&tokens_.back())) {
                    prev->s = ResidueMat2(prev->s * bd.s, p_.n()).value();
                    prev->t = ResidueMat2(prev->t * bd.t, p_.m()).value();
                    if (is_identity(*prev))
                        tokens_.pop_back();
                    return;
                }
            if (is_identity(bd))
                return;
        }
        tokens_.push_back(std::move(tok));
    }

    void push_word(const std::vector<GeneratorToken>& toks)
    {
        for (const auto& t : toks)
            push(t);
    }

    GeneratorWord build() && { return {p_, std::move(tokens_)}; }

private:
    bool is_identity(const BlockDiag& bd) const
    {
        return ResidueMat2(bd.s, p_.n()) == ResidueMat2(IntMat2::identity(), p_.n()) &&
               ResidueMat2(bd.t, p_.m()) == ResidueMat2(IntMat2::identity(), p_.m());
    }

    GroupParams p_;
    std::vector<GeneratorToken> tokens_;
};

inline BlockDiag bd_token(const GroupParams& p, const IntMat2& s, const IntMat2& t)
{
    return std::get<BlockDiag>(make_blockdiag(p, s, t));
}

inline BlockDiag bd_inverse(const GroupParams& p, const BlockDiag& x)
{
    return bd_token(p, x.s.adjugate(), x.t.adjugate());
}

/// Unimodular S with S * (x, y)^T = (0, g)^T, g = gcd(x, y); identity if x = y = 0.
inline IntMat2 clear_top(Int x, Int y)
{
    auto [g, alpha, beta] = bezout(x, y);
    if (g == 0)
        return IntMat2::identity();
    return {y / g, -x / g, alpha, beta};
}

/// Tokens for aux(which, k) written as left * r(k) * right.
inline std::vector<GeneratorToken> aux_word(const GroupParams& p, int which, Int k)
{
    auto c = aux_conjugation(p, which);
    return {c.left, make_rpower(p, k), c.right};
}

[[noreturn]] inline void decomposition_invariant(const char* stage, const SElement& x)
{
    std::ostringstream os;
    os << "decompose: invariant violated after " << stage << " at " << x;
    throw std::logic_error(os.str());
}

} // namespace detail

/// Factor x in G as a word over r(1) and R.
///
/// Stages: (i) a left factor in R clears entries (1,4), (3,4) and leaves
/// gcd at (4,4); (ii) a left factor r(a13) diag(I, (1 a33; 0 1)) turns
/// (3,4) into a unit and stage (i) makes (4,4) = 1; (iii) a left factor
/// built from two auxiliary generators clears column pair 3, 4 and rows
/// (3,1), (3,2); (iv) a right factor in R fixes row 1, and what remains is
/// an auxiliary E21 generator times an element of R.
inline GeneratorWord decompose(const SElement& x)
{
    using namespace detail;
    const GroupParams& p = x.params();
    if (!is_member_def(x))
        throw NotAMember("decompose: element is not in G");

    const IntMat2 id = IntMat2::identity();

    // x = L1^{-1} L2^{-1} ... Lk^{-1} B for the left factors L1, L2, ... in order.
    std::vector<std::vector<GeneratorToken>> left_inverses;

    auto stage_one = [&](const SElement& y) {
        IntMat2 s = clear_top(y(0, 3), y(1, 3));
        IntMat2 t = clear_top(y(2, 3), y(3, 3));
        BlockDiag h = bd_token(p, s, t);
        left_inverses.push_back({bd_inverse(p, h)});
        return token_element(p, h) * y;
    };

    // (i)
    SElement cur = stage_one(x);
    if (cur(0, 3) != 0 || cur(2, 3) != 0)
        decomposition_invariant("stage (i)", cur);

    // (ii)
    {
        Int a13 = cur(0, 2);
        Int a33 = cur(2, 2);
        SElement h = make_r(p, a13) * SElement::block_diag(p, id, IntMat2{1, a33, 0, 1});
        left_inverses.push_back({bd_token(p, id, IntMat2{1, -a33, 0, 1}), make_rpower(p, -a13)});
        cur = h * cur;
        if (cur(2, 3) != mod(1, p.m()))
            decomposition_invariant("stage (ii) transvection", cur);
        cur = stage_one(cur);
        if (cur(0, 3) != 0 || cur(2, 3) != 0 || cur(3, 3) != mod(1, p.m()))
            decomposition_invariant("stage (ii)", cur);
    }

    // (iii): H = aux_e11(a13) * aux_e22(a24), H^{-1} = aux_e22(-a24) aux_e11(-a13).
    {
        Int a13 = cur(0, 2);
        Int a24 = cur(1, 3);
        SElement h = aux_e11(p, a13) * aux_e22(p, a24);
        std::vector<GeneratorToken> inv = aux_word(p, 1, -a24);
        auto second = aux_word(p, 0, -a13);
        inv.insert(inv.end(), second.begin(), second.end());
        left_inverses.push_back(std::move(inv));
        cur = h * cur;
        if (cur(2, 0) != 0 || cur(2, 1) != 0 || cur(0, 2) != 0 || cur(0, 3) != 0 ||
            cur(1, 3) != 0 || cur(2, 3) != 0 || cur(2, 2) != mod(1, p.m()) ||
            cur(3, 3) != mod(1, p.m()))
            decomposition_invariant("stage (iii)", cur);
    }

    // (iv): right factor fixes row 1, then cur * H = C * G.
    IntMat2 s4;
    {
        auto [g, nu, tau] = bezout(cur(0, 0), cur(0, 1));
        s4 = g == 0 ? id : IntMat2{nu, -cur(0, 1) / g, tau, cur(0, 0) / g};
    }
    BlockDiag h4 = bd_token(p, s4, id);
    cur = cur * token_element(p, h4);
    Int c = cur(1, 2);
    SElement g_part = aux_e21(p, -c) * cur;
    if (g_part(0, 2) != 0 || g_part(0, 3) != 0 || g_part(1, 2) != 0 || g_part(1, 3) != 0 ||
        g_part(2, 0) != 0 || g_part(2, 1) != 0 || g_part(3, 0) != 0 || g_part(3, 1) != 0)
        decomposition_invariant("stage (iv)", g_part);

    WordBuilder wb(p);
    for (const auto& inv : left_inverses)
        wb.push_word(inv);
    wb.push_word(aux_word(p, 2, c));
    wb.push(bd_token(p, g_part.block(0, 0), g_part.block(1, 1)));
    wb.push(bd_inverse(p, h4));
    return std::move(wb).build();
}

} // namespace hsym
