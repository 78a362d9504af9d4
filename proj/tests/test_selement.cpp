#include <gtest/gtest.h>

#include <random>

#include "hsym/enumeration.hpp"
#include "hsym/generators.hpp"
#include "hsym/selement.hpp"
#include "oracles.hpp"

using namespace hsym;

namespace {

/// A random integer lift of x: each stripped entry shifted by a multiple
/// of its modulus, then a and b restored.
template <class Rng>
Mat4 random_lift(const SElement& x, Rng& rng)
{
    const auto& p = x.params();
    std::uniform_int_distribution<Int> shift(-3, 3);
    Mat4 m{};
    for (int r = 0; r < 4; ++r)
        for (int c = 0; c < 4; ++c) {
            Int v = x(r, c) + shift(rng) * p.entry_modulus(r, c);
            if (r / 2 != c / 2)
                v *= r < 2 ? p.a() : p.b();
            m[r][c] = v;
        }
    return m;
}

Mat4 full_j()
{
    Mat4 j{};
    j[0][1] = j[2][3] = 1;
    j[1][0] = j[3][2] = -1;
    return j;
}

const GroupParams P22 = GroupParams::canonical(2, 2);

} // namespace

TEST(SElement, CanonicalReduction)
{
    auto p = GroupParams::canonical(4, 6); // moduli (4, 2, 2, 6)
    Mat4 m{};
    for (int r = 0; r < 4; ++r)
        for (int c = 0; c < 4; ++c)
            m[r][c] = -7;
    auto x = SElement::from_stripped(p, m);
    EXPECT_EQ(x(0, 0), 1);
    EXPECT_EQ(x(0, 3), 1);
    EXPECT_EQ(x(3, 3), 5);
    EXPECT_EQ(x(2, 1), 1);
}

TEST(SElement, FromFullChecksDivisibility)
{
    auto p = GroupParams::canonical(6, 4); // a = 3, b = 2
    Mat4 m{};
    for (int i = 0; i < 4; ++i)
        m[i][i] = 1;
    m[0][2] = 3;
    m[3][1] = 2;
    auto x = SElement::from_full(p, m);
    EXPECT_EQ(x(0, 2), 1);
    EXPECT_EQ(x(3, 1), 1);
    EXPECT_EQ(x.full()[0][2], 3);
    m[0][2] = 2;
    EXPECT_THROW(SElement::from_full(p, m), BlockDivisibility);
}

TEST(SMul, IdentityAndRPowers)
{
    for (auto [n, m] : {std::pair<Int, Int>{2, 2}, {4, 6}, {3, 3}, {2, 3}}) {
        auto p = GroupParams::canonical(n, m);
        std::mt19937_64 rng(static_cast<unsigned>(n * 10 + m));
        for (int i = 0; i < 20; ++i) {
            auto x = random_class(p, rng);
            EXPECT_EQ(x * SElement::identity(p), x);
            EXPECT_EQ(SElement::identity(p) * x, x);
        }
        EXPECT_EQ(make_r(p, 1) * make_r(p, 1), make_r(p, 2));
        SElement acc = SElement::identity(p);
        for (Int k = 0; k < p.d(); ++k)
            acc = acc * make_r(p, 1);
        EXPECT_EQ(acc, SElement::identity(p));
    }
}

TEST(SMul, RejectsMixedParams)
{
    EXPECT_THROW(SElement::identity(P22) * SElement::identity(GroupParams::canonical(2, 4)),
                 ParamMismatch);
}

TEST(SMul, IndependentOfRepresentatives)
{
    std::mt19937_64 rng(2024);
    for (auto p : {GroupParams::canonical(4, 6), GroupParams::canonical(6, 4),
                   GroupParams::canonical(3, 6), GroupParams::general(2, 2, 1, 2, 2)}) {
        for (int i = 0; i < 1000; ++i) {
            auto x = random_class(p, rng), y = random_class(p, rng);
            Mat4 prod = oracle::mul(random_lift(x, rng), random_lift(y, rng));
            ASSERT_EQ(SElement::from_full(p, prod), x * y) << p;
        }
    }
}

TEST(SMul, Associative)
{
    std::mt19937_64 rng(5);
    auto p = GroupParams::canonical(4, 6);
    for (int i = 0; i < 500; ++i) {
        auto x = random_class(p, rng), y = random_class(p, rng), z = random_class(p, rng);
        ASSERT_EQ((x * y) * z, x * (y * z));
    }
}

TEST(Star, InvolutionAndAntiHomomorphism)
{
    std::mt19937_64 rng(15);
    for (auto p : {GroupParams::canonical(2, 2), GroupParams::canonical(2, 3),
                   GroupParams::canonical(3, 6), GroupParams::canonical(4, 6)}) {
        for (int i = 0; i < 1000; ++i) {
            auto x = random_class(p, rng), y = random_class(p, rng);
            ASSERT_EQ(s_star(s_star(x)), x);
            ASSERT_EQ(s_star(x * y), s_star(y) * s_star(x));
        }
    }
}

TEST(Star, MatchesBlockStarOnFullMatrices)
{
    std::mt19937_64 rng(16);
    auto p = GroupParams::canonical(6, 4);
    for (int i = 0; i < 500; ++i) {
        auto x = random_class(p, rng);
        ASSERT_EQ(SElement::from_full(p, oracle::full_star(x.full(), p.a(), p.b())), s_star(x));
    }
}

TEST(JElement, Laws)
{
    for (auto p : {GroupParams::canonical(2, 2), GroupParams::canonical(3, 4),
                   GroupParams::canonical(4, 6)}) {
        auto j = j_element(p), one = SElement::identity(p), m1 = minus_one(p);
        EXPECT_TRUE(is_member_def(j));
        EXPECT_EQ(s_star(j) * j, one);
        EXPECT_EQ(j * s_star(j), one);
        EXPECT_TRUE(is_member_def(m1));
        EXPECT_EQ(m1 * j, s_star(j));
    }
    auto p11 = GroupParams::canonical(1, 1);
    EXPECT_EQ(j_element(p11), SElement::identity(p11));
}

TEST(JElement, MinusOneIsCentral)
{
    std::mt19937_64 rng(20);
    for (auto p : {GroupParams::canonical(2, 3), GroupParams::canonical(4, 6)}) {
        auto m1 = minus_one(p);
        for (int i = 0; i < 500; ++i) {
            auto x = random_class(p, rng);
            ASSERT_EQ(m1 * x, x * m1);
        }
    }
}

TEST(Membership, Examples)
{
    for (auto p : {GroupParams::canonical(2, 2), GroupParams::canonical(4, 6),
                   GroupParams::canonical(3, 3)}) {
        EXPECT_TRUE(is_member_def(SElement::identity(p)));
        EXPECT_TRUE(is_member_criterion(SElement::identity(p)).verdict);
        EXPECT_TRUE(is_member_criterion(SElement::identity(p)).failures.empty());
        EXPECT_TRUE(is_member_def(make_r(p, 1)));
        EXPECT_TRUE(is_member_def(SElement::block_diag(p, {2, 1, 1, 1}, {1, 1, 0, 1})));
    }
}

// Only the mixed minor on columns (2, 4) is violated: its rows (1, 2) give
// det [[0, 1], [1, 0]] = -1, while every (1, 4) minor is 0.
TEST(Membership, OffDiagonalUnitFailsOneMixedCongruence)
{
    for (auto p : {GroupParams::canonical(2, 2), GroupParams::canonical(4, 6)}) {
        auto x = SElement::from_blocks(p, IntMat2::identity(), IntMat2::unit(0, 1), IntMat2::zero(),
                                       IntMat2::identity());
        auto cert = is_member_criterion(x);
        EXPECT_FALSE(cert.verdict);
        ASSERT_EQ(cert.failures.size(), 1u);
        EXPECT_EQ(cert.failures[0].constraint, "d:(2,4)");
        EXPECT_EQ(cert.failures[0].lhs, mod(-1, p.d()));
        EXPECT_EQ(cert.failures[0].modulus, p.d());
        EXPECT_FALSE(is_member_def(x));
    }
}

TEST(Membership, DefinitionMatchesFullMatrixOracle)
{
    std::mt19937_64 rng(33);
    auto p = GroupParams::canonical(4, 6);
    auto j = j_element(p);
    for (int i = 0; i < 2000; ++i) {
        auto x = i % 2 ? random_class(p, rng) : random_member(p, rng);
        Mat4 f = x.full();
        Mat4 lhs = oracle::mul(oracle::mul(oracle::full_star(f, p.a(), p.b()), full_j()), f);
        ASSERT_EQ(SElement::from_full(p, lhs) == j, is_member_def(x));
    }
}

TEST(Membership, CriterionAgreesExhaustively)
{
    std::vector<GroupParams> ps = {P22, GroupParams::general(2, 2, 1, 2, 2)};
    for (Int k = 1; k <= 6; ++k)
        ps.push_back(GroupParams::canonical(1, k));
    for (const auto& p : ps) {
        std::size_t members = 0;
        detail::for_each_class(p, [&](const SElement& x) {
            auto cert = is_member_criterion(x);
            ASSERT_EQ(cert.verdict, is_member_def(x)) << x;
            ASSERT_EQ(cert.verdict, cert.failures.empty());
            ASSERT_EQ(cert.verdict, is_member(x));
            members += cert.verdict;
        });
        EXPECT_GT(members, 0u) << p;
    }
}

TEST(Membership, CriterionAgreesOnRandomSamples)
{
    std::mt19937_64 rng(77);
    for (auto p : {GroupParams::canonical(4, 6), GroupParams::canonical(6, 4)}) {
        std::size_t members = 0;
        for (int i = 0; i < 100000; ++i) {
            auto x = i % 10 == 0 ? random_member(p, rng) : random_class(p, rng);
            bool def = is_member_def(x);
            ASSERT_EQ(is_member_criterion(x).verdict, def) << x;
            members += def;
        }
        EXPECT_GE(members, 10000u);
    }
}

TEST(Membership, StarAndTwistedForm)
{
    auto j = j_element(P22);
    detail::for_each_class(P22, [&](const SElement& x) {
        bool in = is_member(x);
        ASSERT_EQ(in, is_member(s_star(x)));
        ASSERT_EQ(in, x * j * s_star(x) == j);
    });
}

TEST(Group, ClosedUnderProductsAndInverses)
{
    auto g = enumerate_group(P22, EnumerationMethod::exhaustive).elements;
    auto one = SElement::identity(P22);
    for (const auto& x : g) {
        auto inv = g_inverse(x);
        ASSERT_TRUE(is_member(inv));
        ASSERT_EQ(x * inv, one);
        ASSERT_EQ(inv * x, one);
        for (const auto& y : g)
            ASSERT_TRUE(is_member(x * y));
    }
}

TEST(Group, InverseExamples)
{
    for (auto p : {P22, GroupParams::canonical(3, 6), GroupParams::canonical(4, 6)}) {
        EXPECT_EQ(g_inverse(SElement::identity(p)), SElement::identity(p));
        EXPECT_EQ(g_inverse(j_element(p)), s_star(j_element(p)));
        EXPECT_EQ(g_inverse(make_r(p, 1)), make_r(p, p.d() - 1));
    }
    auto bad = SElement::from_blocks(P22, IntMat2::identity(), IntMat2::unit(0, 1), IntMat2::zero(),
                                     IntMat2::identity());
    EXPECT_THROW(g_inverse(bad), NotAMember);
}

TEST(Group, RandomInverseLaw)
{
    std::mt19937_64 rng(3);
    for (auto p : {GroupParams::canonical(2, 3), GroupParams::canonical(3, 6),
                   GroupParams::canonical(4, 6)}) {
        auto j = j_element(p);
        for (int i = 0; i < 1000; ++i) {
            auto x = random_member(p, rng);
            ASSERT_EQ(x * (s_star(j) * s_star(x) * j), SElement::identity(p));
        }
    }
}
