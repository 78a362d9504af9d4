#pragma once

#include <algorithm>
#include <random>
#include <string>
#include <vector>

#include "hsym/closure.hpp"
#include "hsym/generators.hpp"
#include "hsym/selement.hpp"

namespace hsym {

inline constexpr Int default_budget = 100'000'000;

enum class EnumerationMethod { exhaustive, bfs_closure };

struct GroupTable {
    std::vector<SElement> elements; ///< sorted by canonical entries
    std::size_t order() const noexcept { return elements.size(); }
};

namespace detail {

/// Calls f on every canonical class of S/=, in lexicographic order of
/// the stripped entries.
template <class F>
void for_each_class(const GroupParams& p, F&& f)
{
    std::array<Int, 16> radix;
    for (int i = 0; i < 16; ++i)
        radix[static_cast<std::size_t>(i)] = p.entry_modulus(i / 4, i % 4);
    Mat4 cur{};
    while (true) {
        f(SElement::from_stripped(p, cur));
        int i = 15;
        for (; i >= 0; --i) {
            Int& e = cur[i / 4][i % 4];
            if (++e < radix[static_cast<std::size_t>(i)])
                break;
            e = 0;
        }
        if (i < 0)
            return;
    }
}

inline GroupTable sorted_table(std::vector<SElement> v)
{
    std::sort(v.begin(), v.end());
    return {std::move(v)};
}

} // namespace detail

/// Every element of G, by filtering all n^4 d^8 m^4 classes through the
/// determinant criterion, or by closing the standard generators.
inline GroupTable enumerate_group(const GroupParams& p, EnumerationMethod method,
                                  Int budget = default_budget)
{
    if (method == EnumerationMethod::exhaustive) {
        if (p.quotient_size() > budget)
            throw BudgetExceeded("exhaustive enumeration needs " + std::to_string(p.quotient_size()) +
                                 " candidates, budget is " + std::to_string(budget));
        std::vector<SElement> out;
        detail::for_each_class(p, [&](const SElement& x) {
            if (is_member(x))
                out.push_back(x);
        });
        return {std::move(out)};
    }
    auto gens = standard_generators(p);
    auto elems = bfs_closure<SElement>(SElement::identity(p), gens, s_mul,
                                       static_cast<std::size_t>(budget));
    return detail::sorted_table(std::move(elems));
}

/// The subgroup R listed directly: all diag(S, T) with det S = 1 mod n and
/// det T = 1 mod m.
inline GroupTable enumerate_block_subgroup(const GroupParams& p)
{
    auto sl2 = [](Int k) {
        std::vector<IntMat2> out;
        for (Int a = 0; a < k; ++a)
            for (Int b = 0; b < k; ++b)
                for (Int c = 0; c < k; ++c)
                    for (Int d = 0; d < k; ++d)
                        if (det2_mod({a, b, c, d}, k) == mod(1, k))
                            out.push_back({a, b, c, d});
        return out;
    };
    std::vector<SElement> out;
    for (const auto& s : sl2(p.n()))
        for (const auto& t : sl2(p.m()))
            out.push_back(SElement::block_diag(p, s, t));
    return detail::sorted_table(std::move(out));
}

/// A random element of G as a product of `length` random standard
/// generators and random powers of r(1).
template <class Rng>
SElement random_member(const GroupParams& p, Rng& rng, int length = 48)
{
    auto gens = standard_generators(p);
    std::uniform_int_distribution<std::size_t> pick(0, gens.size());
    SElement x = SElement::identity(p);
    for (int i = 0; i < length; ++i) {
        std::size_t g = pick(rng);
        x = g == gens.size() ? x * make_r(p, static_cast<Int>(rng() % 1000)) : x * gens[g];
    }
    return x;
}

/// A uniformly random class of S/= (not necessarily in G).
template <class Rng>
SElement random_class(const GroupParams& p, Rng& rng)
{
    Mat4 m{};
    for (int r = 0; r < 4; ++r)
        for (int c = 0; c < 4; ++c) {
            std::uniform_int_distribution<Int> dist(0, p.entry_modulus(r, c) - 1);
            m[r][c] = dist(rng);
        }
    return SElement::from_stripped(p, m);
}

} // namespace hsym
