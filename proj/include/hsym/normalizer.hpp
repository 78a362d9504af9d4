#pragma once

// End-to-end check of the normalizer correspondence on concrete matrices:
// extract the exponent matrices of the local Clifford generators and of R,
// test membership, and compare the generated subgroups with G.

#include <algorithm>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "hsym/enumeration.hpp"
#include "hsym/heisenberg.hpp"

namespace hsym {

inline constexpr Int default_dimension_cap = 48;

struct ExtractedGenerator {
    std::string name;
    SElement cls;
    bool member;
};

struct NormalizerCheck {
    std::string name;
    bool pass;
    std::optional<std::string> counterexample;
};

struct NormalizerReport {
    GroupParams params;
    std::vector<ExtractedGenerator> extracted;
    bool r_is_r_minus_one = false;      ///< extraction(R) == r(-1)
    bool r_is_r_minus_one_star = false; ///< extraction(R) == r(-1)*
    std::optional<std::size_t> order_g;
    std::optional<std::size_t> order_without_r;
    std::optional<std::size_t> order_with_r;
    std::vector<NormalizerCheck> checks;

    bool pass() const
    {
        return std::all_of(checks.begin(), checks.end(), [](const auto& c) { return c.pass; });
    }
};

/// Under the column convention of extract_exponent_matrix, R fixes A2 and
/// A4 (both diagonal) and shifts A1, A3 by powers of the clock matrices, so
/// its class is r(-1)*, the transpose of r(-1). The two are conjugate by
/// diag(-J2, J2) in the block-diagonal subgroup, so the generated groups do
/// not depend on which one is used.
inline NormalizerReport verify_normalizer(const GroupParams& p, Int cap = default_dimension_cap,
                                          Int budget = default_budget,
                                          double tol = default_tolerance)
{
    if (!p.is_canonical())
        throw InvalidParams("normalizer check needs d = gcd(n, m)");
    if (p.n() * p.m() > cap)
        throw BudgetExceeded("nm = " + std::to_string(p.n() * p.m()) + " exceeds dimension cap " +
                             std::to_string(cap));
    NormalizerReport rep{p, {}, false, false, std::nullopt, std::nullopt, std::nullopt, {}};

    static const char* local_names[] = {"F_n (x) I", "D_n (x) I", "I (x) F_m", "I (x) D_m"};
    auto mats = local_normalizer_generators(p);
    mats.push_back(r_matrix(p));
    for (std::size_t i = 0; i < mats.size(); ++i) {
        mats[i].set_tol(tol);
        SElement x = extract_exponent_matrix(mats[i], p);
        rep.extracted.push_back({i < 4 ? local_names[i] : "R", x, is_member_def(x) && is_member(x)});
    }

    NormalizerCheck members{"extracted classes are in G", true, std::nullopt};
    for (const auto& e : rep.extracted)
        if (!e.member) {
            members.pass = false;
            members.counterexample = e.name;
            break;
        }
    rep.checks.push_back(std::move(members));

    const SElement xr = rep.extracted.back().cls;
    const SElement rm1 = make_r(p, -1);
    rep.r_is_r_minus_one = xr == rm1;
    rep.r_is_r_minus_one_star = xr == s_star(rm1);
    {
        std::ostringstream os;
        os << xr;
        rep.checks.push_back({"extraction(R) = r(-1)*", rep.r_is_r_minus_one_star,
                              rep.r_is_r_minus_one_star ? std::nullopt
                                                        : std::optional<std::string>(os.str())});
    }

    std::vector<SElement> local, all;
    for (const auto& e : rep.extracted) {
        all.push_back(e.cls);
        if (e.name != "R")
            local.push_back(e.cls);
    }
    auto close = [&](const std::vector<SElement>& gens) {
        auto v = bfs_closure<SElement>(SElement::identity(p), gens, s_mul,
                                       static_cast<std::size_t>(budget));
        std::sort(v.begin(), v.end());
        return v;
    };
    auto g = enumerate_group(p, EnumerationMethod::bfs_closure, budget).elements;
    auto with_r = close(all);
    auto without_r = close(local);
    rep.order_g = g.size();
    rep.order_with_r = with_r.size();
    rep.order_without_r = without_r.size();

    rep.checks.push_back({"closure with R equals G", with_r == g,
                          with_r == g ? std::nullopt
                                      : std::optional<std::string>(std::to_string(with_r.size()) +
                                                                   " != " + std::to_string(g.size()))});
    const bool coprime = p.d() == 1;
    const bool without_is_g = without_r == g;
    rep.checks.push_back(
        {"closure without R equals G iff gcd(n, m) = 1", without_is_g == coprime,
         without_is_g == coprime
             ? std::nullopt
             : std::optional<std::string>("closure without R has order " +
                                          std::to_string(without_r.size()) + ", gcd = " +
                                          std::to_string(p.d()))});
    return rep;
}

} // namespace hsym
