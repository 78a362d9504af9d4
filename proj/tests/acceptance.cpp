// Acceptance suite: one PASS/FAIL line per criterion. `--only N` runs a
// single criterion. Exit status is 0 iff every selected criterion passed.

#include <chrono>
#include <cstdlib>
#include <cstring>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>

#include "hsym/hsym.hpp"
#include "oracles.hpp"

using namespace hsym;

namespace {

// Pinned limits.
constexpr double kMembershipSeconds = 10.0;
constexpr double kBfsSeconds = 60.0;
constexpr double kCommutationSeconds = 10.0;
constexpr double kNumericTolerance = 1e-9;
constexpr std::size_t kMaxWordLength = 16;
constexpr int kRandomMembershipSamples = 100'000;
constexpr int kRandomRoundTrips = 1000;
constexpr int kLawInstances = 1000;
constexpr std::uint64_t kSeed = 20240601;

struct Outcome {
    bool pass = true;
    std::ostringstream detail;

    void fail(const std::string& why)
    {
        pass = false;
        if (!why.empty())
            detail << "<" << why << "> ";
    }
};

class Stopwatch {
public:
    double seconds() const
    {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0_).count();
    }

private:
    std::chrono::steady_clock::time_point t0_ = std::chrono::steady_clock::now();
};

std::string str(const SElement& x)
{
    std::ostringstream os;
    os << x;
    return os.str();
}

// 1. Definition and determinant criterion agree.
void membership_equivalence(Outcome& o)
{
    Stopwatch sw;
    std::size_t disagreements = 0, checked = 0;
    auto p22 = GroupParams::canonical(2, 2);
    detail::for_each_class(p22, [&](const SElement& x) {
        ++checked;
        disagreements += is_member_def(x) != is_member_criterion(x).verdict;
    });
    if (checked != 65536)
        o.fail("expected 65536 candidates at (2,2), got " + std::to_string(checked));

    auto p46 = GroupParams::canonical(4, 6);
    std::mt19937_64 rng(kSeed);
    for (int i = 0; i < kRandomMembershipSamples; ++i) {
        auto x = i % 10 == 0 ? random_member(p46, rng) : random_class(p46, rng);
        disagreements += is_member_def(x) != is_member_criterion(x).verdict;
    }
    double t = sw.seconds();
    o.detail << checked << " + " << kRandomMembershipSamples << " candidates, " << disagreements
             << " disagreements, " << t << " s";
    if (disagreements)
        o.fail("disagreements found");
    if (t >= kMembershipSeconds)
        o.fail("runtime limit exceeded");
}

// 2. Group orders against independent oracles.
void group_orders(Outcome& o)
{
    auto timed_bfs = [&](Int n, Int m) {
        Stopwatch sw;
        auto order = static_cast<Int>(
            enumerate_group(GroupParams::canonical(n, m), EnumerationMethod::bfs_closure).order());
        if (sw.seconds() >= kBfsSeconds)
            o.fail("BFS at (" + std::to_string(n) + "," + std::to_string(m) + ") too slow");
        return order;
    };
    Int g22 = timed_bfs(2, 2);
    Int g22x = static_cast<Int>(
        enumerate_group(GroupParams::canonical(2, 2), EnumerationMethod::exhaustive).order());
    Int g33 = timed_bfs(3, 3);
    Int sp3 = static_cast<Int>(enumerate_spk(3, 1, EnumerationMethod::exhaustive).order());
    Int g23 = timed_bfs(2, 3);
    Int sl2 = static_cast<Int>(enumerate_skl(1, 2).size()), sl3 = static_cast<Int>(enumerate_skl(1, 3).size());

    o.detail << "|G(2,2)| = " << g22 << " (exhaustive " << g22x << ", formula " << oracle::sp4_order(2)
             << "); |G(3,3)| = " << g33 << " (Sp(4,Z3) exhaustive " << sp3 << ", formula "
             << oracle::sp4_order(3) << "); |G(2,3)| = " << g23 << " (" << sl2 << " * " << sl3 << ")";
    if (g22 != 720 || g22x != 720 || oracle::sp4_order(2) != 720)
        o.fail("(2,2) order");
    if (g33 != 51840 || sp3 != 51840 || oracle::sp4_order(3) != 51840)
        o.fail("(3,3) order");
    if (g23 != 144 || sl2 * sl3 != 144 || oracle::sl2_order(2) * oracle::sl2_order(3) != 144)
        o.fail("(2,3) order");
}

// 3. eval(decompose(x)) = x.
void decomposition_round_trip(Outcome& o)
{
    std::size_t total = 0, bad = 0, longest = 0;
    auto check = [&](const SElement& x) {
        ++total;
        auto w = decompose(x);
        longest = std::max(longest, w.tokens.size());
        if (eval_word(w) != x || w.tokens.size() > kMaxWordLength) {
            if (bad++ == 0)
                o.fail("first failure at " + str(x));
        }
    };
    for (const auto& x :
         enumerate_group(GroupParams::canonical(2, 2), EnumerationMethod::exhaustive).elements)
        check(x);
    std::mt19937_64 rng(kSeed);
    for (auto [n, m] : {std::pair<Int, Int>{2, 4}, {3, 3}}) {
        auto g = enumerate_group(GroupParams::canonical(n, m), EnumerationMethod::bfs_closure).elements;
        std::uniform_int_distribution<std::size_t> pick(0, g.size() - 1);
        for (int i = 0; i < kRandomRoundTrips; ++i)
            check(g[pick(rng)]);
    }
    o.detail << total << " elements, " << bad << " failures, longest word " << longest << " tokens";
}

// 4. r(1) and the four block generators generate G.
void generation(Outcome& o)
{
    std::vector<GroupParams> ps = {GroupParams::canonical(2, 2)};
    for (Int k = 1; k <= 5; ++k)
        ps.push_back(GroupParams::canonical(1, k));
    for (const auto& p : ps) {
        auto a = enumerate_group(p, EnumerationMethod::bfs_closure);
        auto b = enumerate_group(p, EnumerationMethod::exhaustive);
        o.detail << "(" << p.n() << "," << p.m() << "):" << a.order() << "/" << b.order() << " ";
        if (a.elements != b.elements)
            o.fail("set mismatch at (" + std::to_string(p.n()) + "," + std::to_string(p.m()) + ")");
    }
}

// 5. Extraction of Ad_R is r(-1).
void r_extraction(Outcome& o)
{
    for (auto [n, m] : {std::pair<Int, Int>{2, 2}, {2, 4}, {4, 6}}) {
        auto p = GroupParams::canonical(n, m);
        auto r = r_matrix(p);
        r.set_tol(kNumericTolerance);
        SElement x = extract_exponent_matrix(r, p);
        const bool equal = x == make_r(p, -1);
        o.detail << "(" << n << "," << m << "): " << (equal ? "r(-1)" : "got " + str(x) + " = r(-1)*")
                 << " ";
        if (!equal)
            o.fail({});
    }
}

// 6. Extracted classes lie in G, generate G, and R is needed iff gcd > 1.
void normalizer_generation(Outcome& o)
{
    for (auto [n, m] : {std::pair<Int, Int>{2, 2}, {2, 3}}) {
        auto rep = verify_normalizer(GroupParams::canonical(n, m), default_dimension_cap,
                                     default_budget, kNumericTolerance);
        bool members = std::all_of(rep.extracted.begin(), rep.extracted.end(),
                                   [](const auto& e) { return e.member; });
        // set equality, not just equal orders
        const bool with_ok = std::any_of(rep.checks.begin(), rep.checks.end(), [](const auto& c) {
            return c.name == "closure with R equals G" && c.pass;
        });
        const bool coprime = std::gcd(n, m) == 1;
        const bool dichotomy = (rep.order_without_r == rep.order_g) == coprime &&
                               (coprime || *rep.order_without_r < *rep.order_g);
        o.detail << "(" << n << "," << m << "): |G| = " << *rep.order_g << ", with R "
                 << *rep.order_with_r << ", without R " << *rep.order_without_r << " ";
        if (!members)
            o.fail("non-member extracted");
        if (!with_ok)
            o.fail("closure with R differs from G");
        if (!dichotomy)
            o.fail("coprimality dichotomy violated");
    }
}

// 7. Commutation phases.
void commutation(Outcome& o)
{
    Stopwatch sw;
    auto rep = verify_commutation(GroupParams::canonical(3, 4), kNumericTolerance);
    double t = sw.seconds();
    o.detail << rep.checked << " (i,j,k,l), max deviation " << rep.max_deviation << ", " << t << " s";
    if (!rep.pass)
        o.fail("tolerance exceeded");
    if (t >= kCommutationSeconds)
        o.fail("runtime limit exceeded");
}

// 8. Exact sequence by independent enumeration.
void exact_sequence(Outcome& o)
{
    for (auto [n, m] : {std::pair<Int, Int>{2, 2}, {2, 4}}) {
        auto p = GroupParams::canonical(n, m);
        auto rep = verify_exact_sequence(p);
        auto g = enumerate_group(p, EnumerationMethod::exhaustive).order();
        auto sdn = enumerate_skl_by_det(p.d(), n).size(), sdm = enumerate_skl_by_det(p.d(), m).size();
        auto spk = enumerate_spk(p.d(), projection_twist(p), EnumerationMethod::exhaustive).order();
        o.detail << "(" << n << "," << m << "): " << g << " = " << sdn << "*" << sdm << "*" << spk << " ";
        if (g != sdn * sdm * spk)
            o.fail("order identity");
        if (!rep.pass())
            o.fail("report check failed");
    }
    // all pairs at (2, 2)
    auto p = GroupParams::canonical(2, 2);
    auto g = enumerate_group(p, EnumerationMethod::exhaustive).elements;
    std::size_t bad = 0;
    for (const auto& x : g)
        for (const auto& y : g)
            bad += !(project_pi(x * y) == star_k(project_pi(x), project_pi(y)));
    o.detail << "pi pairs failing " << bad << " ";
    if (bad)
        o.fail("pi not multiplicative");
    for (auto [k, l] : {std::pair<Int, Int>{2, 4}, {2, 6}}) {
        std::size_t mismatches = 0;
        for (Int a = 0; a < l; ++a)
            for (Int b = 0; b < l; ++b)
                for (Int c = 0; c < l; ++c)
                    for (Int d = 0; d < l; ++d) {
                        IntMat2 A{a, b, c, d};
                        IntMat2 M{1 + k * a, k * b, k * c, 1 + k * d};
                        mismatches += (det2_mod(M, l) == mod(1, l)) != trace_det_condition(A, k, l);
                    }
        o.detail << "trace-det (" << k << "," << l << ") mismatches " << mismatches << " ";
        if (mismatches)
            o.fail("trace-determinant equivalence");
    }
}

// 9. Algebraic laws on random instances.
void algebraic_laws(Outcome& o)
{
    std::mt19937_64 rng(kSeed);
    std::size_t failures = 0, instances = 0;
    for (auto [n, m] : {std::pair<Int, Int>{2, 2}, {2, 3}, {3, 6}, {4, 6}}) {
        auto p = GroupParams::canonical(n, m);
        auto j = j_element(p), one = SElement::identity(p), m1 = minus_one(p);
        for (int i = 0; i < kLawInstances; ++i) {
            auto x = random_class(p, rng), y = random_class(p, rng);
            auto g = random_member(p, rng);
            ++instances;
            failures += s_star(s_star(x)) != x;
            failures += s_star(x * y) != s_star(y) * s_star(x);
            failures += s_star(j) * j != one;
            failures += m1 * x != x * m1;
            failures += m1 * j != s_star(j);
            failures += g * (s_star(j) * s_star(g) * j) != one;
            failures += g_inverse(g) * g != one;
        }
    }
    o.detail << instances << " instances, " << failures << " law failures";
    if (failures)
        o.fail("law violated");
}

struct Criterion {
    const char* title;
    std::function<void(Outcome&)> run;
};

} // namespace

int main(int argc, char** argv)
{
    const Criterion criteria[] = {
        {"membership tests agree", membership_equivalence},
        {"group orders match oracles", group_orders},
        {"decomposition round-trip", decomposition_round_trip},
        {"r(1) and block generators generate G", generation},
        {"extraction of Ad_R equals r(-1)", r_extraction},
        {"normalizer generators and coprimality dichotomy", normalizer_generation},
        {"commutation phases", commutation},
        {"exact sequence orders and projection", exact_sequence},
        {"algebraic law suite", algebraic_laws},
    };
    int only = 0;
    for (int i = 1; i < argc; ++i) {
        if (std::strcmp(argv[i], "--only") == 0 && i + 1 < argc)
            only = std::atoi(argv[++i]);
        else {
            std::cerr << "usage: acceptance [--only N]\n";
            return 2;
        }
    }
    if (only < 0 || only > 9) {
        std::cerr << "criterion must be 1..9\n";
        return 2;
    }
    bool all = true;
    for (int i = 0; i < 9; ++i) {
        if (only && only != i + 1)
            continue;
        Outcome o;
        Stopwatch sw;
        try {
            criteria[i].run(o);
        } catch (const std::exception& e) {
            o.fail(std::string("exception: ") + e.what());
        }
        all = all && o.pass;
        std::cout << (o.pass ? "PASS" : "FAIL") << "  criterion " << i + 1 << ": " << criteria[i].title
                  << "  [" << o.detail.str() << "] (" << sw.seconds() << " s)" << std::endl;
    }
    return all ? 0 : 1;
}
