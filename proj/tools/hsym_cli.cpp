// hsym: command-line front end for the symmetry-group library.
//
// Exit codes: 0 success, 1 verification failure, 2 usage or input error,
// 3 budget exceeded.

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "hsym/hsym.hpp"
#include "hsym/io.hpp"

using namespace hsym;
using nlohmann::json;

namespace {

enum Exit { ok = 0, verification_failure = 1, usage_error = 2, budget_exceeded = 3 };

struct Globals {
    bool as_json = false;
    std::optional<Int> budget;
};

/// Accepts integers or scientific notation ("1e8").
Int parse_budget(const std::string& text, const std::string& source)
{
    try {
        std::size_t used = 0;
        double v = std::stod(text, &used);
        if (used != text.size() || !(v >= 1) || v > 9.2e18)
            throw std::invalid_argument(text);
        return static_cast<Int>(v);
    } catch (const std::exception&) {
        throw InvalidParams(source + " is not a positive number: " + text);
    }
}

Int resolve_budget(const Globals& g)
{
    if (g.budget)
        return *g.budget;
    if (const char* env = std::getenv("HEISENBERG_BUDGET"))
        return parse_budget(env, "HEISENBERG_BUDGET");
    return default_budget;
}

/// Matrix input: n m followed by 16 integers, or --file with optional n m.
struct MatrixArgs {
    std::vector<Int> values;
    std::string file;
};

std::pair<GroupParams, Mat4> read_matrix(const MatrixArgs& in)
{
    if (in.file.empty()) {
        if (in.values.size() != 18)
            throw InvalidParams("expected n m followed by 16 integers, got " +
                                std::to_string(in.values.size()) + " values");
        Mat4 m{};
        for (std::size_t i = 0; i < 16; ++i)
            m[i / 4][i % 4] = in.values[i + 2];
        return {GroupParams::canonical(in.values[0], in.values[1]), m};
    }
    std::ifstream f(in.file);
    if (!f)
        throw InvalidParams("cannot open " + in.file);
    json j;
    try {
        f >> j;
    } catch (const json::exception& e) {
        throw InvalidParams(in.file + ": " + e.what());
    }
    if (!j.contains("n") || !j.contains("m") || !j.contains("matrix"))
        throw InvalidParams(in.file + ": expected fields n, m, matrix");
    auto p = GroupParams::canonical(j["n"].get<Int>(), j["m"].get<Int>());
    if (!in.values.empty()) {
        if (in.values.size() != 2 || in.values[0] != p.n() || in.values[1] != p.m())
            throw InvalidParams("n m on the command line disagree with " + in.file);
    }
    return {p, io::mat4_from_json(j["matrix"])};
}

void print_checks(const auto& checks)
{
    for (const auto& c : checks) {
        std::cout << "  [" << (c.pass ? "pass" : "FAIL") << "] " << c.name;
        if (c.counterexample)
            std::cout << "  (" << *c.counterexample << ")";
        std::cout << "\n";
    }
}

int cmd_params(const Globals& g, Int n, Int m)
{
    auto p = GroupParams::canonical(n, m);
    const bool coprime = p.d() == 1;
    if (g.as_json) {
        json j = io::params_json(p);
        j["schema_version"] = io::schema_version;
        j["lcm"] = p.lcm();
        j["quotient_size"] = p.quotient_size();
        j["coprime"] = coprime;
        std::cout << j.dump(2) << "\n";
    } else {
        std::cout << "n=" << p.n() << " m=" << p.m() << "\n"
                  << "d=" << p.d() << " a=" << p.a() << " b=" << p.b() << " lcm=" << p.lcm() << "\n"
                  << "|S/=| = n^4 d^8 m^4 = " << p.quotient_size() << "\n"
                  << "coprime: " << (coprime ? "yes (R not needed)" : "no") << "\n";
    }
    return ok;
}

int cmd_member(const Globals& g, const MatrixArgs& in)
{
    auto [p, m] = read_matrix(in);
    SElement x = SElement::from_full(p, m);
    auto cert = is_member_criterion(x);
    const bool by_def = is_member_def(x);
    if (by_def != cert.verdict) {
        std::cerr << "internal error: definition says " << by_def << ", criterion says "
                  << cert.verdict << " for " << x << "\n";
        return verification_failure;
    }
    if (g.as_json) {
        json j = io::certificate_json(cert);
        j["schema_version"] = io::schema_version;
        j["params"] = io::params_json(p);
        j["element"] = io::element_json(x);
        j["definition_verdict"] = by_def;
        std::cout << j.dump(2) << "\n";
    } else {
        std::cout << (cert.verdict ? "member" : "not a member") << " of G" << p << "\n";
        for (const auto& f : cert.failures)
            std::cout << "  " << f.constraint << ": " << f.lhs << " != " << f.rhs << " mod "
                      << f.modulus << "\n";
    }
    return cert.verdict ? ok : verification_failure;
}

int cmd_order(const Globals& g, Int n, Int m, const std::string& method)
{
    auto p = GroupParams::canonical(n, m);
    const Int budget = resolve_budget(g);
    auto t0 = std::chrono::steady_clock::now();
    std::string used = method;
    if (method == "auto")
        used = p.quotient_size() <= budget ? "exhaustive" : "bfs";
    std::size_t order = 0;
    bool agree = true;
    if (used == "exhaustive") {
        order = enumerate_group(p, EnumerationMethod::exhaustive, budget).order();
    } else if (used == "bfs") {
        order = enumerate_group(p, EnumerationMethod::bfs_closure, budget).order();
    } else {
        auto a = enumerate_group(p, EnumerationMethod::exhaustive, budget);
        auto b = enumerate_group(p, EnumerationMethod::bfs_closure, budget);
        agree = a.elements == b.elements;
        order = a.order();
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (g.as_json) {
        json j = {{"schema_version", io::schema_version},
                  {"params", io::params_json(p)},
                  {"order", order},
                  {"method", used},
                  {"seconds", secs}};
        if (used == "both")
            j["methods_agree"] = agree;
        std::cout << j.dump(2) << "\n";
    } else {
        std::cout << "|G" << p << "| = " << order << "  (" << used << ", " << secs << " s)\n";
        if (!agree)
            std::cout << "exhaustive and bfs results differ\n";
    }
    return agree ? ok : verification_failure;
}

int cmd_decompose(const Globals& g, const MatrixArgs& in)
{
    auto [p, m] = read_matrix(in);
    SElement x = SElement::from_full(p, m);
    GeneratorWord w = decompose(x);
    const bool verified = eval_word(w) == x;
    if (g.as_json) {
        json j = {{"schema_version", io::schema_version},
                  {"params", io::params_json(p)},
                  {"word", io::word_json(w)},
                  {"length", w.tokens.size()},
                  {"verified", verified}};
        std::cout << j.dump(2) << "\n";
    } else {
        std::cout << "word of length " << w.tokens.size() << (verified ? " (verified)" : " (MISMATCH)")
                  << "\n";
        for (const auto& t : w.tokens) {
            if (const auto* r = std::get_if<RPower>(&t))
                std::cout << "  r(" << r->k << ")\n";
            else
                std::cout << "  diag(" << std::get<BlockDiag>(t).s << ", " << std::get<BlockDiag>(t).t
                          << ")\n";
        }
    }
    return verified ? ok : verification_failure;
}

int cmd_verify_normalizer(const Globals& g, Int n, Int m, Int cap, double tol)
{
    auto p = GroupParams::canonical(n, m);
    auto rep = verify_normalizer(p, cap, resolve_budget(g), tol);
    if (g.as_json) {
        std::cout << io::normalizer_json(rep).dump(2) << "\n";
    } else {
        std::cout << "normalizer check for " << p << "\n";
        for (const auto& e : rep.extracted)
            std::cout << "  " << e.name << " -> " << e.cls << (e.member ? "" : "  NOT IN G") << "\n";
        std::cout << "  extraction(R) = r(-1): " << (rep.r_is_r_minus_one ? "yes" : "no")
                  << ", = r(-1)*: " << (rep.r_is_r_minus_one_star ? "yes" : "no") << "\n"
                  << "  |G| = " << *rep.order_g << ", closure with R = " << *rep.order_with_r
                  << ", without R = " << *rep.order_without_r << "\n";
        print_checks(rep.checks);
    }
    return rep.pass() ? ok : verification_failure;
}

int cmd_extension(const Globals& g, Int n, Int m)
{
    auto rep = verify_exact_sequence(GroupParams::canonical(n, m), resolve_budget(g));
    if (g.as_json) {
        std::cout << io::extension_json(rep).dump(2) << "\n";
    } else {
        std::cout << "1 -> S_{d,n} x S_{d,m} -> G -> Sp_k(4, Z_d) -> 1 for " << rep.params
                  << ", k = " << rep.twist << (rep.degenerate ? "  (degenerate: d = 1)" : "") << "\n"
                  << "  |G| = " << rep.order_g << ", |ker pi| = " << rep.order_kernel
                  << ", |Sp_k| = " << rep.order_spk << ", |S_{d,n}| = " << rep.order_s_dn
                  << ", |S_{d,m}| = " << rep.order_s_dm << "\n";
        print_checks(rep.checks);
    }
    return rep.pass() ? ok : verification_failure;
}

int cmd_commutation(const Globals& g, Int n, Int m, Int cap, double tol)
{
    auto p = GroupParams::canonical(n, m);
    if (p.n() * p.m() > cap)
        throw BudgetExceeded("nm = " + std::to_string(p.n() * p.m()) + " exceeds dimension cap " +
                             std::to_string(cap));
    auto rep = verify_commutation(p, tol);
    if (g.as_json) {
        std::cout << io::commutation_json(p, rep, tol).dump(2) << "\n";
    } else {
        std::cout << "commutation relations for " << p << ": " << (rep.pass ? "pass" : "FAIL") << "\n"
                  << "  " << rep.checked << " (i,j,k,l) checked, max deviation " << rep.max_deviation
                  << " at (" << rep.worst[0] << "," << rep.worst[1] << "," << rep.worst[2] << ","
                  << rep.worst[3] << ")\n";
    }
    return rep.pass ? ok : verification_failure;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Symmetry group of the finite Heisenberg group on Z_n x Z_m"};
    app.require_subcommand(1);
    app.fallthrough();

    Globals g;
    app.add_flag("--json", g.as_json, "Print JSON instead of text");
    std::string budget_flag;
    auto* budget_opt = app.add_option("--budget", budget_flag,
                                      "Enumeration budget (overrides HEISENBERG_BUDGET; default 1e8)");

    Int n = 0, m = 0, cap = default_dimension_cap;
    double tol = default_tolerance;
    std::string method = "auto";
    MatrixArgs matrix;

    auto add_nm = [&](CLI::App* sub) {
        sub->add_option("n", n, "First dimension")->required()->check(CLI::PositiveNumber);
        sub->add_option("m", m, "Second dimension")->required()->check(CLI::PositiveNumber);
    };
    auto add_matrix = [&](CLI::App* sub) {
        sub->add_option("values", matrix.values, "n m and 16 row-major integers (full matrix)");
        sub->add_option("--file", matrix.file, "JSON file {\"n\":..,\"m\":..,\"matrix\":[[..]]}");
    };

    auto* params = app.add_subcommand("params", "Derived parameters d, a, b, lcm, |S/=|");
    add_nm(params);
    auto* member = app.add_subcommand("member", "Membership test with per-congruence diagnostics");
    add_matrix(member);
    auto* order = app.add_subcommand("order", "Order of G");
    add_nm(order);
    order->add_option("--method", method, "auto, exhaustive, bfs or both")
        ->check(CLI::IsMember({"auto", "exhaustive", "bfs", "both"}));
    auto* dec = app.add_subcommand("decompose", "Write an element as a word in r(k) and diag(S, T)");
    add_matrix(dec);
    auto* norm = app.add_subcommand("verify-normalizer", "Check the normalizer correspondence numerically");
    add_nm(norm);
    norm->add_option("--cap", cap, "Maximum nm")->check(CLI::PositiveNumber);
    norm->add_option("--tol", tol, "Numeric tolerance")->check(CLI::PositiveNumber);
    auto* ext = app.add_subcommand("extension", "Verify the short exact sequence");
    add_nm(ext);
    auto* comm = app.add_subcommand("commutation", "Check the Pauli commutation phases");
    add_nm(comm);
    comm->add_option("--cap", cap, "Maximum nm")->check(CLI::PositiveNumber);
    comm->add_option("--tol", tol, "Numeric tolerance")->check(CLI::PositiveNumber);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? ok : usage_error;
    }
    try {
        if (budget_opt->count())
            g.budget = parse_budget(budget_flag, "--budget");
        if (*params)
            return cmd_params(g, n, m);
        if (*member)
            return cmd_member(g, matrix);
        if (*order)
            return cmd_order(g, n, m, method);
        if (*dec)
            return cmd_decompose(g, matrix);
        if (*norm)
            return cmd_verify_normalizer(g, n, m, cap, tol);
        if (*ext)
            return cmd_extension(g, n, m);
        if (*comm)
            return cmd_commutation(g, n, m, cap, tol);
    } catch (const BudgetExceeded& e) {
        std::cerr << "budget exceeded: " << e.what() << "\n";
        return budget_exceeded;
    } catch (const NotInNormalizer& e) {
        std::cerr << "verification failed: " << e.what() << "\n";
        return verification_failure;
    } catch (const IllConditioned& e) {
        std::cerr << "verification failed: " << e.what() << "\n";
        return verification_failure;
    } catch (const Error& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return usage_error;
    } catch (const json::exception& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return usage_error;
    } catch (const std::overflow_error& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return usage_error;
    }
    return usage_error;
}
