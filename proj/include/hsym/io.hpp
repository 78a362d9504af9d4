#pragma once

// JSON encoding of inputs and reports (schema version in schema_version).

#include <string>

#include "json.hpp"

#include "hsym/extension.hpp"
#include "hsym/generators.hpp"
#include "hsym/heisenberg.hpp"
#include "hsym/normalizer.hpp"
#include "hsym/selement.hpp"

namespace hsym::io {

using nlohmann::json;

inline constexpr int schema_version = 1;

inline json mat4_json(const Mat4& m)
{
    json rows = json::array();
    for (const auto& r : m)
        rows.push_back(json(std::vector<Int>(r.begin(), r.end())));
    return rows;
}

inline json mat2_json(const IntMat2& m)
{
    return json::array({json::array({m(0, 0), m(0, 1)}), json::array({m(1, 0), m(1, 1)})});
}

inline IntMat2 mat2_from_json(const json& j)
{
    if (!j.is_array() || j.size() != 2 || !j[0].is_array() || j[0].size() != 2 ||
        !j[1].is_array() || j[1].size() != 2)
        throw InvalidParams("expected a 2x2 integer array");
    return {j[0][0].get<Int>(), j[0][1].get<Int>(), j[1][0].get<Int>(), j[1][1].get<Int>()};
}

inline Mat4 mat4_from_json(const json& j)
{
    if (!j.is_array() || j.size() != 4)
        throw InvalidParams("expected a 4x4 integer array");
    Mat4 m{};
    for (std::size_t r = 0; r < 4; ++r) {
        if (!j[r].is_array() || j[r].size() != 4)
            throw InvalidParams("expected a 4x4 integer array");
        for (std::size_t c = 0; c < 4; ++c) {
            if (!j[r][c].is_number_integer())
                throw InvalidParams("matrix entries must be integers");
            m[r][c] = j[r][c].get<Int>();
        }
    }
    return m;
}

inline json params_json(const GroupParams& p)
{
    return {{"n", p.n()}, {"m", p.m()}, {"d", p.d()}, {"a", p.a()}, {"b", p.b()}};
}

/// An element as its canonical full matrix plus the stripped form.
inline json element_json(const SElement& x)
{
    return {{"full", mat4_json(x.full())}, {"stripped", mat4_json(x.stripped())}};
}

inline json certificate_json(const MembershipCertificate& c)
{
    json failures = json::array();
    for (const auto& f : c.failures)
        failures.push_back(
            {{"constraint", f.constraint}, {"lhs", f.lhs}, {"rhs", f.rhs}, {"modulus", f.modulus}});
    return {{"verdict", c.verdict}, {"failures", failures}};
}

inline json token_json(const GeneratorToken& t)
{
    if (const auto* r = std::get_if<RPower>(&t))
        return {{"type", "r"}, {"k", r->k}};
    const auto& bd = std::get<BlockDiag>(t);
    return {{"type", "blockdiag"}, {"S", mat2_json(bd.s)}, {"T", mat2_json(bd.t)}};
}

inline json word_json(const GeneratorWord& w)
{
    json arr = json::array();
    for (const auto& t : w.tokens)
        arr.push_back(token_json(t));
    return arr;
}

/// Parses a token array. Block-diagonal tokens are validated (det = 1).
inline GeneratorWord word_from_json(const GroupParams& p, const json& j)
{
    if (!j.is_array())
        throw InvalidParams("word must be a JSON array");
    GeneratorWord w{p, {}};
    for (const auto& t : j) {
        const std::string type = t.at("type").get<std::string>();
        if (type == "r")
            w.tokens.push_back(make_rpower(p, t.at("k").get<Int>()));
        else if (type == "blockdiag")
            w.tokens.push_back(make_blockdiag(p, mat2_from_json(t.at("S")), mat2_from_json(t.at("T"))));
        else
            throw InvalidParams("unknown token type '" + type + "'");
    }
    return w;
}

inline json extension_json(const ExactSequenceReport& r)
{
    json checks = json::array();
    for (const auto& c : r.checks) {
        json item = {{"name", c.name}, {"pass", c.pass}};
        if (c.counterexample)
            item["counterexample"] = *c.counterexample;
        checks.push_back(item);
    }
    return {{"schema_version", schema_version},
            {"params", params_json(r.params)},
            {"twist", r.twist},
            {"degenerate", r.degenerate},
            {"orders",
             {{"G", r.order_g},
              {"kernel", r.order_kernel},
              {"spk", r.order_spk},
              {"s_dn", r.order_s_dn},
              {"s_dm", r.order_s_dm}}},
            {"checks", checks},
            {"pass", r.pass()}};
}

inline json commutation_json(const GroupParams& p, const CommutationReport& r, double tol)
{
    return {{"schema_version", schema_version},
            {"params", params_json(p)},
            {"pass", r.pass},
            {"tolerance", tol},
            {"max_deviation", r.max_deviation},
            {"worst", {{"i", r.worst[0]}, {"j", r.worst[1]}, {"k", r.worst[2]}, {"l", r.worst[3]}}},
            {"checked", r.checked}};
}

inline json normalizer_json(const NormalizerReport& r)
{
    json gens = json::array();
    for (const auto& e : r.extracted)
        gens.push_back({{"name", e.name}, {"class", element_json(e.cls)}, {"member", e.member}});
    json checks = json::array();
    for (const auto& c : r.checks) {
        json item = {{"name", c.name}, {"pass", c.pass}};
        if (c.counterexample)
            item["counterexample"] = *c.counterexample;
        checks.push_back(item);
    }
    auto opt = [](const std::optional<std::size_t>& v) { return v ? json(*v) : json(nullptr); };
    return {{"schema_version", schema_version},
            {"params", params_json(r.params)},
            {"extracted", gens},
            {"matches_r_minus_one", r.r_is_r_minus_one},
            {"matches_r_minus_one_star", r.r_is_r_minus_one_star},
            {"orders", {{"G", opt(r.order_g)}, {"with_R", opt(r.order_with_r)}, {"without_R", opt(r.order_without_r)}}},
            {"checks", checks},
            {"pass", r.pass()}};
}

} // namespace hsym::io
