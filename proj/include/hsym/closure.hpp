#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <unordered_set>
#include <vector>

#include "hsym/errors.hpp"

namespace hsym {

/// Breadth-first closure of `generators` under `mul`, starting from
/// `identity`. In a finite monoid the result is the generated submonoid;
/// for elements of a finite group that is the generated subgroup.
/// Elements are returned in discovery order.
template <class T, class Mul, class Hash = std::hash<T>>
std::vector<T> bfs_closure(const T& identity, std::span<const T> generators, Mul mul,
                           std::size_t limit = static_cast<std::size_t>(-1), Hash hash = {})
{
    std::unordered_set<T, Hash> seen(64, hash);
    std::vector<T> order;
    seen.insert(identity);
    order.push_back(identity);
    for (std::size_t head = 0; head < order.size(); ++head) {
        for (const T& g : generators) {
            T next = mul(order[head], g);
            if (seen.insert(next).second) {
                if (order.size() >= limit)
                    throw BudgetExceeded("closure exceeded element limit");
                order.push_back(std::move(next));
            }
        }
    }
    return order;
}

} // namespace hsym
