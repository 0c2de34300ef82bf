#pragma once

// K-theory of the ideal J = C_0(T \ Y) x| Z^d. For a free proper action with k
// orbits of gaps, J is a direct sum of k copies of C_0(R) (x) compacts, one
// per orbit of gaps.

#include <optional>
#include <string>

#include "denjoy/error.hpp"

namespace denjoy {

/// K_i(C_0(R^n)) is Z when i = n mod 2 and 0 otherwise (Bott periodicity).
inline std::size_t bott_rank(std::size_t n, int i) { return (n % 2) == static_cast<std::size_t>(i % 2) ? 1 : 0; }

struct IdealKData {
    std::optional<std::size_t> k;  ///< number of orbits of gaps; nullopt for infinitely many
    std::size_t k0_rank = 0;       ///< rank of K_0(J); always 0
    std::optional<std::size_t> k1_rank;  ///< rank of K_1(J) = k, nullopt when infinite
    bool index_map_zero = true;    ///< the index map K_1(A/J) -> K_0(J) vanishes
    std::string descriptor;        ///< structure of J

    std::string k0_string() const { return k0_rank == 0 ? "0" : "Z^" + std::to_string(k0_rank); }
    std::string k1_string() const {
        if (!k1_rank) return "Z^(infinity)";
        if (*k1_rank == 0) return "0";
        return *k1_rank == 1 ? "Z" : "Z^" + std::to_string(*k1_rank);
    }
};

/// k = nullopt stands for infinitely many orbits.
inline IdealKData ideal_k_data(std::optional<std::size_t> k) {
    if (k && *k == 0) throw DomainError("ideal_k_data: the ideal needs at least one orbit of gaps");
    IdealKData r;
    r.k = k;
    // each summand is stably C_0(R): K_0 = 0, K_1 = Z
    r.k0_rank = k ? *k * bott_rank(1, 0) : 0;
    if (k) r.k1_rank = *k * bott_rank(1, 1);
    r.index_map_zero = true;  // it lands in K_0(J) = 0
    const std::string count = k ? std::to_string(*k) : "infinity";
    r.descriptor = "direct sum over i = 1.." + count + " of C_0(R) (x) K";
    return r;
}

} // namespace denjoy
