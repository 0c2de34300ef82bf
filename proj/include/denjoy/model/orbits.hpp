#pragma once

// Wandering intervals: orbit representatives and properness of the action on
// the complement of the minimal set.

#include <gmpxx.h>

#include <optional>
#include <set>
#include <vector>

#include "denjoy/model/realization.hpp"

namespace denjoy {

struct OrbitReport {
    std::size_t k = 0;                      ///< number of orbits of gaps
    std::vector<GapLabel> representatives;  ///< I_(j,0) for each orbit j
    int checked_radius = 0;                 ///< g != 0 with ||g||_1 <= radius were checked
    std::size_t checked = 0;
    bool disjoint = true;                   ///< g I cap I = {} for every checked g
    std::optional<mpq_class> min_separation;  ///< lower bound on the gap between psi(gI) and psi(I)
};

/// One representative gap per blown-up orbit, with a certificate that the
/// translates g I (0 < ||g||_1 <= radius) avoid the closure of I.
inline OrbitReport wandering_orbit_reps(const Realization& real, int radius = 4) {
    const DenjoyAction& action = real.action();
    if (!action.is_denjoy()) throw DomainError("wandering_orbit_reps: action is not Denjoy");
    OrbitReport rep;
    rep.k = action.orbit_count();
    rep.checked_radius = radius;
    const std::size_t d = action.dim();
    for (std::size_t j = 0; j < rep.k; ++j) {
        GapLabel base{j, LatticeVector(d)};
        rep.representatives.push_back(base);
        Interval lo = real.realize(action.gap_point(base, 0));
        Interval hi = real.realize(action.gap_point(base, 1));
        for (std::int64_t n = 1; n <= radius; ++n) {
            for_each_in_shell(d, n, [&](const LatticeVector& g) {
                ++rep.checked;
                GapLabel moved{j, g};
                // distinct labels; now certify the closures apart geometrically
                Interval mlo = real.realize(action.gap_point(moved, 0));
                Interval mhi = real.realize(action.gap_point(moved, 1));
                std::optional<mpq_class> sep;
                if (mhi.certainly_less(lo)) sep = lo.lower() - mhi.upper();
                else if (hi.certainly_less(mlo)) sep = mlo.lower() - hi.upper();
                if (!sep) {
                    rep.disjoint = false;
                    return;
                }
                if (!rep.min_separation || *sep < *rep.min_separation) rep.min_separation = *sep;
            });
        }
    }
    return rep;
}

/// G_K = { g : gK cap K != {} } for K the union of the closures of the given
/// gaps. Closures of distinct gaps are disjoint, so g contributes exactly when
/// g I_a = I_b for some ordered pair (a, b) on the same orbit; at most m^2 elements.
inline std::vector<LatticeVector> group_K(const DenjoyAction& action, const std::vector<GapLabel>& K) {
    if (!action.is_denjoy()) throw DomainError("group_K: action is not Denjoy");
    if (K.empty()) throw DomainError("group_K: K must be non-empty");
    std::set<LatticeVector> out;
    for (const auto& a : K) {
        (void)action.gap_length(a);  // validates the label
        for (const auto& b : K)
            if (a.orbit == b.orbit) out.insert(b.g - a.g);
    }
    return {out.begin(), out.end()};
}

} // namespace denjoy
