#pragma once

// The unique invariant probability measure mu of a Denjoy action.
//
// mu is the pull-back of Lebesgue measure under the semiconjugacy phi: it
// gives no mass to gaps and mu((a, b]) is the length of the arc from phi(a)
// to phi(b). On symbolic endpoints this is an exact orbit form.

#include <gmpxx.h>

#include "denjoy/model/realization.hpp"

namespace denjoy {

/// The half-open arc (start, end] traversed counterclockwise. start == end
/// denotes the empty arc unless `full` is set.
struct DenjoyArc {
    DenjoyPoint start;
    DenjoyPoint end;
    bool full = false;

    static DenjoyArc whole(const DenjoyPoint& p) { return DenjoyArc{p, p, true}; }
};

/// mu((a, b]) = length of the arc phi(a) -> phi(b); exact.
inline OrbitForm measure_arc(const DenjoyAction& action, const DenjoyArc& arc) {
    action.validate(arc.start);
    action.validate(arc.end);
    const std::size_t d = action.dim();
    if (arc.full) return OrbitForm::rational(d, 1);
    const OrbitForm a = action.fiber(arc.start), b = action.fiber(arc.end);
    if (a == b) {
        // both ends in one fiber of phi: either inside one closed gap, or all
        // the way around
        return OrbitForm::rational(d, action.compare_position(arc.start, arc.end) <= 0 ? 0 : 1);
    }
    return action.rho().normalize(b - a, action.precision());
}

/// mu of the arc between geometric coordinates x and x' in [0, 1), located
/// through the realization; accurate to the realization width.
inline Interval measure_arc_geometric(const Realization& real, const mpq_class& x, const mpq_class& x_end) {
    DenjoyArc arc{real.realize_inverse(x), real.realize_inverse(x_end)};
    if (x == x_end) arc.end = arc.start;
    return real.action().rho().enclose(measure_arc(real.action(), arc), real.bits());
}

class InvariantMeasure {
public:
    explicit InvariantMeasure(const DenjoyAction& action) : action_(&action) {}

    const DenjoyAction& action() const { return *action_; }
    OrbitForm operator()(const DenjoyArc& arc) const { return measure_arc(*action_, arc); }
    OrbitForm total() const { return OrbitForm::rational(action_->dim(), 1); }

private:
    const DenjoyAction* action_;
};

} // namespace denjoy
