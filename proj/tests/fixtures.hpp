#pragma once

// Shared actions for the test suites.

#include "denjoy/model/action.hpp"

namespace denjoy::testing {

inline RotationVector sqrt23() {
    return RotationVector({Real::parse("sqrt(2)-1"), Real::parse("sqrt(3)-1")});
}

inline BlowUpData geometric_blowup(std::size_t d, const mpq_class& base = 0, const mpq_class& lambda = mpq_class(1, 2),
                                   const mpq_class& total = 1) {
    return BlowUpData{OrbitForm::rational(d, base), GeometricLengths(d, lambda, total)};
}

/// d = 2, gamma = (sqrt2 - 1, sqrt3 - 1), orbit of 0 blown up, l_g = (1/9) 2^-||g||_1.
inline DenjoyAction denjoy2() { return DenjoyAction(sqrt23(), {geometric_blowup(2)}); }

inline DenjoyAction denjoy1() {
    return DenjoyAction(RotationVector({Real::parse("sqrt(2)-1")}), {geometric_blowup(1)});
}

} // namespace denjoy::testing
