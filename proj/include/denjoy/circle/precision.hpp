#pragma once

#include <cstddef>

#include "denjoy/error.hpp"

namespace denjoy {

/// Working precision and refinement ceiling, in bits.
///
/// Every decision that depends on comparing refinable reals starts at
/// `working_bits` and doubles until the two enclosures separate or
/// `ceiling_bits` is reached.
struct Precision {
    int working_bits = 128;
    int ceiling_bits = 1024;

    void validate() const {
        if (working_bits < 16 || ceiling_bits < working_bits)
            throw DomainError("precision: need 16 <= working_bits <= ceiling_bits");
    }

    Precision with_working(int bits) const {
        Precision p = *this;
        p.working_bits = bits;
        if (p.ceiling_bits < bits) p.ceiling_bits = bits;
        return p;
    }
};

/// Default upper bound on the number of lattice points enumerated when
/// summing over Z^d.
inline constexpr std::size_t kDefaultEnumBudget = 4'000'000;

} // namespace denjoy
