#pragma once

// Points and arcs of the circle R/Z.

#include <gmpxx.h>

#include <cmath>
#include <optional>

#include "denjoy/circle/interval.hpp"
#include "denjoy/circle/precision.hpp"
#include "denjoy/circle/real.hpp"

namespace denjoy {

enum class Ordering { Less, Greater, Undecided };

/// Compares two already-computed enclosures without refinement.
inline Ordering compare(const Interval& a, const Interval& b) {
    if (a.certainly_less(b)) return Ordering::Less;
    if (b.certainly_less(a)) return Ordering::Greater;
    return Ordering::Undecided;
}

/// Compares two refinable reals, doubling precision from the working
/// precision up to the ceiling. Equality is never reported.
inline Ordering compare(const Real& a, const Real& b, const Precision& prec = {}) {
    if (a.is_rational() && b.is_rational()) {
        if (a.rational() < b.rational()) return Ordering::Less;
        if (a.rational() > b.rational()) return Ordering::Greater;
        return Ordering::Undecided;
    }
    for (int bits = prec.working_bits;; bits *= 2) {
        if (bits > prec.ceiling_bits) bits = prec.ceiling_bits;
        Ordering o = compare(a.enclose(bits), b.enclose(bits));
        if (o != Ordering::Undecided || bits >= prec.ceiling_bits) return o;
    }
}

/// floor(x), refined until certified.
inline mpz_class certified_floor(const Real& x, const Precision& prec = {}) {
    if (x.is_rational()) {
        mpz_class f;
        mpz_fdiv_q(f.get_mpz_t(), x.rational().get_num_mpz_t(), x.rational().get_den_mpz_t());
        return f;
    }
    for (int bits = prec.working_bits;; bits *= 2) {
        if (bits > prec.ceiling_bits) bits = prec.ceiling_bits;
        if (auto f = x.enclose(bits).certified_floor()) return *f;
        if (bits >= prec.ceiling_bits) throw UndecidedError("floor: value too close to an integer", bits);
    }
}

/// A point of R/Z with representative in [0, 1).
class CirclePoint {
public:
    CirclePoint() = default;

    const Real& value() const { return value_; }
    bool is_exact() const { return value_.is_rational(); }
    Interval enclose(int bits) const { return value_.enclose(bits); }

    friend CirclePoint normalize(const Real& x, const Precision& prec);

private:
    explicit CirclePoint(Real v) : value_(std::move(v)) {}
    Real value_;
};

/// x mod 1 in [0, 1); exact when x is an exact rational.
inline CirclePoint normalize(const Real& x, const Precision& prec = {}) {
    mpz_class f = certified_floor(x, prec);
    if (f == 0) return CirclePoint(x);
    return CirclePoint(x - Real(mpq_class(f)));
}

inline CirclePoint normalize(const mpq_class& x) { return normalize(Real(x)); }

inline CirclePoint normalize(double x) {
    if (!std::isfinite(x)) throw DomainError("normalize: non-finite input");
    return normalize(mpq_class(x));
}

/// Positively oriented arc from `start` to `end`; (start, end] by default.
struct Arc {
    CirclePoint start;
    CirclePoint end;
    bool left_open = true;
    bool right_closed = true;
};

/// Oriented length (end - start) mod 1 in [0, 1).
inline Real arc_length(const Arc& a, const Precision& prec = {}) {
    if (a.start.value().handle() == a.end.value().handle()) return Real(0);
    return normalize(a.end.value() - a.start.value(), prec).value();
}

} // namespace denjoy
