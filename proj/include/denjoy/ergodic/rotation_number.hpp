#pragma once

// Rotation numbers: exact values from the rotation vector and Poincaré
// estimates from iterating a lift of the realized homeomorphism.

#include <gmpxx.h>

#include <memory>
#include <optional>

#include "denjoy/model/realization.hpp"

namespace denjoy {

/// rho(g) = sum g_i gamma_i mod 1, exact.
inline OrbitForm rotation_number(const DenjoyAction& action, const LatticeVector& g) {
    return action.rho().rho(g, action.precision());
}

/// Iterates the lift F of the realized homeomorphism of g whose translation
/// part is rho(g) in [0, 1).
///
/// The orbit is followed symbolically. With p_n = g^n . p_0 and lifted
/// coordinate y_0 + n rho(g), the lift satisfies
///   F^n(x_0) - x_0 = floor(y_0 + n rho(g)) + psi(p_n) - psi(p_0),
/// which is what realize . act . realize_inverse computes step by step, without
/// accumulating one rounding per step. The start point is p_0 =
/// realize_inverse(frac x_0), so the iterated point is psi(p_0) + floor(x_0),
/// which agrees with x_0 to the realization width.
class LiftIterator {
public:
    LiftIterator(const DenjoyAction& action, LatticeVector g, mpq_class x0, int bits = 128,
                 std::size_t enum_budget = kDefaultEnumBudget)
        : action_(std::make_shared<const DenjoyAction>(action)), g_(std::move(g)), x0_(std::move(x0)), bits_(bits) {
        if (g_.dim() != action.dim()) throw DomainError("lift iterator: group element dimension mismatch");
        if (action.classify() == ActionClass::Denjoy)
            real_ = std::make_shared<const Realization>(action, bits, enum_budget);
        shift_ = rotation_number(action, g_);
        mpz_class m;
        mpz_fdiv_q(m.get_mpz_t(), x0_.get_num_mpz_t(), x0_.get_den_mpz_t());
        int_part_ = m;
        mpq_class frac = x0_ - mpq_class(m);
        p0_ = real_ ? real_->realize_inverse(frac)
                    : action.cantor_point(OrbitForm::rational(action.dim(), frac));
        reset();
    }

    const DenjoyAction& action() const { return *action_; }
    const LatticeVector& element() const { return g_; }
    const OrbitForm& translation() const { return shift_; }
    std::int64_t steps() const { return n_; }
    const DenjoyPoint& start_point() const { return p0_; }
    const DenjoyPoint& current_point() const { return p_; }

    void reset() {
        n_ = 0;
        p_ = p0_;
        lifted_ = action_->fiber(p0_);
    }

    void advance(std::int64_t steps = 1) {
        if (steps < 0) throw DomainError("lift iterator: negative step count");
        for (std::int64_t i = 0; i < steps; ++i) {
            p_ = action_->act(g_, p_);
            lifted_ = lifted_ + shift_;
            ++n_;
        }
    }

    /// floor(y_0 + n rho(g)).
    mpz_class winding() const { return action_->rho().floor(lifted_, action_->precision()); }

    /// F^n(x_0) - x_0 as an exact form when the action has no gaps.
    std::optional<OrbitForm> exact_displacement() const {
        if (real_) return std::nullopt;
        return lifted_ - action_->fiber(p0_);
    }

    Interval displacement() const {
        if (auto e = exact_displacement()) return action_->rho().enclose(*e, bits_);
        if (p_ == p0_) return Interval::exact(winding(), bits_);
        return real_->realize(p_) - real_->realize(p0_) + Interval::exact(winding(), bits_ + 32);
    }

    /// F^n(x_0); F(x + 1) = F(x) + 1 holds by construction of the winding term.
    Interval value() const { return start() + displacement(); }
    Interval start() const {
        Interval s = real_ ? real_->realize(p0_) : action_->rho().enclose(action_->fiber(p0_), bits_);
        return s + Interval::exact(int_part_, bits_ + 32);
    }

private:
    std::shared_ptr<const DenjoyAction> action_;
    std::shared_ptr<const Realization> real_;
    LatticeVector g_;
    mpq_class x0_;
    int bits_;
    OrbitForm shift_;
    mpz_class int_part_;
    DenjoyPoint p0_, p_;
    OrbitForm lifted_;
    std::int64_t n_ = 0;
};

struct RotationEstimate {
    std::int64_t n = 0;
    Interval quotient;   ///< (F^n(x_0) - x_0) / n
    Interval bracket;    ///< certified enclosure of rho(g) in [0, 1] derived from the quotient
    std::optional<OrbitForm> exact;  ///< the displacement, when it is exact
};

/// Poincaré estimate after n iterations.
///
/// When the displacement D is certified inside an open interval (k, k+1),
/// every x has F^n(x) - x in the same interval (an integer value would give a
/// periodic point, forcing n rho = k or k + 1), so n rho lies in [k, k+1].
/// Otherwise the bound |D - n rho| < 1 is used.
inline RotationEstimate rotation_number_estimate(LiftIterator& it, std::int64_t n) {
    if (n < 1) throw DomainError("rotation_number_estimate: n must be at least 1");
    if (it.steps() > n) it.reset();
    it.advance(n - it.steps());
    RotationEstimate est;
    est.n = n;
    Interval D = it.displacement();
    est.quotient = D / static_cast<long>(n);
    est.exact = it.exact_displacement();
    if (est.exact) {
        est.bracket = est.quotient;
        return est;
    }
    auto k = D.certified_floor();
    const int bits = D.precision();
    const mpq_class nn(static_cast<long>(n));
    if (k && !D.contains(mpq_class(*k)))
        est.bracket = Interval::hull(mpq_class(*k) / nn, mpq_class(*k + 1) / nn, bits);
    else
        est.bracket = Interval::hull((D.lower() - 1) / nn, (D.upper() + 1) / nn, bits);
    return est;
}

} // namespace denjoy
