#pragma once

// Geometric realization of a Denjoy action on the standard circle.
//
//   psi(p) = ( y(p) + sum_{gaps h : y_h in [0, y(p))} l_h + t(p) * l_{gap(p)} ) / (1 + L)
//
// where y = phi(p) and L is the total gap length. Gaps with ||g||_1 <= N are
// enumerated by shells and sorted by y; the rest contribute at most the exact
// tail sum, which is what makes every value certified. N is chosen per
// blown-up orbit so that the tail, scaled by 1/(1+L), stays below the
// requested width.

#include <gmpxx.h>

#include <algorithm>
#include <cmath>
#include <memory>
#include <vector>

#include "denjoy/model/action.hpp"

namespace denjoy {

class Realization {
public:
    struct Entry {
        GapLabel label;
        OrbitForm y;
        Interval y_enc;
        mpq_class length;
        mpq_class before;  ///< sum of enumerated lengths with smaller y
        Interval left;     ///< psi of the left endpoint
        Interval right;    ///< psi of the right endpoint
    };

    /// Enumerates gaps until psi is certified to width 2^-bits.
    Realization(const DenjoyAction& action, int bits, std::size_t enum_budget = kDefaultEnumBudget)
        : action_(std::make_shared<const DenjoyAction>(action)), bits_(bits), ibits_(bits + 24) {
        if (bits < 8) throw DomainError("realization precision must be at least 8 bits");
        if (action.classify() == ActionClass::FiniteOrbit)
            throw DomainError("realization requires an action with infinite orbits");
        one_plus_total_ = 1 + action.total_gap_length();
        build(enum_budget);
    }

    const DenjoyAction& action() const { return *action_; }
    int bits() const { return bits_; }
    const std::vector<Entry>& entries() const { return entries_; }
    const std::vector<std::int64_t>& shells() const { return shells_; }
    /// Certified bound on the total length of the gaps that were not enumerated.
    const mpq_class& tail() const { return tail_; }
    const mpq_class& scale() const { return one_plus_total_; }

    /// psi(p) as a certified interval of width <= 2^-bits.
    Interval realize(const DenjoyPoint& p) const {
        const auto& rho = action_->rho();
        OrbitForm y = action_->fiber(p);
        std::size_t idx = count_below(y);
        mpq_class sum = idx < entries_.size() ? entries_[idx].before : enumerated_total_;
        Interval v = rho.enclose(y, ibits_) + sum;
        if (!y.is_zero() && sgn(tail_) > 0) v = v.widen_up(tail_);
        if (const auto* gp = std::get_if<GapPoint>(&p)) {
            v = v + gp->t * action_->gap_length(gp->gap);
        } else if (std::get<CantorPoint>(p).side == Side::RightOf) {
            v = v + action_->gap_length(*std::get<CantorPoint>(p).gap);
        }
        return v / one_plus_total_;
    }

    /// A point p whose realization contains x up to the certified width.
    /// Points inside a located gap come back as the exact gap code.
    DenjoyPoint realize_inverse(const mpq_class& x_in) const {
        if (x_in < 0 || x_in >= 1) throw DomainError("realize_inverse: x must lie in [0,1)");
        const mpq_class& x = x_in;
        if (entries_.empty()) return action_->cantor_point(OrbitForm::rational(action_->dim(), x));
        // last entry whose left endpoint may lie at or below x
        auto it = std::upper_bound(entries_.begin(), entries_.end(), x, [](const mpq_class& v, const Entry& e) {
            return e.left.certainly_greater(v);
        });
        if (it != entries_.begin()) {
            const Entry& e = *(it - 1);
            if (e.left.contains(x)) return action_->gap_point(e.label, 0);
            if (e.right.contains(x)) return action_->gap_point(e.label, 1);
            if (e.right.certainly_greater(x)) {
                // strictly inside the gap image: invert the affine parametrization
                Interval t = (Interval::exact(x * one_plus_total_, ibits_) - e.left * one_plus_total_) / e.length;
                mpq_class tm = t.midpoint();
                if (tm <= 0 || tm >= 1) tm = mpq_class(1, 2);  // unreachable for x strictly inside
                return action_->gap_point(e.label, round_to(tm, bits_ + 4));
            }
        }
        // between two enumerated gaps: y = x(1+L) - S - u, u in [0, tail]
        const mpq_class sum = it == entries_.begin() ? mpq_class(0) : (it - 1)->before + (it - 1)->length;
        mpq_class y_hi = x * one_plus_total_ - sum;
        mpq_class y_mid = y_hi - tail_ / 2;
        y_mid = round_to(y_mid, ibits_);
        if (y_mid < 0) y_mid = 0;
        if (y_mid >= 1) y_mid = 1 - mpq_class(1, mpz_class(1) << ibits_);
        return action_->cantor_point(OrbitForm::rational(action_->dim(), y_mid));
    }

    /// Number of enumerated gaps whose y lies strictly below y.
    std::size_t count_below(const OrbitForm& y) const {
        const auto& rho = action_->rho();
        const Precision& prec = action_->precision();
        Interval ye = rho.enclose(y, ibits_);
        auto less = [&](const Entry& e) {
            Ordering o = compare(e.y_enc, ye);
            if (o == Ordering::Less) return true;
            if (o == Ordering::Greater) return false;
            return rho.compare(e.y, y, prec.with_working(ibits_ * 2)) < 0;
        };
        std::size_t lo = 0, hi = entries_.size();
        while (lo < hi) {
            std::size_t mid = (lo + hi) / 2;
            if (less(entries_[mid])) lo = mid + 1;
            else hi = mid;
        }
        return lo;
    }

private:
    static mpq_class round_to(const mpq_class& q, int bits) {
        mpz_class scale = mpz_class(1) << bits;
        mpz_class n;
        mpz_class num = q.get_num() * scale;
        mpz_fdiv_q(n.get_mpz_t(), num.get_mpz_t(), q.get_den_mpz_t());
        return mpq_class(n, scale);
    }

    void build(std::size_t budget) {
        const auto& blowups = action_->blowups();
        const std::size_t k = blowups.size();
        tail_ = 0;
        enumerated_total_ = 0;
        if (k == 0) return;
        const std::size_t d = action_->dim();
        // tail(N_j) * k <= 2^-(bits+1) * (1+L)
        mpq_class target = one_plus_total_ / (mpq_class(mpz_class(1) << (bits_ + 1)) * static_cast<long>(k));
        std::size_t count = 0;
        shells_.assign(k, 0);
        for (std::size_t j = 0; j < k; ++j) {
            const auto& lengths = blowups[j].lengths;
            std::int64_t n = 0;
            mpq_class t = lengths.total() - lengths.shell_mass(0);
            count += 1;
            while (t > target) {
                ++n;
                mpz_class sz = shell_size(d, static_cast<std::size_t>(n));
                if (count + sz.get_d() > static_cast<double>(budget)) {
                    mpq_class achieved = (tail_ + t) / one_plus_total_;
                    throw BudgetExceeded("realization: enumeration budget of " + std::to_string(budget) +
                                             " gaps exhausted at shell " + std::to_string(n),
                                         std::log2(achieved.get_d()));
                }
                count += sz.get_ui();
                t -= lengths.shell_mass(n);
            }
            shells_[j] = n;
            tail_ += t;
        }

        const auto& rho = action_->rho();
        const Precision& prec = action_->precision();
        entries_.reserve(count);
        const auto& gam = rho.gamma_enclosures(ibits_ + 8);
        for (std::size_t j = 0; j < k; ++j) {
            const auto& b = blowups[j];
            Interval base = rho.enclose(b.base_point, ibits_);
            for (std::int64_t n = 0; n <= shells_[j]; ++n) {
                mpq_class len = b.lengths.length_at_norm(n);
                for_each_in_shell(d, n, [&](const LatticeVector& g) {
                    Interval v = base;
                    for (std::size_t i = 0; i < d; ++i)
                        if (g[i] != 0) v += gam[i] * static_cast<long>(g[i]);
                    OrbitForm y = b.base_point + rho.lift(g);
                    auto fl = v.certified_floor();
                    mpz_class f = fl ? *fl : rho.floor(y, prec.with_working(ibits_ * 2));
                    if (f != 0) {
                        y = y + mpq_class(-f);
                        v = v - Interval::exact(f, ibits_);
                    }
                    entries_.push_back(Entry{GapLabel{j, g}, std::move(y), std::move(v), len, 0, Interval(), Interval()});
                });
            }
        }
        std::sort(entries_.begin(), entries_.end(), [&](const Entry& a, const Entry& b) {
            Ordering o = compare(a.y_enc, b.y_enc);
            if (o != Ordering::Undecided) return o == Ordering::Less;
            return rho.compare(a.y, b.y, prec.with_working(ibits_ * 2)) < 0;
        });
        mpq_class running = 0;
        for (auto& e : entries_) {
            e.before = running;
            running += e.length;
            Interval l = e.y_enc + e.before;
            if (!e.y.is_zero() && sgn(tail_) > 0) l = l.widen_up(tail_);
            e.left = l / one_plus_total_;
            e.right = (l + e.length) / one_plus_total_;
        }
        enumerated_total_ = running;
    }

    std::shared_ptr<const DenjoyAction> action_;
    int bits_;
    int ibits_;
    mpq_class one_plus_total_;
    mpq_class tail_;
    mpq_class enumerated_total_;
    std::vector<std::int64_t> shells_;
    std::vector<Entry> entries_;
};

/// psi(p) to width 2^-bits; builds a throwaway Realization.
inline Interval realize(const DenjoyAction& action, const DenjoyPoint& p, int bits,
                        std::size_t enum_budget = kDefaultEnumBudget) {
    if (!action.is_denjoy()) throw DomainError("realize: action is not Denjoy");
    return Realization(action, bits, enum_budget).realize(p);
}

inline DenjoyPoint realize_inverse(const DenjoyAction& action, const mpq_class& x, int bits,
                                   std::size_t enum_budget = kDefaultEnumBudget) {
    if (!action.is_denjoy()) throw DomainError("realize_inverse: action is not Denjoy");
    return Realization(action, bits, enum_budget).realize_inverse(x);
}

} // namespace denjoy
