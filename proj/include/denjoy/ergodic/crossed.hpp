#pragma once

// Finitely supported elements of the crossed product C(T) x| Z^d.
//
// Coefficients are continuous functions on the Denjoy circle of the form
//   f = F o phi + sum over gaps of bumps,
// where F is piecewise linear on the circle in the y-coordinate with knots at
// orbit forms, and each bump is piecewise linear in the gap parameter t and
// vanishes at both endpoints of its gap. This class is closed under sums,
// rational scaling and the action, and integrates exactly against mu, which
// only sees F.

#include <gmpxx.h>

#include <algorithm>
#include <map>
#include <utility>
#include <vector>

#include "denjoy/model/action.hpp"

namespace denjoy {

class PLFunction {
public:
    struct Knot {
        OrbitForm y;  ///< normalized to [0, 1)
        Real value;
    };
    /// (t, value) pairs with 0 < t < 1 increasing; the bump is 0 at t = 0 and t = 1.
    using Bump = std::vector<std::pair<mpq_class, mpq_class>>;

    PLFunction() = default;

    static PLFunction constant(std::size_t d, const Real& v) {
        PLFunction f;
        f.knots_.push_back(Knot{OrbitForm(d), v});
        return f;
    }

    /// F with the given knots, joined linearly around the circle.
    static PLFunction from_knots(const DenjoyAction& action, std::vector<Knot> knots) {
        const auto& rho = action.rho();
        for (auto& k : knots) {
            if (k.y.dim() != action.dim()) throw DomainError("knot dimension does not match the action");
            k.y = rho.normalize(k.y, action.precision());
        }
        sort_knots(action, knots);
        for (std::size_t i = 1; i < knots.size(); ++i)
            if (knots[i].y == knots[i - 1].y) throw DomainError("repeated knot at " + knots[i].y.to_string());
        PLFunction f;
        f.knots_ = std::move(knots);
        return f;
    }

    /// A function supported in the closure of one gap.
    static PLFunction bump(const DenjoyAction& action, const GapLabel& gap, Bump knots) {
        (void)action.gap_length(gap);
        for (std::size_t i = 0; i < knots.size(); ++i) {
            if (knots[i].first <= 0 || knots[i].first >= 1) throw DomainError("bump knots must lie in (0,1)");
            if (i && knots[i].first <= knots[i - 1].first) throw DomainError("bump knots must increase");
        }
        PLFunction f;
        if (!knots.empty()) f.bumps_.emplace(gap, std::move(knots));
        return f;
    }

    const std::vector<Knot>& knots() const { return knots_; }
    const std::map<GapLabel, Bump>& bumps() const { return bumps_; }

    /// F == 0, i.e. f vanishes on the minimal set. Decided symbolically; a
    /// knot value that is an unsimplified zero expression counts as nonzero.
    bool vanishes_on_minimal_set() const {
        return std::all_of(knots_.begin(), knots_.end(),
                           [](const Knot& k) { return k.value.is_rational() && sgn(k.value.rational()) == 0; });
    }

    /// F at y; exact when y is a knot or F is rational-valued with rational knots.
    Real cantor_value(const DenjoyAction& action, const OrbitForm& y_in) const {
        if (knots_.empty()) return Real(0);
        if (knots_.size() == 1) return knots_[0].value;
        const auto& rho = action.rho();
        OrbitForm y = rho.normalize(y_in, action.precision());
        // first knot strictly above y
        std::size_t hi = 0;
        while (hi < knots_.size()) {
            int c = rho.compare(knots_[hi].y, y, action.precision());
            if (c == 0) return knots_[hi].value;
            if (c > 0) break;
            ++hi;
        }
        const std::size_t n = knots_.size();
        const Knot& a = knots_[(hi + n - 1) % n];
        const Knot& b = knots_[hi % n];
        OrbitForm from = a.y, to = b.y, at = y;
        if (hi == 0) from = from + mpq_class(-1);
        if (hi == n) to = to + mpq_class(1);
        Real frac = rho.to_real(at - from) / rho.to_real(to - from);
        return a.value + (b.value - a.value) * frac;
    }

    /// f(p).
    Real evaluate(const DenjoyAction& action, const DenjoyPoint& p) const {
        Real base = cantor_value(action, action.fiber(p));
        const auto* gp = std::get_if<GapPoint>(&p);
        if (!gp) return base;
        auto it = bumps_.find(gp->gap);
        if (it == bumps_.end()) return base;
        return base + Real(bump_value(it->second, gp->t));
    }

    /// f o g^{-1}: knots move by rho(g), gaps by g.
    PLFunction translated(const DenjoyAction& action, const LatticeVector& g) const {
        const auto& rho = action.rho();
        PLFunction f;
        OrbitForm shift = rho.lift(g);
        for (const auto& k : knots_) f.knots_.push_back(Knot{rho.normalize(k.y + shift, action.precision()), k.value});
        sort_knots(action, f.knots_);
        for (const auto& [gap, b] : bumps_) f.bumps_.emplace(GapLabel{gap.orbit, gap.g + g}, b);
        return f;
    }

    PLFunction scaled(const mpq_class& q) const {
        PLFunction f = *this;
        for (auto& k : f.knots_) k.value = k.value * Real(q);
        for (auto& [gap, b] : f.bumps_)
            for (auto& kv : b) kv.second *= q;
        return f;
    }

    static PLFunction sum(const DenjoyAction& action, const PLFunction& f, const PLFunction& g) {
        PLFunction out;
        if (f.knots_.empty()) out.knots_ = g.knots_;
        else if (g.knots_.empty()) out.knots_ = f.knots_;
        else {
            for (const auto& y : merged_positions(action, f, g))
                out.knots_.push_back(Knot{y, f.cantor_value(action, y) + g.cantor_value(action, y)});
        }
        out.bumps_ = f.bumps_;
        for (const auto& [gap, b] : g.bumps_) {
            auto it = out.bumps_.find(gap);
            if (it == out.bumps_.end()) out.bumps_.emplace(gap, b);
            else it->second = add_bumps(it->second, b);
        }
        return out;
    }

    /// Sorted union of the knot positions of f and g.
    static std::vector<OrbitForm> merged_positions(const DenjoyAction& action, const PLFunction& f,
                                                   const PLFunction& g) {
        std::vector<OrbitForm> ys;
        for (const auto& k : f.knots_) ys.push_back(k.y);
        for (const auto& k : g.knots_) ys.push_back(k.y);
        const auto& rho = action.rho();
        std::sort(ys.begin(), ys.end(), [&](const OrbitForm& a, const OrbitForm& b) {
            return rho.compare(a, b, action.precision()) < 0;
        });
        ys.erase(std::unique(ys.begin(), ys.end()), ys.end());
        return ys;
    }

private:
    static void sort_knots(const DenjoyAction& action, std::vector<Knot>& knots) {
        const auto& rho = action.rho();
        std::sort(knots.begin(), knots.end(), [&](const Knot& a, const Knot& b) {
            return rho.compare(a.y, b.y, action.precision()) < 0;
        });
    }

    static mpq_class bump_value(const Bump& b, const mpq_class& t) {
        mpq_class t0 = 0, v0 = 0;
        for (const auto& [t1, v1] : b) {
            if (t <= t1) return v0 + (v1 - v0) * (t - t0) / (t1 - t0);
            t0 = t1;
            v0 = v1;
        }
        return v0 * (1 - t) / (1 - t0);
    }

    static Bump add_bumps(const Bump& a, const Bump& b) {
        std::vector<mpq_class> ts;
        for (const auto& kv : a) ts.push_back(kv.first);
        for (const auto& kv : b) ts.push_back(kv.first);
        std::sort(ts.begin(), ts.end());
        ts.erase(std::unique(ts.begin(), ts.end()), ts.end());
        Bump out;
        for (const auto& t : ts) out.emplace_back(t, bump_value(a, t) + bump_value(b, t));
        return out;
    }

    std::vector<Knot> knots_;
    std::map<GapLabel, Bump> bumps_;
};

/// sum_g f_g lambda_g with finitely many terms.
class CrossedElement {
public:
    CrossedElement() = default;

    static CrossedElement unit(std::size_t d) { return monomial(PLFunction::constant(d, Real(1)), LatticeVector(d)); }
    static CrossedElement monomial(PLFunction f, const LatticeVector& g) {
        CrossedElement a;
        a.terms_.emplace(g, std::move(f));
        return a;
    }

    const std::map<LatticeVector, PLFunction>& terms() const { return terms_; }
    bool empty() const { return terms_.empty(); }

    /// The coefficient of lambda_g, or nullptr.
    const PLFunction* coefficient(const LatticeVector& g) const {
        auto it = terms_.find(g);
        return it == terms_.end() ? nullptr : &it->second;
    }

    static CrossedElement sum(const DenjoyAction& action, const CrossedElement& a, const CrossedElement& b) {
        CrossedElement out = a;
        for (const auto& [g, f] : b.terms_) {
            auto it = out.terms_.find(g);
            if (it == out.terms_.end()) out.terms_.emplace(g, f);
            else it->second = PLFunction::sum(action, it->second, f);
        }
        return out;
    }

    CrossedElement scaled(const mpq_class& q) const {
        CrossedElement out;
        for (const auto& [g, f] : terms_) out.terms_.emplace(g, f.scaled(q));
        return out;
    }

    /// a* for real coefficients: (f lambda_g)* = (f o g) lambda_{-g}.
    CrossedElement adjoint(const DenjoyAction& action) const {
        CrossedElement out;
        for (const auto& [g, f] : terms_) out.terms_.emplace(-g, f.translated(action, -g));
        return out;
    }

private:
    std::map<LatticeVector, PLFunction> terms_;
};

} // namespace denjoy
