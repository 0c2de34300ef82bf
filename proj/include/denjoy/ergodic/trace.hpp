#pragma once

// The unique tracial state tau(sum f_g lambda_g) = integral of f_0 against mu.
//
// mu gives no mass to gaps and pushes forward to Lebesgue measure under phi,
// so for f = F o phi + bumps the integral is the Lebesgue integral of F in the
// y-coordinate. F is piecewise linear with knots at orbit forms, so the
// integral is a finite exact expression.

#include <gmpxx.h>

#include <string>

#include "denjoy/ergodic/crossed.hpp"

namespace denjoy {

namespace detail {

// Visits the circular segments [y_i, y_{i+1}] of the sorted positions, the
// last one wrapping through 1, with their exact lengths.
template <class F>
void for_each_segment(const RotationVector& rho, const std::vector<OrbitForm>& ys, F&& f) {
    const std::size_t n = ys.size();
    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t j = (i + 1) % n;
        OrbitForm len = ys[j] - ys[i];
        if (j == 0) len = len + mpq_class(1);
        f(i, j, rho.to_real(len));
    }
}

} // namespace detail

/// Integral of F over the circle in the y-coordinate.
inline Real integrate(const DenjoyAction& action, const PLFunction& f) {
    const auto& k = f.knots();
    if (k.empty()) return Real(0);
    if (k.size() == 1) return k[0].value;
    std::vector<OrbitForm> ys;
    for (const auto& kn : k) ys.push_back(kn.y);
    Real total(0);
    detail::for_each_segment(action.rho(), ys, [&](std::size_t i, std::size_t j, const Real& len) {
        total = total + len * (k[i].value + k[j].value) / Real(2);
    });
    return total;
}

/// Integral of F * G, exact for the piecewise quadratic product.
inline Real integrate_product(const DenjoyAction& action, const PLFunction& f, const PLFunction& g) {
    if (f.knots().empty() || g.knots().empty()) return Real(0);
    std::vector<OrbitForm> ys = PLFunction::merged_positions(action, f, g);
    std::vector<Real> fv, gv;
    for (const auto& y : ys) {
        fv.push_back(f.cantor_value(action, y));
        gv.push_back(g.cantor_value(action, y));
    }
    if (ys.size() == 1) return fv[0] * gv[0];
    Real total(0);
    detail::for_each_segment(action.rho(), ys, [&](std::size_t i, std::size_t j, const Real& len) {
        Real s = Real(2) * fv[i] * gv[i] + fv[i] * gv[j] + fv[j] * gv[i] + Real(2) * fv[j] * gv[j];
        total = total + len * s / Real(6);
    });
    return total;
}

/// tau(a) = integral of the lambda_0 coefficient; real coefficients only.
inline Real trace(const DenjoyAction& action, const CrossedElement& a) {
    const PLFunction* f0 = a.coefficient(LatticeVector(action.dim()));
    return f0 ? integrate(action, *f0) : Real(0);
}

/// tau(a b) = sum_g integral of a_g . (b_{-g} o g^{-1}).
inline Real trace_product(const DenjoyAction& action, const CrossedElement& a, const CrossedElement& b) {
    Real total(0);
    for (const auto& [g, f] : a.terms()) {
        const PLFunction* h = b.coefficient(-g);
        if (!h) continue;
        total = total + integrate_product(action, f, h->translated(action, g));
    }
    return total;
}

/// tau(a* a) = sum_g integral of F_g^2.
inline Real trace_of_square(const DenjoyAction& action, const CrossedElement& a) {
    Real total(0);
    for (const auto& [g, f] : a.terms()) total = total + integrate_product(action, f, f);
    return total;
}

enum class Membership { Yes, No, Undecided };

inline std::string to_string(Membership m) {
    switch (m) {
    case Membership::Yes: return "Yes";
    case Membership::No: return "No";
    case Membership::Undecided: return "Undecided";
    }
    return "?";
}

struct TraceIdealResult {
    Membership answer = Membership::Undecided;
    Real trace_of_square;  ///< tau(a* a)
    int bits = 0;          ///< precision at which the answer was decided
};

/// Membership of a in the trace ideal {a : tau(a* a) = 0}, which is the ideal
/// of elements whose coefficients all vanish on the minimal set.
inline TraceIdealResult in_trace_ideal(const DenjoyAction& action, const CrossedElement& a,
                                       const Precision& prec = {}) {
    if (!action.is_denjoy()) throw DomainError("in_trace_ideal: action is not Denjoy");
    prec.validate();
    TraceIdealResult r;
    bool vanishes = true;
    for (const auto& [g, f] : a.terms()) vanishes = vanishes && f.vanishes_on_minimal_set();
    if (vanishes) {
        r.answer = Membership::Yes;
        r.trace_of_square = Real(0);
        return r;
    }
    r.trace_of_square = trace_of_square(action, a);
    for (int bits = prec.working_bits;; bits = std::min(2 * bits, prec.ceiling_bits)) {
        r.bits = bits;
        if (r.trace_of_square.enclose(bits).is_positive()) {
            r.answer = Membership::No;
            return r;
        }
        if (bits >= prec.ceiling_bits) return r;
    }
}

} // namespace denjoy
