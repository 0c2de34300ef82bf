#pragma once

// The trace pairing tau_*: K_0 -> Z + gamma_1 Z + ... + gamma_d Z.
//
// The generator with label I pairs to pf(theta_I), computed as a polynomial
// in gamma; for the torus matrix theta it is 1 on the empty label, gamma_{i-1}
// on {1, i} and 0 otherwise, so every value is a formal integer vector
// (n_0, ..., n_d) standing for n_0 + sum n_i gamma_i.

#include <gmpxx.h>

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "denjoy/ktheory/k_groups.hpp"
#include "denjoy/ktheory/theta.hpp"

namespace denjoy {

struct TracePairing {
    std::map<KLabel, mpz_class> coefficients;
    std::vector<mpz_class> formal;     ///< (n_0, n_1, ..., n_d)
    Interval value;
    std::optional<std::string> decimal;  ///< certified 30-digit rendering, when the enclosure allows it

    std::string formal_string() const {
        std::string s;
        for (std::size_t i = 0; i < formal.size(); ++i) {
            if (sgn(formal[i]) == 0) continue;
            mpz_class a = abs(formal[i]);
            if (sgn(formal[i]) < 0) s += "-";
            else if (!s.empty()) s += "+";
            if (i == 0) s += a.get_str();
            else s += (a == 1 ? "" : a.get_str() + "*") + "g" + std::to_string(i);
        }
        return s.empty() ? "0" : s;
    }
};

/// pf(theta_I) as a formal vector; rejects labels outside {1..d+1}.
inline std::vector<mpz_class> label_trace(const TorusTheta& theta, const KLabel& label) {
    if (label.max_index() > theta.size())
        throw DomainError("label " + label.to_string() + " uses an index above " + std::to_string(theta.size()));
    if (label.cardinality() % 2 != 0) throw DomainError("label " + label.to_string() + " is not a K_0 label");
    GammaPolynomial pf = pfaffian(theta_submatrix(theta, label.indices()));
    std::vector<mpq_class> c = pf.linear_coefficients();
    std::vector<mpz_class> v;
    for (const auto& q : c) {
        if (q.get_den() != 1) throw DomainError("pfaffian of " + label.to_string() + " has a non-integral coefficient");
        v.push_back(q.get_num());
    }
    return v;
}

/// Value of an integer vector (n_0, ..., n_d) at gamma.
inline Interval evaluate_formal(const RotationVector& gamma, const std::vector<mpz_class>& n, int bits) {
    if (n.size() != gamma.dim() + 1) throw DomainError("formal vector has the wrong length");
    const auto& g = gamma.gamma_enclosures(bits + 8);
    Interval s = Interval::exact(n[0], bits + 8);
    for (std::size_t i = 1; i < n.size(); ++i)
        if (sgn(n[i]) != 0) s += g[i - 1] * Interval::exact(n[i], bits + 8);
    return s;
}

inline TracePairing trace_pairing(const TorusTheta& theta, const std::map<KLabel, mpz_class>& element, int bits = 128) {
    KTheory kt = k_groups(theta.dim());
    TracePairing tp;
    tp.coefficients = element;
    tp.formal.assign(theta.dim() + 1, 0);
    for (const auto& [label, coeff] : element) {
        if (kt.k0.position(label) < 0)
            throw DomainError("label " + label.to_string() + " is not a K_0 basis label for d = " +
                              std::to_string(theta.dim()));
        if (sgn(coeff) == 0) continue;
        auto v = label_trace(theta, label);
        for (std::size_t i = 0; i < v.size(); ++i) tp.formal[i] += coeff * v[i];
    }
    tp.value = evaluate_formal(theta.gamma(), tp.formal, bits);
    for (int b = bits; b <= 4 * bits && !tp.decimal; b *= 2)
        tp.decimal = evaluate_formal(theta.gamma(), tp.formal, b).decimal(30);
    return tp;
}

enum class ZeroTest { Zero, NonZero, Undecided };
enum class Sign { Positive, Negative, Zero, Undecided };

inline std::string to_string(ZeroTest z) {
    switch (z) {
    case ZeroTest::Zero: return "Zero";
    case ZeroTest::NonZero: return "NonZero";
    case ZeroTest::Undecided: return "Undecided";
    }
    return "?";
}
inline std::string to_string(Sign s) {
    switch (s) {
    case Sign::Positive: return "Positive";
    case Sign::Negative: return "Negative";
    case Sign::Zero: return "Zero";
    case Sign::Undecided: return "Undecided";
    }
    return "?";
}

/// Sign of n_0 + sum n_i gamma_i; Zero only for the formal zero vector.
inline Sign positivity(const RotationVector& gamma, const std::vector<mpz_class>& n, const Precision& prec = {}) {
    prec.validate();
    if (std::all_of(n.begin(), n.end(), [](const mpz_class& x) { return sgn(x) == 0; })) {
        if (n.size() != gamma.dim() + 1) throw DomainError("formal vector has the wrong length");
        return Sign::Zero;
    }
    for (int bits = prec.working_bits;; bits = std::min(2 * bits, prec.ceiling_bits)) {
        Interval v = evaluate_formal(gamma, n, bits);
        if (v.is_positive()) return Sign::Positive;
        if (v.is_negative()) return Sign::Negative;
        if (bits >= prec.ceiling_bits) return Sign::Undecided;
    }
}

inline ZeroTest is_zero_pairing(const RotationVector& gamma, const std::vector<mpz_class>& n,
                                const Precision& prec = {}) {
    switch (positivity(gamma, n, prec)) {
    case Sign::Zero: return ZeroTest::Zero;
    case Sign::Positive:
    case Sign::Negative: return ZeroTest::NonZero;
    case Sign::Undecided: return ZeroTest::Undecided;
    }
    return ZeroTest::Undecided;
}

/// Certifies is_zero_pairing = NonZero for every nonzero vector in the box
/// |n_i| <= bound at once, sweeping columns (n_1..n_d) so that each interval
/// evaluation covers all n_0.
inline IndependenceCertificate certify_injectivity(const RotationVector& gamma, int bound, const Precision& prec = {}) {
    prec.validate();
    return certify_independence(gamma.gamma(), bound, prec);
}

/// Generators of the range subgroup: the values of the labels {} and {1, i}.
inline std::vector<std::pair<KLabel, std::vector<mpz_class>>> range_generators(const TorusTheta& theta) {
    std::vector<std::pair<KLabel, std::vector<mpz_class>>> out;
    out.emplace_back(KLabel(), label_trace(theta, KLabel()));
    for (std::size_t i = 2; i <= theta.size(); ++i) {
        KLabel l = KLabel::of({1, i});
        out.emplace_back(l, label_trace(theta, l));
    }
    return out;
}

} // namespace denjoy
