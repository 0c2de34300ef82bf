#pragma once

// Polynomials with rational coefficients in the symbols gamma_1..gamma_d.
// Pfaffians of submatrices of theta are computed in this ring so that trace
// values come out as formal vectors rather than floating approximations.

#include <gmpxx.h>

#include <map>
#include <string>
#include <vector>

#include "denjoy/error.hpp"

namespace denjoy {

class GammaPolynomial {
public:
    using Monomial = std::vector<unsigned>;  ///< exponent of gamma_i at index i-1

    GammaPolynomial() = default;
    explicit GammaPolynomial(std::size_t d) : d_(d) {}
    GammaPolynomial(std::size_t d, const mpq_class& c) : d_(d) {
        if (sgn(c) != 0) terms_[Monomial(d, 0)] = c;
    }

    /// gamma_i, 1-based.
    static GammaPolynomial gamma(std::size_t d, std::size_t i) {
        if (i < 1 || i > d) throw DomainError("gamma index out of range");
        GammaPolynomial p(d);
        Monomial m(d, 0);
        m[i - 1] = 1;
        p.terms_[m] = 1;
        return p;
    }

    std::size_t dim() const { return d_; }
    const std::map<Monomial, mpq_class>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    int degree() const {
        int deg = terms_.empty() ? -1 : 0;
        for (const auto& [m, c] : terms_) {
            int s = 0;
            for (auto e : m) s += static_cast<int>(e);
            deg = std::max(deg, s);
        }
        return deg;
    }

    /// Coefficient of 1 and of each gamma_i; requires degree <= 1.
    std::vector<mpq_class> linear_coefficients() const {
        if (degree() > 1) throw DomainError("polynomial " + to_string() + " is not linear in gamma");
        std::vector<mpq_class> v(d_ + 1, 0);
        for (const auto& [m, c] : terms_) {
            std::size_t slot = 0;
            for (std::size_t i = 0; i < d_; ++i)
                if (m[i]) slot = i + 1;
            v[slot] = c;
        }
        return v;
    }

    friend GammaPolynomial operator+(const GammaPolynomial& a, const GammaPolynomial& b) {
        GammaPolynomial r = a;
        r.d_ = std::max(a.d_, b.d_);
        for (const auto& [m, c] : b.terms_) r.add(m, c);
        return r;
    }
    friend GammaPolynomial operator-(const GammaPolynomial& a) {
        GammaPolynomial r = a;
        for (auto& [m, c] : r.terms_) c = -c;
        return r;
    }
    friend GammaPolynomial operator-(const GammaPolynomial& a, const GammaPolynomial& b) { return a + (-b); }
    friend GammaPolynomial operator*(const GammaPolynomial& a, const GammaPolynomial& b) {
        GammaPolynomial r(std::max(a.d_, b.d_));
        for (const auto& [ma, ca] : a.terms_)
            for (const auto& [mb, cb] : b.terms_) {
                Monomial m(ma.size());
                for (std::size_t i = 0; i < m.size(); ++i) m[i] = ma[i] + mb[i];
                r.add(m, ca * cb);
            }
        return r;
    }
    friend bool operator==(const GammaPolynomial& a, const GammaPolynomial& b) { return a.terms_ == b.terms_; }

    /// "0", "1", "g1", "-g1*g2+1/2", terms in decreasing monomial order.
    std::string to_string() const {
        if (terms_.empty()) return "0";
        std::string s;
        for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
            const auto& [m, c] = *it;
            std::string mono;
            for (std::size_t i = 0; i < m.size(); ++i)
                for (unsigned e = 0; e < m[i]; ++e) mono += (mono.empty() ? "" : "*") + std::string("g") + std::to_string(i + 1);
            mpq_class a = abs(c);
            std::string term = mono.empty() ? a.get_str() : (a == 1 ? mono : a.get_str() + "*" + mono);
            if (sgn(c) < 0) s += "-";
            else if (!s.empty()) s += "+";
            s += term;
        }
        return s;
    }

private:
    void add(const Monomial& m, const mpq_class& c) {
        if (sgn(c) == 0) return;
        auto [it, inserted] = terms_.emplace(m, c);
        if (!inserted) {
            it->second += c;
            if (sgn(it->second) == 0) terms_.erase(it);
        }
    }

    std::size_t d_ = 0;
    std::map<Monomial, mpq_class> terms_;
};

template <class T>
struct RingTraits;

template <>
struct RingTraits<GammaPolynomial> {
    static GammaPolynomial zero(const GammaPolynomial& s) { return GammaPolynomial(s.dim()); }
    static GammaPolynomial one(const GammaPolynomial& s) { return GammaPolynomial(s.dim(), 1); }
    static bool is_zero(const GammaPolynomial& x) { return x.is_zero(); }
    static bool skew_pair(const GammaPolynomial& a, const GammaPolynomial& b) { return (a + b).is_zero(); }
};

} // namespace denjoy
