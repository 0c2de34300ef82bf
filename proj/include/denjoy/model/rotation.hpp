#pragma once

// Rotation vectors and exact orbit coordinates.
//
// The rotation vector gamma = (gamma_1, ..., gamma_d) defines the homomorphism
// rho(g) = sum g_i gamma_i mod 1. Points on orbits of the rotation action are
// kept as OrbitForms c + sum n_i gamma_i with c rational and n_i integer, so
// group-law identities hold exactly. When 1, gamma_1, ..., gamma_d are
// rationally independent two forms denote the same real iff they coincide
// coefficient-wise, and every order comparison between distinct forms is
// decided by interval refinement.

#include <gmpxx.h>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "denjoy/circle/circle.hpp"
#include "denjoy/model/lattice.hpp"

namespace denjoy {

/// c + sum_i n_i gamma_i.
class OrbitForm {
public:
    OrbitForm() = default;
    explicit OrbitForm(std::size_t d) : coeffs_(d) {}
    OrbitForm(mpq_class constant, LatticeVector coeffs) : constant_(std::move(constant)), coeffs_(std::move(coeffs)) {
        constant_.canonicalize();
    }

    static OrbitForm rational(std::size_t d, const mpq_class& q) { return OrbitForm(q, LatticeVector(d)); }

    std::size_t dim() const { return coeffs_.dim(); }
    const mpq_class& constant() const { return constant_; }
    const LatticeVector& coeffs() const { return coeffs_; }
    bool is_rational() const { return coeffs_.is_zero(); }
    bool is_zero() const { return is_rational() && sgn(constant_) == 0; }

    friend OrbitForm operator+(const OrbitForm& a, const OrbitForm& b) {
        return OrbitForm(a.constant_ + b.constant_, a.coeffs_ + b.coeffs_);
    }
    friend OrbitForm operator-(const OrbitForm& a, const OrbitForm& b) {
        return OrbitForm(a.constant_ - b.constant_, a.coeffs_ - b.coeffs_);
    }
    friend OrbitForm operator-(const OrbitForm& a) { return OrbitForm(-a.constant_, -a.coeffs_); }
    friend OrbitForm operator+(const OrbitForm& a, const mpq_class& q) { return OrbitForm(a.constant_ + q, a.coeffs_); }

    friend bool operator==(const OrbitForm& a, const OrbitForm& b) {
        return a.constant_ == b.constant_ && a.coeffs_ == b.coeffs_;
    }

    /// "1/3+2*g1-g2"; "0" for the zero form.
    std::string to_string() const {
        std::string s;
        if (sgn(constant_) != 0) s = constant_.get_str();
        for (std::size_t i = 0; i < coeffs_.dim(); ++i) {
            const std::int64_t n = coeffs_[i];
            if (n == 0) continue;
            if (n < 0) s += '-';
            else if (!s.empty()) s += '+';
            const std::int64_t m = n < 0 ? -n : n;
            if (m != 1) s += std::to_string(m) + "*";
            s += "g" + std::to_string(i + 1);
        }
        return s.empty() ? "0" : s;
    }

    /// Inverse of to_string for a given dimension. Accepts rationals,
    /// decimals, `k*gI` and `gI` terms joined by + and -.
    static OrbitForm parse(std::string_view text, std::size_t d);

private:
    mpq_class constant_ = 0;
    LatticeVector coeffs_;
};

/// Result of the integer-relation search behind a rotation vector.
struct IndependenceCertificate {
    bool declared = true;        ///< the caller asserts rational independence
    int bound = 0;               ///< searched box |n_i| <= bound
    int precision_bits = 0;      ///< highest precision needed to separate
    bool verified = false;       ///< no relation found in the box
    std::optional<mpq_class> min_distance;  ///< lower bound on min |n_0 + sum n_i gamma_i| over the box
    std::optional<LatticeVector> relation;  ///< (n_1..n_d) of a column that failed to separate
    std::uint64_t columns = 0;   ///< number of (n_1..n_d) columns swept
};

/// Sweeps every nonzero (n_0, n_1, ..., n_d) with |n_i| <= bound and checks
/// that n_0 + sum n_i gamma_i is separated from zero. Each column (n_1..n_d)
/// covers all n_0 at once: it is certified when the enclosure of
/// sum n_i gamma_i contains no integer.
inline IndependenceCertificate certify_independence(const std::vector<Real>& gamma, int bound,
                                                    const Precision& prec) {
    const std::size_t d = gamma.size();
    IndependenceCertificate cert;
    cert.bound = bound;
    cert.precision_bits = prec.working_bits;
    if (d == 0 || bound < 0) throw DomainError("certify_independence: empty vector or negative bound");

    auto gamma_at = [&](int bits) {
        std::vector<Interval> g;
        for (const auto& x : gamma) g.push_back(x.enclose(bits));
        return g;
    };
    std::vector<std::vector<Interval>> tables;  // per doubling level
    tables.reserve(32);
    auto table = [&](std::size_t level) -> const std::vector<Interval>& {
        while (tables.size() <= level) tables.push_back(gamma_at(prec.working_bits << tables.size()));
        return tables[level];
    };

    BigFloat best(prec.working_bits);
    bool have_best = false;
    BigFloat fl(prec.working_bits), dist(prec.working_bits);
    auto distance_to_integers = [&](const Interval& s) -> bool {
        // true when s contains no integer; updates best with a lower bound on the distance
        auto f = s.certified_floor();
        if (!f) return false;
        if (mpfr_integer_p(s.lo().get())) return false;
        mpfr_set_prec(fl.get(), s.precision());
        mpfr_set_prec(dist.get(), s.precision());
        mpfr_floor(fl.get(), s.lo().get());
        mpfr_sub(dist.get(), s.lo().get(), fl.get(), MPFR_RNDD);
        BigFloat up(s.precision());
        mpfr_ceil(up.get(), s.hi().get());
        mpfr_sub(up.get(), up.get(), s.hi().get(), MPFR_RNDD);
        if (mpfr_less_p(up.get(), dist.get())) mpfr_set(dist.get(), up.get(), MPFR_RNDD);
        if (!have_best || mpfr_less_p(dist.get(), best.get())) {
            mpfr_set_prec(best.get(), mpfr_get_prec(dist.get()));
            mpfr_set(best.get(), dist.get(), MPFR_RNDD);
            have_best = true;
        }
        return true;
    };
    auto column_sum = [&](const LatticeVector& n, std::size_t level) {
        const auto& g = table(level);
        Interval s = Interval::exact(0L, g[0].precision());
        for (std::size_t i = 0; i < d; ++i)
            if (n[i] != 0) s += g[i] * static_cast<long>(n[i]);
        return s;
    };

    // Odometer over (n_1..n_{d-1}); the last coordinate is swept by repeated addition.
    LatticeVector head(d);
    for (std::size_t i = 0; i + 1 < d; ++i) head[i] = -bound;
    const auto& g0 = table(0);
    bool ok = true;
    for (;;) {
        LatticeVector n = head;
        n[d - 1] = -bound;
        Interval s = column_sum(n, 0);
        for (std::int64_t last = -bound; last <= bound; ++last) {
            n[d - 1] = last;
            if (last > -bound) s += g0[d - 1];
            ++cert.columns;
            if (n.is_zero()) continue;  // n_0 != 0 is an exact nonzero integer
            if (distance_to_integers(s)) continue;
            // refine this column alone
            bool separated = false;
            for (std::size_t level = 1; (prec.working_bits << level) <= prec.ceiling_bits; ++level) {
                if (distance_to_integers(column_sum(n, level))) {
                    cert.precision_bits = std::max(cert.precision_bits, prec.working_bits << level);
                    separated = true;
                    break;
                }
            }
            if (!separated) {
                ok = false;
                cert.relation = n;
                break;
            }
        }
        if (!ok) break;
        if (d == 1) break;
        bool wrapped = true;
        for (std::size_t j = d - 1; j-- > 0;) {
            if (head[j] < bound) {
                ++head[j];
                wrapped = false;
                break;
            }
            head[j] = -bound;
        }
        if (wrapped) break;
    }
    cert.verified = ok;
    if (ok && have_best) cert.min_distance = best.to_rational();
    if (ok && !have_best) cert.min_distance = mpq_class(1);
    return cert;
}

/// Box size used for a rotation vector's own certificate: about 2e5 columns.
inline int default_certificate_bound(std::size_t d) {
    const double side = std::pow(2e5, 1.0 / static_cast<double>(d));
    return std::clamp(static_cast<int>((side - 1) / 2), 1, 100);
}

class RotationVector {
public:
    RotationVector() = default;

    /// Validates 0 < gamma_i < 1 and runs the independence certificate when
    /// every gamma_i is irrational.
    explicit RotationVector(std::vector<Real> gamma, const Precision& prec = {}, bool declared_independent = true,
                            std::optional<int> certificate_bound = std::nullopt)
        : gamma_(std::move(gamma)), cache_(std::make_shared<Cache>()) {
        if (gamma_.empty()) throw DomainError("rotation vector: d must be positive");
        for (std::size_t i = 0; i < gamma_.size(); ++i) {
            if (denjoy::compare(Real(0), gamma_[i], prec) != Ordering::Less ||
                denjoy::compare(gamma_[i], Real(1), prec) != Ordering::Less)
                throw DomainError("rotation vector: gamma_" + std::to_string(i + 1) + " must lie in (0,1)");
        }
        certificate_.declared = declared_independent;
        if (!all_irrational()) return;
        certificate_ = certify_independence(gamma_, certificate_bound.value_or(default_certificate_bound(dim())),
                                            prec);
        certificate_.declared = declared_independent;
    }

    std::size_t dim() const { return gamma_.size(); }
    const std::vector<Real>& gamma() const { return gamma_; }
    const Real& gamma(std::size_t i) const { return gamma_.at(i); }
    const IndependenceCertificate& certificate() const { return certificate_; }

    bool all_rational() const {
        return std::all_of(gamma_.begin(), gamma_.end(), [](const Real& g) { return g.is_rational(); });
    }
    bool all_irrational() const {
        return std::none_of(gamma_.begin(), gamma_.end(), [](const Real& g) { return g.is_rational(); });
    }
    /// True when orbit forms can be compared formally.
    bool independent() const { return all_irrational() && certificate_.declared && certificate_.verified; }

    /// The unreduced lift sum g_i gamma_i as a form; rational gamma_i are folded
    /// into the constant.
    OrbitForm lift(const LatticeVector& g) const {
        check_dim(g.dim());
        OrbitForm f(dim());
        mpq_class c = 0;
        LatticeVector n(dim());
        for (std::size_t i = 0; i < dim(); ++i) {
            if (gamma_[i].is_rational()) c += gamma_[i].rational() * mpq_class(mpz_class(static_cast<long>(g[i])));
            else n[i] = g[i];
        }
        return OrbitForm(c, n);
    }
    /// rho(g) = sum g_i gamma_i mod 1.
    OrbitForm rho(const LatticeVector& g, const Precision& prec = {}) const { return normalize(lift(g), prec); }

    const std::vector<Interval>& gamma_enclosures(int bits) const {
        std::lock_guard<std::mutex> lock(cache_->mu);
        auto it = cache_->tables.find(bits);
        if (it != cache_->tables.end()) return it->second;
        std::vector<Interval> t;
        for (const auto& g : gamma_) t.push_back(g.enclose(bits));
        return cache_->tables.emplace(bits, std::move(t)).first->second;
    }

    Interval enclose(const OrbitForm& f, int bits) const {
        check_dim(f.dim());
        Interval s = Interval::exact(f.constant(), bits + 8);
        if (f.is_rational()) return s;
        const auto& g = gamma_enclosures(bits + 8);
        for (std::size_t i = 0; i < dim(); ++i)
            if (f.coeffs()[i] != 0) s += g[i] * static_cast<long>(f.coeffs()[i]);
        return s;
    }

    Real to_real(const OrbitForm& f) const {
        check_dim(f.dim());
        Real r(f.constant());
        for (std::size_t i = 0; i < dim(); ++i)
            if (f.coeffs()[i] != 0) r = r + Real(static_cast<long>(f.coeffs()[i])) * gamma_[i];
        return r;
    }

    /// Sign of the form's value. Exact for rational forms; otherwise decided by
    /// refinement, which always terminates for independent rotation vectors.
    int sign(const OrbitForm& f, const Precision& prec = {}) const {
        if (f.is_rational()) return sgn(f.constant());
        for (int bits = prec.working_bits;; bits *= 2) {
            if (bits > prec.ceiling_bits) bits = prec.ceiling_bits;
            int s = enclose(f, bits).certified_sign();
            if (s != 0) return s;
            if (bits >= prec.ceiling_bits)
                throw UndecidedError("sign of " + f.to_string() + " not separated from zero", bits);
        }
    }
    /// -1, 0, +1; 0 only for formally equal forms.
    int compare(const OrbitForm& a, const OrbitForm& b, const Precision& prec = {}) const {
        if (a == b) return 0;
        return sign(a - b, prec);
    }
    mpz_class floor(const OrbitForm& f, const Precision& prec = {}) const {
        if (f.is_rational()) {
            mpz_class q;
            mpz_fdiv_q(q.get_mpz_t(), f.constant().get_num_mpz_t(), f.constant().get_den_mpz_t());
            return q;
        }
        for (int bits = prec.working_bits;; bits *= 2) {
            if (bits > prec.ceiling_bits) bits = prec.ceiling_bits;
            if (auto fl = enclose(f, bits).certified_floor()) return *fl;
            if (bits >= prec.ceiling_bits) throw UndecidedError("floor of " + f.to_string(), bits);
        }
    }
    /// Representative with value in [0, 1).
    OrbitForm normalize(const OrbitForm& f, const Precision& prec = {}) const {
        mpz_class fl = floor(f, prec);
        if (fl == 0) return f;
        return f + mpq_class(-fl);
    }

private:
    void check_dim(std::size_t d) const {
        if (d != dim()) throw DomainError("dimension mismatch with rotation vector");
    }
    struct Cache {
        std::mutex mu;
        std::map<int, std::vector<Interval>> tables;
    };

    std::vector<Real> gamma_;
    IndependenceCertificate certificate_;
    std::shared_ptr<Cache> cache_;
};

inline OrbitForm OrbitForm::parse(std::string_view text, std::size_t d) {
    OrbitForm out(d);
    std::size_t pos = 0;
    auto fail = [&](const std::string& msg) { throw ParseError(msg, 1, pos + 1); };
    auto skip = [&] {
        while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
    };
    auto digits = [&] {
        std::size_t s = pos;
        while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
        return std::string(text.substr(s, pos - s));
    };
    skip();
    if (pos == text.size()) fail("empty form");
    bool first = true;
    while (true) {
        skip();
        if (pos == text.size()) break;
        int sign = 1;
        if (text[pos] == '+' || text[pos] == '-') {
            sign = text[pos] == '-' ? -1 : 1;
            ++pos;
            skip();
        } else if (!first) {
            fail(std::string("expected '+' or '-' before '") + text[pos] + "'");
        }
        first = false;
        if (pos == text.size()) fail("dangling sign");
        if (text[pos] == 'g') {
            const std::size_t at = pos++;
            std::string idx = digits();
            if (idx.empty()) fail("expected generator index after 'g'");
            std::size_t i = std::stoul(idx);
            if (i < 1 || i > d) {
                pos = at;
                fail("generator index out of range");
            }
            out.coeffs_[i - 1] += sign;
            continue;
        }
        std::string whole = digits();
        if (whole.empty()) fail(std::string("unexpected '") + (pos < text.size() ? text[pos] : ' ') + "'");
        mpq_class value{mpz_class(whole)};
        if (pos < text.size() && text[pos] == '.') {
            ++pos;
            std::string frac = digits();
            if (frac.empty()) fail("expected digits after '.'");
            mpz_class scale;
            mpz_ui_pow_ui(scale.get_mpz_t(), 10, frac.size());
            value = mpq_class(mpz_class(whole) * scale + mpz_class(frac), scale);
        } else if (pos < text.size() && text[pos] == '/') {
            ++pos;
            std::string den = digits();
            if (den.empty() || mpz_class(den) == 0) fail("bad denominator");
            value = mpq_class(mpz_class(whole), mpz_class(den));
        }
        value.canonicalize();
        skip();
        if (pos < text.size() && text[pos] == '*') {
            ++pos;
            skip();
            if (pos == text.size() || text[pos] != 'g') fail("expected generator after '*'");
            if (value.get_den() != 1) fail("generator coefficients must be integers");
            ++pos;
            std::string idx = digits();
            if (idx.empty()) fail("expected generator index after 'g'");
            std::size_t i = std::stoul(idx);
            if (i < 1 || i > d) fail("generator index out of range");
            out.coeffs_[i - 1] += sign * value.get_num().get_si();
            continue;
        }
        out.constant_ += sign * value;
    }
    out.constant_.canonicalize();
    return out;
}

} // namespace denjoy
