#pragma once

// Outward-rounded real intervals on top of MPFR.
//
// Every operation rounds the lower endpoint toward -inf and the upper
// endpoint toward +inf, so the exact result of the operation applied to any
// points of the operands lies inside the returned interval. Results carry the
// larger of the operand precisions.

#include <mpfr.h>
#include <gmpxx.h>

#include <algorithm>
#include <cmath>
#include <optional>
#include <ostream>
#include <string>
#include <utility>

#include "denjoy/error.hpp"

namespace denjoy {

/// RAII owner of one mpfr_t.
class BigFloat {
public:
    explicit BigFloat(int bits = 64) { mpfr_init2(v_, bits); mpfr_set_zero(v_, 1); }
    BigFloat(const BigFloat& o) { mpfr_init2(v_, mpfr_get_prec(o.v_)); mpfr_set(v_, o.v_, MPFR_RNDN); }
    BigFloat(BigFloat&& o) noexcept { mpfr_init2(v_, MPFR_PREC_MIN); mpfr_swap(v_, o.v_); }
    BigFloat& operator=(const BigFloat& o) {
        if (this != &o) {
            mpfr_set_prec(v_, mpfr_get_prec(o.v_));
            mpfr_set(v_, o.v_, MPFR_RNDN);
        }
        return *this;
    }
    BigFloat& operator=(BigFloat&& o) noexcept { mpfr_swap(v_, o.v_); return *this; }
    ~BigFloat() { mpfr_clear(v_); }

    mpfr_ptr get() { return v_; }
    mpfr_srcptr get() const { return v_; }
    int precision() const { return static_cast<int>(mpfr_get_prec(v_)); }

    mpq_class to_rational() const {
        mpq_class q;
        mpfr_get_q(q.get_mpq_t(), v_);
        return q;
    }
    double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }

private:
    mpfr_t v_;
};

class Interval {
public:
    explicit Interval(int bits = 64) : lo_(bits), hi_(bits) {}

    static Interval exact(long v, int bits) {
        Interval r(bits);
        mpfr_set_si(r.lo_.get(), v, MPFR_RNDD);
        mpfr_set_si(r.hi_.get(), v, MPFR_RNDU);
        return r;
    }
    static Interval exact(const mpz_class& v, int bits) {
        Interval r(bits);
        mpfr_set_z(r.lo_.get(), v.get_mpz_t(), MPFR_RNDD);
        mpfr_set_z(r.hi_.get(), v.get_mpz_t(), MPFR_RNDU);
        return r;
    }
    static Interval exact(const mpq_class& v, int bits) {
        Interval r(bits);
        mpfr_set_q(r.lo_.get(), v.get_mpq_t(), MPFR_RNDD);
        mpfr_set_q(r.hi_.get(), v.get_mpq_t(), MPFR_RNDU);
        return r;
    }
    /// [lo, hi] from two rationals; requires lo <= hi.
    static Interval hull(const mpq_class& lo, const mpq_class& hi, int bits) {
        if (lo > hi) throw DomainError("Interval::hull: lo > hi");
        Interval r(bits);
        mpfr_set_q(r.lo_.get(), lo.get_mpq_t(), MPFR_RNDD);
        mpfr_set_q(r.hi_.get(), hi.get_mpq_t(), MPFR_RNDU);
        return r;
    }

    int precision() const { return std::max(lo_.precision(), hi_.precision()); }
    const BigFloat& lo() const { return lo_; }
    const BigFloat& hi() const { return hi_; }
    mpq_class lower() const { return lo_.to_rational(); }
    mpq_class upper() const { return hi_.to_rational(); }
    mpq_class midpoint() const { return (lower() + upper()) / 2; }
    double mid_double() const { return (lo_.to_double() + hi_.to_double()) / 2; }

    /// Upper bound on hi - lo.
    BigFloat width() const {
        BigFloat w(precision());
        mpfr_sub(w.get(), hi_.get(), lo_.get(), MPFR_RNDU);
        return w;
    }
    /// log2 of the width; -inf for a point interval.
    double log2_width() const {
        BigFloat w = width();
        if (mpfr_zero_p(w.get())) return -INFINITY;
        long exp = 0;
        double m = mpfr_get_d_2exp(&exp, w.get(), MPFR_RNDU);
        return std::log2(m) + static_cast<double>(exp);
    }
    bool width_at_most_pow2(int neg_exp) const {
        BigFloat w = width();
        return mpfr_cmp_si_2exp(w.get(), 1, -neg_exp) <= 0;
    }
    bool is_point() const { return mpfr_equal_p(lo_.get(), hi_.get()) != 0; }

    bool is_positive() const { return mpfr_sgn(lo_.get()) > 0; }
    bool is_negative() const { return mpfr_sgn(hi_.get()) < 0; }
    bool is_nonnegative() const { return mpfr_sgn(lo_.get()) >= 0; }
    bool excludes_zero() const { return is_positive() || is_negative(); }
    bool contains_zero() const { return !excludes_zero(); }

    bool contains(const mpq_class& q) const {
        return mpfr_cmp_q(lo_.get(), q.get_mpq_t()) <= 0 && mpfr_cmp_q(hi_.get(), q.get_mpq_t()) >= 0;
    }
    bool contains(const Interval& o) const {
        return mpfr_lessequal_p(lo_.get(), o.lo_.get()) && mpfr_greaterequal_p(hi_.get(), o.hi_.get());
    }
    bool overlaps(const Interval& o) const {
        return mpfr_lessequal_p(lo_.get(), o.hi_.get()) && mpfr_lessequal_p(o.lo_.get(), hi_.get());
    }
    /// Certifiably below: every point of *this is < every point of o.
    bool certainly_less(const Interval& o) const { return mpfr_less_p(hi_.get(), o.lo_.get()) != 0; }
    bool certainly_less(const mpq_class& q) const { return mpfr_cmp_q(hi_.get(), q.get_mpq_t()) < 0; }
    bool certainly_greater(const mpq_class& q) const { return mpfr_cmp_q(lo_.get(), q.get_mpq_t()) > 0; }

    /// Intersection; requires overlap.
    Interval intersect(const Interval& o) const {
        if (!overlaps(o)) throw DomainError("Interval::intersect: disjoint intervals");
        Interval r(std::max(precision(), o.precision()));
        mpfr_max(r.lo_.get(), lo_.get(), o.lo_.get(), MPFR_RNDD);
        mpfr_min(r.hi_.get(), hi_.get(), o.hi_.get(), MPFR_RNDU);
        return r;
    }
    Interval join(const Interval& o) const {
        Interval r(std::max(precision(), o.precision()));
        mpfr_min(r.lo_.get(), lo_.get(), o.lo_.get(), MPFR_RNDD);
        mpfr_max(r.hi_.get(), hi_.get(), o.hi_.get(), MPFR_RNDU);
        return r;
    }
    /// [lo, hi + extra] for extra >= 0.
    Interval widen_up(const mpq_class& extra) const {
        Interval r = *this;
        BigFloat e(precision());
        mpfr_set_q(e.get(), extra.get_mpq_t(), MPFR_RNDU);
        mpfr_add(r.hi_.get(), r.hi_.get(), e.get(), MPFR_RNDU);
        return r;
    }
    Interval widen(const mpq_class& radius) const {
        Interval r = *this;
        BigFloat e(precision());
        mpfr_set_q(e.get(), radius.get_mpq_t(), MPFR_RNDU);
        mpfr_sub(r.lo_.get(), r.lo_.get(), e.get(), MPFR_RNDD);
        mpfr_add(r.hi_.get(), r.hi_.get(), e.get(), MPFR_RNDU);
        return r;
    }

    /// floor(x) if it is the same for every x in the interval.
    std::optional<mpz_class> certified_floor() const {
        BigFloat a(precision()), b(precision());
        mpfr_floor(a.get(), lo_.get());
        mpfr_floor(b.get(), hi_.get());
        if (!mpfr_equal_p(a.get(), b.get())) return std::nullopt;
        mpz_class z;
        mpfr_get_z(z.get_mpz_t(), a.get(), MPFR_RNDN);
        return z;
    }

    /// Sign of the contents: +1, -1, or 0 when the interval straddles zero.
    int certified_sign() const { return is_positive() ? 1 : (is_negative() ? -1 : 0); }

    /// Fixed-point decimal with `digits` fractional digits, if every point of
    /// the interval rounds to the same string.
    std::optional<std::string> decimal(int digits) const {
        std::string a = format(lo_, digits), b = format(hi_, digits);
        if (a != b) return std::nullopt;
        if (a == "-0." + std::string(static_cast<std::size_t>(digits), '0')) a.erase(0, 1);
        return a;
    }

    /// Endpoints as decimals rounded outward.
    std::string lower_string(int digits) const { return format(lo_, digits, 'D'); }
    std::string upper_string(int digits) const { return format(hi_, digits, 'U'); }

    friend Interval operator-(const Interval& a) {
        Interval r(a.precision());
        mpfr_neg(r.lo_.get(), a.hi_.get(), MPFR_RNDD);
        mpfr_neg(r.hi_.get(), a.lo_.get(), MPFR_RNDU);
        return r;
    }
    friend Interval operator+(const Interval& a, const Interval& b) {
        Interval r(std::max(a.precision(), b.precision()));
        mpfr_add(r.lo_.get(), a.lo_.get(), b.lo_.get(), MPFR_RNDD);
        mpfr_add(r.hi_.get(), a.hi_.get(), b.hi_.get(), MPFR_RNDU);
        return r;
    }
    friend Interval operator-(const Interval& a, const Interval& b) {
        Interval r(std::max(a.precision(), b.precision()));
        mpfr_sub(r.lo_.get(), a.lo_.get(), b.hi_.get(), MPFR_RNDD);
        mpfr_sub(r.hi_.get(), a.hi_.get(), b.lo_.get(), MPFR_RNDU);
        return r;
    }
    friend Interval operator*(const Interval& a, const Interval& b) {
        const int bits = std::max(a.precision(), b.precision());
        Interval r(bits);
        BigFloat t(bits);
        mpfr_srcptr xs[2] = {a.lo_.get(), a.hi_.get()};
        mpfr_srcptr ys[2] = {b.lo_.get(), b.hi_.get()};
        bool first = true;
        for (auto x : xs)
            for (auto y : ys) {
                mpfr_mul(t.get(), x, y, MPFR_RNDD);
                if (first || mpfr_less_p(t.get(), r.lo_.get())) mpfr_set(r.lo_.get(), t.get(), MPFR_RNDD);
                mpfr_mul(t.get(), x, y, MPFR_RNDU);
                if (first || mpfr_greater_p(t.get(), r.hi_.get())) mpfr_set(r.hi_.get(), t.get(), MPFR_RNDU);
                first = false;
            }
        return r;
    }
    friend Interval operator/(const Interval& a, const Interval& b) {
        if (b.contains_zero()) throw DomainError("Interval: division by an interval containing zero");
        const int bits = std::max(a.precision(), b.precision());
        Interval r(bits);
        BigFloat t(bits);
        mpfr_srcptr xs[2] = {a.lo_.get(), a.hi_.get()};
        mpfr_srcptr ys[2] = {b.lo_.get(), b.hi_.get()};
        bool first = true;
        for (auto x : xs)
            for (auto y : ys) {
                mpfr_div(t.get(), x, y, MPFR_RNDD);
                if (first || mpfr_less_p(t.get(), r.lo_.get())) mpfr_set(r.lo_.get(), t.get(), MPFR_RNDD);
                mpfr_div(t.get(), x, y, MPFR_RNDU);
                if (first || mpfr_greater_p(t.get(), r.hi_.get())) mpfr_set(r.hi_.get(), t.get(), MPFR_RNDU);
                first = false;
            }
        return r;
    }
    friend Interval operator*(const Interval& a, long k) {
        Interval r(a.precision());
        if (k >= 0) {
            mpfr_mul_si(r.lo_.get(), a.lo_.get(), k, MPFR_RNDD);
            mpfr_mul_si(r.hi_.get(), a.hi_.get(), k, MPFR_RNDU);
        } else {
            mpfr_mul_si(r.lo_.get(), a.hi_.get(), k, MPFR_RNDD);
            mpfr_mul_si(r.hi_.get(), a.lo_.get(), k, MPFR_RNDU);
        }
        return r;
    }
    friend Interval operator+(const Interval& a, const mpq_class& q) { return a + exact(q, a.precision()); }
    friend Interval operator-(const Interval& a, const mpq_class& q) { return a - exact(q, a.precision()); }
    friend Interval operator*(const Interval& a, const mpq_class& q) { return a * exact(q, a.precision()); }
    friend Interval operator/(const Interval& a, const mpq_class& q) { return a / exact(q, a.precision()); }

    Interval& operator+=(const Interval& b) { return *this = *this + b; }
    Interval& operator-=(const Interval& b) { return *this = *this - b; }
    Interval& operator*=(const Interval& b) { return *this = *this * b; }

    friend Interval sqrt(const Interval& a) {
        if (mpfr_sgn(a.lo_.get()) < 0) throw DomainError("Interval: sqrt of a possibly negative interval");
        Interval r(a.precision());
        mpfr_sqrt(r.lo_.get(), a.lo_.get(), MPFR_RNDD);
        mpfr_sqrt(r.hi_.get(), a.hi_.get(), MPFR_RNDU);
        return r;
    }
    friend Interval square(const Interval& a) {
        Interval r = a * a;
        if (a.contains_zero() && mpfr_sgn(r.lo_.get()) < 0) mpfr_set_zero(r.lo_.get(), 1);
        return r;
    }

    friend std::ostream& operator<<(std::ostream& os, const Interval& a) {
        return os << "[" << format(a.lo_, 20) << ", " << format(a.hi_, 20) << "]";
    }

private:
    static std::string format(const BigFloat& f, int digits, char mode = 'N') {
        char* s = nullptr;
        const std::string spec = std::string("%.*R") + mode + "f";
        mpfr_asprintf(&s, spec.c_str(), digits, f.get());
        std::string out(s);
        mpfr_free_str(s);
        return out;
    }

    BigFloat lo_;
    BigFloat hi_;
};

inline Interval sqrt_interval(const Interval& a) { return sqrt(a); }

} // namespace denjoy
