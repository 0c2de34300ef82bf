#pragma once

#include <gmpxx.h>

#include <string>
#include <vector>

#include "denjoy/circle/real.hpp"
#include "denjoy/error.hpp"

namespace denjoy {

/// Ring operations the Pfaffian needs beyond + - *. `is_zero` may answer
/// false for a zero it cannot recognize; it is only used for pruning.
template <class T>
struct RingTraits;

template <>
struct RingTraits<mpq_class> {
    static mpq_class zero(const mpq_class&) { return 0; }
    static mpq_class one(const mpq_class&) { return 1; }
    static bool is_zero(const mpq_class& x) { return sgn(x) == 0; }
    static bool skew_pair(const mpq_class& a, const mpq_class& b) { return a == -b; }
};

template <>
struct RingTraits<Real> {
    static Real zero(const Real&) { return Real(0); }
    static Real one(const Real&) { return Real(1); }
    static bool is_zero(const Real& x) { return x.is_rational() && sgn(x.rational()) == 0; }
    static bool skew_pair(const Real& a, const Real& b) {
        if (a.is_rational() && b.is_rational()) return a.rational() == -b.rational();
        return (a + b).enclose(128).contains(mpq_class(0));
    }
};

template <>
struct RingTraits<Interval> {
    static Interval zero(const Interval& s) { return Interval::exact(0L, s.precision()); }
    static Interval one(const Interval& s) { return Interval::exact(1L, s.precision()); }
    static bool is_zero(const Interval& x) { return x.is_point() && x.contains(mpq_class(0)); }
    static bool skew_pair(const Interval& a, const Interval& b) { return (a + b).contains(mpq_class(0)); }
};

/// An n x n skew-symmetric matrix; only the strict upper triangle is stored,
/// so M[i][j] = -M[j][i] and the zero diagonal hold by construction.
template <class T>
class SkewMatrix {
public:
    SkewMatrix() = default;
    SkewMatrix(std::size_t n, const T& zero) : n_(n), zero_(zero), upper_(n * (n > 0 ? n - 1 : 0) / 2, zero) {}

    /// Validates a full matrix given by rows.
    static SkewMatrix from_rows(const std::vector<std::vector<T>>& rows, const T& zero) {
        const std::size_t n = rows.size();
        SkewMatrix m(n, zero);
        for (std::size_t i = 0; i < n; ++i) {
            if (rows[i].size() != n) throw DomainError("skew matrix: rows must all have length " + std::to_string(n));
            if (!RingTraits<T>::is_zero(rows[i][i]) && !RingTraits<T>::skew_pair(rows[i][i], rows[i][i]))
                throw DomainError("skew matrix: nonzero diagonal entry at " + std::to_string(i));
        }
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j) {
                if (!RingTraits<T>::skew_pair(rows[i][j], rows[j][i]))
                    throw DomainError("skew matrix: entries (" + std::to_string(i) + "," + std::to_string(j) +
                                      ") and (" + std::to_string(j) + "," + std::to_string(i) + ") are not opposite");
                m.set(i, j, rows[i][j]);
            }
        return m;
    }

    std::size_t size() const { return n_; }
    const T& zero() const { return zero_; }

    /// M[i][j] for i < j; the caller negates for i > j.
    const T& upper(std::size_t i, std::size_t j) const { return upper_[index(i, j)]; }
    T at(std::size_t i, std::size_t j) const {
        if (i == j) return zero_;
        if (i < j) return upper(i, j);
        return -upper(j, i);
    }
    void set(std::size_t i, std::size_t j, const T& v) {
        if (i == j) throw DomainError("skew matrix: diagonal entries are zero");
        if (i < j) upper_[index(i, j)] = v;
        else upper_[index(j, i)] = -v;
    }

    /// Rows and columns `idx` (increasing, 0-based).
    SkewMatrix restrict(const std::vector<std::size_t>& idx) const {
        SkewMatrix m(idx.size(), zero_);
        for (std::size_t a = 0; a < idx.size(); ++a)
            for (std::size_t b = a + 1; b < idx.size(); ++b) m.set(a, b, at(idx[a], idx[b]));
        return m;
    }

    template <class F>
    auto map(F&& f) const -> SkewMatrix<decltype(f(std::declval<const T&>()))> {
        using U = decltype(f(std::declval<const T&>()));
        SkewMatrix<U> m(n_, f(zero_));
        for (std::size_t i = 0; i < n_; ++i)
            for (std::size_t j = i + 1; j < n_; ++j) m.set(i, j, f(upper(i, j)));
        return m;
    }

private:
    std::size_t index(std::size_t i, std::size_t j) const {
        if (j >= n_ || i >= j) throw DomainError("skew matrix: index out of range");
        // rows 0..i-1 hold (n-1) + (n-2) + ... + (n-i) entries
        return i * (2 * n_ - i - 1) / 2 + (j - i - 1);
    }

    std::size_t n_ = 0;
    T zero_{};
    std::vector<T> upper_;
};

} // namespace denjoy
