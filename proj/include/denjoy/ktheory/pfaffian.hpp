#pragma once

// Pfaffians of skew-symmetric matrices.
//
// pf(M) = sum over perfect matchings of {0..2n-1} of the signed products of
// matched entries. Two algorithms:
//   - expansion along the first row with memoization on the remaining index
//     set; division-free, so it works over any commutative ring;
//   - congruence elimination (pf(B M B^T) = det(B) pf(M) with det B = 1),
//     for field-like types above size 8.

#include <gmpxx.h>

#include <cmath>
#include <cstdint>
#include <optional>
#include <unordered_map>

#include "denjoy/ktheory/gamma_polynomial.hpp"
#include "denjoy/ktheory/skew_matrix.hpp"

namespace denjoy {

namespace detail {

template <class T>
class PfaffianExpansion {
public:
    explicit PfaffianExpansion(const SkewMatrix<T>& m) : m_(m) {}

    T operator()(std::uint64_t set) {
        if (set == 0) return RingTraits<T>::one(m_.zero());
        auto it = memo_.find(set);
        if (it != memo_.end()) return it->second;
        std::vector<std::size_t> idx;
        for (std::size_t i = 0; i < m_.size(); ++i)
            if (set >> i & 1) idx.push_back(i);
        T result = RingTraits<T>::zero(m_.zero());
        if (!has_zero_row(idx)) {
            const std::size_t first = idx[0];
            for (std::size_t j = 1; j < idx.size(); ++j) {
                const T& e = m_.upper(first, idx[j]);
                if (RingTraits<T>::is_zero(e)) continue;
                T sub = (*this)(set & ~(std::uint64_t{1} << first) & ~(std::uint64_t{1} << idx[j]));
                if (RingTraits<T>::is_zero(sub)) continue;
                if (j % 2 == 1) result = result + e * sub;
                else result = result - e * sub;
            }
        }
        memo_.emplace(set, result);
        return result;
    }

private:
    bool has_zero_row(const std::vector<std::size_t>& idx) const {
        for (std::size_t a : idx) {
            bool zero = true;
            for (std::size_t b : idx)
                if (a != b && !RingTraits<T>::is_zero(m_.at(a, b))) {
                    zero = false;
                    break;
                }
            if (zero) return true;
        }
        return false;
    }

    const SkewMatrix<T>& m_;
    std::unordered_map<std::uint64_t, T> memo_;
};

inline bool pivot_nonzero(const mpq_class& x) { return sgn(x) != 0; }
inline bool pivot_nonzero(const Interval& x) { return x.excludes_zero(); }
inline double pivot_weight(const mpq_class& x) { return sgn(x) != 0 ? 1.0 : 0.0; }
inline double pivot_weight(const Interval& x) { return std::fabs(x.mid_double()); }

} // namespace detail

inline constexpr std::size_t kPfaffianExpansionMax = 8;
inline constexpr std::size_t kPfaffianMaxSize = 62;

template <class T>
void check_pfaffian_size(const SkewMatrix<T>& m) {
    if (m.size() % 2 != 0) throw DomainError("pfaffian: odd size " + std::to_string(m.size()));
    if (m.size() > kPfaffianMaxSize) throw DomainError("pfaffian: size above " + std::to_string(kPfaffianMaxSize));
}

/// Division-free first-row expansion; valid over any commutative ring.
template <class T>
T pfaffian_expansion(const SkewMatrix<T>& m) {
    check_pfaffian_size(m);
    const std::uint64_t all = m.size() == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << m.size()) - 1;
    return detail::PfaffianExpansion<T>(m)(all);
}

/// Elimination by congruence. Returns nullopt when an interval pivot cannot
/// be separated from zero.
template <class T>
std::optional<T> pfaffian_elimination(SkewMatrix<T> m) {
    check_pfaffian_size(m);
    const std::size_t n = m.size();
    T pf = RingTraits<T>::one(m.zero());
    for (std::size_t k = 0; k + 1 < n; k += 2) {
        // choose the pivot column in row k
        std::size_t best = k + 1;
        double weight = -1;
        for (std::size_t j = k + 1; j < n; ++j) {
            double w = detail::pivot_weight(m.upper(k, j));
            if (w > weight) {
                weight = w;
                best = j;
            }
        }
        if (!detail::pivot_nonzero(m.upper(k, best))) {
            bool all_zero = true;
            for (std::size_t j = k + 1; j < n; ++j) all_zero = all_zero && RingTraits<T>::is_zero(m.upper(k, j));
            if (all_zero) return RingTraits<T>::zero(m.zero());
            return std::nullopt;
        }
        if (best != k + 1) {
            // swap indices k+1 and best: a transposition flips the sign
            SkewMatrix<T> s = m;
            auto perm = [&](std::size_t i) { return i == k + 1 ? best : (i == best ? k + 1 : i); };
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t j = i + 1; j < n; ++j) s.set(i, j, m.at(perm(i), perm(j)));
            m = std::move(s);
            pf = -pf;
        }
        const T p = m.upper(k, k + 1);
        pf = pf * p;
        // clear row k beyond the pivot: r_i -= c r_{k+1}, c_i -= c c_{k+1}
        for (std::size_t i = k + 2; i < n; ++i) {
            const T c = m.upper(k, i) / p;
            if (RingTraits<T>::is_zero(c)) continue;
            for (std::size_t j = k + 1; j < n; ++j) {
                if (j == i) continue;
                m.set(i, j, m.at(i, j) - c * m.at(k + 1, j));
            }
            m.set(k, i, RingTraits<T>::zero(m.zero()));
        }
    }
    return pf;
}

/// pf over exact rationals.
inline mpq_class pfaffian(const SkewMatrix<mpq_class>& m) {
    check_pfaffian_size(m);
    if (m.size() <= kPfaffianExpansionMax) return pfaffian_expansion(m);
    return *pfaffian_elimination(m);
}

/// pf over intervals; falls back to expansion when no pivot separates from 0.
inline Interval pfaffian(const SkewMatrix<Interval>& m) {
    check_pfaffian_size(m);
    if (m.size() > kPfaffianExpansionMax)
        if (auto v = pfaffian_elimination(m)) return *v;
    return pfaffian_expansion(m);
}

inline GammaPolynomial pfaffian(const SkewMatrix<GammaPolynomial>& m) { return pfaffian_expansion(m); }
inline Real pfaffian(const SkewMatrix<Real>& m) { return pfaffian_expansion(m); }

} // namespace denjoy
