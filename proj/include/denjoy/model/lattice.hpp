#pragma once

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <cstdlib>
#include <functional>
#include <initializer_list>
#include <ostream>
#include <string>
#include <vector>

#include "denjoy/error.hpp"

namespace denjoy {

/// An element of Z^d.
class LatticeVector {
public:
    LatticeVector() = default;
    explicit LatticeVector(std::size_t d) : c_(d, 0) {}
    LatticeVector(std::initializer_list<std::int64_t> c) : c_(c) {}
    explicit LatticeVector(std::vector<std::int64_t> c) : c_(std::move(c)) {}

    static LatticeVector basis(std::size_t d, std::size_t i) {
        LatticeVector e(d);
        e.c_.at(i) = 1;
        return e;
    }

    std::size_t dim() const { return c_.size(); }
    std::int64_t operator[](std::size_t i) const { return c_[i]; }
    std::int64_t& operator[](std::size_t i) { return c_[i]; }
    const std::vector<std::int64_t>& coords() const { return c_; }

    bool is_zero() const {
        for (auto v : c_)
            if (v != 0) return false;
        return true;
    }
    std::int64_t l1() const {
        std::int64_t s = 0;
        for (auto v : c_) s += std::llabs(v);
        return s;
    }

    friend LatticeVector operator+(const LatticeVector& a, const LatticeVector& b) {
        check(a, b);
        LatticeVector r(a.dim());
        for (std::size_t i = 0; i < a.dim(); ++i)
            if (__builtin_add_overflow(a.c_[i], b.c_[i], &r.c_[i])) throw DomainError("lattice overflow");
        return r;
    }
    friend LatticeVector operator-(const LatticeVector& a, const LatticeVector& b) {
        check(a, b);
        LatticeVector r(a.dim());
        for (std::size_t i = 0; i < a.dim(); ++i)
            if (__builtin_sub_overflow(a.c_[i], b.c_[i], &r.c_[i])) throw DomainError("lattice overflow");
        return r;
    }
    friend LatticeVector operator-(const LatticeVector& a) { return LatticeVector(a.dim()) - a; }
    friend LatticeVector operator*(std::int64_t k, const LatticeVector& a) {
        LatticeVector r(a.dim());
        for (std::size_t i = 0; i < a.dim(); ++i)
            if (__builtin_mul_overflow(k, a.c_[i], &r.c_[i])) throw DomainError("lattice overflow");
        return r;
    }

    friend bool operator==(const LatticeVector&, const LatticeVector&) = default;
    friend auto operator<=>(const LatticeVector&, const LatticeVector&) = default;

    std::string to_string() const {
        std::string s = "(";
        for (std::size_t i = 0; i < c_.size(); ++i) {
            if (i) s += ",";
            s += std::to_string(c_[i]);
        }
        return s + ")";
    }
    friend std::ostream& operator<<(std::ostream& os, const LatticeVector& v) { return os << v.to_string(); }

private:
    static void check(const LatticeVector& a, const LatticeVector& b) {
        if (a.dim() != b.dim()) throw DomainError("lattice vectors of different dimension");
    }
    std::vector<std::int64_t> c_;
};

/// Number of g in Z^d with ||g||_1 = n: sum_k 2^k C(d,k) C(n-1,k-1).
inline mpz_class shell_size(std::size_t d, std::size_t n) {
    if (n == 0) return 1;
    mpz_class total = 0;
    for (std::size_t k = 1; k <= d && k <= n; ++k) {
        mpz_class a, b;
        mpz_bin_uiui(a.get_mpz_t(), d, k);
        mpz_bin_uiui(b.get_mpz_t(), n - 1, k - 1);
        total += (mpz_class(1) << k) * a * b;
    }
    return total;
}

namespace detail {
inline void shell_rec(LatticeVector& g, std::size_t i, std::int64_t remaining,
                      const std::function<void(const LatticeVector&)>& f) {
    const std::size_t d = g.dim();
    if (i + 1 == d) {
        if (remaining == 0) {
            g[i] = 0;
            f(g);
        } else {
            g[i] = -remaining;
            f(g);
            g[i] = remaining;
            f(g);
        }
        return;
    }
    for (std::int64_t v = -remaining; v <= remaining; ++v) {
        g[i] = v;
        shell_rec(g, i + 1, remaining - std::llabs(v), f);
    }
}
} // namespace detail

/// Visits every g with ||g||_1 = n in lexicographic order.
inline void for_each_in_shell(std::size_t d, std::int64_t n, const std::function<void(const LatticeVector&)>& f) {
    if (d == 0) throw DomainError("for_each_in_shell: d = 0");
    LatticeVector g(d);
    detail::shell_rec(g, 0, n, f);
}

} // namespace denjoy

template <>
struct std::hash<denjoy::LatticeVector> {
    std::size_t operator()(const denjoy::LatticeVector& v) const noexcept {
        std::size_t h = 1469598103934665603ull;
        for (auto c : v.coords()) h = (h ^ static_cast<std::size_t>(c)) * 1099511628211ull;
        return h;
    }
};
