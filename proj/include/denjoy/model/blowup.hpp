#pragma once

#include <gmpxx.h>

#include <string>

#include "denjoy/model/lattice.hpp"
#include "denjoy/model/rotation.hpp"

namespace denjoy {

/// Gap lengths l_g = c * lambda^{||g||_1} on Z^d.
///
/// The generating function sum_g lambda^{||g||_1} = ((1+lambda)/(1-lambda))^d
/// fixes c = total * ((1-lambda)/(1+lambda))^d, so every partial sum and every
/// tail is an exact rational.
class GeometricLengths {
public:
    static constexpr const char* kName = "geometric";

    GeometricLengths() = default;
    GeometricLengths(std::size_t d, mpq_class lambda, mpq_class total)
        : d_(d), lambda_(std::move(lambda)), total_(std::move(total)) {
        if (d_ == 0) throw DomainError("gap lengths: d must be positive");
        if (lambda_ <= 0 || lambda_ >= 1) throw DomainError("gap lengths: lambda must lie in (0,1)");
        if (total_ <= 0) throw DomainError("gap lengths: total length must be positive");
        mpq_class ratio = (1 - lambda_) / (1 + lambda_);
        scale_ = total_;
        for (std::size_t i = 0; i < d_; ++i) scale_ *= ratio;
    }

    std::size_t dim() const { return d_; }
    const mpq_class& lambda() const { return lambda_; }
    const mpq_class& total() const { return total_; }
    const mpq_class& scale() const { return scale_; }

    mpq_class length_at_norm(std::int64_t n) const {
        mpq_class p = 1;
        mpz_class num, den;
        mpz_pow_ui(num.get_mpz_t(), lambda_.get_num_mpz_t(), static_cast<unsigned long>(n));
        mpz_pow_ui(den.get_mpz_t(), lambda_.get_den_mpz_t(), static_cast<unsigned long>(n));
        p = mpq_class(num, den);
        p.canonicalize();
        return scale_ * p;
    }
    mpq_class length(const LatticeVector& g) const { return length_at_norm(g.l1()); }

    /// Total length of the gaps with ||g||_1 = n.
    mpq_class shell_mass(std::int64_t n) const {
        return length_at_norm(n) * mpq_class(shell_size(d_, static_cast<std::size_t>(n)));
    }
    /// Exact sum of l_g over ||g||_1 > n.
    mpq_class tail(std::int64_t n) const {
        mpq_class s = total_;
        for (std::int64_t k = 0; k <= n; ++k) s -= shell_mass(k);
        return s;
    }

    friend bool operator==(const GeometricLengths& a, const GeometricLengths& b) {
        return a.d_ == b.d_ && a.lambda_ == b.lambda_ && a.total_ == b.total_;
    }

private:
    std::size_t d_ = 0;
    mpq_class lambda_ = mpq_class(1, 2);
    mpq_class total_ = 1;
    mpq_class scale_ = 1;
};

/// One blown-up orbit: the orbit of `base_point` is replaced by gaps.
struct BlowUpData {
    OrbitForm base_point;
    GeometricLengths lengths;
};

} // namespace denjoy
