#pragma once

// The structure matrix of the torus generated by u and lambda_{e_1..e_d}:
// row 0 is (0, gamma_1, ..., gamma_d), column 0 its negation, zero elsewhere.
// Index 1 is u and index i+1 is lambda_{e_i}.

#include <vector>

#include "denjoy/ktheory/pfaffian.hpp"
#include "denjoy/model/rotation.hpp"

namespace denjoy {

class TorusTheta {
public:
    explicit TorusTheta(RotationVector gamma) : gamma_(std::move(gamma)) {}

    std::size_t dim() const { return gamma_.dim(); }
    std::size_t size() const { return gamma_.dim() + 1; }
    const RotationVector& gamma() const { return gamma_; }

    /// Entries as formal polynomials in gamma.
    SkewMatrix<GammaPolynomial> formal() const {
        const std::size_t d = dim();
        SkewMatrix<GammaPolynomial> m(d + 1, GammaPolynomial(d));
        for (std::size_t i = 1; i <= d; ++i) m.set(0, i, GammaPolynomial::gamma(d, i));
        return m;
    }
    /// Entries as exact-or-refinable reals.
    SkewMatrix<Real> real() const {
        const std::size_t d = dim();
        SkewMatrix<Real> m(d + 1, Real(0));
        for (std::size_t i = 1; i <= d; ++i) m.set(0, i, gamma_.gamma(i - 1));
        return m;
    }

private:
    RotationVector gamma_;
};

/// 0-based row indices of the 1-based label I, validated.
inline std::vector<std::size_t> theta_indices(std::size_t size, const std::vector<std::size_t>& I) {
    std::vector<std::size_t> idx;
    for (std::size_t k = 0; k < I.size(); ++k) {
        if (I[k] < 1 || I[k] > size)
            throw DomainError("theta_submatrix: index " + std::to_string(I[k]) + " outside {1,...," +
                              std::to_string(size) + "}");
        if (k && I[k] <= I[k - 1]) throw DomainError("theta_submatrix: indices must be strictly increasing");
        idx.push_back(I[k] - 1);
    }
    return idx;
}

/// Rows and columns I (1-based, increasing) of theta.
inline SkewMatrix<GammaPolynomial> theta_submatrix(const TorusTheta& theta, const std::vector<std::size_t>& I) {
    return theta.formal().restrict(theta_indices(theta.size(), I));
}

inline SkewMatrix<Real> theta_submatrix_real(const TorusTheta& theta, const std::vector<std::size_t>& I) {
    return theta.real().restrict(theta_indices(theta.size(), I));
}

} // namespace denjoy
