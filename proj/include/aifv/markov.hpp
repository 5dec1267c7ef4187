#pragma once

#include "aifv/core.hpp"

#include <boost/multiprecision/eigen.hpp>
#include <Eigen/Core>

#include <cmath>
#include <optional>

namespace aifv {

template <class Scalar>
using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
template <class Scalar>
using RowVector = Eigen::Matrix<Scalar, 1, Eigen::Dynamic>;

using TransitionMatrix = Matrix<Rational>;
using StationaryDistribution = RowVector<Rational>;

template <class Scalar>
Scalar scalar_from(const Rational& r) {
    if constexpr (std::is_same_v<Scalar, Rational>) return r;
    else return static_cast<Scalar>(to_double(r));
}

namespace detail {

template <class Scalar>
bool is_zero(const Scalar& x) {
    if constexpr (std::is_floating_point_v<Scalar>) return std::abs(x) < Scalar(1e-12);
    else return x == 0;
}

// Row-reduces [A | rhs] in place; returns the rank of A and the pivot column of each pivot row.
template <class Scalar>
std::size_t row_reduce(Matrix<Scalar>& A, Eigen::Matrix<Scalar, Eigen::Dynamic, 1>& rhs, std::vector<Eigen::Index>& pivots) {
    const Eigen::Index rows = A.rows(), cols = A.cols();
    Eigen::Index r = 0;
    pivots.clear();
    for (Eigen::Index c = 0; c < cols && r < rows; ++c) {
        Eigen::Index best = -1;
        for (Eigen::Index i = r; i < rows; ++i) {
            if (is_zero(A(i, c))) continue;
            if constexpr (std::is_floating_point_v<Scalar>) {
                if (best < 0 || std::abs(A(i, c)) > std::abs(A(best, c))) best = i;
            } else if (best < 0) {
                best = i;
            }
        }
        if (best < 0) continue;
        A.row(r).swap(A.row(best));
        std::swap(rhs(r), rhs(best));
        for (Eigen::Index i = 0; i < rows; ++i) {
            if (i == r || is_zero(A(i, c))) continue;
            Scalar factor = A(i, c) / A(r, c);
            A.row(i) -= factor * A.row(r);
            rhs(i) -= factor * rhs(r);
        }
        pivots.push_back(c);
        ++r;
    }
    return static_cast<std::size_t>(r);
}

// πQ = π, Σπ = 1 as an (m+1)×m system in the unknowns π.
template <class Scalar>
void stationary_system(const Matrix<Scalar>& Q, Matrix<Scalar>& A, Eigen::Matrix<Scalar, Eigen::Dynamic, 1>& rhs) {
    const Eigen::Index m = Q.rows();
    A.resize(m + 1, m);
    A.topRows(m) = Q.transpose() - Matrix<Scalar>::Identity(m, m);
    A.row(m).setConstant(Scalar(1));
    rhs = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>::Zero(m + 1);
    rhs(m) = Scalar(1);
}

}  // namespace detail

// Q_{ij} = Σ_{s: τ_i(s) = j} μ(s)
template <class Scalar = Rational>
Matrix<Scalar> transition_matrix_as(const CodeTuple& F, const SourceDist& mu) {
    require_same_alphabet(F, mu);
    const auto m = static_cast<Eigen::Index>(F.size());
    Matrix<Scalar> Q = Matrix<Scalar>::Zero(m, m);
    for (std::size_t i = 0; i < F.size(); ++i)
        for (auto s : symbols(F.sigma()))
            Q(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(F.tau(i, s))) += scalar_from<Scalar>(mu(s));
    return Q;
}

inline TransitionMatrix transition_matrix(const CodeTuple& F, const SourceDist& mu) {
    return transition_matrix_as<Rational>(F, mu);
}

// Rank of the coefficient matrix of the stationary system; |F| iff the solution is unique.
template <class Scalar>
std::size_t stationary_system_rank(const Matrix<Scalar>& Q) {
    Matrix<Scalar> A;
    Eigen::Matrix<Scalar, Eigen::Dynamic, 1> rhs;
    detail::stationary_system(Q, A, rhs);
    std::vector<Eigen::Index> pivots;
    return detail::row_reduce(A, rhs, pivots);
}

// Unique solution of πQ = π, Σπ = 1, or nullopt if it is not unique.
template <class Scalar>
std::optional<RowVector<Scalar>> solve_stationary(const Matrix<Scalar>& Q) {
    Matrix<Scalar> A;
    Eigen::Matrix<Scalar, Eigen::Dynamic, 1> rhs;
    detail::stationary_system(Q, A, rhs);
    std::vector<Eigen::Index> pivots;
    const auto m = Q.rows();
    if (detail::row_reduce(A, rhs, pivots) != static_cast<std::size_t>(m)) return std::nullopt;
    RowVector<Scalar> pi(m);
    for (Eigen::Index r = 0; r < m; ++r) pi(pivots[r]) = rhs(r) / A(r, pivots[r]);
    return pi;
}

StationaryDistribution stationary(const CodeTuple& F, const SourceDist& mu);

// L_i(F) = Σ_s |f_i(s)| μ(s)
Rational table_length(const CodeTuple& F, std::size_t i, const SourceDist& mu);
// L(F) = Σ_i π_i L_i
Rational average_length(const CodeTuple& F, const SourceDist& mu);

// Four-decimal display value, rounded half-to-even from the exact rational.
std::string format_length(const Rational& L);

}  // namespace aifv
