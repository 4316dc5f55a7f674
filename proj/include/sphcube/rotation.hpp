#pragma once

#include <Eigen/Dense>

#include <stdexcept>
#include <utility>

namespace sphcube {

// An element of SO(n).  Construction validates orthogonality and det = +1.
struct Rotation {
    int n;
    Eigen::MatrixXd matrix;

    Rotation(int n_, Eigen::MatrixXd m) : n(n_), matrix(std::move(m)) {
        if (matrix.rows() != n || matrix.cols() != n)
            throw std::invalid_argument("Rotation: matrix is not n x n");
        const double ortho_err =
            (matrix.transpose() * matrix - Eigen::MatrixXd::Identity(n, n))
                .cwiseAbs()
                .maxCoeff();
        if (ortho_err > 1e-8)
            throw std::invalid_argument("Rotation: matrix is not orthogonal (|R^T R - I| > 1e-8)");
        if (std::abs(matrix.determinant() - 1.0) > 1e-8)
            throw std::invalid_argument("Rotation: determinant is not +1");
    }

    static Rotation identity(int n_) {
        return Rotation(n_, Eigen::MatrixXd::Identity(n_, n_));
    }
};

} // namespace sphcube
