#pragma once

#include <Eigen/Dense>

#include <cstdint>

namespace eggbeater {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;
using IVec = Eigen::Matrix<std::int64_t, Eigen::Dynamic, 1>;

// Standard symplectic matrix [[0, I], [-I, 0]] in (x, v) ordering.
inline Mat standard_J(int n) {
    Mat J = Mat::Zero(2 * n, 2 * n);
    J.topRightCorner(n, n).setIdentity();
    J.bottomLeftCorner(n, n) = -Mat::Identity(n, n);
    return J;
}

// Componentwise floor(y + 1/2): the deck translation bringing y into [-1/2, 1/2)^n.
inline IVec nearest_lattice(const Vec& y) {
    IVec w(y.size());
    for (Eigen::Index i = 0; i < y.size(); ++i)
        w[i] = static_cast<std::int64_t>(std::floor(y[i] + 0.5));
    return w;
}

}  // namespace eggbeater
