#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <complex>
#include <limits>

#include "errors.hpp"

namespace omit {

using Mat3 = Eigen::Matrix<std::complex<double>, 3, 3>;
using Vec3 = Eigen::Matrix<std::complex<double>, 3, 1>;

inline constexpr double singular_threshold = 1e12;

struct Solve3 {
    Vec3 x;
    double cond; // condition estimate of the equilibrated matrix
};

// Row and column equilibration, then full-pivot LU. The sideband matrices mix rows in
// s^-1, kg s^-2 and J/m, so only the equilibrated 1-norm condition number is meaningful.
inline Solve3 solve3_unchecked(const Mat3& A, const Vec3& b)
{
    constexpr double inf = std::numeric_limits<double>::infinity();
    Eigen::Vector3d r, c;
    for (int i = 0; i < 3; ++i) r(i) = A.row(i).cwiseAbs().maxCoeff();
    if (!(r.minCoeff() > 0.0)) return {Vec3::Zero(), inf};
    Mat3 B = r.cwiseInverse().cast<std::complex<double>>().asDiagonal() * A;
    for (int j = 0; j < 3; ++j) c(j) = B.col(j).cwiseAbs().maxCoeff();
    if (!(c.minCoeff() > 0.0)) return {Vec3::Zero(), inf};
    B = B * c.cwiseInverse().cast<std::complex<double>>().asDiagonal();
    Eigen::FullPivLU<Mat3> lu(B);
    if (!lu.isInvertible()) return {Vec3::Zero(), inf};
    auto norm1 = [](const Mat3& M) { return M.cwiseAbs().colwise().sum().maxCoeff(); };
    const double cond = norm1(B) * norm1(lu.inverse());
    Vec3 y = lu.solve(Vec3(r.cwiseInverse().cast<std::complex<double>>().asDiagonal() * b));
    return {c.cwiseInverse().cast<std::complex<double>>().asDiagonal() * y, cond};
}

inline double condition_estimate(const Mat3& A) { return solve3_unchecked(A, Vec3::Zero()).cond; }

inline Solve3 solve3(const Mat3& A, const Vec3& b)
{
    Solve3 s = solve3_unchecked(A, b);
    if (!(s.cond <= singular_threshold)) throw singular_system(s.cond);
    return s;
}

} // namespace omit
