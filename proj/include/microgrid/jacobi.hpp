#pragma once

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <string>

#include "microgrid/errors.hpp"

namespace microgrid {

template <typename Scalar>
struct EigenvalueResult {
  Eigen::Vector<Scalar, Eigen::Dynamic> values;  // sorted ascending
  Scalar offdiag_residual{0};
  int sweeps = 0;
};

namespace detail {

template <typename Scalar>
Scalar offdiag_frobenius(const Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>& a) {
  Scalar acc{0};
  for (Eigen::Index p = 0; p < a.rows(); ++p)
    for (Eigen::Index q = p + 1; q < a.cols(); ++q) acc += a(p, q) * a(p, q);
  return std::sqrt(Scalar{2} * acc);
}

}  // namespace detail

/// Cyclic Jacobi rotations over the strict upper triangle. Stops once the
/// off-diagonal Frobenius norm is at or below `tol`; each sweep annihilates
/// every off-diagonal pair once, so convergence is quadratic for the small
/// dense matrices this is meant for.
template <typename Derived>
EigenvalueResult<typename Derived::Scalar> eigenvalues_symmetric(
    const Eigen::MatrixBase<Derived>& m,
    typename Derived::Scalar tol = typename Derived::Scalar(1e-12),
    int max_sweeps = 100) {
  using Scalar = typename Derived::Scalar;
  using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

  if (m.rows() != m.cols()) throw ArgumentError("eigenvalues_symmetric: matrix not square");
  if (!(tol > Scalar{0})) throw ArgumentError("eigenvalues_symmetric: tol must be positive");

  Matrix a = m.derived();
  const Scalar scale = Scalar{1} + a.cwiseAbs().maxCoeff();
  for (Eigen::Index p = 0; p < a.rows(); ++p)
    for (Eigen::Index q = p + 1; q < a.cols(); ++q)
      if (std::abs(a(p, q) - a(q, p)) > Scalar(1e-12) * scale)
        throw ArgumentError("eigenvalues_symmetric: matrix not symmetric");

  const Eigen::Index n = a.rows();
  EigenvalueResult<Scalar> result;
  result.offdiag_residual = detail::offdiag_frobenius(a);

  while (result.offdiag_residual > tol) {
    if (result.sweeps >= max_sweeps)
      throw ConvergenceError(
          "eigenvalues_symmetric: off-diagonal residual " +
              std::to_string(static_cast<double>(result.offdiag_residual)) +
              " above tol after " + std::to_string(result.sweeps) + " sweeps",
          static_cast<double>(result.offdiag_residual));
    for (Eigen::Index p = 0; p < n - 1; ++p) {
      for (Eigen::Index q = p + 1; q < n; ++q) {
        const Scalar apq = a(p, q);
        if (apq == Scalar{0}) continue;
        // Rotation angle chosen so the (p,q) entry vanishes.
        const Scalar theta = (a(q, q) - a(p, p)) / (Scalar{2} * apq);
        const Scalar t = (theta >= Scalar{0} ? Scalar{1} : Scalar{-1}) /
                         (std::abs(theta) + std::sqrt(Scalar{1} + theta * theta));
        const Scalar c = Scalar{1} / std::sqrt(Scalar{1} + t * t);
        const Scalar s = t * c;
        for (Eigen::Index r = 0; r < n; ++r) {
          const Scalar arp = a(r, p);
          const Scalar arq = a(r, q);
          a(r, p) = c * arp - s * arq;
          a(r, q) = s * arp + c * arq;
        }
        for (Eigen::Index r = 0; r < n; ++r) {
          const Scalar apr = a(p, r);
          const Scalar aqr = a(q, r);
          a(p, r) = c * apr - s * aqr;
          a(q, r) = s * apr + c * aqr;
        }
      }
    }
    ++result.sweeps;
    result.offdiag_residual = detail::offdiag_frobenius(a);
  }

  result.values = a.diagonal();
  std::sort(result.values.begin(), result.values.end());
  return result;
}

}  // namespace microgrid
