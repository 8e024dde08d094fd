#pragma once

#include <Eigen/Dense>

#include <complex>
#include <stdexcept>
#include <string>

namespace mapcone {

using Complex = std::complex<double>;
using Vector3c = Eigen::Vector3cd;
using Matrix3c = Eigen::Matrix3cd;
using Vector9c = Eigen::Matrix<Complex, 9, 1>;
using Matrix9c = Eigen::Matrix<Complex, 9, 9>;

// Default tolerances. Commands may override them through RunConfig.
inline constexpr double kHermitianTolFactor = 1e-10;  // relative to ||M||_F
inline constexpr double kRankTol = 1e-9;              // relative to sigma_max
inline constexpr double kEigenTol = 1e-9;
inline constexpr double kBlockPositiveTol = 1e-8;
inline constexpr double kResidualTol = 1e-8;

// Composite index layout for 9-dimensional objects: a pair (coarse, fine)
// maps to 3*coarse + fine. Choi matrices carry the map-input index on the
// block (coarse) level and the map-output index inside each 3x3 block.
// A product pair (x, y) embeds as the 9-vector v[3k + i] = y[k] * x[i],
// so that <v|C_Phi|v> = <x| Phi(conj(y) conj(y)^dag) |x>.
inline constexpr int composite_index(int coarse, int fine) {
  return 3 * coarse + fine;
}

template <typename Derived>
bool all_finite(const Eigen::MatrixBase<Derived>& m) {
  return m.allFinite();
}

template <typename Derived>
void require_finite(const Eigen::MatrixBase<Derived>& m, const std::string& what) {
  if (!m.allFinite()) {
    throw std::invalid_argument(what + ": non-finite entries");
  }
}

template <typename Derived>
bool is_hermitian(const Eigen::MatrixBase<Derived>& m,
                  double tol_factor = kHermitianTolFactor) {
  const double scale = m.norm();
  return (m - m.adjoint()).norm() <= tol_factor * std::max(scale, 1.0);
}

template <typename Derived>
void require_hermitian(const Eigen::MatrixBase<Derived>& m, const std::string& what,
                       double tol_factor = kHermitianTolFactor) {
  if (!is_hermitian(m, tol_factor)) {
    throw std::domain_error(what + ": matrix is not Hermitian within tolerance");
  }
}

inline Eigen::Block<Matrix9c, 3, 3> block(Matrix9c& c, int i, int j) {
  return c.block<3, 3>(3 * i, 3 * j);
}

inline Eigen::Block<const Matrix9c, 3, 3> block(const Matrix9c& c, int i, int j) {
  return c.block<3, 3>(3 * i, 3 * j);
}

/// Kronecker product with the first factor on the block (coarse) level.
inline Matrix9c kron(const Matrix3c& a, const Matrix3c& b) {
  Matrix9c out;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) out.block<3, 3>(3 * i, 3 * j) = a(i, j) * b;
  return out;
}

inline Vector9c kron(const Vector3c& a, const Vector3c& b) {
  Vector9c out;
  for (int i = 0; i < 3; ++i)
    for (int k = 0; k < 3; ++k) out(composite_index(i, k)) = a(i) * b(k);
  return out;
}

/// 9-vector carrying the product pair (x, y); y lives on the coarse factor.
inline Vector9c product_pair_vector(const Vector3c& x, const Vector3c& y) {
  return kron(y, x);
}

}  // namespace mapcone
