#pragma once

#include "mapcone/types.hpp"

#include <functional>

namespace mapcone {

using MapEvaluator = std::function<Matrix3c(const Matrix3c&)>;

Matrix3c matrix_unit(int i, int j);

/// Non-normalized maximally entangled vector sum_i e_i (x) e_i.
Vector9c maximally_entangled_vector();

/// Choi matrix of the identity map, |omega><omega| with omega as above.
Matrix9c maximally_entangled_projection();

/// Choi matrix C_Phi with C[(i,k),(j,l)] = Phi(e_ij)_{kl}.
/// Runs a linearity spot check on a fixed linear combination of matrix
/// units and rejects evaluators producing non-finite entries.
Matrix9c choi_of_map(const MapEvaluator& phi);

/// Evaluate the map represented by a Choi matrix: Phi(X) = sum_ij X_ij B_ij
/// where B_ij is the (i,j) block of C.
Matrix3c apply_choi(const Matrix9c& c, const Matrix3c& x);

/// alpha with C_{Ad_A} = |alpha><alpha|; column-stacked entries
/// alpha[3q + p] = A(p, q).
Vector9c vectorize(const Matrix3c& a);

Matrix9c choi_of_ad(const Matrix3c& a);

/// Ad_A(X) = A X A^dag.
Matrix3c ad_apply(const Matrix3c& a, const Matrix3c& x);

/// Hilbert-Schmidt pairing Tr(c1 c2^dag); conjugation on the second slot.
Complex hs_inner(const Matrix9c& c1, const Matrix9c& c2);

/// A linear map on M_3, canonically represented by its Choi matrix.
/// An optional direct evaluator is kept when the map was built from one.
class LinearMap {
 public:
  LinearMap() : choi_(Matrix9c::Zero()) {}

  static LinearMap from_choi(const Matrix9c& c);
  static LinearMap from_evaluator(const MapEvaluator& phi);
  static LinearMap identity();
  static LinearMap transpose_map();
  static LinearMap ad(const Matrix3c& a);

  const Matrix9c& choi() const { return choi_; }
  Matrix3c apply(const Matrix3c& x) const;

  /// this o other.
  LinearMap compose(const LinearMap& other) const;

  /// Adjoint with respect to the map-level Hilbert-Schmidt pairing,
  /// computed entrywise on the matrix-unit basis.
  LinearMap adjoint() const;

  bool hermiticity_preserving(double tol_factor = kHermitianTolFactor) const {
    return is_hermitian(choi_, tol_factor);
  }

 private:
  Matrix9c choi_;
  MapEvaluator evaluator_;  // may be empty
};

/// Map-level pairing <Phi, Psi>'' evaluated directly on matrix units.
/// Kept separate from hs_inner so the isometry property stays testable
/// through two independent routes.
Complex map_inner(const LinearMap& phi, const LinearMap& psi);

/// C_{Phi o Psi} = (I (x) Phi) C_Psi: Phi applied to every 3x3 block.
Matrix9c compose_choi(const LinearMap& phi, const Matrix9c& c_psi);

/// Choi transport under two-sided conjugation:
/// C_{Ad_A o Phi o Ad_B} = Ad_{B^t (x) A} C_Phi.
Matrix9c local_conjugate_choi(const Matrix9c& c, const Matrix3c& a, const Matrix3c& b);

/// (id (x) t) rho: transpose inside every 3x3 block.
Matrix9c partial_transpose(const Matrix9c& rho);

/// Compression pinned with y on the coarse factor; 3x3 in the fine indices.
/// For a Choi matrix this equals Phi(conj(y) conj(y)^dag).
Matrix3c compress_right(const Matrix9c& c, const Vector3c& y);

/// Compression pinned with x on the fine factor; entries x^dag B_kl x.
Matrix3c compress_left(const Matrix9c& c, const Vector3c& x);

/// <x (x) y | C | x (x) y> for the product pair (x, y).
double product_pair_value(const Matrix9c& c, const Vector3c& x, const Vector3c& y);

double min_eigenvalue(const Matrix3c& h, double tol_factor = kHermitianTolFactor);
double min_eigenvalue(const Matrix9c& h, double tol_factor = kHermitianTolFactor);

int numerical_rank(const Eigen::MatrixXcd& m, double tol = kRankTol);

/// Validated density matrix on the 9-dimensional composite space.
struct DensityMatrix9 {
  Matrix9c matrix;
};

/// Throws std::domain_error unless m is Hermitian, positive semidefinite
/// (minimum eigenvalue >= -tol) and unit trace within tolerance.
DensityMatrix9 make_density(const Matrix9c& m, double tol = kEigenTol);

}  // namespace mapcone
