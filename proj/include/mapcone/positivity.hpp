#pragma once

#include "mapcone/choi.hpp"
#include "mapcone/types.hpp"

#include <cstdint>
#include <utility>
#include <vector>

namespace mapcone {

struct ProductVector {
  Vector3c x;
  Vector3c y;
};

struct PositivityVerdict {
  double min_value = 0.0;
  ProductVector argmin;
  int restarts_used = 0;
  bool converged = false;
};

struct ProductMinOptions {
  int restarts = 64;
  int max_iters = 200;
  double tol = 1e-12;
  std::uint64_t seed = 1;
};

/// Minimize <x (x) y | C | x (x) y> over unit product pairs by alternating
/// exact 3x3 eigenvector steps: fix y, take the minimal eigenvector of the
/// y-side compression; fix x, take the minimal eigenvector of the x-side
/// compression. Multi-start; value is monotone non-increasing within one
/// start and the merge keeps the earliest best start. Deterministic for a
/// fixed seed. Throws std::domain_error for non-Hermitian input.
PositivityVerdict product_min(const Matrix9c& c, const ProductMinOptions& opt = {});

bool is_block_positive(const Matrix9c& c, double tol = kBlockPositiveTol,
                       const ProductMinOptions& opt = {});
bool is_completely_positive(const Matrix9c& c, double tol = kEigenTol);
bool is_ppt(const Matrix9c& rho, double tol = kEigenTol);

/// Minimum eigenvalue of (I (x) Phi) Ad_{I (x) B} rho.
double witness_apply(const LinearMap& phi, const Matrix3c& b, const Matrix9c& rho);

/// Map-level dual pairing <Psi, Phi>'' = Re Tr(C_Psi C_Phi^dag).
double pairing(const LinearMap& psi, const LinearMap& phi);

struct SeparableTerm {
  double weight = 0.0;
  Vector3c phi1;
  Vector3c phi2;
};

struct SeparableSpec {
  std::vector<SeparableTerm> terms;
};

Matrix9c assemble_separable(const SeparableSpec& spec);

/// Random separable state: k product projectors with positive weights
/// summing to one. The assembled matrix is PSD, unit trace and PPT.
std::pair<SeparableSpec, Matrix9c> separable_sample(int k, std::uint64_t seed);

/// Random superpositive map: sum of conjugations by rank-1 matrices. Its
/// Choi matrix is a sum of product projectors (a separable state up to
/// scale).
LinearMap superpositive_sample(int n, std::uint64_t seed);

struct RankProfile {
  double y_side_min_sigma2 = 0.0;
  double x_side_min_sigma2 = 0.0;
};

/// Estimate the minimum over unit vectors of the second singular value of
/// the y-side / x-side compressions by sphere sampling plus local
/// perturbation descent. sigma_2 is a smooth stand-in for "rank < 2".
RankProfile compression_rank_profile(const Matrix9c& c, int samples, int restarts,
                                     std::uint64_t seed);

}  // namespace mapcone
