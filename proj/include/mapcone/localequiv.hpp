#pragma once

#include "mapcone/hakye.hpp"
#include "mapcone/types.hpp"

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace mapcone {

enum class PairClass { kProportional, kSingleNonzeroEach, kGeneric };

struct VectorPairClassification {
  PairClass cls = PairClass::kGeneric;
  Complex factor;  // z = factor * y when cls == kProportional
};

/// Structural classification of a vector pair: proportional, one nonzero
/// coordinate in each, or neither. The first two are the only shapes that
/// can keep |sum_l y_l e^{i phi_l}| = |sum_l z_l e^{i phi_l}| for every
/// phase tuple (the proportional case additionally needs |factor| = 1 and
/// the single-nonzero case equal moduli).
VectorPairClassification classify_vectors(const Eigen::VectorXcd& y,
                                          const Eigen::VectorXcd& z,
                                          double tol = 1e-9);

/// Randomized one-sided test of the phase-moduli property above: false
/// means definitively unequal, true means no counterexample was found in
/// phase_samples draws (the all-zero tuple is always probed first).
bool moduli_equal_oracle(const Eigen::VectorXcd& y, const Eigen::VectorXcd& z,
                         int phase_samples, std::uint64_t seed, double tol = 1e-9);

/// Pair-level prediction of the phase-moduli property implied by the
/// structural classification.
bool pair_preserves_moduli(const Eigen::VectorXcd& y, const Eigen::VectorXcd& z,
                           double tol = 1e-9);

enum class ModuliKind { kMonomial, kProportionalRows, kGeneric };

struct MonomialFactors {
  std::array<int, 3> perm{};  // column of the single nonzero in each row
  Vector3c zeta;              // S = diag(zeta) * P with P(r, perm[r]) = 1
};

struct ModuliClass {
  ModuliKind kind = ModuliKind::kGeneric;
  std::optional<MonomialFactors> monomial;
  std::optional<std::pair<int, int>> proportional_rows;
};

const char* moduli_kind_name(ModuliKind k);

ModuliClass classify_matrix(const Matrix3c& x, double tol = 1e-9);

std::optional<MonomialFactors> monomial_decompose(const Matrix3c& s, double tol = 1e-9);

Matrix3c recompose_monomial(const MonomialFactors& f);

enum class Permutation3 { kIdentity, kSwap12, kSwap13, kSwap23, kCycle123, kCycle132 };

const char* permutation_name(Permutation3 p);

/// (P v)_k = v_{perm_index(p)[k]}.
std::array<int, 3> permutation_index_map(Permutation3 p);

Matrix3c permutation_matrix(Permutation3 p);

struct ObstructionRecord {
  std::string step;
  std::string tag;          // wire-format identifiers: Eq62, AppendixC, Eq76, Eq91
  std::string permutation;  // empty for the structural steps
  std::string forced;       // the relation the modulus chain forces
  double lhs = 0.0;
  double rhs = 0.0;
  bool contradiction = false;
  std::string detail;
};

/// Modulus chain for S^dag = diag(zeta) * transposition: transporting the
/// three single-zero singular families forces t1 * t2 = 1, impossible on
/// (0,1). Zero parameters reroute to a direct zero-pattern candidate
/// check.
ObstructionRecord transposition_obstruction(double t1, double t2,
                                            Permutation3 transposition);

/// Modulus chain for S^dag = diag(zeta) * (identity or 3-cycle): the three
/// relations |zeta_i|^2 t2 = |zeta_j|^2 t1 multiply to t1^3 = t2^3, so the
/// chain is consistent only when t1 = t2.
ObstructionRecord cycle_obstruction(double t1, double t2,
                                    Permutation3 cycle_or_identity);

/// Necessary condition on a candidate transport S: every sampled member of
/// the t1 singular families must map under S^dag (after normalization)
/// into the zero set of the t2 determinant, and the rows of S^dag must
/// pass the pairwise moduli oracle. Throws std::domain_error for singular S.
bool singular_set_transport_check(double t1, double t2, const Matrix3c& s,
                                  int phase_samples, std::uint64_t seed);

struct SearchOptions {
  int restarts = 64;
  int iters = 400;
  std::uint64_t seed = 7;
};

struct NumericSearchResult {
  Matrix3c r;
  Matrix3c s;
  double residual = 0.0;
};

/// Multi-start gradient descent on || C1 - c (R (x) S) C2 (R (x) S)^dag ||_F
/// with R, S kept at unit largest singular value and the overall scale c
/// solved in closed form. Inputs are normalized to trace 6 first. Heuristic
/// corroboration only; a large residual is evidence, not proof.
NumericSearchResult numeric_search_equiv(const Matrix9c& c1, const Matrix9c& c2,
                                         const SearchOptions& opt = {});

struct EquivalenceVerdict {
  bool equivalent = false;
  std::vector<ObstructionRecord> certificate;
  std::optional<std::pair<Matrix3c, Matrix3c>> witness;  // (R, S) when equivalent
  std::optional<double> numeric_residual;
};

struct DecideOptions {
  bool numeric = false;
  SearchOptions search;
};

/// Decide C_{Phi_t1} = Ad_{R (x) S} C_{Phi_t2}. For t1 == t2 the identity
/// pair witnesses equivalence. Otherwise the certificate chain runs: the
/// equal-moduli necessity, the forced monomial structure, and the
/// contradiction of every transposition, cycle and identity permutation.
EquivalenceVerdict decide_local_equivalence(double t1, double t2,
                                            const DecideOptions& opt = {});

}  // namespace mapcone
