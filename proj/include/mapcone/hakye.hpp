#pragma once

#include "mapcone/choi.hpp"
#include "mapcone/types.hpp"

#include <array>
#include <string>
#include <vector>

namespace mapcone {

/// Coefficients of the Ha-Kye map Phi_t for t in [0, 1):
///   a = (1-t)^2 / (1-t+t^2),  b = t^2 / (1-t+t^2),  c = 1 / (1-t+t^2).
/// They satisfy a + b + c = 2.
struct HaKyeParams {
  double t = 0.0;
  double a = 1.0;
  double b = 0.0;
  double c = 1.0;
};

HaKyeParams coefficients(double t);

/// Phi_t(X): diagonal entries take cyclic (a,b,c) combinations of the
/// diagonal of X, off-diagonal entries are negated.
Matrix3c apply_hakye(double t, const Matrix3c& x);

LinearMap hakye_map(double t);

/// Choi matrix of Phi_t, built entrywise from its known shape. Hermitian
/// with trace 6. Agrees with choi_of_map(apply_hakye(t, .)).
Matrix9c choi_hakye(double t);

/// Coefficients of the compression-determinant cubic
///   F(l1,l2,l3) = A sum l_i^3 + B sum_cyc l_i l_{i+1}^2
///                 + C sum_cyc l_i l_{i-1}^2 + D l1 l2 l3.
struct FConstants {
  double t = 0.0;
  double A = 0.0;
  double B = 0.0;
  double C = 0.0;
  double D = 0.0;
};

FConstants f_constants(double t);

double f_poly(const FConstants& k, double l1, double l2, double l3);
double f_poly(double t, double l1, double l2, double l3);

/// det of the y-side compression of C_{Phi_t}; depends only on the moduli
/// of y, and equals f_poly at (|y1|^2, |y2|^2, |y3|^2).
double f_det(double t, const Vector3c& y);

/// Gradient of f_poly in (l1, l2, l3).
std::array<double, 3> f_gradient(const FConstants& k, double l1, double l2, double l3);
std::array<double, 3> f_gradient(double t, double l1, double l2, double l3);

enum class FamilyId { kEqualModuli, kZero1, kZero2, kZero3 };

const char* family_name(FamilyId id);
FamilyId family_from_name(const std::string& name);

/// One of the four moduli families on which the y-side compression of
/// C_{Phi_t} is singular. The kernel vector attached to a member with
/// phases (p1, p2, p3) carries kernel_moduli and the negated phases.
struct SingularFamily {
  FamilyId id = FamilyId::kEqualModuli;
  double t = 0.0;
  std::array<double, 3> moduli{};
  std::array<double, 3> kernel_moduli{};

  Vector3c y(const std::array<double, 3>& phases) const;
};

/// Exactly four families: equal moduli plus the three single-zero ones.
std::vector<SingularFamily> singular_y_families(double t);
SingularFamily singular_family(double t, FamilyId id);

/// Unit kernel vector of compress_right(choi_hakye(t), y) for y in the
/// family with the given phases. Throws std::domain_error when the family
/// was built for a different t.
Vector3c kernel_x(double t, const SingularFamily& family,
                  const std::array<double, 3>& phases);

/// Entrywise invariance of c under the simultaneous 3-cycle relabeling of
/// both tensor factors.
bool permutation_symmetry_holds(const Matrix9c& c, double tol = 1e-12);
bool permutation_symmetry_check(double t);

}  // namespace mapcone
