#include "mapcone/hakye.hpp"

#include <cmath>

namespace mapcone {

HaKyeParams coefficients(double t) {
  if (!(t >= 0.0 && t < 1.0)) {
    throw std::domain_error("coefficients: t must lie in [0, 1)");
  }
  const double d = 1.0 - t + t * t;
  HaKyeParams p;
  p.t = t;
  p.a = (1.0 - t) * (1.0 - t) / d;
  p.b = t * t / d;
  p.c = 1.0 / d;
  return p;
}

Matrix3c apply_hakye(double t, const Matrix3c& x) {
  const HaKyeParams p = coefficients(t);
  Matrix3c y = -x;
  y(0, 0) = p.a * x(0, 0) + p.b * x(1, 1) + p.c * x(2, 2);
  y(1, 1) = p.c * x(0, 0) + p.a * x(1, 1) + p.b * x(2, 2);
  y(2, 2) = p.b * x(0, 0) + p.c * x(1, 1) + p.a * x(2, 2);
  return y;
}

LinearMap hakye_map(double t) {
  coefficients(t);  // validate the domain before capturing
  return LinearMap::from_evaluator(
      [t](const Matrix3c& x) { return apply_hakye(t, x); });
}

Matrix9c choi_hakye(double t) {
  const HaKyeParams p = coefficients(t);
  Matrix9c c = Matrix9c::Zero();
  const double diag[9] = {p.a, p.c, p.b, p.b, p.a, p.c, p.c, p.b, p.a};
  for (int i = 0; i < 9; ++i) c(i, i) = diag[i];
  for (int i : {0, 4, 8})
    for (int j : {0, 4, 8})
      if (i != j) c(i, j) = -1.0;
  return c;
}

FConstants f_constants(double t) {
  const HaKyeParams p = coefficients(t);
  const double a = p.a, b = p.b, c = p.c;
  FConstants k;
  k.t = t;
  k.A = a * b * c;
  k.B = a * b * b + b * c * c + c * a * a - c;
  k.C = a * c * c + b * a * a + c * b * b - b;
  k.D = a * a * a + b * b * b + c * c * c + 3.0 * a * b * c - 3.0 * a - 2.0;
  return k;
}

double f_poly(const FConstants& k, double l1, double l2, double l3) {
  if (l1 < 0.0 || l2 < 0.0 || l3 < 0.0) {
    throw std::domain_error("f_poly: squared moduli must be non-negative");
  }
  return k.A * (l1 * l1 * l1 + l2 * l2 * l2 + l3 * l3 * l3) +
         k.B * (l2 * l3 * l3 + l3 * l1 * l1 + l1 * l2 * l2) +
         k.C * (l1 * l3 * l3 + l2 * l1 * l1 + l3 * l2 * l2) +
         k.D * l1 * l2 * l3;
}

double f_poly(double t, double l1, double l2, double l3) {
  return f_poly(f_constants(t), l1, l2, l3);
}

double f_det(double t, const Vector3c& y) {
  const Matrix3c m = compress_right(choi_hakye(t), y);
  return m.determinant().real();
}

std::array<double, 3> f_gradient(const FConstants& k, double l1, double l2, double l3) {
  return {
      3.0 * k.A * l1 * l1 + k.B * (2.0 * l1 * l3 + l2 * l2) +
          k.C * (2.0 * l1 * l2 + l3 * l3) + k.D * l2 * l3,
      3.0 * k.A * l2 * l2 + k.B * (2.0 * l2 * l1 + l3 * l3) +
          k.C * (2.0 * l2 * l3 + l1 * l1) + k.D * l3 * l1,
      3.0 * k.A * l3 * l3 + k.B * (2.0 * l3 * l2 + l1 * l1) +
          k.C * (2.0 * l3 * l1 + l2 * l2) + k.D * l1 * l2,
  };
}

std::array<double, 3> f_gradient(double t, double l1, double l2, double l3) {
  return f_gradient(f_constants(t), l1, l2, l3);
}

const char* family_name(FamilyId id) {
  switch (id) {
    case FamilyId::kEqualModuli: return "EQUAL_MODULI";
    case FamilyId::kZero1: return "ZERO_1";
    case FamilyId::kZero2: return "ZERO_2";
    case FamilyId::kZero3: return "ZERO_3";
  }
  return "UNKNOWN";
}

FamilyId family_from_name(const std::string& name) {
  if (name == "EQUAL_MODULI") return FamilyId::kEqualModuli;
  if (name == "ZERO_1") return FamilyId::kZero1;
  if (name == "ZERO_2") return FamilyId::kZero2;
  if (name == "ZERO_3") return FamilyId::kZero3;
  throw std::invalid_argument("unknown singular family: " + name);
}

Vector3c SingularFamily::y(const std::array<double, 3>& phases) const {
  Vector3c v;
  for (int i = 0; i < 3; ++i) {
    v(i) = moduli[i] * std::exp(Complex(0.0, phases[i]));
  }
  return v;
}

SingularFamily singular_family(double t, FamilyId id) {
  coefficients(t);
  const double r = std::sqrt(1.0 / (1.0 + t));
  const double s = std::sqrt(t / (1.0 + t));
  const double e = 1.0 / std::sqrt(3.0);
  SingularFamily f;
  f.id = id;
  f.t = t;
  switch (id) {
    case FamilyId::kEqualModuli:
      f.moduli = {e, e, e};
      f.kernel_moduli = {e, e, e};
      break;
    case FamilyId::kZero1:
      f.moduli = {0.0, s, r};
      f.kernel_moduli = {0.0, r, s};
      break;
    case FamilyId::kZero2:
      f.moduli = {r, 0.0, s};
      f.kernel_moduli = {s, 0.0, r};
      break;
    case FamilyId::kZero3:
      f.moduli = {s, r, 0.0};
      f.kernel_moduli = {r, s, 0.0};
      break;
  }
  return f;
}

std::vector<SingularFamily> singular_y_families(double t) {
  return {singular_family(t, FamilyId::kEqualModuli),
          singular_family(t, FamilyId::kZero1),
          singular_family(t, FamilyId::kZero2),
          singular_family(t, FamilyId::kZero3)};
}

Vector3c kernel_x(double t, const SingularFamily& family,
                  const std::array<double, 3>& phases) {
  if (std::abs(family.t - t) > 1e-14) {
    throw std::domain_error("kernel_x: family was built for a different t");
  }
  Vector3c x;
  for (int i = 0; i < 3; ++i) {
    x(i) = family.kernel_moduli[i] * std::exp(Complex(0.0, -phases[i]));
  }
  return x;
}

bool permutation_symmetry_holds(const Matrix9c& c, double tol) {
  // gamma: 1 -> 2 -> 3 -> 1 applied to all four tensor indices at once.
  constexpr int g[3] = {1, 2, 0};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      for (int k = 0; k < 3; ++k)
        for (int l = 0; l < 3; ++l) {
          const Complex lhs = c(composite_index(i, j), composite_index(k, l));
          const Complex rhs =
              c(composite_index(g[i], g[j]), composite_index(g[k], g[l]));
          if (std::abs(lhs - rhs) > tol) return false;
        }
  return true;
}

bool permutation_symmetry_check(double t) {
  return permutation_symmetry_holds(choi_hakye(t));
}

}  // namespace mapcone
