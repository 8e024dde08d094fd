#include "mapcone/choi.hpp"
#include "mapcone/hakye.hpp"
#include "mapcone/rng.hpp"

#include <doctest.h>

using namespace mapcone;

namespace {

const double kGrid[] = {0.0, 0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9};

Matrix3c eq_moduli_reference(const std::array<double, 3>& ph) {
  // 2 on the diagonal, -e^{i(ph_j - ph_i)} off the diagonal, all over 3.
  Matrix3c m;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      m(i, j) = (i == j) ? Complex(2.0, 0.0)
                         : -std::exp(Complex(0.0, ph[j] - ph[i]));
  return m / 3.0;
}

}  // namespace

TEST_SUITE("hakye") {

TEST_CASE("coefficients") {
  const HaKyeParams p0 = coefficients(0.0);
  CHECK(p0.a == doctest::Approx(1.0));
  CHECK(p0.b == doctest::Approx(0.0));
  CHECK(p0.c == doctest::Approx(1.0));

  const HaKyeParams ph = coefficients(0.5);
  CHECK(ph.a == doctest::Approx(1.0 / 3.0).epsilon(1e-14));
  CHECK(ph.b == doctest::Approx(1.0 / 3.0).epsilon(1e-14));
  CHECK(ph.c == doctest::Approx(4.0 / 3.0).epsilon(1e-14));

  for (double t : kGrid) {
    const HaKyeParams p = coefficients(t);
    CHECK(std::abs(p.a + p.b + p.c - 2.0) < 1e-14);
    CHECK(p.a >= 0.0);
    CHECK(p.b >= 0.0);
    CHECK(p.c > 0.0);
  }

  CHECK_THROWS_AS(coefficients(1.0), std::domain_error);
  CHECK_THROWS_AS(coefficients(-0.1), std::domain_error);
  CHECK_THROWS_AS(coefficients(1.5), std::domain_error);
}

TEST_CASE("apply on matrix units") {
  const double t = 0.37;
  const HaKyeParams p = coefficients(t);

  const Matrix3c y11 = apply_hakye(t, matrix_unit(0, 0));
  CHECK(y11(0, 0).real() == doctest::Approx(p.a).epsilon(1e-14));
  CHECK(y11(1, 1).real() == doctest::Approx(p.c).epsilon(1e-14));
  CHECK(y11(2, 2).real() == doctest::Approx(p.b).epsilon(1e-14));

  const Matrix3c yid = apply_hakye(t, Matrix3c::Identity());
  CHECK((yid - 2.0 * Matrix3c::Identity()).cwiseAbs().maxCoeff() < 1e-14);

  const Matrix3c y12 = apply_hakye(t, matrix_unit(0, 1));
  CHECK((y12 + matrix_unit(0, 1)).cwiseAbs().maxCoeff() < 1e-15);
}

TEST_CASE("family Choi matrix") {
  for (double t : kGrid) {
    const Matrix9c c = choi_hakye(t);
    const HaKyeParams p = coefficients(t);
    CHECK(c(0, 0).real() == doctest::Approx(p.a).epsilon(1e-14));
    CHECK(c(0, 4).real() == doctest::Approx(-1.0));
    CHECK(is_hermitian(c));
    CHECK(c.trace().real() == doctest::Approx(6.0).epsilon(1e-14));

    const Matrix9c via_map =
        choi_of_map([&](const Matrix3c& x) { return apply_hakye(t, x); });
    CHECK((c - via_map).cwiseAbs().maxCoeff() < 1e-14);

    // Entangled direction: the quadratic form evaluates to a_t - 2 < 0.
    const Vector9c v = maximally_entangled_vector() / std::sqrt(3.0);
    const double q = (v.adjoint() * c * v)(0).real();
    CHECK(q == doctest::Approx(p.a - 2.0).epsilon(1e-13));
    CHECK(q < 0.0);
  }

  const Matrix9c c0 = choi_hakye(0.0);
  const double expected_diag[9] = {1, 1, 0, 0, 1, 1, 1, 0, 1};
  for (int i = 0; i < 9; ++i) {
    CHECK(c0(i, i).real() == doctest::Approx(expected_diag[i]));
  }
}

TEST_CASE("determinant function agrees between routes and is phase invariant") {
  Rng rng(41);
  for (int i = 0; i < 200; ++i) {
    const double t = rng.uniform(0.0, 0.999);
    const Vector3c y = rng.unit_vector3();
    const double via_det = f_det(t, y);
    const double via_poly =
        f_poly(t, std::norm(y(0)), std::norm(y(1)), std::norm(y(2)));
    CHECK(std::abs(via_det - via_poly) < 1e-10);

    Vector3c rotated;
    for (int k = 0; k < 3; ++k)
      rotated(k) = y(k) * std::exp(Complex(0.0, rng.uniform(0.0, 2 * M_PI)));
    CHECK(std::abs(f_det(t, rotated) - via_det) < 1e-10);
  }

  // Spot values.
  const Vector3c equal = Vector3c::Ones() / std::sqrt(3.0);
  CHECK(std::abs(f_det(0.4, equal)) < 1e-14);

  const double t = 0.6;
  Vector3c z1;
  z1 << 0.0, std::sqrt(t / (1.0 + t)), std::sqrt(1.0 / (1.0 + t));
  CHECK(std::abs(f_det(t, z1)) < 1e-14);

  Vector3c e1;
  e1 << 1.0, 0.0, 0.0;
  const HaKyeParams p = coefficients(t);
  CHECK(f_det(t, e1) == doctest::Approx(p.a * p.b * p.c).epsilon(1e-13));
}

TEST_CASE("cubic coefficient adjudicated by an independent determinant expansion") {
  // Reference: the compression built literally from the coefficient formula
  // at a real non-negative point, expanded by the rule of Sarrus.
  const double t = 0.3;
  const double l1 = 0.5, l2 = 0.3, l3 = 0.2;
  const HaKyeParams p = coefficients(t);
  const double d1 = p.a * l1 + p.b * l2 + p.c * l3;
  const double d2 = p.c * l1 + p.a * l2 + p.b * l3;
  const double d3 = p.b * l1 + p.c * l2 + p.a * l3;
  const double reference =
      d1 * d2 * d3 - 2.0 * l1 * l2 * l3 - d1 * l2 * l3 - d2 * l1 * l3 - d3 * l1 * l2;

  const FConstants k = f_constants(t);
  CHECK(f_poly(k, l1, l2, l3) == doctest::Approx(reference).epsilon(1e-12));

  // A cubic whose last coefficient omits the -3a correction disagrees.
  FConstants variant = k;
  variant.D = std::pow(p.a, 3) + std::pow(p.b, 3) + std::pow(p.c, 3) +
              3.0 * p.a * p.b * p.c - 2.0;
  CHECK(std::abs(f_poly(variant, l1, l2, l3) - reference) > 1e-3);
}

TEST_CASE("gradient") {
  const auto g = f_gradient(0.3, 1.0 / 3, 1.0 / 3, 1.0 / 3);
  CHECK(g[0] == doctest::Approx(g[1]).epsilon(1e-13));
  CHECK(g[1] == doctest::Approx(g[2]).epsilon(1e-13));

  // Stationarity at the symmetric point: the gradient lies along the
  // constraint normal (1,1,1), so its projection onto the simplex vanishes.
  for (double t : {0.0, 0.25, 0.5, 0.75}) {
    const auto gs = f_gradient(t, 1.0 / 3, 1.0 / 3, 1.0 / 3);
    const double mean = (gs[0] + gs[1] + gs[2]) / 3.0;
    const double projected = std::hypot(gs[0] - mean, std::hypot(gs[1] - mean, gs[2] - mean));
    CHECK(projected <= 1e-8);
  }

  Rng rng(43);
  for (int i = 0; i < 50; ++i) {
    const double t = rng.uniform(0.0, 0.999);
    const FConstants k = f_constants(t);
    const double l1 = rng.uniform(0.05, 1.0);
    const double l2 = rng.uniform(0.05, 1.0);
    const double l3 = rng.uniform(0.05, 1.0);
    const auto grad = f_gradient(k, l1, l2, l3);

    const double h = 1e-5;
    const double fd0 =
        (f_poly(k, l1 + h, l2, l3) - f_poly(k, l1 - h, l2, l3)) / (2 * h);
    CHECK(std::abs(fd0 - grad[0]) / std::max(1.0, std::abs(grad[0])) < 1e-6);

    // Summing the components yields the quadratic-form identity.
    const double sum3 = 3.0 * k.A + k.B + k.C;
    const double quad = sum3 * (l1 * l1 + l2 * l2 + l3 * l3) +
                        (2 * k.B + 2 * k.C + k.D) * (l1 * l2 + l2 * l3 + l3 * l1);
    CHECK(std::abs(grad[0] + grad[1] + grad[2] - quad) < 1e-12);
  }
}

TEST_CASE("constants") {
  const FConstants k0 = f_constants(0.0);
  CHECK(std::abs(k0.A) < 1e-15);
  CHECK(3.0 * k0.A + k0.B + k0.C == doctest::Approx(1.0).epsilon(1e-14));

  for (double t : kGrid) {
    const FConstants k = f_constants(t);
    const double sum3 = 3.0 * k.A + k.B + k.C;
    CHECK(std::abs(sum3 + (2.0 * k.B + 2.0 * k.C + k.D)) < 1e-12);
    // Verified closed form: the sum equals a_t = (1-t)^2/(1-t+t^2).
    const double d = 1.0 - t + t * t;
    CHECK(sum3 == doctest::Approx((1.0 - t) * (1.0 - t) / d).epsilon(1e-12));
    CHECK(sum3 > 0.0);
  }
}

TEST_CASE("edge singularity location from the quadratic-root oracle") {
  // With l1 = 0 and l2 = 1 the compression splits off a 2x2 block whose
  // determinant is ab*l3^2 + (a^2 + bc - 1)*l3 + ac. The oracle finds a
  // double root at l3 = 1/t, matching the normalized family shape
  // (l3/l2 = 1/t), not 1/sqrt(t).
  for (double t : {0.1, 0.3, 0.5, 0.7, 0.9}) {
    const HaKyeParams p = coefficients(t);
    const double qa = p.a * p.b;
    const double qb = p.a * p.a + p.b * p.c - 1.0;
    const double qc = p.a * p.c;
    const double disc = qb * qb - 4.0 * qa * qc;
    CHECK(std::abs(disc) < 1e-12);
    const double root = -qb / (2.0 * qa);
    CHECK(root == doctest::Approx(1.0 / t).epsilon(1e-9));
  }
}

TEST_CASE("singular families") {
  for (double t : kGrid) {
    const auto families = singular_y_families(t);
    REQUIRE(families.size() == 4);
    const double r = std::sqrt(1.0 / (1.0 + t));
    const double s = std::sqrt(t / (1.0 + t));
    const double e = 1.0 / std::sqrt(3.0);
    CHECK(families[0].moduli == std::array<double, 3>{e, e, e});
    CHECK(families[1].moduli == std::array<double, 3>{0.0, s, r});
    CHECK(families[2].moduli == std::array<double, 3>{r, 0.0, s});
    CHECK(families[3].moduli == std::array<double, 3>{s, r, 0.0});
    for (const auto& fam : families) {
      double norm2 = 0.0;
      for (double m : fam.moduli) norm2 += m * m;
      CHECK(norm2 == doctest::Approx(1.0).epsilon(1e-14));
    }
  }

  // t = 0 degenerates the single-zero families to basis vectors.
  const auto f0 = singular_y_families(0.0);
  CHECK(f0[1].moduli == std::array<double, 3>{0.0, 0.0, 1.0});
  CHECK(f0[2].moduli == std::array<double, 3>{1.0, 0.0, 0.0});
  CHECK(f0[3].moduli == std::array<double, 3>{0.0, 1.0, 0.0});

  const auto fh = singular_y_families(0.5);
  CHECK(fh[1].moduli[1] == doctest::Approx(std::sqrt(1.0 / 3.0)).epsilon(1e-14));
  CHECK(fh[1].moduli[2] == doctest::Approx(std::sqrt(2.0 / 3.0)).epsilon(1e-14));

  Rng rng(47);
  for (double t : {0.0, 0.3, 0.7}) {
    const Matrix9c c = choi_hakye(t);
    for (const auto& fam : singular_y_families(t)) {
      for (int draw = 0; draw < 100; ++draw) {
        std::array<double, 3> ph;
        for (auto& x : ph) x = rng.uniform(0.0, 2 * M_PI);
        const Vector3c y = fam.y(ph);
        const Matrix3c m = compress_right(c, y);
        CHECK(std::abs(m.determinant().real()) < 1e-10);
        CHECK(numerical_rank(m) == 2);
      }
    }
  }

  // Equal-moduli compression takes the reference shape.
  const std::array<double, 3> ph{0.3, 1.1, 2.7};
  const auto eq = singular_family(0.45, FamilyId::kEqualModuli);
  const Matrix3c m = compress_right(choi_hakye(0.45), eq.y(ph));
  CHECK((m - eq_moduli_reference(ph)).cwiseAbs().maxCoeff() < 1e-14);
}

TEST_CASE("kernel vectors") {
  const double t = 0.35;
  const Matrix9c c = choi_hakye(t);

  const std::array<double, 3> ph{0.2, 0.9, 1.7};
  const auto eq = singular_family(t, FamilyId::kEqualModuli);
  const Vector3c x_eq = kernel_x(t, eq, ph);
  for (int i = 0; i < 3; ++i) {
    CHECK(std::abs(x_eq(i) - std::exp(Complex(0.0, -ph[i])) / std::sqrt(3.0)) < 1e-14);
  }

  const auto z1 = singular_family(t, FamilyId::kZero1);
  const Vector3c x_z1 = kernel_x(t, z1, ph);
  CHECK(std::abs(x_z1(0)) < 1e-15);
  CHECK(std::abs(x_z1(1)) == doctest::Approx(std::sqrt(1.0 / (1.0 + t))).epsilon(1e-14));
  CHECK(std::abs(x_z1(2)) == doctest::Approx(std::sqrt(t / (1.0 + t))).epsilon(1e-14));

  Rng rng(53);
  for (int draw = 0; draw < 100; ++draw) {
    std::array<double, 3> phases;
    for (auto& p : phases) p = rng.uniform(0.0, 2 * M_PI);
    for (const auto& fam : singular_y_families(t)) {
      const Vector3c y = fam.y(phases);
      const Vector3c x = kernel_x(t, fam, phases);
      CHECK((compress_right(c, y) * x).norm() < 1e-9);
      CHECK(std::abs(product_pair_value(c, x, y)) < 1e-12);
      CHECK(x.norm() == doctest::Approx(1.0).epsilon(1e-13));
    }
  }

  // Kernel vectors from different families are never proportional.
  const std::array<double, 3> zero_ph{0.0, 0.0, 0.0};
  const auto families = singular_y_families(t);
  for (size_t i = 0; i < families.size(); ++i) {
    for (size_t j = i + 1; j < families.size(); ++j) {
      const Vector3c xi = kernel_x(t, families[i], zero_ph);
      const Vector3c xj = kernel_x(t, families[j], zero_ph);
      const double overlap = std::abs((xi.adjoint() * xj)(0));
      CHECK(overlap < 1.0 - 1e-6);
    }
  }

  const auto other = singular_family(0.8, FamilyId::kZero1);
  CHECK_THROWS_AS(kernel_x(t, other, zero_ph), std::domain_error);
}

TEST_CASE("permutation symmetry") {
  CHECK(permutation_symmetry_check(0.0));
  CHECK(permutation_symmetry_check(0.7));
  Matrix9c perturbed = choi_hakye(0.4);
  perturbed(2, 3) += 0.5;
  CHECK_FALSE(permutation_symmetry_holds(perturbed));
}

}  // TEST_SUITE
