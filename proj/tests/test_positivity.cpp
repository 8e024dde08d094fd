#include "mapcone/choi.hpp"
#include "mapcone/hakye.hpp"
#include "mapcone/positivity.hpp"
#include "mapcone/rng.hpp"

#include <doctest.h>

using namespace mapcone;

TEST_SUITE("positivity") {

TEST_CASE("product_min on the identity") {
  ProductMinOptions opt;
  opt.restarts = 4;
  const auto v = product_min(Matrix9c::Identity(), opt);
  CHECK(v.min_value == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(v.converged);
  CHECK(v.restarts_used == 4);
  CHECK(product_pair_value(Matrix9c::Identity(), v.argmin.x, v.argmin.y) ==
        doctest::Approx(v.min_value).epsilon(1e-10));
}

TEST_CASE("product_min finds the zero set of the family Choi matrices") {
  for (double t : {0.0, 0.4, 0.8}) {
    const Matrix9c c = choi_hakye(t);
    ProductMinOptions opt;
    opt.restarts = 32;
    opt.seed = 99;
    const auto v = product_min(c, opt);
    CHECK(v.min_value >= -1e-8);
    CHECK(v.min_value <= 1e-8);
    // The argmin y lands on the singular set of the determinant.
    CHECK(std::abs(f_det(t, v.argmin.y)) < 1e-6);
    CHECK(product_pair_value(c, v.argmin.x, v.argmin.y) ==
          doctest::Approx(v.min_value).epsilon(1e-10));
  }
}

TEST_CASE("product_min of a shifted matrix shifts the minimum") {
  const Matrix9c c = choi_hakye(0.5) - 0.01 * Matrix9c::Identity();
  ProductMinOptions opt;
  opt.restarts = 32;
  const auto v = product_min(c, opt);
  CHECK(v.min_value == doctest::Approx(-0.01).epsilon(1e-6));
}

TEST_CASE("product_min is deterministic for a fixed seed and monotone in the "
          "iteration budget") {
  const Matrix9c c = choi_hakye(0.3);
  ProductMinOptions opt;
  opt.restarts = 8;
  opt.seed = 1234;
  const auto v1 = product_min(c, opt);
  const auto v2 = product_min(c, opt);
  CHECK(v1.min_value == v2.min_value);
  CHECK((v1.argmin.x - v2.argmin.x).norm() == 0.0);
  CHECK((v1.argmin.y - v2.argmin.y).norm() == 0.0);

  opt.restarts = 1;
  double prev = std::numeric_limits<double>::infinity();
  for (int iters = 1; iters <= 5; ++iters) {
    opt.max_iters = iters;
    const auto v = product_min(c, opt);
    CHECK(v.min_value <= prev + 1e-15);
    prev = v.min_value;
  }
}

TEST_CASE("product_min input validation") {
  Matrix9c nonherm = Matrix9c::Zero();
  nonherm(0, 1) = 1.0;
  CHECK_THROWS_AS(product_min(nonherm, {}), std::domain_error);
  ProductMinOptions opt;
  opt.restarts = 0;
  CHECK_THROWS_AS(product_min(Matrix9c::Identity(), opt), std::invalid_argument);
}

TEST_CASE("block positivity and complete positivity of the family") {
  for (double t : {0.0, 0.5, 0.9}) {
    const Matrix9c c = choi_hakye(t);
    ProductMinOptions opt;
    opt.restarts = 32;
    CHECK(is_block_positive(c, kBlockPositiveTol, opt));
    CHECK_FALSE(is_completely_positive(c));
    CHECK(min_eigenvalue(c) < 0.0);
  }
}

TEST_CASE("complete positivity implies block positivity on samples") {
  Rng rng(61);
  for (int i = 0; i < 20; ++i) {
    const Matrix9c g = rng.ginibre9();
    const Matrix9c psd = g * g.adjoint() / 9.0;
    REQUIRE(is_completely_positive(psd));
    ProductMinOptions opt;
    opt.restarts = 8;
    opt.seed = 100 + i;
    CHECK(product_min(psd, opt).min_value >= -1e-9);
  }
}

TEST_CASE("ppt") {
  const auto [spec, rho] = separable_sample(5, 424242);
  CHECK(is_ppt(rho));
  CHECK_FALSE(is_ppt(maximally_entangled_projection() / 3.0));
}

TEST_CASE("witness values") {
  const Matrix9c rho_me = maximally_entangled_projection() / 3.0;

  const auto [spec, rho_sep] = separable_sample(4, 7);
  CHECK(witness_apply(LinearMap::identity(), Matrix3c::Identity(), rho_sep) >= -1e-12);

  CHECK(witness_apply(LinearMap::transpose_map(), Matrix3c::Identity(), rho_me) ==
        doctest::Approx(-1.0 / 3.0).epsilon(1e-12));

  for (double t : {0.1, 0.5, 0.9}) {
    const HaKyeParams p = coefficients(t);
    CHECK(witness_apply(hakye_map(t), Matrix3c::Identity(), rho_me) ==
          doctest::Approx((p.a - 2.0) / 3.0).epsilon(1e-12));
  }
}

TEST_CASE("witnesses never flag separable samples") {
  Rng rng(67);
  for (int i = 0; i < 20; ++i) {
    const auto [spec, rho] = separable_sample(1 + i % 5, 1000 + i);
    for (int j = 0; j < 5; ++j) {
      const double t = rng.uniform(0.0, 0.95);
      const Matrix3c b = rng.ginibre3();
      CHECK(witness_apply(hakye_map(t), b, rho) >= -1e-9);
    }
  }
}

TEST_CASE("pairing") {
  CHECK(pairing(LinearMap::identity(), LinearMap::identity()) ==
        doctest::Approx(9.0).epsilon(1e-14));

  Rng rng(71);
  for (int i = 0; i < 20; ++i) {
    const Matrix3c a = rng.ginibre3();
    const LinearMap psi = LinearMap::from_choi(rng.hermitian9());
    const Vector9c alpha = vectorize(a);
    const double via_pairing = pairing(LinearMap::ad(a), psi);
    const double via_quadratic = (alpha.adjoint() * psi.choi() * alpha)(0).real();
    CHECK(via_pairing == doctest::Approx(via_quadratic).epsilon(1e-10));
  }

  for (double t : {0.2, 0.6}) {
    const HaKyeParams p = coefficients(t);
    const LinearMap psi = LinearMap::from_choi(maximally_entangled_projection());
    CHECK(pairing(psi, hakye_map(t)) ==
          doctest::Approx(3.0 * p.a - 6.0).epsilon(1e-12));
    CHECK(pairing(psi, hakye_map(t)) < 0.0);
  }
}

TEST_CASE("adjoint-moved pairing agrees in sign with the witness route") {
  Rng rng(131);
  for (int i = 0; i < 6; ++i) {
    const double t = rng.uniform(0.0, 0.95);
    const LinearMap phi = hakye_map(t);
    const Matrix3c b = rng.ginibre3();
    const Matrix9c rho = (i % 2 == 0)
                             ? Matrix9c(maximally_entangled_projection() / 3.0)
                             : separable_sample(3, 500 + i).second;
    const LinearMap psi = LinearMap::from_choi(rho);
    const double w = witness_apply(phi, b, rho);

    // Moving the conjugations to the other side of the pairing leaves the
    // value unchanged, and the minimum over rank-1 probes (eigenvector
    // included) reproduces the witness sign.
    const LinearMap adb_dag = LinearMap::ad(Matrix3c(b.adjoint()));
    double min_pairing = std::numeric_limits<double>::infinity();
    for (int s = 0; s < 200; ++s) {
      const Matrix3c a = rng.ginibre3();
      const double moved = pairing(adb_dag.compose(phi.adjoint()).compose(LinearMap::ad(a)), psi);
      const double direct = pairing(LinearMap::ad(a), phi.compose(LinearMap::ad(b)).compose(psi));
      CHECK(moved == doctest::Approx(direct).epsilon(1e-9));
      min_pairing = std::min(min_pairing, moved / vectorize(a).squaredNorm());
    }
    const Matrix9c composed = phi.compose(LinearMap::ad(b)).compose(psi).choi();
    min_pairing = std::min(min_pairing, min_eigenvalue(composed));
    CHECK((w < -1e-9) == (min_pairing < -1e-9));
  }
}

TEST_CASE("separable samples") {
  const auto [spec1, rho1] = separable_sample(1, 31337);
  CHECK(spec1.terms.size() == 1);
  CHECK(rho1.trace().real() == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(numerical_rank(rho1) == 1);
  CHECK(is_ppt(rho1));
  Rng rng(73);
  for (int j = 0; j < 50; ++j) {
    const Matrix3c b = rng.ginibre3();
    CHECK(witness_apply(hakye_map(0.45), b, rho1) >= -1e-9);
  }

  const auto [spec9, rho9] = separable_sample(9, 90001);
  double weight_sum = 0.0;
  for (const auto& term : spec9.terms) {
    CHECK(term.weight > 0.0);
    weight_sum += term.weight;
    CHECK(term.phi1.norm() == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(term.phi2.norm() == doctest::Approx(1.0).epsilon(1e-12));
  }
  CHECK(weight_sum == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(rho9.trace().real() == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(min_eigenvalue(rho9) >= -1e-12);
  CHECK(is_ppt(rho9));
  CHECK((assemble_separable(spec9) - rho9).cwiseAbs().maxCoeff() < 1e-15);

  CHECK_THROWS_AS(separable_sample(0, 1), std::invalid_argument);
}

TEST_CASE("superpositive samples") {
  const LinearMap single = superpositive_sample(1, 5150);
  CHECK(numerical_rank(single.choi()) == 1);
  CHECK(is_completely_positive(single.choi()));

  // Rank-1 conjugation gives a product projector: the Choi matrix equals
  // the Kronecker product of its partial traces (up to normalization).
  {
    const Matrix9c c = single.choi();
    Matrix3c coarse = Matrix3c::Zero();   // trace out the fine factor
    Matrix3c fine = Matrix3c::Zero();     // trace out the coarse factor
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) {
        coarse(i, j) = block(c, i, j).trace();
        for (int k = 0; k < 3; ++k) fine(i, j) += c(composite_index(k, i), composite_index(k, j));
      }
    const double tr = c.trace().real();
    CHECK((kron(coarse, fine) / tr - c).cwiseAbs().maxCoeff() < 1e-12);
  }

  const LinearMap many = superpositive_sample(5, 5151);
  CHECK(is_completely_positive(many.choi()));
  ProductMinOptions opt;
  opt.restarts = 8;
  CHECK(product_min(many.choi(), opt).min_value >= -1e-10);
  // The Choi matrix is separable by construction: a mix of product
  // projectors, hence PPT as well.
  const Matrix9c normalized = many.choi() / many.choi().trace().real();
  CHECK(is_ppt(normalized));
}

TEST_CASE("compression rank profile") {
  const auto p_id = compression_rank_profile(Matrix9c::Identity(), 50, 2, 1);
  CHECK(p_id.y_side_min_sigma2 == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(p_id.x_side_min_sigma2 == doctest::Approx(1.0).epsilon(1e-10));

  Rng rng(79);
  const Vector3c u = rng.unit_vector3();
  const Vector3c w = rng.unit_vector3();
  const Matrix3c rank1 = u * w.adjoint();
  const auto p_r1 = compression_rank_profile(choi_of_ad(rank1), 100, 4, 1);
  CHECK(p_r1.y_side_min_sigma2 < 1e-10);
  CHECK(p_r1.x_side_min_sigma2 < 1e-10);

  const auto p_hk = compression_rank_profile(choi_hakye(0.5), 400, 8, 1);
  CHECK(p_hk.y_side_min_sigma2 > 0.01);
  CHECK(p_hk.x_side_min_sigma2 > 0.01);
}

}  // TEST_SUITE
