#include "mapcone/verify.hpp"

#include "mapcone/choi.hpp"
#include "mapcone/hakye.hpp"
#include "mapcone/localequiv.hpp"
#include "mapcone/positivity.hpp"
#include "mapcone/rng.hpp"

#include <algorithm>
#include <cmath>

namespace mapcone {

namespace {

std::vector<double> t_grid(double start, double stop, double step) {
  std::vector<double> grid;
  for (int i = 0;; ++i) {
    const double t = start + i * step;
    if (t > stop + 1e-12) break;
    grid.push_back(t);
  }
  return grid;
}

CheckResult make_check(const std::string& id, int criterion, double measured,
                       double tolerance, const std::string& detail = "") {
  CheckResult c;
  c.id = id;
  c.criterion = criterion;
  c.measured = measured;
  c.tolerance = tolerance;
  c.pass = measured <= tolerance;
  c.detail = detail;
  return c;
}

LinearMap random_map(Rng& rng) { return LinearMap::from_choi(rng.ginibre9()); }

LinearMap random_hermitian_map(Rng& rng) {
  return LinearMap::from_choi(rng.hermitian9());
}

FConstants battery_constants(double t, const BatteryOptions& opt) {
  FConstants k = f_constants(t);
  if (opt.mutate_dt) k.D = -k.D;
  return k;
}

// ---------------------------------------------------------------------------
// Criterion 1: Choi calculus identities
// ---------------------------------------------------------------------------

void criterion1(const BatteryOptions& opt, std::vector<CheckResult>& out) {
  Rng rng(opt.seed, 1);

  double worst_roundtrip = 0.0;
  for (int i = 0; i < 100; ++i) {
    const Matrix9c c0 = rng.ginibre9();
    const Matrix9c c1 = choi_of_map([&](const Matrix3c& x) { return apply_choi(c0, x); });
    worst_roundtrip = std::max(worst_roundtrip, (c1 - c0).cwiseAbs().maxCoeff());
    const Matrix3c x = rng.ginibre3();
    const Matrix3c via = apply_choi(c1, x);
    const Matrix3c direct = apply_choi(c0, x);
    worst_roundtrip = std::max(worst_roundtrip, (via - direct).cwiseAbs().maxCoeff());
  }
  out.push_back(make_check("core.roundtrip", 1, worst_roundtrip, 1e-10,
                           "map<->Choi round trip on 100 random maps"));

  double worst_isometry = 0.0;
  for (int i = 0; i < 100; ++i) {
    const LinearMap phi = random_hermitian_map(rng);
    const LinearMap psi = random_hermitian_map(rng);
    const Complex via_maps = map_inner(phi, psi);
    const Complex via_choi = hs_inner(phi.choi(), psi.choi());
    worst_isometry = std::max(worst_isometry, std::abs(via_maps - via_choi));
  }
  out.push_back(make_check("core.isometry", 1, worst_isometry, 1e-10,
                           "matrix-unit pairing equals the Choi Hilbert-Schmidt pairing"));

  double worst_adj = 0.0;
  for (int i = 0; i < 100; ++i) {
    const LinearMap phi = random_map(rng);
    const LinearMap sigma = random_map(rng);
    const LinearMap psi = random_map(rng);
    const Complex lhs = map_inner(phi.compose(sigma), psi);
    const Complex rhs = map_inner(sigma, phi.adjoint().compose(psi));
    worst_adj = std::max(worst_adj, std::abs(lhs - rhs));
    const Matrix9c twice = phi.adjoint().adjoint().choi();
    worst_adj = std::max(worst_adj, (twice - phi.choi()).cwiseAbs().maxCoeff());
  }
  out.push_back(make_check("core.adjoint_composition", 1, worst_adj, 1e-10,
                           "<Phi o Sigma, Psi> = <Sigma, Phi* o Psi> and Phi** = Phi"));

  double worst_sandwich = 0.0;
  for (int i = 0; i < 100; ++i) {
    const LinearMap theta = random_map(rng);
    const LinearMap phi = random_map(rng);
    const LinearMap sigma = random_map(rng);
    const LinearMap psi = random_map(rng);
    const Complex lhs = map_inner(theta.compose(phi).compose(sigma), psi);
    const Complex rhs =
        map_inner(phi, theta.adjoint().compose(psi).compose(sigma.adjoint()));
    worst_sandwich = std::max(worst_sandwich, std::abs(lhs - rhs));
  }
  out.push_back(make_check("core.adjoint_sandwich", 1, worst_sandwich, 1e-10,
                           "<Theta o Phi o Sigma, Psi> = <Phi, Theta* o Psi o Sigma*>"));

  double worst_transport = 0.0;
  for (int i = 0; i < 100; ++i) {
    const Matrix3c a = rng.ginibre3();
    const Matrix3c b = rng.ginibre3();
    const LinearMap phi = random_map(rng);
    const Matrix9c via_transport = local_conjugate_choi(phi.choi(), a, b);
    const Matrix9c via_composition =
        LinearMap::ad(a).compose(phi).compose(LinearMap::ad(b)).choi();
    worst_transport =
        std::max(worst_transport, (via_transport - via_composition).cwiseAbs().maxCoeff());
  }
  out.push_back(make_check("core.conjugation_transport", 1, worst_transport, 1e-10,
                           "two-sided conjugation moves to Ad_{B^t (x) A} on Choi matrices"));

  double worst_pt = 0.0;
  for (int i = 0; i < 50; ++i) {
    const Matrix9c h = rng.hermitian9();
    const Matrix9c pt = partial_transpose(h);
    worst_pt = std::max(worst_pt, (partial_transpose(pt) - h).cwiseAbs().maxCoeff());
    worst_pt = std::max(worst_pt, std::abs((pt.trace() - h.trace()).real()));
    worst_pt = std::max(worst_pt, (pt - pt.adjoint()).cwiseAbs().maxCoeff());
  }
  out.push_back(make_check("core.partial_transpose_involution", 1, worst_pt, 1e-12,
                           "partial transpose is a trace and Hermiticity preserving involution"));

  // Positivity bridge: min eigenvalue sign agrees with sampled rank-1 pairings.
  int bridge_errors = 0;
  for (int i = 0; i < 20; ++i) {
    Matrix9c h = rng.hermitian9();
    if (i % 2 == 0) h = h * h.adjoint();  // PSD instance
    const bool psd = min_eigenvalue(h) >= -1e-10;
    bool sampled_nonneg = true;
    for (int s = 0; s < 10000 && sampled_nonneg; ++s) {
      Vector9c alpha;
      for (int k = 0; k < 9; ++k) alpha(k) = rng.cgaussian();
      alpha.normalize();
      const double q = (alpha.adjoint() * h * alpha)(0).real();
      if (q < -1e-10) sampled_nonneg = false;
    }
    if (psd != sampled_nonneg) ++bridge_errors;
  }
  out.push_back(make_check("core.positivity_bridge", 1, bridge_errors, 0,
                           "min eigenvalue sign matches 1e4 sampled rank-1 pairings"));
}

// ---------------------------------------------------------------------------
// Criterion 2: coefficient identities on t in {0, 0.05, ..., 0.95}
// ---------------------------------------------------------------------------

void criterion2(const BatteryOptions& opt, std::vector<CheckResult>& out) {
  (void)opt;
  double worst_sum = 0.0, worst_closed = 0.0, worst_balance = 0.0, worst_value = 0.0;
  for (double t : t_grid(0.0, 0.95, 0.05)) {
    const HaKyeParams p = coefficients(t);
    worst_sum = std::max(worst_sum, std::abs(p.a + p.b + p.c - 2.0));
    const FConstants k = f_constants(t);
    const double sum3 = 3.0 * k.A + k.B + k.C;
    const double d = 1.0 - t + t * t;
    worst_closed = std::max(worst_closed, std::abs(sum3 - std::pow(1.0 - t, 3) / (d * d)));
    worst_value = std::max(worst_value, std::abs(sum3 - (1.0 - t) * (1.0 - t) / d));
    worst_balance = std::max(worst_balance, std::abs(sum3 + (2.0 * k.B + 2.0 * k.C + k.D)));
  }
  out.push_back(make_check("hakye.coefficient_sum", 2, worst_sum, 1e-12,
                           "a + b + c = 2 across the t grid"));
  out.push_back(make_check(
      "hakye.cubic_sum_closed_form", 2, worst_closed, 1e-12,
      "asserted closed form (1-t)^3/(1-t+t^2)^2 for 3A+B+C; the measured sum equals "
      "(1-t)^2/(1-t+t^2) instead (see hakye.cubic_sum_value), so this form is off by a "
      "factor (1-t)/(1-t+t^2)"));
  out.push_back(make_check("hakye.cubic_sum_value", 2, worst_value, 1e-12,
                           "3A+B+C = (1-t)^2/(1-t+t^2) = a_t, the value the determinant "
                           "expansion yields"));
  out.push_back(make_check("hakye.cubic_sum_balance", 2, worst_balance, 1e-12,
                           "3A+B+C = -(2B+2C+D)"));
}

// ---------------------------------------------------------------------------
// Criterion 3: determinant calculus
// ---------------------------------------------------------------------------

void criterion3(const BatteryOptions& opt, std::vector<CheckResult>& out) {
  Rng rng(opt.seed, 3);

  double worst_det = 0.0;
  for (int i = 0; i < 1000; ++i) {
    const double t = rng.uniform(0.0, 0.999);
    const Vector3c y = rng.unit_vector3();
    const double via_det = f_det(t, y);
    const FConstants k = battery_constants(t, opt);
    const double via_poly =
        f_poly(k, std::norm(y(0)), std::norm(y(1)), std::norm(y(2)));
    worst_det = std::max(worst_det, std::abs(via_det - via_poly));
  }
  out.push_back(make_check("hakye.det_vs_poly", 3, worst_det, 1e-10,
                           "compression determinant equals the cubic on 1000 random (t, y)"));

  double worst_grad = 0.0;
  const double h = 1e-5;
  for (int i = 0; i < 200; ++i) {
    const double t = rng.uniform(0.0, 0.999);
    const FConstants k = battery_constants(t, opt);
    double l[3];
    for (double& v : l) v = rng.uniform(0.05, 1.0);
    const auto grad = f_gradient(k, l[0], l[1], l[2]);
    for (int d = 0; d < 3; ++d) {
      double lp[3] = {l[0], l[1], l[2]};
      double lm[3] = {l[0], l[1], l[2]};
      lp[d] += h;
      lm[d] -= h;
      const double fd = (f_poly(k, lp[0], lp[1], lp[2]) - f_poly(k, lm[0], lm[1], lm[2])) /
                        (2.0 * h);
      const double rel = std::abs(fd - grad[d]) / std::max(1.0, std::abs(grad[d]));
      worst_grad = std::max(worst_grad, rel);
    }
  }
  out.push_back(make_check("hakye.gradient_fd", 3, worst_grad, 1e-6,
                           "gradient formulas match central finite differences"));

  // Summing the gradient components reproduces the quadratic form identity.
  double worst_sumgrad = 0.0;
  for (int i = 0; i < 100; ++i) {
    const double t = rng.uniform(0.0, 0.999);
    const FConstants k = battery_constants(t, opt);
    double l[3];
    for (double& v : l) v = rng.uniform(0.0, 1.0);
    const auto g = f_gradient(k, l[0], l[1], l[2]);
    const double sum3 = 3.0 * k.A + k.B + k.C;
    const double quad = sum3 * (l[0] * l[0] + l[1] * l[1] + l[2] * l[2]) +
                        (2.0 * k.B + 2.0 * k.C + k.D) *
                            (l[0] * l[1] + l[1] * l[2] + l[2] * l[0]);
    worst_sumgrad = std::max(worst_sumgrad, std::abs(g[0] + g[1] + g[2] - quad));
  }
  out.push_back(make_check("hakye.gradient_sum_quadratic", 3, worst_sumgrad, 1e-10,
                           "summed gradient components give the quadratic-form identity"));
}

// ---------------------------------------------------------------------------
// Criterion 4: singular structure
// ---------------------------------------------------------------------------

void criterion4(const BatteryOptions& opt, std::vector<CheckResult>& out) {
  Rng rng(opt.seed, 4);
  const auto grid = t_grid(0.0, 0.9, 0.1);

  double worst_f = 0.0, worst_res = 0.0;
  int rank_mismatches = 0;
  for (double t : grid) {
    const Matrix9c c = choi_hakye(t);
    for (const auto& fam : singular_y_families(t)) {
      for (int draw = 0; draw < 100; ++draw) {
        std::array<double, 3> phases;
        for (auto& p : phases) p = rng.uniform(0.0, 2.0 * M_PI);
        const Vector3c y = fam.y(phases);
        const Matrix3c m = compress_right(c, y);
        worst_f = std::max(worst_f, std::abs(m.determinant().real()));
        if (numerical_rank(m) != 2) ++rank_mismatches;
        const Vector3c x = kernel_x(t, fam, phases);
        worst_res = std::max(worst_res, (m * x).norm());
      }
    }
  }
  out.push_back(make_check("hakye.families_vanish", 4, worst_f, 1e-10,
                           "determinant vanishes on all four families, 100 phase draws "
                           "per family per grid point"));
  out.push_back(make_check("hakye.families_rank", 4, rank_mismatches, 0,
                           "family compressions have numerical rank exactly 2"));
  out.push_back(make_check("hakye.kernel_residual", 4, worst_res, 1e-9,
                           "kernel vectors annihilate the compression"));

  // Zero-set isolation on a simplex grid of squared moduli (13041 points).
  double worst_distance = 0.0;
  const int n = 160;
  for (double t : grid) {
    const FConstants k = f_constants(t);
    const auto families = singular_y_families(t);
    for (int i = 0; i <= n; ++i) {
      for (int j = 0; j <= n - i; ++j) {
        const double l1 = static_cast<double>(i) / n;
        const double l2 = static_cast<double>(j) / n;
        const double l3 = std::max(1.0 - l1 - l2, 0.0);
        if (std::abs(f_poly(k, l1, l2, l3)) >= 1e-8) continue;
        const double m1 = std::sqrt(l1), m2 = std::sqrt(l2), m3 = std::sqrt(std::max(l3, 0.0));
        double dmin = std::numeric_limits<double>::infinity();
        for (const auto& fam : families) {
          const double d = std::hypot(m1 - fam.moduli[0],
                                      std::hypot(m2 - fam.moduli[1], m3 - fam.moduli[2]));
          dmin = std::min(dmin, d);
        }
        worst_distance = std::max(worst_distance, dmin);
      }
    }
  }
  out.push_back(make_check("hakye.zero_isolation", 4, worst_distance, 1e-3,
                           "near-zeros of the cubic on a 13041-point moduli grid stay "
                           "within 1e-3 of the four families"));

  // Rank floor away from the singular set: compressions never drop below
  // rank 2 anywhere on the sphere.
  int floor_violations = 0;
  for (double t : {0.0, 0.3, 0.6, 0.9}) {
    const Matrix9c c = choi_hakye(t);
    for (int i = 0; i < 200; ++i) {
      const Vector3c y = rng.unit_vector3();
      if (numerical_rank(compress_right(c, y)) < 2) ++floor_violations;
      const Vector3c x = rng.unit_vector3();
      if (numerical_rank(compress_left(c, x)) < 2) ++floor_violations;
    }
  }
  out.push_back(make_check("hakye.rank_floor", 4, floor_violations, 0,
                           "200 random compressions per side never drop below rank 2"));

  int symmetry_failures = 0;
  for (double t : grid) {
    if (!permutation_symmetry_check(t)) ++symmetry_failures;
  }
  out.push_back(make_check("hakye.permutation_symmetry", 4, symmetry_failures, 0,
                           "simultaneous 3-cycle relabeling fixes the Choi matrix"));
}

// ---------------------------------------------------------------------------
// Criterion 5: witness sanity
// ---------------------------------------------------------------------------

void criterion5(const BatteryOptions& opt, std::vector<CheckResult>& out) {
  Rng rng(opt.seed, 5);
  const auto grid = t_grid(0.0, 0.9, 0.1);

  double worst_bp = 0.0;
  for (double t : grid) {
    ProductMinOptions pm;
    pm.seed = opt.seed + 51;
    const auto verdict = product_min(choi_hakye(t), pm);
    worst_bp = std::max(worst_bp, -verdict.min_value);
  }
  out.push_back(make_check("positivity.hakye_block_positive", 5, worst_bp, 1e-8,
                           "product minimization finds no violation on the t grid"));

  double worst_dir = 0.0;
  double max_mineig = -std::numeric_limits<double>::infinity();
  const Vector9c v = maximally_entangled_vector() / std::sqrt(3.0);
  for (double t : grid) {
    const Matrix9c c = choi_hakye(t);
    const HaKyeParams p = coefficients(t);
    const double q = (v.adjoint() * c * v)(0).real();
    worst_dir = std::max(worst_dir, std::abs(q - (p.a - 2.0)));
    max_mineig = std::max(max_mineig, min_eigenvalue(c));
  }
  out.push_back(make_check("positivity.hakye_not_psd", 5,
                           max_mineig < 0.0 ? worst_dir : 1.0, 1e-12,
                           "the entangled direction certifies a negative eigenvalue a_t - 2"));

  double worst_sep = 0.0;
  for (int i = 0; i < 100; ++i) {
    const auto [spec, rho] = separable_sample(1 + i % 9, opt.seed + 100 + i);
    for (int j = 0; j < 20; ++j) {
      const double t = rng.uniform(0.0, 0.95);
      const Matrix3c b = rng.ginibre3();
      worst_sep = std::max(worst_sep, -witness_apply(hakye_map(t), b, rho));
    }
  }
  out.push_back(make_check("positivity.witness_separable", 5, worst_sep, 1e-9,
                           "witnesses never flag separable samples, 100 states x 20 (t, B)"));

  double worst_maxent = 0.0;
  const Matrix9c rho_me = maximally_entangled_projection() / 3.0;
  for (double t : grid) {
    const double w = witness_apply(hakye_map(t), Matrix3c::Identity(), rho_me);
    const HaKyeParams p = coefficients(t);
    worst_maxent = std::max(worst_maxent, std::abs(w - (p.a - 2.0) / 3.0));
  }
  out.push_back(make_check("positivity.witness_maxent", 5, worst_maxent, 1e-10,
                           "witness value on the maximally entangled state is (a_t - 2)/3"));

  double worst_cp_bp = 0.0;
  for (int i = 0; i < 50; ++i) {
    const Matrix9c g = rng.ginibre9();
    const Matrix9c psd = g * g.adjoint() / 9.0;
    ProductMinOptions pm;
    pm.restarts = 16;
    pm.seed = opt.seed + 500 + i;
    worst_cp_bp = std::max(worst_cp_bp, -product_min(psd, pm).min_value);
  }
  out.push_back(make_check("positivity.cp_implies_block_positive", 5, worst_cp_bp, 1e-9,
                           "PSD matrices never show a product violation"));

  // Sign chain: the witness eigenvalue route and the rank-1 pairing route
  // look at the same composed map; their signs must agree. The minimal
  // eigenvector is itself the vectorization of some A, so it joins the
  // sample set and makes the comparison two-sided.
  int chain_errors = 0;
  double worst_route_gap = 0.0;
  for (int i = 0; i < 10; ++i) {
    const double t = rng.uniform(0.0, 0.95);
    const LinearMap phi = hakye_map(t);
    const Matrix3c b = rng.ginibre3();
    const Matrix9c rho = (i % 2 == 0)
                             ? Matrix9c(maximally_entangled_projection() / 3.0)
                             : separable_sample(4, opt.seed + 900 + i).second;
    const double w = witness_apply(phi, b, rho);
    const LinearMap psi = LinearMap::from_choi(rho);
    const LinearMap composed = phi.compose(LinearMap::ad(b)).compose(psi);
    const Matrix9c m = composed.choi();

    const Matrix9c k = kron(Matrix3c::Identity(), b);
    const Matrix9c direct = compose_choi(phi, Matrix9c(k * rho * k.adjoint()));
    worst_route_gap = std::max(worst_route_gap, (m - direct).cwiseAbs().maxCoeff());

    for (int s = 0; s < 5; ++s) {
      const Matrix3c a = rng.ginibre3();
      const Vector9c alpha = vectorize(a);
      const double via_pairing = map_inner(LinearMap::ad(a), composed).real();
      const double via_quadratic = (alpha.adjoint() * m * alpha)(0).real();
      worst_route_gap =
          std::max(worst_route_gap, std::abs(via_pairing - via_quadratic));
    }

    double min_pairing = min_eigenvalue(m);
    for (int s = 0; s < 10000; ++s) {
      Vector9c alpha;
      for (int kidx = 0; kidx < 9; ++kidx) alpha(kidx) = rng.cgaussian();
      alpha.normalize();
      min_pairing = std::min(min_pairing, (alpha.adjoint() * m * alpha)(0).real());
    }
    if ((w < -1e-9) != (min_pairing < -1e-9)) ++chain_errors;
  }
  out.push_back(make_check("positivity.sign_chain_routes", 5, worst_route_gap, 1e-10,
                           "composed-map Choi agrees with the conjugate-then-apply route "
                           "and rank-1 pairings equal quadratic forms"));
  out.push_back(make_check("positivity.sign_chain", 5, chain_errors, 0,
                           "rank-1 pairing minimum agrees in sign with the witness value"));
}

// ---------------------------------------------------------------------------
// Criterion 6: PPT baseline
// ---------------------------------------------------------------------------

void criterion6(const BatteryOptions& opt, std::vector<CheckResult>& out) {
  double worst_pt = 0.0;
  for (int i = 0; i < 100; ++i) {
    const auto [spec, rho] = separable_sample(1 + i % 9, opt.seed + 6000 + i);
    worst_pt = std::max(worst_pt, -min_eigenvalue(partial_transpose(rho)));
  }
  out.push_back(make_check("positivity.separable_ppt", 6, worst_pt, 1e-9,
                           "every separable sample has a PSD partial transpose"));

  const Matrix9c rho_me = maximally_entangled_projection() / 3.0;
  const double eig = min_eigenvalue(partial_transpose(rho_me));
  out.push_back(make_check("positivity.maxent_ppt", 6, std::abs(eig + 1.0 / 3.0), 1e-10,
                           "partial transpose of the maximally entangled state has "
                           "eigenvalue -1/3"));
}

// ---------------------------------------------------------------------------
// Criterion 7: local inequivalence
// ---------------------------------------------------------------------------

void criterion7(const BatteryOptions& opt, std::vector<CheckResult>& out) {
  const std::vector<double> ts = {0.0, 0.2, 0.4, 0.6, 0.8};

  int certificate_failures = 0;
  double worst_equal_residual = 0.0;
  for (double t1 : ts) {
    for (double t2 : ts) {
      const auto verdict = decide_local_equivalence(t1, t2);
      if (t1 == t2) {
        if (!verdict.equivalent) ++certificate_failures;
        const Matrix9c c1 = choi_hakye(t1);
        const auto& [rw, sw] = *verdict.witness;
        const Matrix9c k = kron(rw, sw);
        const double res = (c1 - k * choi_hakye(t2) * k.adjoint()).norm();
        worst_equal_residual = std::max(worst_equal_residual, res);
        continue;
      }
      if (verdict.equivalent) ++certificate_failures;
      int firing = 0;
      for (const auto& rec : verdict.certificate) {
        if (rec.step == "transposition-obstruction" || rec.step == "cycle-obstruction") {
          if (rec.contradiction) ++firing;
        }
      }
      if (firing != 6) ++certificate_failures;
    }
  }
  out.push_back(make_check("localequiv.grid_certificates", 7, certificate_failures, 0,
                           "all ordered pairs from {0,0.2,0.4,0.6,0.8} decide correctly "
                           "with every permutation branch firing"));
  out.push_back(make_check("localequiv.equal_pair_residual", 7, worst_equal_residual, 1e-8,
                           "witnessed identity transport reproduces the Choi matrix"));

  double worst_planted = 0.0;
  for (int i = 0; i < 3; ++i) {
    Rng rng(opt.seed, 700 + i);
    const Matrix3c r0 = rng.ginibre3();
    const Matrix3c s0 = rng.ginibre3();
    const Matrix9c c2 = choi_hakye(0.2 * (i + 1));
    const Matrix9c k = kron(r0, s0);
    const Matrix9c c1 = k * c2 * k.adjoint();
    SearchOptions so;
    so.seed = opt.seed + 70 + i;
    const auto res = numeric_search_equiv(c1, c2, so);
    worst_planted = std::max(worst_planted, res.residual);
  }
  out.push_back(make_check("localequiv.planted_numeric", 7, worst_planted, 1e-6,
                           "numeric search recovers planted transports"));

  double min_inequiv = std::numeric_limits<double>::infinity();
  for (size_t i = 0; i < ts.size(); ++i) {
    for (size_t j = i + 1; j < ts.size(); ++j) {
      SearchOptions so;
      so.seed = opt.seed + 71;
      const auto res = numeric_search_equiv(choi_hakye(ts[i]), choi_hakye(ts[j]), so);
      min_inequiv = std::min(min_inequiv, res.residual);
    }
  }
  out.push_back(make_check("localequiv.inequivalent_numeric", 7,
                           min_inequiv > 1e-3 ? 0.0 : 1.0, 0,
                           "64-restart search keeps residual > 1e-3 for distinct "
                           "parameters (heuristic corroboration, not a proof); smallest "
                           "residual " +
                               std::to_string(min_inequiv)));

  int transport_failures = 0;
  for (double t : {0.0, 0.25, 0.5, 0.75}) {
    Rng rng(opt.seed, 770);
    for (auto p : {Permutation3::kCycle123, Permutation3::kCycle132}) {
      Vector3c zeta;
      for (int i = 0; i < 3; ++i) zeta(i) = std::exp(Complex(0.0, rng.uniform(0.0, 2 * M_PI)));
      const Matrix3c s = zeta.asDiagonal() * permutation_matrix(p);
      if (!singular_set_transport_check(t, t, s, 32, opt.seed + 77)) {
        ++transport_failures;
      }
    }
  }
  out.push_back(make_check("localequiv.cycle_transport", 7, transport_failures, 0,
                           "unimodular diagonal times 3-cycle transports the singular "
                           "families at equal parameters"));
}

// ---------------------------------------------------------------------------
// Criterion 8: moduli classifier vs oracle
// ---------------------------------------------------------------------------

void criterion8(const BatteryOptions& opt, std::vector<CheckResult>& out) {
  Rng rng(opt.seed, 8);
  int matrix_errors = 0;
  int pair_disagreements = 0;

  const auto check_pairs = [&](const Matrix3c& m, std::uint64_t salt) {
    for (int i = 0; i < 3; ++i)
      for (int j = i + 1; j < 3; ++j) {
        const Eigen::VectorXcd a = m.row(i).transpose();
        const Eigen::VectorXcd b = m.row(j).transpose();
        const bool predicted = pair_preserves_moduli(a, b, 1e-9);
        const bool observed = moduli_equal_oracle(a, b, 256, opt.seed + salt + 3 * i + j);
        if (predicted != observed) ++pair_disagreements;
      }
  };

  const Permutation3 perms[6] = {Permutation3::kIdentity, Permutation3::kSwap12,
                                 Permutation3::kSwap13, Permutation3::kSwap23,
                                 Permutation3::kCycle123, Permutation3::kCycle132};

  for (int i = 0; i < 100; ++i) {
    Vector3c zeta;
    for (int k = 0; k < 3; ++k) {
      const double mag = (i % 2 == 0) ? 1.0 : std::exp(rng.gaussian() * 0.5);
      zeta(k) = mag * std::exp(Complex(0.0, rng.uniform(0.0, 2 * M_PI)));
    }
    const Matrix3c m = zeta.asDiagonal() * permutation_matrix(perms[i % 6]);
    if (classify_matrix(m).kind != ModuliKind::kMonomial) ++matrix_errors;
    check_pairs(m, 8100 + i);
  }

  for (int i = 0; i < 100; ++i) {
    Matrix3c m;
    const Vector3c row = Vector3c(rng.cgaussian(), rng.cgaussian(), rng.cgaussian());
    Complex lambda = rng.cgaussian();
    if (i % 2 == 0) lambda /= std::abs(lambda);
    m.row(0) = row.transpose();
    m.row(1) = (lambda * row).transpose();
    m.row(2) = Vector3c(rng.cgaussian(), rng.cgaussian(), rng.cgaussian()).transpose();
    const auto cls = classify_matrix(m);
    if (cls.kind != ModuliKind::kProportionalRows ||
        cls.proportional_rows != std::make_pair(0, 1)) {
      ++matrix_errors;
    }
    check_pairs(m, 8400 + i);
  }

  for (int i = 0; i < 100; ++i) {
    const Matrix3c m = rng.ginibre3();
    if (classify_matrix(m).kind != ModuliKind::kGeneric) ++matrix_errors;
    check_pairs(m, 8700 + i);
  }

  out.push_back(make_check("localequiv.classifier_kinds", 8, matrix_errors, 0,
                           "classifier recovers the generated kind for 300 matrices"));
  out.push_back(make_check("localequiv.classifier_oracle_agreement", 8, pair_disagreements,
                           0, "structural prediction matches the 256-sample phase oracle "
                              "on every row pair"));
}

}  // namespace

std::vector<CheckResult> run_battery(const BatteryOptions& opt, int criterion) {
  std::vector<CheckResult> out;
  if (criterion == 0 || criterion == 1) criterion1(opt, out);
  if (criterion == 0 || criterion == 2) criterion2(opt, out);
  if (criterion == 0 || criterion == 3) criterion3(opt, out);
  if (criterion == 0 || criterion == 4) criterion4(opt, out);
  if (criterion == 0 || criterion == 5) criterion5(opt, out);
  if (criterion == 0 || criterion == 6) criterion6(opt, out);
  if (criterion == 0 || criterion == 7) criterion7(opt, out);
  if (criterion == 0 || criterion == 8) criterion8(opt, out);
  return out;
}

bool all_passed(const std::vector<CheckResult>& checks) {
  return std::all_of(checks.begin(), checks.end(),
                     [](const CheckResult& c) { return c.pass; });
}

}  // namespace mapcone
