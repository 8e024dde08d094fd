#include "mapcone/localequiv.hpp"

#include "mapcone/rng.hpp"

#include <Eigen/SVD>

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace mapcone {

namespace {

int single_nonzero_index(const Eigen::VectorXcd& v, double thresh) {
  int idx = -1;
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    if (std::abs(v(i)) > thresh) {
      if (idx >= 0) return -1;
      idx = static_cast<int>(i);
    }
  }
  return idx;
}

}  // namespace

VectorPairClassification classify_vectors(const Eigen::VectorXcd& y,
                                          const Eigen::VectorXcd& z, double tol) {
  if (y.size() != z.size()) {
    throw std::invalid_argument("classify_vectors: length mismatch");
  }
  const double scale = std::max({y.cwiseAbs().maxCoeff(), z.cwiseAbs().maxCoeff(), 1e-300});
  const double thresh = tol * scale;

  VectorPairClassification out;
  const double ny = y.norm();
  const double nz = z.norm();
  if (ny <= thresh && nz <= thresh) {
    out.cls = PairClass::kProportional;
    out.factor = 1.0;
    return out;
  }
  if (ny <= thresh || nz <= thresh) {
    // One side vanishes: proportional with a degenerate factor.
    out.cls = PairClass::kProportional;
    out.factor = 0.0;
    return out;
  }
  const Complex factor = (y.adjoint() * z)(0) / (y.adjoint() * y)(0).real();
  if ((z - factor * y).norm() <= tol * std::max(ny, nz)) {
    out.cls = PairClass::kProportional;
    out.factor = factor;
    return out;
  }
  if (single_nonzero_index(y, thresh) >= 0 && single_nonzero_index(z, thresh) >= 0) {
    out.cls = PairClass::kSingleNonzeroEach;
    return out;
  }
  out.cls = PairClass::kGeneric;
  return out;
}

bool moduli_equal_oracle(const Eigen::VectorXcd& y, const Eigen::VectorXcd& z,
                         int phase_samples, std::uint64_t seed, double tol) {
  if (y.size() != z.size()) {
    throw std::invalid_argument("moduli_equal_oracle: length mismatch");
  }
  if (phase_samples < 1) {
    throw std::invalid_argument("moduli_equal_oracle: phase_samples must be >= 1");
  }
  Rng rng(seed);
  const Eigen::Index n = y.size();
  Eigen::VectorXd phases = Eigen::VectorXd::Zero(n);  // probe zero phases first
  for (int s = 0; s < phase_samples; ++s) {
    Complex sy = 0.0, sz = 0.0;
    for (Eigen::Index l = 0; l < n; ++l) {
      const Complex rot = std::exp(Complex(0.0, phases(l)));
      sy += y(l) * rot;
      sz += z(l) * rot;
    }
    if (std::abs(std::abs(sy) - std::abs(sz)) > tol) return false;
    for (Eigen::Index l = 0; l < n; ++l) phases(l) = rng.uniform(0.0, 2.0 * M_PI);
  }
  return true;
}

bool pair_preserves_moduli(const Eigen::VectorXcd& y, const Eigen::VectorXcd& z,
                           double tol) {
  const auto cls = classify_vectors(y, z, tol);
  const double scale0 =
      std::max({y.cwiseAbs().maxCoeff(), z.cwiseAbs().maxCoeff(), 1e-300});
  switch (cls.cls) {
    case PairClass::kProportional: {
      const double thresh0 = tol * scale0;
      if (y.norm() <= thresh0 && z.norm() <= thresh0) return true;
      if (y.norm() <= thresh0 || z.norm() <= thresh0) return false;
      return std::abs(std::abs(cls.factor) - 1.0) <= tol;
    }
    case PairClass::kSingleNonzeroEach: {
      const int i = single_nonzero_index(y, tol * scale0);
      const int j = single_nonzero_index(z, tol * scale0);
      return std::abs(std::abs(y(i)) - std::abs(z(j))) <= tol * scale0;
    }
    case PairClass::kGeneric: return false;
  }
  return false;
}

const char* moduli_kind_name(ModuliKind k) {
  switch (k) {
    case ModuliKind::kMonomial: return "MONOMIAL";
    case ModuliKind::kProportionalRows: return "PROPORTIONAL_ROWS";
    case ModuliKind::kGeneric: return "GENERIC";
  }
  return "UNKNOWN";
}

ModuliClass classify_matrix(const Matrix3c& x, double tol) {
  ModuliClass out;
  for (int i = 0; i < 3 && !out.proportional_rows; ++i) {
    for (int j = i + 1; j < 3; ++j) {
      const auto cls =
          classify_vectors(x.row(i).transpose(), x.row(j).transpose(), tol);
      if (cls.cls == PairClass::kProportional) {
        out.proportional_rows = std::make_pair(i, j);
        break;
      }
    }
  }
  if (out.proportional_rows) {
    out.kind = ModuliKind::kProportionalRows;
    return out;
  }
  if (auto factors = monomial_decompose(x, tol)) {
    out.kind = ModuliKind::kMonomial;
    out.monomial = *factors;
    return out;
  }
  out.kind = ModuliKind::kGeneric;
  return out;
}

std::optional<MonomialFactors> monomial_decompose(const Matrix3c& s, double tol) {
  const double scale = std::max(s.cwiseAbs().maxCoeff(), 1e-300);
  const double thresh = tol * scale;
  MonomialFactors f;
  bool used[3] = {false, false, false};
  for (int r = 0; r < 3; ++r) {
    const int col = single_nonzero_index(s.row(r).transpose(), thresh);
    if (col < 0 || used[col]) return std::nullopt;
    used[col] = true;
    f.perm[r] = col;
    f.zeta(r) = s(r, col);
  }
  return f;
}

Matrix3c recompose_monomial(const MonomialFactors& f) {
  Matrix3c s = Matrix3c::Zero();
  for (int r = 0; r < 3; ++r) s(r, f.perm[r]) = f.zeta(r);
  return s;
}

const char* permutation_name(Permutation3 p) {
  switch (p) {
    case Permutation3::kIdentity: return "identity";
    case Permutation3::kSwap12: return "swap12";
    case Permutation3::kSwap13: return "swap13";
    case Permutation3::kSwap23: return "swap23";
    case Permutation3::kCycle123: return "cycle123";
    case Permutation3::kCycle132: return "cycle132";
  }
  return "unknown";
}

std::array<int, 3> permutation_index_map(Permutation3 p) {
  switch (p) {
    case Permutation3::kIdentity: return {0, 1, 2};
    case Permutation3::kSwap12: return {1, 0, 2};
    case Permutation3::kSwap13: return {2, 1, 0};
    case Permutation3::kSwap23: return {0, 2, 1};
    case Permutation3::kCycle123: return {2, 0, 1};
    case Permutation3::kCycle132: return {1, 2, 0};
  }
  return {0, 1, 2};
}

Matrix3c permutation_matrix(Permutation3 p) {
  const auto idx = permutation_index_map(p);
  Matrix3c m = Matrix3c::Zero();
  for (int k = 0; k < 3; ++k) m(k, idx[k]) = 1.0;
  return m;
}

namespace {

void require_parameter_domain(double t, const char* what) {
  if (!(t >= 0.0 && t < 1.0)) {
    throw std::domain_error(std::string(what) + ": parameter outside [0, 1)");
  }
}

/// Transport of the single-zero family moduli under diag(zeta) * P: the
/// source family with zero at j lands with its zero at k where
/// index_map[k] == j, so it must match the target family ZERO_{k}.
std::string family_transport_summary(Permutation3 p) {
  const auto idx = permutation_index_map(p);
  std::ostringstream os;
  for (int j = 0; j < 3; ++j) {
    int k = 0;
    while (idx[k] != j) ++k;
    if (j > 0) os << ", ";
    os << "ZERO_" << (j + 1) << "->ZERO_" << (k + 1);
  }
  return os.str();
}

}  // namespace

ObstructionRecord transposition_obstruction(double t1, double t2,
                                            Permutation3 transposition) {
  require_parameter_domain(t1, "transposition_obstruction");
  require_parameter_domain(t2, "transposition_obstruction");
  if (transposition != Permutation3::kSwap12 && transposition != Permutation3::kSwap13 &&
      transposition != Permutation3::kSwap23) {
    throw std::invalid_argument("transposition_obstruction: not a transposition");
  }

  ObstructionRecord rec;
  rec.step = "transposition-obstruction";
  rec.tag = "Eq76";
  rec.permutation = permutation_name(transposition);
  rec.forced = "t1*t2 = 1";
  rec.lhs = t1 * t2;
  rec.rhs = 1.0;

  if (t1 == 0.0 && t2 == 0.0) {
    rec.contradiction = false;
    rec.detail = "degenerate candidate check: at t = 0 the single-zero families are "
                 "basis vectors and the transposition permutes them among themselves";
    return rec;
  }
  if (t1 == 0.0 || t2 == 0.0) {
    rec.contradiction = true;
    rec.detail = "degenerate candidate check (" + family_transport_summary(transposition) +
                 "): a transported family has a different zero pattern than every "
                 "singular family of the target parameter";
    return rec;
  }
  rec.contradiction = std::abs(t1 * t2 - 1.0) > 1e-12;
  rec.detail = "matching moduli along " + family_transport_summary(transposition) +
               " forces t1*t2 = |alpha/gamma|^2 = |beta/alpha|^2 = |gamma/beta|^2; "
               "the product gives (t1*t2)^3 = 1";
  return rec;
}

ObstructionRecord cycle_obstruction(double t1, double t2,
                                    Permutation3 cycle_or_identity) {
  require_parameter_domain(t1, "cycle_obstruction");
  require_parameter_domain(t2, "cycle_obstruction");
  if (cycle_or_identity != Permutation3::kIdentity &&
      cycle_or_identity != Permutation3::kCycle123 &&
      cycle_or_identity != Permutation3::kCycle132) {
    throw std::invalid_argument("cycle_obstruction: expected a 3-cycle or the identity");
  }

  ObstructionRecord rec;
  rec.step = "cycle-obstruction";
  rec.tag = "Eq91";
  rec.permutation = permutation_name(cycle_or_identity);
  rec.forced = "t1 = t2";
  rec.lhs = t1;
  rec.rhs = t2;

  if (t1 == t2) {
    rec.contradiction = false;
    rec.detail = t1 == 0.0
                     ? "consistent; at t = 0 the modulus relations are vacuous"
                     : "consistent; the modulus relations fix |zeta_1| = |zeta_2| = |zeta_3|";
    return rec;
  }
  rec.contradiction = true;
  if (t1 == 0.0 || t2 == 0.0) {
    rec.detail = "relations |zeta_i|^2 t2 = |zeta_j|^2 t1 with a zero parameter force "
                 "a zero diagonal entry, contradicting invertibility";
  } else {
    rec.detail = "matching moduli along " + family_transport_summary(cycle_or_identity) +
                 " gives |zeta_i|^2 t2 = |zeta_j|^2 t1 cyclically; the product "
                 "forces t1^3 = t2^3";
  }
  return rec;
}

bool singular_set_transport_check(double t1, double t2, const Matrix3c& s,
                                  int phase_samples, std::uint64_t seed) {
  require_parameter_domain(t1, "singular_set_transport_check");
  require_parameter_domain(t2, "singular_set_transport_check");
  Eigen::JacobiSVD<Matrix3c> svd(s);
  const auto& sv = svd.singularValues();
  if (sv(2) <= 1e-12 * sv(0)) {
    throw std::domain_error("singular_set_transport_check: S is singular");
  }

  const Matrix3c sdag = s.adjoint();
  const Matrix9c c2 = choi_hakye(t2);
  Rng rng(seed);
  const auto families = singular_y_families(t1);
  for (int draw = 0; draw < phase_samples; ++draw) {
    std::array<double, 3> phases{0.0, 0.0, 0.0};
    if (draw > 0) {
      for (auto& p : phases) p = rng.uniform(0.0, 2.0 * M_PI);
    }
    for (const auto& fam : families) {
      Vector3c z = sdag * fam.y(phases);
      z.normalize();
      const double f = compress_right(c2, z).determinant().real();
      if (std::abs(f) >= 1e-8) return false;
    }
  }

  // Equal-moduli necessity on the rows of S^dag.
  for (int i = 0; i < 3; ++i)
    for (int j = i + 1; j < 3; ++j) {
      if (!moduli_equal_oracle(sdag.row(i).transpose(), sdag.row(j).transpose(),
                               phase_samples, seed + 17 * (3 * i + j))) {
        return false;
      }
    }
  return true;
}

namespace {

double spectral_norm(const Matrix3c& m) {
  Eigen::JacobiSVD<Matrix3c> svd(m);
  return svd.singularValues()(0);
}

Matrix9c normalize_trace6(const Matrix9c& c) {
  const double tr = c.trace().real();
  if (std::abs(tr) < 1e-12) return c;
  return c * (6.0 / tr);
}

struct SearchState {
  Matrix3c r, s;
  double f = 0.0;
  double c = 0.0;
};

double objective(const Matrix9c& c1, const Matrix9c& c2, const Matrix3c& r,
                 const Matrix3c& s, double* cstar_out) {
  const Matrix9c k = kron(r, s);
  const Matrix9c t = k * c2 * k.adjoint();
  const double denom = t.squaredNorm();
  double cstar = 0.0;
  if (denom > 1e-300) {
    cstar = std::max(hs_inner(t, c1).real() / denom, 0.0);
  }
  const Matrix9c e = c1 - cstar * t;
  if (cstar_out) *cstar_out = cstar;
  return e.squaredNorm();
}

void gradients(const Matrix9c& c1, const Matrix9c& c2, const Matrix3c& r,
               const Matrix3c& s, double cstar, Matrix3c* gr, Matrix3c* gs) {
  const Matrix9c k = kron(r, s);
  const Matrix9c e = c1 - cstar * (k * c2 * k.adjoint());
  const Matrix9c g = -4.0 * cstar * (e * k * c2);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      Complex acc = 0.0;
      for (int kk = 0; kk < 3; ++kk)
        for (int ll = 0; ll < 3; ++ll)
          acc += g(composite_index(i, kk), composite_index(j, ll)) * std::conj(s(kk, ll));
      (*gr)(i, j) = acc;
    }
  for (int kk = 0; kk < 3; ++kk)
    for (int ll = 0; ll < 3; ++ll) {
      Complex acc = 0.0;
      for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
          acc += g(composite_index(i, kk), composite_index(j, ll)) * std::conj(r(i, j));
      (*gs)(kk, ll) = acc;
    }
}

}  // namespace

namespace {

struct DescentResult {
  Matrix3c r, s;
  double f = std::numeric_limits<double>::infinity();
};

/// Non-monotone Barzilai-Borwein descent from (r0, s0). Tracks the best
/// visited point and stops once the best value stagnates.
DescentResult descend(const Matrix9c& c1, const Matrix9c& c2, Matrix3c r, Matrix3c s,
                      int iters) {
  double cstar = 0.0;
  double f = objective(c1, c2, r, s, &cstar);
  Matrix3c gr, gs;
  gradients(c1, c2, r, s, cstar, &gr, &gs);

  DescentResult best{r, s, f};
  constexpr int kMemory = 10;
  double recent[kMemory];
  for (double& v : recent) v = f;
  int ring = 0;

  double step = 1e-2;
  bool have_prev = false;
  int stagnant = 0;
  Matrix3c pr, ps, pgr, pgs;

  for (int it = 0; it < iters; ++it) {
    if (have_prev) {
      // Barzilai-Borwein step length from the last move.
      const double num = (r - pr).squaredNorm() + (s - ps).squaredNorm();
      const double den = ((r - pr).array().conjugate() * (gr - pgr).array()).sum().real() +
                         ((s - ps).array().conjugate() * (gs - pgs).array()).sum().real();
      if (den > 1e-300) step = num / den;
      step = std::clamp(step, 1e-14, 1e2);
    }

    double fmax = recent[0];
    for (double v : recent) fmax = std::max(fmax, v);
    const double gnorm2 = gr.squaredNorm() + gs.squaredNorm();

    bool accepted = false;
    Matrix3c rn, sn;
    double fn = 0.0, cn = 0.0;
    for (int bt = 0; bt < 40; ++bt) {
      rn = r - step * gr;
      sn = s - step * gs;
      const double nr = spectral_norm(rn);
      const double ns = spectral_norm(sn);
      if (nr < 1e-12 || ns < 1e-12) {
        step *= 0.5;
        continue;
      }
      rn /= nr;
      sn /= ns;
      fn = objective(c1, c2, rn, sn, &cn);
      if (fn <= fmax - 1e-4 * step * gnorm2) {
        accepted = true;
        break;
      }
      step *= 0.5;
    }
    if (!accepted) break;

    pr = r; ps = s; pgr = gr; pgs = gs;
    have_prev = true;
    r = rn; s = sn; f = fn; cstar = cn;
    recent[ring] = f;
    ring = (ring + 1) % kMemory;
    gradients(c1, c2, r, s, cstar, &gr, &gs);

    if (f < best.f * (1.0 - 1e-4)) {
      stagnant = 0;
    } else if (++stagnant > 80) {
      if (f < best.f) best = DescentResult{r, s, f};
      break;
    }
    if (f < best.f) best = DescentResult{r, s, f};
    if (best.f < 1e-16) break;
  }
  return best;
}

Eigen::VectorXd flatten_real(const Matrix9c& e) {
  Eigen::VectorXd v(162);
  int idx = 0;
  for (int i = 0; i < 9; ++i)
    for (int j = 0; j < 9; ++j) {
      v(idx++) = e(i, j).real();
      v(idx++) = e(i, j).imag();
    }
  return v;
}

/// Levenberg-Marquardt refinement of || C1 - c K C2 K^dag || over the 36
/// real parameters of (R, S), with the scale c re-solved at every trial
/// point and frozen inside the Jacobian.
DescentResult lm_polish(const Matrix9c& c1, const Matrix9c& c2, Matrix3c r, Matrix3c s,
                        int iters) {
  double cstar = 0.0;
  double f = objective(c1, c2, r, s, &cstar);
  DescentResult best{r, s, f};
  double lambda = 1e-3;

  for (int it = 0; it < iters; ++it) {
    const Matrix9c k = kron(r, s);
    const Matrix9c t = k * c2 * k.adjoint();
    const double denom = t.squaredNorm();
    const double c = denom > 1e-300 ? std::max(hs_inner(t, c1).real() / denom, 0.0) : 0.0;
    const Matrix9c e = c1 - c * t;

    Eigen::Matrix<double, 162, 36> jac;
    int col = 0;
    for (int which = 0; which < 2; ++which) {
      for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
          for (int part = 0; part < 2; ++part) {
            Matrix3c d = Matrix3c::Zero();
            d(i, j) = part == 0 ? Complex(1.0, 0.0) : Complex(0.0, 1.0);
            const Matrix9c dk = which == 0 ? kron(d, s) : kron(r, d);
            const Matrix9c dt = dk * c2 * k.adjoint() + k * c2 * dk.adjoint();
            jac.col(col++) = flatten_real(Matrix9c(-c * dt));
          }
    }
    const Eigen::VectorXd rvec = flatten_real(e);
    const Eigen::Matrix<double, 36, 36> jtj = jac.transpose() * jac;
    const Eigen::VectorXd jtr = jac.transpose() * rvec;

    bool accepted = false;
    for (int attempt = 0; attempt < 20; ++attempt) {
      Eigen::Matrix<double, 36, 36> a = jtj;
      for (int dd = 0; dd < 36; ++dd) a(dd, dd) += lambda * std::max(jtj(dd, dd), 1e-12);
      const Eigen::VectorXd delta = a.ldlt().solve(Eigen::VectorXd(-jtr));
      Matrix3c rn = r, sn = s;
      int p = 0;
      for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j, p += 2) rn(i, j) += Complex(delta(p), delta(p + 1));
      for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j, p += 2) sn(i, j) += Complex(delta(p), delta(p + 1));
      const double nr = spectral_norm(rn);
      const double ns = spectral_norm(sn);
      if (nr < 1e-12 || ns < 1e-12) {
        lambda *= 4.0;
        continue;
      }
      rn /= nr;
      sn /= ns;
      double cn = 0.0;
      const double fn = objective(c1, c2, rn, sn, &cn);
      if (fn < f) {
        r = rn;
        s = sn;
        f = fn;
        lambda = std::max(lambda / 3.0, 1e-12);
        accepted = true;
        break;
      }
      lambda *= 4.0;
    }
    if (f < best.f) best = DescentResult{r, s, f};
    if (!accepted || lambda > 1e10 || f < 1e-26) break;
  }
  return best;
}

}  // namespace

NumericSearchResult numeric_search_equiv(const Matrix9c& c1_in, const Matrix9c& c2_in,
                                         const SearchOptions& opt) {
  if (opt.restarts < 1 || opt.iters < 1) {
    throw std::invalid_argument("numeric_search_equiv: restarts and iters must be >= 1");
  }
  const Matrix9c c1 = normalize_trace6(c1_in);
  const Matrix9c c2 = normalize_trace6(c2_in);

  DescentResult best;
  for (int restart = 0; restart < opt.restarts; ++restart) {
    Rng rng(opt.seed, static_cast<std::uint64_t>(restart));
    Matrix3c r = rng.ginibre3();
    Matrix3c s = rng.ginibre3();
    r /= spectral_norm(r);
    s /= spectral_norm(s);
    const DescentResult run = descend(c1, c2, r, s, opt.iters);
    if (run.f < best.f) best = run;
    if (best.f < 1e-16) break;
  }

  // Second-order polish of the winning start; the first-order multi-start
  // locates the basin, Levenberg-Marquardt finishes it.
  if (best.f >= 1e-24 && std::isfinite(best.f)) {
    const DescentResult polished = lm_polish(c1, c2, best.r, best.s, 120);
    if (polished.f < best.f) best = polished;
  }

  NumericSearchResult out;
  out.r = best.r;
  out.s = best.s;
  out.residual = std::sqrt(best.f);
  return out;
}

EquivalenceVerdict decide_local_equivalence(double t1, double t2,
                                            const DecideOptions& opt) {
  require_parameter_domain(t1, "decide_local_equivalence");
  require_parameter_domain(t2, "decide_local_equivalence");

  EquivalenceVerdict verdict;
  if (t1 == t2) {
    verdict.equivalent = true;
    verdict.witness = std::make_pair(Matrix3c::Identity().eval(),
                                     Matrix3c::Identity().eval());
    verdict.numeric_residual = 0.0;
    return verdict;
  }

  ObstructionRecord necessity;
  necessity.step = "equal-moduli-necessity";
  necessity.tag = "Eq62";
  necessity.forced = "rows of S^dag preserve moduli for every phase tuple";
  necessity.detail = "each phase choice on the equal-moduli family must transport to a "
                     "singular vector of the target determinant, which pins the moduli "
                     "of the coordinates of S^dag y for all phases";
  verdict.certificate.push_back(necessity);

  ObstructionRecord structure;
  structure.step = "monomial-structure";
  structure.tag = "AppendixC";
  structure.forced = "S^dag = diag(zeta) * P with P a permutation";
  structure.detail = "a matrix preserving coordinate moduli for all phase tuples has a "
                     "single nonzero entry per row or a proportional row pair; "
                     "proportional rows make S singular, which local equivalence of "
                     "these maps excludes";
  verdict.certificate.push_back(structure);

  for (auto p : {Permutation3::kSwap12, Permutation3::kSwap13, Permutation3::kSwap23}) {
    verdict.certificate.push_back(transposition_obstruction(t1, t2, p));
  }
  for (auto p :
       {Permutation3::kIdentity, Permutation3::kCycle123, Permutation3::kCycle132}) {
    verdict.certificate.push_back(cycle_obstruction(t1, t2, p));
  }

  verdict.equivalent = false;
  if (opt.numeric) {
    const auto search =
        numeric_search_equiv(choi_hakye(t1), choi_hakye(t2), opt.search);
    verdict.numeric_residual = search.residual;
  }
  return verdict;
}

}  // namespace mapcone
