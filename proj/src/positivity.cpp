#include "mapcone/positivity.hpp"

#include "mapcone/rng.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include <algorithm>
#include <limits>

namespace mapcone {

namespace {

std::pair<double, Vector3c> min_eigenpair(const Matrix3c& h) {
  Eigen::SelfAdjointEigenSolver<Matrix3c> solver(0.5 * (h + h.adjoint()));
  return {solver.eigenvalues()(0), solver.eigenvectors().col(0)};
}

}  // namespace

PositivityVerdict product_min(const Matrix9c& c, const ProductMinOptions& opt) {
  require_hermitian(c, "product_min");
  if (opt.restarts < 1) {
    throw std::invalid_argument("product_min: restarts must be >= 1");
  }

  PositivityVerdict best;
  best.min_value = std::numeric_limits<double>::infinity();
  best.restarts_used = opt.restarts;

  for (int r = 0; r < opt.restarts; ++r) {
    Rng rng(opt.seed, static_cast<std::uint64_t>(r));
    Vector3c y = rng.unit_vector3();
    auto [value, x] = min_eigenpair(compress_right(c, y));
    bool converged = false;
    for (int it = 0; it < opt.max_iters; ++it) {
      const double prev = value;
      auto [vy, ny] = min_eigenpair(compress_left(c, x));
      y = ny;
      auto [vx, nx] = min_eigenpair(compress_right(c, y));
      x = nx;
      value = vx;
      if (prev - value < opt.tol) {
        converged = true;
        break;
      }
    }
    if (value < best.min_value) {
      best.min_value = value;
      best.argmin = ProductVector{x, y};
      best.converged = converged;
    }
  }
  return best;
}

bool is_block_positive(const Matrix9c& c, double tol, const ProductMinOptions& opt) {
  return product_min(c, opt).min_value >= -tol;
}

bool is_completely_positive(const Matrix9c& c, double tol) {
  return min_eigenvalue(c) >= -tol;
}

bool is_ppt(const Matrix9c& rho, double tol) {
  return min_eigenvalue(partial_transpose(rho)) >= -tol;
}

double witness_apply(const LinearMap& phi, const Matrix3c& b, const Matrix9c& rho) {
  const Matrix9c k = kron(Matrix3c::Identity(), b);
  const Matrix9c conjugated = k * rho * k.adjoint();
  return min_eigenvalue(compose_choi(phi, conjugated));
}

double pairing(const LinearMap& psi, const LinearMap& phi) {
  return hs_inner(psi.choi(), phi.choi()).real();
}

Matrix9c assemble_separable(const SeparableSpec& spec) {
  Matrix9c rho = Matrix9c::Zero();
  for (const auto& term : spec.terms) {
    const Matrix3c p1 = term.phi1 * term.phi1.adjoint();
    const Matrix3c p2 = term.phi2 * term.phi2.adjoint();
    rho += term.weight * kron(p1, p2);
  }
  return rho;
}

std::pair<SeparableSpec, Matrix9c> separable_sample(int k, std::uint64_t seed) {
  if (k < 1) throw std::invalid_argument("separable_sample: k must be >= 1");
  Rng rng(seed);
  SeparableSpec spec;
  double total = 0.0;
  for (int i = 0; i < k; ++i) {
    SeparableTerm term;
    term.weight = -std::log(rng.uniform());  // exponential, strictly positive
    term.phi1 = rng.unit_vector3();
    term.phi2 = rng.unit_vector3();
    total += term.weight;
    spec.terms.push_back(term);
  }
  for (auto& term : spec.terms) term.weight /= total;
  return {spec, assemble_separable(spec)};
}

LinearMap superpositive_sample(int n, std::uint64_t seed) {
  if (n < 1) throw std::invalid_argument("superpositive_sample: n must be >= 1");
  Rng rng(seed);
  std::vector<Matrix3c> kraus;
  kraus.reserve(n);
  for (int i = 0; i < n; ++i) {
    const Vector3c u = rng.unit_vector3();
    const Vector3c v = rng.unit_vector3();
    kraus.push_back(u * v.adjoint());
  }
  return LinearMap::from_evaluator([kraus](const Matrix3c& x) {
    Matrix3c out = Matrix3c::Zero();
    for (const auto& a : kraus) out += ad_apply(a, x);
    return out;
  });
}

namespace {

double sigma2(const Matrix3c& m) {
  Eigen::JacobiSVD<Matrix3c> svd(m);
  return svd.singularValues()(1);
}

double profile_one_side(const Matrix9c& c, bool y_side, int samples, int restarts,
                        std::uint64_t seed) {
  Rng rng(seed, y_side ? 0u : 1u);
  const auto eval = [&](const Vector3c& v) {
    return sigma2(y_side ? compress_right(c, v) : compress_left(c, v));
  };

  std::vector<std::pair<double, Vector3c>> probes;
  probes.reserve(samples);
  for (int i = 0; i < samples; ++i) {
    const Vector3c v = rng.unit_vector3();
    probes.emplace_back(eval(v), v);
  }
  std::sort(probes.begin(), probes.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });

  double best = probes.empty() ? 0.0 : probes.front().first;
  const int starts = std::min<int>(restarts, static_cast<int>(probes.size()));
  for (int s = 0; s < starts; ++s) {
    Vector3c v = probes[s].second;
    double cur = probes[s].first;
    double step = 0.3;
    for (int it = 0; it < 200; ++it) {
      Vector3c w = v;
      for (int i = 0; i < 3; ++i) w(i) += step * rng.cgaussian();
      w.normalize();
      const double val = eval(w);
      if (val < cur) {
        cur = val;
        v = w;
      } else {
        step *= 0.97;
      }
    }
    best = std::min(best, cur);
  }
  return best;
}

}  // namespace

RankProfile compression_rank_profile(const Matrix9c& c, int samples, int restarts,
                                     std::uint64_t seed) {
  require_hermitian(c, "compression_rank_profile");
  RankProfile p;
  p.y_side_min_sigma2 = profile_one_side(c, true, samples, restarts, seed);
  p.x_side_min_sigma2 = profile_one_side(c, false, samples, restarts, seed);
  return p;
}

}  // namespace mapcone
