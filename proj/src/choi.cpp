#include "mapcone/choi.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

namespace mapcone {

Matrix3c matrix_unit(int i, int j) {
  Matrix3c e = Matrix3c::Zero();
  e(i, j) = 1.0;
  return e;
}

Vector9c maximally_entangled_vector() {
  Vector9c v = Vector9c::Zero();
  for (int i = 0; i < 3; ++i) v(composite_index(i, i)) = 1.0;
  return v;
}

Matrix9c maximally_entangled_projection() {
  const Vector9c w = maximally_entangled_vector();
  return w * w.adjoint();
}

Matrix9c choi_of_map(const MapEvaluator& phi) {
  Matrix9c c;
  Matrix3c images[3][3];
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      images[i][j] = phi(matrix_unit(i, j));
      require_finite(images[i][j], "choi_of_map");
      c.block<3, 3>(3 * i, 3 * j) = images[i][j];
    }

  // Linearity spot check: a fixed dense combination of matrix units.
  Matrix3c probe;
  Matrix3c expected = Matrix3c::Zero();
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      const Complex coeff(0.31 + 0.17 * i - 0.05 * j, 0.23 - 0.11 * i + 0.07 * j);
      probe(i, j) = coeff;
      expected += coeff * images[i][j];
    }
  const Matrix3c got = phi(probe);
  require_finite(got, "choi_of_map");
  if ((got - expected).norm() > 1e-9 * std::max(1.0, expected.norm())) {
    throw std::invalid_argument("choi_of_map: evaluator is not linear");
  }
  return c;
}

Matrix3c apply_choi(const Matrix9c& c, const Matrix3c& x) {
  Matrix3c out = Matrix3c::Zero();
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) out += x(i, j) * block(c, i, j);
  return out;
}

Vector9c vectorize(const Matrix3c& a) {
  Vector9c v;
  for (int q = 0; q < 3; ++q)
    for (int p = 0; p < 3; ++p) v(composite_index(q, p)) = a(p, q);
  return v;
}

Matrix9c choi_of_ad(const Matrix3c& a) {
  const Vector9c alpha = vectorize(a);
  return alpha * alpha.adjoint();
}

Matrix3c ad_apply(const Matrix3c& a, const Matrix3c& x) { return a * x * a.adjoint(); }

Complex hs_inner(const Matrix9c& c1, const Matrix9c& c2) {
  return (c1.array() * c2.array().conjugate()).sum();
}

LinearMap LinearMap::from_choi(const Matrix9c& c) {
  require_finite(c, "LinearMap::from_choi");
  LinearMap m;
  m.choi_ = c;
  return m;
}

LinearMap LinearMap::from_evaluator(const MapEvaluator& phi) {
  LinearMap m;
  m.choi_ = choi_of_map(phi);
  m.evaluator_ = phi;
  return m;
}

LinearMap LinearMap::identity() {
  return from_evaluator([](const Matrix3c& x) { return x; });
}

LinearMap LinearMap::transpose_map() {
  return from_evaluator([](const Matrix3c& x) { return x.transpose().eval(); });
}

LinearMap LinearMap::ad(const Matrix3c& a) {
  return from_evaluator([a](const Matrix3c& x) { return ad_apply(a, x); });
}

Matrix3c LinearMap::apply(const Matrix3c& x) const {
  if (evaluator_) return evaluator_(x);
  return apply_choi(choi_, x);
}

LinearMap LinearMap::compose(const LinearMap& other) const {
  const Matrix9c c_inner = choi_;
  const Matrix9c c_outer_input = other.choi_;
  LinearMap m;
  m.choi_ = compose_choi(*this, c_outer_input);
  m.evaluator_ = [c_inner, c_outer_input](const Matrix3c& x) {
    return apply_choi(c_inner, apply_choi(c_outer_input, x));
  };
  return m;
}

LinearMap LinearMap::adjoint() const {
  // Phi*(e_ij)_{pq} = conj(Phi(e_pq)_{ij}), from the matrix-unit pairing.
  Matrix9c c;
  for (int i = 0; i < 3; ++i)
    for (int p = 0; p < 3; ++p)
      for (int j = 0; j < 3; ++j)
        for (int q = 0; q < 3; ++q)
          c(composite_index(i, p), composite_index(j, q)) =
              std::conj(choi_(composite_index(p, i), composite_index(q, j)));
  return from_choi(c);
}

Complex map_inner(const LinearMap& phi, const LinearMap& psi) {
  Complex sum = 0.0;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      const Matrix3c a = phi.apply(matrix_unit(i, j));
      const Matrix3c b = psi.apply(matrix_unit(i, j));
      sum += (a * b.adjoint()).trace();
    }
  return sum;
}

Matrix9c compose_choi(const LinearMap& phi, const Matrix9c& c_psi) {
  Matrix9c out;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      out.block<3, 3>(3 * i, 3 * j) = phi.apply(block(c_psi, i, j));
  return out;
}

Matrix9c local_conjugate_choi(const Matrix9c& c, const Matrix3c& a, const Matrix3c& b) {
  const Matrix9c k = kron(b.transpose(), a);
  return k * c * k.adjoint();
}

Matrix9c partial_transpose(const Matrix9c& rho) {
  Matrix9c out;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      out.block<3, 3>(3 * i, 3 * j) = block(rho, i, j).transpose();
  return out;
}

Matrix3c compress_right(const Matrix9c& c, const Vector3c& y) {
  Matrix3c out = Matrix3c::Zero();
  for (int k = 0; k < 3; ++k)
    for (int l = 0; l < 3; ++l) out += std::conj(y(k)) * y(l) * block(c, k, l);
  return out;
}

Matrix3c compress_left(const Matrix9c& c, const Vector3c& x) {
  Matrix3c out;
  for (int k = 0; k < 3; ++k)
    for (int l = 0; l < 3; ++l) out(k, l) = x.adjoint() * block(c, k, l) * x;
  return out;
}

double product_pair_value(const Matrix9c& c, const Vector3c& x, const Vector3c& y) {
  const Complex v = x.adjoint() * compress_right(c, y) * x;
  return v.real();
}

namespace {

template <typename Mat>
double min_eigenvalue_impl(const Mat& h, double tol_factor) {
  require_hermitian(h, "min_eigenvalue", tol_factor);
  const Mat sym = 0.5 * (h + h.adjoint());
  Eigen::SelfAdjointEigenSolver<Mat> solver(sym, Eigen::EigenvaluesOnly);
  return solver.eigenvalues()(0);
}

}  // namespace

double min_eigenvalue(const Matrix3c& h, double tol_factor) {
  return min_eigenvalue_impl(h, tol_factor);
}

double min_eigenvalue(const Matrix9c& h, double tol_factor) {
  return min_eigenvalue_impl(h, tol_factor);
}

int numerical_rank(const Eigen::MatrixXcd& m, double tol) {
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(m);
  const auto& sv = svd.singularValues();
  if (sv.size() == 0 || sv(0) <= 0.0) return 0;
  int rank = 0;
  for (Eigen::Index i = 0; i < sv.size(); ++i)
    if (sv(i) > tol * sv(0)) ++rank;
  return rank;
}

DensityMatrix9 make_density(const Matrix9c& m, double tol) {
  require_finite(m, "make_density");
  require_hermitian(m, "make_density");
  if (std::abs(m.trace().real() - 1.0) > 1e-8 || std::abs(m.trace().imag()) > 1e-8) {
    throw std::domain_error("make_density: trace must equal 1");
  }
  if (min_eigenvalue(m) < -tol) {
    throw std::domain_error("make_density: matrix is not positive semidefinite");
  }
  return DensityMatrix9{m};
}

}  // namespace mapcone
