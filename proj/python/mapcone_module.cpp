#include "mapcone/choi.hpp"
#include "mapcone/hakye.hpp"
#include "mapcone/localequiv.hpp"
#include "mapcone/positivity.hpp"
#include "mapcone/verify.hpp"

#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

namespace py = pybind11;
using namespace mapcone;

namespace {

py::dict family_dict(const SingularFamily& f) {
  py::dict d;
  d["family"] = family_name(f.id);
  d["t"] = f.t;
  d["moduli"] = f.moduli;
  d["kernel_moduli"] = f.kernel_moduli;
  return d;
}

py::dict record_dict(const ObstructionRecord& r) {
  py::dict d;
  d["step"] = r.step;
  d["tag"] = r.tag;
  d["permutation"] = r.permutation;
  d["forced"] = r.forced;
  d["lhs"] = r.lhs;
  d["rhs"] = r.rhs;
  d["contradiction"] = r.contradiction;
  d["detail"] = r.detail;
  return d;
}

}  // namespace

PYBIND11_MODULE(_mapcone, m) {
  m.doc() = "Choi matrix calculus, Ha-Kye positive maps, block positivity and "
            "local equivalence tools for 3x3 systems";

  // core
  m.def("choi_of_map",
        [](const std::function<Matrix3c(const Matrix3c&)>& f) { return choi_of_map(f); },
        py::arg("evaluator"));
  m.def("apply_choi", &apply_choi, py::arg("choi"), py::arg("x"));
  m.def("hs_inner", &hs_inner, py::arg("c1"), py::arg("c2"));
  m.def("ad_apply", &ad_apply, py::arg("a"), py::arg("x"));
  m.def("vectorize", &vectorize, py::arg("a"));
  m.def("choi_of_ad", &choi_of_ad, py::arg("a"));
  m.def("adjoint_choi",
        [](const Matrix9c& c) { return LinearMap::from_choi(c).adjoint().choi(); },
        py::arg("choi"));
  m.def("compose_choi",
        [](const Matrix9c& c_phi, const Matrix9c& c_psi) {
          return compose_choi(LinearMap::from_choi(c_phi), c_psi);
        },
        py::arg("choi_phi"), py::arg("choi_psi"));
  m.def("local_conjugate_choi", &local_conjugate_choi, py::arg("choi"), py::arg("a"),
        py::arg("b"));
  m.def("partial_transpose", &partial_transpose, py::arg("rho"));
  m.def("compress_right", &compress_right, py::arg("choi"), py::arg("y"));
  m.def("compress_left", &compress_left, py::arg("choi"), py::arg("x"));
  m.def("product_pair_value", &product_pair_value, py::arg("choi"), py::arg("x"),
        py::arg("y"));
  m.def("min_eigenvalue",
        [](const Eigen::MatrixXcd& h) {
          if (h.rows() == 3 && h.cols() == 3) return min_eigenvalue(Matrix3c(h));
          if (h.rows() == 9 && h.cols() == 9) return min_eigenvalue(Matrix9c(h));
          throw std::invalid_argument("min_eigenvalue: expected a 3x3 or 9x9 matrix");
        },
        py::arg("h"));
  m.def("numerical_rank", &numerical_rank, py::arg("m"), py::arg("tol") = kRankTol);
  m.def("maximally_entangled_projection", &maximally_entangled_projection);

  // hakye
  m.def("coefficients",
        [](double t) {
          const auto p = coefficients(t);
          return py::make_tuple(p.a, p.b, p.c);
        },
        py::arg("t"));
  m.def("apply_hakye", &apply_hakye, py::arg("t"), py::arg("x"));
  m.def("choi_hakye", &choi_hakye, py::arg("t"));
  m.def("f_constants",
        [](double t) {
          const auto k = f_constants(t);
          py::dict d;
          d["A"] = k.A;
          d["B"] = k.B;
          d["C"] = k.C;
          d["D"] = k.D;
          return d;
        },
        py::arg("t"));
  m.def("f_poly",
        [](double t, double l1, double l2, double l3) { return f_poly(t, l1, l2, l3); },
        py::arg("t"), py::arg("l1"), py::arg("l2"), py::arg("l3"));
  m.def("f_det", &f_det, py::arg("t"), py::arg("y"));
  m.def("f_gradient",
        [](double t, double l1, double l2, double l3) {
          return f_gradient(t, l1, l2, l3);
        },
        py::arg("t"), py::arg("l1"), py::arg("l2"), py::arg("l3"));
  m.def("singular_families",
        [](double t) {
          py::list out;
          for (const auto& fam : singular_y_families(t)) out.append(family_dict(fam));
          return out;
        },
        py::arg("t"));
  m.def("family_y",
        [](double t, const std::string& family, const std::array<double, 3>& phases) {
          return singular_family(t, family_from_name(family)).y(phases);
        },
        py::arg("t"), py::arg("family"), py::arg("phases"));
  m.def("kernel_x",
        [](double t, const std::string& family, const std::array<double, 3>& phases) {
          return kernel_x(t, singular_family(t, family_from_name(family)), phases);
        },
        py::arg("t"), py::arg("family"), py::arg("phases"));
  m.def("permutation_symmetry_check", &permutation_symmetry_check, py::arg("t"));

  // positivity
  m.def("product_min",
        [](const Matrix9c& c, int restarts, int max_iters, double tol,
           std::uint64_t seed) {
          ProductMinOptions opt;
          opt.restarts = restarts;
          opt.max_iters = max_iters;
          opt.tol = tol;
          opt.seed = seed;
          const auto v = product_min(c, opt);
          py::dict d;
          d["min_value"] = v.min_value;
          d["argmin_x"] = v.argmin.x;
          d["argmin_y"] = v.argmin.y;
          d["restarts_used"] = v.restarts_used;
          d["converged"] = v.converged;
          return d;
        },
        py::arg("choi"), py::arg("restarts") = 64, py::arg("max_iters") = 200,
        py::arg("tol") = 1e-12, py::arg("seed") = 1);
  m.def("is_block_positive",
        [](const Matrix9c& c, double tol, int restarts, std::uint64_t seed) {
          ProductMinOptions opt;
          opt.restarts = restarts;
          opt.seed = seed;
          return is_block_positive(c, tol, opt);
        },
        py::arg("choi"), py::arg("tol") = kBlockPositiveTol, py::arg("restarts") = 64,
        py::arg("seed") = 1);
  m.def("is_completely_positive", &is_completely_positive, py::arg("choi"),
        py::arg("tol") = kEigenTol);
  m.def("is_ppt", &is_ppt, py::arg("rho"), py::arg("tol") = kEigenTol);
  m.def("witness_hakye",
        [](double t, const Matrix3c& b, const Matrix9c& rho) {
          return witness_apply(hakye_map(t), b, rho);
        },
        py::arg("t"), py::arg("b"), py::arg("rho"));
  m.def("witness_choi",
        [](const Matrix9c& c_phi, const Matrix3c& b, const Matrix9c& rho) {
          return witness_apply(LinearMap::from_choi(c_phi), b, rho);
        },
        py::arg("choi_phi"), py::arg("b"), py::arg("rho"));
  m.def("pairing",
        [](const Matrix9c& c_psi, const Matrix9c& c_phi) {
          return hs_inner(c_psi, c_phi).real();
        },
        py::arg("c_psi"), py::arg("c_phi"));
  m.def("separable_sample",
        [](int k, std::uint64_t seed) {
          const auto [spec, rho] = separable_sample(k, seed);
          py::list terms;
          for (const auto& term : spec.terms) {
            py::dict d;
            d["weight"] = term.weight;
            d["phi1"] = term.phi1;
            d["phi2"] = term.phi2;
            terms.append(d);
          }
          return py::make_tuple(terms, rho);
        },
        py::arg("k"), py::arg("seed"));
  m.def("superpositive_sample",
        [](int n, std::uint64_t seed) { return superpositive_sample(n, seed).choi(); },
        py::arg("n"), py::arg("seed"));
  m.def("compression_rank_profile",
        [](const Matrix9c& c, int samples, int restarts, std::uint64_t seed) {
          const auto p = compression_rank_profile(c, samples, restarts, seed);
          return py::make_tuple(p.y_side_min_sigma2, p.x_side_min_sigma2);
        },
        py::arg("choi"), py::arg("samples") = 400, py::arg("restarts") = 8,
        py::arg("seed") = 1);

  // localequiv
  m.def("moduli_equal_oracle", &moduli_equal_oracle, py::arg("y"), py::arg("z"),
        py::arg("phase_samples") = 256, py::arg("seed") = 1, py::arg("tol") = 1e-9);
  m.def("classify_vectors",
        [](const Eigen::VectorXcd& y, const Eigen::VectorXcd& z) {
          const auto c = classify_vectors(y, z);
          py::dict d;
          switch (c.cls) {
            case PairClass::kProportional: d["class"] = "PROPORTIONAL"; break;
            case PairClass::kSingleNonzeroEach: d["class"] = "SINGLE_NONZERO_EACH"; break;
            case PairClass::kGeneric: d["class"] = "GENERIC"; break;
          }
          d["factor"] = c.factor;
          return d;
        },
        py::arg("y"), py::arg("z"));
  m.def("classify_matrix",
        [](const Matrix3c& x) {
          const auto c = classify_matrix(x);
          py::dict d;
          d["kind"] = moduli_kind_name(c.kind);
          if (c.monomial) {
            d["perm"] = c.monomial->perm;
            d["zeta"] = c.monomial->zeta;
          }
          if (c.proportional_rows) {
            d["proportional_rows"] =
                py::make_tuple(c.proportional_rows->first, c.proportional_rows->second);
          }
          return d;
        },
        py::arg("x"));
  m.def("monomial_decompose",
        [](const Matrix3c& s) -> py::object {
          const auto f = monomial_decompose(s);
          if (!f) return py::none();
          return py::make_tuple(f->perm, Vector3c(f->zeta));
        },
        py::arg("s"));
  m.def("singular_set_transport_check", &singular_set_transport_check, py::arg("t1"),
        py::arg("t2"), py::arg("s"), py::arg("phase_samples") = 32, py::arg("seed") = 1);
  m.def("numeric_search_equiv",
        [](const Matrix9c& c1, const Matrix9c& c2, int restarts, int iters,
           std::uint64_t seed) {
          SearchOptions opt;
          opt.restarts = restarts;
          opt.iters = iters;
          opt.seed = seed;
          const auto res = numeric_search_equiv(c1, c2, opt);
          return py::make_tuple(Matrix3c(res.r), Matrix3c(res.s), res.residual);
        },
        py::arg("c1"), py::arg("c2"), py::arg("restarts") = 64, py::arg("iters") = 400,
        py::arg("seed") = 7);
  m.def("decide_local_equivalence",
        [](double t1, double t2, bool numeric, int restarts, int iters,
           std::uint64_t seed) {
          DecideOptions opt;
          opt.numeric = numeric;
          opt.search.restarts = restarts;
          opt.search.iters = iters;
          opt.search.seed = seed;
          const auto v = decide_local_equivalence(t1, t2, opt);
          py::dict d;
          d["equivalent"] = v.equivalent;
          py::list certificate;
          for (const auto& rec : v.certificate) certificate.append(record_dict(rec));
          d["certificate"] = certificate;
          if (v.witness) {
            d["witness_R"] = Matrix3c(v.witness->first);
            d["witness_S"] = Matrix3c(v.witness->second);
          }
          if (v.numeric_residual) d["residual"] = *v.numeric_residual;
          return d;
        },
        py::arg("t1"), py::arg("t2"), py::arg("numeric") = false,
        py::arg("restarts") = 64, py::arg("iters") = 400, py::arg("seed") = 7);

  // verify battery
  m.def("run_battery",
        [](std::uint64_t seed, bool mutate_dt, int criterion) {
          BatteryOptions opt;
          opt.seed = seed;
          opt.mutate_dt = mutate_dt;
          py::list out;
          for (const auto& c : run_battery(opt, criterion)) {
            py::dict d;
            d["id"] = c.id;
            d["criterion"] = c.criterion;
            d["pass"] = c.pass;
            d["measured"] = c.measured;
            d["tolerance"] = c.tolerance;
            d["detail"] = c.detail;
            out.append(d);
          }
          return out;
        },
        py::arg("seed") = 0x5EED, py::arg("mutate_dt") = false, py::arg("criterion") = 0);

#ifdef MAPCONE_VERSION
  m.attr("__version__") = MAPCONE_VERSION;
#else
  m.attr("__version__") = "dev";
#endif
}
