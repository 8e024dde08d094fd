#include "mapcone/choi.hpp"
#include "mapcone/hakye.hpp"
#include "mapcone/json_io.hpp"
#include "mapcone/localequiv.hpp"
#include "mapcone/positivity.hpp"
#include "mapcone/verify.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <iostream>
#include <string>

namespace {

using namespace mapcone;

constexpr int kExitOk = 0;
constexpr int kExitViolation = 1;
constexpr int kExitUsage = 2;

struct RunConfig {
  std::uint64_t seed = 12345;
  double tol_eigen = kEigenTol;
  double tol_bp = kBlockPositiveTol;
  double tol_residual = kResidualTol;
  int restarts = 64;
  int iters = 200;
  int phase_samples = 256;
  std::string out;
};

void add_common_options(CLI::App* cmd, RunConfig* cfg) {
  cmd->add_option("--seed", cfg->seed, "RNG seed")->envname("MAPCONE_SEED");
  cmd->add_option("--tol-eigen", cfg->tol_eigen, "eigenvalue tolerance")
      ->envname("MAPCONE_TOL_EIGEN");
  cmd->add_option("--tol-bp", cfg->tol_bp, "block positivity tolerance")
      ->envname("MAPCONE_TOL_BP");
  cmd->add_option("--tol-residual", cfg->tol_residual, "residual tolerance")
      ->envname("MAPCONE_TOL_RESIDUAL");
  cmd->add_option("--restarts", cfg->restarts, "multi-start restarts")
      ->envname("MAPCONE_RESTARTS");
  cmd->add_option("--iters", cfg->iters, "iteration cap per start")
      ->envname("MAPCONE_ITERS");
  cmd->add_option("--out", cfg->out, "write the report to this path instead of stdout");
}

json config_to_json(const RunConfig& cfg) {
  return json{{"seed", cfg.seed},
              {"tol_eigen", cfg.tol_eigen},
              {"tol_bp", cfg.tol_bp},
              {"tol_residual", cfg.tol_residual},
              {"restarts", cfg.restarts},
              {"iters", cfg.iters}};
}

class ReportBuilder {
 public:
  ReportBuilder(std::string command, const RunConfig& cfg)
      : start_(std::chrono::steady_clock::now()), cfg_(cfg) {
    report_["command"] = std::move(command);
    report_["config"] = config_to_json(cfg);
    report_["inputs"] = json::object();
  }

  void input_file(const std::string& key, const std::string& path) {
    report_["inputs"][key] = json{{"path", path}, {"fnv1a64", file_digest(path)}};
  }

  template <typename T>
  void input_value(const std::string& key, const T& value) {
    report_["inputs"][key] = value;
  }

  json& results() { return report_["results"]; }

  int emit(bool pass) {
    report_["pass"] = pass;
    const auto elapsed = std::chrono::steady_clock::now() - start_;
    report_["wall_clock_ms"] =
        std::chrono::duration<double, std::milli>(elapsed).count();
    if (cfg_.out.empty()) {
      std::cout << report_.dump(2) << "\n";
    } else {
      write_json_atomic(report_, cfg_.out);
    }
    return pass ? kExitOk : kExitViolation;
  }

 private:
  std::chrono::steady_clock::time_point start_;
  RunConfig cfg_;
  json report_;
};

LinearMap parse_map(const std::string& spec) {
  if (spec == "identity") return LinearMap::identity();
  if (spec == "transpose") return LinearMap::transpose_map();
  if (spec.rfind("hakye:", 0) == 0) {
    const double t = std::stod(spec.substr(6));
    return hakye_map(t);
  }
  throw std::invalid_argument("unknown map spec '" + spec +
                              "' (expected hakye:<t>, identity or transpose)");
}

Matrix9c load_matrix9(ReportBuilder& report, const std::string& key,
                      const std::string& path) {
  report.input_file(key, path);
  return matrix9_from_json(load_json_file(path));
}

Matrix3c load_matrix3(ReportBuilder& report, const std::string& key,
                      const std::string& path) {
  report.input_file(key, path);
  return matrix3_from_json(load_json_file(path));
}

int cmd_choi(const RunConfig& cfg, double t) {
  ReportBuilder report("choi", cfg);
  report.input_value("t", t);
  report.results()["choi"] = matrix_to_json(choi_hakye(t));
  return report.emit(true);
}

int cmd_apply(const RunConfig& cfg, const std::string& map_spec,
              const std::string& choi_path, const double* t,
              const std::string& in_path) {
  ReportBuilder report("apply", cfg);
  LinearMap phi;
  if (!choi_path.empty()) {
    phi = LinearMap::from_choi(load_matrix9(report, "choi", choi_path));
    report.input_value("map", "choi-file");
  } else if (t != nullptr) {
    phi = hakye_map(*t);
    report.input_value("map", "hakye");
    report.input_value("t", *t);
  } else {
    phi = parse_map(map_spec);
    report.input_value("map", map_spec);
  }
  const Matrix3c x = load_matrix3(report, "in", in_path);
  report.results()["output"] = matrix_to_json(phi.apply(x));
  return report.emit(true);
}

int cmd_blockpos(const RunConfig& cfg, const std::string& in_path) {
  ReportBuilder report("blockpos", cfg);
  const Matrix9c c = load_matrix9(report, "in", in_path);
  ProductMinOptions opt;
  opt.restarts = cfg.restarts;
  opt.max_iters = cfg.iters;
  opt.seed = cfg.seed;
  const PositivityVerdict verdict = product_min(c, opt);
  const bool block_positive = verdict.min_value >= -cfg.tol_bp;
  report.results() = positivity_verdict_to_json(verdict);
  report.results()["block_positive"] = block_positive;
  return report.emit(block_positive);
}

int cmd_witness(const RunConfig& cfg, const std::string& map_spec,
                const std::string& b_path, const std::string& rho_path) {
  ReportBuilder report("witness", cfg);
  const LinearMap phi = parse_map(map_spec);
  report.input_value("phi", map_spec);
  Matrix3c b = Matrix3c::Identity();
  if (!b_path.empty()) b = load_matrix3(report, "B", b_path);
  const Matrix9c rho_raw = load_matrix9(report, "rho", rho_path);
  const DensityMatrix9 rho = make_density(rho_raw, cfg.tol_eigen);
  const double value = witness_apply(phi, b, rho.matrix);
  const bool nonnegative = value >= -cfg.tol_eigen;
  report.results()["min_eigenvalue"] = value;
  report.results()["violation"] = !nonnegative;
  return report.emit(nonnegative);
}

int cmd_ppt(const RunConfig& cfg, const std::string& rho_path) {
  ReportBuilder report("ppt", cfg);
  const Matrix9c rho_raw = load_matrix9(report, "rho", rho_path);
  const DensityMatrix9 rho = make_density(rho_raw, cfg.tol_eigen);
  const double eig = min_eigenvalue(partial_transpose(rho.matrix));
  const bool ppt = eig >= -cfg.tol_eigen;
  report.results()["ppt"] = ppt;
  report.results()["min_eig"] = eig;
  return report.emit(ppt);
}

int cmd_singular(const RunConfig& cfg, double t) {
  ReportBuilder report("singular", cfg);
  report.input_value("t", t);
  json families = json::array();
  for (const auto& fam : singular_y_families(t)) {
    families.push_back(family_to_json(fam));
  }
  report.results()["families"] = families;
  return report.emit(true);
}

int cmd_kernel(const RunConfig& cfg, double t, const std::string& family_name_str,
               std::vector<double> phases) {
  ReportBuilder report("kernel", cfg);
  report.input_value("t", t);
  report.input_value("family", family_name_str);
  if (phases.empty()) phases = {0.0, 0.0, 0.0};
  if (phases.size() != 3) {
    throw std::invalid_argument("--phases expects exactly three values");
  }
  report.input_value("phases", phases);
  const std::array<double, 3> ph{phases[0], phases[1], phases[2]};
  const SingularFamily fam = singular_family(t, family_from_name(family_name_str));
  const Vector3c x = kernel_x(t, fam, ph);
  const Vector3c y = fam.y(ph);
  const Matrix9c c = choi_hakye(t);
  const double residual = (compress_right(c, y) * x).norm();
  report.results()["x"] = vector_to_json(x);
  report.results()["y"] = vector_to_json(y);
  report.results()["residual"] = residual;
  report.results()["pair_value"] = product_pair_value(c, x, y);
  return report.emit(residual <= 1e-9);
}

int cmd_local_equiv(const RunConfig& cfg, double t1, double t2, bool numeric) {
  ReportBuilder report("local-equiv", cfg);
  report.input_value("t1", t1);
  report.input_value("t2", t2);
  DecideOptions opt;
  opt.numeric = numeric;
  opt.search.restarts = cfg.restarts;
  opt.search.iters = std::max(cfg.iters, 400);
  opt.search.seed = cfg.seed;
  const EquivalenceVerdict verdict = decide_local_equivalence(t1, t2, opt);
  report.results() = verdict_to_json(verdict);

  bool consistent = true;
  if (verdict.equivalent) {
    consistent = verdict.numeric_residual.value_or(0.0) <= cfg.tol_residual;
  } else {
    for (const auto& rec : verdict.certificate) {
      if ((rec.step == "transposition-obstruction" ||
           rec.step == "cycle-obstruction") &&
          !rec.contradiction) {
        consistent = false;
      }
    }
  }
  return report.emit(consistent);
}

int cmd_moduli_classify(const RunConfig& cfg, const std::string& in_path,
                        int phase_samples) {
  ReportBuilder report("moduli-classify", cfg);
  const Matrix3c m = load_matrix3(report, "in", in_path);
  const ModuliClass cls = classify_matrix(m);
  report.results()["kind"] = moduli_kind_name(cls.kind);
  if (cls.monomial) {
    report.results()["monomial"] =
        json{{"perm", cls.monomial->perm},
             {"zeta", vector_to_json(cls.monomial->zeta)}};
  }
  if (cls.proportional_rows) {
    report.results()["proportional_rows"] =
        json::array({cls.proportional_rows->first, cls.proportional_rows->second});
  }
  bool oracle_all = true;
  for (int i = 0; i < 3; ++i)
    for (int j = i + 1; j < 3; ++j)
      oracle_all = oracle_all &&
                   moduli_equal_oracle(m.row(i).transpose(), m.row(j).transpose(),
                                       phase_samples, cfg.seed + 3 * i + j);
  report.results()["oracle_rows_moduli_equal"] = oracle_all;
  return report.emit(true);
}

int cmd_sample_separable(const RunConfig& cfg, int k) {
  ReportBuilder report("sample-separable", cfg);
  report.input_value("k", k);
  const auto [spec, rho] = separable_sample(k, cfg.seed);
  report.results()["spec"] = separable_spec_to_json(spec);
  report.results()["rho"] = matrix_to_json(rho);
  const double trace = rho.trace().real();
  const double min_eig = min_eigenvalue(rho);
  const bool ppt = is_ppt(rho, cfg.tol_eigen);
  report.results()["trace"] = trace;
  report.results()["min_eigenvalue"] = min_eig;
  report.results()["ppt"] = ppt;
  const bool valid = std::abs(trace - 1.0) <= 1e-10 && min_eig >= -cfg.tol_eigen && ppt;
  return report.emit(valid);
}

int cmd_verify_paper(const RunConfig& cfg, bool mutate_dt) {
  ReportBuilder report("verify-paper", cfg);
  BatteryOptions opt;
  opt.seed = cfg.seed;
  opt.mutate_dt = mutate_dt;
  report.input_value("mutate_dt", mutate_dt);
  const auto checks = run_battery(opt);
  report.results()["checks"] = check_results_to_json(checks);
  report.results()["all_passed"] = all_passed(checks);
  return report.emit(all_passed(checks));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Choi matrix toolkit for positive maps on 3x3 matrices"};
  app.require_subcommand(1);
  RunConfig cfg;

  double t = 0.0, t1 = 0.0, t2 = 0.0;
  std::string in_path, rho_path, b_path, choi_path, map_spec, family;
  std::vector<double> phases;
  bool numeric = false, mutate_dt = false;
  int k = 1, phase_samples = 256;

  auto* choi_cmd = app.add_subcommand("choi", "Choi matrix of the Ha-Kye map at t");
  choi_cmd->add_option("--t", t, "map parameter in [0,1)")->required();
  add_common_options(choi_cmd, &cfg);

  auto* apply_cmd = app.add_subcommand("apply", "apply a map to a 3x3 matrix");
  apply_cmd->add_option("--t", t, "shortcut for --phi hakye:<t>");
  apply_cmd->add_option("--phi", map_spec, "hakye:<t>, identity or transpose");
  apply_cmd->add_option("--choi", choi_path, "path to a 9x9 Choi matrix JSON");
  apply_cmd->add_option("--in", in_path, "path to the 3x3 input matrix JSON")->required();
  add_common_options(apply_cmd, &cfg);

  auto* blockpos_cmd =
      app.add_subcommand("blockpos", "block positivity by product minimization");
  blockpos_cmd->add_option("--in", in_path, "path to a 9x9 Hermitian matrix JSON")
      ->required();
  add_common_options(blockpos_cmd, &cfg);

  auto* witness_cmd = app.add_subcommand("witness", "entanglement witness evaluation");
  witness_cmd->add_option("--phi", map_spec, "hakye:<t>, identity or transpose")
      ->required();
  witness_cmd->add_option("--B", b_path, "path to the 3x3 local filter (default I)");
  witness_cmd->add_option("--rho", rho_path, "path to the 9x9 density matrix JSON")
      ->required();
  add_common_options(witness_cmd, &cfg);

  auto* ppt_cmd = app.add_subcommand("ppt", "positive partial transpose test");
  ppt_cmd->add_option("--rho", rho_path, "path to the 9x9 density matrix JSON")
      ->required();
  add_common_options(ppt_cmd, &cfg);

  auto* singular_cmd =
      app.add_subcommand("singular", "singular moduli families of the compression");
  singular_cmd->add_option("--t", t, "map parameter in [0,1)")->required();
  add_common_options(singular_cmd, &cfg);

  auto* kernel_cmd =
      app.add_subcommand("kernel", "kernel vector of a singular family compression");
  kernel_cmd->add_option("--t", t, "map parameter in [0,1)")->required();
  kernel_cmd->add_option("--family", family, "EQUAL_MODULI, ZERO_1, ZERO_2 or ZERO_3")
      ->required();
  kernel_cmd->add_option("--phases", phases, "three phases, comma separated")
      ->delimiter(',');
  add_common_options(kernel_cmd, &cfg);

  auto* le_cmd = app.add_subcommand("local-equiv", "decide local equivalence of two "
                                                   "family members");
  le_cmd->add_option("--t1", t1, "first parameter")->required();
  le_cmd->add_option("--t2", t2, "second parameter")->required();
  le_cmd->add_flag("--numeric", numeric, "attach a numeric search residual");
  add_common_options(le_cmd, &cfg);

  auto* mc_cmd = app.add_subcommand("moduli-classify",
                                    "classify a 3x3 matrix as monomial, proportional "
                                    "rows or generic");
  mc_cmd->add_option("--in", in_path, "path to the 3x3 matrix JSON")->required();
  mc_cmd->add_option("--phase-samples", phase_samples, "oracle phase samples");
  add_common_options(mc_cmd, &cfg);

  auto* sep_cmd = app.add_subcommand("sample-separable", "draw a random separable state");
  sep_cmd->add_option("--k", k, "number of product terms")->required();
  add_common_options(sep_cmd, &cfg);

  auto* verify_cmd =
      app.add_subcommand("verify-paper", "run the full invariant battery");
  verify_cmd->add_flag("--mutate-dt", mutate_dt,
                       "flip the cubic coefficient sign to demonstrate mutation "
                       "sensitivity of the determinant checks");
  add_common_options(verify_cmd, &cfg);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (choi_cmd->parsed()) return cmd_choi(cfg, t);
    if (apply_cmd->parsed()) {
      const bool have_t = apply_cmd->count("--t") > 0;
      if (map_spec.empty() && choi_path.empty() && !have_t) {
        throw std::invalid_argument("apply: one of --t, --phi, --choi is required");
      }
      return cmd_apply(cfg, map_spec, choi_path, have_t ? &t : nullptr, in_path);
    }
    if (blockpos_cmd->parsed()) return cmd_blockpos(cfg, in_path);
    if (witness_cmd->parsed()) return cmd_witness(cfg, map_spec, b_path, rho_path);
    if (ppt_cmd->parsed()) return cmd_ppt(cfg, rho_path);
    if (singular_cmd->parsed()) return cmd_singular(cfg, t);
    if (kernel_cmd->parsed()) return cmd_kernel(cfg, t, family, phases);
    if (le_cmd->parsed()) return cmd_local_equiv(cfg, t1, t2, numeric);
    if (mc_cmd->parsed()) return cmd_moduli_classify(cfg, in_path, phase_samples);
    if (sep_cmd->parsed()) return cmd_sample_separable(cfg, k);
    if (verify_cmd->parsed()) return cmd_verify_paper(cfg, mutate_dt);
  } catch (const std::invalid_argument& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::domain_error& e) {
    std::cerr << "domain error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}
