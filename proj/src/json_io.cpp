#include "mapcone/json_io.hpp"

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace mapcone {

json matrix_to_json(const Eigen::MatrixXcd& m) {
  json re = json::array();
  json im = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json rrow = json::array();
    json irow = json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      rrow.push_back(m(i, j).real());
      irow.push_back(m(i, j).imag());
    }
    re.push_back(rrow);
    im.push_back(irow);
  }
  return json{{"rows", m.rows()}, {"cols", m.cols()}, {"re", re}, {"im", im}};
}

Eigen::MatrixXcd matrix_from_json(const json& j) {
  if (!j.is_object() || !j.contains("rows") || !j.contains("cols") ||
      !j.contains("re") || !j.contains("im")) {
    throw std::invalid_argument("matrix JSON must carry rows, cols, re, im");
  }
  const auto rows = j.at("rows").get<Eigen::Index>();
  const auto cols = j.at("cols").get<Eigen::Index>();
  if (rows <= 0 || cols <= 0) {
    throw std::invalid_argument("matrix JSON: non-positive dimensions");
  }
  const auto& re = j.at("re");
  const auto& im = j.at("im");
  if (!re.is_array() || !im.is_array() ||
      static_cast<Eigen::Index>(re.size()) != rows ||
      static_cast<Eigen::Index>(im.size()) != rows) {
    throw std::invalid_argument("matrix JSON: re/im row count mismatch");
  }
  Eigen::MatrixXcd m(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i) {
    const auto& rrow = re.at(i);
    const auto& irow = im.at(i);
    if (static_cast<Eigen::Index>(rrow.size()) != cols ||
        static_cast<Eigen::Index>(irow.size()) != cols) {
      throw std::invalid_argument("matrix JSON: re/im column count mismatch");
    }
    for (Eigen::Index jcol = 0; jcol < cols; ++jcol) {
      m(i, jcol) = Complex(rrow.at(jcol).get<double>(), irow.at(jcol).get<double>());
    }
  }
  require_finite(m, "matrix JSON");
  return m;
}

Matrix3c matrix3_from_json(const json& j) {
  const Eigen::MatrixXcd m = matrix_from_json(j);
  if (m.rows() != 3 || m.cols() != 3) {
    throw std::invalid_argument("expected a 3x3 matrix");
  }
  return m;
}

Matrix9c matrix9_from_json(const json& j) {
  const Eigen::MatrixXcd m = matrix_from_json(j);
  if (m.rows() != 9 || m.cols() != 9) {
    throw std::invalid_argument("expected a 9x9 matrix");
  }
  return m;
}

json vector_to_json(const Eigen::VectorXcd& v) {
  json re = json::array();
  json im = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    re.push_back(v(i).real());
    im.push_back(v(i).imag());
  }
  return json{{"size", v.size()}, {"re", re}, {"im", im}};
}

Eigen::VectorXcd vector_from_json(const json& j) {
  if (!j.is_object() || !j.contains("size") || !j.contains("re") || !j.contains("im")) {
    throw std::invalid_argument("vector JSON must carry size, re, im");
  }
  const auto n = j.at("size").get<Eigen::Index>();
  const auto& re = j.at("re");
  const auto& im = j.at("im");
  if (static_cast<Eigen::Index>(re.size()) != n ||
      static_cast<Eigen::Index>(im.size()) != n) {
    throw std::invalid_argument("vector JSON: size mismatch");
  }
  Eigen::VectorXcd v(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    v(i) = Complex(re.at(i).get<double>(), im.at(i).get<double>());
  }
  require_finite(v, "vector JSON");
  return v;
}

json family_to_json(const SingularFamily& f) {
  return json{{"family", family_name(f.id)},
              {"moduli", f.moduli},
              {"kernel_moduli", f.kernel_moduli}};
}

json record_to_json(const ObstructionRecord& r) {
  json j{{"step", r.step},
         {"tag", r.tag},
         {"forced", r.forced},
         {"lhs", r.lhs},
         {"rhs", r.rhs},
         {"contradiction", r.contradiction},
         {"detail", r.detail}};
  if (!r.permutation.empty()) j["permutation"] = r.permutation;
  return j;
}

json verdict_to_json(const EquivalenceVerdict& v) {
  json j{{"equivalent", v.equivalent}};
  json cert = json::array();
  for (const auto& r : v.certificate) cert.push_back(record_to_json(r));
  j["certificate"] = cert;
  if (v.witness) {
    j["witness_R"] = matrix_to_json(v.witness->first);
    j["witness_S"] = matrix_to_json(v.witness->second);
  }
  if (v.numeric_residual) j["residual"] = *v.numeric_residual;
  return j;
}

json positivity_verdict_to_json(const PositivityVerdict& v) {
  return json{{"min_value", v.min_value},
              {"argmin_x", vector_to_json(v.argmin.x)},
              {"argmin_y", vector_to_json(v.argmin.y)},
              {"restarts_used", v.restarts_used},
              {"converged", v.converged}};
}

json separable_spec_to_json(const SeparableSpec& s) {
  json terms = json::array();
  for (const auto& t : s.terms) {
    terms.push_back(json{{"weight", t.weight},
                         {"phi1", vector_to_json(t.phi1)},
                         {"phi2", vector_to_json(t.phi2)}});
  }
  return json{{"terms", terms}};
}

json check_results_to_json(const std::vector<CheckResult>& checks) {
  json arr = json::array();
  for (const auto& c : checks) {
    arr.push_back(json{{"id", c.id},
                       {"criterion", c.criterion},
                       {"pass", c.pass},
                       {"measured", c.measured},
                       {"tolerance", c.tolerance},
                       {"detail", c.detail}});
  }
  return arr;
}

json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open file: " + path);
  json j;
  try {
    in >> j;
  } catch (const json::parse_error& e) {
    throw std::invalid_argument("malformed JSON in " + path + ": " + e.what());
  }
  return j;
}

std::string file_digest(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::invalid_argument("cannot open file: " + path);
  std::uint64_t h = 1469598103934665603ULL;
  char c;
  while (in.get(c)) {
    h ^= static_cast<unsigned char>(c);
    h *= 1099511628211ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
  return std::string(buf);
}

void write_json_atomic(const json& j, const std::string& path) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp);
    if (!out) throw std::runtime_error("cannot write file: " + tmp);
    out << j.dump(2) << "\n";
  }
  if (std::rename(tmp.c_str(), path.c_str()) != 0) {
    std::remove(tmp.c_str());
    throw std::runtime_error("cannot rename into place: " + path);
  }
}

}  // namespace mapcone
