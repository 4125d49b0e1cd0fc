#include "cartan/serialization.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "cartan/errors.hpp"

namespace cartan::io {

namespace {

const Json& require(const Json& j, const char* key, const std::string& where = "") {
  if (!j.is_object() || !j.contains(key)) {
    throw ParseError("missing field '" + where + key + "'");
  }
  return j.at(key);
}

int require_int(const Json& j, const char* key) {
  const Json& v = require(j, key);
  if (!v.is_number_integer()) throw ParseError("field '" + std::string(key) + "' must be an integer");
  return v.get<int>();
}

std::vector<Matrix> matrix_list(const Json& j, const char* key, int n) {
  const Json& arr = require(j, key);
  if (!arr.is_array()) throw ParseError("field '" + std::string(key) + "' must be an array");
  std::vector<Matrix> out;
  for (std::size_t k = 0; k < arr.size(); ++k) {
    out.push_back(matrix_from_json(arr[k], n, n, std::string(key) + "[" + std::to_string(k) + "]"));
  }
  return out;
}

double skew_residual(const Matrix& m) { return (m + m.transpose()).cwiseAbs().maxCoeff(); }

}  // namespace

Json matrix_to_json(const Matrix& m) {
  Json rows = Json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    Json row = Json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(m(r, c));
    rows.push_back(std::move(row));
  }
  return rows;
}

Matrix matrix_from_json(const Json& j, int rows, int cols, const std::string& field) {
  if (!j.is_array() || static_cast<int>(j.size()) != rows) {
    throw ParseError("field '" + field + "' must be a " + std::to_string(rows) + "x" +
                     std::to_string(cols) + " array");
  }
  Matrix m(rows, cols);
  for (int r = 0; r < rows; ++r) {
    const Json& row = j[static_cast<std::size_t>(r)];
    if (!row.is_array() || static_cast<int>(row.size()) != cols) {
      throw ParseError("field '" + field + "' row " + std::to_string(r) + " must have " +
                       std::to_string(cols) + " entries");
    }
    for (int c = 0; c < cols; ++c) {
      const Json& v = row[static_cast<std::size_t>(c)];
      if (!v.is_number()) throw ParseError("field '" + field + "' has a non-numeric entry");
      m(r, c) = v.get<double>();
    }
  }
  return m;
}

TripleDocument parse_triple_document(const Json& j) {
  if (!j.is_object()) throw ParseError("triple document must be a JSON object");
  TripleDocument doc;
  doc.n = require_int(j, "n");
  if (doc.n < 1) throw ParseError("field 'n' must be positive");
  doc.g_basis = matrix_list(j, "g_basis", doc.n);
  doc.gamma = matrix_list(j, "gamma", doc.n);
  if (static_cast<int>(doc.gamma.size()) != doc.n) {
    throw ParseError("field 'gamma' must list " + std::to_string(doc.n) + " matrices");
  }
  const Json& omega = require(j, "omega");
  if (!omega.is_array()) throw ParseError("field 'omega' must be an array");
  for (std::size_t k = 0; k < omega.size(); ++k) {
    const std::string where = "omega[" + std::to_string(k) + "].";
    const Json& e = omega[k];
    TripleDocument::OmegaEntry entry;
    const Json& i = require(e, "i", where);
    const Json& jj = require(e, "j", where);
    if (!i.is_number_integer() || !jj.is_number_integer()) {
      throw ParseError("field '" + where + "i/j' must be integers");
    }
    entry.i = i.get<int>();
    entry.j = jj.get<int>();
    if (entry.i < 1 || entry.j > doc.n || entry.i >= entry.j) {
      throw ParseError("field '" + where + "i/j' must satisfy 1 <= i < j <= n");
    }
    entry.value = matrix_from_json(require(e, "value", where), doc.n, doc.n, where + "value");
    doc.omega.push_back(std::move(entry));
  }
  if (j.contains("closed")) {
    if (!j.at("closed").is_boolean()) throw ParseError("field 'closed' must be a boolean");
    doc.closed = j.at("closed").get<bool>();
  }
  if (j.contains("tolerance")) {
    const Json& t = j.at("tolerance");
    if (!t.is_number() || !(t.get<double>() > 0.0)) throw ParseError("field 'tolerance' must be a positive number");
    doc.tolerance = t.get<double>();
  }
  return doc;
}

Json to_json(const TripleDocument& doc) {
  Json j;
  j["n"] = doc.n;
  Json g = Json::array();
  for (const auto& m : doc.g_basis) g.push_back(matrix_to_json(m));
  j["g_basis"] = std::move(g);
  Json gamma = Json::array();
  for (const auto& m : doc.gamma) gamma.push_back(matrix_to_json(m));
  j["gamma"] = std::move(gamma);
  Json omega = Json::array();
  for (const auto& e : doc.omega) {
    Json entry;
    entry["i"] = e.i;
    entry["j"] = e.j;
    entry["value"] = matrix_to_json(e.value);
    omega.push_back(std::move(entry));
  }
  j["omega"] = std::move(omega);
  if (doc.closed) j["closed"] = *doc.closed;
  if (doc.tolerance) j["tolerance"] = *doc.tolerance;
  return j;
}

TripleDocument document_from_triple(const CartanTriple& t, std::optional<double> tolerance) {
  TripleDocument doc;
  doc.n = t.n();
  doc.g_basis = t.g().basis();
  doc.gamma = t.gamma_table();
  for (int i = 0; i < t.n(); ++i) {
    for (int j = i + 1; j < t.n(); ++j) {
      const Matrix& v = t.omega_table()[static_cast<std::size_t>(pair_index(t.n(), i, j))];
      if (v.isZero(0.0)) continue;
      doc.omega.push_back({i + 1, j + 1, v});
    }
  }
  doc.closed = t.closed();
  doc.tolerance = tolerance;
  return doc;
}

CartanTriple to_triple(const TripleDocument& doc, double tol) {
  const int n = doc.n;
  for (std::size_t k = 0; k < doc.g_basis.size(); ++k) {
    const double r = skew_residual(doc.g_basis[k]);
    if (r > tol) throw ValidationError("g_basis[" + std::to_string(k) + "] not skew-symmetric", r);
  }
  for (std::size_t k = 0; k < doc.gamma.size(); ++k) {
    const double r = skew_residual(doc.gamma[k]);
    if (r > tol) throw ValidationError("gamma[" + std::to_string(k) + "] not skew-symmetric", r);
  }
  std::vector<Matrix> omega(static_cast<std::size_t>(n * (n - 1) / 2), Matrix::Zero(n, n));
  std::set<int> seen;
  for (std::size_t k = 0; k < doc.omega.size(); ++k) {
    const auto& e = doc.omega[k];
    const int p = pair_index(n, e.i - 1, e.j - 1);
    if (!seen.insert(p).second) {
      throw ParseError("omega[" + std::to_string(k) + "] repeats the pair (" + std::to_string(e.i) +
                       "," + std::to_string(e.j) + ")");
    }
    const double r = skew_residual(e.value);
    if (r > tol) throw ValidationError("omega[" + std::to_string(k) + "].value not skew-symmetric", r);
    omega[static_cast<std::size_t>(p)] = e.value;
  }
  Subspace g(n, doc.g_basis, tol);
  const Subspace g_perp = ortho_complement(g);
  for (std::size_t k = 0; k < doc.gamma.size(); ++k) {
    const double r = g_perp.distance(doc.gamma[k]);
    if (r > tol * std::max(1.0, doc.gamma[k].norm())) {
      throw ValidationError("gamma[" + std::to_string(k) + "] not in g-perp", r);
    }
  }
  for (std::size_t k = 0; k < doc.omega.size(); ++k) {
    const double r = g.distance(doc.omega[k].value);
    if (r > tol * std::max(1.0, doc.omega[k].value.norm())) {
      throw ValidationError("omega[" + std::to_string(k) + "].value not in g", r);
    }
  }
  return CartanTriple(std::move(g), doc.gamma, std::move(omega), doc.closed, tol);
}

Json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open '" + path.string() + "'");
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError("'" + path.string() + "' is not valid JSON: " + e.what());
  }
}

CartanTriple parse_triple_file(const std::filesystem::path& path, double default_tol,
                               std::optional<double>* tolerance) {
  const TripleDocument doc = parse_triple_document(read_json_file(path));
  if (tolerance) *tolerance = doc.tolerance;
  return to_triple(doc, doc.tolerance.value_or(default_tol));
}

StructureConstants constants_from_json(const Json& j) {
  const int m = require_int(j, "dim");
  if (m < 0) throw ParseError("field 'dim' must be non-negative");
  const Json& c = require(j, "c");
  if (!c.is_array() || static_cast<int>(c.size()) != m) {
    throw ParseError("field 'c' must be a " + std::to_string(m) + "x" + std::to_string(m) + "x" +
                     std::to_string(m) + " array");
  }
  StructureConstants out(m);
  for (int i = 0; i < m; ++i) {
    const Matrix slice = matrix_from_json(c[static_cast<std::size_t>(i)], m, m, "c[" + std::to_string(i) + "]");
    for (int a = 0; a < m; ++a)
      for (int b = 0; b < m; ++b) out(i, a, b) = slice(a, b);
  }
  return out;
}

Json to_json(const StructureConstants& c) {
  Json j;
  j["dim"] = c.dim();
  Json arr = Json::array();
  for (int i = 0; i < c.dim(); ++i) {
    Matrix slice(c.dim(), c.dim());
    for (int a = 0; a < c.dim(); ++a)
      for (int b = 0; b < c.dim(); ++b) slice(a, b) = c(i, a, b);
    arr.push_back(matrix_to_json(slice));
  }
  j["c"] = std::move(arr);
  return j;
}

Subspace subspace_from_json(const Json& j, double tol) {
  const int n = require_int(j, "n");
  if (n < 1) throw ParseError("field 'n' must be positive");
  return Subspace(n, matrix_list(j, "basis", n), tol);
}

Json to_json(const AlgebraFingerprint& fp) {
  Json j;
  j["dim"] = fp.dim;
  j["killing_signature"] = {fp.killing.positive, fp.killing.negative, fp.killing.zero};
  j["center_dim"] = fp.center_dim;
  j["derived_dim"] = fp.derived_dim;
  j["unimodular"] = fp.unimodular;
  return j;
}

Json to_json(const std::vector<Check>& checks) {
  Json arr = Json::array();
  for (const Check& c : checks) {
    Json e;
    e["name"] = c.name;
    e["residual"] = c.residual;
    e["pass"] = c.pass;
    arr.push_back(std::move(e));
  }
  return arr;
}

Json make_report(const std::string& command, Json inputs, double tol, const std::vector<Check>& checks,
                 Json verdicts) {
  Json r;
  r["command"] = command;
  r["inputs"] = std::move(inputs);
  r["tolerance"] = tol;
  r["checks"] = to_json(checks);
  r["verdicts"] = std::move(verdicts);
  r["tool_version"] = kToolVersion;
  return r;
}

Json classification_report(const h3d::Params3D& p, double tol) {
  Json inputs;
  inputs["a"] = p.a;
  inputs["b"] = p.b;
  inputs["k"] = p.k;

  const h3d::Admissibility adm = h3d::admissible(p, tol);
  std::vector<Check> checks{{"product_constraint", adm.product_residual, adm.product_residual <= tol},
                            {"curvature_constraint", adm.curvature_residual, adm.curvature_residual <= tol}};
  const ValidationReport validation = validate_triple(h3d::build_triple_3d(p), tol);
  checks.insert(checks.end(), validation.checks.begin(), validation.checks.end());

  Json v;
  v["admissible"] = adm.admissible;
  if (!adm.admissible) {
    for (const char* key : {"ricci_eigenvalues", "scalar_curvature", "positive_sectional", "cartan_sphere",
                            "maximal", "paper_maximal", "isometry_dim", "topology", "enlargement",
                            "taller_algebra", "transverse_algebra"}) {
      v[key] = nullptr;
    }
    return make_report("classify3d", std::move(inputs), tol, checks, std::move(v));
  }

  const h3d::GeometryReport g = h3d::classify(p, tol);
  v["ricci_eigenvalues"] = {g.ricci_eigenvalues[0], g.ricci_eigenvalues[1], g.ricci_eigenvalues[2]};
  v["scalar_curvature"] = g.scalar_curvature;
  v["positive_sectional"] = g.positive_sectional;
  v["cartan_sphere"] = g.cartan_sphere;
  v["maximal"] = g.maximal;
  v["paper_maximal"] = g.paper_maximal;
  v["isometry_dim"] = g.isometry_dim;
  v["topology"] = h3d::to_string(g.topology);
  Json enl;
  enl["found"] = g.enlargement.has_value();
  enl["target_curvature"] = g.enlargement_curvature;
  if (g.enlargement) {
    enl["embedding_residual"] = g.enlargement->embedding_residual;
  } else {
    enl["embedding_residual"] = nullptr;
  }
  v["enlargement"] = std::move(enl);
  v["taller_algebra"] = to_json(g.taller_algebra);
  v["transverse_algebra"] = g.transverse_algebra ? to_json(*g.transverse_algebra) : Json(nullptr);
  return make_report("classify3d", std::move(inputs), tol, checks, std::move(v));
}

}  // namespace cartan::io
