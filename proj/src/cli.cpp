#include "cartan/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <map>
#include <ostream>
#include <sstream>

#include "cartan/errors.hpp"
#include "cartan/frames.hpp"

namespace cartan::cli {

using io::Json;

double environment_tolerance() {
  const char* env = std::getenv("CARTAN_TOL");
  if (env == nullptr || *env == '\0') return kDefaultTolerance;
  char* end = nullptr;
  const double v = std::strtod(env, &end);
  if (end == env || *end != '\0' || !std::isfinite(v) || v <= 0.0) return kDefaultTolerance;
  return v;
}

namespace {

double parse_number(const std::string& s, const std::string& what) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    throw ParseError("invalid number '" + s + "' in " + what);
  }
  if (used != s.size() || !std::isfinite(v)) throw ParseError("invalid number '" + s + "' in " + what);
  return v;
}

std::vector<double> parse_list(const std::string& s, std::size_t count, const std::string& what) {
  std::vector<double> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(parse_number(item, what));
  if (out.size() != count) {
    throw ParseError(what + " needs " + std::to_string(count) + " comma-separated values");
  }
  return out;
}

std::vector<double> parse_axis(const std::string& body, const std::string& name) {
  std::vector<std::string> parts;
  std::stringstream ss(body);
  std::string item;
  while (std::getline(ss, item, ':')) parts.push_back(item);
  if (parts.size() == 1) return {parse_number(parts[0], "grid axis " + name)};
  if (parts.size() != 3) throw ParseError("grid axis " + name + " must be lo:step:hi");
  const double lo = parse_number(parts[0], "grid axis " + name);
  const double step = parse_number(parts[1], "grid axis " + name);
  const double hi = parse_number(parts[2], "grid axis " + name);
  if (!(step > 0.0) || hi < lo) throw ParseError("grid axis " + name + " needs step > 0 and hi >= lo");
  const auto count = static_cast<long>(std::floor((hi - lo) / step + 1e-9)) + 1;
  if (count > 100000) throw ParseError("grid axis " + name + " has too many points");
  std::vector<double> out;
  for (long i = 0; i < count; ++i) {
    // snap to 1e-12 so that e.g. -1 + 10 * 0.1 prints as 0
    double v = lo + static_cast<double>(i) * step;
    v = std::round(v * 1e12) / 1e12;
    out.push_back(v == 0.0 ? 0.0 : v);
  }
  return out;
}

std::string fmt6(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6g", v == 0.0 ? 0.0 : v);
  return buf;
}

std::string cell(const Json& v) {
  if (v.is_null()) return "-";
  if (v.is_boolean()) return v.get<bool>() ? "yes" : "no";
  if (v.is_number_integer()) return std::to_string(v.get<long long>());
  if (v.is_number()) return fmt6(v.get<double>());
  if (v.is_string()) return v.get<std::string>();
  return v.dump();
}

std::string render(const std::vector<std::vector<std::string>>& rows) {
  std::vector<std::size_t> width;
  for (const auto& r : rows) {
    if (width.size() < r.size()) width.resize(r.size(), 0);
    for (std::size_t c = 0; c < r.size(); ++c) width[c] = std::max(width[c], r[c].size());
  }
  std::string out;
  for (const auto& r : rows) {
    std::string line;
    for (std::size_t c = 0; c < r.size(); ++c) {
      if (c > 0) line += "  ";
      line += r[c];
      if (c + 1 < r.size()) line.append(width[c] - r[c].size(), ' ');
    }
    out += line + "\n";
  }
  return out;
}

std::string checks_table(const Json& report) {
  std::vector<std::vector<std::string>> rows{{"check", "residual", "pass"}};
  for (const Json& c : report.at("checks")) {
    rows.push_back({c.at("name").get<std::string>(), cell(c.at("residual")), cell(c.at("pass"))});
  }
  std::string out = render(rows);
  for (const auto& [key, value] : report.at("verdicts").items()) {
    if (value.is_primitive()) out += key + ": " + cell(value) + "\n";
  }
  return out;
}

Json tensor_to_json(const CurvatureTensor& r) {
  const int n = r.n();
  Json t = Json::array();
  for (int i = 0; i < n; ++i) {
    Json ti = Json::array();
    for (int j = 0; j < n; ++j) {
      Matrix m(n, n);
      for (int k = 0; k < n; ++k)
        for (int s = 0; s < n; ++s) m(k, s) = r(i, j, k, s);
      ti.push_back(io::matrix_to_json(m));
    }
    t.push_back(std::move(ti));
  }
  return t;
}

Json vector_to_json(const Vector& v) {
  Json a = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(v(i));
  return a;
}

Json finite_or_null(double v) { return std::isfinite(v) ? Json(v) : Json(nullptr); }

Json triple_inputs(const std::string& path, const CartanTriple& t, std::optional<double> file_tol) {
  Json in;
  in["file"] = std::filesystem::path(path).filename().string();
  in["triple"] = io::to_json(io::document_from_triple(t, file_tol));
  return in;
}

bool all_pass(const std::vector<Check>& checks) {
  return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.pass; });
}

struct Output {
  std::ostream& out;
  bool table;

  void report(const Json& r) const {
    if (table) {
      out << checks_table(r);
    } else {
      out << r.dump(2) << "\n";
    }
  }
};

// --- subcommands -----------------------------------------------------------

int cmd_verify(const std::string& file, double env_tol, const Output& o) {
  std::optional<double> file_tol;
  const CartanTriple t = io::parse_triple_file(file, env_tol, &file_tol);
  const double tol = file_tol.value_or(env_tol);
  const ValidationReport v = validate_triple(t, tol);
  Json verdicts;
  verdicts["valid"] = v.valid;
  verdicts["closed"] = t.closed() ? Json(*t.closed()) : Json(nullptr);
  verdicts["n"] = t.n();
  verdicts["g_dim"] = t.g().dim();
  o.report(io::make_report("verify", triple_inputs(file, t, file_tol), tol, v.checks, std::move(verdicts)));
  return v.valid ? kOk : kCheckFailed;
}

int cmd_taller(const std::string& file, double env_tol, const Output& o) {
  std::optional<double> file_tol;
  const CartanTriple t = io::parse_triple_file(file, env_tol, &file_tol);
  const double tol = file_tol.value_or(env_tol);
  const TallerAlgebra k = build_taller(t, tol);
  const int n = t.n();
  std::vector<Check> checks{{"jacobi", k.jacobi, k.jacobi <= tol}};

  Json verdicts;
  verdicts["dim"] = k.dim();
  Json labels = Json::array();
  for (int a = 0; a < k.g_dim(); ++a) labels.push_back("g" + std::to_string(a + 1));
  for (int i = 0; i < n; ++i) labels.push_back("e" + std::to_string(i + 1));
  verdicts["basis"] = std::move(labels);
  verdicts["constants"] = io::to_json(k.constants);
  Json tor = Json::array();
  Json omt = Json::array();
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      const auto p = static_cast<std::size_t>(pair_index(n, i, j));
      tor.push_back({{"i", i + 1}, {"j", j + 1}, {"value", vector_to_json(k.torsion_table[p])}});
      omt.push_back({{"i", i + 1}, {"j", j + 1}, {"value", io::matrix_to_json(k.omega_tilde_table[p])}});
    }
  }
  verdicts["torsion"] = std::move(tor);
  verdicts["omega_tilde"] = std::move(omt);
  verdicts["fingerprint"] = k.jacobi <= tol ? io::to_json(fingerprint(k.constants, tol)) : Json(nullptr);
  o.report(io::make_report("taller", triple_inputs(file, t, file_tol), tol, checks, std::move(verdicts)));
  return all_pass(checks) ? kOk : kCheckFailed;
}

int cmd_classify3d(const h3d::Params3D& p, double tol, const Output& o) {
  const Json r = io::classification_report(p, tol);
  if (o.table) {
    o.out << emit_table({r});
  } else {
    o.out << r.dump(2) << "\n";
  }
  return r.at("verdicts").at("admissible").get<bool>() ? kOk : kCheckFailed;
}

int cmd_sweep3d(const std::string& grid, const std::string& out_path, double tol, const Output& o) {
  const std::vector<h3d::Params3D> points = parse_grid(grid);
  std::vector<Json> reports(points.size());
  for (std::size_t i = 0; i < points.size(); ++i) reports[i] = io::classification_report(points[i], tol);

  Json all = Json::array();
  int admissible = 0;
  for (const Json& r : reports) {
    if (r.at("verdicts").at("admissible").get<bool>()) ++admissible;
    all.push_back(r);
  }
  std::ofstream file(out_path);
  if (!file) throw IoError("cannot write '" + out_path + "'");
  file << all.dump(2) << "\n";
  if (!file) throw IoError("failed writing '" + out_path + "'");

  if (o.table) {
    o.out << emit_table(reports);
  } else {
    Json inputs;
    inputs["grid"] = grid;
    inputs["out"] = std::filesystem::path(out_path).filename().string();
    Json verdicts;
    verdicts["points"] = static_cast<int>(points.size());
    verdicts["admissible_points"] = admissible;
    o.out << io::make_report("sweep3d", std::move(inputs), tol, {}, std::move(verdicts)).dump(2) << "\n";
  }
  return kOk;
}

int cmd_curvature(const std::string& constants_path, const std::string& metric_path, bool oracle,
                  double tol, const Output& o) {
  const StructureConstants c = io::constants_from_json(io::read_json_file(constants_path));
  const int m = c.dim();
  Json inputs;
  inputs["constants"] = io::to_json(c);

  const double anti = c.antisymmetry_residual();
  const double jac = jacobi_residual(c);
  std::vector<Check> checks{{"antisymmetry", anti, anti <= tol}, {"jacobi", jac, jac <= tol}};
  Json verdicts;

  if (!metric_path.empty() || oracle) {
    Matrix q = Matrix::Identity(m, m);
    if (!metric_path.empty()) {
      const Json mj = io::read_json_file(metric_path);
      if (!mj.is_object() || !mj.contains("metric")) throw ParseError("missing field 'metric'");
      q = io::matrix_from_json(mj.at("metric"), m, m, "metric");
      inputs["metric"] = io::matrix_to_json(q);
    }
    verdicts["method"] = "koszul";
    if (!all_pass(checks)) {
      o.report(io::make_report("curvature", std::move(inputs), tol, checks, std::move(verdicts)));
      return kCheckFailed;
    }
    const KoszulResult k = koszul_curvature(c, q, tol);
    verdicts["tensor"] = tensor_to_json(k.tensor);
    verdicts["sectional"] = io::matrix_to_json(k.sectional);
    verdicts["ricci"] = io::matrix_to_json(k.ricci.ricci);
    verdicts["ricci_eigenvalues"] = vector_to_json(k.ricci.eigenvalues);
    verdicts["scalar_curvature"] = k.ricci.eigenvalues.sum();
  } else {
    const double total = total_antisymmetry_residual(c);
    checks.push_back({"total_antisymmetry", total, total <= tol * std::max(1.0, c.max_abs())});
    verdicts["method"] = "structure_formula";
    if (!all_pass(checks)) {
      verdicts["error"] = "formula inapplicable: metric not bi-invariant in this frame";
      o.report(io::make_report("curvature", std::move(inputs), tol, checks, std::move(verdicts)));
      return kCheckFailed;
    }
    const CurvatureTensor r = curvature_from_structure(c, tol);
    const int sign = structure_curvature_sign();
    const CurvatureTensor geo = r.scaled(sign);
    const RicciResult ric = ricci_from_curvature(geo, tol);
    verdicts["tensor_cartan_convention"] = tensor_to_json(r);
    verdicts["geometric_sign"] = sign;
    verdicts["sectional"] = io::matrix_to_json(sectional_curvatures(geo));
    verdicts["ricci"] = io::matrix_to_json(ric.ricci);
    verdicts["ricci_eigenvalues"] = vector_to_json(ric.eigenvalues);
    verdicts["scalar_curvature"] = ric.eigenvalues.sum();
  }
  o.report(io::make_report("curvature", std::move(inputs), tol, checks, std::move(verdicts)));
  return kOk;
}

int cmd_reduce(const std::string& f1, const std::string& f2, const std::string& a_path, double env_tol,
               const Output& o) {
  std::optional<double> tol1;
  std::optional<double> tol2;
  const CartanTriple t1 = io::parse_triple_file(f1, env_tol, &tol1);
  const CartanTriple t2 = io::parse_triple_file(f2, env_tol, &tol2);
  const double tol = tol1.value_or(env_tol);
  const Subspace a = io::subspace_from_json(io::read_json_file(a_path), tol);
  const LeqResult leq = check_leq(t1, t2, a, tol);

  Json inputs;
  inputs["smaller"] = triple_inputs(f1, t1, tol1);
  inputs["larger"] = triple_inputs(f2, t2, tol2);
  Json basis = Json::array();
  for (const Matrix& m : a.basis()) basis.push_back(io::matrix_to_json(m));
  inputs["a_basis"] = std::move(basis);
  Json verdicts;
  verdicts["holds"] = leq.holds;
  verdicts["embedding_residual"] = leq.witness.embedding_residual;
  o.report(io::make_report("reduce", std::move(inputs), tol, leq.checks, std::move(verdicts)));
  return leq.holds ? kOk : kCheckFailed;
}

int cmd_compare(const std::string& f1, const std::string& f2, std::uint64_t seed, double env_tol,
                const Output& o) {
  std::optional<double> tol1;
  std::optional<double> tol2;
  const CartanTriple t1 = io::parse_triple_file(f1, env_tol, &tol1);
  const CartanTriple t2 = io::parse_triple_file(f2, env_tol, &tol2);
  const double tol = tol1.value_or(env_tol);
  OrbitSearchOptions opt;
  opt.seed = seed;
  opt.tol = tol;
  const OrbitVerdict v = orbit_equivalent(t1, t2, opt);

  Json inputs;
  inputs["first"] = triple_inputs(f1, t1, tol1);
  inputs["second"] = triple_inputs(f2, t2, tol2);
  inputs["seed"] = seed;
  std::vector<Check> checks;
  if (v.relation != OrbitRelation::distinct) {
    checks.push_back({"orbit_residual", v.residual, v.residual <= tol});
  }
  Json verdicts;
  verdicts["relation"] = to_string(v.relation);
  verdicts["residual"] = finite_or_null(v.residual);
  verdicts["q"] = v.relation == OrbitRelation::equivalent ? io::matrix_to_json(v.q) : Json(nullptr);
  o.report(io::make_report("compare", std::move(inputs), tol, checks, std::move(verdicts)));
  return v.relation == OrbitRelation::equivalent ? kOk : kCheckFailed;
}

int cmd_milnor(const std::string& lambda_text, double tol, const Output& o) {
  const std::vector<double> l = parse_list(lambda_text, 3, "--lambda");
  Json inputs;
  inputs["lambda"] = l;
  const MilnorResult r = milnor_metric({l[0], l[1], l[2]});
  Json verdicts;
  verdicts["coefficients"] = r.metric.coefficients;
  verdicts["ricci_eigenvalues"] = vector_to_json(r.curvature.ricci.eigenvalues);
  verdicts["scalar_curvature"] = r.curvature.ricci.eigenvalues.sum();
  verdicts["sectional"] = io::matrix_to_json(r.curvature.sectional);
  o.report(io::make_report("milnor", std::move(inputs), tol, {}, std::move(verdicts)));
  return kOk;
}

int cmd_sphere_frame(const std::string& point_text, double tol, const Output& o) {
  const std::vector<double> p = parse_list(point_text, 4, "--point");
  const Eigen::Vector4d x(p[0], p[1], p[2], p[3]);
  const Coframe3Sphere f = sphere_coframe(x, tol);
  const double gram = (f.rows * f.rows.transpose() - Eigen::Matrix3d::Identity()).cwiseAbs().maxCoeff();
  const double orth = (f.rows * x).cwiseAbs().maxCoeff();
  std::vector<Check> checks{{"gram_identity", gram, gram <= tol}, {"orthogonal_to_point", orth, orth <= tol}};
  Json inputs;
  inputs["point"] = p;
  Json verdicts;
  verdicts["rows"] = io::matrix_to_json(f.rows);
  o.report(io::make_report("sphere-frame", std::move(inputs), tol, checks, std::move(verdicts)));
  return all_pass(checks) ? kOk : kCheckFailed;
}

}  // namespace

std::vector<h3d::Params3D> parse_grid(const std::string& spec) {
  std::map<std::string, std::vector<double>> axes;
  std::stringstream ss(spec);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const auto eq = item.find('=');
    if (eq == std::string::npos) throw ParseError("grid entry '" + item + "' must be name=lo:step:hi");
    const std::string name = item.substr(0, eq);
    if (name != "a" && name != "b" && name != "k") throw ParseError("unknown grid axis '" + name + "'");
    if (axes.count(name)) throw ParseError("grid axis '" + name + "' given twice");
    axes[name] = parse_axis(item.substr(eq + 1), name);
  }
  for (const char* name : {"a", "b", "k"}) {
    if (!axes.count(name)) throw ParseError(std::string("grid axis '") + name + "' missing");
  }
  std::vector<h3d::Params3D> out;
  for (double a : axes["a"])
    for (double b : axes["b"])
      for (double k : axes["k"]) out.push_back({a, b, k});
  return out;
}

std::string emit_table(const std::vector<Json>& reports) {
  std::vector<std::vector<std::string>> rows{{"a", "b", "k", "admissible", "ricci1", "ricci2", "ricci3", "scalar",
                                              "sectional+", "cartan_sphere", "maximal", "isom_dim", "topology"}};
  for (const Json& r : reports) {
    if (!r.is_object() || !r.contains("command") || r.at("command") != "classify3d") {
      throw ArgumentError("emit_table: all reports must be classification records");
    }
    const Json& in = r.at("inputs");
    const Json& v = r.at("verdicts");
    const Json& ric = v.at("ricci_eigenvalues");
    std::vector<std::string> row{cell(in.at("a")), cell(in.at("b")), cell(in.at("k")), cell(v.at("admissible"))};
    for (std::size_t i = 0; i < 3; ++i) row.push_back(ric.is_null() ? "-" : cell(ric[i]));
    for (const char* key : {"scalar_curvature", "positive_sectional", "cartan_sphere", "maximal", "isometry_dim",
                            "topology"}) {
      row.push_back(cell(v.at(key)));
    }
    rows.push_back(std::move(row));
  }
  return render(rows);
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Cartan triples: validation, curvature and 3D classification", "cartan"};
  app.require_subcommand(1);
  app.fallthrough();
  std::string format = "json";
  app.add_option("--format", format, "Output format")->check(CLI::IsMember({"json", "table"}));

  std::string file, file2, grid, out_path, constants, metric, a_basis, lambda, point;
  double a = 0.0, b = 0.0, k = 0.0;
  bool oracle = false;
  std::uint64_t seed = 0x5eed;

  auto* verify = app.add_subcommand("verify", "Validate a triple file");
  verify->add_option("file", file)->required();
  auto* taller = app.add_subcommand("taller", "Assemble the taller Lie algebra of a triple file");
  taller->add_option("file", file)->required();
  auto* classify = app.add_subcommand("classify3d", "Classify one member of the 3D family");
  classify->add_option("--a", a)->required();
  classify->add_option("--b", b)->required();
  classify->add_option("--k", k)->required();
  auto* sweep = app.add_subcommand("sweep3d", "Classify a grid of the 3D family");
  sweep->add_option("--grid", grid, "a=lo:step:hi,b=lo:step:hi,k=lo:step:hi")->required();
  sweep->add_option("--out", out_path)->required();
  auto* curvature = app.add_subcommand("curvature", "Curvature of a left-invariant metric");
  curvature->add_option("--constants", constants)->required();
  curvature->add_option("--metric", metric);
  curvature->add_flag("--oracle", oracle, "Use the Koszul formula even without --metric");
  auto* reduce = app.add_subcommand("reduce", "Test the partial order between two triples");
  reduce->add_option("file1", file)->required();
  reduce->add_option("file2", file2)->required();
  reduce->add_option("--a-basis", a_basis)->required();
  auto* compare = app.add_subcommand("compare", "Search for an orthogonal change relating two triples");
  compare->add_option("file1", file)->required();
  compare->add_option("file2", file2)->required();
  compare->add_option("--seed", seed);
  auto* milnor = app.add_subcommand("milnor", "Curvature of a left-invariant metric on S^3");
  milnor->add_option("--lambda", lambda, "l1,l2,l3")->required();
  auto* sphere = app.add_subcommand("sphere-frame", "Sigma coframe of S^3 at a point");
  sphere->add_option("--point", point, "x1,x2,x3,x4")->required();

  std::vector<std::string> reversed(args.size() > 1 ? args.begin() + 1 : args.end(), args.end());
  std::reverse(reversed.begin(), reversed.end());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  const Output o{out, format == "table"};
  const double tol = environment_tolerance();
  try {
    if (verify->parsed()) return cmd_verify(file, tol, o);
    if (taller->parsed()) return cmd_taller(file, tol, o);
    if (classify->parsed()) return cmd_classify3d({a, b, k}, tol, o);
    if (sweep->parsed()) return cmd_sweep3d(grid, out_path, tol, o);
    if (curvature->parsed()) return cmd_curvature(constants, metric, oracle, tol, o);
    if (reduce->parsed()) return cmd_reduce(file, file2, a_basis, tol, o);
    if (compare->parsed()) return cmd_compare(file, file2, seed, tol, o);
    if (milnor->parsed()) return cmd_milnor(lambda, tol, o);
    if (sphere->parsed()) return cmd_sphere_frame(point, tol, o);
  } catch (const IoError& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << "\n";
    return kUsage;
  } catch (const ArgumentError& e) {
    err << "argument error: " << e.what() << "\n";
    return kUsage;
  } catch (const ValidationError& e) {
    err << "validation error: " << e.what() << " (residual " << e.residual() << ")\n";
    return kCheckFailed;
  } catch (const PreconditionError& e) {
    err << "check failed: " << e.what() << "\n";
    return kCheckFailed;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  }
  err << app.help();
  return kUsage;
}

}  // namespace cartan::cli
