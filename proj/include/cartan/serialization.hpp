#ifndef CARTAN_SERIALIZATION_HPP
#define CARTAN_SERIALIZATION_HPP

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "cartan/cartan_triple.hpp"
#include "cartan/homogeneous3d.hpp"

namespace cartan::io {

using Json = nlohmann::ordered_json;

inline constexpr const char* kToolVersion = "0.1.0";

/// On-disk form of a triple. Matrices are row-major nested arrays, omega
/// indices are 1-based with i < j.
struct TripleDocument {
  struct OmegaEntry {
    int i = 0;
    int j = 0;
    Matrix value;
  };
  int n = 0;
  std::vector<Matrix> g_basis;
  std::vector<Matrix> gamma;
  std::vector<OmegaEntry> omega;
  std::optional<bool> closed;
  std::optional<double> tolerance;
};

Json matrix_to_json(const Matrix& m);
/// Throws ParseError naming `field` unless `j` is an rows x cols numeric array.
Matrix matrix_from_json(const Json& j, int rows, int cols, const std::string& field);

TripleDocument parse_triple_document(const Json& j);
Json to_json(const TripleDocument& doc);

TripleDocument document_from_triple(const CartanTriple& t, std::optional<double> tolerance = std::nullopt);

/// Validates the document's invariants (skewness, Gamma in g-perp, Omega in g),
/// throwing ValidationError with the offending field name.
CartanTriple to_triple(const TripleDocument& doc, double tol = kDefaultTolerance);

Json read_json_file(const std::filesystem::path& path);

/// Reads and validates a triple file. `tolerance` receives the document's
/// tolerance if present.
CartanTriple parse_triple_file(const std::filesystem::path& path, double default_tol = kDefaultTolerance,
                               std::optional<double>* tolerance = nullptr);

/// {"dim": m, "c": [[[...]]]} with c[i][j][k] the b_i coefficient of [b_j, b_k].
StructureConstants constants_from_json(const Json& j);
Json to_json(const StructureConstants& c);

/// {"n": n, "basis": [matrix, ...]}
Subspace subspace_from_json(const Json& j, double tol = kDefaultTolerance);

Json to_json(const AlgebraFingerprint& fp);
Json to_json(const std::vector<Check>& checks);

/// Report skeleton: command, inputs, tolerance, checks, verdicts, tool_version.
Json make_report(const std::string& command, Json inputs, double tol, const std::vector<Check>& checks,
                 Json verdicts);

/// Classification record as it appears in classify3d and sweep3d output.
/// Inadmissible parameters produce admissible = false and null verdicts.
Json classification_report(const h3d::Params3D& p, double tol);

}  // namespace cartan::io

#endif  // CARTAN_SERIALIZATION_HPP
