#ifndef CARTAN_HOMOGENEOUS3D_HPP
#define CARTAN_HOMOGENEOUS3D_HPP

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "cartan/cartan_triple.hpp"

namespace cartan::h3d {

/// Parameters of the isotropy-R f_1^2 family in dimension three.
struct Params3D {
  double a = 0.0;
  double b = 0.0;
  double k = 0.0;
};

/// Omega_1(x,y) = (x1y2-x2y1) f_1^2 + (x1y3-x3y1) f_1^3 + (x2y3-x3y2) f_2^3.
Matrix omega1(const Vector& x, const Vector& y);
/// Omega_1 on basis pairs (1,2), (1,3), (2,3).
std::vector<Matrix> omega1_table();

/// (o(3), 0, c Omega_1): constant curvature c.
CartanTriple constant_curvature_triple(double c);

struct Admissibility {
  bool admissible = false;
  double product_residual = 0.0;    // |a b|
  double curvature_residual = 0.0;  // |a (k + a^2 + b^2)|
};

Admissibility admissible(const Params3D& p, double tol = kDefaultTolerance);

/// g = R f_1^2, Gamma(e1) = a f_1^3 + b f_2^3, Gamma(e2) = -b f_1^3 + a f_2^3,
/// Gamma(e3) = 0, Omega(e1,e2) = k f_1^2. Built for any (a, b, k).
CartanTriple build_triple_3d(const Params3D& p);

struct RicciForm {
  std::array<double, 3> eigenvalues{};  // ascending
  double scalar = 0.0;
};

/// Ricci spectrum {k+b^2, k+b^2, 2b^2} of the a = 0 branch. Throws
/// PreconditionError when a != 0.
RicciForm ricci_form(const Params3D& p, double tol = kDefaultTolerance);

struct TransverseSubalgebra {
  /// Columns e1, e2, 2b e3 + (k+b^2) f_1^2 in taller coordinates (f_1^2, e1, e2, e3).
  Matrix generators;
  StructureConstants constants{3};
  double closure_residual = 0.0;
  int transversality_rank = 0;
  AlgebraFingerprint algebra;
  /// Metric induced through evaluation at the origin: diag(1, 1, 4 b^2).
  Matrix induced_metric;
};

/// Requires a = 0 and b != 0 (ArgumentError otherwise).
TransverseSubalgebra transverse_subalgebra(const Params3D& p, double tol = kDefaultTolerance);

struct EnlargementSearch {
  std::optional<EnlargementWitness> witness;
  /// Curvature c of the (o(3), 0, c Omega_1) target tried.
  double target_curvature = 0.0;
  /// Outcome of the partial-order test against that target.
  std::vector<Check> checks;
  /// One-dimensional extensions of g inside g-perp that failed to close.
  int rejected_lines = 0;
};

/// Looks for an enlargement of a triple with g = R f_1^2 into a full o(3)
/// triple. Throws ArgumentError for any other isotropy.
EnlargementSearch enlarge_3d(const CartanTriple& t, double tol = kDefaultTolerance);

enum class Topology { euclidean_space, sphere_cross_line, three_sphere };
const char* to_string(Topology t);

struct GeometryReport {
  Params3D params;
  Admissibility admissibility;
  std::array<double, 3> ricci_eigenvalues{};
  double scalar_curvature = 0.0;
  bool positive_sectional = false;
  bool cartan_sphere = false;
  bool maximal = false;
  /// b != 0, b^2 != k > -b^2, taken literally.
  bool paper_maximal = false;
  int isometry_dim = 4;
  Topology topology = Topology::euclidean_space;
  std::optional<EnlargementWitness> enlargement;
  double enlargement_curvature = 0.0;
  std::optional<AlgebraFingerprint> transverse_algebra;
  AlgebraFingerprint taller_algebra;
};

/// Throws PreconditionError for inadmissible parameters.
GeometryReport classify(const Params3D& p, double tol = kDefaultTolerance);

}  // namespace cartan::h3d

#endif  // CARTAN_HOMOGENEOUS3D_HPP
