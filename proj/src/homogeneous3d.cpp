#include "cartan/homogeneous3d.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "cartan/errors.hpp"

namespace cartan::h3d {

namespace {

const Matrix& f12() {
  static const Matrix m = basis_f(3, 1, 2);
  return m;
}
const Matrix& f13() {
  static const Matrix m = basis_f(3, 1, 3);
  return m;
}
const Matrix& f23() {
  static const Matrix m = basis_f(3, 2, 3);
  return m;
}

Subspace isotropy_line() { return Subspace(3, {f12()}); }

}  // namespace

Matrix omega1(const Vector& x, const Vector& y) {
  if (x.size() != 3 || y.size() != 3) throw ArgumentError("omega1: vectors must have length 3");
  return (x(0) * y(1) - x(1) * y(0)) * f12() + (x(0) * y(2) - x(2) * y(0)) * f13() +
         (x(1) * y(2) - x(2) * y(1)) * f23();
}

std::vector<Matrix> omega1_table() { return {f12(), f13(), f23()}; }

CartanTriple constant_curvature_triple(double c) {
  std::vector<Matrix> omega = omega1_table();
  for (auto& m : omega) m *= c;
  return CartanTriple(Subspace::full(3), {Matrix::Zero(3, 3), Matrix::Zero(3, 3), Matrix::Zero(3, 3)},
                      std::move(omega));
}

Admissibility admissible(const Params3D& p, double tol) {
  Admissibility out;
  out.product_residual = std::abs(p.a * p.b);
  out.curvature_residual = std::abs(p.a * (p.k + p.a * p.a + p.b * p.b));
  out.admissible = out.product_residual <= tol && out.curvature_residual <= tol;
  return out;
}

CartanTriple build_triple_3d(const Params3D& p) {
  std::vector<Matrix> gamma{p.a * f13() + p.b * f23(), -p.b * f13() + p.a * f23(), Matrix::Zero(3, 3)};
  std::vector<Matrix> omega{p.k * f12(), Matrix::Zero(3, 3), Matrix::Zero(3, 3)};
  return CartanTriple(isotropy_line(), std::move(gamma), std::move(omega));
}

RicciForm ricci_form(const Params3D& p, double tol) {
  if (std::abs(p.a) > tol) {
    throw PreconditionError("ricci_form: a != 0, use constant-curvature branch");
  }
  const double b2 = p.b * p.b;
  RicciForm r;
  r.eigenvalues = {p.k + b2, p.k + b2, 2.0 * b2};
  std::sort(r.eigenvalues.begin(), r.eigenvalues.end());
  r.scalar = 2.0 * p.k + 4.0 * b2;
  return r;
}

TransverseSubalgebra transverse_subalgebra(const Params3D& p, double tol) {
  if (std::abs(p.a) > tol) throw ArgumentError("transverse_subalgebra: requires a = 0");
  if (std::abs(p.b) <= tol) {
    throw ArgumentError("transverse_subalgebra: b = 0 gives no transverse subalgebra of this form");
  }
  const TallerAlgebra k = build_taller(build_triple_3d(p), tol);

  TransverseSubalgebra s;
  s.generators = Matrix::Zero(4, 3);
  s.generators(1, 0) = 1.0;
  s.generators(2, 1) = 1.0;
  s.generators(0, 2) = p.k + p.b * p.b;
  s.generators(3, 2) = 2.0 * p.b;

  try {
    s.constants = subalgebra_constants(k.constants, s.generators, &s.closure_residual, tol);
  } catch (const NotClosedError& e) {
    throw NotClosedError(std::string("transverse_subalgebra: internal consistency error: ") + e.what(),
                         e.residual());
  }

  Matrix with_g(4, 4);
  with_g << s.generators, Vector::Unit(4, 0);
  s.transversality_rank = numerical_rank(with_g, tol);
  s.algebra = fingerprint(s.constants, tol);
  s.induced_metric = Eigen::Vector3d(1.0, 1.0, 4.0 * p.b * p.b).asDiagonal();
  return s;
}

EnlargementSearch enlarge_3d(const CartanTriple& t, double tol) {
  if (t.n() != 3 || !same_span(t.g(), isotropy_line(), tol)) {
    throw ArgumentError("enlarge_3d: triple is not in the g = R f_1^2 family");
  }
  EnlargementSearch search;

  // A line a in g-perp never closes g (+) a: [f_1^2, a] is a rotated by a
  // right angle inside g-perp.
  constexpr int kSampledLines = 8;
  for (int s = 0; s < kSampledLines; ++s) {
    const double theta = std::numbers::pi * s / kSampledLines;
    const Matrix line = std::cos(theta) * f13() + std::sin(theta) * f23();
    try {
      structure_constants({f12(), line}, tol);
    } catch (const NotClosedError&) {
      ++search.rejected_lines;
    }
  }

  const Subspace extension(3, {f13(), f23()});
  const std::vector<Matrix> om1 = omega1_table();

  // Least-squares c from: g-component of c Omega_1(e_i,e_j) equals Omega(e_i,e_j).
  double num = 0.0;
  double den = 0.0;
  for (std::size_t p = 0; p < om1.size(); ++p) {
    const Matrix comp = project(om1[p], t.g()).first;
    num += trace_inner(comp, t.omega_table()[p]);
    den += trace_inner(comp, comp);
  }
  search.target_curvature = den > 0.0 ? num / den : 0.0;

  const CartanTriple target = constant_curvature_triple(search.target_curvature);
  LeqResult leq = check_leq(t, target, extension, tol);
  search.checks = leq.checks;
  if (leq.holds) search.witness = std::move(leq.witness);
  return search;
}

const char* to_string(Topology t) {
  switch (t) {
    case Topology::euclidean_space:
      return "euclidean_space";
    case Topology::sphere_cross_line:
      return "sphere_cross_line";
    case Topology::three_sphere:
      return "three_sphere";
  }
  return "euclidean_space";
}

GeometryReport classify(const Params3D& p, double tol) {
  GeometryReport r;
  r.params = p;
  r.admissibility = admissible(p, tol);
  if (!r.admissibility.admissible) {
    throw PreconditionError("classify: parameters violate a(k+a^2+b^2) = ab = 0");
  }
  const CartanTriple triple = build_triple_3d(p);
  r.taller_algebra = fingerprint(build_taller(triple, tol).constants, tol);

  EnlargementSearch search = enlarge_3d(triple, tol);
  r.enlargement_curvature = search.target_curvature;
  r.enlargement = std::move(search.witness);
  r.maximal = !r.enlargement.has_value();
  r.isometry_dim = r.enlargement ? 6 : 4;

  const double b2 = p.b * p.b;
  const bool a_zero = std::abs(p.a) <= tol;
  const bool b_zero = std::abs(p.b) <= tol;
  if (a_zero) {
    const RicciForm ric = ricci_form(p, tol);
    r.ricci_eigenvalues = ric.eigenvalues;
    r.scalar_curvature = ric.scalar;
  } else {
    // Enlargeable to constant curvature c = k = -a^2.
    const double c = r.enlargement ? r.enlargement_curvature : p.k;
    r.ricci_eigenvalues = {2.0 * c, 2.0 * c, 2.0 * c};
    r.scalar_curvature = 6.0 * c;
  }

  r.positive_sectional = r.ricci_eigenvalues[0] > tol;
  r.cartan_sphere = a_zero && !b_zero && std::abs(b2 - p.k) > tol && p.k > -b2 + tol;
  r.paper_maximal = !b_zero && std::abs(b2 - p.k) > tol && p.k > -b2 + tol;

  if (a_zero && !b_zero) {
    const TransverseSubalgebra s = transverse_subalgebra(p, tol);
    r.transverse_algebra = s.algebra;
    const bool compact = s.algebra.killing.negative == s.algebra.dim;
    r.topology = compact ? Topology::three_sphere : Topology::euclidean_space;
  } else if (a_zero && p.k > tol) {
    r.topology = Topology::sphere_cross_line;
  } else {
    r.topology = Topology::euclidean_space;
  }
  return r;
}

}  // namespace cartan::h3d
