#ifndef CARTAN_LIE_CORE_HPP
#define CARTAN_LIE_CORE_HPP

#include <Eigen/Dense>
#include <array>
#include <utility>
#include <vector>

namespace cartan {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

/// Default tolerance for membership and residual checks.
inline constexpr double kDefaultTolerance = 1e-9;
/// Zero threshold for eigenvalue sign classification.
inline constexpr double kEigenTolerance = 1e-7;

bool all_finite(const Matrix& m);
bool is_skew(const Matrix& m, double tol = kDefaultTolerance);

/// Matrix unit e_j^i of gl(n): sends e_i to e_j and every other basis vector
/// to zero, i.e. a single 1 at (row j, column i). Indices are 1-based.
Matrix basis_e(int n, int i, int j);

/// Skew generator f_j^i = e_j^i - e_i^j of o(n), 1 <= j < i <= n (1-based).
Matrix basis_f(int n, int j, int i);

/// All f_j^i of o(n) in lexicographic (j, i) order: f_1^2, f_1^3, ..., f_{n-1}^n.
std::vector<Matrix> o_basis(int n);

Matrix commutator(const Matrix& a, const Matrix& b);

/// -1/2 tr(AB). Positive definite on o(n); the f-basis is orthonormal for it.
double trace_inner(const Matrix& a, const Matrix& b);

/// Coordinates of a skew matrix in the f-basis of o(n).
Vector skew_coordinates(const Matrix& x);
Matrix skew_from_coordinates(int n, const Vector& coords);

/// A linear subspace of o(n), stored with the basis as given plus an
/// orthonormal (trace_inner) basis used for projections.
class Subspace {
 public:
  /// Throws ValidationError on a non-skew or dependent basis.
  Subspace(int n, std::vector<Matrix> basis, double tol = kDefaultTolerance);

  static Subspace zero(int n) { return Subspace(n, {}); }
  static Subspace full(int n) { return Subspace(n, o_basis(n)); }

  int n() const { return n_; }
  int ambient_dim() const { return n_ * (n_ - 1) / 2; }
  int dim() const { return static_cast<int>(basis_.size()); }
  const std::vector<Matrix>& basis() const { return basis_; }
  const std::vector<Matrix>& orthonormal_basis() const { return orthonormal_; }

  /// Orthogonal projector on f-basis coordinates.
  Matrix projector() const;

  /// Coefficients of x in the given (not orthonormal) basis, least squares.
  Vector coordinates(const Matrix& x) const;

  /// Distance from x to the span.
  double distance(const Matrix& x) const;
  bool contains(const Matrix& x, double tol = kDefaultTolerance) const;

 private:
  int n_;
  std::vector<Matrix> basis_;
  std::vector<Matrix> orthonormal_;
};

Subspace ortho_complement(const Subspace& g);

/// Splits a skew x into its g-component and g-perp-component.
std::pair<Matrix, Matrix> project(const Matrix& x, const Subspace& g);

/// True when span(a) == span(b) at tolerance.
bool same_span(const Subspace& a, const Subspace& b, double tol = kDefaultTolerance);

/// Numerical rank from singular values, relative to max(1, sigma_max).
int numerical_rank(const Matrix& m, double tol = kDefaultTolerance);

/// c(i, j, k) is the b_i coefficient of [b_j, b_k]. Indices are 0-based.
class StructureConstants {
 public:
  explicit StructureConstants(int dim);

  int dim() const { return dim_; }
  double operator()(int i, int j, int k) const { return c_[index(i, j, k)]; }
  double& operator()(int i, int j, int k) { return c_[index(i, j, k)]; }

  /// Sets [b_j, b_k] = value and [b_k, b_j] = -value.
  void set_bracket(int j, int k, const Vector& value);
  Vector bracket(int j, int k) const;
  Vector bracket(const Vector& x, const Vector& y) const;

  /// Matrix of ad_{b_j} acting on coordinate vectors.
  Matrix ad(int j) const;

  double antisymmetry_residual() const;
  StructureConstants scaled(double s) const;

  /// Constants of the same algebra in the basis whose columns are given
  /// in the old coordinates. Throws ArgumentError if the change is singular.
  StructureConstants change_basis(const Matrix& columns) const;

  double max_abs() const;

 private:
  std::size_t index(int i, int j, int k) const {
    return (static_cast<std::size_t>(i) * dim_ + j) * dim_ + k;
  }
  int dim_;
  std::vector<double> c_;
};

/// Bracket table of a commutator-closed list of matrices. Throws
/// NotClosedError with the worst span residual otherwise.
StructureConstants structure_constants(const std::vector<Matrix>& basis,
                                       double tol = kDefaultTolerance);

/// Worst Euclidean norm of the Jacobiator over basis triples.
double jacobi_residual(const StructureConstants& c);

/// Constants of the subalgebra spanned by the columns of `generators`
/// (coordinates in the ambient basis). `residual` receives the worst distance
/// of a bracket from the span. Throws NotClosedError above tolerance.
StructureConstants subalgebra_constants(const StructureConstants& c, const Matrix& generators,
                                        double* residual = nullptr,
                                        double tol = kDefaultTolerance);

struct KillingSignature {
  int positive = 0;
  int negative = 0;
  int zero = 0;
  friend bool operator==(const KillingSignature&, const KillingSignature&) = default;
};

struct AlgebraFingerprint {
  int dim = 0;
  KillingSignature killing;
  int center_dim = 0;
  int derived_dim = 0;
  bool unimodular = true;
  friend bool operator==(const AlgebraFingerprint&, const AlgebraFingerprint&) = default;
};

Matrix killing_form(const StructureConstants& c);

/// Isomorphism invariants. Throws PreconditionError when the Jacobi residual
/// exceeds `tol`.
AlgebraFingerprint fingerprint(const StructureConstants& c, double tol = kDefaultTolerance);

}  // namespace cartan

#endif  // CARTAN_LIE_CORE_HPP
