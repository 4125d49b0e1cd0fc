#include "cartan/lie_core.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "cartan/errors.hpp"

namespace cartan {

namespace {

void require_same_shape(const Matrix& a, const Matrix& b, const char* op) {
  if (a.rows() != b.rows() || a.cols() != b.cols() || a.rows() != a.cols()) {
    throw ArgumentError(std::string(op) + ": dimension mismatch (" + std::to_string(a.rows()) +
                        "x" + std::to_string(a.cols()) + " vs " + std::to_string(b.rows()) + "x" +
                        std::to_string(b.cols()) + ")");
  }
}

Vector flatten(const Matrix& m) { return Eigen::Map<const Vector>(m.data(), m.size()); }

}  // namespace

bool all_finite(const Matrix& m) { return m.allFinite(); }

bool is_skew(const Matrix& m, double tol) {
  return m.rows() == m.cols() && (m + m.transpose()).cwiseAbs().maxCoeff() <= tol;
}

Matrix basis_e(int n, int i, int j) {
  if (n < 1 || i < 1 || i > n || j < 1 || j > n) {
    throw ArgumentError("basis_e: index out of range (n=" + std::to_string(n) +
                        ", i=" + std::to_string(i) + ", j=" + std::to_string(j) + ")");
  }
  Matrix m = Matrix::Zero(n, n);
  m(j - 1, i - 1) = 1.0;
  return m;
}

Matrix basis_f(int n, int j, int i) {
  if (j >= i) {
    throw ArgumentError("basis_f: requires j < i (got j=" + std::to_string(j) +
                        ", i=" + std::to_string(i) + ")");
  }
  return basis_e(n, i, j) - basis_e(n, j, i);
}

std::vector<Matrix> o_basis(int n) {
  std::vector<Matrix> out;
  out.reserve(static_cast<std::size_t>(n * (n - 1) / 2));
  for (int j = 1; j <= n; ++j) {
    for (int i = j + 1; i <= n; ++i) {
      out.push_back(basis_f(n, j, i));
    }
  }
  return out;
}

Matrix commutator(const Matrix& a, const Matrix& b) {
  require_same_shape(a, b, "commutator");
  return a * b - b * a;
}

double trace_inner(const Matrix& a, const Matrix& b) {
  require_same_shape(a, b, "trace_inner");
  // tr(AB) = sum_ij A_ij B_ji
  return -0.5 * a.cwiseProduct(b.transpose()).sum();
}

Vector skew_coordinates(const Matrix& x) {
  const int n = static_cast<int>(x.rows());
  Vector out(n * (n - 1) / 2);
  int idx = 0;
  for (int j = 0; j < n; ++j) {
    for (int i = j + 1; i < n; ++i) {
      out(idx++) = 0.5 * (x(j, i) - x(i, j));
    }
  }
  return out;
}

Matrix skew_from_coordinates(int n, const Vector& coords) {
  if (coords.size() != n * (n - 1) / 2) {
    throw ArgumentError("skew_from_coordinates: expected " + std::to_string(n * (n - 1) / 2) +
                        " coordinates, got " + std::to_string(coords.size()));
  }
  Matrix m = Matrix::Zero(n, n);
  int idx = 0;
  for (int j = 0; j < n; ++j) {
    for (int i = j + 1; i < n; ++i) {
      m(j, i) = coords(idx);
      m(i, j) = -coords(idx);
      ++idx;
    }
  }
  return m;
}

int numerical_rank(const Matrix& m, double tol) {
  if (m.size() == 0) return 0;
  Eigen::JacobiSVD<Matrix> svd(m);
  const auto& s = svd.singularValues();
  if (s.size() == 0) return 0;
  const double cut = tol * std::max(1.0, s(0));
  int r = 0;
  for (Eigen::Index i = 0; i < s.size(); ++i) {
    if (s(i) > cut) ++r;
  }
  return r;
}

// ---------------------------------------------------------------------------
// Subspace

namespace {

Matrix coordinate_columns(int n, const std::vector<Matrix>& basis) {
  Matrix b(n * (n - 1) / 2, static_cast<Eigen::Index>(basis.size()));
  for (std::size_t k = 0; k < basis.size(); ++k) {
    b.col(static_cast<Eigen::Index>(k)) = skew_coordinates(basis[k]);
  }
  return b;
}

}  // namespace

Subspace::Subspace(int n, std::vector<Matrix> basis, double tol) : n_(n), basis_(std::move(basis)) {
  if (n < 1) throw ArgumentError("Subspace: dimension must be positive");
  for (std::size_t k = 0; k < basis_.size(); ++k) {
    const Matrix& x = basis_[k];
    if (x.rows() != n || x.cols() != n) {
      throw ArgumentError("Subspace: basis[" + std::to_string(k) + "] is not " +
                          std::to_string(n) + "x" + std::to_string(n));
    }
    if (!x.allFinite()) {
      throw ValidationError("Subspace: basis[" + std::to_string(k) + "] has non-finite entries",
                            std::numeric_limits<double>::infinity());
    }
    const double skew_res = (x + x.transpose()).cwiseAbs().maxCoeff();
    if (skew_res > tol) {
      throw ValidationError("Subspace: basis[" + std::to_string(k) + "] not skew-symmetric",
                            skew_res);
    }
  }
  if (basis_.empty()) return;
  const Matrix cols = coordinate_columns(n, basis_);
  if (numerical_rank(cols, tol) < cols.cols()) {
    throw ValidationError("Subspace: basis is linearly dependent", 0.0);
  }
  Eigen::HouseholderQR<Matrix> qr(cols);
  const Matrix q = qr.householderQ() * Matrix::Identity(cols.rows(), cols.cols());
  orthonormal_.reserve(basis_.size());
  for (Eigen::Index k = 0; k < q.cols(); ++k) {
    orthonormal_.push_back(skew_from_coordinates(n, q.col(k)));
  }
}

Matrix Subspace::projector() const {
  const int m = ambient_dim();
  Matrix p = Matrix::Zero(m, m);
  for (const auto& u : orthonormal_) {
    const Vector c = skew_coordinates(u);
    p += c * c.transpose();
  }
  return p;
}

Vector Subspace::coordinates(const Matrix& x) const {
  if (basis_.empty()) return Vector(0);
  const Matrix cols = coordinate_columns(n_, basis_);
  return cols.colPivHouseholderQr().solve(skew_coordinates(x));
}

double Subspace::distance(const Matrix& x) const {
  Matrix rest = x;
  for (const auto& u : orthonormal_) rest -= trace_inner(x, u) * u;
  return std::sqrt(std::max(0.0, trace_inner(rest, rest)));
}

bool Subspace::contains(const Matrix& x, double tol) const { return distance(x) <= tol; }

Subspace ortho_complement(const Subspace& g) {
  const int n = g.n();
  const int m = g.ambient_dim();
  if (g.dim() == 0) return Subspace::full(n);
  if (g.dim() == m) return Subspace::zero(n);
  // Complement of the orthonormal columns via a full QR.
  Matrix cols(m, g.dim());
  for (int k = 0; k < g.dim(); ++k) {
    cols.col(k) = skew_coordinates(g.orthonormal_basis()[static_cast<std::size_t>(k)]);
  }
  Eigen::HouseholderQR<Matrix> qr(cols);
  const Matrix q = qr.householderQ();
  std::vector<Matrix> out;
  for (int k = g.dim(); k < m; ++k) out.push_back(skew_from_coordinates(n, q.col(k)));
  return Subspace(n, std::move(out));
}

std::pair<Matrix, Matrix> project(const Matrix& x, const Subspace& g) {
  if (x.rows() != g.n() || x.cols() != g.n()) {
    throw ArgumentError("project: matrix is not " + std::to_string(g.n()) + "x" +
                        std::to_string(g.n()));
  }
  const double skew_res = (x + x.transpose()).cwiseAbs().maxCoeff();
  if (skew_res > kDefaultTolerance * std::max(1.0, x.cwiseAbs().maxCoeff())) {
    throw ValidationError("project: input not skew-symmetric", skew_res);
  }
  Matrix in_g = Matrix::Zero(g.n(), g.n());
  for (const auto& u : g.orthonormal_basis()) in_g += trace_inner(x, u) * u;
  return {in_g, x - in_g};
}

bool same_span(const Subspace& a, const Subspace& b, double tol) {
  if (a.n() != b.n() || a.dim() != b.dim()) return false;
  for (const auto& u : a.orthonormal_basis()) {
    if (b.distance(u) > tol) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// StructureConstants

StructureConstants::StructureConstants(int dim)
    : dim_(dim), c_(static_cast<std::size_t>(dim) * dim * dim, 0.0) {
  if (dim < 0) throw ArgumentError("StructureConstants: negative dimension");
}

void StructureConstants::set_bracket(int j, int k, const Vector& value) {
  if (value.size() != dim_) throw ArgumentError("set_bracket: wrong vector length");
  for (int i = 0; i < dim_; ++i) {
    (*this)(i, j, k) = value(i);
    (*this)(i, k, j) = -value(i);
  }
}

Vector StructureConstants::bracket(int j, int k) const {
  Vector v(dim_);
  for (int i = 0; i < dim_; ++i) v(i) = (*this)(i, j, k);
  return v;
}

Vector StructureConstants::bracket(const Vector& x, const Vector& y) const {
  if (x.size() != dim_ || y.size() != dim_) throw ArgumentError("bracket: wrong vector length");
  Vector v = Vector::Zero(dim_);
  for (int j = 0; j < dim_; ++j) {
    if (x(j) == 0.0) continue;
    for (int k = 0; k < dim_; ++k) {
      if (y(k) == 0.0) continue;
      for (int i = 0; i < dim_; ++i) v(i) += x(j) * y(k) * (*this)(i, j, k);
    }
  }
  return v;
}

Matrix StructureConstants::ad(int j) const {
  Matrix m(dim_, dim_);
  for (int i = 0; i < dim_; ++i) {
    for (int k = 0; k < dim_; ++k) m(i, k) = (*this)(i, j, k);
  }
  return m;
}

double StructureConstants::antisymmetry_residual() const {
  double worst = 0.0;
  for (int i = 0; i < dim_; ++i) {
    for (int j = 0; j < dim_; ++j) {
      for (int k = 0; k < dim_; ++k) {
        worst = std::max(worst, std::abs((*this)(i, j, k) + (*this)(i, k, j)));
      }
    }
  }
  return worst;
}

StructureConstants StructureConstants::scaled(double s) const {
  StructureConstants out(dim_);
  for (std::size_t t = 0; t < c_.size(); ++t) out.c_[t] = s * c_[t];
  return out;
}

StructureConstants StructureConstants::change_basis(const Matrix& columns) const {
  if (columns.rows() != dim_ || columns.cols() != dim_) {
    throw ArgumentError("change_basis: expected a square matrix of size " + std::to_string(dim_));
  }
  Eigen::FullPivLU<Matrix> lu(columns);
  if (!lu.isInvertible()) throw ArgumentError("change_basis: singular basis change");
  StructureConstants out(dim_);
  for (int a = 0; a < dim_; ++a) {
    for (int b = a + 1; b < dim_; ++b) {
      const Vector v = bracket(Vector(columns.col(a)), Vector(columns.col(b)));
      out.set_bracket(a, b, lu.solve(v));
    }
  }
  return out;
}

double StructureConstants::max_abs() const {
  double m = 0.0;
  for (double v : c_) m = std::max(m, std::abs(v));
  return m;
}

StructureConstants structure_constants(const std::vector<Matrix>& basis, double tol) {
  const int m = static_cast<int>(basis.size());
  StructureConstants out(m);
  if (m == 0) return out;
  const Eigen::Index n = basis.front().rows();
  Matrix cols(n * n, m);
  for (int k = 0; k < m; ++k) {
    if (basis[static_cast<std::size_t>(k)].rows() != n ||
        basis[static_cast<std::size_t>(k)].cols() != n) {
      throw ArgumentError("structure_constants: basis matrices differ in dimension");
    }
    cols.col(k) = flatten(basis[static_cast<std::size_t>(k)]);
  }
  if (numerical_rank(cols, tol) < m) {
    throw ArgumentError("structure_constants: basis is linearly dependent");
  }
  const auto solver = cols.colPivHouseholderQr();
  double worst = 0.0;
  for (int j = 0; j < m; ++j) {
    for (int k = j + 1; k < m; ++k) {
      const Vector v = flatten(commutator(basis[static_cast<std::size_t>(j)],
                                          basis[static_cast<std::size_t>(k)]));
      const Vector coeff = solver.solve(v);
      worst = std::max(worst, (cols * coeff - v).norm() / std::max(1.0, v.norm()));
      out.set_bracket(j, k, coeff);
    }
  }
  if (worst > tol) {
    throw NotClosedError("structure_constants: not closed under bracket (worst residual " +
                             std::to_string(worst) + ")",
                         worst);
  }
  return out;
}

double jacobi_residual(const StructureConstants& c) {
  const int m = c.dim();
  double worst = 0.0;
  Vector jac(m);
  for (int x = 0; x < m; ++x) {
    for (int y = 0; y < m; ++y) {
      for (int z = 0; z < m; ++z) {
        // [[x,y],z] + [[y,z],x] + [[z,x],y]
        for (int l = 0; l < m; ++l) {
          double s = 0.0;
          for (int p = 0; p < m; ++p) {
            s += c(p, x, y) * c(l, p, z) + c(p, y, z) * c(l, p, x) + c(p, z, x) * c(l, p, y);
          }
          jac(l) = s;
        }
        worst = std::max(worst, jac.norm());
      }
    }
  }
  return worst;
}

StructureConstants subalgebra_constants(const StructureConstants& c, const Matrix& generators,
                                        double* residual, double tol) {
  if (generators.rows() != c.dim()) {
    throw ArgumentError("subalgebra_constants: generator length does not match algebra");
  }
  const int s = static_cast<int>(generators.cols());
  if (numerical_rank(generators, tol) < s) {
    throw ArgumentError("subalgebra_constants: generators are linearly dependent");
  }
  StructureConstants out(s);
  const auto solver = generators.colPivHouseholderQr();
  double worst = 0.0;
  for (int a = 0; a < s; ++a) {
    for (int b = a + 1; b < s; ++b) {
      const Vector v = c.bracket(Vector(generators.col(a)), Vector(generators.col(b)));
      const Vector coeff = solver.solve(v);
      worst = std::max(worst, (generators * coeff - v).norm());
      out.set_bracket(a, b, coeff);
    }
  }
  if (residual) *residual = worst;
  if (worst > tol) {
    throw NotClosedError("subalgebra_constants: span not closed under bracket (worst residual " +
                             std::to_string(worst) + ")",
                         worst);
  }
  return out;
}

Matrix killing_form(const StructureConstants& c) {
  const int m = c.dim();
  std::vector<Matrix> ads;
  ads.reserve(static_cast<std::size_t>(m));
  for (int a = 0; a < m; ++a) ads.push_back(c.ad(a));
  Matrix k(m, m);
  for (int a = 0; a < m; ++a) {
    for (int b = a; b < m; ++b) {
      k(a, b) = k(b, a) = (ads[static_cast<std::size_t>(a)] * ads[static_cast<std::size_t>(b)]).trace();
    }
  }
  return k;
}

AlgebraFingerprint fingerprint(const StructureConstants& c, double tol) {
  const double jac = jacobi_residual(c);
  if (jac > tol) {
    throw PreconditionError("fingerprint: not a Lie algebra (Jacobi residual " +
                            std::to_string(jac) + ")");
  }
  const int m = c.dim();
  AlgebraFingerprint fp;
  fp.dim = m;
  if (m == 0) return fp;

  const Matrix k = killing_form(c);
  Eigen::SelfAdjointEigenSolver<Matrix> eig(k, Eigen::EigenvaluesOnly);
  const Vector& ev = eig.eigenvalues();
  const double cut = kEigenTolerance * std::max(1.0, ev.cwiseAbs().maxCoeff());
  for (Eigen::Index i = 0; i < ev.size(); ++i) {
    if (ev(i) > cut) {
      ++fp.killing.positive;
    } else if (ev(i) < -cut) {
      ++fp.killing.negative;
    } else {
      ++fp.killing.zero;
    }
  }

  // x is central iff sum_a x_a c(i, a, j) = 0 for all (i, j).
  Matrix central(m * m, m);
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < m; ++j) {
      for (int a = 0; a < m; ++a) central(i * m + j, a) = c(i, a, j);
    }
  }
  fp.center_dim = m - numerical_rank(central, tol);

  Matrix derived(m, m * m);
  for (int j = 0; j < m; ++j) {
    for (int kk = 0; kk < m; ++kk) derived.col(j * m + kk) = c.bracket(j, kk);
  }
  fp.derived_dim = numerical_rank(derived, tol);

  const double scale = std::max(1.0, c.max_abs());
  for (int a = 0; a < m; ++a) {
    if (std::abs(c.ad(a).trace()) > tol * scale) {
      fp.unimodular = false;
      break;
    }
  }
  return fp;
}

}  // namespace cartan
