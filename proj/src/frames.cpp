#include "cartan/frames.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "cartan/errors.hpp"

namespace cartan {

double CurvatureTensor::skew_last_pair_residual() const {
  double worst = 0.0;
  for (int i = 0; i < n_; ++i)
    for (int j = 0; j < n_; ++j)
      for (int k = 0; k < n_; ++k)
        for (int r = 0; r < n_; ++r)
          worst = std::max(worst, std::abs((*this)(i, j, k, r) + (*this)(i, j, r, k)));
  return worst;
}

double CurvatureTensor::skew_first_pair_residual() const {
  double worst = 0.0;
  for (int i = 0; i < n_; ++i)
    for (int j = 0; j < n_; ++j)
      for (int k = 0; k < n_; ++k)
        for (int r = 0; r < n_; ++r)
          worst = std::max(worst, std::abs((*this)(i, j, k, r) + (*this)(j, i, k, r)));
  return worst;
}

CurvatureTensor CurvatureTensor::scaled(double s) const {
  CurvatureTensor out(n_);
  for (std::size_t t = 0; t < v_.size(); ++t) out.v_[t] = s * v_[t];
  return out;
}

double CurvatureTensor::max_abs_difference(const CurvatureTensor& other) const {
  if (other.n_ != n_) throw ArgumentError("CurvatureTensor: dimension mismatch");
  double worst = 0.0;
  for (std::size_t t = 0; t < v_.size(); ++t) worst = std::max(worst, std::abs(v_[t] - other.v_[t]));
  return worst;
}

double CurvatureTensor::max_abs() const {
  double m = 0.0;
  for (double v : v_) m = std::max(m, std::abs(v));
  return m;
}

double total_antisymmetry_residual(const StructureConstants& c) {
  const int n = c.dim();
  double worst = c.antisymmetry_residual();
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) worst = std::max(worst, std::abs(c(i, j, k) + c(j, i, k)));
  return worst;
}

namespace {

void require_bi_invariant(const StructureConstants& c, double tol) {
  const double res = total_antisymmetry_residual(c);
  if (res > tol * std::max(1.0, c.max_abs())) {
    throw ValidationError(
        "formula inapplicable: metric not bi-invariant in this frame (antisymmetry residual " +
            std::to_string(res) + ")",
        res);
  }
}

}  // namespace

ConnectionCoefficients connection_coefficients(const StructureConstants& c, double tol) {
  require_bi_invariant(c, tol);
  const int n = c.dim();
  ConnectionCoefficients out(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) out(i, j, k) = 0.5 * c(i, j, k);
  return out;
}

CurvatureTensor curvature_from_structure(const StructureConstants& c, double tol) {
  require_bi_invariant(c, tol);
  const int n = c.dim();
  CurvatureTensor out(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        for (int r = 0; r < n; ++r) {
          double s = 0.0;
          for (int m = 0; m < n; ++m) s += c(m, i, j) * c(m, k, r);
          out(i, j, k, r) = -0.25 * s;
        }
  return out;
}

int structure_curvature_sign() {
  static const int sign = [] {
    const StructureConstants c = sphere_structure_constants();
    const CurvatureTensor formula = curvature_from_structure(c);
    const CurvatureTensor oracle = koszul_curvature(c, Matrix::Identity(3, 3)).tensor;
    return formula.max_abs_difference(oracle) <= formula.scaled(-1.0).max_abs_difference(oracle) ? 1 : -1;
  }();
  return sign;
}

CurvatureTensor geometric_curvature_from_structure(const StructureConstants& c, double tol) {
  return curvature_from_structure(c, tol).scaled(structure_curvature_sign());
}

Matrix sectional_curvatures(const CurvatureTensor& r) {
  const int n = r.n();
  Matrix k = Matrix::Zero(n, n);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      if (a != b) k(a, b) = r(a, b, a, b);
  return k;
}

RicciResult ricci_from_curvature(const CurvatureTensor& r, double tol) {
  const int n = r.n();
  const double scale = tol * std::max(1.0, r.max_abs());
  const double skew = std::max(r.skew_first_pair_residual(), r.skew_last_pair_residual());
  if (skew > scale) {
    throw ValidationError("tensor symmetries violated (pair skewness " + std::to_string(skew) + ")", skew);
  }
  Matrix ric = Matrix::Zero(n, n);
  for (int j = 0; j < n; ++j)
    for (int k = 0; k < n; ++k)
      for (int i = 0; i < n; ++i) ric(j, k) += r(i, j, i, k);
  const double asym = n == 0 ? 0.0 : (ric - ric.transpose()).cwiseAbs().maxCoeff();
  if (asym > scale) {
    throw ValidationError("tensor symmetries violated (Ricci asymmetry " + std::to_string(asym) + ")",
                          asym);
  }
  ric = 0.5 * (ric + ric.transpose());
  Eigen::SelfAdjointEigenSolver<Matrix> eig(ric, Eigen::EigenvaluesOnly);
  return {ric, eig.eigenvalues()};
}

KoszulResult koszul_curvature(const StructureConstants& c, const Matrix& q, double tol) {
  const int n = c.dim();
  if (q.rows() != n || q.cols() != n) throw ArgumentError("koszul_curvature: metric has wrong shape");
  if (!q.allFinite() || (q - q.transpose()).cwiseAbs().maxCoeff() > tol * std::max(1.0, q.cwiseAbs().maxCoeff())) {
    throw ArgumentError("koszul_curvature: metric is not symmetric");
  }
  Eigen::LLT<Matrix> llt(q);
  if (llt.info() != Eigen::Success) throw ArgumentError("koszul_curvature: metric is not positive-definite");
  {
    Eigen::SelfAdjointEigenSolver<Matrix> eig(q, Eigen::EigenvaluesOnly);
    if (eig.eigenvalues()(0) <= 0.0) throw ArgumentError("koszul_curvature: metric is not positive-definite");
  }
  const double jac = jacobi_residual(c);
  if (jac > tol * std::max(1.0, c.max_abs() * c.max_abs())) {
    throw PreconditionError("koszul_curvature: not a Lie algebra (Jacobi residual " + std::to_string(jac) + ")");
  }

  // Columns of P = L^{-T} are the Q-orthonormal frame (upper triangular, so
  // the frame is Gram-Schmidt of the given basis).
  const Matrix lower = llt.matrixL();
  const Matrix p = lower.transpose().triangularView<Eigen::Upper>().solve(Matrix::Identity(n, n));
  const StructureConstants e = c.change_basis(p);

  // nabla_{E_a} E_b = sum_c g(a, b, c) E_c with
  // g(a,b,c) = 1/2 (C(c,a,b) - C(a,b,c) + C(b,c,a)).
  std::vector<Matrix> nabla(static_cast<std::size_t>(n), Matrix::Zero(n, n));
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int cc = 0; cc < n; ++cc)
        nabla[static_cast<std::size_t>(a)](cc, b) = 0.5 * (e(cc, a, b) - e(a, b, cc) + e(b, cc, a));

  CurvatureTensor r(n);
  for (int k = 0; k < n; ++k) {
    for (int s = 0; s < n; ++s) {
      // R(E_k, E_s) = [nabla_k, nabla_s] - nabla_{[E_k, E_s]}
      Matrix op = nabla[static_cast<std::size_t>(k)] * nabla[static_cast<std::size_t>(s)] -
                  nabla[static_cast<std::size_t>(s)] * nabla[static_cast<std::size_t>(k)];
      for (int m = 0; m < n; ++m) op -= e(m, k, s) * nabla[static_cast<std::size_t>(m)];
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) r(i, j, k, s) = op(i, j);
    }
  }
  Matrix sectional = sectional_curvatures(r);
  RicciResult ric = ricci_from_curvature(r, std::max(tol, 1e-9));
  return {std::move(r), std::move(sectional), std::move(ric), e};
}

Coframe3Sphere sphere_coframe(const Eigen::Vector4d& x, double tol) {
  const double norm = x.norm();
  if (!x.allFinite() || std::abs(norm - 1.0) > tol) {
    throw ArgumentError("sphere_coframe: point is not on the unit sphere (|x| = " +
                        std::to_string(norm) + ")");
  }
  Coframe3Sphere f;
  const auto gens = sphere_generators();
  for (int i = 0; i < 3; ++i) f.rows.row(i) = (gens[static_cast<std::size_t>(i)] * x).transpose();
  return f;
}

std::array<Eigen::Matrix4d, 3> sphere_generators() {
  // sigma_1 = -x2 dx1 + x1 dx2 - x4 dx3 + x3 dx4
  // sigma_2 = -x3 dx1 + x4 dx2 + x1 dx3 - x2 dx4
  // sigma_3 = -x4 dx1 - x3 dx2 + x2 dx3 + x1 dx4
  Eigen::Matrix4d a1, a2, a3;
  a1 << 0, -1, 0, 0,
        1, 0, 0, 0,
        0, 0, 0, -1,
        0, 0, 1, 0;
  a2 << 0, 0, -1, 0,
        0, 0, 0, 1,
        1, 0, 0, 0,
        0, -1, 0, 0;
  a3 << 0, 0, 0, -1,
        0, 0, -1, 0,
        0, 1, 0, 0,
        1, 0, 0, 0;
  return {a1, a2, a3};
}

StructureConstants sphere_structure_constants() {
  const auto a = sphere_generators();
  // [V_i, V_j](x) = (A_j A_i - A_i A_j) x for linear fields V(x) = A x.
  Matrix cols(16, 3);
  for (int k = 0; k < 3; ++k) cols.col(k) = Eigen::Map<const Vector>(a[static_cast<std::size_t>(k)].data(), 16);
  const auto solver = cols.colPivHouseholderQr();
  StructureConstants c(3);
  for (int i = 0; i < 3; ++i) {
    for (int j = i + 1; j < 3; ++j) {
      const Eigen::Matrix4d br = a[static_cast<std::size_t>(j)] * a[static_cast<std::size_t>(i)] -
                                 a[static_cast<std::size_t>(i)] * a[static_cast<std::size_t>(j)];
      c.set_bracket(i, j, solver.solve(Eigen::Map<const Vector>(br.data(), 16)));
    }
  }
  return c;
}

bool MilnorMetric::positive_definite() const {
  return std::all_of(coefficients.begin(), coefficients.end(), [](double v) { return v > 0.0; });
}

Matrix MilnorMetric::gram() const {
  return Eigen::Vector3d(coefficients[0], coefficients[1], coefficients[2]).asDiagonal();
}

MilnorResult milnor_metric(const std::array<double, 3>& lambda) {
  for (double l : lambda) {
    if (l == 0.0 || !std::isfinite(l)) throw ArgumentError("milnor_metric: lambda entries must be nonzero");
  }
  MilnorMetric m;
  m.lambda = lambda;
  m.coefficients = {4.0 / (lambda[1] * lambda[2]), 4.0 / (lambda[0] * lambda[2]),
                    4.0 / (lambda[0] * lambda[1])};
  if (!m.positive_definite()) {
    const double worst = *std::min_element(m.coefficients.begin(), m.coefficients.end());
    throw ValidationError("not a Riemannian metric", worst);
  }
  return {m, koszul_curvature(sphere_structure_constants(), m.gram())};
}

}  // namespace cartan
