#ifndef CARTAN_FRAMES_HPP
#define CARTAN_FRAMES_HPP

#include <array>
#include <vector>

#include "cartan/lie_core.hpp"

namespace cartan {

/// theta^i_j = sum_k gamma(i, j, k) theta^k, skew in (i, j).
class ConnectionCoefficients {
 public:
  explicit ConnectionCoefficients(int n)
      : n_(n), v_(static_cast<std::size_t>(n) * n * n, 0.0) {}
  int n() const { return n_; }
  double operator()(int i, int j, int k) const { return v_[idx(i, j, k)]; }
  double& operator()(int i, int j, int k) { return v_[idx(i, j, k)]; }

 private:
  std::size_t idx(int i, int j, int k) const {
    return (static_cast<std::size_t>(i) * n_ + j) * n_ + k;
  }
  int n_;
  std::vector<double> v_;
};

/// R(i, j, k, r): component i of R(E_k, E_r) E_j in an orthonormal frame.
class CurvatureTensor {
 public:
  explicit CurvatureTensor(int n)
      : n_(n), v_(static_cast<std::size_t>(n) * n * n * n, 0.0) {}
  int n() const { return n_; }
  double operator()(int i, int j, int k, int r) const { return v_[idx(i, j, k, r)]; }
  double& operator()(int i, int j, int k, int r) { return v_[idx(i, j, k, r)]; }

  /// max |R(i,j,k,r) + R(i,j,r,k)|
  double skew_last_pair_residual() const;
  /// max |R(i,j,k,r) + R(j,i,k,r)|
  double skew_first_pair_residual() const;

  CurvatureTensor scaled(double s) const;
  double max_abs_difference(const CurvatureTensor& other) const;
  double max_abs() const;
  const std::vector<double>& data() const { return v_; }

 private:
  std::size_t idx(int i, int j, int k, int r) const {
    return ((static_cast<std::size_t>(i) * n_ + j) * n_ + k) * n_ + r;
  }
  int n_;
  std::vector<double> v_;
};

/// max |C(i,j,k) + C(j,i,k)| together with lower-index antisymmetry.
double total_antisymmetry_residual(const StructureConstants& c);

/// Connection forms of an orthonormal invariant coframe whose structure
/// constants are totally antisymmetric: gamma(i,j,k) = C(i,j,k) / 2.
/// Throws ValidationError otherwise.
ConnectionCoefficients connection_coefficients(const StructureConstants& c,
                                               double tol = kDefaultTolerance);

/// R(i,j,k,r) = -1/4 sum_m C(m,i,j) C(m,k,r), the bi-invariant closed form
/// written with the sign convention of Cartan's text. Same precondition as
/// connection_coefficients.
CurvatureTensor curvature_from_structure(const StructureConstants& c,
                                         double tol = kDefaultTolerance);

/// Global sign relating curvature_from_structure to the geometric tensor of
/// koszul_curvature, fixed on the unit three-sphere.
int structure_curvature_sign();

/// curvature_from_structure multiplied by structure_curvature_sign().
CurvatureTensor geometric_curvature_from_structure(const StructureConstants& c,
                                                   double tol = kDefaultTolerance);

/// Sectional curvatures of coordinate planes, K(a,b) = R(a,b,a,b).
Matrix sectional_curvatures(const CurvatureTensor& r);

struct RicciResult {
  Matrix ricci;
  Vector eigenvalues;  // ascending
};

/// Ric(j,k) = sum_i R(i,j,i,k). Throws ValidationError if not symmetric.
RicciResult ricci_from_curvature(const CurvatureTensor& r, double tol = kDefaultTolerance);

struct KoszulResult {
  CurvatureTensor tensor;
  Matrix sectional;
  RicciResult ricci;
  /// Structure constants in the Q-orthonormal frame the tensor refers to.
  StructureConstants orthonormal_constants;
};

/// Levi-Civita curvature of the left-invariant metric Q on the Lie algebra
/// with constants c. The frame is the Gram-Schmidt orthonormalization of the
/// given basis with respect to Q.
KoszulResult koszul_curvature(const StructureConstants& c, const Matrix& q,
                              double tol = kDefaultTolerance);

/// Rows are the coefficient vectors of sigma_1, sigma_2, sigma_3 at x.
struct Coframe3Sphere {
  Eigen::Matrix<double, 3, 4> rows;
};

/// Throws ArgumentError unless |x| = 1 within tolerance.
Coframe3Sphere sphere_coframe(const Eigen::Vector4d& x, double tol = kDefaultTolerance);

/// Constant matrices with sigma_i(x) = (A_i x)^T dx.
std::array<Eigen::Matrix4d, 3> sphere_generators();

/// Bracket constants of the vector fields V_i(x) = A_i x dual to the sigma
/// coframe.
StructureConstants sphere_structure_constants();

struct MilnorMetric {
  std::array<double, 3> lambda{};
  /// Coefficients of sigma_1^2, sigma_2^2, sigma_3^2.
  std::array<double, 3> coefficients{};
  bool positive_definite() const;
  Matrix gram() const;
};

struct MilnorResult {
  MilnorMetric metric;
  KoszulResult curvature;
};

/// Throws ArgumentError if some lambda_i is zero and ValidationError
/// ("not a Riemannian metric") if the resulting form is indefinite.
MilnorResult milnor_metric(const std::array<double, 3>& lambda);

}  // namespace cartan

#endif  // CARTAN_FRAMES_HPP
