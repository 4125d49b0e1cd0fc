// Numerical search for an orthogonal q with act_orthogonal(t1, q) == t2.

#include <cmath>
#include <limits>
#include <random>

#include "cartan/cartan_triple.hpp"
#include "cartan/errors.hpp"

namespace cartan {

namespace {

Matrix cayley(const Matrix& a) {
  const Eigen::Index n = a.rows();
  const Matrix id = Matrix::Identity(n, n);
  return (id - 0.5 * a).lu().solve(id + 0.5 * a);
}

Matrix reorthonormalize(const Matrix& q) {
  Eigen::JacobiSVD<Matrix> svd(q, Eigen::ComputeFullU | Eigen::ComputeFullV);
  return svd.matrixU() * svd.matrixV().transpose();
}

/// Haar-distributed orthogonal matrix with the requested determinant sign.
Matrix random_orthogonal(int n, std::mt19937_64& rng, bool negative_det) {
  std::normal_distribution<double> normal;
  Matrix g(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) g(i, j) = normal(rng);
  }
  Eigen::HouseholderQR<Matrix> qr(g);
  Matrix q = qr.householderQ();
  const Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int i = 0; i < n; ++i) {
    if (r(i, i) < 0) q.col(i) *= -1.0;
  }
  if ((q.determinant() < 0) != negative_det) q.col(0) *= -1.0;
  return q;
}

struct Objective {
  const CartanTriple& source;
  const CartanTriple& target;

  Vector residual(const Matrix& q) const {
    return triple_difference(act_orthogonal(source, q, 1e-8), target);
  }
};

struct LocalResult {
  Matrix q;
  double residual;
};

LocalResult descend(const Objective& f, Matrix q, const OrbitSearchOptions& opt) {
  const int n = static_cast<int>(q.rows());
  const int p = n * (n - 1) / 2;
  constexpr double h = 1e-6;
  Vector r = f.residual(q);
  double cost = r.squaredNorm();
  double mu = 1e-3;

  for (int it = 0; it < opt.max_iterations && std::sqrt(cost) > opt.tol; ++it) {
    Matrix jac(r.size(), p);
    for (int k = 0; k < p; ++k) {
      const Matrix a = skew_from_coordinates(n, h * Vector::Unit(p, k));
      jac.col(k) = (f.residual(q * cayley(a)) - f.residual(q * cayley(-a))) / (2 * h);
    }
    const Matrix jtj = jac.transpose() * jac;
    const Vector jtr = jac.transpose() * r;

    bool improved = false;
    for (int attempt = 0; attempt < 12; ++attempt) {
      Matrix damped = jtj;
      damped.diagonal().array() += mu * (1.0 + jtj.diagonal().array());
      const Vector step = damped.ldlt().solve(-jtr);
      const Matrix trial = reorthonormalize(q * cayley(skew_from_coordinates(n, step)));
      const Vector r_trial = f.residual(trial);
      const double c_trial = r_trial.squaredNorm();
      if (c_trial < cost) {
        q = trial;
        r = r_trial;
        const bool stalled = cost - c_trial <= 1e-30 + 1e-15 * cost;
        cost = c_trial;
        mu = std::max(mu / 3.0, 1e-12);
        improved = !stalled;
        break;
      }
      mu *= 4.0;
    }
    if (!improved) break;
  }
  return {q, std::sqrt(cost)};
}

}  // namespace

OrbitVerdict orbit_equivalent(const CartanTriple& t1, const CartanTriple& t2,
                              const OrbitSearchOptions& opt) {
  const int n = t1.n();
  if (t2.n() != n) throw ArgumentError("orbit_equivalent: dimension mismatch");

  OrbitVerdict verdict;
  if (t1.g().dim() != t2.g().dim()) {
    verdict.relation = OrbitRelation::distinct;
    verdict.residual = std::numeric_limits<double>::infinity();
    return verdict;
  }
  try {
    const double d = signature_distance(invariant_signature(t1, opt.tol), invariant_signature(t2, opt.tol));
    if (d > opt.signature_tol) {
      verdict.relation = OrbitRelation::distinct;
      verdict.residual = d;
      return verdict;
    }
  } catch (const PreconditionError&) {
    // Not a valid triple; invariants are unavailable, fall back to the search.
  } catch (const NotClosedError&) {
  }

  const Objective f{t1, t2};
  std::mt19937_64 rng(opt.seed);
  LocalResult best{Matrix::Identity(n, n), std::numeric_limits<double>::infinity()};
  for (int s = 0; s < opt.starts; ++s) {
    const Matrix q0 = s == 0 ? Matrix(Matrix::Identity(n, n)) : random_orthogonal(n, rng, s % 2 == 1);
    const LocalResult local = descend(f, q0, opt);
    if (local.residual < best.residual) best = local;
    if (best.residual <= opt.tol) break;
  }

  verdict.q = best.q;
  verdict.residual = best.residual;
  verdict.relation = best.residual <= opt.tol ? OrbitRelation::equivalent : OrbitRelation::undecided;
  return verdict;
}

}  // namespace cartan
