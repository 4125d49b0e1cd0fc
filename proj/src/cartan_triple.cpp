#include "cartan/cartan_triple.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "cartan/errors.hpp"

namespace cartan {

namespace {

double skew_norm(const Matrix& m) { return std::sqrt(std::max(0.0, trace_inner(m, m))); }

double scaled(double tol, double magnitude) { return tol * std::max(1.0, magnitude); }

Vector unit(int n, int i) { return Vector::Unit(n, i); }

}  // namespace

int pair_index(int n, int i, int j) {
  if (i < 0 || j >= n || i >= j) {
    throw ArgumentError("pair_index: expected 0 <= i < j < n");
  }
  // pairs (0,*) come first: n-1 of them, then n-2 for i=1, ...
  return i * n - i * (i + 1) / 2 + (j - i - 1);
}

CartanTriple::CartanTriple(Subspace g, std::vector<Matrix> gamma, std::vector<Matrix> omega_pairs,
                           std::optional<bool> closed, double tol)
    : g_(std::move(g)),
      g_perp_(ortho_complement(g_)),
      gamma_(std::move(gamma)),
      omega_(std::move(omega_pairs)),
      closed_(closed) {
  const int n = g_.n();
  const std::size_t npairs = static_cast<std::size_t>(n * (n - 1) / 2);
  if (gamma_.size() != static_cast<std::size_t>(n)) {
    throw ArgumentError("CartanTriple: gamma needs " + std::to_string(n) + " matrices, got " +
                        std::to_string(gamma_.size()));
  }
  if (omega_.empty()) omega_.assign(npairs, Matrix::Zero(n, n));
  if (omega_.size() != npairs) {
    throw ArgumentError("CartanTriple: omega needs " + std::to_string(npairs) +
                        " pair values, got " + std::to_string(omega_.size()));
  }
  for (int i = 0; i < n; ++i) {
    const Matrix& m = gamma_[static_cast<std::size_t>(i)];
    const std::string name = "gamma[" + std::to_string(i) + "]";
    if (m.rows() != n || m.cols() != n) throw ArgumentError("CartanTriple: " + name + " has wrong shape");
    if (!m.allFinite()) {
      throw ValidationError("CartanTriple: " + name + " has non-finite entries",
                            std::numeric_limits<double>::infinity());
    }
    const double skew_res = (m + m.transpose()).cwiseAbs().maxCoeff();
    if (skew_res > scaled(tol, m.cwiseAbs().maxCoeff())) {
      throw ValidationError("CartanTriple: " + name + " not skew-symmetric", skew_res);
    }
    const double res = g_perp_.distance(m);
    if (res > scaled(tol, skew_norm(m))) {
      throw ValidationError("CartanTriple: " + name + " not in g-perp", res);
    }
  }
  for (std::size_t p = 0; p < npairs; ++p) {
    const Matrix& m = omega_[p];
    const std::string name = "omega[" + std::to_string(p) + "]";
    if (m.rows() != n || m.cols() != n) throw ArgumentError("CartanTriple: " + name + " has wrong shape");
    if (!m.allFinite()) {
      throw ValidationError("CartanTriple: " + name + " has non-finite entries",
                            std::numeric_limits<double>::infinity());
    }
    const double skew_res = (m + m.transpose()).cwiseAbs().maxCoeff();
    if (skew_res > scaled(tol, m.cwiseAbs().maxCoeff())) {
      throw ValidationError("CartanTriple: " + name + " not skew-symmetric", skew_res);
    }
    const double res = g_.distance(m);
    if (res > scaled(tol, skew_norm(m))) {
      throw ValidationError("CartanTriple: " + name + " not in g", res);
    }
  }
}

Matrix CartanTriple::gamma(const Vector& x) const {
  const int n = this->n();
  Matrix out = Matrix::Zero(n, n);
  for (int i = 0; i < n; ++i) {
    if (x(i) != 0.0) out += x(i) * gamma_[static_cast<std::size_t>(i)];
  }
  return out;
}

Matrix CartanTriple::omega_bar(int i, int j) const {
  const int n = this->n();
  if (i == j) return Matrix::Zero(n, n);
  if (i < j) return omega_[static_cast<std::size_t>(pair_index(n, i, j))];
  return -omega_[static_cast<std::size_t>(pair_index(n, j, i))];
}

Matrix CartanTriple::omega_bar(const Vector& x, const Vector& y) const {
  const int n = this->n();
  Matrix out = Matrix::Zero(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      const double w = x(i) * y(j) - x(j) * y(i);
      if (w != 0.0) out += w * omega_[static_cast<std::size_t>(pair_index(n, i, j))];
    }
  }
  return out;
}

Vector torsion(const CartanTriple& t, const Vector& x, const Vector& y) {
  return t.gamma(y) * x - t.gamma(x) * y;
}

Matrix omega_tilde(const CartanTriple& t, const Vector& x, const Vector& y) {
  const Matrix gg = commutator(t.gamma(x), t.gamma(y));
  return t.omega_bar(x, y) - project(gg, t.g()).first;
}

TallerElement taller_bracket(const CartanTriple& t, const TallerElement& u, const TallerElement& v) {
  TallerElement out;
  out.xi = commutator(u.xi, v.xi) - omega_tilde(t, u.x, v.x);
  out.x = u.xi * v.x - v.xi * u.x - torsion(t, u.x, v.x);
  return out;
}

Vector TallerAlgebra::coordinates(const TallerElement& e) const {
  const int gd = g_dim();
  const int n = triple.n();
  Vector out(gd + n);
  if (gd > 0) out.head(gd) = triple.g().coordinates(e.xi);
  out.tail(n) = e.x;
  return out;
}

TallerElement TallerAlgebra::element(const Vector& coords) const {
  const int gd = g_dim();
  const int n = triple.n();
  TallerElement e{Matrix::Zero(n, n), coords.tail(n)};
  for (int k = 0; k < gd; ++k) e.xi += coords(k) * triple.g().basis()[static_cast<std::size_t>(k)];
  return e;
}

TallerAlgebra build_taller(const CartanTriple& t, double tol) {
  const int n = t.n();
  const int gd = t.g().dim();
  const int dim = gd + n;

  StructureConstants g_consts(gd);
  try {
    g_consts = structure_constants(t.g().basis(), tol);
  } catch (const NotClosedError& e) {
    throw NotClosedError("g is not a subalgebra (worst residual " + std::to_string(e.residual()) + ")",
                         e.residual());
  }

  TallerAlgebra k{t, StructureConstants(dim), {}, {}, 0.0};
  const auto& gb = t.g().basis();

  // [xi_a, xi_b]
  for (int a = 0; a < gd; ++a) {
    for (int b = a + 1; b < gd; ++b) {
      Vector v = Vector::Zero(dim);
      v.head(gd) = g_consts.bracket(a, b);
      k.constants.set_bracket(a, b, v);
    }
  }
  // [xi_a, e_i] = xi_a(e_i)
  for (int a = 0; a < gd; ++a) {
    for (int i = 0; i < n; ++i) {
      Vector v = Vector::Zero(dim);
      v.tail(n) = gb[static_cast<std::size_t>(a)].col(i);
      k.constants.set_bracket(a, gd + i, v);
    }
  }
  // [e_i, e_j] = -T(e_i,e_j) - Omega~(e_i,e_j)
  const std::size_t npairs = static_cast<std::size_t>(n * (n - 1) / 2);
  k.torsion_table.resize(npairs);
  k.omega_tilde_table.resize(npairs);
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      const auto p = static_cast<std::size_t>(pair_index(n, i, j));
      const Vector tor = torsion(t, unit(n, i), unit(n, j));
      const Matrix om = omega_tilde(t, unit(n, i), unit(n, j));
      k.torsion_table[p] = tor;
      k.omega_tilde_table[p] = om;
      Vector v(dim);
      if (gd > 0) v.head(gd) = -t.g().coordinates(om);
      v.tail(n) = -tor;
      k.constants.set_bracket(gd + i, gd + j, v);
    }
  }
  k.jacobi = jacobi_residual(k.constants);
  return k;
}

ValidationReport validate_triple(const CartanTriple& t, double tol) {
  const int n = t.n();
  const auto& gb = t.g().basis();
  ValidationReport report;

  double gamma_res = 0.0;
  double omega_res = 0.0;
  for (const Matrix& xi : gb) {
    for (int i = 0; i < n; ++i) {
      const Vector ei = unit(n, i);
      const Matrix lhs = t.gamma(Vector(xi * ei));
      const Matrix rhs = commutator(xi, t.gamma(i));
      gamma_res = std::max(gamma_res, skew_norm(lhs - rhs));
      for (int j = i + 1; j < n; ++j) {
        const Vector ej = unit(n, j);
        const Matrix l = t.omega_bar(Vector(xi * ei), ej) + t.omega_bar(ei, Vector(xi * ej));
        const Matrix r = commutator(xi, t.omega_bar(i, j));
        omega_res = std::max(omega_res, skew_norm(l - r));
      }
    }
  }
  report.checks.push_back({"gamma_equivariance", gamma_res, gamma_res <= tol});
  report.checks.push_back({"omega_equivariance", omega_res, omega_res <= tol});

  try {
    const TallerAlgebra k = build_taller(t, tol);
    report.checks.push_back({"g_subalgebra", 0.0, true});
    report.checks.push_back({"jacobi", k.jacobi, k.jacobi <= tol});
  } catch (const NotClosedError& e) {
    report.checks.push_back({"g_subalgebra", e.residual(), false});
  }

  report.valid = std::all_of(report.checks.begin(), report.checks.end(),
                             [](const Check& c) { return c.pass; });
  return report;
}

CartanTriple act_orthogonal(const CartanTriple& t, const Matrix& q, double tol) {
  const int n = t.n();
  if (q.rows() != n || q.cols() != n) throw ArgumentError("act_orthogonal: q has wrong shape");
  const double orth = (q.transpose() * q - Matrix::Identity(n, n)).cwiseAbs().maxCoeff();
  if (!q.allFinite() || orth > tol) {
    throw ArgumentError("act_orthogonal: q is not orthogonal (residual " + std::to_string(orth) + ")");
  }
  const Matrix qt = q.transpose();

  std::vector<Matrix> g_basis;
  g_basis.reserve(t.g().basis().size());
  for (const Matrix& xi : t.g().basis()) g_basis.push_back(qt * xi * q);

  std::vector<Matrix> gamma;
  gamma.reserve(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) gamma.push_back(qt * t.gamma(Vector(q.col(i))) * q);

  std::vector<Matrix> omega(static_cast<std::size_t>(n * (n - 1) / 2));
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      omega[static_cast<std::size_t>(pair_index(n, i, j))] =
          qt * t.omega_bar(Vector(q.col(i)), Vector(q.col(j))) * q;
    }
  }
  return CartanTriple(Subspace(n, std::move(g_basis), std::max(tol, 1e-9)), std::move(gamma),
                      std::move(omega), t.closed(), std::max(tol, 1e-9));
}

Vector triple_difference(const CartanTriple& a, const CartanTriple& b) {
  const int n = a.n();
  if (b.n() != n) throw ArgumentError("triple_difference: dimension mismatch");
  const int m = n * (n - 1) / 2;
  const int npairs = m;
  Vector out(m * m + n * m + npairs * m);
  const Matrix dp = a.g().projector() - b.g().projector();
  out.head(m * m) = Eigen::Map<const Vector>(dp.data(), dp.size());
  int off = m * m;
  for (int i = 0; i < n; ++i) {
    out.segment(off, m) = skew_coordinates(a.gamma(i) - b.gamma(i));
    off += m;
  }
  for (int p = 0; p < npairs; ++p) {
    out.segment(off, m) = skew_coordinates(a.omega_table()[static_cast<std::size_t>(p)] -
                                           b.omega_table()[static_cast<std::size_t>(p)]);
    off += m;
  }
  return out;
}

// ---------------------------------------------------------------------------
// Partial order

LeqResult check_leq(const CartanTriple& t1, const CartanTriple& t2, const Subspace& a, double tol) {
  const int n = t1.n();
  if (t2.n() != n || a.n() != n) throw ArgumentError("check_leq: dimension mismatch");
  for (const Matrix& u : a.orthonormal_basis()) {
    const double in_g = skew_norm(project(u, t1.g()).first);
    if (in_g > tol) {
      throw ArgumentError("check_leq: a is not contained in g1-perp (residual " +
                          std::to_string(in_g) + ")");
    }
  }

  LeqResult out{false, {}, EnlargementWitness{a, 0.0, t2}};

  // (i) g2 = g1 (+) a
  double span_res = 0.0;
  if (t1.g().dim() + a.dim() != t2.g().dim()) {
    span_res = std::abs(t1.g().dim() + a.dim() - t2.g().dim());
  } else {
    for (const Matrix& u : t1.g().orthonormal_basis()) span_res = std::max(span_res, t2.g().distance(u));
    for (const Matrix& u : a.orthonormal_basis()) span_res = std::max(span_res, t2.g().distance(u));
  }
  out.checks.push_back({"span_decomposition", span_res, span_res <= tol});

  // (ii) g2-perp component of Gamma1 equals Gamma2
  double gamma_res = 0.0;
  for (int i = 0; i < n; ++i) {
    const Matrix perp = project(t1.gamma(i), t2.g()).second;
    gamma_res = std::max(gamma_res, skew_norm(perp - t2.gamma(i)));
  }
  out.checks.push_back({"gamma_components", gamma_res, gamma_res <= tol});

  // (iii) g1 component of Omega2 equals Omega1
  double omega_res = 0.0;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      const Matrix comp = project(t2.omega_bar(i, j), t1.g()).first;
      omega_res = std::max(omega_res, skew_norm(comp - t1.omega_bar(i, j)));
    }
  }
  out.checks.push_back({"omega_components", omega_res, omega_res <= tol});

  // (iv) iota(xi + X) = (xi + Gamma_a(X)) + X is a homomorphism k1 -> k2
  double hom_res = 0.0;
  {
    auto gamma_a = [&](const Vector& x) {
      const Matrix g = t1.gamma(x);
      Matrix out_a = Matrix::Zero(n, n);
      for (const Matrix& u : a.orthonormal_basis()) out_a += trace_inner(g, u) * u;
      return out_a;
    };
    auto iota = [&](const TallerElement& e) { return TallerElement{e.xi + gamma_a(e.x), e.x}; };

    std::vector<TallerElement> basis;
    for (const Matrix& xi : t1.g().basis()) basis.push_back({xi, Vector::Zero(n)});
    for (int i = 0; i < n; ++i) basis.push_back({Matrix::Zero(n, n), unit(n, i)});

    for (std::size_t p = 0; p < basis.size(); ++p) {
      for (std::size_t q = p + 1; q < basis.size(); ++q) {
        const TallerElement lhs = iota(taller_bracket(t1, basis[p], basis[q]));
        const TallerElement rhs = taller_bracket(t2, iota(basis[p]), iota(basis[q]));
        const double r = std::sqrt(std::max(0.0, trace_inner(lhs.xi - rhs.xi, lhs.xi - rhs.xi)) +
                                   (lhs.x - rhs.x).squaredNorm());
        hom_res = std::max(hom_res, r);
      }
    }
  }
  out.checks.push_back({"inclusion_homomorphism", hom_res, hom_res <= tol});
  out.witness.embedding_residual = hom_res;

  out.holds = std::all_of(out.checks.begin(), out.checks.end(), [](const Check& c) { return c.pass; });
  return out;
}

// ---------------------------------------------------------------------------
// Invariants

InvariantSignature invariant_signature(const CartanTriple& t, double tol) {
  const int n = t.n();
  InvariantSignature s;
  s.n = n;
  s.g_dim = t.g().dim();
  s.algebra = fingerprint(build_taller(t, tol).constants, tol);
  Matrix form = Matrix::Zero(n, n);
  for (int i = 0; i < n; ++i) {
    s.gamma_norm2 += trace_inner(t.gamma(i), t.gamma(i));
    form += t.gamma(i).transpose() * t.gamma(i);
  }
  for (const Matrix& m : t.omega_table()) s.omega_norm2 += trace_inner(m, m);
  Eigen::SelfAdjointEigenSolver<Matrix> eig(form, Eigen::EigenvaluesOnly);
  for (Eigen::Index i = 0; i < eig.eigenvalues().size(); ++i) {
    s.gamma_form_eigenvalues.push_back(eig.eigenvalues()(i));
  }
  return s;
}

double signature_distance(const InvariantSignature& a, const InvariantSignature& b) {
  if (a.n != b.n || a.g_dim != b.g_dim || !(a.algebra == b.algebra) ||
      a.gamma_form_eigenvalues.size() != b.gamma_form_eigenvalues.size()) {
    return std::numeric_limits<double>::infinity();
  }
  double d = std::max(std::abs(a.gamma_norm2 - b.gamma_norm2), std::abs(a.omega_norm2 - b.omega_norm2));
  for (std::size_t i = 0; i < a.gamma_form_eigenvalues.size(); ++i) {
    d = std::max(d, std::abs(a.gamma_form_eigenvalues[i] - b.gamma_form_eigenvalues[i]));
  }
  return d;
}

const char* to_string(OrbitRelation r) {
  switch (r) {
    case OrbitRelation::distinct:
      return "distinct";
    case OrbitRelation::equivalent:
      return "equivalent";
    case OrbitRelation::undecided:
      return "undecided";
  }
  return "undecided";
}

}  // namespace cartan
