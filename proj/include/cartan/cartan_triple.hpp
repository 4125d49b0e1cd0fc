#ifndef CARTAN_CARTAN_TRIPLE_HPP
#define CARTAN_CARTAN_TRIPLE_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "cartan/lie_core.hpp"

namespace cartan {

/// Position of the pair (i, j), i < j (0-based), in the lexicographic list
/// (0,1), (0,2), ..., (n-2,n-1).
int pair_index(int n, int i, int j);

/// A triple (g, Gamma, Omega-bar): g a subspace of o(n), Gamma a linear map
/// R^n -> g-perp given on the standard basis, Omega-bar an antisymmetric
/// bilinear map R^n x R^n -> g given on pairs i < j.
///
/// Construction checks shapes, that Gamma lands in g-perp and Omega-bar in g.
/// It does not check equivariance or Jacobi; that is validate_triple's job.
class CartanTriple {
 public:
  /// `omega_pairs` is indexed by pair_index; an empty vector means Omega-bar = 0.
  CartanTriple(Subspace g, std::vector<Matrix> gamma, std::vector<Matrix> omega_pairs = {},
               std::optional<bool> closed = std::nullopt, double tol = kDefaultTolerance);

  int n() const { return g_.n(); }
  const Subspace& g() const { return g_; }
  const Subspace& g_perp() const { return g_perp_; }

  const Matrix& gamma(int i) const { return gamma_[static_cast<std::size_t>(i)]; }
  const std::vector<Matrix>& gamma_table() const { return gamma_; }
  Matrix gamma(const Vector& x) const;

  /// Antisymmetric extension of the stored table; zero on the diagonal.
  Matrix omega_bar(int i, int j) const;
  Matrix omega_bar(const Vector& x, const Vector& y) const;
  const std::vector<Matrix>& omega_table() const { return omega_; }

  /// User-asserted closedness; never computed.
  std::optional<bool> closed() const { return closed_; }

 private:
  Subspace g_;
  Subspace g_perp_;
  std::vector<Matrix> gamma_;
  std::vector<Matrix> omega_;
  std::optional<bool> closed_;
};

struct Check {
  std::string name;
  double residual = 0.0;
  bool pass = false;
};

struct ValidationReport {
  std::vector<Check> checks;
  bool valid = false;
};

/// T(X,Y) = Gamma(Y)X - Gamma(X)Y.
Vector torsion(const CartanTriple& t, const Vector& x, const Vector& y);

/// Omega-bar(X,Y) minus the g-component of [Gamma(X), Gamma(Y)].
Matrix omega_tilde(const CartanTriple& t, const Vector& x, const Vector& y);

/// An element xi + X of g (+) R^n, with xi stored as a matrix.
struct TallerElement {
  Matrix xi;
  Vector x;
};

/// Taller bracket at the level of matrices and vectors:
/// [xi + X, eta + Y] = [xi, eta] - Omega~(X,Y) + xi(Y) - eta(X) - T(X,Y).
TallerElement taller_bracket(const CartanTriple& t, const TallerElement& u, const TallerElement& v);

/// The Lie algebra k = g (+) R^n. Coordinates list the g basis (as given in
/// the triple) first, then e_1..e_n.
struct TallerAlgebra {
  CartanTriple triple;
  StructureConstants constants;
  std::vector<Vector> torsion_table;       // by pair_index
  std::vector<Matrix> omega_tilde_table;   // by pair_index
  double jacobi = 0.0;

  int dim() const { return constants.dim(); }
  int g_dim() const { return triple.g().dim(); }
  Vector coordinates(const TallerElement& e) const;
  TallerElement element(const Vector& coords) const;
};

/// Throws NotClosedError ("g is not a subalgebra") when g is not closed under
/// the commutator.
TallerAlgebra build_taller(const CartanTriple& t, double tol = kDefaultTolerance);

/// Gamma and Omega-bar equivariance on basis pairs, g closure and Jacobi.
ValidationReport validate_triple(const CartanTriple& t, double tol = kDefaultTolerance);

/// Right O(n) action: g' = q^T g q, Gamma'(X) = q^T Gamma(qX) q,
/// Omega'(X,Y) = q^T Omega(qX,qY) q. Throws ArgumentError if q is not orthogonal.
CartanTriple act_orthogonal(const CartanTriple& t, const Matrix& q, double tol = kDefaultTolerance);

/// Residual vector between two triples: g projectors, Gamma and Omega tables.
Vector triple_difference(const CartanTriple& a, const CartanTriple& b);

struct EnlargementWitness {
  Subspace a_basis;
  double embedding_residual = 0.0;
  CartanTriple enlarged;
};

struct LeqResult {
  bool holds = false;
  std::vector<Check> checks;
  EnlargementWitness witness;
};

/// Decides t1 <= t2 through the subspace a of g2. Besides the span, Gamma and
/// Omega-bar component conditions it requires the inclusion
/// xi + X -> (xi + Gamma_a(X)) + X to be a homomorphism k1 -> k2.
/// Throws ArgumentError if a is not inside g1-perp.
LeqResult check_leq(const CartanTriple& t1, const CartanTriple& t2, const Subspace& a,
                    double tol = kDefaultTolerance);

struct InvariantSignature {
  int n = 0;
  int g_dim = 0;
  AlgebraFingerprint algebra;
  double gamma_norm2 = 0.0;
  double omega_norm2 = 0.0;
  std::vector<double> gamma_form_eigenvalues;  // ascending
};

InvariantSignature invariant_signature(const CartanTriple& t, double tol = kDefaultTolerance);

/// Largest difference between real entries, or +inf if integer entries differ.
double signature_distance(const InvariantSignature& a, const InvariantSignature& b);

enum class OrbitRelation { distinct, equivalent, undecided };

struct OrbitVerdict {
  OrbitRelation relation = OrbitRelation::undecided;
  Matrix q;                 // witness when equivalent
  double residual = 0.0;    // best ||act(t1,q) - t2|| found, or signature distance
};

struct OrbitSearchOptions {
  std::uint64_t seed = 0x5eed;
  int starts = 24;
  int max_iterations = 200;
  double tol = kDefaultTolerance;
  /// Signatures further apart than this are reported distinct.
  double signature_tol = 1e-7;
};

OrbitVerdict orbit_equivalent(const CartanTriple& t1, const CartanTriple& t2,
                              const OrbitSearchOptions& options = {});

const char* to_string(OrbitRelation r);

}  // namespace cartan

#endif  // CARTAN_CARTAN_TRIPLE_HPP
