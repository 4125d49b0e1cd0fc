#include <gtest/gtest.h>

#include <random>

#include "cartan/cartan_triple.hpp"
#include "cartan/errors.hpp"
#include "cartan/homogeneous3d.hpp"
#include "oracles.hpp"

using namespace cartan;
using h3d::Params3D;

namespace {

const Matrix f12 = basis_f(3, 1, 2);
const Matrix f13 = basis_f(3, 1, 3);
const Matrix f23 = basis_f(3, 2, 3);

double max_diff(const StructureConstants& c, const oracle::Constants& o) {
  double m = 0.0;
  for (int i = 0; i < c.dim(); ++i)
    for (int j = 0; j < c.dim(); ++j)
      for (int k = 0; k < c.dim(); ++k) m = std::max(m, std::abs(c(i, j, k) - o.at(i, j, k)));
  return m;
}

const Check& find(const std::vector<Check>& checks, const std::string& name) {
  for (const Check& c : checks)
    if (c.name == name) return c;
  throw std::runtime_error("no check " + name);
}

Matrix random_orthogonal(int n, std::mt19937_64& rng) {
  std::normal_distribution<double> nd;
  Matrix a(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) a(i, j) = nd(rng);
  Eigen::HouseholderQR<Matrix> qr(a);
  Matrix q = qr.householderQ();
  const Matrix r = qr.matrixQR();
  for (int i = 0; i < n; ++i)
    if (r(i, i) < 0) q.col(i) *= -1.0;
  return q;
}

CartanTriple abelian(int n) { return CartanTriple(Subspace::zero(n), std::vector<Matrix>(static_cast<std::size_t>(n), Matrix::Zero(n, n))); }

}  // namespace

TEST(CartanTriple, RejectsGammaOutsidePerp) {
  std::vector<Matrix> gamma{f12, Matrix::Zero(3, 3), Matrix::Zero(3, 3)};
  EXPECT_THROW(CartanTriple(Subspace(3, {f12}), gamma), ValidationError);
}

TEST(CartanTriple, RejectsOmegaOutsideG) {
  std::vector<Matrix> gamma(3, Matrix::Zero(3, 3));
  std::vector<Matrix> omega{f13, Matrix::Zero(3, 3), Matrix::Zero(3, 3)};
  EXPECT_THROW(CartanTriple(Subspace(3, {f12}), gamma, omega), ValidationError);
}

TEST(CartanTriple, RejectsWrongArity) {
  EXPECT_THROW(CartanTriple(Subspace(3, {f12}), std::vector<Matrix>(2, Matrix::Zero(3, 3))), ArgumentError);
}

TEST(CartanTriple, OmegaExtendsByAntisymmetry) {
  const CartanTriple t = h3d::build_triple_3d({0, 1, 1});
  EXPECT_EQ((t.omega_bar(1, 0) + t.omega_bar(0, 1)).norm(), 0.0);
  EXPECT_EQ(t.omega_bar(2, 2).norm(), 0.0);
}

TEST(Validate, FamilyMemberWithAZero) {
  std::vector<Matrix> gamma{f23, -1.0 * f13, Matrix::Zero(3, 3)};
  std::vector<Matrix> omega{f12, Matrix::Zero(3, 3), Matrix::Zero(3, 3)};
  const ValidationReport r = validate_triple(CartanTriple(Subspace(3, {f12}), gamma, omega));
  EXPECT_TRUE(r.valid);
  for (const Check& c : r.checks) EXPECT_LE(c.residual, 1e-9) << c.name;
}

TEST(Validate, ProductConstraintViolated) {
  const ValidationReport r = validate_triple(h3d::build_triple_3d({1, 1, 0}));
  EXPECT_FALSE(r.valid);
  EXPECT_GE(find(r.checks, "jacobi").residual, 1e-3);
}

TEST(Validate, AbelianTriple) {
  const CartanTriple t = abelian(3);
  EXPECT_TRUE(validate_triple(t).valid);
  const TallerAlgebra k = build_taller(t);
  EXPECT_EQ(k.dim(), 3);
  EXPECT_EQ(k.constants.max_abs(), 0.0);
}

TEST(Validate, NonClosedGFailsSubalgebraCheck) {
  const CartanTriple t(Subspace(3, {f12, f13}), std::vector<Matrix>(3, Matrix::Zero(3, 3)));
  const ValidationReport r = validate_triple(t);
  EXPECT_FALSE(r.valid);
  EXPECT_FALSE(find(r.checks, "g_subalgebra").pass);
  EXPECT_THROW(build_taller(t), NotClosedError);
}

TEST(Validate, EquivarianceFailureDetected) {
  // Gamma(e1) = f13 alone is not f12-equivariant
  const CartanTriple t(Subspace(3, {f12}), {f13, Matrix::Zero(3, 3), Matrix::Zero(3, 3)});
  const ValidationReport r = validate_triple(t);
  EXPECT_FALSE(r.valid);
  EXPECT_FALSE(find(r.checks, "gamma_equivariance").pass);
}

TEST(Torsion, VanishesForZeroGamma) {
  const CartanTriple t(Subspace(3, {f12}), std::vector<Matrix>(3, Matrix::Zero(3, 3)), {f12, Matrix::Zero(3, 3), Matrix::Zero(3, 3)});
  std::mt19937_64 rng(1);
  std::normal_distribution<double> nd;
  for (int trial = 0; trial < 10; ++trial) {
    Vector x(3), y(3);
    for (int i = 0; i < 3; ++i) {
      x(i) = nd(rng);
      y(i) = nd(rng);
    }
    EXPECT_EQ(torsion(t, x, y).norm(), 0.0);
    EXPECT_NEAR((omega_tilde(t, x, y) - t.omega_bar(x, y)).norm(), 0.0, 1e-14);
  }
}

TEST(Torsion, MatchesDefinitionOnFamily) {
  const CartanTriple t = h3d::build_triple_3d({0, 1.5, 2});
  // T(e1, e2) = Gamma(e2) e1 - Gamma(e1) e2 = -1.5 f13 e1 - 1.5 f23 e2 = 3 e3
  const Vector v = torsion(t, Eigen::Vector3d::UnitX(), Eigen::Vector3d::UnitY());
  EXPECT_NEAR((v - Eigen::Vector3d(0, 0, 3.0)).norm(), 0.0, 1e-14);
}

TEST(OmegaTilde, FullGWithZeroGamma) {
  for (double c : {1.0, -2.0}) {
    const CartanTriple t = h3d::constant_curvature_triple(c);
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j)
        EXPECT_NEAR((omega_tilde(t, Vector::Unit(3, i), Vector::Unit(3, j)) -
                     c * h3d::omega1(Vector::Unit(3, i), Vector::Unit(3, j))).norm(),
                    0.0, 1e-14);
  }
}

TEST(BuildTaller, FamilyBracketsMatchHandExpansion) {
  for (auto [b, k] : {std::pair{1.0, 1.0}, {1.0, 2.0}, {-0.5, 3.0}, {2.0, -1.0}, {0.0, 0.7}}) {
    const TallerAlgebra alg = build_taller(h3d::build_triple_3d({0, b, k}));
    EXPECT_LE(max_diff(alg.constants, oracle::family_taller(b, k)), 1e-14) << b << " " << k;
  }
}

TEST(BuildTaller, ExplicitBracketsAtUnitParameters) {
  const TallerAlgebra alg = build_taller(h3d::build_triple_3d({0, 1, 1}));
  // basis (f12, e1, e2, e3)
  EXPECT_DOUBLE_EQ(alg.constants(3, 1, 2), -2.0);
  EXPECT_DOUBLE_EQ(alg.constants(0, 1, 2), -2.0);
  EXPECT_DOUBLE_EQ(alg.constants(2, 1, 3), 1.0);
  EXPECT_DOUBLE_EQ(alg.constants(1, 2, 3), -1.0);
  EXPECT_DOUBLE_EQ(alg.constants(2, 0, 1), -1.0);
}

TEST(BuildTaller, BracketOfElementsAgreesWithConstants) {
  const CartanTriple t = h3d::build_triple_3d({0, 0.8, -0.3});
  const TallerAlgebra alg = build_taller(t);
  std::mt19937_64 rng(9);
  std::normal_distribution<double> nd;
  for (int trial = 0; trial < 20; ++trial) {
    Vector u(4), v(4);
    for (int i = 0; i < 4; ++i) {
      u(i) = nd(rng);
      v(i) = nd(rng);
    }
    const TallerElement w = taller_bracket(t, alg.element(u), alg.element(v));
    EXPECT_LE((alg.coordinates(w) - alg.constants.bracket(u, v)).norm(), 1e-12);
  }
}

TEST(BuildTaller, RoundSphereIsO4) {
  const TallerAlgebra alg = build_taller(h3d::constant_curvature_triple(1.0));
  EXPECT_LE(max_diff(alg.constants, oracle::constant_curvature_taller(1.0)), 1e-14);
  const AlgebraFingerprint fp = fingerprint(alg.constants);
  EXPECT_EQ(fp.dim, 6);
  EXPECT_EQ(fp.killing, (KillingSignature{0, 6, 0}));
}

TEST(ValidateProperty, JacobiVanishesForEveryValidTriple) {
  const std::vector<double> vals{-2, -1, -0.5, 0, 0.5, 1, 2};
  for (double a : vals)
    for (double b : vals)
      for (double k : vals) {
        const CartanTriple t = h3d::build_triple_3d({a, b, k});
        const ValidationReport r = validate_triple(t);
        const bool adm = h3d::admissible({a, b, k}).admissible;
        EXPECT_EQ(r.valid, adm) << a << " " << b << " " << k;
        if (r.valid) {
          EXPECT_LE(build_taller(t).jacobi, 1e-9);
        } else {
          EXPECT_GE(find(r.checks, "jacobi").residual, 1e-3);
        }
      }
}

TEST(ValidateProperty, BasisPairChecksMatchRandomVectors) {
  // f12-equivariance of Gamma tested on random vectors: [f, Gamma(x)] = Gamma(f x)
  const CartanTriple t = h3d::build_triple_3d({0, 1.3, 0.4});
  std::mt19937_64 rng(2);
  std::normal_distribution<double> nd;
  for (int trial = 0; trial < 50; ++trial) {
    Vector x(3), y(3);
    for (int i = 0; i < 3; ++i) {
      x(i) = nd(rng);
      y(i) = nd(rng);
    }
    EXPECT_LE((commutator(f12, t.gamma(x)) - t.gamma(f12 * x)).norm(), 1e-12);
    EXPECT_LE((commutator(f12, t.omega_bar(x, y)) - t.omega_bar(f12 * x, y) - t.omega_bar(x, f12 * y)).norm(), 1e-12);
  }
}

TEST(ActOrthogonal, IdentityIsNoOp) {
  const CartanTriple t = h3d::build_triple_3d({0, 1, 2});
  EXPECT_EQ(triple_difference(act_orthogonal(t, Matrix::Identity(3, 3)), t).norm(), 0.0);
}

TEST(ActOrthogonal, RejectsNonOrthogonal) {
  EXPECT_THROW(act_orthogonal(h3d::build_triple_3d({0, 1, 2}), 2.0 * Matrix::Identity(3, 3)), ArgumentError);
}

TEST(ActOrthogonal, PlaneRotationKeepsSignature) {
  const CartanTriple t = h3d::build_triple_3d({0, 1, 2});
  const double th = 0.7;
  Matrix q = Matrix::Identity(3, 3);
  q(0, 0) = q(1, 1) = std::cos(th);
  q(0, 1) = -std::sin(th);
  q(1, 0) = std::sin(th);
  EXPECT_LE(signature_distance(invariant_signature(act_orthogonal(t, q)), invariant_signature(t)), 1e-12);
}

TEST(ActOrthogonalProperty, RightActionComposition) {
  std::mt19937_64 rng(31);
  const CartanTriple t = h3d::build_triple_3d({0, 0.7, 1.9});
  for (int trial = 0; trial < 30; ++trial) {
    const Matrix q1 = random_orthogonal(3, rng), q2 = random_orthogonal(3, rng);
    const CartanTriple lhs = act_orthogonal(act_orthogonal(t, q1), q2);
    const CartanTriple rhs = act_orthogonal(t, q1 * q2);
    EXPECT_LE(triple_difference(lhs, rhs).norm(), 1e-8);
  }
}

TEST(ActOrthogonalProperty, PreservesValidityAndResiduals) {
  std::mt19937_64 rng(37);
  for (Params3D p : {Params3D{0, 1, 2}, Params3D{1, 0, -1}, Params3D{1, 1, 0}}) {
    const CartanTriple t = h3d::build_triple_3d(p);
    const ValidationReport r0 = validate_triple(t);
    for (int trial = 0; trial < 10; ++trial) {
      const ValidationReport r1 = validate_triple(act_orthogonal(t, random_orthogonal(3, rng)));
      EXPECT_EQ(r0.valid, r1.valid);
      for (std::size_t i = 0; i < r0.checks.size(); ++i)
        EXPECT_NEAR(r0.checks[i].residual, r1.checks[i].residual, 1e-8) << r0.checks[i].name;
    }
  }
}

TEST(CheckLeq, HyperbolicMemberBelowConstantCurvature) {
  const LeqResult r = check_leq(h3d::build_triple_3d({1, 0, -1}), h3d::constant_curvature_triple(-1.0),
                                Subspace(3, {f13, f23}));
  EXPECT_TRUE(r.holds);
  EXPECT_LE(r.witness.embedding_residual, 1e-9);
}

TEST(CheckLeq, RoundSphereMember) {
  const LeqResult r = check_leq(h3d::build_triple_3d({0, 1, 1}), h3d::constant_curvature_triple(1.0),
                                Subspace(3, {f13, f23}));
  EXPECT_TRUE(r.holds);
}

TEST(CheckLeq, ProductGeometryRejectedOnlyByHomomorphismTest) {
  const CartanTriple t1(Subspace(3, {f12}), std::vector<Matrix>(3, Matrix::Zero(3, 3)),
                        {f12, Matrix::Zero(3, 3), Matrix::Zero(3, 3)});
  const LeqResult r = check_leq(t1, h3d::constant_curvature_triple(1.0), Subspace(3, {f13, f23}));
  EXPECT_FALSE(r.holds);
  EXPECT_TRUE(find(r.checks, "span_decomposition").pass);
  EXPECT_TRUE(find(r.checks, "gamma_components").pass);
  EXPECT_TRUE(find(r.checks, "omega_components").pass);
  EXPECT_GE(find(r.checks, "inclusion_homomorphism").residual, 1e-3);
}

TEST(CheckLeq, ARequiredInPerp) {
  EXPECT_THROW(check_leq(h3d::build_triple_3d({0, 1, 1}), h3d::constant_curvature_triple(1.0), Subspace(3, {f12})),
               ArgumentError);
}

TEST(CheckLeqProperty, Reflexive) {
  const std::vector<double> vals{-2, -1, 0, 1, 2};
  for (double a : vals)
    for (double b : vals)
      for (double k : vals) {
        if (!h3d::admissible({a, b, k}).admissible) continue;
        const CartanTriple t = h3d::build_triple_3d({a, b, k});
        EXPECT_TRUE(check_leq(t, t, Subspace::zero(3)).holds) << a << " " << b << " " << k;
      }
  EXPECT_TRUE(check_leq(abelian(4), abelian(4), Subspace::zero(4)).holds);
}

TEST(CheckLeqProperty, TransitiveOnHyperbolicChain) {
  // ({0}, Gamma, 0) <= family member (a, 0, -a^2) <= (o(3), 0, -a^2 Omega_1)
  for (double a : {0.5, 1.0, 2.0}) {
    const CartanTriple t1 = h3d::build_triple_3d({a, 0, -a * a});
    const CartanTriple t0(Subspace::zero(3), t1.gamma_table());
    const CartanTriple t2 = h3d::constant_curvature_triple(-a * a);
    ASSERT_TRUE(validate_triple(t0).valid);
    const LeqResult first = check_leq(t0, t1, Subspace(3, {f12}));
    const LeqResult second = check_leq(t1, t2, Subspace(3, {f13, f23}));
    ASSERT_TRUE(first.holds);
    ASSERT_TRUE(second.holds);
    const LeqResult composed = check_leq(t0, t2, Subspace(3, {f12, f13, f23}));
    EXPECT_TRUE(composed.holds);
    EXPECT_LE(composed.witness.embedding_residual, 1e-9);
  }
}

TEST(CheckLeqProperty, TransitiveOnFlatChain) {
  const std::vector<Matrix> zero(3, Matrix::Zero(3, 3));
  const CartanTriple t0(Subspace::zero(3), zero);
  const CartanTriple t1(Subspace(3, {f12}), zero);
  const CartanTriple t2(Subspace::full(3), zero);
  ASSERT_TRUE(check_leq(t0, t1, Subspace(3, {f12})).holds);
  ASSERT_TRUE(check_leq(t1, t2, Subspace(3, {f13, f23})).holds);
  EXPECT_TRUE(check_leq(t0, t2, Subspace::full(3)).holds);
}

TEST(InvariantSignature, AbelianIsZero) {
  const InvariantSignature s = invariant_signature(abelian(3));
  EXPECT_EQ(s.gamma_norm2, 0.0);
  EXPECT_EQ(s.omega_norm2, 0.0);
  for (double e : s.gamma_form_eigenvalues) EXPECT_EQ(e, 0.0);
}

TEST(InvariantSignature, GammaNormOnFamily) {
  for (double b : {0.5, 1.0, -2.0}) EXPECT_NEAR(invariant_signature(h3d::build_triple_3d({0, b, 1})).gamma_norm2, 2 * b * b, 1e-14);
}

TEST(InvariantSignatureProperty, PreservedByOrthogonalAction) {
  std::mt19937_64 rng(41);
  const CartanTriple t = h3d::build_triple_3d({0, 1.2, 0.3});
  const InvariantSignature s0 = invariant_signature(t);
  for (int trial = 0; trial < 50; ++trial)
    EXPECT_LE(signature_distance(invariant_signature(act_orthogonal(t, random_orthogonal(3, rng))), s0), 1e-8);
}

TEST(Orbit, SelfIsEquivalentWithIdentity) {
  const CartanTriple t = h3d::build_triple_3d({0, 1, 2});
  const OrbitVerdict v = orbit_equivalent(t, t);
  EXPECT_EQ(v.relation, OrbitRelation::equivalent);
  EXPECT_LE((v.q - Matrix::Identity(3, 3)).norm(), 1e-9);
}

TEST(Orbit, ConstructedMateIsRecovered) {
  std::mt19937_64 rng(43);
  const CartanTriple t = h3d::build_triple_3d({0, 1, 2});
  for (int trial = 0; trial < 5; ++trial) {
    const CartanTriple mate = act_orthogonal(t, random_orthogonal(3, rng));
    OrbitSearchOptions opt;
    opt.seed = static_cast<std::uint64_t>(trial);
    const OrbitVerdict v = orbit_equivalent(t, mate, opt);
    ASSERT_EQ(v.relation, OrbitRelation::equivalent);
    EXPECT_LE(triple_difference(act_orthogonal(t, v.q), mate).norm(), 1e-8);
  }
}

TEST(Orbit, DistinctFamilyMembers) {
  const OrbitVerdict v = orbit_equivalent(h3d::build_triple_3d({0, 1, 2}), h3d::build_triple_3d({0, 1, -0.5}));
  EXPECT_EQ(v.relation, OrbitRelation::distinct);
}

TEST(Orbit, DeterministicGivenSeed) {
  std::mt19937_64 rng(47);
  const CartanTriple t = h3d::build_triple_3d({0, 0.5, 1});
  const CartanTriple mate = act_orthogonal(t, random_orthogonal(3, rng));
  const OrbitVerdict a = orbit_equivalent(t, mate), b = orbit_equivalent(t, mate);
  EXPECT_EQ(a.relation, b.relation);
  EXPECT_EQ((a.q - b.q).norm(), 0.0);
}

TEST(PairIndex, Lexicographic) {
  EXPECT_EQ(pair_index(3, 0, 1), 0);
  EXPECT_EQ(pair_index(3, 0, 2), 1);
  EXPECT_EQ(pair_index(3, 1, 2), 2);
  EXPECT_EQ(pair_index(4, 2, 3), 5);
}
