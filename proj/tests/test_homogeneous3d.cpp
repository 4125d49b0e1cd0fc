#include <gtest/gtest.h>

#include <random>

#include "cartan/errors.hpp"
#include "cartan/frames.hpp"
#include "cartan/homogeneous3d.hpp"
#include "oracles.hpp"

using namespace cartan;
using namespace cartan::h3d;

namespace {

const Matrix f12 = basis_f(3, 1, 2);
const Matrix f13 = basis_f(3, 1, 3);
const Matrix f23 = basis_f(3, 2, 3);

const std::vector<double> kGrid{-2, -1, -0.5, 0, 0.5, 1, 2};

oracle::Constants to_oracle(const StructureConstants& c) {
  oracle::Constants o(c.dim());
  for (int i = 0; i < c.dim(); ++i)
    for (int j = 0; j < c.dim(); ++j)
      for (int k = 0; k < c.dim(); ++k) o.at(i, j, k) = c(i, j, k);
  return o;
}

void expect_fp(const AlgebraFingerprint& fp, int dim, KillingSignature sig, int center, int derived) {
  EXPECT_EQ(fp.dim, dim);
  EXPECT_EQ(fp.killing, sig);
  EXPECT_EQ(fp.center_dim, center);
  EXPECT_EQ(fp.derived_dim, derived);
}

bool expected_witness(const Params3D& p) {
  const bool a0 = p.a == 0.0, b0 = p.b == 0.0;
  return !a0 || (!b0 && p.k == p.b * p.b) || (b0 && p.k == 0.0);
}

}  // namespace

TEST(Omega1, CoefficientReadOff) {
  EXPECT_EQ((omega1(Vector::Unit(3, 0), Vector::Unit(3, 1)) - f12).norm(), 0.0);
  EXPECT_EQ((omega1(Vector::Unit(3, 0), Vector::Unit(3, 2)) - f13).norm(), 0.0);
  EXPECT_EQ((omega1(Vector::Unit(3, 1), Vector::Unit(3, 2)) - f23).norm(), 0.0);
}

TEST(Omega1, Alternating) {
  std::mt19937_64 rng(3);
  std::normal_distribution<double> nd;
  for (int trial = 0; trial < 20; ++trial) {
    const Vector x = Eigen::Vector3d(nd(rng), nd(rng), nd(rng));
    EXPECT_LE(omega1(x, x).norm(), 1e-15);
  }
}

TEST(Omega1, TripleIsValid) {
  const CartanTriple t(Subspace::full(3), std::vector<Matrix>(3, Matrix::Zero(3, 3)), omega1_table());
  EXPECT_TRUE(validate_triple(t).valid);
}

TEST(ConstantCurvature, FingerprintsAgainstMatrixRealization) {
  for (double c : {1.0, 0.0, -1.0}) {
    const StructureConstants k = build_taller(constant_curvature_triple(c)).constants;
    const oracle::Fingerprint want = oracle::fingerprint(oracle::constant_curvature_taller(c));
    const AlgebraFingerprint fp = fingerprint(k);
    EXPECT_EQ(fp.killing.positive, want.pos) << c;
    EXPECT_EQ(fp.killing.negative, want.neg) << c;
    EXPECT_EQ(fp.center_dim, want.center) << c;
    EXPECT_EQ(fp.derived_dim, want.derived) << c;
  }
}

TEST(ConstantCurvature, RoundSphereIsO4) {
  expect_fp(fingerprint(build_taller(constant_curvature_triple(1.0)).constants), 6, {0, 6, 0}, 0, 6);
}

TEST(ConstantCurvature, FlatIsEuclideanAlgebra) {
  // e(3) is perfect: [o(3), o(3)] = o(3) and [o(3), R^3] = R^3, so derived_dim is 6
  const AlgebraFingerprint fp = fingerprint(build_taller(constant_curvature_triple(0.0)).constants);
  expect_fp(fp, 6, {0, 3, 3}, 0, 6);
}

TEST(ConstantCurvature, HyperbolicIsLorentz) {
  expect_fp(fingerprint(build_taller(constant_curvature_triple(-1.0)).constants), 6, {3, 3, 0}, 0, 6);
}

TEST(Admissible, Examples) {
  EXPECT_TRUE(admissible({0, 1, 2}).admissible);
  EXPECT_TRUE(admissible({1, 0, -1}).admissible);
  const Admissibility bad = admissible({1, 1, 0});
  EXPECT_FALSE(bad.admissible);
  EXPECT_DOUBLE_EQ(bad.product_residual, 1.0);
  EXPECT_DOUBLE_EQ(bad.curvature_residual, 2.0);
}

TEST(BuildTriple3D, GammaReadOff) {
  const CartanTriple t = build_triple_3d({0.5, -1.5, 2});
  EXPECT_EQ((t.gamma(0) - (0.5 * f13 - 1.5 * f23)).norm(), 0.0);
  EXPECT_EQ((t.gamma(1) - (0.5 * f23 + 1.5 * f13)).norm(), 0.0);
  EXPECT_EQ(t.gamma(2).norm(), 0.0);
  EXPECT_EQ((t.omega_bar(0, 1) - 2.0 * f12).norm(), 0.0);
}

TEST(BuildTriple3D, AllZero) {
  const CartanTriple t = build_triple_3d({0, 0, 0});
  for (int i = 0; i < 3; ++i) EXPECT_EQ(t.gamma(i).norm(), 0.0);
  for (const Matrix& m : t.omega_table()) EXPECT_EQ(m.norm(), 0.0);
  const StructureConstants c = build_taller(t).constants;
  const oracle::Constants want = oracle::family_taller(0, 0);
  for (std::size_t i = 0; i < want.v.size(); ++i) EXPECT_EQ(to_oracle(c).v[i], want.v[i]);
  expect_fp(fingerprint(c), 4, {0, 1, 3}, 1, 2);
}

TEST(BuildTriple3D, InadmissibleFailsJacobi) {
  const TallerAlgebra k = build_taller(build_triple_3d({1, 1, 0}));
  EXPECT_GT(k.jacobi, 1e-9);
  EXPECT_NEAR(k.jacobi, oracle::jacobiator(to_oracle(k.constants)), 1e-12);
}

TEST(RicciFormula, Examples) {
  RicciForm r = ricci_form({0, 1, 2});
  EXPECT_EQ(r.eigenvalues, (std::array<double, 3>{2, 3, 3}));
  EXPECT_EQ(r.scalar, 8.0);
  r = ricci_form({0, 1, -1});
  EXPECT_EQ(r.eigenvalues, (std::array<double, 3>{0, 0, 2}));
  EXPECT_EQ(r.scalar, 2.0);
  for (double k : {-1.5, 0.0, 2.0}) {
    r = ricci_form({0, 0, k});
    std::array<double, 3> want{k, k, 0.0};
    std::sort(want.begin(), want.end());
    EXPECT_EQ(r.eigenvalues, want);
    EXPECT_EQ(r.scalar, 2 * k);
  }
  EXPECT_THROW(ricci_form({1, 0, -1}), PreconditionError);
}

TEST(Transverse, UnitIsSu2) {
  const TransverseSubalgebra s = transverse_subalgebra({0, 1, 1});
  EXPECT_EQ(s.algebra.killing, (KillingSignature{0, 3, 0}));
  EXPECT_EQ(s.transversality_rank, 4);
}

TEST(Transverse, BracketsAtCartanSpherePoint) {
  const double b = 1, k = 2, m = k + 3 * b * b;
  const TransverseSubalgebra s = transverse_subalgebra({0, b, k});
  EXPECT_LE(s.closure_residual, 1e-12);
  // basis (e1, e2, xi3)
  EXPECT_NEAR(s.constants(2, 0, 1), -1.0, 1e-14);
  EXPECT_NEAR(s.constants(1, 0, 2), m, 1e-14);
  EXPECT_NEAR(s.constants(0, 1, 2), -m, 1e-14);
  EXPECT_NEAR(s.constants(0, 0, 1), 0.0, 1e-14);
  EXPECT_NEAR(s.constants(1, 0, 1), 0.0, 1e-14);
}

TEST(Transverse, GeneratorsInTallerCoordinates) {
  const TransverseSubalgebra s = transverse_subalgebra({0, 1.5, 0.25});
  Matrix want = Matrix::Zero(4, 3);
  want(1, 0) = 1;
  want(2, 1) = 1;
  want(3, 2) = 3.0;
  want(0, 2) = 0.25 + 2.25;
  EXPECT_LE((s.generators - want).norm(), 1e-15);
  EXPECT_LE((s.induced_metric - Eigen::Vector3d(1, 1, 9).asDiagonal().toDenseMatrix()).norm(), 1e-14);
}

TEST(Transverse, NonCompactBelowThreshold) {
  const TransverseSubalgebra s = transverse_subalgebra({0, 1, -4});
  EXPECT_GT(s.algebra.killing.positive, 0);
  EXPECT_EQ(s.algebra.killing.positive, oracle::fingerprint(to_oracle(s.constants)).pos);
}

TEST(Transverse, Preconditions) {
  EXPECT_THROW(transverse_subalgebra({0, 0, 1}), ArgumentError);
  EXPECT_THROW(transverse_subalgebra({1, 0, -1}), ArgumentError);
}

TEST(TransverseProperty, KoszulRicciMatchesFormula) {
  std::mt19937_64 rng(61);
  std::uniform_real_distribution<double> ub(-2.0, 2.0), uk(-3.0, 3.0);
  for (int trial = 0; trial < 40; ++trial) {
    double b = ub(rng);
    if (std::abs(b) < 0.05) b = 0.5;
    const double k = uk(rng);
    const TransverseSubalgebra s = transverse_subalgebra({0, b, k});
    const Vector ev = koszul_curvature(s.constants, s.induced_metric).ricci.eigenvalues;
    const RicciForm f = ricci_form({0, b, k});
    // Milnor frame E3 = xi3 / (2|b|): lambdas (-m/2|b|, -m/2|b|, -2|b|)
    const double m = k + 3 * b * b, beta = 2 * std::abs(b);
    const auto milnor = oracle::milnor_ricci(-m / beta, -m / beta, -beta);
    for (int i = 0; i < 3; ++i) {
      EXPECT_NEAR(ev(i), f.eigenvalues[static_cast<std::size_t>(i)], 1e-8);
      EXPECT_NEAR(ev(i), milnor[static_cast<std::size_t>(i)], 1e-8);
    }
  }
}

TEST(Enlarge, HyperbolicMember) {
  const EnlargementSearch e = enlarge_3d(build_triple_3d({1, 0, -1}));
  ASSERT_TRUE(e.witness.has_value());
  EXPECT_NEAR(e.target_curvature, -1.0, 1e-12);
  EXPECT_LE(triple_difference(e.witness->enlarged, constant_curvature_triple(-1.0)).norm(), 1e-12);
  EXPECT_LE(e.witness->embedding_residual, 1e-9);
}

TEST(Enlarge, RoundSphereMember) {
  const EnlargementSearch e = enlarge_3d(build_triple_3d({0, 1, 1}));
  ASSERT_TRUE(e.witness.has_value());
  EXPECT_NEAR(e.target_curvature, 1.0, 1e-12);
  EXPECT_TRUE(same_span(e.witness->a_basis, Subspace(3, {f13, f23})));
}

TEST(Enlarge, CartanSphereIsMaximal) {
  const EnlargementSearch e = enlarge_3d(build_triple_3d({0, 1, 2}));
  EXPECT_FALSE(e.witness.has_value());
  EXPECT_GT(e.rejected_lines, 0);
}

TEST(Enlarge, ProductGeometryRejected) {
  const EnlargementSearch e = enlarge_3d(build_triple_3d({0, 0, 1}));
  EXPECT_FALSE(e.witness.has_value());
  bool saw = false;
  for (const Check& c : e.checks)
    if (c.name == "inclusion_homomorphism") {
      saw = true;
      EXPECT_GE(c.residual, 1e-3);
    }
  EXPECT_TRUE(saw);
}

TEST(Enlarge, RequiresF12Isotropy) {
  EXPECT_THROW(enlarge_3d(constant_curvature_triple(1.0)), ArgumentError);
  EXPECT_THROW(enlarge_3d(CartanTriple(Subspace(3, {f13}), std::vector<Matrix>(3, Matrix::Zero(3, 3)))), ArgumentError);
}

TEST(EnlargeProperty, FrontierOnGrid) {
  for (double a : kGrid)
    for (double b : kGrid)
      for (double k : kGrid) {
        const Params3D p{a, b, k};
        if (!admissible(p).admissible) continue;
        const bool found = enlarge_3d(build_triple_3d(p)).witness.has_value();
        EXPECT_EQ(found, expected_witness(p)) << a << " " << b << " " << k;
        if (b != 0.0) {
          const bool paper = b * b != k;
          EXPECT_EQ(!found, paper) << a << " " << b << " " << k;
        }
      }
}

TEST(Classify, CartanSphere) {
  const GeometryReport r = classify({0, 1, 2});
  EXPECT_TRUE(r.admissibility.admissible);
  EXPECT_EQ(r.ricci_eigenvalues, (std::array<double, 3>{2, 3, 3}));
  EXPECT_EQ(r.scalar_curvature, 8.0);
  EXPECT_TRUE(r.positive_sectional);
  EXPECT_TRUE(r.cartan_sphere);
  EXPECT_TRUE(r.maximal);
  EXPECT_EQ(r.isometry_dim, 4);
  EXPECT_EQ(r.topology, Topology::three_sphere);
}

TEST(Classify, HyperbolicSpace) {
  const GeometryReport r = classify({1, 0, -1});
  EXPECT_FALSE(r.maximal);
  EXPECT_NEAR(r.enlargement_curvature, -1.0, 1e-12);
  EXPECT_EQ(r.isometry_dim, 6);
  EXPECT_EQ(r.topology, Topology::euclidean_space);
  EXPECT_EQ(r.ricci_eigenvalues, (std::array<double, 3>{-2, -2, -2}));
}

TEST(Classify, SphereTimesLine) {
  const GeometryReport r = classify({0, 0, 1});
  EXPECT_EQ(r.ricci_eigenvalues, (std::array<double, 3>{0, 1, 1}));
  EXPECT_EQ(r.scalar_curvature, 2.0);
  EXPECT_FALSE(r.positive_sectional);
  EXPECT_FALSE(r.cartan_sphere);
  EXPECT_TRUE(r.maximal);
  EXPECT_EQ(r.isometry_dim, 4);
  EXPECT_EQ(r.topology, Topology::sphere_cross_line);
}

TEST(Classify, RoundSphereEnlarges) {
  const GeometryReport r = classify({0, 1, 1});
  EXPECT_FALSE(r.maximal);
  EXPECT_FALSE(r.paper_maximal);
  EXPECT_EQ(r.isometry_dim, 6);
  EXPECT_EQ(r.topology, Topology::three_sphere);
}

TEST(Classify, NonPositiveScalarSphere) {
  const GeometryReport r = classify({0, 1, -2});
  EXPECT_EQ(r.scalar_curvature, 0.0);
  EXPECT_EQ(r.topology, Topology::three_sphere);
  EXPECT_FALSE(r.paper_maximal);
  EXPECT_TRUE(r.maximal);
}

TEST(Classify, RejectsInadmissible) {
  EXPECT_THROW(classify({1, 1, 0}), PreconditionError);
}

TEST(ClassifyProperty, InvariantUnderBFlip) {
  for (double b : kGrid)
    for (double k : kGrid) {
      const GeometryReport r1 = classify({0, b, k}), r2 = classify({0, -b, k});
      EXPECT_EQ(r1.ricci_eigenvalues, r2.ricci_eigenvalues);
      EXPECT_EQ(r1.scalar_curvature, r2.scalar_curvature);
      EXPECT_EQ(r1.positive_sectional, r2.positive_sectional);
      EXPECT_EQ(r1.cartan_sphere, r2.cartan_sphere);
      EXPECT_EQ(r1.maximal, r2.maximal);
      EXPECT_EQ(r1.paper_maximal, r2.paper_maximal);
      EXPECT_EQ(r1.isometry_dim, r2.isometry_dim);
      EXPECT_EQ(r1.topology, r2.topology);
      EXPECT_EQ(r1.taller_algebra, r2.taller_algebra);
      EXPECT_EQ(r1.transverse_algebra, r2.transverse_algebra);
    }
}

TEST(ClassifyProperty, ScalarIsTraceAndSectionalSign) {
  for (double a : kGrid)
    for (double b : kGrid)
      for (double k : kGrid) {
        if (!admissible({a, b, k}).admissible) continue;
        const GeometryReport r = classify({a, b, k});
        EXPECT_EQ(r.scalar_curvature, r.ricci_eigenvalues[0] + r.ricci_eigenvalues[1] + r.ricci_eigenvalues[2]);
        EXPECT_EQ(r.positive_sectional, r.ricci_eigenvalues[0] > 0);
      }
}

TEST(ClassifyProperty, TopologyFollowsTransverseKilling) {
  for (double b : kGrid)
    for (double k : kGrid) {
      if (b == 0.0) continue;
      const GeometryReport r = classify({0, b, k});
      const bool compact = k + 3 * b * b > 0;
      EXPECT_EQ(r.topology == Topology::three_sphere, compact) << b << " " << k;
    }
}

TEST(TopologyNames, Strings) {
  EXPECT_STREQ(to_string(Topology::three_sphere), "three_sphere");
  EXPECT_STREQ(to_string(Topology::sphere_cross_line), "sphere_cross_line");
  EXPECT_STREQ(to_string(Topology::euclidean_space), "euclidean_space");
}
