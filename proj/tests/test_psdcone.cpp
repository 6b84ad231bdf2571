#include <gtest/gtest.h>

#include "test_util.hpp"

namespace st = shapetraj;
using testutil::rel_err;

namespace {

st::Mat2 random_shape(st::Rng& rng) {
  st::Mat2 a;
  a << rng.normal(), rng.normal(), rng.normal(), rng.normal();
  st::Mat2 m = a.transpose() * a + 0.1 * st::Mat2::Identity();
  return 0.5 * (m + m.transpose());
}

// Horizontal tangent at U: project a random matrix onto the complement of
// the span, so M^T U = 0.
st::MatX2 random_horizontal(st::Rng& rng, const st::MatX2& u) {
  st::MatX2 x = testutil::random_config(rng, int(u.rows()));
  return x - u * (u.transpose() * x);
}

}  // namespace

TEST(Closeness, IdenticalInputsGiveExactZero) {
  st::Rng rng(41);
  for (int it = 0; it < 5; ++it) {
    st::PsdPoint p = testutil::random_point(rng, 12);
    EXPECT_EQ(st::closeness(p, p, 0.01), 0.0);
    EXPECT_EQ(st::closeness(p, p, 0.0), 0.0);
  }
}

TEST(Closeness, KZeroCollapsesToSquaredGrassmann) {
  st::Rng rng(42);
  for (int it = 0; it < 30; ++it) {
    st::PsdPoint a = testutil::random_point(rng, 10);
    st::PsdPoint b = testutil::random_point(rng, 10);
    double g = st::grassmann_distance(a, b);
    EXPECT_NEAR(st::closeness(a, b, 0.0), g * g, 1e-10);
  }
}

TEST(Closeness, SharedBasisScaledShape) {
  st::Rng rng(43);
  st::PsdPoint a = testutil::random_point(rng, 9);
  for (double c : {0.5, 2.0, 7.5}) {
    for (double k : {0.01, 0.5, 3.0}) {
      st::PsdPoint b{a.basis, c * a.shape};
      // Same span, shapes differ by a scalar: the angle term vanishes and
      // the cone term is k ||log(c I)||^2 = 2 k log^2 c.
      double want = 2.0 * k * std::log(c) * std::log(c);
      EXPECT_LT(rel_err(st::closeness(a, b, k), want), 1e-9);
    }
  }
}

TEST(Closeness, RejectsNegativeK) {
  st::Rng rng(44);
  st::PsdPoint a = testutil::random_point(rng, 6);
  st::PsdPoint b = testutil::random_point(rng, 6);
  try {
    st::closeness(a, b, -0.1);
    FAIL();
  } catch (const st::Error& e) {
    EXPECT_EQ(e.kind(), st::ErrorKind::Validation);
  }
}

TEST(Closeness, SymmetricUnderSwap) {
  st::Rng rng(45);
  for (int it = 0; it < 25; ++it) {
    st::PsdPoint a = testutil::random_point(rng, 8);
    st::PsdPoint b = testutil::random_point(rng, 8);
    double ab = st::closeness(a, b, 0.3);
    double ba = st::closeness(b, a, 0.3);
    EXPECT_NEAR(ab, ba, 1e-10 * std::max(1.0, ab));
  }
}

TEST(Closeness, EuclideanInvariance) {
  st::Rng rng(46);
  for (int it = 0; it < 30; ++it) {
    st::MatX2 raw_a = testutil::random_config(rng, 11);
    st::MatX2 raw_b = testutil::random_config(rng, 11);
    st::PsdPoint a = st::polar_decompose(st::center_landmarks(raw_a));
    st::PsdPoint b = st::polar_decompose(st::center_landmarks(raw_b));
    double base = st::closeness(a, b, 0.01);
    st::PsdPoint am =
        st::polar_decompose(st::center_landmarks(testutil::random_rigid(rng, raw_a)));
    st::PsdPoint bm =
        st::polar_decompose(st::center_landmarks(testutil::random_rigid(rng, raw_b)));
    EXPECT_NEAR(st::closeness(am, bm, 0.01), base, 1e-8 * std::max(1.0, base));
  }
}

TEST(PseudoGeodesic, EndpointsReproduceGrams) {
  st::Rng rng(47);
  for (int it = 0; it < 10; ++it) {
    st::PsdPoint a = testutil::random_point(rng, 7);
    st::PsdPoint b = testutil::random_point(rng, 7);
    st::PsdPoint c0 = st::pseudo_geodesic(a, b, 0.0);
    st::PsdPoint c1 = st::pseudo_geodesic(a, b, 1.0);
    double scale_a = std::max(1.0, st::implied_gram(a).cwiseAbs().maxCoeff());
    double scale_b = std::max(1.0, st::implied_gram(b).cwiseAbs().maxCoeff());
    EXPECT_LT((st::implied_gram(c0) - st::implied_gram(a)).cwiseAbs().maxCoeff(),
              1e-8 * scale_a);
    EXPECT_LT((st::implied_gram(c1) - st::implied_gram(b)).cwiseAbs().maxCoeff(),
              1e-8 * scale_b);
  }
}

TEST(PseudoGeodesic, PureScaleMidpoint) {
  st::Rng rng(48);
  st::PsdPoint a = testutil::random_point(rng, 8);
  const double c = 4.0;
  st::PsdPoint b{a.basis, c * a.shape};
  st::PsdPoint mid = st::pseudo_geodesic(a, b, 0.5);
  // Same span, scaled shape: the midpoint Gram is sqrt(c) times a's.
  EXPECT_LT((st::implied_gram(mid) - std::sqrt(c) * st::implied_gram(a))
                .cwiseAbs()
                .maxCoeff(),
            1e-9 * st::implied_gram(a).cwiseAbs().maxCoeff());
}

TEST(PseudoGeodesic, ClosenessScalesAsTSquared) {
  st::Rng rng(49);
  for (int it = 0; it < 20; ++it) {
    st::PsdPoint a = testutil::random_point(rng, 9);
    st::PsdPoint b = testutil::random_point(rng, 9);
    double full = st::closeness(a, b, 0.01);
    for (double t : {0.25, 0.5, 0.75}) {
      st::PsdPoint ct = st::pseudo_geodesic(a, b, t);
      EXPECT_LT(rel_err(st::closeness(a, ct, 0.01), t * t * full), 1e-6);
    }
    // Segments between interior points scale with the parameter gap.
    st::PsdPoint c1 = st::pseudo_geodesic(a, b, 0.25);
    st::PsdPoint c2 = st::pseudo_geodesic(a, b, 0.75);
    EXPECT_LT(rel_err(st::closeness(c1, c2, 0.01), 0.25 * full), 1e-6);
  }
}

TEST(HorizontalInnerProduct, ZeroAndTraceOracle) {
  st::Rng rng(50);
  st::PsdPoint p = testutil::random_point(rng, 9);
  st::MatX2 zero = st::MatX2::Zero(9, 2);
  st::Mat2 nzero = st::Mat2::Zero();
  EXPECT_EQ(st::horizontal_inner_product(zero, nzero, zero, nzero, p.basis,
                                         st::Spd2{p.shape}, 0.5),
            0.0);
  st::MatX2 m1 = random_horizontal(rng, p.basis);
  st::MatX2 m2 = random_horizontal(rng, p.basis);
  st::Mat2 n1 = random_shape(rng);
  st::Mat2 n2 = random_shape(rng);
  // k = 0 keeps only the basis part.
  EXPECT_NEAR(st::horizontal_inner_product(m1, n1, m2, n2, p.basis, st::Spd2{p.shape}, 0.0),
              (m1.transpose() * m2).trace(), 1e-10);
  st::Mat2 sinv = p.shape.inverse();
  double want = (m1.transpose() * m2).trace() + 0.5 * (n1 * sinv * n2 * sinv).trace();
  EXPECT_NEAR(st::horizontal_inner_product(m1, n1, m2, n2, p.basis, st::Spd2{p.shape}, 0.5),
              want, 1e-9 * std::max(1.0, std::abs(want)));
}

TEST(HorizontalInnerProduct, RejectsNonHorizontal) {
  st::Rng rng(51);
  st::PsdPoint p = testutil::random_point(rng, 7);
  st::MatX2 bad = p.basis;  // lies inside the span, not orthogonal to it
  try {
    st::horizontal_inner_product(bad, st::Mat2::Zero(), bad, st::Mat2::Zero(),
                                 p.basis, st::Spd2{p.shape}, 0.1);
    FAIL();
  } catch (const st::Error& e) {
    EXPECT_EQ(e.kind(), st::ErrorKind::Numeric);
  }
}

TEST(FlatDistance, MatchesGramFrobenius) {
  st::Rng rng(52);
  for (int it = 0; it < 20; ++it) {
    st::PsdPoint a = testutil::random_point(rng, 10);
    st::PsdPoint b = testutil::random_point(rng, 10);
    double want = (st::implied_gram(a) - st::implied_gram(b)).norm();
    EXPECT_LT(rel_err(st::flat_distance(a, b), want), 1e-9);
  }
  st::PsdPoint p = testutil::random_point(rng, 10);
  EXPECT_EQ(st::flat_distance(p, p), 0.0);
}

TEST(FlatDistance, ScaledConfiguration) {
  st::Rng rng(53);
  st::PsdPoint a = testutil::random_point(rng, 8);
  const double c = 1.7;
  st::PsdPoint b{a.basis, c * c * a.shape};  // the configuration scaled by c
  double want = (c * c - 1.0) * std::sqrt(double(a.shape.squaredNorm()));
  EXPECT_LT(rel_err(st::flat_distance(a, b), want), 1e-9);
}

TEST(RegularizedSpd, SharedEigenbasisOracle) {
  st::Rng rng(54);
  st::PsdPoint a = testutil::random_point(rng, 9);
  const double c = 3.0;
  const double eps = 0.05;
  st::PsdPoint b{a.basis, c * a.shape};  // G2 = c G1, same eigenvectors
  st::detail::SymEigen2 e = st::detail::sym_eigen(a.shape);
  double sum = 0.0;
  for (int i = 0; i < 2; ++i) {
    double l = std::log((c * e.values(i) + eps) / (e.values(i) + eps));
    sum += l * l;
  }
  // The n - 2 null directions contribute log(eps / eps) = 0.
  EXPECT_LT(rel_err(st::regularized_spd_distance(a, b, eps), std::sqrt(sum)), 1e-8);
}

TEST(RegularizedSpd, IdenticalZeroAndBadEpsilon) {
  st::Rng rng(55);
  st::PsdPoint a = testutil::random_point(rng, 6);
  EXPECT_EQ(st::regularized_spd_distance(a, a, 0.01), 0.0);
  EXPECT_THROW(st::regularized_spd_distance(a, a, 0.0), st::Error);
  EXPECT_THROW(st::regularized_spd_distance(a, a, -1.0), st::Error);
  st::PsdPoint b = testutil::random_point(rng, 6);
  EXPECT_GT(st::default_regularization(a, b), 0.0);
}

TEST(FrameMetric, DispatchesToEachVariant) {
  st::Rng rng(56);
  st::PsdPoint a = testutil::random_point(rng, 8);
  st::PsdPoint b = testutil::random_point(rng, 8);
  EXPECT_EQ(st::FrameMetric::closeness_metric(0.2)(a, b), st::closeness(a, b, 0.2));
  EXPECT_EQ(st::FrameMetric::flat_metric()(a, b), st::flat_distance(a, b));
  EXPECT_EQ(st::FrameMetric::spd_reg_metric(0.01)(a, b),
            st::regularized_spd_distance(a, b, 0.01));
  double eps = st::default_regularization(a, b);
  EXPECT_EQ(st::FrameMetric::spd_reg_metric(0.0)(a, b),
            st::regularized_spd_distance(a, b, eps));
  EXPECT_EQ(st::FrameMetric::closeness_metric(0.2).name(), "closeness");
  EXPECT_EQ(st::FrameMetric::flat_metric().name(), "flat");
  EXPECT_EQ(st::FrameMetric::spd_reg_metric(0.0).name(), "spd-reg");
}
