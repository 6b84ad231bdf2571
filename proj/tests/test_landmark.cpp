#include <gtest/gtest.h>

#include "test_util.hpp"

namespace st = shapetraj;
using testutil::rel_err;

TEST(CenterLandmarks, SubtractsCenterOfMass) {
  st::MatX2 raw(4, 2);
  raw << 1, 0, 3, 0, 2, 1, 2, -1;
  st::LandmarkConfig z = st::center_landmarks(raw);
  st::MatX2 want(4, 2);
  want << -1, 0, 1, 0, 0, 1, 0, -1;
  EXPECT_TRUE((z.points.array() == want.array()).all());
}

TEST(CenterLandmarks, AlreadyCenteredIsUnchanged) {
  st::LandmarkConfig z = st::center_landmarks(testutil::square_config());
  EXPECT_TRUE((z.points.array() == testutil::square_config().array()).all());
}

TEST(CenterLandmarks, RejectsCollinear) {
  st::MatX2 raw(4, 2);
  raw << 0, 0, 1, 1, 2, 2, 3, 3;
  EXPECT_THROW(st::center_landmarks(raw), st::Error);
  try {
    st::center_landmarks(raw);
    FAIL();
  } catch (const st::Error& e) {
    EXPECT_EQ(e.kind(), st::ErrorKind::Numeric);
  }
}

TEST(CenterLandmarks, RejectsTooFewOrNonFinite) {
  st::MatX2 two(2, 2);
  two << 0, 0, 1, 0;
  EXPECT_THROW(st::center_landmarks(two), st::Error);
  st::MatX2 bad = testutil::square_config();
  bad(1, 1) = std::numeric_limits<double>::quiet_NaN();
  try {
    st::center_landmarks(bad);
    FAIL();
  } catch (const st::Error& e) {
    EXPECT_EQ(e.kind(), st::ErrorKind::Validation);
  }
}

TEST(Gram, SquareOracle) {
  st::LandmarkConfig z = st::center_landmarks(testutil::square_config());
  st::MatX g = st::gram(z);
  st::MatX want(4, 4);
  want << 2, 0, -2, 0, 0, 2, 0, -2, -2, 0, 2, 0, 0, -2, 0, 2;
  EXPECT_LT((g - want).cwiseAbs().maxCoeff(), 1e-14);
}

TEST(Gram, RotationInvariant) {
  st::Rng rng(11);
  for (int it = 0; it < 10; ++it) {
    st::MatX2 raw = testutil::random_config(rng, 9);
    st::MatX g1 = st::gram(st::center_landmarks(raw));
    st::MatX g2 = st::gram(st::center_landmarks(testutil::random_rigid(rng, raw)));
    EXPECT_LT((g1 - g2).cwiseAbs().maxCoeff(), 1e-8);
  }
}

TEST(SquaredDistanceMatrix, SquareOracle) {
  st::LandmarkConfig z = st::center_landmarks(testutil::square_config());
  st::MatX d = st::squared_distance_matrix(z);
  ASSERT_EQ(d.rows(), 5);
  ASSERT_EQ(d.cols(), 5);
  // Entry (0,1): squared distance of the first vertex (1,1) to the center.
  EXPECT_DOUBLE_EQ(d(0, 1), 2.0);
  // Entry (1,2): squared distance between adjacent vertices (1,1), (1,-1).
  EXPECT_DOUBLE_EQ(d(1, 2), 4.0);
  // Diagonal of the square: (1,1) vs (-1,-1).
  EXPECT_DOUBLE_EQ(d(1, 3), 8.0);
  EXPECT_LT(d.diagonal().cwiseAbs().maxCoeff(), 1e-15);
  EXPECT_LT((d - d.transpose()).cwiseAbs().maxCoeff(), 1e-15);
}

TEST(SquaredDistanceMatrix, ConsistentWithGram) {
  st::Rng rng(12);
  st::LandmarkConfig z = st::center_landmarks(testutil::random_config(rng, 7));
  st::MatX g = st::gram(z);
  st::MatX d = st::squared_distance_matrix(z);
  Eigen::Index n = z.count();
  for (Eigen::Index i = 0; i < n; ++i) {
    EXPECT_NEAR(d(0, i + 1), g(i, i), 1e-10);
    for (Eigen::Index j = 0; j < n; ++j)
      EXPECT_NEAR(d(i + 1, j + 1), g(i, i) - 2.0 * g(i, j) + g(j, j), 1e-10);
  }
}

TEST(Covariance, SquareOracle) {
  st::Spd2 c = st::covariance(st::center_landmarks(testutil::square_config()));
  st::Mat2 want = (4.0 / 3.0) * st::Mat2::Identity();
  EXPECT_LT((c.m - want).cwiseAbs().maxCoeff(), 1e-14);
}

TEST(Covariance, ScalesQuadraticallyAndConjugates) {
  st::Rng rng(13);
  st::MatX2 raw = testutil::random_config(rng, 8);
  st::Mat2 c1 = st::covariance(st::center_landmarks(raw)).m;
  st::Mat2 c2 = st::covariance(st::center_landmarks(st::MatX2(3.0 * raw))).m;
  EXPECT_LT((c2 - 9.0 * c1).cwiseAbs().maxCoeff(), 1e-10);
  st::Mat2 o = testutil::random_rotation(rng);
  st::Mat2 c3 = st::covariance(st::center_landmarks(st::MatX2(raw * o))).m;
  EXPECT_LT((c3 - o.transpose() * c1 * o).cwiseAbs().maxCoeff(), 1e-10);
}

TEST(PolarDecompose, SquareOracle) {
  st::LandmarkConfig z = st::center_landmarks(testutil::square_config());
  st::PsdPoint p = st::polar_decompose(z);
  // Z has orthogonal columns of norm 2, so R = 2 I and U = Z / 2.
  EXPECT_LT((p.shape - 4.0 * st::Mat2::Identity()).cwiseAbs().maxCoeff(), 1e-12);
  EXPECT_LT((p.basis - 0.5 * z.points).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(PolarDecompose, OrthogonalColumnsGiveDiagonalShape) {
  st::MatX2 raw(4, 2);
  raw << 3, 0, -3, 0, 0, 0.5, 0, -0.5;
  st::PsdPoint p = st::polar_decompose(st::center_landmarks(raw));
  st::Mat2 want;
  want << 18, 0, 0, 0.5;
  EXPECT_LT((p.shape - want).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(PolarDecompose, ReconstructsGram) {
  st::Rng rng(14);
  for (int it = 0; it < 10; ++it) {
    st::LandmarkConfig z = st::center_landmarks(testutil::random_config(rng, 10));
    st::PsdPoint p = st::polar_decompose(z);
    EXPECT_LT((p.basis.transpose() * p.basis - st::Mat2::Identity())
                  .cwiseAbs()
                  .maxCoeff(),
              1e-12);
    EXPECT_LT((st::implied_gram(p) - st::gram(z)).cwiseAbs().maxCoeff(), 1e-9);
    // U R reproduces Z.
    st::Mat2 r = st::spd_sqrt(p.shape);
    EXPECT_LT((p.basis * r - z.points).cwiseAbs().maxCoeff(), 1e-9);
  }
}
