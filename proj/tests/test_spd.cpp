#include <gtest/gtest.h>

#include "test_util.hpp"

namespace st = shapetraj;
using testutil::rel_err;

namespace {

st::Spd2 random_spd(st::Rng& rng) {
  st::Mat2 a;
  a << rng.normal(), rng.normal(), rng.normal(), rng.normal();
  st::Mat2 m = a.transpose() * a + 0.05 * st::Mat2::Identity();
  return st::Spd2{0.5 * (m + m.transpose())};
}

// Independent oracle: sqrt(sum log^2 lambda) over the eigenvalues of the
// pencil (b, a), computed with Eigen's generalized solver.
double pencil_distance(const st::Spd2& a, const st::Spd2& b) {
  Eigen::GeneralizedSelfAdjointEigenSolver<st::Mat2> es(b.m, a.m);
  double l0 = std::log(es.eigenvalues()(0));
  double l1 = std::log(es.eigenvalues()(1));
  return std::sqrt(l0 * l0 + l1 * l1);
}

}  // namespace

TEST(SpdDistance, IdenticalInputsGiveExactZero) {
  st::Rng rng(21);
  for (int it = 0; it < 5; ++it) {
    st::Spd2 a = random_spd(rng);
    EXPECT_EQ(st::spd_distance(a, a), 0.0);
  }
}

TEST(SpdDistance, IdentityVsScaledIdentity) {
  st::Spd2 i{st::Mat2::Identity()};
  st::Spd2 b{std::exp(2.0) * st::Mat2::Identity()};
  // log-eigenvalues are (2, 2), so the distance is 2 sqrt(2).
  EXPECT_NEAR(st::spd_distance(i, b), 2.0 * std::sqrt(2.0), 1e-12);
  EXPECT_NEAR(st::spd_distance(i, b), 2.8284271247461903, 1e-12);
}

TEST(SpdDistance, MatchesGeneralizedEigenvalueOracle) {
  st::Rng rng(22);
  for (int it = 0; it < 50; ++it) {
    st::Spd2 a = random_spd(rng);
    st::Spd2 b = random_spd(rng);
    EXPECT_NEAR(st::spd_distance(a, b), pencil_distance(a, b), 1e-10);
  }
}

TEST(SpdDistance, SymmetricAndCongruenceInvariant) {
  st::Rng rng(23);
  for (int it = 0; it < 25; ++it) {
    st::Spd2 a = random_spd(rng);
    st::Spd2 b = random_spd(rng);
    double d = st::spd_distance(a, b);
    EXPECT_NEAR(d, st::spd_distance(b, a), 1e-10);
    st::Mat2 w;
    w << rng.normal(), rng.normal(), rng.normal(), rng.normal();
    if (std::abs(w.determinant()) < 1e-3) continue;
    st::Spd2 wa{w.transpose() * a.m * w};
    st::Spd2 wb{w.transpose() * b.m * w};
    wa.m = 0.5 * (wa.m + wa.m.transpose());
    wb.m = 0.5 * (wb.m + wb.m.transpose());
    EXPECT_NEAR(st::spd_distance(wa, wb), d, 1e-8);
  }
}

TEST(SpdDistance, RejectsNonSpd) {
  st::Spd2 i{st::Mat2::Identity()};
  st::Mat2 neg;
  neg << 1, 0, 0, -1;
  EXPECT_THROW(st::spd_distance(st::Spd2{neg}, i), st::Error);
  st::Mat2 asym;
  asym << 1, 0.5, -0.5, 1;
  try {
    st::spd_distance(st::Spd2{asym}, i);
    FAIL();
  } catch (const st::Error& e) {
    EXPECT_EQ(e.kind(), st::ErrorKind::Numeric);
  }
}

TEST(SpdGeodesic, EndpointsAndScaledIdentity) {
  st::Rng rng(24);
  st::Spd2 a = random_spd(rng);
  st::Spd2 b = random_spd(rng);
  EXPECT_LT((st::spd_geodesic(a, b, 0.0).m - a.m).cwiseAbs().maxCoeff(), 1e-10);
  EXPECT_LT((st::spd_geodesic(a, b, 1.0).m - b.m).cwiseAbs().maxCoeff(), 1e-9);
  // Identity to c * identity follows c^t * identity.
  const double c = 5.0;
  for (double t : {0.25, 0.5, 0.75}) {
    st::Mat2 got =
        st::spd_geodesic(st::Spd2{st::Mat2::Identity()}, st::Spd2{c * st::Mat2::Identity()}, t).m;
    EXPECT_LT((got - std::pow(c, t) * st::Mat2::Identity()).cwiseAbs().maxCoeff(), 1e-12);
  }
}

TEST(SpdGeodesic, DistanceIsLinearInT) {
  st::Rng rng(25);
  for (int it = 0; it < 20; ++it) {
    st::Spd2 a = random_spd(rng);
    st::Spd2 b = random_spd(rng);
    double d = st::spd_distance(a, b);
    for (double t : {0.25, 0.5, 0.75}) {
      st::Spd2 m = st::spd_geodesic(a, b, t);
      EXPECT_LT(rel_err(st::spd_distance(a, m), t * d), 1e-7);
      EXPECT_LT(rel_err(st::spd_distance(m, b), (1.0 - t) * d), 1e-7);
    }
  }
}
