#include <cmath>
#include <cstdio>
#include <fstream>
#include <random>
#include <string>

#include <gtest/gtest.h>

#include "hlipgait/error.hpp"
#include "hlipgait/planar_models.hpp"
#include "hlipgait/planner.hpp"

namespace hlipgait {
namespace {

constexpr double kPi = 3.14159265358979323846;

Vec5 random_x(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-kPi, kPi);
  Vec5 q;
  for (int i = 0; i < 5; ++i) q(i) = u(rng);
  return q;
}

Vec3 random_y(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(kPi - 1.0, kPi + 1.0), t(-1.0, 1.0);
  return Vec3(u(rng), u(rng), t(rng));
}

// Central-difference Jacobian of a (horizontal, z) CoM map.
template <int D, typename F>
Eigen::Matrix<double, 2, D> fd_jacobian(const Eigen::Matrix<double, D, 1>& q, F com,
                                        double h = 1e-6) {
  Eigen::Matrix<double, 2, D> j;
  for (int i = 0; i < D; ++i) {
    Eigen::Matrix<double, D, 1> a = q, b = q;
    a(i) += h;
    b(i) -= h;
    const Com ca = com(a), cb = com(b);
    j(0, i) = (ca.horizontal - cb.horizontal) / (2 * h);
    j(1, i) = (ca.z - cb.z) / (2 * h);
  }
  return j;
}

TEST(LinkParams, Defaults) {
  const LinkParams lp;
  EXPECT_NEAR(lp.total_mass(), 34.649, 1e-3);
  EXPECT_DOUBLE_EQ(lp.rx[0], 0.5 * lp.lx1);
  EXPECT_DOUBLE_EQ(lp.rx[1], 0.5 * lp.lx2);
  EXPECT_DOUBLE_EQ(lp.rx[4], 0.5 * lp.lx3);
  EXPECT_DOUBLE_EQ(lp.ly1, lp.lx1 + lp.lx2);
  EXPECT_NO_THROW(lp.validate());
  LinkParams bad;
  bad.m2 = 0.0;
  EXPECT_THROW(bad.validate(), GaitError);
}

TEST(LinkParams, LoadsKeyValueFile) {
  const std::string path = ::testing::TempDir() + "params_ok.txt";
  {
    std::ofstream f(path);
    f << "# test robot\nm1 = 5.0\nlx1 = 0.4   # longer shank\nrx5 = 0.3\n";
  }
  const LinkParams lp = load_link_params(path);
  EXPECT_EQ(lp.m1, 5.0);
  EXPECT_EQ(lp.lx1, 0.4);
  EXPECT_EQ(lp.rx[0], 0.2);
  EXPECT_EQ(lp.rx[4], 0.3);
  EXPECT_DOUBLE_EQ(lp.ly1, 0.4 + lp.lx2);
  std::remove(path.c_str());
}

TEST(LinkParams, RejectsBadFiles) {
  const std::string path = ::testing::TempDir() + "params_bad.txt";
  for (const char* body : {"mass = 3\n", "m1 3\n", "m1 = abc\n", "m1 = -1\n"}) {
    {
      std::ofstream f(path);
      f << body;
    }
    EXPECT_THROW(load_link_params(path), GaitError) << body;
  }
  std::remove(path.c_str());
  try {
    load_link_params(path);
    FAIL();
  } catch (const GaitError& e) {
    EXPECT_EQ(e.code(), ErrorCode::io);
  }
}

TEST(Swap, IsAnInvolution) {
  const Mat5 r = swap_matrix();
  EXPECT_TRUE((r * r).isIdentity(0.0));
  const Vec5 q = (Vec5() << 1, 2, 3, 4, 5).finished();
  EXPECT_EQ(swap(q), (Vec5() << 4, 3, 2, 1, 5).finished());
}

TEST(ComX, UprightPose) {
  const LinkParams lp;
  const Com c = com_x(Vec5::Zero(), lp);
  EXPECT_NEAR(c.horizontal, 0.0, 1e-15);
  EXPECT_NEAR(c.z, 0.6175, 5e-5);
  const Mat25 k = com_jacobian_x(Vec5::Zero(), lp);
  EXPECT_NEAR(k(0, 4), lp.m3 * lp.rx[4] / lp.total_mass(), 1e-15);
  EXPECT_NEAR(k(0, 4), 0.1411, 5e-5);
}

TEST(ComX, JacobianMatchesFiniteDifferences) {
  const LinkParams lp;
  std::mt19937_64 rng(3);
  double worst = 0.0;
  for (int i = 0; i < 1000; ++i) {
    const Vec5 q = random_x(rng);
    const Mat25 fd = fd_jacobian<5>(q, [&](const Vec5& x) { return com_x(x, lp); });
    worst = std::max(worst, (com_jacobian_x(q, lp) - fd).cwiseAbs().maxCoeff());
  }
  EXPECT_LE(worst, 1e-6);
}

TEST(ComX, ZeroRateGivesZeroVelocity) {
  const LinkParams lp;
  std::mt19937_64 rng(4);
  const Vec5 q = random_x(rng);
  EXPECT_EQ((com_jacobian_x(q, lp) * Vec5::Zero()).norm(), 0.0);
}

TEST(ComX, PeriodicInEachAngle) {
  const LinkParams lp;
  std::mt19937_64 rng(5);
  for (int k = 0; k < 100; ++k) {
    const Vec5 q = random_x(rng);
    for (int i = 0; i < 5; ++i) {
      Vec5 p = q;
      p(i) += 2 * kPi;
      EXPECT_NEAR(com_x(p, lp).horizontal, com_x(q, lp).horizontal, 1e-12);
      EXPECT_NEAR(com_x(p, lp).z, com_x(q, lp).z, 1e-12);
    }
  }
}

// Swapping stance and swing re-expresses the CoM from the other foot.
TEST(ComX, SwapMovesFrameToOtherFoot) {
  const LinkParams lp;
  std::mt19937_64 rng(6);
  for (int k = 0; k < 1000; ++k) {
    const Vec5 q = random_x(rng);
    const Com a = com_x(q, lp), b = com_x(swap(q), lp);
    ASSERT_NEAR(b.horizontal, a.horizontal - swing_foot_x(q, lp), 1e-12);
    ASSERT_NEAR(b.z, a.z - clearance_x(q, lp), 1e-12);
  }
}

TEST(ClearanceX, Examples) {
  const LinkParams lp;
  EXPECT_NEAR(clearance_x(Vec5::Zero(), lp), 0.0, 1e-15);
  Vec5 q = Vec5::Zero();
  q(3) = 0.3;
  EXPECT_GT(clearance_x(q, lp), 0.0);
}

TEST(ClearanceX, EFormIsMinusHalfClearance) {
  const LinkParams lp;
  std::mt19937_64 rng(8);
  for (int k = 0; k < 1000; ++k) {
    const Vec5 q = random_x(rng);
    const double g = clearance_x(q, lp);
    const double e = clearance_x_eform(q, lp);
    ASSERT_NEAR(e, -0.5 * g, 1e-12);
    if (std::abs(g) > 1e-9) ASSERT_EQ(e < 0.0, g > 0.0);
  }
}

class BoundaryPose : public ::testing::Test {
 protected:
  BoundaryX solve(double L) {
    GaitRequestX req;
    req.step_length = L;
    req.z0 = 0.58;
    FreeX free;
    free.knee0 = 0.1;
    free.end_prev << 0.084, 0.088, -0.174;
    return solve_boundary_x(req, lp, free);
  }
  LinkParams lp;
};

TEST_F(BoundaryPose, ContactPosesHaveZeroClearance) {
  for (double L : {-0.3, 0.0, 0.1, 0.25, 0.4}) {
    const BoundaryX b = solve(L);
    EXPECT_NEAR(clearance_x(b.a0, lp), 0.0, 1e-12) << L;
    EXPECT_NEAR(clearance_x(b.a_end, lp), 0.0, 1e-12) << L;
  }
}

TEST_F(BoundaryPose, StepLengthRoundTrips) {
  for (double L : {-0.3, 0.05, 0.25, 0.4}) {
    const BoundaryX b = solve(L);
    EXPECT_NEAR(step_length_x(b.a0, b.a_end, lp), L, 1e-9);
    // Under the swap symmetry H(0) = -H(T).
    EXPECT_NEAR(step_length_x(b.a0, b.a_end, lp), swing_foot_x(b.a_end, lp), 1e-9);
    EXPECT_NEAR(step_length_lemma(b.a0(0), b.contact_mid, b.half_split, lp), L, 1e-9);
  }
}

TEST(StepLengthX, SameConfigIsZero) {
  const LinkParams lp;
  std::mt19937_64 rng(9);
  const Vec5 q = random_x(rng);
  EXPECT_EQ(step_length_x(q, q, lp), 0.0);
}

TEST(YLegs, LawOfCosines) {
  const LinkParams lp;
  const LegLengths straight = y_leg_lengths(Vec5::Zero(), lp);
  EXPECT_NEAR(straight.ly1, 0.7208, 1e-12);
  Vec5 q = Vec5::Zero();
  q(0) = 0.1;
  EXPECT_NEAR(y_leg_lengths(q, lp).ly1, 0.7199, 5e-5);
  q(3) = 0.1;
  const LegLengths same = y_leg_lengths(q, lp);
  EXPECT_EQ(same.ly1, same.ly2);
  const LinkParams ly = with_y_legs(lp, same);
  EXPECT_EQ(ly.ly1, same.ly1);
  EXPECT_EQ(ly.ry[0], 0.5 * same.ly1);
}

TEST(ComY, VerticalLegs) {
  const LinkParams lp;
  const Vec3 q(kPi, kPi, 0.0);
  EXPECT_NEAR(com_y(q, lp).horizontal, 0.0, 1e-15);
  EXPECT_NEAR(clearance_y(q, lp), 0.0, 1e-15);
  EXPECT_NEAR(step_length_y(q, lp), 0.0, 1e-15);
}

TEST(ComY, JacobianMatchesFiniteDifferences) {
  const LinkParams lp = with_y_legs(LinkParams{}, {0.7199, 0.7185});
  std::mt19937_64 rng(10);
  double worst = 0.0;
  for (int i = 0; i < 1000; ++i) {
    const Vec3 q = random_y(rng);
    const Mat23 fd = fd_jacobian<3>(q, [&](const Vec3& x) { return com_y(x, lp); });
    worst = std::max(worst, (com_jacobian_y(q, lp) - fd).cwiseAbs().maxCoeff());
  }
  EXPECT_LE(worst, 1e-6);
}

TEST(ComY, PeriodicInEachAngle) {
  const LinkParams lp;
  std::mt19937_64 rng(12);
  const Vec3 q = random_y(rng);
  for (int i = 0; i < 3; ++i) {
    Vec3 p = q;
    p(i) -= 2 * kPi;
    EXPECT_NEAR(com_y(p, lp).horizontal, com_y(q, lp).horizontal, 1e-12);
    EXPECT_NEAR(com_y(p, lp).z, com_y(q, lp).z, 1e-12);
  }
}

TEST(StepLengthY, PublishedEndPose) {
  LinkParams lp;
  lp.ly1 = 0.7199;
  EXPECT_NEAR(step_length_y(Vec3(3.30, 2.97, 0.0), lp), 0.237, 1e-3);
}

TEST(Coefficients, ExpandedSumsReproduceCom) {
  const LinkParams lp = with_y_legs(LinkParams{}, {0.71, 0.70});
  const XComCoeffs a = x_com_coeffs(lp);
  const YComCoeffs b = y_com_coeffs(lp);
  std::mt19937_64 rng(13);
  for (int k = 0; k < 100; ++k) {
    const Vec5 q = random_x(rng);
    const double x = a.inv_mass * (a.a12 * std::sin(q(0) + q(1)) + a.a2 * std::sin(q(1)) +
                                   a.a3 * std::sin(q(2)) + a.a34 * std::sin(q(2) + q(3)) +
                                   a.a5 * std::sin(q(4)));
    EXPECT_NEAR(x, com_x(q, lp).horizontal, 1e-14);
    const Vec3 p = random_y(rng);
    const double z =
        b.inv_mass * (-b.b1 * std::cos(p(0)) - b.b2 * std::cos(p(1)) + b.b3 * std::cos(p(2)));
    EXPECT_NEAR(z, com_y(p, lp).z, 1e-14);
  }
}

}  // namespace
}  // namespace hlipgait
