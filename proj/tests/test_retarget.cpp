#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "hlipgait/error.hpp"
#include "hlipgait/planner.hpp"
#include "hlipgait/retarget.hpp"

namespace hlipgait {
namespace {

constexpr double kPi = 3.14159265358979323846;

enum Joint { LAky, LKny, LHpy, RAky, RKny, RHpy, LAkx, LHpx, RAkx, RHpx, LHpz, RHpz };

struct Plans {
  PlanX x;
  PlanY y;
};

Plans make_plans(double lx, double vy, double z0 = 0.6) {
  GaitRequestX rx;
  rx.step_length = lx;
  rx.z0 = z0;
  Plans p;
  p.x = plan_x(rx, LinkParams{});
  GaitRequestY ry;
  ry.walking_speed = vy;
  ry.z0 = z0;
  ry.legs = y_leg_lengths(p.x.curve.control().col(0), LinkParams{});
  p.y = plan_y(ry, LinkParams{});
  return p;
}

class Gait : public ::testing::Test {
 protected:
  static void SetUpTestSuite() { plans_ = new Plans(make_plans(0.25, 0.3)); }
  static void TearDownTestSuite() { delete plans_; }
  static Plans* plans_;
};
Plans* Gait::plans_ = nullptr;

TEST(MapConfig, UprightMapsToZero) {
  const JointVector12 j = map_config(Vec5::Zero(), Vec3(kPi, kPi, 0.0), Stance::right);
  EXPECT_EQ(j.cwiseAbs().maxCoeff(), 0.0);
  EXPECT_EQ(map_config(Vec5::Zero(), Vec3(kPi, kPi, 0.0), Stance::left).cwiseAbs().maxCoeff(),
            0.0);
}

TEST(MapConfig, TableRowsHoldLiterally) {
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int k = 0; k < 200; ++k) {
    const Vec5 x = Vec5::NullaryExpr([&](Eigen::Index) { return u(rng); });
    const Vec3 y(kPi + u(rng), kPi + u(rng), u(rng));
    // Y legs relative to vertical.
    const double y1 = y(0) - kPi, y2 = y(1) - kPi, y3 = y(2);
    const JointVector12 j = map_config(x, y, Stance::right);
    EXPECT_EQ(j(LAky), -x(2) - x(3));
    EXPECT_EQ(j(LKny), -x(3));
    EXPECT_EQ(j(LHpy), x(2) + x(4));
    EXPECT_EQ(j(RAky), -x(0) - x(1));
    EXPECT_EQ(j(RKny), -x(0));
    EXPECT_EQ(j(RHpy), x(1) + x(4));
    EXPECT_EQ(j(LAkx), y1);
    EXPECT_EQ(j(LHpx), y1 - y3);
    EXPECT_EQ(j(RAkx), y2);
    EXPECT_EQ(j(RHpx), y2 - y3);
    EXPECT_EQ(j(LHpz), 0.0);
    EXPECT_EQ(j(RHpz), 0.0);
  }
}

TEST(MapConfig, StanceFlipMirrors) {
  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int k = 0; k < 100; ++k) {
    const Vec5 x = Vec5::NullaryExpr([&](Eigen::Index) { return u(rng); });
    const Vec3 y(kPi + u(rng), kPi + u(rng), u(rng));
    EXPECT_EQ(map_config(x, y, Stance::left), mirror_joints(map_config(x, y, Stance::right)));
    EXPECT_EQ(mirror_joints(mirror_joints(map_config(x, y, Stance::left))),
              map_config(x, y, Stance::left));
    const Vec5 dx = Vec5::NullaryExpr([&](Eigen::Index) { return u(rng); });
    const Vec3 dy(u(rng), u(rng), u(rng));
    EXPECT_EQ(map_rates(dx, dy, Stance::left), mirror_joints(map_rates(dx, dy, Stance::right)));
  }
}

TEST(MapConfig, RatesAreTheLinearPart) {
  const Vec5 a = (Vec5() << 0.1, -0.2, 0.3, 0.05, -0.4).finished();
  const Vec5 b = (Vec5() << -0.3, 0.1, 0.2, 0.6, 0.1).finished();
  const Vec3 ya(3.0, 3.3, 0.1), yb(3.2, 2.9, -0.2);
  for (Stance s : {Stance::left, Stance::right}) {
    const JointVector12 d = map_config(a, ya, s) - map_config(b, yb, s);
    EXPECT_LE((d - map_rates(a - b, ya - yb, s)).cwiseAbs().maxCoeff(), 1e-15);
  }
}

TEST(Stance, ParseAndPrint) {
  EXPECT_EQ(parse_stance("left"), Stance::left);
  EXPECT_EQ(opposite(Stance::left), Stance::right);
  EXPECT_STREQ(to_string(Stance::right), "right");
  EXPECT_THROW(parse_stance("both"), GaitError);
}

TEST_F(Gait, PeriodicOverTwoSteps) {
  for (Stance s : {Stance::right, Stance::left}) {
    const RobotGait g = assemble_gait(plans_->x, plans_->y, s);
    EXPECT_NEAR(g.duration(), 0.8, 1e-15);
    const GaitSample a = g.at(0.0), b = g.at(g.duration());
    EXPECT_LE((a.q - b.q).cwiseAbs().maxCoeff(), 1e-9);
    EXPECT_LE((a.dq - b.dq).cwiseAbs().maxCoeff(), 1e-9);
    for (double t : {0.13, 0.41, 0.77}) {
      const GaitSample p = g.at(t), q = g.at(t + 3 * g.duration());
      EXPECT_LE((p.q - q.q).cwiseAbs().maxCoeff(), 1e-9);
      EXPECT_LE((p.dq - q.dq).cwiseAbs().maxCoeff(), 1e-9);
    }
  }
}

TEST_F(Gait, JunctionIsContinuous) {
  const RobotGait g = assemble_gait(plans_->x, plans_->y);
  const double T = g.t_ssp();
  Vec5 qx, dqx;
  Vec3 qy, dqy;
  g.model_state(1, 0.0, qx, dqx, qy, dqy);
  const JointVector12 after = map_config(qx, qy, opposite(g.stance_first()));
  const JointVector12 rate_after = map_rates(dqx, dqy, opposite(g.stance_first()));
  const GaitSample before = g.at(T);
  EXPECT_LE((after - before.q).cwiseAbs().maxCoeff(), 1e-9);
  // Pitch chain and ankle roll rates are C1; hip roll carries the torso rate.
  for (int j : {LAky, LKny, LHpy, RAky, RKny, RHpy, LAkx, RAkx}) {
    EXPECT_NEAR(rate_after(j), before.dq(j), 1e-9) << kJointNames[j];
  }
}

TEST_F(Gait, SecondStepMirrorsPitchChannels) {
  const RobotGait g = assemble_gait(plans_->x, plans_->y);
  for (double t : {0.0, 0.1, 0.25, 0.39}) {
    const JointVector12 a = mirror_joints(g.at(t).q), b = g.at(t + g.t_ssp()).q;
    for (int j : {LAky, LKny, LHpy, RAky, RKny, RHpy}) EXPECT_NEAR(a(j), b(j), 1e-9);
  }
}

TEST_F(Gait, SampledTrajectory) {
  const RobotGait g = assemble_gait(plans_->x, plans_->y);
  const std::vector<GaitSample> two = sample(g, g.duration());
  ASSERT_EQ(two.size(), 2u);
  EXPECT_LE((two[0].q - two[1].q).cwiseAbs().maxCoeff(), 1e-9);

  const std::vector<GaitSample> s = sample(g, 0.001);
  ASSERT_EQ(s.size(), 801u);
  EXPECT_EQ(s.back().t, 0.8);
  for (const GaitSample& x : s) {
    ASSERT_TRUE(x.q.allFinite() && x.dq.allFinite());
    ASSERT_EQ(x.q(LHpz), 0.0);
    ASSERT_EQ(x.q(RHpz), 0.0);
  }
  EXPECT_EQ(sample(g, 0.001, 3).size(), 2401u);
  EXPECT_THROW(sample(g, 0.0), GaitError);
}

TEST_F(Gait, VelocitiesMatchFiniteDifferences) {
  const RobotGait g = assemble_gait(plans_->x, plans_->y);
  const double h = 1e-5;
  for (double t = 0.01; t < 0.8; t += 0.0137) {
    if (std::abs(t - 0.4) < 2 * h) continue;
    const JointVector12 fd = (g.at(t + h).q - g.at(t - h).q) / (2 * h);
    EXPECT_LE((fd - g.at(t).dq).cwiseAbs().maxCoeff(), 1e-5) << t;
  }
}

TEST(AssembleGait, StandInPlaceSway) {
  const Plans p = make_plans(0.0, 0.0);
  const RobotGait g = assemble_gait(p.x, p.y);
  EXPECT_NEAR(p.x.step_length, 0.0, 0.0);
  EXPECT_NEAR(p.y.step_length, 0.0, 0.0);
  EXPECT_LE((g.at(0.0).q - g.at(0.8).q).cwiseAbs().maxCoeff(), 1e-9);
}

TEST(AssembleGait, RejectsMismatchedPlans) {
  const Plans p = make_plans(0.1, 0.1);
  PlanY y = p.y;
  y.z0 += 0.01;
  EXPECT_THROW(assemble_gait(p.x, y), GaitError);
  y = p.y;
  y.curve = BezierCurve(y.curve.control(), 0.5);
  EXPECT_THROW(assemble_gait(p.x, y), GaitError);
}

}  // namespace
}  // namespace hlipgait
