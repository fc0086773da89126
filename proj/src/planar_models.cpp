#include "hlipgait/planar_models.hpp"

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <map>
#include <sstream>

#include "hlipgait/error.hpp"

namespace hlipgait {

namespace {

constexpr double kPi = 3.14159265358979323846;

}  // namespace

void LinkParams::validate() const {
  const double vals[] = {m1,    m2,    m3,    lx1,   lx2,   lx3,   rx[0], rx[1], rx[2],
                         rx[3], rx[4], ry[0], ry[1], ry[2], ly1,   ly2,   g};
  for (double v : vals) {
    if (!(v > 0.0) || !std::isfinite(v)) {
      throw GaitError(ErrorCode::invalid_argument, "link params must be finite and positive");
    }
  }
}

LinkParams load_link_params(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw GaitError(ErrorCode::io, "cannot open params file: " + path);

  LinkParams lp;
  std::map<std::string, double*> keys = {
      {"m1", &lp.m1},     {"m2", &lp.m2},     {"m3", &lp.m3},     {"lx1", &lp.lx1},
      {"lx2", &lp.lx2},   {"lx3", &lp.lx3},   {"rx1", &lp.rx[0]}, {"rx2", &lp.rx[1]},
      {"rx3", &lp.rx[2]}, {"rx4", &lp.rx[3]}, {"rx5", &lp.rx[4]}, {"ry1", &lp.ry[0]},
      {"ry2", &lp.ry[1]}, {"ry3", &lp.ry[2]}, {"ly1", &lp.ly1},   {"ly2", &lp.ly2},
      {"g", &lp.g}};
  // Offsets not given explicitly follow the link lengths.
  bool explicit_rx[5] = {}, explicit_ry[3] = {}, explicit_ly[2] = {};

  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    auto eq = line.find('=');
    std::string key, rest;
    double value = 0.0;
    if (eq == std::string::npos) {
      throw GaitError(ErrorCode::schema,
                      path + ":" + std::to_string(lineno) + ": expected key = value");
    }
    std::istringstream ks(line.substr(0, eq)), vs(line.substr(eq + 1));
    ks >> key;
    if (!(vs >> value) || (vs >> rest)) {
      throw GaitError(ErrorCode::schema,
                      path + ":" + std::to_string(lineno) + ": bad value for '" + key + "'");
    }
    auto it = keys.find(key);
    if (it == keys.end()) {
      throw GaitError(ErrorCode::schema,
                      path + ":" + std::to_string(lineno) + ": unknown key '" + key + "'");
    }
    *it->second = value;
    if (key.size() == 3 && key[0] == 'r' && key[1] == 'x') explicit_rx[key[2] - '1'] = true;
    if (key.size() == 3 && key[0] == 'r' && key[1] == 'y') explicit_ry[key[2] - '1'] = true;
    if (key == "ly1") explicit_ly[0] = true;
    if (key == "ly2") explicit_ly[1] = true;
  }

  const double lengths[5] = {lp.lx1, lp.lx2, lp.lx2, lp.lx1, lp.lx3};
  for (int i = 0; i < 5; ++i) {
    if (!explicit_rx[i]) lp.rx[i] = 0.5 * lengths[i];
  }
  if (!explicit_ly[0]) lp.ly1 = lp.lx1 + lp.lx2;
  if (!explicit_ly[1]) lp.ly2 = lp.lx1 + lp.lx2;
  if (!explicit_ry[0]) lp.ry[0] = 0.5 * lp.ly1;
  if (!explicit_ry[1]) lp.ry[1] = 0.5 * lp.ly2;
  if (!explicit_ry[2]) lp.ry[2] = 0.5 * lp.lx3;
  lp.validate();
  return lp;
}

LinkParams resolve_link_params(const std::string& cli_path) {
  if (!cli_path.empty()) return load_link_params(cli_path);
  if (const char* env = std::getenv("HLIPGAIT_PARAMS"); env && *env) {
    return load_link_params(env);
  }
  return LinkParams{};
}

Mat5 swap_matrix() {
  Mat5 r = Mat5::Zero();
  r(0, 3) = r(1, 2) = r(2, 1) = r(3, 0) = r(4, 4) = 1.0;
  return r;
}

Vec5 swap(const Vec5& q) {
  Vec5 out;
  out << q(3), q(2), q(1), q(0), q(4);
  return out;
}

// ---- X-model --------------------------------------------------------------

Com com_x(const Vec5& q, const LinkParams& lp) {
  const double l1 = lp.lx1, l2 = lp.lx2;
  const double* r = lp.rx;
  const double s12 = std::sin(q(0) + q(1)), c12 = std::cos(q(0) + q(1));
  const double s2 = std::sin(q(1)), c2 = std::cos(q(1));
  const double s3 = std::sin(q(2)), c3 = std::cos(q(2));
  const double s34 = std::sin(q(2) + q(3)), c34 = std::cos(q(2) + q(3));
  const double s5 = std::sin(q(4)), c5 = std::cos(q(4));

  const double h[5] = {r[0] * s12, l1 * s12 + r[1] * s2, l1 * s12 + l2 * s2 - r[2] * s3,
                       l1 * s12 + l2 * s2 - l2 * s3 - r[3] * s34,
                       l1 * s12 + l2 * s2 + r[4] * s5};
  const double v[5] = {r[0] * c12, l1 * c12 + r[1] * c2, l1 * c12 + l2 * c2 - r[2] * c3,
                       l1 * c12 + l2 * c2 - l2 * c3 - r[3] * c34,
                       l1 * c12 + l2 * c2 + r[4] * c5};
  const double m[5] = {lp.m1, lp.m2, lp.m2, lp.m1, lp.m3};
  double x = 0.0, z = 0.0;
  for (int i = 0; i < 5; ++i) {
    x += m[i] * h[i];
    z += m[i] * v[i];
  }
  const double mass = lp.total_mass();
  return {x / mass, z / mass};
}

XComCoeffs x_com_coeffs(const LinkParams& lp) {
  const double* r = lp.rx;
  XComCoeffs c;
  c.a12 = lp.m1 * r[0] + (lp.m1 + 2.0 * lp.m2 + lp.m3) * lp.lx1;
  c.a2 = lp.m2 * r[1] + (lp.m1 + lp.m2 + lp.m3) * lp.lx2;
  c.a3 = -(lp.m2 * r[2] + lp.m1 * lp.lx2);
  c.a34 = -lp.m1 * r[3];
  c.a5 = lp.m3 * r[4];
  c.inv_mass = 1.0 / lp.total_mass();
  c.l1 = lp.lx1;
  c.l2 = lp.lx2;
  return c;
}

Mat25 com_jacobian_x(const Vec5& q, const LinkParams& lp) {
  const XComCoeffs k = x_com_coeffs(lp);
  const double s12 = std::sin(q(0) + q(1)), c12 = std::cos(q(0) + q(1));
  const double s2 = std::sin(q(1)), c2 = std::cos(q(1));
  const double s3 = std::sin(q(2)), c3 = std::cos(q(2));
  const double s34 = std::sin(q(2) + q(3)), c34 = std::cos(q(2) + q(3));
  const double s5 = std::sin(q(4)), c5 = std::cos(q(4));
  Mat25 j;
  j(0, 0) = k.a12 * c12;
  j(0, 1) = k.a12 * c12 + k.a2 * c2;
  j(0, 2) = k.a3 * c3 + k.a34 * c34;
  j(0, 3) = k.a34 * c34;
  j(0, 4) = k.a5 * c5;
  j(1, 0) = -k.a12 * s12;
  j(1, 1) = -k.a12 * s12 - k.a2 * s2;
  j(1, 2) = -k.a3 * s3 - k.a34 * s34;
  j(1, 3) = -k.a34 * s34;
  j(1, 4) = -k.a5 * s5;
  return j * k.inv_mass;
}

double clearance_x(const Vec5& q, const LinkParams& lp) {
  return lp.lx1 * (std::cos(q(0) + q(1)) - std::cos(q(2) + q(3))) +
         lp.lx2 * (std::cos(q(1)) - std::cos(q(2)));
}

double swing_foot_x(const Vec5& q, const LinkParams& lp) {
  return lp.lx1 * (std::sin(q(0) + q(1)) - std::sin(q(2) + q(3))) +
         lp.lx2 * (std::sin(q(1)) - std::sin(q(2)));
}

double step_length_x(const Vec5& q0, const Vec5& qT, const LinkParams& lp) {
  return 0.5 * (swing_foot_x(qT, lp) - swing_foot_x(q0, lp));
}

double clearance_x_eform(const Vec5& q, const LinkParams& lp) {
  const double e1 = q(0) + q(1) + q(2) + q(3);
  const double e2 = q(1) + q(2);
  const double e3 = q(0) + q(1) - q(2) - q(3);
  const double e4 = q(1) - q(2);
  return lp.lx1 * std::sin(0.5 * e1) * std::sin(0.5 * e3) +
         lp.lx2 * std::sin(0.5 * e2) * std::sin(0.5 * e4);
}

// ---- Y-model --------------------------------------------------------------

LegLengths y_leg_lengths(const Vec5& x_initial, const LinkParams& lp) {
  const double a = lp.lx1, b = lp.lx2;
  auto leg = [&](double knee) {
    return std::sqrt(a * a + b * b - 2.0 * a * b * std::cos(kPi - knee));
  };
  return {leg(x_initial(0)), leg(x_initial(3))};
}

LinkParams with_y_legs(const LinkParams& lp, const LegLengths& legs) {
  LinkParams out = lp;
  out.ly1 = legs.ly1;
  out.ly2 = legs.ly2;
  out.ry[0] = 0.5 * legs.ly1;
  out.ry[1] = 0.5 * legs.ly2;
  return out;
}

Com com_y(const Vec3& q, const LinkParams& lp) {
  const double* r = lp.ry;
  const double stance = q(1) - kPi;
  const double swing = kPi - q(0);
  const double h[3] = {r[0] * std::sin(stance), lp.ly1 * std::sin(stance) + r[1] * std::sin(swing),
                       lp.ly1 * std::sin(stance) + r[2] * std::sin(q(2))};
  const double v[3] = {r[0] * std::cos(stance), lp.ly1 * std::cos(stance) + r[1] * std::cos(swing),
                       lp.ly1 * std::cos(stance) + r[2] * std::cos(q(2))};
  const double m[3] = {lp.leg_mass(), lp.leg_mass(), lp.m3};
  double y = 0.0, z = 0.0;
  for (int i = 0; i < 3; ++i) {
    y += m[i] * h[i];
    z += m[i] * v[i];
  }
  const double mass = lp.total_mass();
  return {y / mass, z / mass};
}

YComCoeffs y_com_coeffs(const LinkParams& lp) {
  YComCoeffs c;
  c.b1 = lp.leg_mass() * lp.ry[1];
  c.b2 = lp.leg_mass() * lp.ry[0] + (lp.leg_mass() + lp.m3) * lp.ly1;
  c.b3 = lp.m3 * lp.ry[2];
  c.inv_mass = 1.0 / lp.total_mass();
  c.ly1 = lp.ly1;
  c.ly2 = lp.ly2;
  return c;
}

Mat23 com_jacobian_y(const Vec3& q, const LinkParams& lp) {
  const YComCoeffs k = y_com_coeffs(lp);
  Mat23 j;
  j(0, 0) = k.b1 * std::cos(q(0));
  j(0, 1) = -k.b2 * std::cos(q(1));
  j(0, 2) = k.b3 * std::cos(q(2));
  j(1, 0) = k.b1 * std::sin(q(0));
  j(1, 1) = k.b2 * std::sin(q(1));
  j(1, 2) = -k.b3 * std::sin(q(2));
  return j * k.inv_mass;
}

double clearance_y(const Vec3& q, const LinkParams& lp) {
  return lp.ly1 * std::cos(kPi - q(0)) - lp.ly2 * std::cos(q(1) - kPi);
}

double step_length_y(const Vec3& qT, const LinkParams& lp) {
  return -2.0 * lp.ly1 * std::sin(0.5 * (qT(1) - qT(0)));
}

}  // namespace hlipgait
