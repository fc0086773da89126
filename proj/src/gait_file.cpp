#include "hlipgait/gait_file.hpp"

#include <cstdio>
#include <fstream>
#include <ostream>

#include "hlipgait/error.hpp"

namespace hlipgait {

using nlohmann::json;

std::string format9(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.9g", v);
  return buf;
}

double round9(double v) {
  if (!std::isfinite(v)) return v;
  return std::stod(format9(v));
}

namespace {

json matrix_json(const Eigen::MatrixXd& m) {
  json rows = json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(m(r, c));
    rows.push_back(std::move(row));
  }
  return rows;
}

Eigen::MatrixXd matrix_from(const json& j, int rows, int cols, const char* what) {
  if (!j.is_array() || static_cast<int>(j.size()) != rows) {
    throw GaitError(ErrorCode::schema, std::string(what) + ": expected " + std::to_string(rows) +
                                           " control rows");
  }
  Eigen::MatrixXd m(rows, cols);
  for (int r = 0; r < rows; ++r) {
    if (!j[r].is_array() || static_cast<int>(j[r].size()) != cols) {
      throw GaitError(ErrorCode::schema, std::string(what) + ": control row " +
                                             std::to_string(r) + " needs " +
                                             std::to_string(cols) + " values");
    }
    for (int c = 0; c < cols; ++c) m(r, c) = j[r][c].get<double>();
  }
  return m;
}

json search_json(const SearchOptions& s) {
  return {{"samples", s.samples}, {"radius", s.radius}, {"seed", s.seed}};
}

SearchOptions search_from(const json& j) {
  SearchOptions s;
  s.samples = j.at("samples").get<int>();
  s.radius = j.at("radius").get<double>();
  s.seed = j.at("seed").get<std::uint64_t>();
  return s;
}

}  // namespace

json to_json(const LinkParams& lp) {
  return {{"m1", lp.m1},
          {"m2", lp.m2},
          {"m3", lp.m3},
          {"lx1", lp.lx1},
          {"lx2", lp.lx2},
          {"lx3", lp.lx3},
          {"rx", {lp.rx[0], lp.rx[1], lp.rx[2], lp.rx[3], lp.rx[4]}},
          {"ry", {lp.ry[0], lp.ry[1], lp.ry[2]}},
          {"ly1", lp.ly1},
          {"ly2", lp.ly2},
          {"g", lp.g}};
}

LinkParams link_params_from_json(const json& j) {
  LinkParams lp;
  lp.m1 = j.at("m1").get<double>();
  lp.m2 = j.at("m2").get<double>();
  lp.m3 = j.at("m3").get<double>();
  lp.lx1 = j.at("lx1").get<double>();
  lp.lx2 = j.at("lx2").get<double>();
  lp.lx3 = j.at("lx3").get<double>();
  const auto& rx = j.at("rx");
  const auto& ry = j.at("ry");
  if (rx.size() != 5 || ry.size() != 3) throw GaitError(ErrorCode::schema, "robot: rx/ry sizes");
  for (int i = 0; i < 5; ++i) lp.rx[i] = rx[i].get<double>();
  for (int i = 0; i < 3; ++i) lp.ry[i] = ry[i].get<double>();
  lp.ly1 = j.at("ly1").get<double>();
  lp.ly2 = j.at("ly2").get<double>();
  lp.g = j.at("g").get<double>();
  lp.validate();
  return lp;
}

json to_json(const VerifyReport& report) {
  json props = json::array();
  for (const auto& p : report.properties) {
    props.push_back({{"name", p.name},
                     {"max_violation", round9(p.max_violation)},
                     {"tolerance", round9(p.tolerance)},
                     {"pass", p.pass}});
  }
  return {{"pass", report.pass()}, {"grid", report.grid}, {"properties", std::move(props)}};
}

json to_json(const GaitFile& f) {
  const PlanX& x = f.x;
  const PlanY& y = f.y;
  json xreq = {{"t_ssp", x.request.t_ssp},
               {"z0", x.request.z0},
               {"degree", x.request.degree},
               {"search", search_json(x.request.search)}};
  xreq["step_length"] = x.request.step_length ? json(*x.request.step_length) : json(nullptr);
  xreq["walking_speed"] =
      x.request.walking_speed ? json(*x.request.walking_speed) : json(nullptr);
  json yreq = {{"walking_speed", y.request.walking_speed},
               {"t_ssp", y.request.t_ssp},
               {"z0", y.request.z0},
               {"degree", y.request.degree},
               {"search", search_json(y.request.search)}};

  json j = {
      {"schema", kGaitSchema},
      {"robot", to_json(f.robot)},
      {"t_ssp", x.t_ssp},
      {"z0", x.z0},
      {"stance_first", to_string(f.stance_first)},
      {"x",
       {{"degree", x.curve.degree()},
        {"channels", x.curve.channels()},
        {"control", matrix_json(x.curve.control())},
        {"step_length", x.step_length},
        {"sample_index", x.sample_index},
        {"request", xreq}}},
      {"y",
       {{"degree", y.curve.degree()},
        {"channels", y.curve.channels()},
        {"control", matrix_json(y.curve.control())},
        {"step_length", y.step_length},
        {"legs", {{"ly1", y.legs.ly1}, {"ly2", y.legs.ly2}}},
        {"sample_index", y.sample_index},
        {"request", yreq}}},
  };
  json prov = {{"generator", "hlipgait"},
               {"sampler_seed", {{"x", x.request.search.seed}, {"y", y.request.search.seed}}}};
  if (f.created) prov["created"] = *f.created;
  j["provenance"] = std::move(prov);

  if (f.trajectory_dt) {
    const RobotGait gait(x.curve, y.curve, f.stance_first);
    json cols = json::array({"t"});
    for (const char* n : kJointNames) cols.push_back(n);
    for (const char* n : kJointNames) cols.push_back(std::string("d") + n);
    json rows = json::array();
    for (const GaitSample& s : sample(gait, *f.trajectory_dt)) {
      json row = json::array({round9(s.t)});
      for (int i = 0; i < 12; ++i) row.push_back(round9(s.q(i)));
      for (int i = 0; i < 12; ++i) row.push_back(round9(s.dq(i)));
      rows.push_back(std::move(row));
    }
    j["trajectory"] = {{"dt", *f.trajectory_dt}, {"columns", cols}, {"rows", rows}};
  }
  return j;
}

GaitFile gait_from_json(const json& j) {
  try {
    if (j.at("schema").get<std::string>() != kGaitSchema) {
      throw GaitError(ErrorCode::schema,
                      "unsupported gait schema '" + j.at("schema").get<std::string>() + "'");
    }
    GaitFile f;
    f.robot = link_params_from_json(j.at("robot"));
    f.stance_first = parse_stance(j.at("stance_first").get<std::string>());
    const double t_ssp = j.at("t_ssp").get<double>();
    const double z0 = j.at("z0").get<double>();

    const json& jx = j.at("x");
    const int nx = jx.at("degree").get<int>();
    f.x.curve = BezierCurve(matrix_from(jx.at("control"), 5, nx + 1, "x"), t_ssp);
    f.x.step_length = jx.at("step_length").get<double>();
    f.x.sample_index = jx.value("sample_index", -1);
    f.x.t_ssp = t_ssp;
    f.x.z0 = z0;
    const json& xr = jx.at("request");
    f.x.request.t_ssp = xr.at("t_ssp").get<double>();
    f.x.request.z0 = xr.at("z0").get<double>();
    f.x.request.degree = xr.at("degree").get<int>();
    f.x.request.search = search_from(xr.at("search"));
    if (!xr.at("step_length").is_null()) f.x.request.step_length = xr["step_length"].get<double>();
    if (!xr.at("walking_speed").is_null()) {
      f.x.request.walking_speed = xr["walking_speed"].get<double>();
    }

    const json& jy = j.at("y");
    const int ny = jy.at("degree").get<int>();
    f.y.curve = BezierCurve(matrix_from(jy.at("control"), 3, ny + 1, "y"), t_ssp);
    f.y.step_length = jy.at("step_length").get<double>();
    f.y.sample_index = jy.value("sample_index", -1);
    f.y.t_ssp = t_ssp;
    f.y.z0 = z0;
    f.y.legs = {jy.at("legs").at("ly1").get<double>(), jy.at("legs").at("ly2").get<double>()};
    const json& yr = jy.at("request");
    f.y.request.walking_speed = yr.at("walking_speed").get<double>();
    f.y.request.t_ssp = yr.at("t_ssp").get<double>();
    f.y.request.z0 = yr.at("z0").get<double>();
    f.y.request.degree = yr.at("degree").get<int>();
    f.y.request.search = search_from(yr.at("search"));
    f.y.request.legs = f.y.legs;

    const json& prov = j.at("provenance");
    if (prov.contains("created")) f.created = prov["created"].get<std::string>();
    if (j.contains("trajectory")) f.trajectory_dt = j["trajectory"].at("dt").get<double>();
    return f;
  } catch (const json::exception& e) {
    throw GaitError(ErrorCode::schema, std::string("malformed gait file: ") + e.what());
  }
}

void write_gait_file(const std::string& path, const GaitFile& file) {
  std::ofstream out(path);
  if (!out) throw GaitError(ErrorCode::io, "cannot write " + path);
  out << to_json(file).dump(2) << '\n';
  if (!out) throw GaitError(ErrorCode::io, "write failed: " + path);
}

GaitFile read_gait_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw GaitError(ErrorCode::io, "cannot open " + path);
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw GaitError(ErrorCode::schema, path + ": " + e.what());
  }
  return gait_from_json(j);
}

void write_trajectory_csv(std::ostream& os, const std::vector<GaitSample>& samples) {
  os << 't';
  for (const char* n : kJointNames) os << ',' << n;
  for (const char* n : kJointNames) os << ",d" << n;
  os << '\n';
  for (const GaitSample& s : samples) {
    os << format9(s.t);
    for (int i = 0; i < 12; ++i) os << ',' << format9(s.q(i));
    for (int i = 0; i < 12; ++i) os << ',' << format9(s.dq(i));
    os << '\n';
  }
}

}  // namespace hlipgait
