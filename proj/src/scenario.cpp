#include "uavinspect/scenario.hpp"

#include "uavinspect/errors.hpp"

#include <json.hpp>

#include <fstream>
#include <set>
#include <sstream>

namespace uavinspect {

using nlohmann::json;

namespace {

// Strict view over one JSON object: every key must be consumed.
class Obj {
 public:
  Obj(const json& j, std::string path) : j_(j), path_(std::move(path)) {
    if (!j_.is_object()) throw ConfigError(path_ + " must be an object");
  }
  Obj(const Obj&) = delete;
  Obj& operator=(const Obj&) = delete;
  ~Obj() noexcept(false) {
    if (std::uncaught_exceptions() > 0) return;
    for (const auto& [k, v] : j_.items()) {
      if (!seen_.count(k)) throw ConfigError("unknown key " + at(k));
    }
  }

  [[nodiscard]] std::string at(const std::string& key) const { return path_.empty() ? key : path_ + "." + key; }

  const json* find(const std::string& key) {
    seen_.insert(key);
    auto it = j_.find(key);
    if (it == j_.end() || it->is_null()) return nullptr;
    return &*it;
  }

  void num(const std::string& key, double& out) {
    if (const json* v = find(key)) {
      if (!v->is_number()) throw ConfigError(at(key) + " must be a number");
      out = v->get<double>();
    }
  }
  void integer(const std::string& key, int& out) {
    if (const json* v = find(key)) {
      if (!v->is_number_integer()) throw ConfigError(at(key) + " must be an integer");
      out = v->get<int>();
    }
  }
  void u64(const std::string& key, std::uint64_t& out) {
    if (const json* v = find(key)) {
      if (!v->is_number_unsigned() && !(v->is_number_integer() && v->get<long long>() >= 0)) {
        throw ConfigError(at(key) + " must be a non-negative integer");
      }
      out = v->get<std::uint64_t>();
    }
  }
  void boolean(const std::string& key, bool& out) {
    if (const json* v = find(key)) {
      if (!v->is_boolean()) throw ConfigError(at(key) + " must be true or false");
      out = v->get<bool>();
    }
  }
  void str(const std::string& key, std::string& out) {
    if (const json* v = find(key)) {
      if (!v->is_string()) throw ConfigError(at(key) + " must be a string");
      out = v->get<std::string>();
    }
  }
  template <int N>
  void vec(const std::string& key, Eigen::Matrix<double, N, 1>& out) {
    if (const json* v = find(key)) {
      if (!v->is_array() || v->size() != N) throw ConfigError(at(key) + " must be an array of " + std::to_string(N) + " numbers");
      for (int i = 0; i < N; ++i) {
        if (!(*v)[i].is_number()) throw ConfigError(at(key) + " must contain numbers");
        out[i] = (*v)[i].get<double>();
      }
    }
  }
  template <int N>
  void mat(const std::string& key, Eigen::Matrix<double, N, N>& out) {
    if (const json* v = find(key)) {
      if (!v->is_array() || v->size() != N) throw ConfigError(at(key) + " must be a " + std::to_string(N) + "x" + std::to_string(N) + " matrix");
      for (int r = 0; r < N; ++r) {
        const json& row = (*v)[r];
        if (!row.is_array() || row.size() != N) throw ConfigError(at(key) + " must be a " + std::to_string(N) + "x" + std::to_string(N) + " matrix");
        for (int c = 0; c < N; ++c) {
          if (!row[c].is_number()) throw ConfigError(at(key) + " must contain numbers");
          out(r, c) = row[c].get<double>();
        }
      }
    }
  }

 private:
  const json& j_;
  std::string path_;
  std::set<std::string> seen_;
};

template <int N>
json vec_json(const Eigen::Matrix<double, N, 1>& v) {
  json a = json::array();
  for (int i = 0; i < N; ++i) a.push_back(v[i]);
  return a;
}

template <int N>
json mat_json(const Eigen::Matrix<double, N, N>& m) {
  json a = json::array();
  for (int r = 0; r < N; ++r) {
    json row = json::array();
    for (int c = 0; c < N; ++c) row.push_back(m(r, c));
    a.push_back(row);
  }
  return a;
}

json pid_json(const PidGains& g) { return {{"kp", g.kp}, {"ki", g.ki}, {"kd", g.kd}, {"i_max", g.i_max}}; }

void read_pid(Obj& o, PidGains& g) {
  o.num("kp", g.kp);
  o.num("ki", g.ki);
  o.num("kd", g.kd);
  o.num("i_max", g.i_max);
}

json imu_json(const ImuNoiseSpec& s) {
  return {{"gyro_noise_std", s.gyro_noise_std}, {"gyro_bias", vec_json<3>(s.gyro_bias)},
          {"accel_noise_std", s.accel_noise_std}, {"accel_bias", vec_json<3>(s.accel_bias)},
          {"mag_noise_std", s.mag_noise_std}};
}

void read_imu(const json& j, const std::string& path, ImuNoiseSpec& s) {
  Obj o(j, path);
  o.num("gyro_noise_std", s.gyro_noise_std);
  o.vec<3>("gyro_bias", s.gyro_bias);
  o.num("accel_noise_std", s.accel_noise_std);
  o.vec<3>("accel_bias", s.accel_bias);
  o.num("mag_noise_std", s.mag_noise_std);
}

json to_json_doc(const ScenarioConfig& sc) {
  const MissionConfig& m = sc.mission;
  const BuildingSpec& b = m.scene.building();
  json decals = json::array();
  for (const auto& d : m.scene.decals()) {
    decals.push_back({{"id", d.id}, {"face", std::string(to_string(d.face))},
                      {"center_uv", vec_json<2>(d.center_uv)}, {"extent_uv", vec_json<2>(d.extent_uv)}});
  }
  json obstacles = json::array();
  for (const auto& o : m.scene.obstacles()) {
    obstacles.push_back({{"id", o.id}, {"center", vec_json<2>(o.center)}, {"radius", o.radius}, {"height", o.height}});
  }
  json kalman = {{"q", mat_json<3>(m.kalman.Q)}, {"p0", mat_json<3>(m.kalman.P0)}};
  kalman["r"] = m.kalman_r_from_noise ? json(nullptr) : mat_json<2>(m.kalman.R);

  json doc;
  doc["building"] = {{"length", b.length}, {"width", b.width}, {"height", b.height}, {"center", vec_json<2>(b.center)}};
  doc["decals"] = decals;
  doc["obstacles"] = obstacles;
  doc["home"] = {{"position", vec_json<3>(m.home)}, {"yaw_rad", m.home_yaw}};
  doc["plan"] = {{"standoff", m.plan.standoff}, {"buffer", m.plan.buffer}, {"layer_height", m.plan.layer_height},
                 {"first_layer_alt", m.plan.first_layer_alt}, {"waypoint_spacing", m.plan.waypoint_spacing}};
  doc["vehicle"] = {{"tau", m.vehicle.tau}, {"v_max", m.vehicle.v_max}, {"yaw_rate_max", m.vehicle.yaw_rate_max},
                    {"tilt_tau", m.vehicle.tilt_tau}, {"max_tilt_rad", m.vehicle.max_tilt}};
  doc["pid"] = pid_json(m.pid);
  doc["tracking"] = {{"yaw_gain", m.tracking.yaw_gain}};
  doc["avoidance"] = {{"d_engage", m.avoidance.d_engage}, {"front_half_angle_rad", m.avoidance.front_half_angle},
                      {"pid", pid_json(m.avoidance_pid)}};
  doc["imu1"] = imu_json(m.imu1);
  doc["imu2"] = imu_json(m.imu2);
  doc["complementary_alpha"] = m.complementary_alpha;
  doc["tilt_gate"] = m.tilt_gate;
  doc["kalman"] = kalman;
  doc["classifier"] = {{"kind", std::string(to_string(m.classifier.kind))}, {"accuracy", m.classifier.accuracy}};
  doc["camera"] = {{"hfov_rad", m.camera.hfov}, {"vfov_rad", m.camera.vfov}, {"range", m.camera.range},
                   {"max_incidence_rad", m.camera.max_incidence}};
  doc["laser"] = {{"n_bins", m.laser.n_bins}, {"range_max", m.laser.range_max}};
  doc["mission"] = {{"dt", m.mission.dt}, {"arrival_tol", m.mission.arrival_tol}, {"hold_time", m.mission.hold_time},
                    {"watchdog", m.mission.watchdog}, {"capture_interval", m.mission.capture_interval},
                    {"merge_radius", m.mission.merge_radius}, {"trajectory_stride", m.mission.trajectory_stride},
                    {"inspect_only", m.mission.inspect_only}};
  doc["seeds"] = {{"imu1", m.imu1.seed}, {"imu2", m.imu2.seed}, {"classifier", m.classifier.seed}};
  doc["output_dir"] = sc.output_dir;
  return doc;
}

ScenarioConfig from_json_doc(const json& doc) {
  ScenarioConfig sc = default_scenario();
  MissionConfig& m = sc.mission;
  BuildingSpec b = m.scene.building();
  std::vector<FaultDecal> decals = m.scene.decals();
  std::vector<Obstacle> obstacles = m.scene.obstacles();

  Obj root(doc, "");
  if (const json* j = root.find("building")) {
    Obj o(*j, "building");
    o.num("length", b.length);
    o.num("width", b.width);
    o.num("height", b.height);
    o.vec<2>("center", b.center);
  }
  if (const json* j = root.find("decals")) {
    if (!j->is_array()) throw ConfigError("decals must be an array");
    decals.clear();
    for (std::size_t i = 0; i < j->size(); ++i) {
      Obj o((*j)[i], "decals." + std::to_string(i));
      FaultDecal d;
      d.id = static_cast<int>(i);
      o.integer("id", d.id);
      std::string face{to_string(d.face)};
      o.str("face", face);
      d.face = face_from_string(face);
      o.vec<2>("center_uv", d.center_uv);
      o.vec<2>("extent_uv", d.extent_uv);
      decals.push_back(d);
    }
  }
  if (const json* j = root.find("obstacles")) {
    if (!j->is_array()) throw ConfigError("obstacles must be an array");
    obstacles.clear();
    for (std::size_t i = 0; i < j->size(); ++i) {
      Obj o((*j)[i], "obstacles." + std::to_string(i));
      Obstacle ob;
      ob.id = static_cast<int>(i);
      o.integer("id", ob.id);
      o.vec<2>("center", ob.center);
      o.num("radius", ob.radius);
      o.num("height", ob.height);
      if (!(ob.radius > 0.0) || !(ob.height > 0.0)) throw ConfigError(o.at("radius") + " and height must be > 0");
      obstacles.push_back(ob);
    }
  }
  if (const json* j = root.find("home")) {
    Obj o(*j, "home");
    o.vec<3>("position", m.home);
    o.num("yaw_rad", m.home_yaw);
  }
  if (const json* j = root.find("plan")) {
    Obj o(*j, "plan");
    o.num("standoff", m.plan.standoff);
    o.num("buffer", m.plan.buffer);
    o.num("layer_height", m.plan.layer_height);
    o.num("first_layer_alt", m.plan.first_layer_alt);
    o.num("waypoint_spacing", m.plan.waypoint_spacing);
  }
  if (const json* j = root.find("vehicle")) {
    Obj o(*j, "vehicle");
    o.num("tau", m.vehicle.tau);
    o.num("v_max", m.vehicle.v_max);
    o.num("yaw_rate_max", m.vehicle.yaw_rate_max);
    o.num("tilt_tau", m.vehicle.tilt_tau);
    o.num("max_tilt_rad", m.vehicle.max_tilt);
  }
  if (const json* j = root.find("pid")) {
    Obj o(*j, "pid");
    read_pid(o, m.pid);
  }
  if (const json* j = root.find("tracking")) {
    Obj o(*j, "tracking");
    o.num("yaw_gain", m.tracking.yaw_gain);
  }
  if (const json* j = root.find("avoidance")) {
    Obj o(*j, "avoidance");
    o.num("d_engage", m.avoidance.d_engage);
    o.num("front_half_angle_rad", m.avoidance.front_half_angle);
    if (const json* p = o.find("pid")) {
      Obj po(*p, "avoidance.pid");
      read_pid(po, m.avoidance_pid);
    }
  }
  if (const json* j = root.find("imu1")) read_imu(*j, "imu1", m.imu1);
  if (const json* j = root.find("imu2")) read_imu(*j, "imu2", m.imu2);
  root.num("complementary_alpha", m.complementary_alpha);
  root.num("tilt_gate", m.tilt_gate);
  if (const json* j = root.find("kalman")) {
    Obj o(*j, "kalman");
    o.mat<3>("q", m.kalman.Q);
    o.mat<3>("p0", m.kalman.P0);
    m.kalman_r_from_noise = o.find("r") == nullptr;
    o.mat<2>("r", m.kalman.R);
  }
  if (const json* j = root.find("classifier")) {
    Obj o(*j, "classifier");
    std::string kind{to_string(m.classifier.kind)};
    o.str("kind", kind);
    m.classifier.kind = classifier_kind_from_string(kind);
    o.num("accuracy", m.classifier.accuracy);
  }
  if (const json* j = root.find("camera")) {
    Obj o(*j, "camera");
    o.num("hfov_rad", m.camera.hfov);
    o.num("vfov_rad", m.camera.vfov);
    o.num("range", m.camera.range);
    o.num("max_incidence_rad", m.camera.max_incidence);
  }
  if (const json* j = root.find("laser")) {
    Obj o(*j, "laser");
    o.integer("n_bins", m.laser.n_bins);
    o.num("range_max", m.laser.range_max);
  }
  if (const json* j = root.find("mission")) {
    Obj o(*j, "mission");
    o.num("dt", m.mission.dt);
    o.num("arrival_tol", m.mission.arrival_tol);
    o.num("hold_time", m.mission.hold_time);
    o.num("watchdog", m.mission.watchdog);
    o.num("capture_interval", m.mission.capture_interval);
    o.num("merge_radius", m.mission.merge_radius);
    o.integer("trajectory_stride", m.mission.trajectory_stride);
    o.boolean("inspect_only", m.mission.inspect_only);
  }
  if (const json* j = root.find("seeds")) {
    Obj o(*j, "seeds");
    o.u64("imu1", m.imu1.seed);
    o.u64("imu2", m.imu2.seed);
    o.u64("classifier", m.classifier.seed);
  }
  root.str("output_dir", sc.output_dir);

  m.scene = Scene(b, std::move(decals), std::move(obstacles));
  return sc;
}

json parse_text(std::string_view text) {
  try {
    return json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("scenario is not valid JSON: ") + e.what());
  }
}

}  // namespace

void ScenarioConfig::set_seed(std::uint64_t seed) {
  mission.imu1.seed = seed;
  mission.imu2.seed = seed;
  mission.classifier.seed = seed;
}

ScenarioConfig default_scenario() {
  ScenarioConfig sc;
  BuildingSpec b;
  b.center = Vec2{0.0, 15.0};
  sc.mission.scene = Scene(b, {}, {});
  sc.mission.home = Vec3::Zero();
  sc.mission.home_yaw = kPi / 2.0;
  return sc;
}

ScenarioConfig scenario_from_json(std::string_view text) {
  try {
    return from_json_doc(parse_text(text));
  } catch (const json::exception& e) {
    throw ConfigError(std::string("scenario: ") + e.what());
  }
}

std::string scenario_to_json(const ScenarioConfig& cfg) { return to_json_doc(cfg).dump(2) + "\n"; }

std::string apply_overrides(std::string_view json_text, const std::vector<std::string>& assignments) {
  json doc = parse_text(json_text);
  for (const auto& a : assignments) {
    const auto eq = a.find('=');
    if (eq == std::string::npos || eq == 0) throw ConfigError("override '" + a + "' must look like key=value");
    const std::string key = a.substr(0, eq);
    const std::string raw = a.substr(eq + 1);
    std::string pointer;
    std::stringstream ss(key);
    for (std::string part; std::getline(ss, part, '.');) {
      if (part.empty()) throw ConfigError("override key '" + key + "' has an empty segment");
      pointer += "/" + part;
    }
    const json::json_pointer ptr(pointer);
    if (!doc.contains(ptr)) throw ConfigError("override key '" + key + "' does not exist");
    json value = json::parse(raw, nullptr, false);
    if (value.is_discarded()) value = raw;
    doc[ptr] = value;
  }
  return doc.dump(2) + "\n";
}

ScenarioConfig load_scenario(const std::string& path, const std::vector<std::string>& overrides) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read scenario file '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  ScenarioConfig sc = scenario_from_json(buf.str());
  if (!overrides.empty()) sc = scenario_from_json(apply_overrides(scenario_to_json(sc), overrides));
  sc.validate();
  return sc;
}

}  // namespace uavinspect
