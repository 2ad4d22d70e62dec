#include "cito/scenario.hpp"

#include <cmath>
#include <fstream>

#include <nlohmann/json.hpp>

namespace cito {

using nlohmann::json;

namespace {

constexpr double kPi = 3.14159265358979323846;

json vec2_json(const Vec2& v) { return json::array({v.x(), v.y()}); }

Vec2 vec2_from(const json& j, const char* what) {
  if (!j.is_array() || j.size() != 2)
    throw ValidationError(std::string(what) + ": expected [x, y]");
  return Vec2(j[0].get<double>(), j[1].get<double>());
}

json limit_json(const Limits& l) {
  json a = json::array();
  a.push_back(std::isfinite(l.lo) ? json(l.lo) : json(nullptr));
  a.push_back(std::isfinite(l.hi) ? json(l.hi) : json(nullptr));
  return a;
}

Limits limit_from(const json& j, const char* what) {
  if (!j.is_array() || j.size() != 2)
    throw ValidationError(std::string(what) + ": expected [lo, hi]");
  Limits l;
  l.lo = j[0].is_null() ? -kInf : j[0].get<double>();
  l.hi = j[1].is_null() ? kInf : j[1].get<double>();
  return l;
}

double get_or(const json& j, const char* key, double fallback) {
  return j.contains(key) ? j.at(key).get<double>() : fallback;
}

}  // namespace

void Scenario::validate() const {
  if (schema_version != 1)
    throw ValidationError("unsupported schema_version " +
                          std::to_string(schema_version));
  if (N < 1) throw ValidationError("horizon N must be >= 1");
  if (std::abs(N * dt - sim_time) > 1e-9)
    throw ValidationError("N * dt must equal the simulation time");
  if (bodies.size() != parent_names.size())
    throw ValidationError("internal: parent name list mismatch");
  to_problem(Vec2(0, 0), 0).validate();
}

Problem Scenario::to_problem(const Vec2& goal_offset, double goal_dth,
                             std::optional<double> mu_override) const {
  std::vector<BodySpec> resolved = bodies;
  for (size_t i = 0; i < resolved.size(); ++i) {
    const std::string& pn = parent_names[i];
    if (resolved[i].attach == BodySpec::Jointed) {
      if (pn.empty()) {
        resolved[i].parent = -1;
      } else {
        int idx = -1;
        for (size_t j = 0; j < i; ++j)
          if (bodies[j].name == pn) idx = static_cast<int>(j);
        if (idx < 0)
          throw ValidationError("body '" + resolved[i].name +
                                "': unknown parent '" + pn + "'");
        resolved[i].parent = idx;
      }
    }
  }

  Problem p;
  p.model = RobotModel::build(std::move(resolved), gravity,
                              mu_override.value_or(friction_mu), contact);
  std::vector<ContactPair> cps;
  cps.reserve(pairs.size());
  for (const PairSpec& ps : pairs) {
    ContactPair cp;
    cp.robot.body = p.model.body_index(ps.robot_body);
    cp.robot.anchor = ps.anchor;
    cp.robot.radius = ps.radius;
    cp.env.body = p.model.body_index(ps.env_body);
    cp.env.p0 = ps.p0;
    cp.env.p1 = ps.p1;
    cp.env.normal = ps.normal;
    cps.push_back(cp);
  }
  p.pairs = validate_pairs(p.model, std::move(cps));
  p.alpha = alpha;
  p.k_upper = k_upper;
  p.k_init = k_init;
  p.N = N;
  p.dt = dt;
  p.substep_h = substep_h;
  p.x1 = p.model.initial_state();

  p.goal.target_body = p.model.body_index(target_body);
  p.goal.w1 = w1;
  p.goal.w2 = w2;
  p.goal.constrain_orientation = constrain_orientation;
  const Pose2 start = p.target_pose(p.x1);
  p.goal.pos = start.p + goal_offset;
  p.goal.th = start.th + goal_dth;
  p.validate();
  return p;
}

std::vector<TaskVariant> task_variants(const Scenario& s,
                                       const std::vector<Vec3>& goal_offsets,
                                       std::optional<double> mu_override) {
  std::vector<TaskVariant> out;
  out.reserve(goal_offsets.size());
  for (const Vec3& g : goal_offsets) {
    if (!g.allFinite()) throw ValidationError("goal offsets must be finite");
    TaskVariant v;
    v.scenario = s;
    if (mu_override) v.scenario.friction_mu = *mu_override;
    v.goal_offset = Vec2(g[0], g[1]);
    v.goal_dth = g[2];
    out.push_back(std::move(v));
  }
  return out;
}

// ---------------------------------------------------------------------------
// JSON serialization

json scenario_to_json(const Scenario& s) {
  json j;
  j["schema_version"] = s.schema_version;
  j["name"] = s.name;
  j["gravity"] = vec2_json(s.gravity);
  j["friction_mu"] = s.friction_mu;
  j["contact"] = {{"k_n", s.contact.k_n},
                  {"b_n", s.contact.b_n},
                  {"v_s", s.contact.v_s}};
  j["vscm"] = {{"alpha", s.alpha},
               {"k_upper", s.k_upper},
               {"k_init", s.k_init}};
  j["horizon"] = {{"N", s.N},
                  {"dt", s.dt},
                  {"sim_time", s.sim_time},
                  {"substep_h", s.substep_h}};
  j["task"] = {{"target", s.target_body},
               {"w1", s.w1},
               {"w2", s.w2},
               {"constrain_orientation", s.constrain_orientation}};

  json bodies = json::array();
  for (size_t i = 0; i < s.bodies.size(); ++i) {
    const BodySpec& b = s.bodies[i];
    json jb;
    jb["name"] = b.name;
    jb["attach"] = b.attach == BodySpec::Static ? "static"
                   : b.attach == BodySpec::Free ? "free"
                                                : "jointed";
    if (b.attach != BodySpec::Static) {
      jb["mass"] = b.mass;
      jb["inertia_z"] = b.inertia_z;
      jb["com"] = vec2_json(b.com);
    }
    if (b.shape) {
      json js;
      js["kind"] = b.shape->kind == Shape::Disk ? "disk" : "rect";
      if (b.shape->kind == Shape::Disk)
        js["radius"] = b.shape->radius;
      else
        js["half_extents"] = vec2_json(b.shape->half_extents);
      js["center"] = vec2_json(b.shape->center);
      jb["shape"] = js;
    }
    if (b.attach == BodySpec::Jointed) {
      jb["parent"] = s.parent_names[i];
      json jj;
      jj["kind"] = b.joint.kind == JointSpec::Prismatic ? "prismatic" : "revolute";
      if (b.joint.kind == JointSpec::Prismatic) jj["axis"] = vec2_json(b.joint.axis);
      jj["origin"] = vec2_json(b.joint.origin);
      jj["frame_angle"] = b.joint.frame_angle;
      jj["pos"] = limit_json(b.joint.pos);
      jj["vel"] = limit_json(b.joint.vel);
      jj["force"] = limit_json(b.joint.force);
      jb["joint"] = jj;
    } else {
      jb["pose0"] = json::array({b.pose0.p.x(), b.pose0.p.y(), b.pose0.th});
      if (b.attach == BodySpec::Free) {
        std::string dof;
        if (b.dof_x) dof += 'x';
        if (b.dof_y) dof += 'y';
        if (b.dof_th) dof += 't';
        jb["dof"] = dof;
      }
    }
    if (!b.collides) jb["collides"] = false;
    bodies.push_back(jb);
  }
  j["bodies"] = bodies;

  json pairs = json::array();
  for (const Scenario::PairSpec& ps : s.pairs) {
    pairs.push_back({{"robot_body", ps.robot_body},
                     {"anchor", vec2_json(ps.anchor)},
                     {"radius", ps.radius},
                     {"env_body", ps.env_body},
                     {"p0", vec2_json(ps.p0)},
                     {"p1", vec2_json(ps.p1)},
                     {"normal", vec2_json(ps.normal)}});
  }
  j["pairs"] = pairs;

  j["scvx"] = {{"r0", s.scvx.r0},
               {"rho0", s.scvx.rho0},
               {"rho1", s.scvx.rho1},
               {"rho2", s.scvx.rho2},
               {"shrink", s.scvx.shrink},
               {"grow", s.scvx.grow},
               {"r_min", s.scvx.r_min},
               {"r_max", s.scvx.r_max},
               {"max_successions", s.scvx.max_successions},
               {"dL_tol", s.scvx.dL_tol}};
  j["penalty"] = {{"omega1", s.penalty.omega1},
                  {"d_omega_s", s.penalty.d_omega_s},
                  {"eps_p", s.penalty.eps_p},
                  {"eps_th", s.penalty.eps_th},
                  {"eps_k", s.penalty.eps_k},
                  {"k_threshold", s.penalty.k_threshold},
                  {"j_max", s.penalty.j_max},
                  {"omega_min", s.penalty.omega_min}};
  j["postprocess"] = {{"kv", s.postprocess.kv},
                      {"d0", s.postprocess.d0},
                      {"hcs_step", s.postprocess.hcs_step},
                      {"hcs_step_tol", s.postprocess.hcs_step_tol},
                      {"hcs_cost_tol", s.postprocess.hcs_cost_tol},
                      {"hcs_step_max", s.postprocess.hcs_step_max}};
  return j;
}

Scenario scenario_from_json(const json& j) {
  Scenario s;
  try {
    s.schema_version = j.at("schema_version").get<int>();
    s.name = j.at("name").get<std::string>();
    s.gravity = vec2_from(j.at("gravity"), "gravity");
    s.friction_mu = j.at("friction_mu").get<double>();
    if (j.contains("contact")) {
      const json& c = j.at("contact");
      s.contact.k_n = get_or(c, "k_n", s.contact.k_n);
      s.contact.b_n = get_or(c, "b_n", s.contact.b_n);
      s.contact.v_s = get_or(c, "v_s", s.contact.v_s);
    }
    const json& v = j.at("vscm");
    s.alpha = v.at("alpha").get<double>();
    s.k_upper = v.at("k_upper").get<double>();
    s.k_init = v.at("k_init").get<double>();
    const json& h = j.at("horizon");
    s.N = h.at("N").get<int>();
    s.dt = h.at("dt").get<double>();
    s.sim_time = h.at("sim_time").get<double>();
    s.substep_h = get_or(h, "substep_h", s.substep_h);
    const json& t = j.at("task");
    s.target_body = t.at("target").get<std::string>();
    s.w1 = t.at("w1").get<double>();
    s.w2 = t.at("w2").get<double>();
    s.constrain_orientation = t.at("constrain_orientation").get<bool>();

    for (const json& jb : j.at("bodies")) {
      BodySpec b;
      b.name = jb.at("name").get<std::string>();
      const std::string attach = jb.at("attach").get<std::string>();
      std::string parent;
      if (attach == "static")
        b.attach = BodySpec::Static;
      else if (attach == "free")
        b.attach = BodySpec::Free;
      else if (attach == "jointed")
        b.attach = BodySpec::Jointed;
      else
        throw ValidationError("body '" + b.name + "': bad attach '" + attach + "'");
      if (b.attach != BodySpec::Static) {
        if (!jb.contains("mass"))
          throw ValidationError("body '" + b.name + "': missing mass");
        b.mass = jb.at("mass").get<double>();
        if (!jb.contains("inertia_z"))
          throw ValidationError("body '" + b.name + "': missing inertia_z");
        b.inertia_z = jb.at("inertia_z").get<double>();
        if (jb.contains("com")) b.com = vec2_from(jb.at("com"), "com");
      }
      if (jb.contains("shape") && !jb.at("shape").is_null()) {
        const json& js = jb.at("shape");
        Shape sh;
        const std::string kind = js.at("kind").get<std::string>();
        if (kind == "disk") {
          sh.kind = Shape::Disk;
          sh.radius = js.at("radius").get<double>();
        } else if (kind == "rect") {
          sh.kind = Shape::Rect;
          sh.half_extents = vec2_from(js.at("half_extents"), "half_extents");
        } else {
          throw ValidationError("body '" + b.name + "': bad shape kind");
        }
        if (js.contains("center")) sh.center = vec2_from(js.at("center"), "center");
        b.shape = sh;
      }
      if (b.attach == BodySpec::Jointed) {
        parent = jb.at("parent").get<std::string>();
        const json& jj = jb.at("joint");
        const std::string kind = jj.at("kind").get<std::string>();
        if (kind == "prismatic") {
          b.joint.kind = JointSpec::Prismatic;
          b.joint.axis = vec2_from(jj.at("axis"), "axis");
        } else if (kind == "revolute") {
          b.joint.kind = JointSpec::Revolute;
        } else {
          throw ValidationError("body '" + b.name + "': bad joint kind");
        }
        b.joint.origin = vec2_from(jj.at("origin"), "origin");
        b.joint.frame_angle = get_or(jj, "frame_angle", 0.0);
        b.joint.pos = limit_from(jj.at("pos"), "pos");
        b.joint.vel = limit_from(jj.at("vel"), "vel");
        b.joint.force = limit_from(jj.at("force"), "force");
      } else {
        const json& p0 = jb.at("pose0");
        b.pose0.p = Vec2(p0.at(0).get<double>(), p0.at(1).get<double>());
        b.pose0.th = p0.at(2).get<double>();
        if (b.attach == BodySpec::Free) {
          const std::string dof = jb.at("dof").get<std::string>();
          b.dof_x = dof.find('x') != std::string::npos;
          b.dof_y = dof.find('y') != std::string::npos;
          b.dof_th = dof.find('t') != std::string::npos;
        }
      }
      if (jb.contains("collides")) b.collides = jb.at("collides").get<bool>();
      s.bodies.push_back(std::move(b));
      s.parent_names.push_back(parent);
    }

    for (const json& jp : j.at("pairs")) {
      Scenario::PairSpec ps;
      ps.robot_body = jp.at("robot_body").get<std::string>();
      ps.anchor = vec2_from(jp.at("anchor"), "anchor");
      ps.radius = jp.at("radius").get<double>();
      ps.env_body = jp.at("env_body").get<std::string>();
      ps.p0 = vec2_from(jp.at("p0"), "p0");
      ps.p1 = vec2_from(jp.at("p1"), "p1");
      ps.normal = vec2_from(jp.at("normal"), "normal");
      s.pairs.push_back(std::move(ps));
    }

    if (j.contains("scvx")) {
      const json& c = j.at("scvx");
      s.scvx.r0 = get_or(c, "r0", s.scvx.r0);
      s.scvx.rho0 = get_or(c, "rho0", s.scvx.rho0);
      s.scvx.rho1 = get_or(c, "rho1", s.scvx.rho1);
      s.scvx.rho2 = get_or(c, "rho2", s.scvx.rho2);
      s.scvx.shrink = get_or(c, "shrink", s.scvx.shrink);
      s.scvx.grow = get_or(c, "grow", s.scvx.grow);
      s.scvx.r_min = get_or(c, "r_min", s.scvx.r_min);
      s.scvx.r_max = get_or(c, "r_max", s.scvx.r_max);
      if (c.contains("max_successions"))
        s.scvx.max_successions = c.at("max_successions").get<int>();
      s.scvx.dL_tol = get_or(c, "dL_tol", s.scvx.dL_tol);
    }
    if (j.contains("penalty")) {
      const json& c = j.at("penalty");
      s.penalty.omega1 = get_or(c, "omega1", s.penalty.omega1);
      s.penalty.d_omega_s = get_or(c, "d_omega_s", s.penalty.d_omega_s);
      s.penalty.eps_p = get_or(c, "eps_p", s.penalty.eps_p);
      s.penalty.eps_th = get_or(c, "eps_th", s.penalty.eps_th);
      s.penalty.eps_k = get_or(c, "eps_k", s.penalty.eps_k);
      s.penalty.k_threshold = get_or(c, "k_threshold", s.penalty.k_threshold);
      if (c.contains("j_max")) s.penalty.j_max = c.at("j_max").get<int>();
      s.penalty.omega_min = get_or(c, "omega_min", s.penalty.omega_min);
    }
    if (j.contains("postprocess")) {
      const json& c = j.at("postprocess");
      s.postprocess.kv = get_or(c, "kv", s.postprocess.kv);
      s.postprocess.d0 = get_or(c, "d0", s.postprocess.d0);
      s.postprocess.hcs_step = get_or(c, "hcs_step", s.postprocess.hcs_step);
      s.postprocess.hcs_step_tol =
          get_or(c, "hcs_step_tol", s.postprocess.hcs_step_tol);
      s.postprocess.hcs_cost_tol =
          get_or(c, "hcs_cost_tol", s.postprocess.hcs_cost_tol);
      s.postprocess.hcs_step_max =
          get_or(c, "hcs_step_max", s.postprocess.hcs_step_max);
    }
  } catch (const json::exception& e) {
    throw ValidationError(std::string("scenario parse error: ") + e.what());
  }
  s.validate();
  return s;
}

Scenario load_scenario(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open scenario file '" + path + "'");
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw ValidationError("scenario '" + path + "': " + e.what());
  }
  return scenario_from_json(j);
}

void save_scenario(const Scenario& s, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write scenario file '" + path + "'");
  out << scenario_to_json(s).dump(2) << '\n';
}

// ---------------------------------------------------------------------------
// Builtins

namespace {

BodySpec jointed(const std::string& name, const std::string&, double mass,
                 double iz, JointSpec joint) {
  BodySpec b;
  b.name = name;
  b.attach = BodySpec::Jointed;
  b.mass = mass;
  b.inertia_z = iz;
  b.joint = std::move(joint);
  return b;
}

JointSpec prismatic(Vec2 axis, Vec2 origin, Limits pos, Limits vel,
                    Limits force, double frame_angle = 0) {
  JointSpec j;
  j.kind = JointSpec::Prismatic;
  j.axis = std::move(axis);
  j.origin = std::move(origin);
  j.frame_angle = frame_angle;
  j.pos = pos;
  j.vel = vel;
  j.force = force;
  return j;
}

JointSpec revolute(Vec2 origin, Limits pos, Limits vel, Limits force,
                   double frame_angle = 0) {
  JointSpec j;
  j.kind = JointSpec::Revolute;
  j.origin = std::move(origin);
  j.frame_angle = frame_angle;
  j.pos = pos;
  j.vel = vel;
  j.force = force;
  return j;
}

Shape disk(double r, Vec2 center = {0, 0}) {
  Shape s;
  s.kind = Shape::Disk;
  s.radius = r;
  s.center = std::move(center);
  return s;
}

Shape rect(Vec2 half, Vec2 center = {0, 0}) {
  Shape s;
  s.kind = Shape::Rect;
  s.half_extents = std::move(half);
  s.center = std::move(center);
  return s;
}

Scenario make_pusher_slider_1d() {
  Scenario s;
  s.name = "pusher_slider_1d";
  s.N = 1;
  s.dt = 1.0;
  s.sim_time = 1.0;
  s.w2 = 0;
  s.constrain_orientation = false;

  BodySpec pusher = jointed("pusher", "", 1.0, 1e-3,
                            prismatic({1, 0}, {0, 0}, {-0.5, 2.0}, {-2, 2},
                                      {-20, 20}));
  pusher.shape = disk(0.05);
  s.bodies.push_back(pusher);
  s.parent_names.emplace_back("");

  BodySpec slider;
  slider.name = "slider";
  slider.attach = BodySpec::Free;
  slider.mass = 1.0;
  slider.inertia_z = 0.01;
  slider.shape = rect({0.1, 0.1});
  slider.pose0.p = Vec2(0.3, 0);
  slider.dof_x = true;
  slider.dof_y = false;
  slider.dof_th = false;
  s.bodies.push_back(slider);
  s.parent_names.emplace_back("");

  // One pair: pusher tip against the slider's front face, whose outward
  // normal is the push direction.
  s.pairs.push_back({"pusher", {0, 0}, 0.05, "slider",
                     {0.1, -0.1}, {0.1, 0.1}, {1, 0}});
  s.target_body = "slider";
  return s;
}

Scenario make_planar_pusher() {
  Scenario s;
  s.name = "planar_pusher";
  s.N = 10;
  s.dt = 0.5;
  s.sim_time = 5.0;

  s.bodies.push_back(jointed("base_x", "", 0.1, 1e-3,
                             prismatic({1, 0}, {0, 0}, {-3, 3}, {-2, 2},
                                       {-50, 50})));
  s.parent_names.emplace_back("");
  s.bodies.push_back(jointed("base_y", "base_x", 0.1, 1e-3,
                             prismatic({0, 1}, {0, 0}, {-3, 3}, {-2, 2},
                                       {-50, 50})));
  s.parent_names.emplace_back("base_x");
  BodySpec base = jointed("base", "base_y", 5.0, 0.1,
                          revolute({0, 0}, {-6.28, 6.28}, {-2, 2}, {-20, 20}));
  base.shape = disk(0.2);
  s.bodies.push_back(base);
  s.parent_names.emplace_back("base_y");

  BodySpec box;
  box.name = "box";
  box.attach = BodySpec::Free;
  box.mass = 1.0;
  box.inertia_z = 1.0 * (0.2 * 0.2 + 0.2 * 0.2) / 12.0;
  box.shape = rect({0.1, 0.1});
  box.pose0.p = Vec2(0.5, 0);
  s.bodies.push_back(box);
  s.parent_names.emplace_back("");

  const Vec2 fl(0.1, 0.1), fr(0.1, -0.1), rl(-0.1, 0.1), rr(-0.1, -0.1);
  s.pairs.push_back({"base", {0, 0}, 0.2, "box", fr, fl, {1, 0}});   // front
  s.pairs.push_back({"base", {0, 0}, 0.2, "box", rl, fl, {0, 1}});   // left
  s.pairs.push_back({"base", {0, 0}, 0.2, "box", rr, rl, {-1, 0}});  // rear
  s.pairs.push_back({"base", {0, 0}, 0.2, "box", rr, fr, {0, -1}});  // right
  s.target_body = "box";
  return s;
}

Scenario make_planar_locomotor() {
  Scenario s;
  s.name = "planar_locomotor";
  s.N = 20;
  s.dt = 0.1;
  s.sim_time = 2.0;

  const Limits arm_pos{-2.5, 2.5}, arm_vel{-8, 8}, arm_force{-30, 30};

  BodySpec torso;
  torso.name = "torso";
  torso.attach = BodySpec::Free;
  torso.mass = 10.0;
  torso.inertia_z = 10.0 * (0.3 * 0.3 + 0.5 * 0.5) / 12.0;
  torso.shape = rect({0.15, 0.25});
  s.bodies.push_back(torso);
  s.parent_names.emplace_back("");

  s.bodies.push_back(jointed("chest", "torso", 1.0, 0.01,
                             prismatic({0, 1}, {0, 0.25}, {0, 0.2}, {-2, 2},
                                       {-50, 50})));
  s.parent_names.emplace_back("torso");

  struct Limb {
    const char* upper;
    const char* lower;
    const char* parent;
    Vec2 origin;
    double frame_angle;
  };
  const Limb limbs[4] = {
      {"arm_r_upper", "arm_r_lower", "chest", {0.15, 0.0}, 0.0},
      {"arm_l_upper", "arm_l_lower", "chest", {-0.15, 0.0}, kPi},
      {"leg_r_upper", "leg_r_lower", "torso", {0.1, -0.25}, 0.0},
      {"leg_l_upper", "leg_l_lower", "torso", {-0.1, -0.25}, kPi},
  };
  for (const Limb& limb : limbs) {
    BodySpec upper = jointed(limb.upper, limb.parent, 0.5, 0.0026,
                             revolute(limb.origin, arm_pos, arm_vel, arm_force,
                                      limb.frame_angle));
    upper.com = Vec2(0.125, 0);
    s.bodies.push_back(upper);
    s.parent_names.emplace_back(limb.parent);

    BodySpec lower = jointed(limb.lower, limb.upper, 0.5, 0.0026,
                             revolute({0.25, 0}, arm_pos, arm_vel, arm_force));
    lower.com = Vec2(0.125, 0);
    lower.shape = disk(0.05, {0.25, 0});
    s.bodies.push_back(lower);
    s.parent_names.emplace_back(limb.upper);
  }

  struct Brick {
    const char* name;
    Vec2 pos;
  };
  const Brick bricks[4] = {
      {"brick_rear_top", {-0.8, 0.45}},
      {"brick_front_top", {0.95, 0.45}},
      {"brick_rear_bot", {-0.8, -0.45}},
      {"brick_front_bot", {0.95, -0.45}},
  };
  for (const Brick& brick : bricks) {
    BodySpec b;
    b.name = brick.name;
    b.attach = BodySpec::Static;
    b.shape = rect({0.05, 0.2});
    b.pose0.p = brick.pos;
    s.bodies.push_back(b);
    s.parent_names.emplace_back("");
  }

  // Front and rear faces of each brick, paired with the limbs on the
  // same side: arms with the top bricks, legs with the bottom ones.
  auto add_pairs = [&s](const char* limb, const char* brick) {
    s.pairs.push_back({limb, {0.25, 0}, 0.05, brick,
                       {0.05, -0.2}, {0.05, 0.2}, {1, 0}});
    s.pairs.push_back({limb, {0.25, 0}, 0.05, brick,
                       {-0.05, -0.2}, {-0.05, 0.2}, {-1, 0}});
  };
  for (const char* arm : {"arm_r_lower", "arm_l_lower"}) {
    add_pairs(arm, "brick_rear_top");
    add_pairs(arm, "brick_front_top");
  }
  for (const char* leg : {"leg_r_lower", "leg_l_lower"}) {
    add_pairs(leg, "brick_rear_bot");
    add_pairs(leg, "brick_front_bot");
  }
  s.target_body = "torso";
  return s;
}

}  // namespace

std::vector<std::string> builtin_scenario_names() {
  return {"pusher_slider_1d", "planar_pusher", "planar_locomotor"};
}

Scenario builtin_scenario(const std::string& name) {
  Scenario s;
  if (name == "pusher_slider_1d")
    s = make_pusher_slider_1d();
  else if (name == "planar_pusher")
    s = make_planar_pusher();
  else if (name == "planar_locomotor")
    s = make_planar_locomotor();
  else
    throw ValidationError("unknown builtin scenario '" + name + "'");
  s.validate();
  return s;
}

}  // namespace cito
