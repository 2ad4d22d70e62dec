#include "cito/runio.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

namespace cito {

std::string fmt17(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::uint64_t content_hash(const std::string& text) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : text) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

std::vector<std::string> dof_names(const RobotModel& m) {
  std::vector<std::string> names(static_cast<size_t>(m.ndof()));
  for (int i = 0; i < m.num_bodies(); ++i) {
    const int jd = m.joint_dof(i);
    if (jd >= 0) names[static_cast<size_t>(jd)] = m.body(i).name;
    if (m.free_index(i) >= 0) {
      const auto slots = m.free_dofs(i);
      const char* suffix[3] = {"_x", "_y", "_th"};
      for (int c = 0; c < 3; ++c)
        if (slots[static_cast<size_t>(c)] >= 0)
          names[static_cast<size_t>(slots[static_cast<size_t>(c)])] =
              m.body(i).name + suffix[c];
    }
  }
  return names;
}

void write_trajectory_csv(const std::string& path, const Problem& p,
                          const StateTraj& X, const ControlTraj& U) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write '" + path + "'");
  const auto names = dof_names(p.model);
  out << "t";
  for (const auto& n : names) out << ",q_" << n;
  for (const auto& n : names) out << ",qd_" << n;
  for (int j = 0; j < p.model.n_actuated(); ++j)
    out << ",tau_" << names[static_cast<size_t>(j)];
  for (int j = 0; j < p.n_pairs(); ++j) out << ",k_" << j;
  out << '\n';
  for (size_t i = 0; i < X.size(); ++i) {
    out << fmt17(static_cast<double>(i) * p.dt);
    for (int j = 0; j < p.model.ndof(); ++j) out << ',' << fmt17(X[i].q[j]);
    for (int j = 0; j < p.model.ndof(); ++j) out << ',' << fmt17(X[i].qd[j]);
    if (i < U.size()) {
      for (int j = 0; j < p.model.n_actuated(); ++j)
        out << ',' << fmt17(U[i].tau[j]);
      for (int j = 0; j < p.n_pairs(); ++j) out << ',' << fmt17(U[i].k[j]);
    } else {
      for (int j = 0; j < p.nu(); ++j) out << ',';
    }
    out << '\n';
  }
}

std::pair<StateTraj, ControlTraj> read_trajectory_csv(const std::string& path,
                                                      const Problem& p) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open '" + path + "'");
  std::string line;
  if (!std::getline(in, line)) throw IoError("empty trajectory file");
  const int want = 1 + p.nx() + p.nu();
  StateTraj X;
  ControlTraj U;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<std::string> cells;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) cells.push_back(cell);
    while (static_cast<int>(cells.size()) < want) cells.emplace_back();
    if (static_cast<int>(cells.size()) != want)
      throw IoError("trajectory row has " + std::to_string(cells.size()) +
                    " cells, expected " + std::to_string(want));
    auto num = [&](int idx) {
      const std::string& s = cells[static_cast<size_t>(idx)];
      char* end = nullptr;
      const double v = std::strtod(s.c_str(), &end);
      if (end == s.c_str()) throw IoError("bad number '" + s + "' in " + path);
      return v;
    };
    State st;
    st.q = Vec(p.model.ndof());
    st.qd = Vec(p.model.ndof());
    for (int j = 0; j < p.model.ndof(); ++j) st.q[j] = num(1 + j);
    for (int j = 0; j < p.model.ndof(); ++j)
      st.qd[j] = num(1 + p.model.ndof() + j);
    X.push_back(std::move(st));
    if (!cells[static_cast<size_t>(1 + p.nx())].empty()) {
      Control u;
      u.tau = Vec(p.model.n_actuated());
      u.k = Vec(p.n_pairs());
      for (int j = 0; j < p.model.n_actuated(); ++j)
        u.tau[j] = num(1 + p.nx() + j);
      for (int j = 0; j < p.n_pairs(); ++j)
        u.k[j] = num(1 + p.nx() + p.model.n_actuated() + j);
      U.push_back(std::move(u));
    }
  }
  return {X, U};
}

void write_penalty_history_csv(const std::string& path,
                               const std::vector<PenaltyIterate>& history) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write '" + path + "'");
  out << "j,omega,d_omega,k_max,k_avg,pe,pe_ratio,theta_e,sol_accepted,"
         "pp_accepted\n";
  for (const PenaltyIterate& it : history) {
    out << it.j << ',' << fmt17(it.omega) << ',' << fmt17(it.d_omega) << ','
        << fmt17(it.k_max) << ',' << fmt17(it.k_avg) << ',' << fmt17(it.pe)
        << ',' << fmt17(it.pe_ratio) << ',' << fmt17(it.theta_e) << ','
        << (it.sol_accepted ? 1 : 0) << ',' << (it.pp_accepted ? 1 : 0)
        << '\n';
  }
}

void write_run_log_csv(const std::string& path,
                       const std::vector<ScvxReport>& scvx,
                       const std::vector<std::vector<HcsStep>>& hcs) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write '" + path + "'");
  out << "j,phase,iter,radius_or_step,predicted_or_cf,actual,rho_or_pe,"
         "accepted\n";
  for (size_t j = 0; j < scvx.size(); ++j) {
    for (const ScvxRecord& r : scvx[j].records) {
      out << (j + 1) << ",scvx," << r.succession << ',' << fmt17(r.radius)
          << ',' << fmt17(r.L_predicted) << ',' << fmt17(r.C_candidate) << ','
          << fmt17(r.rho) << ',' << (r.accepted ? 1 : 0) << '\n';
    }
    if (j < hcs.size()) {
      for (const HcsStep& h : hcs[j]) {
        out << (j + 1) << ",hcs," << h.iter << ',' << fmt17(h.step) << ','
            << fmt17(h.final_cost) << ',' << fmt17(h.final_cost) << ','
            << fmt17(h.pe) << ',' << (h.accepted ? 1 : 0) << '\n';
      }
    }
  }
}

nlohmann::json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open '" + path + "'");
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw IoError("'" + path + "': " + e.what());
  }
  return j;
}

void write_json_file(const std::string& path, const nlohmann::json& j) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write '" + path + "'");
  out << j.dump(2) << '\n';
}

}  // namespace cito
