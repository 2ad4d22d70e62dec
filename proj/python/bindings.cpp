#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <nlohmann/json.hpp>

#include "cito/cli.hpp"
#include "cito/parallel.hpp"
#include "cito/runio.hpp"

namespace py = pybind11;
using namespace cito;

namespace {

Scenario resolve(const std::string& ref) {
  if (ref.find('/') != std::string::npos ||
      ref.find(".json") != std::string::npos)
    return load_scenario(ref);
  return builtin_scenario(ref);
}

Problem make_problem(const std::string& ref, std::pair<double, double> goal,
                     double goal_dth, std::optional<double> mu) {
  const Scenario s = resolve(ref);
  return s.to_problem(Vec2(goal.first, goal.second), goal_dth, mu);
}

Mat states_to_matrix(const Problem& p, const StateTraj& X) {
  Mat out(static_cast<Eigen::Index>(X.size()), p.nx());
  for (size_t i = 0; i < X.size(); ++i)
    out.row(static_cast<Eigen::Index>(i)) = p.state_vec(X[i]).transpose();
  return out;
}

Mat controls_to_matrix(const Problem& p, const ControlTraj& U) {
  Mat out(static_cast<Eigen::Index>(U.size()), p.nu());
  for (size_t i = 0; i < U.size(); ++i)
    out.row(static_cast<Eigen::Index>(i)) = p.flat(U[i]).transpose();
  return out;
}

ControlTraj controls_from_matrix(const Problem& p, const Mat& U) {
  if (U.cols() != p.nu())
    throw ValidationError("control matrix must have n_a + n_p columns");
  ControlTraj out(static_cast<size_t>(U.rows()));
  for (Eigen::Index i = 0; i < U.rows(); ++i)
    out[static_cast<size_t>(i)] = p.unflat(U.row(i).transpose());
  return out;
}

}  // namespace

PYBIND11_MODULE(_cito, m) {
  m.doc() = "Contact-implicit trajectory optimization core";

  m.def("builtin_scenario_names", &builtin_scenario_names);

  m.def(
      "scenario_json",
      [](const std::string& ref) { return scenario_to_json(resolve(ref)).dump(2); },
      py::arg("scenario"));

  m.def(
      "problem_info",
      [](const std::string& ref, std::pair<double, double> goal,
         double goal_dth, std::optional<double> mu) {
        const Problem p = make_problem(ref, goal, goal_dth, mu);
        py::dict d;
        d["n_actuated"] = p.model.n_actuated();
        d["n_unactuated"] = p.model.n_unactuated();
        d["n_pairs"] = p.n_pairs();
        d["nx"] = p.nx();
        d["nu"] = p.nu();
        d["N"] = p.N;
        d["dt"] = p.dt;
        d["x1"] = p.state_vec(p.x1);
        d["u_lo"] = p.control_lo();
        d["u_hi"] = p.control_hi();
        return d;
      },
      py::arg("scenario"), py::arg("goal"), py::arg("goal_dth") = 0.0,
      py::arg("mu") = std::nullopt);

  m.def(
      "rollout",
      [](const std::string& ref, std::pair<double, double> goal,
         double goal_dth, const Mat& U, std::optional<double> mu) {
        const Problem p = make_problem(ref, goal, goal_dth, mu);
        const StateTraj X =
            rollout_trajectory(p, p.x1, controls_from_matrix(p, U));
        return states_to_matrix(p, X);
      },
      py::arg("scenario"), py::arg("goal"), py::arg("goal_dth"), py::arg("U"),
      py::arg("mu") = std::nullopt);

  m.def(
      "initial_guess",
      [](const std::string& ref, std::pair<double, double> goal,
         double goal_dth, std::optional<double> mu) {
        const Problem p = make_problem(ref, goal, goal_dth, mu);
        return controls_to_matrix(p, p.initial_guess());
      },
      py::arg("scenario"), py::arg("goal"), py::arg("goal_dth") = 0.0,
      py::arg("mu") = std::nullopt);

  m.def(
      "total_cost",
      [](const std::string& ref, std::pair<double, double> goal,
         double goal_dth, const Mat& U, double omega,
         std::optional<double> mu) {
        const Problem p = make_problem(ref, goal, goal_dth, mu);
        const ControlTraj traj = controls_from_matrix(p, U);
        const StateTraj X = rollout_trajectory(p, p.x1, traj);
        return total_cost(p, X, traj, omega);
      },
      py::arg("scenario"), py::arg("goal"), py::arg("goal_dth"), py::arg("U"),
      py::arg("omega"), py::arg("mu") = std::nullopt);

  m.def(
      "plan",
      [](const std::string& ref, std::pair<double, double> goal,
         double goal_dth, std::optional<double> mu, int workers) {
        const Scenario s = resolve(ref);
        const Problem p =
            s.to_problem(Vec2(goal.first, goal.second), goal_dth, mu);
        const PenaltyResult res =
            penalty_loop(p, p.x1, p.initial_guess(), s.penalty, s.scvx,
                         s.postprocess, workers > 0 ? workers : default_workers());
        py::dict d;
        d["converged"] = res.converged;
        d["X"] = states_to_matrix(p, res.X);
        d["U"] = controls_to_matrix(p, res.U);
        d["pe0"] = res.pe0;
        d["final_pe"] = res.final_pe;
        d["final_pe_ratio"] = res.final_pe_ratio;
        d["final_theta_e"] = res.final_theta_e;
        d["final_k_max"] = res.final_k_max;
        d["final_k_avg"] = res.final_k_avg;
        py::list hist;
        for (const PenaltyIterate& it : res.history) {
          py::dict row;
          row["j"] = it.j;
          row["omega"] = it.omega;
          row["d_omega"] = it.d_omega;
          row["k_max"] = it.k_max;
          row["k_avg"] = it.k_avg;
          row["pe"] = it.pe;
          row["pe_ratio"] = it.pe_ratio;
          row["theta_e"] = it.theta_e;
          row["sol_accepted"] = it.sol_accepted;
          row["pp_accepted"] = it.pp_accepted;
          hist.append(row);
        }
        d["history"] = hist;
        return d;
      },
      py::arg("scenario"), py::arg("goal"), py::arg("goal_dth") = 0.0,
      py::arg("mu") = std::nullopt, py::arg("workers") = 0);

  py::register_exception<Error>(m, "CitoError");
}
