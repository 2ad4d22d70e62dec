#include "cito/cli.hpp"

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <iostream>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "cito/parallel.hpp"
#include "cito/runio.hpp"

namespace cito {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

bool looks_like_path(const std::string& s) {
  return s.find('/') != std::string::npos ||
         s.find(".json") != std::string::npos || fs::exists(s);
}

// Applies "a.b.c=value" overrides onto the scenario JSON; the value is
// parsed as a JSON literal, falling back to a string.
json apply_overrides(json j, const std::vector<std::string>& overrides) {
  for (const std::string& ov : overrides) {
    const auto eq = ov.find('=');
    if (eq == std::string::npos)
      throw ValidationError("override '" + ov + "' is not key=value");
    const std::string path = ov.substr(0, eq);
    const std::string value = ov.substr(eq + 1);
    json* node = &j;
    size_t start = 0;
    while (true) {
      const auto dot = path.find('.', start);
      const std::string key = path.substr(start, dot - start);
      if (key.empty()) throw ValidationError("override '" + ov + "': empty key");
      if (dot == std::string::npos) {
        json parsed = json::parse(value, nullptr, false);
        (*node)[key] = parsed.is_discarded() ? json(value) : parsed;
        break;
      }
      node = &(*node)[key];
      start = dot + 1;
    }
  }
  return j;
}

Scenario resolve_scenario(const std::string& ref,
                          const std::vector<std::string>& overrides,
                          json* out_json) {
  json j;
  if (looks_like_path(ref))
    j = scenario_to_json(load_scenario(ref));
  else
    j = scenario_to_json(builtin_scenario(ref));
  j = apply_overrides(j, overrides);
  Scenario s = scenario_from_json(j);
  if (out_json) *out_json = scenario_to_json(s);
  return s;
}

}  // namespace

int cmd_plan(const PlanOptions& opts) {
  try {
    json scenario_json;
    const Scenario s =
        resolve_scenario(opts.scenario, opts.overrides, &scenario_json);
    const Problem p = s.to_problem(opts.goal_offset, opts.goal_dth, opts.mu);
    const int workers = opts.workers > 0 ? opts.workers : default_workers();

    const auto t0 = std::chrono::steady_clock::now();
    const PenaltyResult res =
        penalty_loop(p, p.x1, p.initial_guess(), s.penalty, s.scvx,
                     s.postprocess, workers);
    const double wall =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
            .count();

    const std::string dir =
        opts.out_dir.empty() ? "runs/" + s.name : opts.out_dir;
    fs::create_directories(dir);
    write_trajectory_csv(dir + "/trajectory.csv", p, res.X, res.U);
    write_penalty_history_csv(dir + "/penalty_history.csv", res.history);
    write_run_log_csv(dir + "/scvx_log.csv", res.scvx_reports, res.hcs_logs);

    const std::string scenario_text = scenario_json.dump(2);
    json run;
    run["schema_version"] = 1;
    run["scenario"] = scenario_json;
    run["scenario_hash"] = content_hash(scenario_text);
    run["goal"] = {{"offset", {opts.goal_offset.x(), opts.goal_offset.y()}},
                   {"dth", opts.goal_dth}};
    if (opts.mu)
      run["mu_override"] = *opts.mu;
    else
      run["mu_override"] = nullptr;
    run["status"] = {{"converged", res.converged},
                     {"iterations", res.history.size()},
                     {"pe0", res.pe0},
                     {"final_pe", res.final_pe},
                     {"final_pe_ratio", res.final_pe_ratio},
                     {"final_theta_e", res.final_theta_e},
                     {"final_k_max", res.final_k_max},
                     {"final_k_avg", res.final_k_avg}};
    run["timing"] = {{"wall_s", wall}};
    run["workers"] = workers;
    write_json_file(dir + "/run.json", run);

    std::printf("%s: %s in %zu iteration(s), pe/pe0 %.4f, k_max %.4f, %.1f s\n",
                s.name.c_str(), res.converged ? "converged" : "NOT converged",
                res.history.size(), res.final_pe_ratio, res.final_k_max, wall);
    return res.converged ? 0 : 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "plan: error: %s\n", e.what());
    return 1;
  }
}

int cmd_replay(const std::string& run_dir) {
  try {
    const json run = read_json_file(run_dir + "/run.json");
    const json scenario_json = run.at("scenario");
    const Scenario s = scenario_from_json(scenario_json);
    const std::uint64_t have = content_hash(scenario_json.dump(2));
    if (run.at("scenario_hash").get<std::uint64_t>() != have) {
      std::fprintf(stderr, "replay: scenario hash mismatch\n");
      return 1;
    }
    std::optional<double> mu;
    if (!run.at("mu_override").is_null())
      mu = run.at("mu_override").get<double>();
    const json& goal = run.at("goal");
    const Problem p = s.to_problem(
        Vec2(goal.at("offset").at(0).get<double>(),
             goal.at("offset").at(1).get<double>()),
        goal.at("dth").get<double>(), mu);

    const auto [X, U] = read_trajectory_csv(run_dir + "/trajectory.csv", p);
    if (X.empty() || U.size() + 1 != X.size()) {
      std::fprintf(stderr, "replay: malformed trajectory\n");
      return 1;
    }
    const StateTraj X2 = rollout_trajectory(p, X.front(), U);
    double worst = 0;
    size_t worst_step = 0;
    for (size_t i = 0; i < X.size(); ++i) {
      const double dev = std::max(
          (X[i].q - X2[i].q).lpNorm<Eigen::Infinity>(),
          (X[i].qd - X2[i].qd).lpNorm<Eigen::Infinity>());
      if (dev > worst) {
        worst = dev;
        worst_step = i;
      }
    }
    if (worst > 1e-9) {
      std::fprintf(stderr,
                   "replay: mismatch, max deviation %.3e at step %zu\n", worst,
                   worst_step);
      return 3;
    }
    std::printf("replay: ok (max deviation %.3e)\n", worst);
    return 0;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "replay: error: %s\n", e.what());
    return 1;
  }
}

int cmd_report(const std::vector<std::string>& run_dirs) {
  if (run_dirs.empty()) {
    std::fprintf(stderr, "report: no run directories given\n");
    return 1;
  }
  try {
    std::printf("%-28s %-12s %5s %9s %9s %9s %9s\n", "run", "status", "iters",
                "pe_ratio", "theta_e", "k_max", "wall_s");
    double iter_sum = 0;
    int converged = 0;
    for (const std::string& dir : run_dirs) {
      const json run = read_json_file(dir + "/run.json");
      const json& st = run.at("status");
      const bool ok = st.at("converged").get<bool>();
      const auto iters = st.at("iterations").get<size_t>();
      iter_sum += static_cast<double>(iters);
      converged += ok ? 1 : 0;
      std::printf("%-28s %-12s %5zu %9.4f %9.4f %9.4f %9.1f\n", dir.c_str(),
                  ok ? "converged" : "not-conv", iters,
                  st.at("final_pe_ratio").get<double>(),
                  st.at("final_theta_e").get<double>(),
                  st.at("final_k_max").get<double>(),
                  run.at("timing").at("wall_s").get<double>());
    }
    std::printf("aggregate: %d/%zu converged, mean iterations %.2f\n",
                converged, run_dirs.size(),
                iter_sum / static_cast<double>(run_dirs.size()));
    return 0;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "report: error: %s\n", e.what());
    return 1;
  }
}

int run_cli(int argc, char** argv) {
  CLI::App app{"Contact-implicit trajectory optimization toolkit"};
  app.require_subcommand(1);

  PlanOptions plan;
  std::string goal_str;
  double mu_val = 0;
  auto* plan_cmd = app.add_subcommand("plan", "Plan a contact-interaction motion");
  plan_cmd->add_option("--scenario", plan.scenario,
                       "Builtin scenario name or scenario file path")
      ->required();
  plan_cmd->add_option("--goal", goal_str,
                       "Goal offset dx,dy[,dtheta] from the initial pose")
      ->required();
  auto* mu_opt = plan_cmd->add_option("--mu", mu_val, "Friction coefficient override");
  plan_cmd->add_option("--out", plan.out_dir, "Output directory");
  plan_cmd->add_option("--override", plan.overrides,
                       "Scenario override key.path=value (repeatable)");
  plan_cmd->add_option("--workers", plan.workers,
                       "Linearization worker cap (default: CITO_WORKERS)");

  std::string replay_dir;
  auto* replay_cmd = app.add_subcommand("replay", "Re-roll out a stored run");
  replay_cmd->add_option("--run", replay_dir, "Run directory")->required();

  std::vector<std::string> report_dirs;
  auto* report_cmd = app.add_subcommand("report", "Summarize stored runs");
  report_cmd->add_option("--run", report_dirs, "Run directories")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 1;
  }

  if (plan_cmd->parsed()) {
    double dx = 0, dy = 0, dth = 0;
    const int got =
        std::sscanf(goal_str.c_str(), "%lf,%lf,%lf", &dx, &dy, &dth);
    if (got < 2) {
      std::fprintf(stderr, "plan: --goal must be dx,dy[,dtheta]\n");
      return 1;
    }
    plan.goal_offset = Vec2(dx, dy);
    plan.goal_dth = dth;
    if (mu_opt->count() > 0) plan.mu = mu_val;
    return cmd_plan(plan);
  }
  if (replay_cmd->parsed()) return cmd_replay(replay_dir);
  return cmd_report(report_dirs);
}

}  // namespace cito
