// Command-line front end: validate specs, simulate, check morphisms,
// compose them, and push executions forward.

#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <sstream>

#include "hybrid/errors.hpp"
#include "hybrid/execution.hpp"
#include "hybrid/spec_io.hpp"

namespace {

using namespace hybrid;

constexpr int kExitOk = 0;
constexpr int kExitSemantic = 1;
constexpr int kExitUsage = 2;

bool g_quiet = false;

void say(const std::string& line) {
  if (!g_quiet) std::cout << line << "\n";
}

Point parse_point_arg(const std::string& s) {
  std::vector<double> vals;
  std::stringstream ss(s);
  std::string cell;
  while (std::getline(ss, cell, ',')) vals.push_back(std::stod(cell));
  Point p(static_cast<Eigen::Index>(vals.size()));
  for (std::size_t i = 0; i < vals.size(); ++i)
    p[static_cast<Eigen::Index>(i)] = vals[i];
  return p;
}

void print_report(const Report& report) {
  for (const auto& v : report) say("  [" + v.where + "] " + v.message);
}

int cmd_validate(const std::string& file, double tol) {
  (void)tol;
  HybridSystem H = load_system(file);
  Report report = validate_system(H);
  if (report.empty()) {
    say("valid: " + file);
    return kExitOk;
  }
  say("INVALID: " + file);
  print_report(report);
  return kExitSemantic;
}

std::string branch_csv_path(const std::string& out, std::size_t index,
                            std::size_t total) {
  if (total <= 1) return out;
  auto dot = out.rfind('.');
  if (dot == std::string::npos)
    return out + ".branch" + std::to_string(index);
  return out.substr(0, dot) + ".branch" + std::to_string(index) +
         out.substr(dot);
}

int cmd_simulate(const std::string& file, const std::string& node,
                 const std::string& x0_str, double t0, double horizon,
                 double step, const std::string& policy_name, int max_jumps,
                 int max_branches, const std::string& out, double tol) {
  HybridSystem H = load_system(file);
  BranchPolicy policy;
  if (policy_name == "first")
    policy.mode = BranchPolicy::Mode::FirstGuardThenJump;
  else if (policy_name == "exhaustive")
    policy.mode = BranchPolicy::Mode::Exhaustive;
  else
    throw CLI::ValidationError("--policy must be 'first' or 'exhaustive'");
  policy.max_jumps = max_jumps;
  policy.max_branches = max_branches;

  auto branches = simulate(H, node, parse_point_arg(x0_str), t0, horizon,
                           step, policy);
  bool any_ok = false;
  for (std::size_t i = 0; i < branches.size(); ++i) {
    const auto& b = branches[i];
    std::string status = b.status == BranchStatus::Completed ? "completed"
                         : b.status == BranchStatus::Blocked ? "BLOCKED"
                                                             : "TRUNCATED";
    if (b.status != BranchStatus::Blocked) any_ok = true;
    std::ostringstream line;
    line << "branch " << i << ": " << status << ", "
         << b.exec.time_sys.jump_count() << " jumps";
    if (b.exec.time_sys.jump_count() > 0) {
      line << " at t =";
      for (int j = 0; j < b.exec.time_sys.jump_count(); ++j)
        line << " " << b.exec.time_sys.times[static_cast<std::size_t>(j)];
    }
    line << "; states:";
    for (const auto& a : b.exec.phi0) line << " " << a;
    if (!b.note.empty()) line << " (" << b.note << ")";
    say(line.str());

    Report rep = validate_execution(b.exec, H, tol);
    if (!rep.empty()) {
      say("  WARNING: branch does not validate:");
      print_report(rep);
      any_ok = any_ok && b.status == BranchStatus::Blocked;
    }
    if (!out.empty()) {
      std::ofstream os(branch_csv_path(out, i, branches.size()));
      if (!os) throw Error("cannot write '" + out + "'");
      write_trajectory_csv(b.exec, os);
    } else if (g_quiet) {
      write_trajectory_csv(b.exec, std::cout);
    }
  }
  return any_ok ? kExitOk : kExitSemantic;
}

int cmd_check_morphism(const std::string& file, int samples, double tol) {
  HDSMorphism m = load_morphism(file);
  MorphismReport rep = verify_hds_morphism(m, samples, tol);
  say(std::string("tier: ") + (rep.exact ? "EXACT" : "SAMPLED") + " (" +
      std::to_string(rep.samples_used) + " samples)");
  say("max intertwining residual: " + std::to_string(rep.max_residual));
  if (rep.ok()) {
    say("verified: " + file);
    return kExitOk;
  }
  say("NOT VERIFIED: " + file);
  print_report(rep.violations);
  return kExitSemantic;
}

int cmd_compose(const std::string& first_file, const std::string& second_file,
                const std::string& out) {
  HDSMorphism m = load_morphism(first_file);   // applied first
  HDSMorphism n = load_morphism(second_file);  // applied second
  HDSMorphism c = compose_morphisms(n, m);

  nlohmann::json j;
  j["format"] = kSpecFormat;
  nlohmann::json jm = nlohmann::json::parse(std::ifstream(first_file));
  nlohmann::json jn = nlohmann::json::parse(std::ifstream(second_file));
  j["source"] = jm.at("source");
  j["target"] = jn.at("target");
  for (const auto& [a, b] : c.phi.node_map) j["node_map"][a] = b;
  for (const auto& [e, f] : c.phi.edge_map) j["edge_map"][e] = f;
  for (const auto& [a, al] : c.alpha_of) {
    nlohmann::json comps = nlohmann::json::array();
    for (const auto& expr : al.components()) comps.push_back(expr.to_string());
    j["alpha"][a] = comps;
  }
  if (out.empty()) {
    std::cout << j.dump(2) << "\n";
  } else {
    std::ofstream os(out);
    if (!os) throw Error("cannot write '" + out + "'");
    os << j.dump(2) << "\n";
  }
  return kExitOk;
}

int cmd_push(const std::string& morphism_file, const std::string& exec_csv,
             const std::string& out, double tol) {
  HDSMorphism m = load_morphism(morphism_file);
  std::ifstream is(exec_csv);
  if (!is) throw Error("cannot open '" + exec_csv + "'");
  Execution E = read_trajectory_csv(is, m.source_sys, tol);
  Execution pushed = pushforward(E, m);
  if (!out.empty()) {
    std::ofstream os(out);
    if (!os) throw Error("cannot write '" + out + "'");
    write_trajectory_csv(pushed, os);
  } else {
    write_trajectory_csv(pushed, std::cout);
  }
  Report rep = validate_execution(pushed, m.target_sys, tol);
  if (rep.empty()) {
    say("pushed execution validates against the target system");
    return kExitOk;
  }
  say("pushed execution does NOT validate:");
  print_report(rep);
  return kExitSemantic;
}

int cmd_check_execution(const std::string& system_file,
                        const std::string& exec_csv, double tol) {
  HybridSystem H = load_system(system_file);
  std::ifstream is(exec_csv);
  if (!is) throw Error("cannot open '" + exec_csv + "'");
  Execution E = read_trajectory_csv(is, H, tol);
  Report rep = validate_execution(E, H, tol);
  if (rep.empty()) {
    say("execution validates (" + std::to_string(E.curves.size()) +
        " segments)");
    return kExitOk;
  }
  say("execution does NOT validate:");
  print_report(rep);
  return kExitSemantic;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"hybrid dynamical systems: validate, simulate, verify, push"};
  app.require_subcommand(1);

  double tol = kResidualTol;
  std::uint64_t seed = kGridSeed;
  app.add_option("--tol", tol, "numeric tolerance for checks");
  app.add_option("--seed", seed, "seed for sampled (over-cap) grids");
  app.add_flag("--quiet", g_quiet, "suppress report output");

  std::string sys_file, morph_file, exec_csv, out;
  std::string node, x0_str = "0";
  double t0 = 0.0, horizon = 1.0, step = 1e-3;
  std::string policy = "first";
  int max_jumps = 1000, max_branches = 32, samples = kGridPointsPerAxis;

  auto* validate = app.add_subcommand("validate", "validate a system spec");
  validate->add_option("system", sys_file)->required();

  auto* sim = app.add_subcommand("simulate", "simulate a system");
  sim->add_option("system", sys_file)->required();
  sim->add_option("--node", node, "initial discrete state")->required();
  sim->add_option("--x0", x0_str, "initial point, comma-separated");
  sim->add_option("--t0", t0, "start time");
  sim->add_option("--horizon", horizon, "end time")->required();
  sim->add_option("--step", step, "integrator step");
  sim->add_option("--policy", policy, "first | exhaustive");
  sim->add_option("--max-jumps", max_jumps);
  sim->add_option("--max-branches", max_branches);
  sim->add_option("--out", out, "CSV output path (per-branch suffix added)");

  auto* chk = app.add_subcommand("check-morphism", "verify a morphism spec");
  chk->add_option("morphism", morph_file)->required();
  chk->add_option("--samples", samples, "grid points per axis");

  auto* comp = app.add_subcommand("compose", "compose two morphism specs");
  std::string second_file;
  comp->add_option("first", morph_file, "morphism applied first")->required();
  comp->add_option("second", second_file, "morphism applied second")
      ->required();
  comp->add_option("-o,--out", out, "output morphism spec path");

  auto* push = app.add_subcommand("push", "push an execution forward");
  push->add_option("morphism", morph_file)->required();
  push->add_option("--exec", exec_csv, "execution CSV")->required();
  push->add_option("--out", out, "output CSV path");

  auto* chkexec =
      app.add_subcommand("check-execution", "validate an execution CSV");
  chkexec->add_option("system", sys_file)->required();
  chkexec->add_option("--exec", exec_csv, "execution CSV")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  global_grid_seed() = seed;
  try {
    if (*validate) return cmd_validate(sys_file, tol);
    if (*sim)
      return cmd_simulate(sys_file, node, x0_str, t0, horizon, step, policy,
                          max_jumps, max_branches, out, tol);
    if (*chk) return cmd_check_morphism(morph_file, samples, tol);
    if (*comp) return cmd_compose(morph_file, second_file, out);
    if (*push) return cmd_push(morph_file, exec_csv, out, tol);
    if (*chkexec) return cmd_check_execution(sys_file, exec_csv, tol);
  } catch (const OutOfDomain& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const SourceMismatch& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}
