// ogpf: two-stage gas-power flow solver front end.
//
//   ogpf solve      --instance small2area --r 4 [--mode consensus]
//   ogpf sweep-r    --instance small2area --r-list 4,8,16 [--csv sweep.csv]
//   ogpf montecarlo --instance medium3area --runs 20 --sigma 0.1 --seed 7
//   ogpf oracle     --instance small2area --r 2
//
// Exit codes: 0 Optimal (or study completed), 2 Approximate, 1 error.

#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "ogpf/errors.hpp"
#include "ogpf/mipbuild.hpp"
#include "ogpf/report.hpp"

namespace {

void add_common(CLI::App* cmd, ogpf::RunConfig& cfg, std::string& mode) {
  cmd->add_option("--instance", cfg.instance, "instance JSON path or bundled name")->required();
  cmd->add_option("--r", cfg.r, "number of PWA regions (even, >= 2)");
  cmd->add_option("--epsilon", cfg.epsilon, "strictness margin of the logic rows");
  cmd->add_option("--cert-tol", cfg.cert_tol, "J_psi threshold for an Optimal certificate");
  cmd->add_option("--mode", mode, "centralized | consensus");
  cmd->add_option("--seed", cfg.seed, "Monte Carlo seed");
  cmd->add_option("--runs", cfg.runs, "Monte Carlo runs");
  cmd->add_option("--sigma", cfg.sigma, "demand perturbation half-width");
  cmd->add_option("--out", cfg.out, "write the JSON report here instead of stdout");
  cmd->add_option("--rho", cfg.consensus.rho, "initial consensus penalty");
  cmd->add_flag("!--no-timings", cfg.timings, "write all timings as 0");
}

void emit(const ogpf::RunConfig& cfg, const ogpf::Report& rep) {
  const std::string text = rep.to_json().dump(2) + "\n";
  if (cfg.out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(cfg.out);
  if (!f) throw ogpf::Error("cannot write " + cfg.out);
  f << text;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Two-stage solver for multi-area optimal gas-power flow"};
  app.require_subcommand(1);
  ogpf::RunConfig cfg;
  std::string mode = "centralized";
  std::string csv_path;
  std::string dump_path;

  auto* solve = app.add_subcommand("solve", "relaxation, recovery and certificate");
  add_common(solve, cfg, mode);
  solve->add_option("--dump-model", dump_path, "write the mixed-integer model as text");
  auto* sweep = app.add_subcommand("sweep-r", "repeat the solve for several r");
  add_common(sweep, cfg, mode);
  sweep->add_option("--r-list", cfg.r_list, "comma separated r values")->delimiter(',');
  sweep->add_option("--csv", csv_path, "write the sweep table as CSV");
  auto* mc = app.add_subcommand("montecarlo", "solve under random demand perturbations");
  add_common(mc, cfg, mode);
  auto* orc = app.add_subcommand("oracle", "brute-force optimum and gap to the two-stage result");
  add_common(orc, cfg, mode);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    cfg.mode = ogpf::parse_mode(mode);
    ogpf::Report rep;
    if (*solve) {
      if (!dump_path.empty()) {
        cfg.validate();
        auto inst = ogpf::load_instance(ogpf::resolve_instance_path(cfg.instance));
        auto build = ogpf::build_model(inst, ogpf::PwaConfig{cfg.r, cfg.epsilon});
        std::ofstream f(dump_path);
        if (!f) throw ogpf::Error("cannot write " + dump_path);
        ogpf::write_model_text(build.model, f);
      }
      rep = ogpf::cmd_solve(cfg);
      if (!rep.runs.empty() && !rep.runs.front().ok) {
        std::cerr << "error: " << rep.runs.front().error << "\n";
      }
    } else if (*sweep) {
      rep = ogpf::cmd_sweep_r(cfg);
      if (!csv_path.empty()) {
        std::ofstream f(csv_path);
        if (!f) throw ogpf::Error("cannot write " + csv_path);
        f << rep.sweep_csv();
      } else if (!cfg.out.empty()) {
        std::cout << rep.sweep_csv();
      }
      if (!rep.time_trend_ok) std::cerr << "note: solve time is not monotone in r\n";
    } else if (*mc) {
      rep = ogpf::cmd_montecarlo(cfg);
    } else {
      rep = ogpf::cmd_oracle(cfg);
    }
    emit(cfg, rep);
    return ogpf::exit_code(rep);
  } catch (const ogpf::CapExceeded& e) {
    std::cerr << "error: " << e.what() << " (required " << static_cast<long long>(e.required())
              << ")\n";
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
  }
  return 1;
}
