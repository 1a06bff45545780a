// Command-line front end: solve the three codimension conditions, verify the
// coexisting-attractor hypotheses, and export cycle/orbit/segment data as CSV.
//
// Exit codes: 0 pass, 1 checks failed (report written), 2 evaluation error.

#include <CLI11.hpp>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>

#include "pwlhc/errors.hpp"
#include "pwlhc/serialize.hpp"

namespace fs = std::filesystem;
using namespace pwlhc;

namespace {

constexpr int kExitPass = 0;
constexpr int kExitChecksFailed = 1;
constexpr int kExitError = 2;

struct CliOptions {
  std::string config_path;
  std::optional<int> k_max;
  std::optional<double> tol_sigma;
  std::optional<std::string> out_dir;
};

RunConfig load_config(const CliOptions& cli) {
  RunConfig cfg = load_run_config(cli.config_path);
  if (cli.k_max) cfg.k_max = *cli.k_max;
  if (cli.tol_sigma) cfg.tol_sigma = *cli.tol_sigma;
  if (cli.out_dir) cfg.out_dir = *cli.out_dir;
  fs::create_directories(cfg.out_dir);
  return cfg;
}

// Writes a diagnostic JSON next to the other artifacts so failures are
// machine-readable, then reports the evaluation error on stderr.
int fail(const RunConfig* cfg, const std::string& command,
         const std::string& message) {
  std::cerr << "pwlhc " << command << ": " << message << "\n";
  if (cfg) {
    try {
      write_json_atomic(fs::path(cfg->out_dir) / "error.json",
                        json{{"command", command}, {"error", message}});
    } catch (...) {
      // The diagnostic file is best-effort; the exit code carries the result.
    }
  }
  return kExitError;
}

struct Problem {
  PwlMap f;
  Word X, Y;
};

Problem make_problem(const RunConfig& cfg) {
  return {make_map_from_config(cfg.map), Word(cfg.X), Word(cfg.Y)};
}

void require_distinct_heads(const Word& X, const Word& Y) {
  if (X[0] == Y[0])
    throw ConfigError("words X and Y must start with different symbols");
}

int cmd_solve(const CliOptions& cli) {
  std::optional<RunConfig> cfg;
  try {
    cfg = load_config(cli);
    if (cfg->map.kind != MapConfig::Kind::Bcnf3)
      throw ConfigError("solve requires bcnf3 map parameters");
    const Word X(cfg->X), Y(cfg->Y);
    require_distinct_heads(X, Y);

    SolveOptions opts;
    if (cfg->solve_tol) opts.tol = *cfg->solve_tol;
    if (cfg->max_iterations) opts.max_iterations = *cfg->max_iterations;
    const SolveResult res = solve(cfg->map.bcnf, X, Y, opts);

    const fs::path out = fs::path(cfg->out_dir) / "solved.json";
    write_json_atomic(out, to_json(res, *cfg));
    std::cout << "solve: " << to_string(res.status) << " after "
              << res.iterations << " iterations, |residual| = "
              << fmt17(res.residual.norm_inf()) << "; wrote " << out.string()
              << "\n";
    if (!res.converged())
      return fail(&*cfg, "solve",
                  std::string("solver did not converge: ") +
                      to_string(res.status) +
                      (res.message.empty() ? "" : " (" + res.message + ")"));
    return kExitPass;
  } catch (const Error& e) {
    return fail(cfg ? &*cfg : nullptr, "solve", e.what());
  }
}

int cmd_verify(const CliOptions& cli) {
  std::optional<RunConfig> cfg;
  try {
    cfg = load_config(cli);
    if (cfg->map.kind != MapConfig::Kind::Bcnf3)
      throw ConfigError("verify requires bcnf3 map parameters");
    const Word X(cfg->X), Y(cfg->Y);
    require_distinct_heads(X, Y);

    const VerificationReport rep =
        verify_theorems(cfg->map.bcnf, X, Y, cfg->k_max, cfg->tol_sigma);
    const fs::path out = fs::path(cfg->out_dir) / "report.json";
    write_json_atomic(out, to_json(rep));
    std::cout << "verify: hypotheses "
              << (rep.hypotheses_pass ? "pass" : "FAIL") << ", sweep "
              << (rep.sweep_pass ? "pass" : "FAIL") << ", overall "
              << (rep.overall_pass ? "pass" : "FAIL") << "; wrote "
              << out.string() << "\n";
    return rep.overall_pass ? kExitPass : kExitChecksFailed;
  } catch (const Error& e) {
    return fail(cfg ? &*cfg : nullptr, "verify", e.what());
  }
}

// Both cycle families for k = 0..k_max: X^k Y and the 0-flipped X^k Ybar.
// Degenerate members are skipped so a singular flipped word does not abort
// the export.
std::vector<std::pair<int, Cycle>> sweep_cycles(const Problem& pr,
                                                const RunConfig& cfg) {
  std::vector<std::pair<int, Cycle>> out;
  const Word ybar = flip(pr.Y, 0);
  for (int k = 0; k <= cfg.k_max; ++k) {
    try {
      out.emplace_back(k, xky_cycle(pr.f, pr.X, pr.Y, k, cfg.tol_sigma));
    } catch (const DegenerateCycleError&) {
    }
    try {
      out.emplace_back(
          k, find_cycle(pr.f, Word(word_power(pr.X, k) + ybar.str()),
                        cfg.tol_sigma));
    } catch (const DegenerateCycleError&) {
    }
  }
  return out;
}

HomoclinicOrbit make_orbit(const Problem& pr, const RunConfig& cfg) {
  const WordComposition xc = compose(pr.f, pr.X);
  const Cycle xcycle = find_cycle(pr.f, pr.X, cfg.tol_sigma);
  const SpectralFrame frame = build_frame(xc.M);
  HomoclinicOptions opts;
  opts.tol_sigma = cfg.tol_sigma;
  if (cfg.steps_fwd) opts.steps_fwd = *cfg.steps_fwd;
  return build_s_orbit(pr.f, pr.X, pr.Y, frame, xcycle.points[0], opts);
}

int cmd_cycles(const CliOptions& cli) {
  std::optional<RunConfig> cfg;
  try {
    cfg = load_config(cli);
    const Problem pr = make_problem(*cfg);
    const fs::path out = fs::path(cfg->out_dir) / "cycles.csv";
    write_cycles_csv(out, sweep_cycles(pr, *cfg));
    std::cout << "cycles: wrote " << out.string() << "\n";
    return kExitPass;
  } catch (const Error& e) {
    return fail(cfg ? &*cfg : nullptr, "cycles", e.what());
  }
}

int cmd_orbit(const CliOptions& cli) {
  std::optional<RunConfig> cfg;
  try {
    cfg = load_config(cli);
    const Problem pr = make_problem(*cfg);
    const fs::path out = fs::path(cfg->out_dir) / "orbit.csv";
    write_orbit_csv(out, make_orbit(pr, *cfg));
    std::cout << "orbit: wrote " << out.string() << "\n";
    return kExitPass;
  } catch (const Error& e) {
    return fail(cfg ? &*cfg : nullptr, "orbit", e.what());
  }
}

int cmd_portrait(const CliOptions& cli) {
  std::optional<RunConfig> cfg;
  try {
    cfg = load_config(cli);
    const Problem pr = make_problem(*cfg);
    const fs::path dir(cfg->out_dir);
    write_cycles_csv(dir / "cycles.csv", sweep_cycles(pr, *cfg));
    const HomoclinicOrbit orbit = make_orbit(pr, *cfg);
    write_orbit_csv(dir / "orbit.csv", orbit);
    write_segments_csv(dir / "segments.csv", branch_segments(orbit));
    std::cout << "portrait: wrote " << (dir / "cycles.csv").string() << ", "
              << (dir / "orbit.csv").string() << ", "
              << (dir / "segments.csv").string() << "\n";
    return kExitPass;
  } catch (const Error& e) {
    return fail(cfg ? &*cfg : nullptr, "portrait", e.what());
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Periodic solutions, invariant-manifold structure, and subsumed "
      "homoclinic connections of continuous piecewise-linear maps"};
  app.require_subcommand(1);

  CliOptions cli;
  int (*runner)(const CliOptions&) = nullptr;

  for (const auto& [name, desc, fn] :
       {std::tuple{"solve",
                   "Newton-solve gamma11 = 0, psi1 = 0, lambda1*lambda2 = 1 "
                   "over (tauL, tauR, deltaL)",
                   &cmd_solve},
        std::tuple{"verify",
                   "Evaluate the full coexisting-attractor certificate "
                   "and write report.json",
                   &cmd_verify},
        std::tuple{"cycles", "Export the X^k Y and flipped cycle families",
                   &cmd_cycles},
        std::tuple{"orbit", "Export the windowed homoclinic orbit",
                   &cmd_orbit},
        std::tuple{"portrait",
                   "Export cycles.csv, orbit.csv and segments.csv",
                   &cmd_portrait}}) {
    CLI::App* sub = app.add_subcommand(name, desc);
    sub->add_option("--config", cli.config_path, "JSON run configuration")
        ->required()
        ->check(CLI::ExistingFile);
    sub->add_option("--k-max", cli.k_max, "Override the sweep depth k_max");
    sub->add_option("--tol-sigma", cli.tol_sigma,
                    "Override the switching-manifold tolerance");
    sub->add_option("--out-dir", cli.out_dir,
                    "Override the output directory");
    sub->callback([&runner, fn] { runner = fn; });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kExitPass : kExitError;
  }
  return runner(cli);
}
