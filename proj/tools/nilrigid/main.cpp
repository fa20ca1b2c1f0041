#include <CLI11.hpp>

#include <iostream>

#include "common.hpp"
#include "nilrigid/exact/rational.hpp"

using namespace nilrigid;
using namespace nilrigid::cli;

namespace {

void add_common(CLI::App* app, RunConfig& cfg) {
  app->add_option("--seed", cfg.seed, "seed for all sampling")->capture_default_str();
  app->add_option("--precision-bits", cfg.precision_bits, "working precision in bits")
      ->check(CLI::Range(64L, 4096L))
      ->capture_default_str();
  app->add_option("--n-box", cfg.n_box, "n ranges over [-n_box, n_box]^r")->check(CLI::Range(0, 50))->capture_default_str();
  app->add_option("--samples", cfg.samples, "number of mu-samples")->check(CLI::Range(1, 100000000))->capture_default_str();
  app->add_option("--out-dir", cfg.out_dir, "directory for report files")->capture_default_str();
  app->add_option("--fixtures", cfg.fixtures, "Katok pair fixtures file");
}

int run(int argc, char** argv) {
  CLI::App app{"Exact and certified analysis of Z^r actions by nilmanifold automorphisms"};
  app.set_version_flag("--version", std::string("nilrigid ") + NILRIGID_VERSION);
  app.require_subcommand(1);
  RunConfig cfg;
  cfg.threads = threads_from_env();

  std::string action_file;
  auto* analyze = app.add_subcommand("analyze", "Lyapunov spectrum, tower and obstruction report of an action file");
  add_common(analyze, cfg);
  analyze->add_option("action", action_file, "action JSON file")->required();

  auto* heis = app.add_subcommand("heisenberg", "The 13-dimensional Heisenberg example");
  heis->require_subcommand(1);
  int height = 3, centralizer = 2;
  auto* search = heis->add_subcommand("search", "search for a Katok pair and write the fixtures file");
  add_common(search, cfg);
  search->add_option("--height", height, "coefficient bound for the reciprocal sextic")->capture_default_str();
  search->add_option("--centralizer", centralizer, "coefficient bound for B = p(A)")->capture_default_str();
  auto* verify = heis->add_subcommand("verify", "re-verify the five properties of a fixtures pair");
  add_common(verify, cfg);
  auto* demo = heis->add_subcommand("demo", "equivariance, torus factor, center translation and compactness reports");
  add_common(demo, cfg);

  HPrincipleOptions hp;
  std::size_t dim = 0;
  auto* hprin = app.add_subcommand("hprinciple", "drift decomposition sweep against the frozen constants");
  add_common(hprin, cfg);
  hprin->add_option("--dim", dim, "dimension (a single Jordan block when --blocks is absent)");
  hprin->add_option("--blocks", hp.blocks, "Jordan block sizes")->delimiter(',');
  hprin->add_option("--eps", hp.eps, "window parameters in (0, 1)")->delimiter(',')->capture_default_str();
  hprin->add_option("--radii", hp.radii, "values of |v|, at most 1e-3")->delimiter(',')->capture_default_str();
  hprin->add_option("--directions", hp.directions, "random directions per radius")->capture_default_str();
  hprin->add_option("--vector", hp.vector, "explicit v as comma-separated rationals (replaces the sweep)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? kPass : kInputError;
  }

  if (*analyze) {
    cfg.command = "analyze";
    return cmd_analyze(cfg, action_file);
  }
  if (*search) {
    cfg.command = "heisenberg search";
    return cmd_heisenberg_search(cfg, height, centralizer);
  }
  if (*verify) {
    cfg.command = "heisenberg verify";
    return cmd_heisenberg_verify(cfg);
  }
  if (*demo) {
    cfg.command = "heisenberg demo";
    return cmd_heisenberg_demo(cfg);
  }
  cfg.command = "hprinciple";
  if (hp.blocks.empty()) {
    if (dim == 0) throw PreconditionError("hprinciple: give --dim or --blocks");
    hp.blocks = {dim};
  } else if (dim != 0) {
    std::size_t total = 0;
    for (auto b : hp.blocks) total += b;
    if (total != dim) throw PreconditionError("hprinciple: block sizes do not add up to --dim");
  }
  return cmd_hprinciple(cfg, hp);
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const InputError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kInputError;
  } catch (const PreconditionError& e) {
    std::cerr << "invalid input: " << e.what() << "\n";
    return kInputError;
  } catch (const ExhaustedError& e) {
    std::cerr << e.what() << "\n";
    return kExhausted;
  } catch (const IndeterminateError& e) {
    std::cerr << "undecided: " << e.what() << "\n";
    return kFailed;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInputError;
  }
}
