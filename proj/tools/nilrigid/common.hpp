#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace nilrigid::cli {

enum ExitCode : int {
  kPass = 0,
  kInputError = 1,
  kFailed = 2,      // certified failure or undecided verdict
  kExhausted = 3,   // search exhausted, missing fixtures
};

struct RunConfig {
  std::string command;
  std::vector<std::string> inputs;
  std::uint64_t seed = 1;
  long precision_bits = 128;
  int n_box = 5;
  std::size_t samples = 10000;
  std::string out_dir = ".";
  std::string fixtures;
  unsigned threads = 0;  // from NILRIGID_THREADS; 0 = hardware concurrency

  /// "# key=value" lines shared by every output file.
  std::map<std::string, std::string> header() const;
};

/// NILRIGID_THREADS, or 0 when unset or unparsable.
unsigned threads_from_env();

/// Writes out_dir/name, creating out_dir; returns the path.
std::string write_output(const RunConfig& cfg, const std::string& name, const std::string& content);

std::string header_lines(const std::map<std::string, std::string>& h);

/// %.12g; output must not depend on locale or stream state.
std::string fmt(double x);

int cmd_analyze(const RunConfig& cfg, const std::string& action_file);
int cmd_heisenberg_search(const RunConfig& cfg, int height, int centralizer);
int cmd_heisenberg_verify(const RunConfig& cfg);
int cmd_heisenberg_demo(const RunConfig& cfg);

struct HPrincipleOptions {
  std::vector<std::size_t> blocks;
  std::vector<double> eps{0.5, 0.1, 0.01};
  std::vector<double> radii{1e-3, 1e-4, 1e-5};
  std::size_t directions = 8;
  std::string vector;  // explicit v, comma separated rationals
};
int cmd_hprinciple(const RunConfig& cfg, const HPrincipleOptions& opt);

}  // namespace nilrigid::cli
