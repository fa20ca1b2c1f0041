#include "common.hpp"

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <stdexcept>

namespace nilrigid::cli {

std::map<std::string, std::string> RunConfig::header() const {
  return {{"tool", std::string("nilrigid ") + NILRIGID_VERSION},
          {"command", command},
          {"seed", std::to_string(seed)},
          {"precision_bits", std::to_string(precision_bits)}};
}

unsigned threads_from_env() {
  const char* s = std::getenv("NILRIGID_THREADS");
  if (!s || !*s) return 0;
  char* end = nullptr;
  unsigned long v = std::strtoul(s, &end, 10);
  return (end && *end == '\0') ? static_cast<unsigned>(v) : 0;
}

std::string write_output(const RunConfig& cfg, const std::string& name, const std::string& content) {
  std::filesystem::path dir(cfg.out_dir);
  std::filesystem::create_directories(dir);
  std::filesystem::path p = dir / name;
  std::ofstream f(p, std::ios::binary);
  if (!f) throw std::runtime_error("cannot write " + p.string());
  f << content;
  return p.string();
}

std::string header_lines(const std::map<std::string, std::string>& h) {
  std::string out;
  for (const auto& [k, v] : h) out += "# " + k + "=" + v + "\n";
  return out;
}

std::string fmt(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

}  // namespace nilrigid::cli
