// Brute-force calibration of the h-principle constants. Prints the
// constants header on stdout (or writes it with --out).

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include "nilrigid/hprinciple/drift.hpp"

using namespace nilrigid::hprinciple;

namespace {

// Rounds to three significant digits, up or down.
double round3(double x, bool up) {
  const double scale = std::pow(10.0, std::floor(std::log10(x)) - 2);
  return (up ? std::ceil(x / scale) : std::floor(x / scale)) * scale;
}

std::string array_literal(const std::vector<double>& v) {
  std::ostringstream os;
  os << std::setprecision(3);
  for (std::size_t i = 0; i < v.size(); ++i) os << (i ? ", " : "") << v[i];
  return os.str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Calibrate the h-principle drift and window constants"};
  std::uint64_t seed = 1;
  std::size_t instances = 2000;
  std::string out;
  app.add_option("--seed", seed, "RNG seed");
  app.add_option("--instances", instances, "random instances per dimension");
  app.add_option("--out", out, "write the header here instead of stdout");
  CLI11_PARSE(app, argc, argv);

  const double safety = 2.0;
  const double eps_grid[] = {0.5, 0.1, 0.01};
  std::vector<double> drift(7, 0.0), kappa(7, 0.0);
  for (std::size_t d = 2; d <= 6; ++d) {
    double max_ratio = 0, min_ratio = INFINITY;
    for (std::size_t i = 0; i < instances; ++i) {
      // log-uniform |v| in (1e-5, 1e-3)
      const double radius = std::pow(10.0, -3.0 - 2.0 * (double(i) + 0.5) / double(instances));
      auto inst = random_instance(d, radius, seed, d * 1000003 + i);
      max_ratio = std::max(max_ratio, drift_ratio(inst.flow, inst.v));
      for (double e : eps_grid) min_ratio = std::min(min_ratio, kappa_ratio(inst.flow, inst.v, e));
    }
    drift[d] = round3(max_ratio * safety, true);
    kappa[d] = round3(min_ratio / safety, false);
    std::cerr << "d=" << d << " max drift ratio " << max_ratio << " min kappa ratio " << min_ratio << "\n";
  }

  std::ostringstream h;
  h << "#pragma once\n\n"
    << "// Written by nilrigid-calibrate; regenerate rather than edit.\n"
    << "// nilrigid-calibrate --seed " << seed << " --instances " << instances << "\n"
    << "// Drift: observed max of max|w_perp| / |v|^{1/d}, times " << safety << ", rounded up.\n"
    << "// Kappa: observed min of the eps-quantile of |w(t)| over eps^{d(d-1)/2}, eps in {1/2, 1/10, 1/100},\n"
    << "// divided by " << safety << ", rounded down.\n\n"
    << "#include <array>\n#include <cstdint>\n\n"
    << "namespace nilrigid::hprinciple {\n\n"
    << "inline constexpr std::uint64_t kCalibrationSeed = " << seed << ";\n"
    << "inline constexpr std::size_t kCalibrationInstances = " << instances << ";\n\n"
    << "/// |w_perp(t)| <= C_d |v|^{1/d} on [0, T]; index d, entries 0 and 1 unused.\n"
    << "inline constexpr std::array<double, 7> kDriftConstant = {" << array_literal(drift) << "};\n\n"
    << "/// kappa = C_kappa(d) eps^{d(d-1)/2}; index d, entries 0 and 1 unused.\n"
    << "inline constexpr std::array<double, 7> kKappaConstant = {" << array_literal(kappa) << "};\n\n"
    << "}  // namespace nilrigid::hprinciple\n";
  if (out.empty()) {
    std::cout << h.str();
  } else {
    std::ofstream f(out);
    if (!f) {
      std::cerr << "cannot write " << out << "\n";
      return 1;
    }
    f << h.str();
  }
  return 0;
}
