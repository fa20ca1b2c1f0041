#include <cmath>
#include <iostream>
#include <nlohmann/json.hpp>
#include <sstream>

#include "common.hpp"
#include "nilrigid/hprinciple/constants.hpp"
#include "nilrigid/hprinciple/drift.hpp"

namespace nilrigid::cli {

using namespace hprinciple;
using ojson = nlohmann::ordered_json;

namespace {

std::vector<Rational> parse_vector(const std::string& text) {
  std::vector<Rational> v;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      v.push_back(exact::parse_rational(item));
    } catch (const std::invalid_argument&) {
      throw InputError("--vector: cannot parse '" + item + "' as a rational");
    }
  }
  return v;
}

struct Row {
  std::string direction;
  std::vector<Rational> v;
  double radius = 0;
};

}  // namespace

int cmd_hprinciple(const RunConfig& cfg, const HPrincipleOptions& opt) {
  UnipotentFlow flow = UnipotentFlow::standard(opt.blocks);
  const std::size_t d = flow.dim;
  for (double e : opt.eps)
    if (!(e > 0 && e < 1)) throw PreconditionError("hprinciple: eps must lie in (0, 1)");

  std::vector<Row> rows;
  if (!opt.vector.empty()) {
    auto v = parse_vector(opt.vector);
    if (v.size() != d) throw PreconditionError("hprinciple: --vector has the wrong length");
    rows.push_back({"given", v, norm(to_double(v))});
  } else {
    if (opt.directions == 0) throw PreconditionError("hprinciple: need at least one direction");
    for (double r : opt.radii)
      if (!(r > 0 && r <= kSmallVectorBound)) throw PreconditionError("hprinciple: radii must lie in (0, 1e-3]");
    if (flow.max_block() < 2) throw PreconditionError("hprinciple: every vector is fixed by the trivial flow");
    for (std::size_t i = 0; i < opt.directions; ++i) {
      auto u = to_double(random_vector(flow, 1.0, cfg.seed, i));
      for (double r : opt.radii) {
        std::vector<Rational> v;
        for (double x : u) v.push_back(exact::from_double(x * r));
        rows.push_back({std::to_string(i), v, r});
      }
    }
  }

  auto h = cfg.header();
  std::string blocks;
  for (auto b : opt.blocks) blocks += (blocks.empty() ? "" : ",") + std::to_string(b);
  h["blocks"] = blocks;
  h["calibration"] = "seed " + std::to_string(kCalibrationSeed);
  std::ostringstream csv;
  csv << header_lines(h) << "direction,radius,T,max_w_perp,bound,eps,kappa,fraction,status\n";

  bool all_ok = true;
  std::map<double, double> worst;  // radius -> max over directions
  for (const auto& row : rows) {
    const std::string prefix = row.direction + "," + fmt(row.radius) + ",";
    const bool zero = std::all_of(row.v.begin(), row.v.end(), [](const Rational& x) { return x == 0; });
    DriftTime T;
    T.infinite = true;
    if (!zero) T = drift_time(flow, row.v);
    if (T.infinite) {
      csv << prefix << "INFINITE,0,NA,NA,NA,NA,INFINITE\n";
      continue;
    }
    const double wp = max_w_perp(flow, to_double(row.v));
    worst[row.radius] = std::max(worst[row.radius], wp);
    const double bound = frozen_drift_constant(d) * std::pow(row.radius, 1.0 / double(d));
    const bool bound_ok = wp <= bound;
    for (double e : opt.eps) {
      GoodWindow g = good_window(flow, row.v, e);
      const bool ok = bound_ok && g.fraction() >= 1 - e;
      all_ok = all_ok && ok;
      csv << prefix << fmt(T.value) << "," << fmt(wp) << "," << fmt(bound) << "," << fmt(e) << ","
          << fmt(g.kappa.get_d()) << "," << fmt(g.fraction()) << "," << (ok ? "ok" : "FAIL") << "\n";
    }
  }
  write_output(cfg, "hprinciple.csv", csv.str());

  std::ostringstream out;
  out << header_lines(h) << csv.str().substr(header_lines(h).size());
  ojson js;
  js["header"] = h;
  js["frozen_checks_pass"] = all_ok;
  if (worst.size() >= 2) {
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (const auto& [r, w] : worst) {
      sx += std::log(r);
      sy += std::log(w);
      sxx += std::log(r) * std::log(r);
      sxy += std::log(r) * std::log(w);
    }
    const double n = double(worst.size());
    const double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    const double target = 1.0 / double(d);
    const double dev = std::abs(slope - target) / target;
    out << "slope of log max|w_perp| against log |v|: " << fmt(slope) << ", 1/d = " << fmt(target)
        << ", relative deviation " << fmt(dev) << " " << (dev <= 0.15 ? "PASS" : "FAIL") << " (15% band)\n";
    js["slope"] = {{"value", slope}, {"target", target}, {"relative_deviation", dev}, {"within_15_percent", dev <= 0.15}};
  }
  out << "frozen-constant checks: " << (all_ok ? "PASS" : "FAIL") << "\n";
  std::cout << out.str();
  write_output(cfg, "hprinciple.json", js.dump(2) + "\n");
  return all_ok ? kPass : kFailed;
}

}  // namespace nilrigid::cli
