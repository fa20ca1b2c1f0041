#include <iostream>
#include <nlohmann/json.hpp>
#include <sstream>

#include "common.hpp"
#include "nilrigid/action/irreducibility.hpp"

namespace nilrigid::cli {

using namespace action;
using ojson = nlohmann::ordered_json;

namespace {

std::string n_string(const IntVec& n) {
  std::string s = "(";
  for (std::size_t i = 0; i < n.size(); ++i) s += (i ? "," : "") + std::to_string(n[i]);
  return s + ")";
}

ojson interval_json(const Interval& x) { return {{"mid", x.mid_double()}, {"width", x.width().to_double()}}; }

}  // namespace

int cmd_analyze(const RunConfig& cfg, const std::string& action_file) {
  AutoAction a = load_action(action_file);
  auto valid = validate_action(a);
  if (!valid.ok()) {
    for (const auto& f : valid.failures) std::cerr << "invalid action: " << f << "\n";
    return kInputError;
  }
  const long bits = std::max(cfg.precision_bits, kSpectrumPrecision);
  LyapunovSpectrum spectrum = lyapunov_spectrum(a, bits);
  ObstructionReport rep = obstruction_report(a, cfg.n_box);
  auto grading = check_grading(spectrum);
  auto sums = exponent_sum(spectrum);

  auto h = cfg.header();
  h["n_box"] = std::to_string(cfg.n_box);
  h["input"] = action_file;

  std::ostringstream txt;
  ojson js;
  js["header"] = h;
  js["dim"] = a.dim();
  js["rank"] = a.rank();
  txt << header_lines(h);
  txt << "dim " << a.dim() << ", rank " << a.rank() << ", class " << a.algebra.nilpotency_class() << "\n\n";

  txt << "Lyapunov exponents: entry, class, dim, multiplicity, chi on each generator\n";
  ojson entries = ojson::array();
  for (std::size_t i = 0; i < spectrum.entries.size(); ++i) {
    const auto& e = spectrum.entries[i];
    txt << "  " << i << "  class " << spectrum.class_of(i) << "  dim " << e.dim() << "  mult " << e.multiplicity;
    ojson chi = ojson::array();
    for (const auto& c : e.chi) {
      txt << "  " << (e.zero ? "0" : fmt(c.mid_double()));
      chi.push_back(interval_json(c));
    }
    txt << (e.zero ? "  (zero)" : "") << "\n";
    entries.push_back({{"class", spectrum.class_of(i)}, {"dim", e.dim()}, {"multiplicity", e.multiplicity},
                       {"zero", e.zero}, {"chi", chi}});
  }
  js["lyapunov"] = entries;

  txt << "\nCoarse Lyapunov classes\n";
  ojson classes = ojson::array();
  for (std::size_t c = 0; c < spectrum.classes.size(); ++c) {
    txt << "  " << c << "  dim " << spectrum.class_dim(c) << "  entries";
    for (auto e : spectrum.classes[c].entries) txt << " " << e;
    txt << (spectrum.classes[c].zero ? "  (zero)" : "") << "\n";
    classes.push_back({{"dim", spectrum.class_dim(c)}, {"entries", spectrum.classes[c].entries}, {"zero", spectrum.classes[c].zero}});
  }
  js["coarse_classes"] = classes;

  txt << "\nexponent sum:";
  ojson sum_js = ojson::array();
  for (const auto& s : sums) {
    txt << " " << fmt(s.mid_double()) << " (width " << fmt(s.width().to_double()) << ")";
    sum_js.push_back(interval_json(s));
  }
  txt << "\nbracket grading: " << (grading.empty() ? "ok" : "FAILED") << "\n";
  for (const auto& g : grading) txt << "  " << g << "\n";
  js["exponent_sum"] = sum_js;
  js["grading_failures"] = grading;

  auto verdicts = [&](const char* title, const std::vector<FactorVerdict>& v) {
    txt << "\n" << title << ": label, dim, unit rank, virtually cyclic\n";
    ojson arr = ojson::array();
    for (const auto& f : v) {
      txt << "  " << f.label << "  " << f.dim << "  " << (f.unit_rank ? std::to_string(*f.unit_rank) : "-") << "  "
          << to_string(f.virtually_cyclic) << "\n";
      ojson o{{"label", f.label}, {"dim", f.dim}, {"virtually_cyclic", to_string(f.virtually_cyclic)}};
      o["unit_rank"] = f.unit_rank ? ojson(*f.unit_rank) : ojson(nullptr);
      arr.push_back(o);
    }
    return arr;
  };
  js["abelian_factors"] = verdicts("Abelian factors", rep.abelian_factors);
  js["tower_layers"] = verdicts("Tower layers", rep.tower_layers);

  txt << "\nHaar entropy h(n)\n";
  ojson ent = ojson::array();
  for (const auto& r : rep.entropy) {
    txt << "  " << n_string(r.n) << "  " << fmt(r.entropy.mid_double()) << (r.positive ? "" : "  (zero)") << "\n";
    ent.push_back({{"n", r.n}, {"entropy", interval_json(r.entropy)}, {"positive", r.positive}});
  }
  js["haar_entropy"] = ent;

  txt << "\n" << rep.summary() << "\n";
  js["summary"] = rep.summary();
  js["virtually_cyclic_factor"] = to_string(rep.virtually_cyclic_factor);

  std::cout << txt.str();
  write_output(cfg, "analyze.txt", txt.str());
  write_output(cfg, "analyze.json", js.dump(2) + "\n");
  const bool undecided = rep.virtually_cyclic_factor == Decision::Undecided ||
                         std::any_of(rep.abelian_factors.begin(), rep.abelian_factors.end(),
                                     [](const FactorVerdict& f) { return f.virtually_cyclic == Decision::Undecided; });
  return undecided || !grading.empty() ? kFailed : kPass;
}

}  // namespace nilrigid::cli
