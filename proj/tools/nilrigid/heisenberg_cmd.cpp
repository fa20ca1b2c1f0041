#include <filesystem>
#include <fstream>
#include <iostream>
#include <nlohmann/json.hpp>
#include <sstream>

#include "common.hpp"
#include "nilrigid/action/irreducibility.hpp"
#include "nilrigid/heisenberg/measure.hpp"

namespace nilrigid::cli {

using namespace heisenberg;
using ojson = nlohmann::ordered_json;

namespace {

std::string fixtures_path(const RunConfig& cfg) {
  if (!cfg.fixtures.empty()) return cfg.fixtures;
  return (std::filesystem::path(cfg.out_dir) / "katok_pair.json").string();
}

bool require_fixtures(const std::string& path) {
  if (std::filesystem::exists(path)) return true;
  std::cerr << "missing fixtures " << path << " (run `nilrigid heisenberg search` first)\n";
  return false;
}

std::string read_text(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw InputError("cannot read " + path);
  std::ostringstream s;
  s << f.rdbuf();
  return s.str();
}

const char* verdict(bool ok) { return ok ? "PASS" : "FAIL"; }

}  // namespace

int cmd_heisenberg_search(const RunConfig& cfg, int height, int centralizer) {
  KatokPair pair = search_katok_pair(height, centralizer);
  const std::string path = fixtures_path(cfg);
  if (auto dir = std::filesystem::path(path).parent_path(); !dir.empty()) std::filesystem::create_directories(dir);
  save_katok(pair, path);
  const auto& s = *pair.search;
  std::cout << header_lines(cfg.header()) << "found sextic (a, b, c) = (" << s.sextic[0] << ", " << s.sextic[1] << ", "
            << s.sextic[2] << ") after " << s.candidates_tried << " centralizer candidates\n"
            << "wrote " << path << "\n";
  return kPass;
}

int cmd_heisenberg_verify(const RunConfig& cfg) {
  const std::string path = fixtures_path(cfg);
  if (!require_fixtures(path)) return kExhausted;
  KatokPair pair = parse_katok(read_text(path), false);
  const long bits = std::max(cfg.precision_bits, 256L);
  KatokVerification v = verify_katok_pair(pair.A, pair.B, bits);

  std::ostringstream out;
  out << header_lines(cfg.header());
  static const char* names[6] = {"(0) SL(6,Z) and AB = BA", "(1) charpoly(A) irreducible",
                                 "(2) one unit-circle pair, not roots of unity", "(3) four real eigenvalues",
                                 "(4) real eigenvalues of A have distinct |.|", "(5) multiplicatively independent"};
  for (int i = 0; i < 6; ++i) out << verdict(v.property[i]) << "  " << names[i] << "\n";
  if (v.certificate.witness_minor)
    out << "log-rank " << v.certificate.log_rank << ", witness minor " << fmt(v.certificate.witness_minor->mid_double())
        << "\n";
  for (const auto& f : v.failures) out << "failure: " << f << "\n";
  out << (v.ok() ? "verified" : "NOT verified") << "\n";
  std::cout << out.str();
  return v.ok() ? kPass : kFailed;
}

int cmd_heisenberg_demo(const RunConfig& cfg) {
  const std::string path = fixtures_path(cfg);
  if (!require_fixtures(path)) return kExhausted;
  KatokPair pair = load_katok(path);
  const auto alpha = build_action(pair);
  const long bits = cfg.precision_bits, bits2 = 2 * cfg.precision_bits;
  const Circle circle = make_circle(pair, std::max(256L, bits2));
  const auto samples = sample_mu(cfg.seed, cfg.samples);

  auto h = cfg.header();
  h["n_box"] = std::to_string(cfg.n_box);
  h["samples"] = std::to_string(cfg.samples);
  h["fixtures"] = std::filesystem::path(path).filename().string();
  h["rho"] = exact::to_string(circle.rho);

  write_output(cfg, "certificate.json", katok_to_json(pair));

  auto eq1 = check_equivariance(pair, alpha, circle, samples, cfg.n_box, bits, cfg.threads);
  auto eq2 = check_equivariance(pair, alpha, circle, samples, cfg.n_box, bits2, cfg.threads);
  {
    auto h1 = h, h2 = h;
    h2["precision_bits"] = std::to_string(bits2);
    write_output(cfg, "equivariance_" + std::to_string(bits) + ".csv", equivariance_csv(eq1, h1));
    write_output(cfg, "equivariance_" + std::to_string(bits2) + ".csv", equivariance_csv(eq2, h2));
  }
  auto torus = torus_factor_report(pair, circle, samples, cfg.n_box, 3, bits, cfg.threads);
  write_output(cfg, "characters.csv", character_csv(torus, h));
  write_output(cfg, "orbit_trace.csv", orbit_trace_csv(alpha, circle, samples.front(), cfg.n_box, bits, h));
  auto center = center_translation_check(circle, samples, Rational(1, 4), bits);
  auto compact = compactness_scan(circle, samples, Integer(1000000), bits, cfg.threads);
  auto obstruction = action::obstruction_report(alpha, 5);

  const bool eq_ok = eq1.max_error < 1e-9;
  const bool eq_halves = eq2.max_error <= eq1.max_error / 2;
  const bool y_ok = torus.max_nontrivial_y < 0.04;
  const bool circle_ok = torus.max_circle_distance < 1e-12;
  const bool center_ok = center.on_section_before == center.samples && center.off_section_after == center.samples;
  const bool compact_ok = compact.fraction_not_detected() >= 0.99;
  const bool vc_ok = obstruction.virtually_cyclic_factor == action::Decision::No;

  std::ostringstream out;
  out << header_lines(h);
  out << "circle radius " << exact::to_string(circle.rho) << ", angles " << fmt(circle.plane.angle_a.mid_double())
      << " " << fmt(circle.plane.angle_b.mid_double()) << "\n";
  out << verdict(eq_ok) << "  equivariance max error " << fmt(eq1.max_error) << " at " << bits << " bits (< 1e-9)\n";
  out << verdict(eq_halves) << "  equivariance max error " << fmt(eq2.max_error) << " at " << bits2
      << " bits (<= half)\n";
  out << verdict(y_ok) << "  max |y-character mean| " << fmt(torus.max_nontrivial_y) << " (< 0.04)\n";
  out << verdict(circle_ok) << "  max distance of x to the circle " << fmt(torus.max_circle_distance) << "\n";
  out << verdict(center_ok) << "  center translation by 1/4: " << center.off_section_after << "/" << center.samples
      << " samples leave the section\n";
  out << verdict(compact_ok) << "  H-orbit compactness not detected for " << compact.not_detected << "/"
      << compact.samples << " samples (bound 10^6)\n";
  out << verdict(vc_ok) << "  " << obstruction.summary() << "\n";
  out << "Birkhoff character means along orbits (radius, count, mean |.|, 1/sqrt(count)):\n";
  for (const auto& b : torus.birkhoff)
    out << "  " << b.radius << "  " << b.count << "  " << fmt(b.mean_abs) << "  " << fmt(b.mc_rate) << "\n";
  out << "(consistency evidence for ergodicity, not a proof)\n";
  const bool all = eq_ok && eq_halves && y_ok && circle_ok && center_ok && compact_ok && vc_ok;
  out << (all ? "all thresholds met" : "some thresholds FAILED") << "\n";
  std::cout << out.str();
  write_output(cfg, "demo.txt", out.str());

  ojson js;
  js["header"] = h;
  js["equivariance"] = {{"bits", bits}, {"max_error", eq1.max_error}, {"bits_doubled", bits2},
                        {"max_error_doubled", eq2.max_error}};
  js["y_characters"] = {{"max_abs_mean", torus.max_nontrivial_y}, {"threshold", torus.threshold}};
  js["max_circle_distance"] = torus.max_circle_distance;
  ojson birk = ojson::array();
  for (const auto& b : torus.birkhoff)
    birk.push_back({{"radius", b.radius}, {"count", b.count}, {"mean_abs", b.mean_abs}, {"mc_rate", b.mc_rate}});
  js["birkhoff"] = birk;
  js["center_translation"] = {{"t", "1/4"},
                              {"samples", center.samples},
                              {"on_section_before", center.on_section_before},
                              {"off_section_after", center.off_section_after}};
  js["compactness"] = {{"samples", compact.samples}, {"not_detected", compact.not_detected}, {"bound", 1000000}};
  js["obstruction"] = obstruction.summary();
  js["pass"] = all;
  write_output(cfg, "demo.json", js.dump(2) + "\n");
  return all ? kPass : kFailed;
}

}  // namespace nilrigid::cli
