// Command-line front end: run, validate, families.

#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "torsionlab.hpp"

namespace {

using namespace torsionlab;

constexpr int kExitValidation = 2;

std::optional<std::array<double, 4>> parse_point(const std::string& text, std::string& error) {
  std::vector<std::string> items;
  std::stringstream ss(text);
  for (std::string item; std::getline(ss, item, ',');) items.push_back(item);
  if (items.size() != 4) {
    error = "--point expects four comma-separated values theta,phi,x,y";
    return std::nullopt;
  }
  std::array<double, 4> xs{};
  for (int n = 0; n < 4; ++n) {
    try {
      std::size_t used = 0;
      xs[n] = std::stod(items[n], &used);
      if (used != items[n].size()) throw std::invalid_argument(items[n]);
    } catch (const std::exception&) {
      error = "--point: '" + items[n] + "' is not a number";
      return std::nullopt;
    }
  }
  try {
    ChartPoint check(xs);
  } catch (const std::invalid_argument& e) {
    error = std::string("--point: ") + e.what();
    return std::nullopt;
  }
  return xs;
}

void print_diagnostics(const std::vector<Diagnostic>& diags) {
  for (const auto& d : diags) std::cerr << "error: " << d.to_string() << "\n";
}

int cmd_run(const std::string& scenario_path, std::string out_path, const std::string& point_text,
            std::optional<double> tol) {
  ScenarioParse parsed = load_scenario(scenario_path);
  if (!parsed.ok()) {
    print_diagnostics(parsed.diagnostics);
    return kExitValidation;
  }
  ScenarioSpec spec = *parsed.spec;
  if (!point_text.empty()) {
    std::string error;
    const auto pt = parse_point(point_text, error);
    if (!pt) {
      std::cerr << "error: " << error << "\n";
      return kExitValidation;
    }
    spec.point = pt;
  }
  if (tol) {
    if (!(*tol > 0.0) || !std::isfinite(*tol)) {
      std::cerr << "error: --tol must be a positive finite number\n";
      return kExitValidation;
    }
    spec.tolerance = *tol;
  }
  if (out_path.empty()) out_path = std::filesystem::path(scenario_path).stem().string() + ".report.json";

  const auto start = std::chrono::steady_clock::now();
  const RunResult result = run_scenario(spec);
  const double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();

  std::ofstream out(out_path, std::ios::binary);
  if (!out) {
    std::cerr << "error: cannot write " << out_path << "\n";
    return kExitValidation;
  }
  out << to_json_text(result.report);
  out.close();

  std::cout << result.table;
  std::cout << "report written to " << out_path << "\n";
  std::cout << "elapsed " << std::fixed << std::setprecision(1) << ms << " ms\n";
  for (const auto& c : result.checks) {
    if (!c.passed) std::cerr << "internal check failed: " << c.name << " (" << c.value << " >= " << c.limit << ")\n";
  }
  return result.exit_code();
}

int cmd_validate(const std::string& scenario_path) {
  const auto diags = validate_scenario(scenario_path);
  if (diags.empty()) {
    std::cout << scenario_path << ": ok\n";
    return 0;
  }
  print_diagnostics(diags);
  return kExitValidation;
}

std::string coeff_text(const ParamCoeff& c) {
  ParamPoly p;
  p.c[ParamPoly::kOne] = c.c0;
  p.c[ParamPoly::kA] = c.ca;
  p.c[ParamPoly::kB] = c.cb;
  return p.to_string();
}

int cmd_families() {
  for (const TorsionField& t : {paper_torsion(), harmonic_torsion(), zero_torsion()}) {
    std::cout << t.label() << "\n";
    bool any = false;
    for (int i = 0; i < kDim; ++i)
      for (int j = i + 1; j < kDim; ++j) {
        std::string line;
        for (int k = 0; k < kDim; ++k) {
          const ParamCoeff& c = t(k, i, j);
          if (c.is_zero()) continue;
          if (!line.empty()) line += " + ";
          line += "(" + coeff_text(c) + ") e" + std::to_string(k + 1);
        }
        if (line.empty()) continue;
        any = true;
        std::cout << "  T(e" << i + 1 << ", e" << j + 1 << ") = " << line << "\n";
      }
    if (!any) std::cout << "  T = 0\n";
  }
  std::cout << "custom\n  components given in the scenario file\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Curvature and Einstein-condition reports for torsion families on S^2 x T^2"};
  app.require_subcommand(1);

  std::string scenario, out, point;
  std::optional<double> tol;
  auto* run = app.add_subcommand("run", "run the full pipeline on a scenario");
  run->add_option("--scenario", scenario, "scenario file")->required();
  run->add_option("--out", out, "report path (default <scenario>.report.json)");
  run->add_option("--point", point, "evaluation point theta,phi,x,y");
  run->add_option("--tol", tol, "tolerance override");

  std::string vscenario;
  auto* validate = app.add_subcommand("validate", "check a scenario file");
  validate->add_option("--scenario", vscenario, "scenario file")->required();

  auto* families = app.add_subcommand("families", "list built-in torsion families");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitValidation;
  }

  try {
    if (*run) return cmd_run(scenario, out, point, tol);
    if (*validate) return cmd_validate(vscenario);
    if (*families) return cmd_families();
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
  return 0;
}
