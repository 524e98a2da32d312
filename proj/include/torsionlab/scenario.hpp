#pragma once

#include <array>
#include <cerrno>
#include <cmath>
#include <cstring>
#include <fstream>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <tuple>
#include <vector>

#include <json.hpp>

#include "torsionlab/chart_point.hpp"
#include "torsionlab/connection.hpp"

namespace torsionlab {

/// One problem found while reading a scenario. `path` is a dotted field path
/// such as "grid.theta.count", or "line 3, column 7" for syntax errors.
struct Diagnostic {
  std::string path;
  std::string message;

  std::string to_string() const { return path.empty() ? message : path + ": " + message; }
};

/// Torsion component T^k_{ij} = c0 + ca*a + cb*b with 1-based indices.
struct ComponentSpec {
  int i = 0, j = 0, k = 0;
  double c0 = 0.0, ca = 0.0, cb = 0.0;
};

struct ScenarioSpec {
  int version = 1;
  std::string manifold = "s2xt2";
  double radius = 1.0;
  std::string family;
  std::vector<ComponentSpec> components;  ///< custom family only
  bool solve = false;
  Params params;
  GridSpec grid = default_grid();
  double tolerance = 1e-9;
  std::optional<std::array<double, 4>> point;

  ChartPoint evaluation_point() const { return point ? ChartPoint(*point) : default_point(); }

  TorsionField torsion() const {
    if (family == "paper") return paper_torsion();
    if (family == "harmonic") return harmonic_torsion();
    if (family == "lc") return zero_torsion();
    TorsionField t("custom");
    for (const auto& c : components) t.set(c.i - 1, c.j - 1, c.k - 1, ParamCoeff{c.c0, c.ca, c.cb});
    return t;
  }

  /// Normalized form with every default written out; parses back to an equal spec.
  nlohmann::ordered_json to_json() const {
    nlohmann::ordered_json j;
    j["version"] = version;
    j["manifold"] = manifold;
    j["radius"] = radius;
    j["family"] = family;
    if (family == "custom") {
      j["components"] = nlohmann::ordered_json::array();
      for (const auto& c : components) {
        j["components"].push_back(
            nlohmann::ordered_json{{"i", c.i}, {"j", c.j}, {"k", c.k}, {"c0", c.c0}, {"ca", c.ca}, {"cb", c.cb}});
      }
    }
    if (solve) {
      j["parameters"] = {{"solve", true}};
    } else {
      j["parameters"] = nlohmann::ordered_json{{"a", params.a}, {"b", params.b}};
    }
    static constexpr std::array<const char*, 4> kAxes = {"theta", "phi", "x", "y"};
    nlohmann::ordered_json g;
    for (int n = 0; n < kDim; ++n) {
      const GridAxis& ax = grid.axes[n];
      g[kAxes[n]] =
          nlohmann::ordered_json{{"min", ax.min}, {"max", ax.max}, {"count", ax.count}, {"endpoint", ax.endpoint}};
    }
    j["grid"] = g;
    j["tolerance"] = tolerance;
    if (point) j["point"] = *point;
    return j;
  }
};

struct ScenarioParse {
  std::optional<ScenarioSpec> spec;
  std::vector<Diagnostic> diagnostics;

  bool ok() const { return spec.has_value() && diagnostics.empty(); }
};

namespace detail {

class ScenarioReader {
 public:
  std::vector<Diagnostic> diags;

  void error(const std::string& path, const std::string& msg) { diags.push_back({path, msg}); }

  void reject_unknown(const nlohmann::json& obj, const std::string& prefix, std::initializer_list<const char*> known) {
    for (auto it = obj.begin(); it != obj.end(); ++it) {
      bool ok = false;
      for (const char* k : known) ok = ok || it.key() == k;
      if (!ok) error(prefix + it.key(), "unknown field");
    }
  }

  std::optional<double> number(const nlohmann::json& obj, const char* key, const std::string& path) {
    const auto it = obj.find(key);
    if (it == obj.end()) return std::nullopt;
    if (!it->is_number()) {
      error(path, "must be a number");
      return std::nullopt;
    }
    const double v = it->get<double>();
    if (!std::isfinite(v)) {
      error(path, "must be finite");
      return std::nullopt;
    }
    return v;
  }

  std::optional<long long> integer(const nlohmann::json& obj, const char* key, const std::string& path) {
    const auto it = obj.find(key);
    if (it == obj.end()) return std::nullopt;
    if (!it->is_number_integer()) {
      error(path, "must be an integer");
      return std::nullopt;
    }
    return it->get<long long>();
  }

  std::optional<ComponentSpec> component(const nlohmann::json& c, const std::string& path) {
    if (!c.is_object()) {
      error(path, "must be an object");
      return std::nullopt;
    }
    reject_unknown(c, path + ".", {"i", "j", "k", "c0", "ca", "cb"});
    ComponentSpec out;
    bool good = true;
    for (auto [key, dst] : {std::pair{"i", &out.i}, std::pair{"j", &out.j}, std::pair{"k", &out.k}}) {
      const auto v = integer(c, key, path + "." + key);
      if (!v) {
        if (!c.contains(key)) error(path + "." + key, "is required");
        good = false;
        continue;
      }
      if (*v < 1 || *v > kDim) {
        error(path + "." + key, "frame index must be between 1 and 4");
        good = false;
        continue;
      }
      *dst = static_cast<int>(*v);
    }
    for (auto [key, dst] : {std::pair{"c0", &out.c0}, std::pair{"ca", &out.ca}, std::pair{"cb", &out.cb}}) {
      const std::size_t before = diags.size();
      if (const auto v = number(c, key, path + "." + key)) *dst = *v;
      good = good && diags.size() == before;
    }
    if (good && out.i == out.j) {
      error(path, "torsion component must have i ≠ j");
      good = false;
    }
    return good ? std::optional<ComponentSpec>(out) : std::nullopt;
  }

  std::optional<GridAxis> axis(const nlohmann::json& a, const std::string& path, const GridAxis& fallback,
                               bool polar) {
    if (!a.is_object()) {
      error(path, "must be an object");
      return std::nullopt;
    }
    reject_unknown(a, path + ".", {"min", "max", "count", "endpoint"});
    GridAxis out = fallback;
    const std::size_t before = diags.size();
    if (const auto v = number(a, "min", path + ".min")) out.min = *v;
    if (const auto v = number(a, "max", path + ".max")) out.max = *v;
    if (a.contains("count")) {
      const auto& c = a["count"];
      if (!c.is_number_integer() || c.get<long long>() < 1) {
        error(path + ".count", "grid.count must be a positive integer");
      } else {
        out.count = static_cast<int>(c.get<long long>());
      }
    }
    if (a.contains("endpoint")) {
      if (!a["endpoint"].is_boolean()) {
        error(path + ".endpoint", "must be a boolean");
      } else {
        out.endpoint = a["endpoint"].get<bool>();
      }
    }
    if (diags.size() != before) return std::nullopt;
    if (out.count > 1 && !(out.min < out.max)) {
      error(path, "min must be smaller than max");
      return std::nullopt;
    }
    if (polar) {
      for (double t : out.samples()) {
        if (!(t > 0.0 && t < kPi)) {
          error(path, "theta samples must lie strictly inside (0, pi)");
          return std::nullopt;
        }
      }
    }
    return out;
  }

  ScenarioSpec read(const nlohmann::json& root) {
    ScenarioSpec s;
    if (!root.is_object()) {
      error("", "scenario must be a JSON object");
      return s;
    }
    reject_unknown(root, "",
                   {"version", "manifold", "radius", "family", "components", "parameters", "grid", "tolerance", "point"});

    if (!root.contains("version")) {
      error("version", "is required");
    } else if (const auto v = integer(root, "version", "version"); v && *v != 1) {
      error("version", "unsupported version " + std::to_string(*v) + " (expected 1)");
    }

    if (root.contains("manifold")) {
      if (!root["manifold"].is_string() || root["manifold"].get<std::string>() != "s2xt2") {
        error("manifold", "only \"s2xt2\" is supported");
      }
    }
    if (const auto r = number(root, "radius", "radius")) {
      if (*r <= 0.0) {
        error("radius", "must be positive");
      } else {
        s.radius = *r;
      }
    }

    if (!root.contains("family")) {
      error("family", "is required");
    } else if (!root["family"].is_string()) {
      error("family", "must be a string");
    } else {
      s.family = root["family"].get<std::string>();
      if (s.family != "paper" && s.family != "harmonic" && s.family != "lc" && s.family != "custom") {
        error("family", "must be one of \"paper\", \"harmonic\", \"lc\", \"custom\"");
      }
    }

    if (root.contains("components")) {
      const auto& cs = root["components"];
      if (s.family != "custom") {
        error("components", "only allowed when family is \"custom\"");
      } else if (!cs.is_array()) {
        error("components", "must be an array");
      } else {
        std::set<std::tuple<int, int, int>> seen;
        for (std::size_t n = 0; n < cs.size(); ++n) {
          const std::string path = "components[" + std::to_string(n) + "]";
          const auto c = component(cs[n], path);
          if (!c) continue;
          if (seen.count({c->i, c->j, c->k}) || seen.count({c->j, c->i, c->k})) {
            error(path, "duplicate torsion component (" + std::to_string(c->i) + ", " + std::to_string(c->j) + ", " +
                            std::to_string(c->k) + ")");
            continue;
          }
          seen.insert({c->i, c->j, c->k});
          s.components.push_back(*c);
        }
      }
    } else if (s.family == "custom") {
      error("components", "is required when family is \"custom\"");
    }

    if (root.contains("parameters")) {
      const auto& p = root["parameters"];
      if (!p.is_object()) {
        error("parameters", "must be an object");
      } else {
        reject_unknown(p, "parameters.", {"solve", "a", "b"});
        if (p.contains("solve") && !p["solve"].is_boolean()) error("parameters.solve", "must be a boolean");
        s.solve = p.contains("solve") && p["solve"].is_boolean() && p["solve"].get<bool>();
        if (s.solve) {
          if (p.contains("a") || p.contains("b")) error("parameters", "give either \"solve\": true or fixed a and b");
        } else {
          const auto a = number(p, "a", "parameters.a");
          const auto b = number(p, "b", "parameters.b");
          if (!p.contains("a")) error("parameters.a", "is required unless solving");
          if (!p.contains("b")) error("parameters.b", "is required unless solving");
          if (a) s.params.a = *a;
          if (b) s.params.b = *b;
        }
      }
    }

    if (root.contains("grid")) {
      const auto& g = root["grid"];
      if (!g.is_object()) {
        error("grid", "must be an object");
      } else {
        reject_unknown(g, "grid.", {"theta", "phi", "x", "y"});
        static constexpr std::array<const char*, 4> kAxes = {"theta", "phi", "x", "y"};
        for (int n = 0; n < kDim; ++n) {
          if (!g.contains(kAxes[n])) continue;
          if (const auto ax = axis(g[kAxes[n]], std::string("grid.") + kAxes[n], s.grid.axes[n], n == 0)) {
            s.grid.axes[n] = *ax;
          }
        }
      }
    }

    if (const auto t = number(root, "tolerance", "tolerance")) {
      if (*t <= 0.0) {
        error("tolerance", "must be positive");
      } else {
        s.tolerance = *t;
      }
    }

    if (root.contains("point")) {
      const auto& pt = root["point"];
      if (!pt.is_array() || pt.size() != 4 ||
          !std::all_of(pt.begin(), pt.end(), [](const auto& v) { return v.is_number(); })) {
        error("point", "must be an array of four numbers [theta, phi, x, y]");
      } else {
        std::array<double, 4> xs{};
        for (int n = 0; n < kDim; ++n) xs[n] = pt[n].get<double>();
        try {
          ChartPoint check(xs);
          s.point = xs;
        } catch (const std::invalid_argument& e) {
          error("point", e.what());
        }
      }
    }
    return s;
  }
};

inline std::pair<int, int> line_column(const std::string& text, std::size_t byte) {
  int line = 1, col = 1;
  for (std::size_t n = 0; n < byte && n < text.size(); ++n) {
    if (text[n] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return {line, col};
}

}  // namespace detail

inline ScenarioParse parse_scenario(const std::string& text) {
  ScenarioParse out;
  nlohmann::json root;
  try {
    root = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    const auto [line, col] = detail::line_column(text, e.byte == 0 ? 0 : e.byte - 1);
    std::string msg = e.what();
    if (const auto pos = msg.find("syntax error"); pos != std::string::npos) msg = msg.substr(pos);
    out.diagnostics.push_back({"line " + std::to_string(line) + ", column " + std::to_string(col), msg});
    return out;
  }
  detail::ScenarioReader reader;
  ScenarioSpec spec = reader.read(root);
  out.diagnostics = std::move(reader.diags);
  if (out.diagnostics.empty()) out.spec = std::move(spec);
  return out;
}

inline ScenarioParse load_scenario(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    ScenarioParse out;
    out.diagnostics.push_back({path, std::string("cannot read file: ") + std::strerror(errno)});
    return out;
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_scenario(buf.str());
}

/// Empty iff the file would pass validation for `run`.
inline std::vector<Diagnostic> validate_scenario(const std::string& path) { return load_scenario(path).diagnostics; }

}  // namespace torsionlab
