#include "weingarten/scenario.hpp"

#include "weingarten/errors.hpp"

#include <cctype>
#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <numbers>
#include <set>
#include <sstream>

namespace weingarten {

namespace {

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

struct Location {
  const std::string& source;
  int line;

  [[noreturn]] void fail(const std::string& message) const {
    std::ostringstream msg;
    msg << source << ":" << line << ": " << message;
    throw ValidationError(msg.str());
  }
};

double parse_real(const std::string& text, const Location& at) {
  std::size_t used = 0;
  double value = 0.0;
  try {
    value = std::stod(text, &used);
  } catch (const std::exception&) {
    at.fail("expected a number, got '" + text + "'");
  }
  if (used != text.size()) at.fail("expected a number, got '" + text + "'");
  if (!std::isfinite(value)) at.fail("value must be finite");
  return value;
}

long parse_integer(const std::string& text, const Location& at) {
  std::size_t used = 0;
  long value = 0;
  try {
    value = std::stol(text, &used);
  } catch (const std::exception&) {
    at.fail("expected an integer, got '" + text + "'");
  }
  if (used != text.size()) at.fail("expected an integer, got '" + text + "'");
  return value;
}

std::size_t parse_count(const std::string& text, const Location& at) {
  const long value = parse_integer(text, at);
  if (value < 0) at.fail("expected a non-negative integer");
  return static_cast<std::size_t>(value);
}

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream in(text);
  while (std::getline(in, item, ',')) {
    std::istringstream words(item);
    std::string word;
    while (words >> word) out.push_back(word);
  }
  return out;
}

std::vector<double> parse_reals(const std::string& text, const Location& at) {
  std::vector<double> out;
  for (const auto& item : split_list(text)) out.push_back(parse_real(item, at));
  if (out.empty()) at.fail("expected at least one number");
  return out;
}

using Setter = std::function<void(ScenarioConfig&, const std::string&, const Location&)>;

const std::map<std::string, std::map<std::string, Setter>>& schema() {
  static const std::map<std::string, std::map<std::string, Setter>> table = {
      {"ambient",
       {
           {"family", [](ScenarioConfig& c, const std::string& v, const Location&) {
              c.ambient_family = v;
            }},
           {"dimension", [](ScenarioConfig& c, const std::string& v, const Location& at) {
              c.dimension = static_cast<int>(parse_integer(v, at));
            }},
           {"r_lo", [](ScenarioConfig& c, const std::string& v, const Location& at) {
              c.r_lo = parse_real(v, at);
            }},
           {"r_hi", [](ScenarioConfig& c, const std::string& v, const Location& at) {
              c.r_hi = parse_real(v, at);
            }},
           {"theta_coefficients", [](ScenarioConfig& c, const std::string& v, const Location& at) {
              c.theta_coefficients = parse_reals(v, at);
            }},
           {"chi_coefficients", [](ScenarioConfig& c, const std::string& v, const Location& at) {
              c.chi_coefficients = parse_reals(v, at);
            }},
           {"chi_c0", [](ScenarioConfig& c, const std::string& v, const Location& at) {
              c.chi_c0 = parse_real(v, at);
            }},
       }},
      {"graph",
       {
           {"mode", [](ScenarioConfig& c, const std::string& v, const Location& at) {
              if (v == "umbilic") c.mode = GraphMode::umbilic;
              else if (v == "curve") c.mode = GraphMode::curve;
              else if (v == "axisymmetric") c.mode = GraphMode::axisymmetric;
              else at.fail("mode must be umbilic, curve or axisymmetric");
            }},
           {"intervals", [](ScenarioConfig& c, const std::string& v, const Location& at) {
              c.intervals = parse_count(v, at);
            }},
       }},
      {"function",
       {
           {"name", [](ScenarioConfig& c, const std::string& v, const Location&) { c.function = v; }},
           {"k", [](ScenarioConfig& c, const std::string& v, const Location& at) {
              c.k = static_cast<int>(parse_integer(v, at));
            }},
       }},
      {"prescribed",
       {
           {"coefficients", [](ScenarioConfig& c, const std::string& v, const Location& at) {
              c.f_coefficients = parse_reals(v, at);
            }},
       }},
      {"initial",
       {
           {"radius", [](ScenarioConfig& c, const std::string& v, const Location& at) {
              c.initial_radius = parse_real(v, at);
            }},
           {"fourier", [](ScenarioConfig& c, const std::string& v, const Location& at) {
              c.fourier.clear();
              std::string packed = v;
              for (auto at_colon = packed.find(':'); at_colon != std::string::npos;
                   at_colon = packed.find(':', at_colon + 1)) {
                while (at_colon > 0 && std::isspace(static_cast<unsigned char>(packed[at_colon - 1])))
                  packed.erase(--at_colon, 1);
                while (at_colon + 1 < packed.size() && std::isspace(static_cast<unsigned char>(packed[at_colon + 1])))
                  packed.erase(at_colon + 1, 1);
              }
              for (const auto& item : split_list(packed)) {
                const auto colon = item.find(':');
                if (colon == std::string::npos) at.fail("fourier modes are written frequency:amplitude");
                const long k = parse_integer(item.substr(0, colon), at);
                if (k < 0) at.fail("fourier frequencies must be non-negative");
                c.fourier.emplace_back(static_cast<int>(k), parse_real(item.substr(colon + 1), at));
              }
            }},
       }},
      {"flow",
       {
           {"orientation", [](ScenarioConfig& c, const std::string& v, const Location& at) {
              if (v == "expanding") c.orientation = Orientation::expanding;
              else if (v == "contracting") c.orientation = Orientation::contracting;
              else at.fail("orientation must be expanding or contracting");
            }},
           {"lambda", [](ScenarioConfig& c, const std::string& v, const Location& at) {
              c.lambda = parse_real(v, at);
            }},
           {"theta", [](ScenarioConfig& c, const std::string& v, const Location& at) {
              if (v == "auto") c.theta.reset();
              else c.theta = parse_real(v, at);
            }},
           {"dt_safety", [](ScenarioConfig& c, const std::string& v, const Location& at) {
              c.dt_safety = parse_real(v, at);
            }},
           {"tol_residual", [](ScenarioConfig& c, const std::string& v, const Location& at) {
              c.tol_residual = parse_real(v, at);
            }},
           {"tol_velocity", [](ScenarioConfig& c, const std::string& v, const Location& at) {
              c.tol_velocity = parse_real(v, at);
            }},
           {"t_max", [](ScenarioConfig& c, const std::string& v, const Location& at) {
              c.t_max = parse_real(v, at);
            }},
           {"max_steps", [](ScenarioConfig& c, const std::string& v, const Location& at) {
              c.max_steps = parse_count(v, at);
            }},
           {"barrier_lower", [](ScenarioConfig& c, const std::string& v, const Location& at) {
              c.barrier_lower = parse_real(v, at);
            }},
           {"barrier_upper", [](ScenarioConfig& c, const std::string& v, const Location& at) {
              c.barrier_upper = parse_real(v, at);
            }},
       }},
      {"output",
       {
           {"cadence", [](ScenarioConfig& c, const std::string& v, const Location& at) {
              c.cadence = parse_count(v, at);
            }},
       }},
  };
  return table;
}

const std::set<std::string>& required_keys() {
  static const std::set<std::string> keys = {
      "ambient.family", "ambient.dimension", "ambient.r_lo",        "ambient.r_hi",
      "graph.mode",     "function.name",     "prescribed.coefficients", "initial.radius"};
  return keys;
}

/// Polynomial sum c_k r^k with its first two derivatives.
RadialProfile polynomial_profile(std::vector<double> c) {
  auto eval = [](const std::vector<double>& coeffs, int order, double r) {
    double acc = 0.0;
    for (std::size_t k = coeffs.size(); k-- > static_cast<std::size_t>(order);) {
      double factor = 1.0;
      for (int m = 0; m < order; ++m) factor *= double(k - static_cast<std::size_t>(m));
      acc = acc * r + factor * coeffs[k];
    }
    return acc;
  };
  return {[c, eval](double r) { return eval(c, 0, r); },
          [c, eval](double r) { return eval(c, 1, r); },
          [c, eval](double r) { return eval(c, 2, r); }};
}

WarpedProductSpace build_space(const ScenarioConfig& c) {
  if (c.ambient_family == "custom") {
    if (c.theta_coefficients.empty() || c.chi_coefficients.empty())
      throw ValidationError("custom ambient needs theta_coefficients and chi_coefficients");
    return WarpedProductSpace::custom(c.dimension, c.r_lo, c.r_hi,
                                      polynomial_profile(c.theta_coefficients),
                                      {polynomial_profile(c.chi_coefficients), c.chi_c0});
  }
  if (!c.theta_coefficients.empty() || !c.chi_coefficients.empty() || c.chi_c0 != 0.0)
    throw ValidationError("theta/chi coefficients are only accepted for the custom family");
  return WarpedProductSpace::named(c.ambient_family, c.dimension, c.r_lo, c.r_hi);
}

}  // namespace

ScenarioConfig parse_scenario(std::istream& in, const std::string& source) {
  ScenarioConfig config;
  std::string section;
  std::set<std::string> seen;
  std::string raw;
  int line_number = 0;
  while (std::getline(in, raw)) {
    ++line_number;
    const Location at{source, line_number};
    const auto hash = raw.find('#');
    const std::string line = trim(hash == std::string::npos ? raw : raw.substr(0, hash));
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']') at.fail("malformed section header");
      section = trim(line.substr(1, line.size() - 2));
      if (!schema().contains(section)) at.fail("unknown section [" + section + "]");
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos) at.fail("expected 'key = value'");
    if (section.empty()) at.fail("key outside of any section");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    const auto& keys = schema().at(section);
    const auto setter = keys.find(key);
    if (setter == keys.end()) at.fail("unknown key '" + key + "' in [" + section + "]");
    const std::string full = section + "." + key;
    if (!seen.insert(full).second) at.fail("duplicate key '" + full + "'");
    if (value.empty()) at.fail("missing value for '" + full + "'");
    setter->second(config, value, at);
  }
  for (const auto& key : required_keys()) {
    if (!seen.contains(key)) throw ValidationError(source + ": missing required key '" + key + "'");
  }
  return config;
}

ScenarioConfig load_scenario(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot read scenario file " + path.string());
  return parse_scenario(in, path.string());
}

std::vector<double> fourier_profile(GraphMode mode, std::size_t intervals, double base,
                                    const std::vector<std::pair<int, double>>& modes) {
  std::size_t count = 1;
  double spacing = 0.0;
  if (mode == GraphMode::curve) {
    count = intervals;
    spacing = 2.0 * std::numbers::pi / double(intervals);
  } else if (mode == GraphMode::axisymmetric) {
    count = intervals + 1;
    spacing = std::numbers::pi / double(intervals);
  }
  std::vector<double> u(count, base);
  if (mode == GraphMode::umbilic) return u;
  for (std::size_t j = 0; j < count; ++j) {
    const double x = spacing * double(j);
    for (const auto& [k, a] : modes) u[j] += a * std::cos(k * x);
  }
  return u;
}

Scenario build_scenario(const ScenarioConfig& c) {
  try {
    auto space = build_space(c);

    if (c.mode == GraphMode::curve && c.dimension != 1)
      throw ValidationError("curve mode requires ambient dimension = 1");
    if (c.mode == GraphMode::axisymmetric && c.dimension != 2)
      throw ValidationError("axisymmetric mode requires ambient dimension = 2");
    if (c.mode == GraphMode::curve && c.intervals < 3)
      throw ValidationError("curve mode needs graph.intervals >= 3");
    if (c.mode == GraphMode::axisymmetric && c.intervals < 2)
      throw ValidationError("axisymmetric mode needs graph.intervals >= 2");
    if (c.mode == GraphMode::umbilic && !c.fourier.empty())
      throw ValidationError("umbilic initial data cannot carry fourier modes");

    FlowConfig flow;
    flow.F = CurvatureFunctionSpec::from_name(c.function, c.dimension, c.k);
    flow.f = PrescribedFunction(c.f_coefficients);
    flow.orientation = c.orientation;
    flow.lambda = c.lambda;
    flow.theta = c.theta;
    flow.dt_safety = c.dt_safety;
    flow.tol_residual = c.tol_residual;
    flow.tol_velocity = c.tol_velocity;
    flow.t_max = c.t_max;
    flow.max_steps = c.max_steps;
    flow.cadence = c.cadence;

    const auto u0 = fourier_profile(c.mode, c.intervals, c.initial_radius, c.fourier);
    GraphHypersurface initial = c.mode == GraphMode::umbilic
                                    ? GraphHypersurface::umbilic(c.initial_radius, c.dimension)
                                : c.mode == GraphMode::curve ? GraphHypersurface::curve(u0)
                                                             : GraphHypersurface::axisymmetric(u0);
    for (std::size_t j = 0; j < u0.size(); ++j) {
      if (!space.contains(u0[j])) {
        std::ostringstream msg;
        msg << "initial radius " << u0[j] << " at node " << j << " outside the ambient domain ["
            << space.r_lo() << ", " << space.r_hi() << "]";
        throw ValidationError(msg.str());
      }
    }
    if (c.barrier_lower || c.barrier_upper) {
      Barriers barriers;
      barriers.lower.assign(u0.size(), c.barrier_lower.value_or(space.r_lo()));
      barriers.upper.assign(u0.size(), c.barrier_upper.value_or(space.r_hi()));
      flow.barriers = std::move(barriers);
    }
    return Scenario{std::move(space), std::move(flow), std::move(initial)};
  } catch (const ValidationError&) {
    throw;
  } catch (const Error& e) {
    throw ValidationError(e.what());
  }
}

}  // namespace weingarten
