#include "bgl/config.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

#include "bgl/error.hpp"

namespace bgl {
namespace {

struct Entry {
  std::string value;
  int line = 0;
};

using Section = std::map<std::string, Entry>;

const std::map<std::string, std::vector<std::string>>& known_keys() {
  static const std::map<std::string, std::vector<std::string>> k{
      {"run", {"model", "nu", "cfl", "dt_max", "horizon", "output_interval", "out_dir", "seed"}},
      {"grid", {"n1", "n2"}},
      {"scenario", {"name", "amplitude", "alpha", "modulation", "perturbation"}},
      {"diagnostics", {"s_list", "p_list"}},
      {"checkpoints", {"times"}},
  };
  return k;
}

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

double to_double(const std::string& v, int line, const std::string& key) {
  if (v == "inf") return kInf;
  double x = 0.0;
  const auto r = std::from_chars(v.data(), v.data() + v.size(), x);
  if (r.ec != std::errc() || r.ptr != v.data() + v.size()) {
    throw ConfigError(fmt::format("line {}: {} expects a number, got '{}'", line, key, v));
  }
  return x;
}

template <class Int>
Int to_int(const std::string& v, int line, const std::string& key) {
  Int x = 0;
  const auto r = std::from_chars(v.data(), v.data() + v.size(), x);
  if (r.ec != std::errc() || r.ptr != v.data() + v.size()) {
    throw ConfigError(fmt::format("line {}: {} expects an integer, got '{}'", line, key, v));
  }
  return x;
}

std::vector<double> to_list(const std::string& v, int line, const std::string& key) {
  std::vector<double> out;
  if (v.empty()) return out;
  std::stringstream ss(v);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(to_double(trim(item), line, key));
  return out;
}

std::string num(double x) {
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  return fmt::format("{}", x);
}

std::string list(const std::vector<double>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + num(v[i]);
  return s;
}

}  // namespace

RunConfig parse_config(std::string_view text) {
  std::map<std::string, Section> sections;
  std::string current = "run";
  int line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto nl = text.find('\n', pos);
    const auto raw = text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
    pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
    ++line_no;
    std::string line = trim(raw);
    if (const auto h = line.find('#'); h != std::string::npos) line = trim(line.substr(0, h));
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']') throw ConfigError(fmt::format("line {}: unterminated section header", line_no));
      current = trim(line.substr(1, line.size() - 2));
      if (!known_keys().count(current)) {
        throw ConfigError(fmt::format("line {}: unknown section [{}]", line_no, current));
      }
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw ConfigError(fmt::format("line {}: expected key = value", line_no));
    const std::string key = trim(line.substr(0, eq));
    const auto& allowed = known_keys().at(current);
    if (std::find(allowed.begin(), allowed.end(), key) == allowed.end()) {
      throw ConfigError(fmt::format("line {}: unknown key '{}' in [{}]", line_no, key, current));
    }
    auto& sec = sections[current];
    if (sec.count(key)) throw ConfigError(fmt::format("line {}: duplicate key '{}'", line_no, key));
    sec[key] = {trim(line.substr(eq + 1)), line_no};
  }

  auto get = [&](const std::string& sec, const std::string& key) -> const Entry* {
    const auto s = sections.find(sec);
    if (s == sections.end()) return nullptr;
    const auto k = s->second.find(key);
    return k == s->second.end() ? nullptr : &k->second;
  };

  RunConfig c;
  if (const auto* e = get("scenario", "name")) {
    c.scenario.name = e->value;
    try {
      scenario_model(e->value);
    } catch (const ConfigError&) {
      throw ConfigError(fmt::format("line {}: unknown scenario '{}'", e->line, e->value));
    }
  }
  // scenario-dependent defaults
  const Model m = scenario_model(c.scenario.name);
  c.model = model_tag(m);
  std::tie(c.n1, c.n2) = scenario_default_grid(c.scenario.name);
  c.nu = m == Model::torus_viscous ? 0.01 : 0.0;

  auto dbl = [&](const char* sec, const char* key, double& dst) {
    if (const auto* e = get(sec, key)) dst = to_double(e->value, e->line, key);
  };
  if (const auto* e = get("run", "model")) c.model = e->value;
  dbl("run", "nu", c.nu);
  dbl("run", "cfl", c.cfl);
  dbl("run", "dt_max", c.dt_max);
  dbl("run", "horizon", c.horizon);
  dbl("run", "output_interval", c.output_interval);
  if (const auto* e = get("run", "out_dir")) c.out_dir = e->value;
  if (const auto* e = get("run", "seed")) c.seed = to_int<std::uint64_t>(e->value, e->line, "seed");
  if (const auto* e = get("grid", "n1")) c.n1 = to_int<int>(e->value, e->line, "n1");
  if (const auto* e = get("grid", "n2")) c.n2 = to_int<int>(e->value, e->line, "n2");
  dbl("scenario", "amplitude", c.scenario.amplitude);
  dbl("scenario", "alpha", c.scenario.alpha);
  dbl("scenario", "modulation", c.scenario.modulation);
  dbl("scenario", "perturbation", c.scenario.perturbation);
  if (const auto* e = get("diagnostics", "s_list")) c.diagnostics.s_list = to_list(e->value, e->line, "s_list");
  if (const auto* e = get("diagnostics", "p_list")) c.diagnostics.p_list = to_list(e->value, e->line, "p_list");
  if (const auto* e = get("checkpoints", "times")) c.checkpoint_times = to_list(e->value, e->line, "times");
  c.scenario.seed = c.seed;
  validate_config(c);
  return c;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError(fmt::format("cannot read config '{}'", path));
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

void validate_config(const RunConfig& c) {
  auto fail = [](const std::string& msg) { throw ConfigError(msg); };
  const Model m = scenario_model(c.scenario.name);
  Model tagged{};
  try {
    tagged = model_from_tag(c.model);
  } catch (const InputError&) {
    fail(fmt::format("model must be one of torus-viscous, torus-inviscid, strip-inviscid, axisym-euler (got '{}')", c.model));
  }
  if (tagged != m) {
    fail(fmt::format("model '{}' is incompatible with scenario '{}' (expects '{}')", c.model,
                     c.scenario.name, model_tag(m)));
  }
  if (!(c.nu >= 0.0) || !std::isfinite(c.nu)) fail("nu must be ≥ 0");
  if (m == Model::torus_viscous && !(c.nu > 0.0)) fail("nu must be > 0 for torus-viscous");
  if (m != Model::torus_viscous && c.nu != 0.0) fail(fmt::format("nu must be 0 for {}", c.model));
  if (!(c.cfl > 0.0 && c.cfl <= 1.0)) fail("cfl must be in (0, 1]");
  if (!(c.dt_max > 0.0) || !std::isfinite(c.dt_max)) fail("dt_max must be > 0");
  if (!(c.horizon >= 0.0) || !std::isfinite(c.horizon)) fail("horizon must be ≥ 0");
  if (!(c.output_interval > 0.0) || !std::isfinite(c.output_interval)) fail("output_interval must be > 0");
  if (c.out_dir.empty()) fail("out_dir must not be empty");
  try {
    scenario_grid(c.scenario.name, c.n1, c.n2);
  } catch (const ConfigError& e) {
    fail(fmt::format("n1, n2: {}", e.what()));
  }
  if (!(c.scenario.amplitude > 0.0) || !std::isfinite(c.scenario.amplitude)) fail("amplitude must be > 0");
  if (!std::isfinite(c.scenario.alpha)) fail("alpha must be finite");
  if (!std::isfinite(c.scenario.modulation)) fail("modulation must be finite");
  if (!(c.scenario.perturbation >= 0.0) || !std::isfinite(c.scenario.perturbation)) fail("perturbation must be ≥ 0");
  if (c.scenario.seed != c.seed) fail("scenario seed must equal the run seed");
  for (double s : c.diagnostics.s_list) {
    if (!(s > 0.0) || !std::isfinite(s)) fail("s_list entries must be finite and > 0");
  }
  for (double p : c.diagnostics.p_list) {
    if (!(p >= 1.0)) fail("p_list entries must be ≥ 1");
  }
  for (double t : c.checkpoint_times) {
    if (!(t >= 0.0 && t <= c.horizon)) fail("checkpoint times must lie in [0, horizon]");
  }
}

std::string serialize_config(const RunConfig& c) {
  std::string s;
  s += "[run]\n";
  s += fmt::format("model = {}\n", c.model);
  s += fmt::format("nu = {}\n", num(c.nu));
  s += fmt::format("cfl = {}\n", num(c.cfl));
  s += fmt::format("dt_max = {}\n", num(c.dt_max));
  s += fmt::format("horizon = {}\n", num(c.horizon));
  s += fmt::format("output_interval = {}\n", num(c.output_interval));
  s += fmt::format("out_dir = {}\n", c.out_dir);
  s += fmt::format("seed = {}\n", c.seed);
  s += "\n[grid]\n";
  s += fmt::format("n1 = {}\nn2 = {}\n", c.n1, c.n2);
  s += "\n[scenario]\n";
  s += fmt::format("name = {}\n", c.scenario.name);
  s += fmt::format("amplitude = {}\n", num(c.scenario.amplitude));
  s += fmt::format("alpha = {}\n", num(c.scenario.alpha));
  s += fmt::format("modulation = {}\n", num(c.scenario.modulation));
  s += fmt::format("perturbation = {}\n", num(c.scenario.perturbation));
  s += "\n[diagnostics]\n";
  s += fmt::format("s_list = {}\n", list(c.diagnostics.s_list));
  s += fmt::format("p_list = {}\n", list(c.diagnostics.p_list));
  s += "\n[checkpoints]\n";
  s += fmt::format("times = {}\n", list(c.checkpoint_times));
  return s;
}

}  // namespace bgl
