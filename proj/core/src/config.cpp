#include "pendsim/config.hpp"

#include <charconv>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "pendsim/errors.hpp"

namespace pendsim::io {

namespace {

std::string trim(const std::string& s) {
  const auto begin = s.find_first_not_of(" \t\r");
  if (begin == std::string::npos) return "";
  const auto end = s.find_last_not_of(" \t\r");
  return s.substr(begin, end - begin + 1);
}

double parse_double(const std::string& value, int line) {
  double v = 0.0;
  const auto result = std::from_chars(value.data(), value.data() + value.size(), v);
  if (result.ec != std::errc{} || result.ptr != value.data() + value.size()) {
    throw ParseError(line, "expected a number, got '" + value + "'");
  }
  return v;
}

std::uint64_t parse_u64(const std::string& value, int line) {
  std::uint64_t v = 0;
  const auto result = std::from_chars(value.data(), value.data() + value.size(), v);
  if (result.ec != std::errc{} || result.ptr != value.data() + value.size()) {
    throw ParseError(line, "expected an unsigned integer, got '" + value + "'");
  }
  return v;
}

bool parse_bool(const std::string& value, int line) {
  if (value == "true" || value == "on" || value == "1") return true;
  if (value == "false" || value == "off" || value == "0") return false;
  throw ParseError(line, "expected a boolean, got '" + value + "'");
}

std::vector<double> parse_vector(const std::string& value, int line) {
  std::vector<double> out;
  std::istringstream iss(value);
  std::string token;
  while (iss >> token) out.push_back(parse_double(token, line));
  if (out.empty()) throw ParseError(line, "expected numbers");
  return out;
}

Eigen::VectorXd to_eigen(const std::vector<double>& v) {
  Eigen::VectorXd out(static_cast<Eigen::Index>(v.size()));
  for (std::size_t i = 0; i < v.size(); ++i) {
    out(static_cast<Eigen::Index>(i)) = v[i];
  }
  return out;
}

Eigen::MatrixXd diagonal(const std::vector<double>& v, std::size_t n, int line) {
  if (v.size() != n) {
    throw ParseError(line, "expected " + std::to_string(n) + " diagonal entries");
  }
  return to_eigen(v).asDiagonal();
}

}  // namespace

sim::ScenarioConfig parse_scenario(std::istream& in) {
  sim::ScenarioConfig config;  // defaults: nominal case A
  bool q0_set = false;
  bool dq0_set = false;

  using Handler = std::function<void(const std::string&, int)>;
  std::map<std::string, Handler> handlers;

  handlers["model"] = [&](const std::string& v, int line) {
    if (v == "full") {
      config.kind = sim::ModelKind::Full;
    } else if (v == "planar") {
      config.kind = sim::ModelKind::Planar;
    } else {
      throw ParseError(line, "model must be 'full' or 'planar'");
    }
  };
  handlers["seed"] = [&](const std::string& v, int line) {
    config.seed = parse_u64(v, line);
  };
  handlers["duration"] = [&](const std::string& v, int line) {
    config.duration = parse_double(v, line);
  };
  handlers["dt"] = [&](const std::string& v, int line) {
    config.dt = parse_double(v, line);
  };
  handlers["q0"] = [&](const std::string& v, int line) {
    config.q0 = to_eigen(parse_vector(v, line));
    q0_set = true;
  };
  handlers["dq0"] = [&](const std::string& v, int line) {
    config.dq0 = to_eigen(parse_vector(v, line));
    dq0_set = true;
  };

  const auto bind_params = [&](const std::string& prefix, model::ModelParams* p) {
    handlers[prefix + ".m_p"] = [p](const std::string& v, int line) { p->m_p = parse_double(v, line); };
    handlers[prefix + ".m_l"] = [p](const std::string& v, int line) { p->m_l = parse_double(v, line); };
    handlers[prefix + ".I_xx"] = [p](const std::string& v, int line) { p->I_xx = parse_double(v, line); };
    handlers[prefix + ".I_yy"] = [p](const std::string& v, int line) { p->I_yy = parse_double(v, line); };
    handlers[prefix + ".I_zz"] = [p](const std::string& v, int line) { p->I_zz = parse_double(v, line); };
    handlers[prefix + ".l1"] = [p](const std::string& v, int line) { p->l1 = parse_double(v, line); };
    handlers[prefix + ".l2"] = [p](const std::string& v, int line) { p->l2 = parse_double(v, line); };
    handlers[prefix + ".m_c1"] = [p](const std::string& v, int line) { p->m_c1 = parse_double(v, line); };
    handlers[prefix + ".m_c2"] = [p](const std::string& v, int line) { p->m_c2 = parse_double(v, line); };
    handlers[prefix + ".g0"] = [p](const std::string& v, int line) { p->g0 = parse_double(v, line); };
  };
  bind_params("plant", &config.plant);
  bind_params("controller.model", &config.controller.nominal);

  handlers["controller.mode"] = [&](const std::string& v, int line) {
    if (v == "standard") {
      config.controller.mode = control::Mode::Standard;
    } else if (v == "coupled") {
      config.controller.mode = control::Mode::Coupled;
    } else {
      throw ParseError(line, "controller.mode must be 'standard' or 'coupled'");
    }
  };
  handlers["controller.K_py"] = [&](const std::string& v, int line) {
    config.controller.K_py = diagonal(parse_vector(v, line), 3, line);
  };
  handlers["controller.K_dy"] = [&](const std::string& v, int line) {
    config.controller.K_dy = diagonal(parse_vector(v, line), 3, line);
  };
  handlers["controller.K_pc"] = [&](const std::string& v, int line) {
    config.controller.K_pc = diagonal(parse_vector(v, line), 2, line);
  };
  handlers["controller.K_dc"] = [&](const std::string& v, int line) {
    config.controller.K_dc = diagonal(parse_vector(v, line), 2, line);
  };
  const auto bind_ref = [&](const std::string& key, auto* field, std::size_t n) {
    handlers[key] = [field, n](const std::string& v, int line) {
      const auto values = parse_vector(v, line);
      if (values.size() != n) {
        throw ParseError(line, "expected " + std::to_string(n) + " entries");
      }
      *field = to_eigen(values);
    };
  };
  bind_ref("controller.y_ref", &config.controller.y_ref, 3);
  bind_ref("controller.dy_ref", &config.controller.dy_ref, 3);
  bind_ref("controller.qc_ref", &config.controller.qc_ref, 2);
  bind_ref("controller.dqc_ref", &config.controller.dqc_ref, 2);

  const auto wind = [&]() -> sim::DisturbanceProfile& {
    if (!config.wind) config.wind.emplace();
    return *config.wind;
  };
  handlers["wind.t_on"] = [&, wind](const std::string& v, int line) {
    wind().t_on = parse_double(v, line);
  };
  handlers["wind.t_off"] = [&, wind](const std::string& v, int line) {
    wind().t_off = parse_double(v, line);
  };
  handlers["wind.force"] = [&, wind](const std::string& v, int line) {
    const auto values = parse_vector(v, line);
    if (values.size() != 2) throw ParseError(line, "wind.force needs 2 entries");
    wind().force = Vector2d(values[0], values[1]);
  };

  const auto noise = [&]() -> sim::NoiseConfig& {
    if (!config.noise) config.noise.emplace();
    return *config.noise;
  };
  handlers["noise.accel_std"] = [&, noise](const std::string& v, int line) {
    noise().accel_std = parse_double(v, line);
  };
  handlers["noise.relative_strength"] = [&, noise](const std::string& v, int line) {
    noise().relative_strength = parse_double(v, line);
  };
  handlers["noise.velocity_estimation"] = [&, noise](const std::string& v, int line) {
    noise().velocity_estimation = parse_bool(v, line);
  };
  handlers["noise.alpha"] = [&, noise](const std::string& v, int line) {
    noise().alpha = parse_double(v, line);
  };

  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;

    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ParseError(lineno, "expected 'key = value'");
    }
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty()) throw ParseError(lineno, "missing key");
    if (value.empty()) throw ParseError(lineno, "missing value for '" + key + "'");

    const auto it = handlers.find(key);
    if (it == handlers.end()) {
      throw ParseError(lineno, "unknown key '" + key + "'");
    }
    it->second(value, lineno);
  }

  if (config.kind == sim::ModelKind::Planar) {
    if (!q0_set) config.q0 = Vector2d(0.2, 0.0);
    if (!dq0_set) config.dq0 = Vector2d::Zero();
  }
  sim::validate(config);
  return config;
}

sim::ScenarioConfig parse_scenario_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open: " + path);
  return parse_scenario(in);
}

}  // namespace pendsim::io
