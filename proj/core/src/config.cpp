#include "tclab/config.hpp"

#include <charconv>
#include <fstream>
#include <map>
#include <sstream>

#include "tclab/errors.hpp"
#include "tclab/parallel.hpp"

namespace tclab {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> tokens(const std::string& s) {
  std::vector<std::string> out;
  std::istringstream in(s);
  std::string tok;
  while (in >> tok) out.push_back(tok);
  return out;
}

double parse_double(const std::string& key, const std::string& s) {
  double v = 0.0;
  const auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || p != s.data() + s.size())
    throw ConfigError("bad numeric value for '" + key + "': " + s);
  return v;
}

std::int64_t parse_int(const std::string& key, const std::string& s) {
  std::int64_t v = 0;
  const auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || p != s.data() + s.size())
    throw ConfigError("bad integer value for '" + key + "': " + s);
  return v;
}

using Section = std::map<std::string, std::string>;

void apply_flow(FlowConfig& flow, const std::string& section, const Section& kv) {
  for (const auto& [key, value] : kv) {
    if (key == "map") {
      const auto t = tokens(value);
      if (t.size() != 4) throw ConfigError("[" + section + "] map needs 4 integers");
      flow.map = {{{parse_int(key, t[0]), parse_int(key, t[1])},
                   {parse_int(key, t[2]), parse_int(key, t[3])}}};
    } else if (key == "roof_amplitude") {
      flow.roof_amplitude = parse_double(key, value);
    } else if (key == "roof_mode") {
      const auto t = tokens(value);
      if (t.size() != 2) throw ConfigError("[" + section + "] roof_mode needs 2 integers");
      flow.roof_mode = {static_cast<int>(parse_int(key, t[0])),
                        static_cast<int>(parse_int(key, t[1]))};
    } else {
      throw ConfigError("unknown key '" + key + "' in [" + section + "]");
    }
  }
}

OrbitRef parse_orbit(const std::string& key, const std::string& value) {
  const auto t = tokens(value);
  if (t.size() != 3)
    throw ConfigError("'" + key + "' needs 'numerator_x numerator_y denominator'");
  OrbitRef ref{parse_int(key, t[0]), parse_int(key, t[1]), parse_int(key, t[2])};
  if (ref.den < 1) throw ConfigError("'" + key + "': denominator must be positive");
  return ref;
}

}  // namespace

RunConfig parse_config_text(const std::string& text) {
  std::map<std::string, Section> sections;
  std::istringstream in(text);
  std::string line, current;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']')
        throw ConfigError("line " + std::to_string(lineno) + ": unterminated section header");
      current = trim(line.substr(1, line.size() - 2));
      sections[current];
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError("line " + std::to_string(lineno) + ": expected 'key = value'");
    if (current.empty())
      throw ConfigError("line " + std::to_string(lineno) + ": key outside any section");
    sections[current][trim(line.substr(0, eq))] = trim(line.substr(eq + 1));
  }

  RunConfig cfg;
  for (const auto& [name, kv] : sections) {
    if (name == "flow1") {
      apply_flow(cfg.flow1, name, kv);
    } else if (name == "flow2") {
      apply_flow(cfg.flow2, name, kv);
    } else if (name == "cocycle") {
      for (const auto& [key, value] : kv) {
        if (key == "delta") cfg.cocycle.delta = parse_double(key, value);
        else if (key == "tube_radius") cfg.cocycle.tube_radius = parse_double(key, value);
        else if (key == "quadrature_step") cfg.cocycle.quadrature_step = parse_double(key, value);
        else if (key == "coupling") {
          if (value != "both" && value != "first_factor_only")
            throw ConfigError("coupling must be 'both' or 'first_factor_only', got '" + value + "'");
          cfg.cocycle.coupling = value;
        } else if (key == "max_denominator") cfg.cocycle.max_denominator = static_cast<int>(parse_int(key, value));
        else if (key == "plus_orbit1") cfg.cocycle.plus_orbit1 = parse_orbit(key, value);
        else if (key == "minus_orbit1") cfg.cocycle.minus_orbit1 = parse_orbit(key, value);
        else if (key == "plus_orbit2") cfg.cocycle.plus_orbit2 = parse_orbit(key, value);
        else if (key == "minus_orbit2") cfg.cocycle.minus_orbit2 = parse_orbit(key, value);
        else throw ConfigError("unknown key '" + key + "' in [cocycle]");
      }
    } else if (name == "timechange") {
      for (const auto& [key, value] : kv) {
        if (key == "inv_tolerance") cfg.timechange.inv_tolerance = parse_double(key, value);
        else if (key == "max_iterations") cfg.timechange.max_iterations = static_cast<int>(parse_int(key, value));
        else throw ConfigError("unknown key '" + key + "' in [timechange]");
      }
    } else if (name == "verify") {
      for (const auto& [key, value] : kv) {
        if (key == "cocycle_samples") cfg.verify.cocycle_samples = static_cast<int>(parse_int(key, value));
        else if (key == "cocycle_tolerance") cfg.verify.cocycle_tolerance = parse_double(key, value);
        else if (key == "inversion_samples") cfg.verify.inversion_samples = static_cast<int>(parse_int(key, value));
        else if (key == "roundtrip_tolerance") cfg.verify.roundtrip_tolerance = parse_double(key, value);
        else if (key == "group_samples") cfg.verify.group_samples = static_cast<int>(parse_int(key, value));
        else if (key == "group_tolerance") cfg.verify.group_tolerance = parse_double(key, value);
        else if (key == "marked_equality_tolerance") cfg.verify.marked_equality_tolerance = parse_double(key, value);
        else if (key == "iteration_cap") cfg.verify.iteration_cap = static_cast<int>(parse_int(key, value));
        else if (key == "delta_budget") cfg.verify.delta_budget = parse_double(key, value);
        else throw ConfigError("unknown key '" + key + "' in [verify]");
      }
    } else if (name == "lyapunov") {
      for (const auto& [key, value] : kv) {
        if (key == "grid_directions") cfg.lyapunov.grid_directions = static_cast<int>(parse_int(key, value));
        else if (key == "horizon") cfg.lyapunov.horizon = parse_double(key, value);
        else if (key == "rank_one_factor") cfg.lyapunov.rank_one_factor = parse_double(key, value);
        else if (key == "rank_one_floor") cfg.lyapunov.rank_one_floor = parse_double(key, value);
        else if (key == "distinct_tolerance") cfg.lyapunov.distinct_tolerance = parse_double(key, value);
        else if (key == "agreement_tolerance") cfg.lyapunov.agreement_tolerance = parse_double(key, value);
        else throw ConfigError("unknown key '" + key + "' in [lyapunov]");
      }
    } else if (name == "ergodic") {
      for (const auto& [key, value] : kv) {
        if (key == "lines") {
          cfg.ergodic.lines.clear();
          for (const auto& tok : tokens(value)) {
            const auto comma = tok.find(',');
            if (comma == std::string::npos)
              throw ConfigError("lines entries must look like 'dx,dy', got '" + tok + "'");
            Vec2 dir{parse_double(key, tok.substr(0, comma)), parse_double(key, tok.substr(comma + 1))};
            const double n = norm(dir);
            if (n == 0.0) throw ConfigError("lines entries must be nonzero");
            cfg.ergodic.lines.push_back(dir / n);
          }
        } else if (key == "starts") cfg.ergodic.starts = static_cast<int>(parse_int(key, value));
        else if (key == "horizon") cfg.ergodic.horizon = parse_double(key, value);
        else if (key == "checkpoints") {
          cfg.ergodic.checkpoints.clear();
          for (const auto& tok : tokens(value)) cfg.ergodic.checkpoints.push_back(parse_double(key, tok));
        } else if (key == "quad_step") cfg.ergodic.quad_step = parse_double(key, value);
        else if (key == "high_threshold") cfg.ergodic.high_threshold = parse_double(key, value);
        else if (key == "low_threshold") cfg.ergodic.low_threshold = parse_double(key, value);
        else if (key == "decay_threshold") cfg.ergodic.decay_threshold = parse_double(key, value);
        else throw ConfigError("unknown key '" + key + "' in [ergodic]");
      }
    } else if (name == "run") {
      for (const auto& [key, value] : kv) {
        if (key == "seed") cfg.seed = static_cast<std::uint64_t>(parse_int(key, value));
        else if (key == "out_dir") cfg.out_dir = value;
        else if (key == "threads") cfg.threads = static_cast<unsigned>(parse_int(key, value));
        else throw ConfigError("unknown key '" + key + "' in [run]");
      }
    } else {
      throw ConfigError("unknown section [" + name + "]");
    }
  }
  if (cfg.ergodic.starts < 8) throw ConfigError("[ergodic] starts must be at least 8");
  return cfg;
}

RunConfig parse_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config_text(buf.str());
}

namespace {

std::string fmt(double v) {
  std::array<char, 32> buf{};
  const auto [p, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  return std::string(buf.data(), p);
}

}  // namespace

std::string serialize_config(const RunConfig& c) {
  std::ostringstream out;
  auto flow = [&](const char* name, const FlowConfig& f) {
    out << "[" << name << "]\n";
    out << "map = " << f.map[0][0] << " " << f.map[0][1] << " " << f.map[1][0] << " "
        << f.map[1][1] << "\n";
    out << "roof_amplitude = " << fmt(f.roof_amplitude) << "\n";
    out << "roof_mode = " << f.roof_mode[0] << " " << f.roof_mode[1] << "\n\n";
  };
  flow("flow1", c.flow1);
  flow("flow2", c.flow2);
  out << "[cocycle]\n";
  out << "delta = " << fmt(c.cocycle.delta) << "\n";
  out << "tube_radius = " << fmt(c.cocycle.tube_radius) << "\n";
  out << "quadrature_step = " << fmt(c.cocycle.quadrature_step) << "\n";
  out << "coupling = " << c.cocycle.coupling << "\n";
  out << "max_denominator = " << c.cocycle.max_denominator << "\n";
  auto orbit = [&](const char* key, const OrbitRef& r) {
    out << key << " = " << r.nx << " " << r.ny << " " << r.den << "\n";
  };
  orbit("plus_orbit1", c.cocycle.plus_orbit1);
  orbit("minus_orbit1", c.cocycle.minus_orbit1);
  orbit("plus_orbit2", c.cocycle.plus_orbit2);
  orbit("minus_orbit2", c.cocycle.minus_orbit2);
  out << "\n[timechange]\n";
  out << "inv_tolerance = " << fmt(c.timechange.inv_tolerance) << "\n";
  out << "max_iterations = " << c.timechange.max_iterations << "\n";
  out << "\n[verify]\n";
  out << "cocycle_samples = " << c.verify.cocycle_samples << "\n";
  out << "cocycle_tolerance = " << fmt(c.verify.cocycle_tolerance) << "\n";
  out << "inversion_samples = " << c.verify.inversion_samples << "\n";
  out << "roundtrip_tolerance = " << fmt(c.verify.roundtrip_tolerance) << "\n";
  out << "group_samples = " << c.verify.group_samples << "\n";
  out << "group_tolerance = " << fmt(c.verify.group_tolerance) << "\n";
  out << "marked_equality_tolerance = " << fmt(c.verify.marked_equality_tolerance) << "\n";
  out << "iteration_cap = " << c.verify.iteration_cap << "\n";
  out << "delta_budget = " << fmt(c.verify.delta_budget) << "\n";
  out << "\n[lyapunov]\n";
  out << "grid_directions = " << c.lyapunov.grid_directions << "\n";
  out << "horizon = " << fmt(c.lyapunov.horizon) << "\n";
  out << "rank_one_factor = " << fmt(c.lyapunov.rank_one_factor) << "\n";
  out << "rank_one_floor = " << fmt(c.lyapunov.rank_one_floor) << "\n";
  out << "distinct_tolerance = " << fmt(c.lyapunov.distinct_tolerance) << "\n";
  out << "agreement_tolerance = " << fmt(c.lyapunov.agreement_tolerance) << "\n";
  out << "\n[ergodic]\n";
  out << "lines =";
  for (const auto& l : c.ergodic.lines) out << " " << fmt(l.x) << "," << fmt(l.y);
  out << "\n";
  out << "starts = " << c.ergodic.starts << "\n";
  out << "horizon = " << fmt(c.ergodic.horizon) << "\n";
  out << "checkpoints =";
  for (double cp : c.ergodic.checkpoints) out << " " << fmt(cp);
  out << "\n";
  out << "quad_step = " << fmt(c.ergodic.quad_step) << "\n";
  out << "high_threshold = " << fmt(c.ergodic.high_threshold) << "\n";
  out << "low_threshold = " << fmt(c.ergodic.low_threshold) << "\n";
  out << "decay_threshold = " << fmt(c.ergodic.decay_threshold) << "\n";
  out << "\n[run]\n";
  out << "seed = " << c.seed << "\n";
  out << "out_dir = " << c.out_dir << "\n";
  out << "threads = " << c.threads << "\n";
  return out.str();
}

namespace {

const PeriodicOrbit* resolve_orbit(const std::vector<PeriodicOrbit>& orbits, const OrbitRef& ref) {
  const RationalPoint p{ref.nx, ref.ny, ref.den};
  for (const auto& orbit : orbits)
    if (orbit.contains(p)) return &orbit;
  return nullptr;
}

}  // namespace

TimeChangedAction build_action(const RunConfig& config) {
  FlowSpec spec1, spec2;
  try {
    spec1 = FlowSpec::make(config.flow1.map, config.flow1.roof_amplitude, config.flow1.roof_mode);
    spec2 = FlowSpec::make(config.flow2.map, config.flow2.roof_amplitude, config.flow2.roof_mode);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }

  const double spacing = config.cocycle.tube_radius / 4.0;
  const auto orbits1 = find_periodic_orbits(spec1, config.cocycle.max_denominator, spacing);
  const auto orbits2 = find_periodic_orbits(spec2, config.cocycle.max_denominator, spacing);
  auto need = [&](const std::vector<PeriodicOrbit>& orbits, const OrbitRef& ref,
                  const char* which) -> const PeriodicOrbit& {
    const PeriodicOrbit* orbit = resolve_orbit(orbits, ref);
    if (!orbit)
      throw ConfigError(std::string(which) + ": orbit through " + ref.str() +
                        " not found at max_denominator = " +
                        std::to_string(config.cocycle.max_denominator));
    return *orbit;
  };

  const bool skew = config.cocycle.coupling == "first_factor_only";
  TimeChangedAction tca;
  tca.spec1 = spec1;
  tca.spec2 = spec2;
  try {
    BumpSpec bump1 = make_bump_spec(spec1, config.cocycle.delta, config.cocycle.tube_radius,
                                    need(orbits1, config.cocycle.plus_orbit1, "plus_orbit1"),
                                    need(orbits1, config.cocycle.minus_orbit1, "minus_orbit1"));
    BumpSpec bump2 = make_bump_spec(spec2, skew ? 0.0 : config.cocycle.delta,
                                    config.cocycle.tube_radius,
                                    need(orbits2, config.cocycle.plus_orbit2, "plus_orbit2"),
                                    need(orbits2, config.cocycle.minus_orbit2, "minus_orbit2"));
    tca.cocycle = CocycleSpec{std::move(bump1), std::move(bump2), config.cocycle.quadrature_step,
                              skew ? Coupling::first_factor_only : Coupling::both};
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
  tca.inv_tolerance = config.timechange.inv_tolerance;
  tca.max_iterations = config.timechange.max_iterations;
  return tca;
}

unsigned resolve_threads(const RunConfig& config) {
  return config.threads == 0 ? default_thread_count() : config.threads;
}

}  // namespace tclab
