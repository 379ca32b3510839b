#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "tclab/timechange.hpp"

namespace tclab {

struct FlowConfig {
  std::array<std::array<std::int64_t, 2>, 2> map{{{2, 1}, {1, 1}}};
  double roof_amplitude = 0.2;
  std::array<int, 2> roof_mode{1, 0};
};

struct OrbitRef {
  std::int64_t nx = 0, ny = 0, den = 1;
  std::string str() const {
    return std::to_string(nx) + "/" + std::to_string(den) + "," + std::to_string(ny) + "/" +
           std::to_string(den);
  }
};

struct CocycleConfig {
  double delta = 0.05;
  double tube_radius = 0.1;
  double quadrature_step = 1e-2;
  std::string coupling = "both";  // "both" | "first_factor_only"
  int max_denominator = 5;
  OrbitRef plus_orbit1{0, 0, 1};
  OrbitRef minus_orbit1{2, 1, 5};
  OrbitRef plus_orbit2{0, 0, 1};
  OrbitRef minus_orbit2{2, 1, 5};
};

struct TimechangeConfig {
  double inv_tolerance = 1e-12;
  int max_iterations = 200;
};

struct VerifyConfig {
  int cocycle_samples = 1000;
  double cocycle_tolerance = 1e-6;
  int inversion_samples = 500;
  double roundtrip_tolerance = 1e-10;
  int group_samples = 500;
  double group_tolerance = 1e-6;
  double marked_equality_tolerance = 1e-12;
  int iteration_cap = 14;
  double delta_budget = 0.125;
};

struct LyapunovConfig {
  int grid_directions = 64;
  double horizon = 200.0;
  double rank_one_factor = 0.5;
  double rank_one_floor = 1e-3;
  double distinct_tolerance = 1e-3;
  double agreement_tolerance = 0.02;  // fraction of the lambda scale
};

struct ErgodicConfig {
  std::vector<Vec2> lines{{1.0, 0.0}, {0.0, 1.0}};
  int starts = 16;
  double horizon = 400.0;
  std::vector<double> checkpoints{100.0, 400.0};
  double quad_step = 0.05;
  double high_threshold = 0.1;
  double low_threshold = 0.02;
  double decay_threshold = 0.6;
};

struct RunConfig {
  FlowConfig flow1;
  FlowConfig flow2;
  CocycleConfig cocycle;
  TimechangeConfig timechange;
  VerifyConfig verify;
  LyapunovConfig lyapunov;
  ErgodicConfig ergodic;
  std::uint64_t seed = 20260809;
  std::string out_dir = "out";
  unsigned threads = 0;  // 0 = hardware concurrency
};

// Parses the sectioned key/value config file. Unknown keys and malformed
// values are ConfigErrors; missing keys keep their defaults.
RunConfig parse_config_file(const std::string& path);
RunConfig parse_config_text(const std::string& text);

std::string serialize_config(const RunConfig& config);

// Resolves orbit references and builds the action. Throws ConfigError when a
// referenced orbit does not exist at the configured max_denominator or the
// bump tubes overlap.
TimeChangedAction build_action(const RunConfig& config);

unsigned resolve_threads(const RunConfig& config);

}  // namespace tclab
