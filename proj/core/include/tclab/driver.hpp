#pragma once

#include "tclab/config.hpp"
#include "tclab/report.hpp"

namespace tclab {

// Exit codes shared by the driver and the CLI.
inline constexpr int kExitPass = 0;
inline constexpr int kExitCheckFailure = 1;
inline constexpr int kExitConfigError = 2;
inline constexpr int kExitNumericFailure = 3;

// Cocycle-identity, inversion, group-law and epsilon_0-bound suites; writes
// report.json and report.csv into the configured output directory.
int run_verify(const RunConfig& config, VerificationReport* out_report = nullptr);

// Exponent fields over the marked points plus rank-one/homogeneity verdicts;
// writes exponent_field.csv and verdicts.json.
int run_exponents(const RunConfig& config);

// Line-subaction Birkhoff dispersion probes; writes dispersion.json and one
// CSV per line.
int run_ergodic(const RunConfig& config);

// Concatenates previously written reports into summary.json and a text table.
int run_report(const RunConfig& config, std::string* table = nullptr);

}  // namespace tclab
