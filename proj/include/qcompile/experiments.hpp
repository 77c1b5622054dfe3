// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <stdexcept>
#include <string>

namespace qcompile::experiments {

/// Configuration rejected before any computation; the message names the
/// offending field.
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

const char* tool_version();

// Each runner takes a JSON config document (strictly validated: required
// fields present, unknown fields rejected) and returns a JSON summary string.
// Tabular outputs go to the CSV paths named in the config; every output file
// starts with a header line embedding the tool version and the config hash.
std::string run_compile(const std::string& config_json);
std::string run_scaling(const std::string& config_json);
std::string run_mesh(const std::string& config_json);
std::string run_qec_sweep(const std::string& config_json);
std::string run_qec_verify();
std::string run_index_build(const std::string& config_json);

}  // namespace qcompile::experiments
