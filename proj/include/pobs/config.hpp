#pragma once

#include "pobs/models/registry.hpp"

#include <cstdint>
#include <map>
#include <optional>

namespace pobs {

/// Flat "section.key" -> raw value map. Later writes win, so flags applied after
/// the file override it.
using KeyValues = std::map<std::string, std::string>;

/// Parses the sectioned key-value format:
///
///   # comment
///   [model]
///   id = burgers
///   N = 84
///   [estimation]
///   kf = 2
///   [run]
///   rho = 1e-2
///
/// Keys outside a section, duplicate keys and unknown sections are errors.
KeyValues parse_config_text(std::string_view text);
KeyValues load_config_file(const std::string& path);

struct RunConfig {
  models::ModelConfig model;
  models::EstimationConfig estimation;
  std::optional<double> rho;  ///< empty means auto
  std::vector<int> sweep;
  std::vector<std::vector<double>> candidates;
  std::uint64_t seed = 0;
  std::string out_dir = "out";
  int jobs = 0;         ///< 0: available parallelism
  bool direct = false;  ///< also run the direct optimization oracle
  KeyValues snapshot;   ///< the merged key-values the config was built from
};

/// Builds a RunConfig from merged key-values. Rejects keys that do not apply to
/// the selected model and non-positive physical parameters.
RunConfig resolve_config(const KeyValues& kv);

/// "section.key = value" lines in key order; the canonical snapshot text.
std::string snapshot_text(const KeyValues& kv);

const char* tool_version();

struct RunRecord {
  std::string command;
  KeyValues config;
  double wall_seconds = 0.0;
  std::vector<std::pair<std::string, std::string>> outputs;  ///< file name, content
  std::vector<std::string> summary;                          ///< human-readable result lines
};

/// run.txt: version, command, config snapshot, wall time, summary and a content
/// hash over every output file.
std::string render_run_record(const RunRecord& r);

}  // namespace pobs
