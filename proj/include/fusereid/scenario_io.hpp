#pragma once

#include <string>

#include "fusereid/model.hpp"

namespace fusereid {

/// Serializes the scenario to its JSON document form. The layout is
/// stable: top-level keys `embedding_dim`, `sequences`, `signals`,
/// `queries`; trajectories as arrays of [millis, x, y].
std::string scenario_to_json(const Scenario& scenario);

/// Parses a scenario JSON document. Throws IoError on malformed input.
Scenario scenario_from_json(const std::string& text);

Scenario load_scenario(const std::string& path);
void save_scenario(const Scenario& scenario, const std::string& path);

/// Reads a whole file into memory; throws IoError naming the path.
std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);

}  // namespace fusereid
