#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "json.hpp"

#include "hlearn/instance.hpp"

namespace hlearn {

using Json = nlohmann::ordered_json;

// Instance file: {"vertices":[...], "edges":[{"u":..,"v":..,"w":"p/q"}...], "start":..., "goal":...}
// Weights are decimal or "p/q" strings (JSON integers are also accepted);
// floating-point JSON numbers are rejected.
Json instance_to_json(const PathInstance& instance);
PathInstance instance_from_json(const Json& doc);
std::string serialize_instance(const PathInstance& instance);
PathInstance parse_instance(const std::string& text);
PathInstance load_instance(const std::filesystem::path& path);
void save_instance(const std::filesystem::path& path, const PathInstance& instance);

/// Loads every *.json file of a directory, sorted by file name.
std::vector<PathInstance> load_corpus(const std::filesystem::path& dir);
std::vector<std::filesystem::path> corpus_files(const std::filesystem::path& dir);

// Heuristic file: {"values":{"label":"p/q", ...}}; every vertex must be present.
Json rho_to_json(const HeuristicVector& rho, const PathInstance& instance);
HeuristicVector rho_from_json(const Json& doc, const std::vector<std::string>& labels);
HeuristicVector load_rho(const std::filesystem::path& path, const std::vector<std::string>& labels);
void save_rho(const std::filesystem::path& path, const HeuristicVector& rho, const std::vector<std::string>& labels);

/// Reads a whole file; throws InvalidInput when it cannot be opened.
std::string read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, const std::string& contents);
/// Parses JSON text, converting parse errors to InvalidInput.
Json parse_json(const std::string& text);

/// Rational from a JSON string or integer; rejects floats.
Rational rational_from_json(const Json& value);

}  // namespace hlearn
