#include "hlearn/io.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "hlearn/errors.hpp"

namespace hlearn {
namespace fs = std::filesystem;

Rational rational_from_json(const Json& value) {
  if (value.is_string()) return parse_rational(value.get<std::string>());
  if (value.is_number_integer()) return Rational(mpz_class(value.dump(), 10));
  if (value.is_number_float()) throw InvalidInput("floating-point value rejected: " + value.dump());
  throw InvalidInput("expected a rational string, got " + value.dump());
}

Json instance_to_json(const PathInstance& instance) {
  Json doc;
  doc["vertices"] = instance.labels();
  Json edges = Json::array();
  for (const auto& e : instance.edges()) {
    edges.push_back(Json{{"u", instance.label(e.from)}, {"v", instance.label(e.to)}, {"w", to_string(e.weight)}});
  }
  doc["edges"] = std::move(edges);
  doc["start"] = instance.label(instance.start());
  doc["goal"] = instance.label(instance.goal());
  return doc;
}

PathInstance instance_from_json(const Json& doc) {
  try {
    if (!doc.is_object()) throw InvalidInput("instance must be a JSON object");
    auto labels = doc.at("vertices").get<std::vector<std::string>>();
    std::vector<PathInstance::LabeledEdge> edges;
    for (const auto& e : doc.at("edges")) {
      edges.push_back({e.at("u").get<std::string>(), e.at("v").get<std::string>(), rational_from_json(e.at("w"))});
    }
    return PathInstance::from_labels(std::move(labels), edges, doc.at("start").get<std::string>(),
                                     doc.at("goal").get<std::string>());
  } catch (const nlohmann::json::exception& ex) {
    throw InvalidInput(std::string("malformed instance: ") + ex.what());
  }
}

std::string serialize_instance(const PathInstance& instance) { return instance_to_json(instance).dump(1) + "\n"; }

PathInstance parse_instance(const std::string& text) { return instance_from_json(parse_json(text)); }

PathInstance load_instance(const fs::path& path) { return parse_instance(read_file(path)); }

void save_instance(const fs::path& path, const PathInstance& instance) {
  write_file(path, serialize_instance(instance));
}

std::vector<fs::path> corpus_files(const fs::path& dir) {
  if (!fs::is_directory(dir)) throw InvalidInput("not a directory: " + dir.string());
  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (entry.is_regular_file() && entry.path().extension() == ".json") files.push_back(entry.path());
  }
  std::sort(files.begin(), files.end());
  return files;
}

std::vector<PathInstance> load_corpus(const fs::path& dir) {
  std::vector<PathInstance> out;
  for (const auto& f : corpus_files(dir)) out.push_back(load_instance(f));
  if (out.empty()) throw InvalidInput("empty corpus: " + dir.string());
  return out;
}

Json rho_to_json(const HeuristicVector& rho, const PathInstance& instance) {
  Json values = Json::object();
  for (VertexId v = 0; v < instance.size(); ++v) values[instance.label(v)] = to_string(rho[v]);
  return Json{{"values", std::move(values)}};
}

HeuristicVector rho_from_json(const Json& doc, const std::vector<std::string>& labels) {
  try {
    const auto& values = doc.at("values");
    if (!values.is_object()) throw InvalidInput("rho 'values' must be an object");
    std::vector<Rational> out;
    out.reserve(labels.size());
    for (const auto& l : labels) {
      if (!values.contains(l)) throw InvalidInput("rho has no value for vertex '" + l + "'");
      out.push_back(rational_from_json(values.at(l)));
    }
    for (const auto& [key, _] : values.items()) {
      if (std::find(labels.begin(), labels.end(), key) == labels.end()) {
        throw InvalidInput("rho names unknown vertex '" + key + "'");
      }
    }
    return HeuristicVector(std::move(out));
  } catch (const nlohmann::json::exception& ex) {
    throw InvalidInput(std::string("malformed rho: ") + ex.what());
  }
}

HeuristicVector load_rho(const fs::path& path, const std::vector<std::string>& labels) {
  return rho_from_json(parse_json(read_file(path)), labels);
}

void save_rho(const fs::path& path, const HeuristicVector& rho, const std::vector<std::string>& labels) {
  Json values = Json::object();
  for (VertexId v = 0; v < labels.size(); ++v) values[labels[v]] = to_string(rho[v]);
  write_file(path, Json{{"values", std::move(values)}}.dump(1) + "\n");
}

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InvalidInput("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const fs::path& path, const std::string& contents) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InvalidInput("cannot write " + path.string());
  out << contents;
}

Json parse_json(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::parse_error& ex) {
    throw InvalidInput(std::string("invalid JSON: ") + ex.what());
  }
}

}  // namespace hlearn
