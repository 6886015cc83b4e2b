#pragma once

// On-disk formats: the JSON configuration interchange document, run
// manifests, CSV assembly, and atomic file writes.

#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "pointlab/configuration.hpp"
#include "pointlab/version.hpp"

namespace pointlab {

using json = nlohmann::json;

// 17 significant digits: enough to reproduce any double exactly
inline std::string fmt17(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

// { "dimension": d, "window": {"lo":.., "hi":..}, "points": [[..d floats..]..],
//   "couplings": [..] }   -- couplings optional
inline json config_to_json(const PointConfiguration& c,
                           const CouplingSequence* couplings = nullptr) {
  json doc;
  doc["dimension"] = c.dim;
  doc["window"] = {{"lo", c.window.lo}, {"hi", c.window.hi}};
  json pts = json::array();
  for (const Point& p : c.points) {
    json row = json::array();
    for (int a = 0; a < c.dim; ++a) row.push_back(p[a]);
    pts.push_back(std::move(row));
  }
  doc["points"] = std::move(pts);
  if (couplings) doc["couplings"] = *couplings;
  return doc;
}

inline PointConfiguration config_from_json(const json& doc,
                                           CouplingSequence* couplings_out = nullptr) {
  if (!doc.is_object()) throw std::invalid_argument("configuration: not a JSON object");
  for (const char* key : {"dimension", "window", "points"})
    if (!doc.contains(key))
      throw std::invalid_argument(std::string("configuration: missing key '") + key + "'");
  if (!doc["dimension"].is_number_integer())
    throw std::invalid_argument("configuration: 'dimension' must be an integer");

  PointConfiguration c;
  c.dim = doc["dimension"].get<int>();
  const auto& w = doc["window"];
  if (!w.is_object() || !w.contains("lo") || !w.contains("hi") ||
      !w["lo"].is_number() || !w["hi"].is_number())
    throw std::invalid_argument("configuration: 'window' must hold numbers 'lo' and 'hi'");
  c.window = {w["lo"].get<double>(), w["hi"].get<double>()};

  if (!doc["points"].is_array())
    throw std::invalid_argument("configuration: 'points' must be an array");
  for (const auto& row : doc["points"]) {
    if (!row.is_array() || static_cast<int>(row.size()) != c.dim)
      throw std::invalid_argument(
          "configuration: each point must be an array of 'dimension' numbers");
    Point p{0.0, 0.0, 0.0};
    for (int a = 0; a < c.dim; ++a) {
      if (!row[a].is_number())
        throw std::invalid_argument("configuration: point coordinates must be numbers");
      p[a] = row[a].get<double>();
    }
    c.points.push_back(p);
  }

  if (couplings_out) {
    couplings_out->clear();
    if (doc.contains("couplings")) {
      if (!doc["couplings"].is_array() || doc["couplings"].size() != c.points.size())
        throw std::invalid_argument(
            "configuration: 'couplings' must list one number per point");
      for (const auto& v : doc["couplings"]) {
        if (!v.is_number())
          throw std::invalid_argument("configuration: couplings must be numbers");
        couplings_out->push_back(v.get<double>());
      }
    }
  }
  validate(c);
  return c;
}

// write via a temporary in the same directory, then rename into place
inline void write_text_atomic(const std::filesystem::path& path,
                              const std::string& content) {
  const auto parent = path.parent_path();
  if (!parent.empty()) std::filesystem::create_directories(parent);
  const auto tmp = path.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open for writing: " + tmp);
    out << content;
    if (!out.flush())
      throw std::runtime_error("short write: " + tmp);
  }
  std::filesystem::rename(tmp, path);
}

inline std::string read_text(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::invalid_argument("cannot open file: " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

struct RunManifest {
  std::string subcommand;
  std::vector<std::string> argv;  // tokens after the program name
  json parameters;                 // resolved values, for the reader's benefit
  std::vector<std::string> outputs;
  std::string version = version_string;
  std::string created;  // wall clock; the only field allowed to differ on rerun
};

inline json manifest_to_json(const RunManifest& m) {
  return json{{"tool", "pointlab"},       {"version", m.version},
              {"subcommand", m.subcommand}, {"argv", m.argv},
              {"parameters", m.parameters}, {"outputs", m.outputs},
              {"created", m.created}};
}

inline RunManifest manifest_from_json(const json& doc) {
  if (!doc.is_object() || !doc.contains("argv") || !doc["argv"].is_array())
    throw std::invalid_argument("manifest: missing 'argv' array");
  RunManifest m;
  m.subcommand = doc.value("subcommand", std::string());
  for (const auto& tok : doc["argv"]) {
    if (!tok.is_string()) throw std::invalid_argument("manifest: argv tokens must be strings");
    m.argv.push_back(tok.get<std::string>());
  }
  if (doc.contains("parameters")) m.parameters = doc["parameters"];
  if (doc.contains("outputs"))
    for (const auto& o : doc["outputs"]) m.outputs.push_back(o.get<std::string>());
  m.version = doc.value("version", std::string());
  m.created = doc.value("created", std::string());
  return m;
}

// rows of pre-formatted cells -> RFC-ish CSV text (no quoting needed here:
// cells are numbers and plain identifiers)
inline std::string csv_table(const std::vector<std::string>& header,
                             const std::vector<std::vector<std::string>>& rows) {
  std::string out;
  for (std::size_t i = 0; i < header.size(); ++i)
    out += (i ? "," : "") + header[i];
  out += "\n";
  for (const auto& row : rows) {
    for (std::size_t i = 0; i < row.size(); ++i)
      out += (i ? "," : "") + row[i];
    out += "\n";
  }
  return out;
}

}  // namespace pointlab
