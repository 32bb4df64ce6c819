#pragma once

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "ktrp/density.hpp"
#include "ktrp/errors.hpp"
#include "ktrp/objectives.hpp"
#include "ktrp/sampling.hpp"

namespace ktrp::io {

using json = nlohmann::json;

inline constexpr int kSchemaVersion = 1;

// Raised for unreadable or malformed input files.
class ParseError : public Error {
 public:
  using Error::Error;
};

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

inline void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ParseError("cannot write " + path);
  out << content;
}

inline json parse_json(const std::string& text, const std::string& what) {
  try {
    return json::parse(text);
  } catch (const json::exception& e) {
    throw ParseError(what + ": " + e.what());
  }
}

// Shortest representation that round-trips to the same double.
inline std::string format_double(double v) {
  char buf[32];
  for (int precision = 15; precision <= 17; ++precision) {
    std::snprintf(buf, sizeof buf, "%.*g", precision, v);
    if (std::strtod(buf, nullptr) == v) break;
  }
  return buf;
}

// {"schema": 1, "m": int, "values": [row-major reals]}; values are stored normalized.
inline json density_to_json(const Density& d) {
  return json{{"schema", kSchemaVersion},
              {"m", d.resolution()},
              {"values", std::vector<double>(d.values().begin(), d.values().end())}};
}

inline Density density_from_json(const json& j) {
  try {
    if (!j.is_object()) throw ParseError("density must be a JSON object");
    const int m = j.at("m").get<int>();
    const auto values = j.at("values").get<std::vector<double>>();
    return make_density(values, m);
  } catch (const json::exception& e) {
    throw ParseError(std::string("density: ") + e.what());
  }
}

inline Density load_density(const std::string& path) {
  return density_from_json(parse_json(read_file(path), path));
}

/// CSV with header `x,y`, one point per row.
inline std::string points_to_csv(const SampleSet& s) {
  std::string out = "x,y\n";
  for (const auto& p : s.points) out += format_double(p.x) + "," + format_double(p.y) + "\n";
  return out;
}

inline std::vector<Point> points_from_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line)) throw ParseError("points CSV is empty");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != "x,y") throw ParseError("points CSV must start with header x,y");
  std::vector<Point> pts;
  std::size_t row = 1;
  while (std::getline(in, line)) {
    ++row;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto comma = line.find(',');
    if (comma == std::string::npos) throw ParseError("points CSV row " + std::to_string(row) + " lacks a comma");
    try {
      std::size_t used_x = 0;
      std::size_t used_y = 0;
      const std::string xs = line.substr(0, comma);
      const std::string ys = line.substr(comma + 1);
      Point p{std::stod(xs, &used_x), std::stod(ys, &used_y)};
      if (used_x != xs.size() || used_y != ys.size() || !std::isfinite(p.x) || !std::isfinite(p.y))
        throw std::invalid_argument("trailing characters");
      pts.push_back(p);
    } catch (const std::exception&) {
      throw ParseError("points CSV row " + std::to_string(row) + " is not two numbers");
    }
  }
  return pts;
}

inline json manifest_json(const SampleSet& s, const Density& d) {
  return json{{"schema", kSchemaVersion},
              {"n", s.size()},
              {"seed", s.seed},
              {"density_id", s.density_id},
              {"density", density_to_json(d)}};
}

inline json tour_to_json(const Tour& t) { return json(t.order); }

}  // namespace ktrp::io
