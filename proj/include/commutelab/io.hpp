#pragma once

#include <istream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "commutelab/commute.hpp"
#include "commutelab/mat2.hpp"
#include "commutelab/measure.hpp"
#include "commutelab/rational.hpp"

namespace commutelab {

using json = nlohmann::ordered_json;

inline json to_json(const Rat& r) { return format_rat(r); }

/// Row-major 4-element array of scalar strings.
inline json to_json(const Mat2& m) {
  return json::array({format_rat(m.a11), format_rat(m.a12), format_rat(m.a21),
                      format_rat(m.a22)});
}

inline Mat2 mat2_from_json(const json& j) {
  if (!j.is_array() || j.size() != 4)
    throw std::invalid_argument("matrix must be a 4-element row-major array");
  return Mat2{parse_rat(j[0].get<std::string>()),
              parse_rat(j[1].get<std::string>()),
              parse_rat(j[2].get<std::string>()),
              parse_rat(j[3].get<std::string>())};
}

/// {"atoms": [{"x": scalar-or-matrix, "w": "num/den"}], "probability": bool}
inline json to_json(const ScalarMeasure& nu) {
  json atoms = json::array();
  for (const auto& [x, w] : nu.atoms)
    atoms.push_back({{"x", format_rat(x)}, {"w", format_rat(w)}});
  return {{"atoms", atoms}, {"probability", nu.is_probability}};
}

inline json to_json(const MatrixMeasure& mu) {
  json atoms = json::array();
  for (const auto& [x, w] : mu.atoms)
    atoms.push_back({{"x", to_json(x)}, {"w", format_rat(w)}});
  return {{"atoms", atoms}, {"probability", mu.is_probability}};
}

inline ScalarMeasure scalar_measure_from_json(const json& j) {
  ScalarMeasure nu;
  nu.is_probability = j.value("probability", false);
  for (const json& atom : j.at("atoms")) {
    Rat x = parse_rat(atom.at("x").get<std::string>());
    Rat w = parse_rat(atom.at("w").get<std::string>());
    if (nu.atoms.count(x)) throw std::invalid_argument("duplicate atom");
    nu.atoms[x] = w;
  }
  nu.validate();
  return nu;
}

inline MatrixMeasure matrix_measure_from_json(const json& j) {
  MatrixMeasure mu;
  mu.is_probability = j.value("probability", false);
  for (const json& atom : j.at("atoms")) {
    Mat2 x = mat2_from_json(atom.at("x"));
    Rat w = parse_rat(atom.at("w").get<std::string>());
    if (mu.atoms.count(x)) throw std::invalid_argument("duplicate atom");
    mu.atoms[x] = w;
  }
  mu.validate();
  return mu;
}

inline json to_json(const CommuteReport& r) {
  return {{"total", format_rat(r.total)},
          {"h1_degenerate", format_rat(r.h1_degenerate)},
          {"h2_nondegenerate", format_rat(r.h2_nondegenerate)},
          {"algorithm", to_string(r.algorithm)}};
}

/// Newline-delimited canonical scalars; '#' starts a comment line.
inline std::vector<Rat> read_scalar_set(std::istream& in) {
  std::vector<Rat> out;
  std::string line;
  while (std::getline(in, line)) {
    auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    auto last = line.find_last_not_of(" \t\r");
    out.push_back(parse_rat(line.substr(first, last - first + 1)));
  }
  return out;
}

inline std::string write_scalar_set(const std::vector<Rat>& set) {
  std::ostringstream out;
  for (const Rat& x : set) out << format_rat(x) << '\n';
  return out.str();
}

}  // namespace commutelab
