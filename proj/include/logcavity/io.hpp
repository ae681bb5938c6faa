#pragma once

#include "exactmath.hpp"
#include "matroid.hpp"
#include "poly.hpp"
#include "poset.hpp"

#include <json.hpp>

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

namespace logcavity::io {

using json = nlohmann::json;

inline QRat parse_rat(const json& j) {
  if (j.is_number_integer()) return QRat(static_cast<long>(j.get<long long>()));
  if (j.is_string()) {
    const std::string s = j.get<std::string>();
    QRat q;
    if (s.empty() || q.set_str(s, 10) != 0) throw error("BadNumber", "cannot read rational '" + s + "'");
    if (q.get_den() == 0) throw error("ZeroDenominator", "rational '" + s + "' has zero denominator");
    q.canonicalize();
    return q;
  }
  throw error("BadNumber", "rationals are integers or \"p/q\" strings");
}

inline json rat_json(const QRat& q) {
  if (q.get_den() == 1 && q.get_num().fits_slong_p()) return q.get_num().get_si();
  return q.get_str();
}

inline json int_json(const ZInt& z) {
  if (z.fits_slong_p()) return z.get_si();
  return z.get_str();
}

inline QMatrix parse_matrix(const json& j) {
  if (!j.is_array()) throw error("BadMatrix", "matrix must be an array of rows");
  const std::size_t rows = j.size(), cols = rows ? j[0].size() : 0;
  QMatrix m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i) {
    if (!j[i].is_array() || j[i].size() != cols) throw error("BadMatrix", "ragged matrix");
    for (std::size_t c = 0; c < cols; ++c) m(i, c) = parse_rat(j[i][c]);
  }
  return m;
}

inline json matrix_json(const QMatrix& m) {
  json out = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (std::size_t c = 0; c < m.cols(); ++c) row.push_back(rat_json(m(i, c)));
    out.push_back(row);
  }
  return out;
}

inline std::vector<QRat> parse_vector(const json& j) {
  if (!j.is_array()) throw error("BadVector", "vector must be an array");
  std::vector<QRat> v;
  for (const auto& x : j) v.push_back(parse_rat(x));
  return v;
}

inline json vector_json(const std::vector<QRat>& v) {
  json out = json::array();
  for (const auto& x : v) out.push_back(rat_json(x));
  return out;
}

inline Graph parse_graph(const json& j) {
  if (!j.is_object() || !j.contains("vertices") || !j.contains("edges"))
    throw error("BadGraph", "graph needs \"vertices\" and \"edges\"");
  Graph g;
  g.vertices = j.at("vertices").get<int>();
  for (const auto& e : j.at("edges")) {
    if (!e.is_array() || e.size() != 2) throw error("BadGraph", "edges are [u, v] pairs");
    g.edges.push_back({e[0].get<int>(), e[1].get<int>()});
  }
  check_vertices(g);
  return g;
}

inline json graph_json(const Graph& g) {
  json edges = json::array();
  for (auto [u, v] : g.edges) edges.push_back({u, v});
  return {{"vertices", g.vertices}, {"edges", edges}};
}

// Matroid payloads use 1-based element labels.
inline Matroid parse_matroid(const json& j) {
  if (!j.is_object() || !j.contains("type")) throw error("BadMatroid", "matroid needs a \"type\"");
  const std::string type = j.at("type").get<std::string>();
  if (type == "uniform") return uniform(j.at("k").get<int>(), j.at("n").get<int>());
  if (type == "graphic") return graphic(parse_graph(j.contains("graph") ? j.at("graph") : j));
  if (type == "linear") return linear(parse_matrix(j.at("matrix")));
  if (type == "bases") {
    const int n = j.at("n").get<int>();
    std::vector<std::vector<int>> bases;
    for (const auto& b : j.at("bases")) {
      std::vector<int> es;
      for (const auto& e : b) es.push_back(e.get<int>() - 1);
      bases.push_back(es);
    }
    return Matroid::from_bases(n, bases);
  }
  throw error("BadMatroid", "unknown matroid type '" + type + "'");
}

inline json set_json(Set s) {
  json out = json::array();
  for (int e : elements(s)) out.push_back(e + 1);
  return out;
}

inline json matroid_json(const Matroid& m) {
  json bases = json::array();
  for (Set b : m.bases()) bases.push_back(set_json(b));
  return {{"type", "bases"}, {"n", m.size()}, {"rank", m.rank()}, {"bases", bases}};
}

// "1,4,5" -> subset, 1-based.
inline Set parse_element_list(const std::string& csv, int n) {
  Set s = 0;
  std::stringstream ss(csv);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.find_first_not_of(" \t") == std::string::npos) continue;
    int e = 0;
    try {
      e = std::stoi(item);
    } catch (const std::exception&) {
      throw error("BadElement", "cannot read element '" + item + "'");
    }
    if (e < 1 || e > n) throw error("UnknownElement", "element " + item + " outside 1.." + std::to_string(n));
    s |= bit(e - 1);
  }
  return s;
}

inline std::vector<QRat> parse_point(const std::string& csv) {
  std::vector<QRat> v;
  std::stringstream ss(csv);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item.erase(0, item.find_first_not_of(" \t"));
    item.erase(item.find_last_not_of(" \t") + 1);
    v.push_back(parse_rat(json(item)));
  }
  return v;
}

struct PosetInput {
  Poset poset;
  std::optional<int> x, y;
};

inline PosetInput parse_poset(const json& j) {
  if (!j.is_object() || !j.contains("elements")) throw error("BadPoset", "poset needs \"elements\"");
  std::vector<std::string> labels = j.at("elements").get<std::vector<std::string>>();
  auto index = [&](const json& l) {
    const std::string s = l.get<std::string>();
    for (std::size_t i = 0; i < labels.size(); ++i)
      if (labels[i] == s) return static_cast<int>(i);
    throw error("UnknownElement", "no element labelled '" + s + "'");
  };
  std::vector<std::pair<int, int>> rel;
  if (j.contains("relations"))
    for (const auto& r : j.at("relations")) {
      if (!r.is_array() || r.size() != 2) throw error("BadPoset", "relations are [a, b] pairs");
      rel.push_back({index(r[0]), index(r[1])});
    }
  PosetInput in{Poset(labels, rel), std::nullopt, std::nullopt};
  if (j.contains("x")) in.x = index(j.at("x"));
  if (j.contains("y")) in.y = index(j.at("y"));
  return in;
}

inline json poset_json(const Poset& p) {
  json rel = json::array();
  for (auto [a, b] : p.covers()) rel.push_back({p.label(a), p.label(b)});
  return {{"elements", p.labels()}, {"relations", rel}};
}

inline MPoly parse_poly(const json& j) {
  const int n = j.at("nvars").get<int>();
  MPoly f(n);
  for (const auto& t : j.at("terms")) {
    Exponent e = t.at("exp").get<Exponent>();
    if (static_cast<int>(e.size()) != n) throw error("BadPolynomial", "exponent length differs from nvars");
    for (int x : e)
      if (x < 0) throw error("BadPolynomial", "negative exponent");
    QRat c = parse_rat(t.at("num"));
    if (t.contains("den")) {
      QRat d = parse_rat(t.at("den"));
      if (d == 0) throw error("ZeroDenominator", "term has zero denominator");
      c /= d;
    }
    f.add_term(e, c);
  }
  return f;
}

inline json poly_json(const MPoly& f) {
  json terms = json::array();
  for (const auto& [e, c] : f.terms())
    terms.push_back({{"exp", e}, {"num", c.get_num().get_str()}, {"den", c.get_den().get_str()}});
  return {{"nvars", f.nvars()}, {"terms", terms}};
}

inline json inertia_json(const Inertia& in) { return {in.n_pos, in.n_neg, in.n_zero}; }

template <class T>
json int_list(const std::vector<T>& v) {
  json out = json::array();
  for (const auto& x : v) {
    if constexpr (std::is_same_v<T, ZInt>) out.push_back(int_json(x));
    else out.push_back(x);
  }
  return out;
}

inline json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw error("FileNotFound", "cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw error("MalformedJSON", path + ": " + e.what());
  }
}

}  // namespace logcavity::io
