#pragma once

// JSON and CSV wire formats.  Elements serialize as strings: a decimal
// residue for prime fields, a comma-separated coefficient list (constant
// term first) for extensions; fields serialize as "p^k".  Matrix inputs
// accept bare 2x4 entry arrays (field supplied separately) or full objects,
// and entries may be JSON integers as a convenience.

#include <json.hpp>

#include "oracle.hpp"

namespace alg2d {

using json = nlohmann::json;

inline std::string element_to_string(const FieldElement& e) { return e.to_string(); }

inline FieldElement element_from_json(const json& j, const Field* f) {
  if (j.is_number_integer()) return f->parse_element(std::to_string(j.get<long>()));
  if (j.is_string()) return f->parse_element(j.get<std::string>());
  throw std::invalid_argument("element must be an integer or string");
}

inline json to_json(const MSC& m) {
  json rows = json::array();
  for (int r = 0; r < 2; ++r) {
    json row = json::array();
    for (int c = 0; c < 4; ++c)
      row.push_back(m.e[static_cast<std::size_t>(4 * r + c)].to_string());
    rows.push_back(row);
  }
  return json{{"field", m.field()->to_string()}, {"entries", rows}};
}

// Accepts {"field": "p^k", "entries": [[..],[..]]} or a bare [[..],[..]]
// (then `fallback` must name the field).
inline MSC msc_from_json(const json& j, const Field* fallback = nullptr) {
  const Field* f = fallback;
  const json* entries = &j;
  if (j.is_object()) {
    if (!j.contains("entries")) throw std::invalid_argument("matrix object needs \"entries\"");
    if (j.contains("field")) f = Field::parse(j.at("field").get<std::string>());
    entries = &j.at("entries");
  }
  if (f == nullptr) throw std::invalid_argument("no field given for matrix");
  if (!entries->is_array() || entries->size() != 2 || !(*entries)[0].is_array() ||
      (*entries)[0].size() != 4 || (*entries)[1].size() != 4)
    throw std::invalid_argument("matrix entries must be a 2x4 array");
  MSC m;
  for (std::size_t r = 0; r < 2; ++r)
    for (std::size_t c = 0; c < 4; ++c)
      m.e[4 * r + c] = element_from_json((*entries)[r][c], f);
  return m;
}

inline json to_json(const FamilyLabel& L) {
  json params = json::array();
  for (const auto& p : L.params) params.push_back(p.to_string());
  return json{{"class", to_string(L.cls)}, {"family", L.family}, {"params", params}};
}

inline json to_json(const GL2& g) {
  return json::array({json::array({g.a.to_string(), g.b.to_string()}),
                      json::array({g.c.to_string(), g.d.to_string()})});
}

inline GL2 gl2_from_json(const json& j, const Field* f) {
  if (!j.is_array() || j.size() != 2 || j[0].size() != 2 || j[1].size() != 2)
    throw std::invalid_argument("witness must be a 2x2 array");
  return GL2::from_matrix(element_from_json(j[0][0], f), element_from_json(j[0][1], f),
                          element_from_json(j[1][0], f), element_from_json(j[1][1], f));
}

inline json to_json(const ClassResult& r) {
  return json{{"label", to_json(r.label)},
              {"field", r.result_field->to_string()},
              {"witness", to_json(r.witness)},
              {"canonical", to_json(r.canonical)}};
}

inline json to_json(const SubsetInfo& s) {
  json j{{"index", s.index}};
  if (s.index == 2 || s.index == 3) j["lambda"] = s.lambda.to_string();
  return j;
}

inline json to_json(const OrbitReport& r) {
  return json{{"representative", to_json(r.representative)},
              {"size", r.size},
              {"subset", to_json(r.subset)},
              {"label", to_json(r.label)}};
}

inline json to_json(const CensusTable& t) {
  json rows = json::array();
  for (const auto& r : t.rows) rows.push_back(to_json(r));
  return json{{"field", t.field->to_string()},
              {"total", t.total},
              {"orbit_count", t.rows.size()},
              {"orbits", rows},
              {"shared_labels", t.shared_labels}};
}

inline json to_json(const IsoResult& r) {
  json j{{"isomorphic", r.isomorphic}};
  if (r.isomorphic) {
    j["field"] = r.field->to_string();
    j["witness"] = to_json(*r.witness);
  }
  return j;
}

// One row per orbit: representative, size, subset index, lambda, label class,
// family, params.  Values that can contain commas are double-quoted.
inline std::string to_csv(const CensusTable& t) {
  auto quote = [](const std::string& s) { return "\"" + s + "\""; };
  std::string out = "representative,size,subset,lambda,class,family,params\n";
  for (const auto& r : t.rows) {
    std::string rep;
    for (std::size_t i = 0; i < 8; ++i) {
      if (i == 4) rep += " | ";
      else if (i) rep += ' ';
      rep += r.representative.e[i].to_string();
    }
    std::string lambda =
        (r.subset.index == 2 || r.subset.index == 3) ? r.subset.lambda.to_string() : "";
    std::string params;
    for (std::size_t i = 0; i < r.label.params.size(); ++i) {
      if (i) params += ';';
      params += r.label.params[i].to_string();
    }
    out += quote(rep) + ',' + std::to_string(r.size) + ',' + std::to_string(r.subset.index) +
           ',' + quote(lambda) + ',' + to_string(r.label.cls) + ',' +
           std::to_string(r.label.family) + ',' + quote(params) + '\n';
  }
  return out;
}

}  // namespace alg2d
