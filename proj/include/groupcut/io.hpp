#pragma once

// JSON documents. Rationals are strings "p/q" (or "p"); every document
// carries "schema_version": 1 and keys are written in a fixed order.

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"

#include "groupcut/delta_complex.hpp"
#include "groupcut/error.hpp"
#include "groupcut/extremality.hpp"
#include "groupcut/finite_group.hpp"
#include "groupcut/minimality.hpp"
#include "groupcut/pwl.hpp"
#include "groupcut/rat.hpp"

namespace groupcut {

using Json = nlohmann::ordered_json;

inline constexpr int kSchemaVersion = 1;

namespace detail {

inline Rat rat_at(const Json& j, const std::string& path) {
  if (j.is_string()) {
    try {
      return Rat::parse(j.get<std::string>());
    } catch (const InputError& e) {
      throw InputError(path + ": " + e.what());
    }
  }
  if (j.is_number_integer()) return Rat(j.get<long>());
  throw InputError(path + ": expected a rational string");
}

inline const Json& member(const Json& j, const char* key, const std::string& path) {
  if (!j.is_object()) throw InputError(path + ": expected an object");
  auto it = j.find(key);
  if (it == j.end()) throw InputError(path + "." + key + ": missing");
  return *it;
}

inline const Json& array_member(const Json& j, const char* key, const std::string& path) {
  const Json& a = member(j, key, path);
  if (!a.is_array()) throw InputError(path + "." + key + ": expected an array");
  return a;
}

inline long long_at(const Json& j, const std::string& path) {
  if (!j.is_number_integer()) throw InputError(path + ": expected an integer");
  return j.get<long>();
}

inline void check_version(const Json& j) {
  if (!j.is_object()) throw InputError("$: expected an object");
  auto it = j.find("schema_version");
  if (it != j.end() && (!it->is_number_integer() || it->get<int>() != kSchemaVersion))
    throw InputError("$.schema_version: unsupported version");
}

}  // namespace detail

inline Json rat_json(const Rat& r) { return r.str(); }

inline Json point_json(const Point2& p) { return Json::array({p.x.str(), p.y.str()}); }

inline Json interval_json(const Interval& i) { return Json::array({i.lo.str(), i.hi.str()}); }

inline Json to_json(const PwlPeriodic& input) {
  PwlPeriodic fn = input.canonical();
  Json j;
  j["schema_version"] = kSchemaVersion;
  j["f"] = fn.f().str();
  Json bps = Json::array();
  for (const auto& b : fn.breakpoints()) bps.push_back(b.str());
  j["breakpoints"] = std::move(bps);
  Json lims = Json::array();
  for (const auto& t : fn.limits()) lims.push_back(Json::array({t.left.str(), t.value.str(), t.right.str()}));
  j["limits"] = std::move(lims);
  return j;
}

inline PwlPeriodic pwl_from_json(const Json& j) {
  detail::check_version(j);
  Rat f = detail::rat_at(detail::member(j, "f", "$"), "$.f");
  if (f <= Rat(0) || f >= Rat(1)) throw InputError("$.f: must lie in (0, 1), got " + f.str());
  const Json& bj = detail::array_member(j, "breakpoints", "$");
  const Json& lj = detail::array_member(j, "limits", "$");
  std::vector<Rat> bps;
  for (std::size_t i = 0; i < bj.size(); ++i) bps.push_back(detail::rat_at(bj[i], "$.breakpoints[" + std::to_string(i) + "]"));
  std::vector<LimitTriple> lims;
  for (std::size_t i = 0; i < lj.size(); ++i) {
    std::string path = "$.limits[" + std::to_string(i) + "]";
    if (!lj[i].is_array() || lj[i].size() != 3) throw InputError(path + ": expected [left, value, right]");
    lims.push_back({detail::rat_at(lj[i][0], path + "[0]"), detail::rat_at(lj[i][1], path + "[1]"),
                    detail::rat_at(lj[i][2], path + "[2]")});
  }
  if (bps.size() != lims.size()) throw InputError("$.limits: length differs from $.breakpoints");
  try {
    return PwlPeriodic(f, std::move(bps), std::move(lims));
  } catch (const InputError& e) {
    throw InputError(std::string("$: ") + e.what());
  }
}

inline Json to_json(const FiniteGroupFn& g) {
  Json j;
  j["schema_version"] = kSchemaVersion;
  j["q"] = g.q;
  j["f_index"] = g.f_index;
  Json vals = Json::array();
  for (const auto& v : g.values) vals.push_back(v.str());
  j["values"] = std::move(vals);
  return j;
}

inline FiniteGroupFn finite_from_json(const Json& j) {
  detail::check_version(j);
  FiniteGroupFn g;
  g.q = detail::long_at(detail::member(j, "q", "$"), "$.q");
  g.f_index = detail::long_at(detail::member(j, "f_index", "$"), "$.f_index");
  const Json& vj = detail::array_member(j, "values", "$");
  for (std::size_t i = 0; i < vj.size(); ++i) g.values.push_back(detail::rat_at(vj[i], "$.values[" + std::to_string(i) + "]"));
  try {
    g.validate();
  } catch (const InputError& e) {
    throw InputError(std::string("$: ") + e.what());
  }
  return g;
}

inline const char* side_name(Side s) {
  switch (s) {
    case Side::Left: return "left";
    case Side::At: return "at";
    case Side::Right: return "right";
  }
  return "";
}

inline Json to_json(const DeltaFace& face) {
  Json j;
  j["dim"] = face.dim;
  j["I"] = interval_json(face.I);
  j["J"] = interval_json(face.J);
  j["K"] = interval_json(face.K);
  Json vs = Json::array();
  for (const auto& v : face.vertices) vs.push_back(point_json(v));
  j["vertices"] = std::move(vs);
  j["p1"] = interval_json(face.p1);
  j["p2"] = interval_json(face.p2);
  j["p3"] = interval_json(face.p3);
  return j;
}

inline Json to_json(const MinimalityVerdict& v) {
  Json j;
  j["schema_version"] = kSchemaVersion;
  j["test"] = "minimality";
  j["status"] = to_string(v.status);
  if (v.witness) {
    const auto& w = *v.witness;
    Json wj;
    wj["kind"] = to_string(w.kind);
    if (w.point) wj["point"] = w.point->str();
    if (w.vertex) wj["vertex"] = point_json(*w.vertex);
    if (w.kind == WitnessKind::Negativity) wj["side"] = side_name(w.side);
    wj["value"] = w.value.str();
    if (w.face) wj["face"] = to_json(*w.face);
    j["witness"] = std::move(wj);
  }
  return j;
}

inline Json covered_json(const std::vector<Interval>& covered) {
  Json c = Json::array();
  for (const auto& i : covered) c.push_back(interval_json(i));
  return c;
}

inline Json to_json(const PerturbationCertificate& c) {
  Json j;
  j["schema_version"] = kSchemaVersion;
  j["epsilon"] = c.epsilon.str();
  j["perturbation"] = to_json(c.perturbation);
  j["pi1"] = to_json(c.pi1);
  j["pi2"] = to_json(c.pi2);
  return j;
}

inline Json to_json(const ExtremalityVerdict& v) {
  Json j;
  j["schema_version"] = kSchemaVersion;
  j["test"] = "extremality";
  j["status"] = to_string(v.status);
  Json d;
  d["q"] = v.diagnostics.q;
  d["oversampling"] = v.diagnostics.m;
  d["grid_size"] = v.diagnostics.grid_size;
  d["rank"] = v.diagnostics.rank;
  d["basis_dimension"] = v.diagnostics.basis_dimension;
  d["additive_pairs"] = v.diagnostics.additive_pairs;
  d["covered_intervals"] = covered_json(v.diagnostics.covered);
  j["diagnostics"] = std::move(d);
  if (v.certificate) j["certificate"] = to_json(*v.certificate);
  return j;
}

inline Json to_json(const FiniteExtremalityVerdict& v) {
  Json j;
  j["schema_version"] = kSchemaVersion;
  j["test"] = "finite_extremality";
  j["status"] = to_string(v.status);
  j["rank"] = v.rank;
  j["basis_dimension"] = v.basis_dimension;
  j["additive_pairs"] = v.additive_pairs;
  if (v.certificate) {
    Json c;
    c["epsilon"] = v.certificate->epsilon.str();
    Json p = Json::array();
    for (const auto& x : v.certificate->perturbation) p.push_back(x.str());
    c["perturbation"] = std::move(p);
    c["g1"] = to_json(v.certificate->g1);
    c["g2"] = to_json(v.certificate->g2);
    j["certificate"] = std::move(c);
  }
  return j;
}

inline Json to_json(const AdditivityReport& rep) {
  Json j;
  j["schema_version"] = kSchemaVersion;
  auto faces = [&](const std::vector<std::size_t>& idx) {
    Json a = Json::array();
    for (auto i : idx) a.push_back(to_json(rep.faces[i]));
    return a;
  };
  j["face_count"] = rep.faces.size();
  j["additive_faces"] = faces(rep.additive);
  j["maximal_faces"] = faces(rep.maximal);
  j["symmetry_faces"] = faces(rep.symmetry);
  j["covered_intervals"] = covered_json(rep.covered);
  return j;
}

inline Json error_json(const std::string& message, const char* kind) {
  Json j;
  j["schema_version"] = kSchemaVersion;
  j["error"] = message;
  j["kind"] = kind;
  return j;
}

/// Serialized text: two-space indent and a trailing newline.
inline std::string dump(const Json& j) { return j.dump(2) + "\n"; }

inline std::string serialize(const PwlPeriodic& fn) { return dump(to_json(fn)); }

inline Json parse_json_text(const std::string& text, const std::string& source) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw InputError(source + ": malformed JSON: " + e.what());
  }
}

inline PwlPeriodic deserialize(const std::string& text) { return pwl_from_json(parse_json_text(text, "input")); }

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot write '" + path + "'");
  out << text;
}

}  // namespace groupcut
