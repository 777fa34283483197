// Copyright 2026 The lelm-bell Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// JSON and CSV serialization of run reports.
//
// Complex numbers are written as [re, im]. Doubles are emitted in shortest
// round-trip form, which always carries enough digits to reparse exactly.

#pragma once

#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"
#include "lelm/feasibility.hpp"
#include "lelm/nogo.hpp"
#include "lelm/povm.hpp"
#include "lelm/symmetry.hpp"

namespace lelm {

using Json = nlohmann::json;

inline constexpr const char* kToolVersion = "1.0.0";

inline Json complex_json(Complex z) { return Json::array({z.real(), z.imag()}); }

inline Complex complex_from_json(const Json& j) {
  if (!j.is_array() || j.size() != 2) throw std::invalid_argument("complex value must be [re, im]");
  return {j[0].get<double>(), j[1].get<double>()};
}

inline Json vector_json(const CVector& v) {
  Json out = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(complex_json(v[i]));
  return out;
}

inline CVector vector_from_json(const Json& j) {
  CVector v(static_cast<Eigen::Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i) v[static_cast<Eigen::Index>(i)] = complex_from_json(j[i]);
  return v;
}

inline Json set_json(const BellSet& s) {
  Json labels = Json::array();
  for (const auto& l : s) labels.push_back(Json::array({l.c, l.p}));
  return {{"d", s.d()}, {"labels", labels}, {"text", s.str()}};
}

inline BellSet set_from_json(const Json& j) {
  const int d = j.at("d").get<int>();
  std::vector<BellLabel> labels;
  for (const auto& l : j.at("labels")) labels.emplace_back(d, l.at(0).get<int>(), l.at(1).get<int>());
  return {d, labels};
}

// FeasibilityReport

inline Json to_json(const FeasibilityReport& r) {
  Json j{{"type", "feasibility"},
         {"set", set_json(r.set)},
         {"status", std::string(to_string(r.status))},
         {"best_residual", r.best_residual},
         {"restarts_used", r.restarts_used}};
  j["witness"] = r.witness ? vector_json(r.witness->nu()) : Json(nullptr);
  if (!r.trace.empty()) j["trace"] = r.trace;
  return j;
}

inline FeasibilityReport feasibility_from_json(const Json& j) {
  FeasibilityReport r;
  r.set = set_from_json(j.at("set"));
  r.status = parse_search_status(j.at("status").get<std::string>());
  r.best_residual = j.at("best_residual").get<double>();
  r.restarts_used = j.at("restarts_used").get<int>();
  if (!j.at("witness").is_null()) r.witness = DetectorMode(r.set.d(), vector_from_json(j.at("witness")));
  if (j.contains("trace")) r.trace = j.at("trace").get<std::vector<double>>();
  return r;
}

// Proof steps and elimination steps

inline Json to_json(const ProofStep& s) {
  Json combination = Json::array();
  for (const auto& [name, w] : s.combination) combination.push_back({{"relation", name}, {"weight", complex_json(w)}});
  return {{"name", s.name},
          {"rule", s.rule},
          {"statement", s.statement},
          {"verified", s.verified},
          {"residual", s.residual},
          {"combination", combination}};
}

inline ProofStep proof_step_from_json(const Json& j) {
  ProofStep s{j.at("name").get<std::string>(), j.at("rule").get<std::string>(), j.at("statement").get<std::string>(),
              j.at("verified").get<bool>(), j.at("residual").get<double>(), {}};
  for (const auto& c : j.at("combination"))
    s.combination.emplace_back(c.at("relation").get<std::string>(), complex_from_json(c.at("weight")));
  return s;
}

inline Json to_json(const EliminationStep& s) {
  Json proof = Json::array();
  for (const auto& p : s.proof) proof.push_back(to_json(p));
  return {{"type", "elimination"},
          {"name", s.name},
          {"target_set", set_json(s.target_set)},
          {"verdict", std::string(to_string(s.verdict))},
          {"samples", s.samples},
          {"violations", s.violations},
          {"evidence", s.evidence},
          {"proof", proof}};
}

inline EliminationStep elimination_from_json(const Json& j) {
  EliminationStep s;
  s.name = j.at("name").get<std::string>();
  s.target_set = set_from_json(j.at("target_set"));
  s.verdict = parse_verdict(j.at("verdict").get<std::string>());
  s.samples = j.at("samples").get<int>();
  s.violations = j.at("violations").get<int>();
  s.evidence = j.at("evidence").get<std::vector<std::string>>();
  for (const auto& p : j.at("proof")) s.proof.push_back(proof_step_from_json(p));
  return s;
}

// POVM certificates and coverage

inline Json to_json(const PovmCertificate& c) {
  Json steps = Json::array();
  for (const auto& s : c.steps) steps.push_back(to_json(s));
  return {{"type", "certificate"},
          {"name", c.name},
          {"statistics", std::string(to_string(c.statistics))},
          {"set", set_json(c.set)},
          {"status", std::string(to_string(c.status))},
          {"variables", c.variables},
          {"steps", steps},
          {"numeric_min_offdiagonal_norm", c.numeric_min_offdiagonal_norm},
          {"numeric_restarts", c.numeric_restarts}};
}

inline Json to_json(const CoverageReport& r) {
  Json rows = Json::array();
  for (const auto& row : r.rows)
    rows.push_back({{"set", set_json(row.set)},
                    {"class", std::string(to_string(row.cls))},
                    {"witness", row.witness ? Json(row.witness->name) : Json(nullptr)}});
  return {{"type", "coverage"}, {"fatal_subset", set_json(r.fatal_subset)}, {"all_covered", r.all_covered()}, {"rows", rows}};
}

inline Json to_json(const IdentityDemo& demo) {
  Json labels = Json::array();
  for (std::size_t i = 0; i < demo.labels.size(); ++i) {
    Json pairs = Json::array();
    for (const auto& [a, b] : demo.signatures[i]) pairs.push_back(Json::array({a, b}));
    labels.push_back({{"label", demo.labels[i].str()}, {"detector_pairs", pairs}});
  }
  return {{"type", "identity-demo"}, {"d", demo.d}, {"disjoint", demo.disjoint}, {"labels", labels}};
}

struct ClassificationRow {
  BellSet set;
  TicTacToeClass cls = TicTacToeClass::winner;
};

inline Json to_json(const ClassificationRow& r) {
  return {{"type", "classification"},
          {"set", set_json(r.set)},
          {"class", std::string(to_string(r.cls))},
          {"diagram", TicTacToeDiagram::of(r.set).str()}};
}

struct RunReport {
  std::string version = kToolVersion;
  std::string command;
  Json config = Json::object();
  Json results = Json::array();
  Json summary = Json::object();
  Json timings = Json::object();  // phase -> wall-clock milliseconds

  bool operator==(const RunReport&) const = default;
};

inline Json to_json(const RunReport& r) {
  return {{"version", r.version},
          {"command", r.command},
          {"config", r.config},
          {"results", r.results},
          {"summary", r.summary},
          {"timings", r.timings}};
}

inline RunReport report_from_json(const Json& j) {
  RunReport r;
  r.version = j.at("version").get<std::string>();
  r.command = j.at("command").get<std::string>();
  r.config = j.at("config");
  r.results = j.at("results");
  r.summary = j.at("summary");
  r.timings = j.at("timings");
  return r;
}

inline std::string serialize(const RunReport& r, int indent = 2) { return to_json(r).dump(indent); }

inline RunReport parse_report(const std::string& text) { return report_from_json(Json::parse(text)); }

namespace detail {

inline std::string csv_cell(const Json& v) {
  std::string s;
  if (v.is_string()) {
    s = v.get<std::string>();
  } else if (v.is_object() && v.contains("text")) {
    s = v.at("text").get<std::string>();
  } else {
    s = v.dump();
  }
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string quoted = "\"";
  for (char ch : s) quoted += ch == '"' ? std::string("\"\"") : std::string(1, ch);
  return quoted + "\"";
}

}  // namespace detail

/// One row per result record, over the scalar fields of the first record
/// (sets are written by their text form).
inline std::string to_csv(const RunReport& r) {
  std::ostringstream os;
  if (r.results.empty()) return "";
  std::vector<std::string> columns;
  for (const auto& [key, value] : r.results.front().items())
    if (value.is_primitive() || (value.is_object() && value.contains("text"))) columns.push_back(key);
  for (std::size_t i = 0; i < columns.size(); ++i) os << (i ? "," : "") << columns[i];
  os << '\n';
  for (const auto& row : r.results) {
    for (std::size_t i = 0; i < columns.size(); ++i)
      os << (i ? "," : "") << (row.contains(columns[i]) ? detail::csv_cell(row.at(columns[i])) : "");
    os << '\n';
  }
  return os.str();
}

}  // namespace lelm
