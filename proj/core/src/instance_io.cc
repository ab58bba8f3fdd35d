// Copyright 2026 The lrudesign Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "lrudesign/instance_io.h"

#include <fstream>
#include <map>
#include <sstream>

namespace lrud {
namespace {

using nlohmann::json;

int Lookup(const std::map<std::string, int>& ids, const json& label) {
  const std::string name = label.get<std::string>();
  auto it = ids.find(name);
  if (it == ids.end()) throw Error(ErrorCode::kUnknownVertex, name);
  return it->second;
}

}  // namespace

SystemInstance InstanceFromJson(const json& j) {
  RawInstance raw;
  std::map<std::string, int> ids;
  std::map<std::pair<int, int>, int> edge_ids;
  try {
    for (const json& v : j.at("vertices")) {
      Vertex vx;
      vx.label = v.at("id").get<std::string>();
      vx.cost = v.at("cost").get<double>();
      vx.rate = v.at("rate").get<double>();
      ids.emplace(vx.label, static_cast<int>(raw.vertices.size()));
      raw.vertices.push_back(std::move(vx));
    }
    for (const json& e : j.at("edges")) {
      Edge ed{Lookup(ids, e.at("u")), Lookup(ids, e.at("v")),
              e.at("w").get<double>()};
      edge_ids.emplace(std::minmax(ed.u, ed.v),
                       static_cast<int>(raw.edges.size()));
      raw.edges.push_back(ed);
    }
    if (j.contains("arcs")) {
      auto find_edge = [&](const json& pair) {
        const int a = Lookup(ids, pair.at(0));
        const int b = Lookup(ids, pair.at(1));
        auto it = edge_ids.find(std::minmax(a, b));
        if (it == edge_ids.end()) {
          throw Error(ErrorCode::kUnknownEdge, pair.dump());
        }
        return it->second;
      };
      for (const json& a : j.at("arcs")) {
        raw.arcs.push_back(Arc{find_edge(a.at("from")), find_edge(a.at("to"))});
      }
    }
  } catch (const json::exception& ex) {
    throw Error(ErrorCode::kParseError, ex.what());
  }
  return SystemInstance::Validate(std::move(raw));
}

json InstanceToJson(const SystemInstance& inst, const json& metadata) {
  json j;
  j["vertices"] = json::array();
  for (const Vertex& v : inst.vertices()) {
    j["vertices"].push_back({{"id", v.label}, {"cost", v.cost}, {"rate", v.rate}});
  }
  j["edges"] = json::array();
  for (const Edge& e : inst.edges()) {
    j["edges"].push_back({{"u", inst.vertex(e.u).label},
                          {"v", inst.vertex(e.v).label},
                          {"w", e.weight}});
  }
  j["arcs"] = json::array();
  for (const Arc& a : inst.arcs()) {
    const Edge& f = inst.edge(a.from);
    const Edge& t = inst.edge(a.to);
    j["arcs"].push_back(
        {{"from", {inst.vertex(f.u).label, inst.vertex(f.v).label}},
         {"to", {inst.vertex(t.u).label, inst.vertex(t.v).label}}});
  }
  if (!metadata.is_null()) j["metadata"] = metadata;
  return j;
}

SystemInstance ParseInstance(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& ex) {
    throw Error(ErrorCode::kParseError, ex.what());
  }
  return InstanceFromJson(j);
}

SystemInstance LoadInstance(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kInvalidArgument, "cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ParseInstance(ss.str());
}

void SaveJson(const std::string& path, const json& j) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::kInvalidArgument, "cannot write " + path);
  out << j.dump(2) << "\n";
}

json SetToJson(const SystemInstance& inst, const VertexSet& set) {
  json out = json::array();
  for (int v : Members(set)) out.push_back(inst.vertex(v).label);
  return out;
}

VertexSet SetFromJson(const SystemInstance& inst, const json& j) {
  VertexSet set = inst.EmptyVertexSet();
  for (const json& label : j) {
    auto v = inst.FindVertex(label.get<std::string>());
    if (!v) throw Error(ErrorCode::kUnknownVertex, label.dump());
    set.set(*v);
  }
  return set;
}

json EdgeSetToJson(const SystemInstance& inst, const EdgeSet& set) {
  json out = json::array();
  for (auto e = set.find_first(); e != EdgeSet::npos; e = set.find_next(e)) {
    const Edge& ed = inst.edge(static_cast<int>(e));
    out.push_back({inst.vertex(ed.u).label, inst.vertex(ed.v).label});
  }
  return out;
}

}  // namespace lrud
