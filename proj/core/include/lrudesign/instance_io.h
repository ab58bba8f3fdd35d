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

#ifndef LRUDESIGN_INSTANCE_IO_H_
#define LRUDESIGN_INSTANCE_IO_H_

#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "lrudesign/graph.h"

namespace lrud {

// Wire format:
//   {"vertices":[{"id":"A","cost":180.0,"rate":0.3}],
//    "edges":[{"u":"A","v":"L","w":2.5}],
//    "arcs":[{"from":["D","L"],"to":["D","M"]}],
//    "metadata":{...}}
// An arc {"from":X,"to":Y} means edge Y must be broken before edge X.
SystemInstance InstanceFromJson(const nlohmann::json& j);
nlohmann::json InstanceToJson(const SystemInstance& inst,
                              const nlohmann::json& metadata = nullptr);

SystemInstance ParseInstance(const std::string& text);
SystemInstance LoadInstance(const std::string& path);
void SaveJson(const std::string& path, const nlohmann::json& j);

// Vertex sets as label lists.
nlohmann::json SetToJson(const SystemInstance& inst, const VertexSet& set);
VertexSet SetFromJson(const SystemInstance& inst, const nlohmann::json& j);
nlohmann::json EdgeSetToJson(const SystemInstance& inst, const EdgeSet& set);

}  // namespace lrud

#endif  // LRUDESIGN_INSTANCE_IO_H_
