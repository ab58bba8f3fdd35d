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

#ifndef LRUDESIGN_FIXTURES_H_
#define LRUDESIGN_FIXTURES_H_

#include <string>
#include <string_view>
#include <vector>

#include "lrudesign/graph.h"

namespace lrud {

// Names of the bundled instances: "laptop" and "chain".
std::vector<std::string> FixtureNames();

// Bundled JSON text; throws kUnknownFixture.
std::string_view FixtureJson(std::string_view name);

SystemInstance Fixture(std::string_view name);

}  // namespace lrud

#endif  // LRUDESIGN_FIXTURES_H_
