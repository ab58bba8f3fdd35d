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

#include "lrudesign/fixtures.h"

#include "lrudesign/instance_io.h"

namespace lrud {
namespace internal {
extern const std::string_view kLaptopJson;
extern const std::string_view kChainJson;
}  // namespace internal

std::vector<std::string> FixtureNames() { return {"laptop", "chain"}; }

std::string_view FixtureJson(std::string_view name) {
  if (name == "laptop") return internal::kLaptopJson;
  if (name == "chain") return internal::kChainJson;
  throw Error(ErrorCode::kUnknownFixture, std::string(name));
}

SystemInstance Fixture(std::string_view name) {
  return ParseInstance(std::string(FixtureJson(name)));
}

}  // namespace lrud
