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

#ifndef LRUDESIGN_COMMON_H_
#define LRUDESIGN_COMMON_H_

#include <cstdint>
#include <initializer_list>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <boost/dynamic_bitset.hpp>

namespace lrud {

// Sets of vertex or edge indices of one instance.
using VertexSet = boost::dynamic_bitset<std::uint64_t>;
using EdgeSet = boost::dynamic_bitset<std::uint64_t>;

enum class ErrorCode {
  kSelfLoop,
  kDuplicateEdge,
  kDuplicateLabel,
  kNonPositiveParameter,
  kNonAdjacentArc,
  kCyclicPrecedence,
  kUnknownVertex,
  kUnknownEdge,
  kEmptyLru,
  kNotAPartition,
  kInstanceTooLarge,
  kInfeasibleConfig,
  kNonPositiveFactor,
  kNotInSupport,
  kIntegralityViolation,
  kFailureSetsNotPartition,
  kFailureOutsideReplacement,
  kUnknownFixture,
  kParseError,
  kInvalidArgument,
  kNumericalFailure,
};

std::string_view ErrorCodeName(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message);
  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

// Relative comparison used for all cost equalities.
inline constexpr double kCostTolerance = 1e-9;
bool ApproxEqual(double a, double b, double rel_tol = kCostTolerance);

VertexSet MakeSet(int size, std::initializer_list<int> members);
VertexSet MakeSet(int size, std::span<const int> members);
std::vector<int> Members(const VertexSet& set);

// Orders sets by their ascending member lists, lexicographically.
bool CanonicalLess(const VertexSet& a, const VertexSet& b);

// Sorts a family of sets into canonical order.
void SortCanonical(std::vector<VertexSet>& sets);

// Converts between dynamic bitsets and 64-bit masks (size <= 64).
// CanonicalLess on bit masks.
bool MaskCanonicalLess(std::uint64_t a, std::uint64_t b);

std::uint64_t ToMask(const VertexSet& set);
VertexSet FromMask(int size, std::uint64_t mask);

}  // namespace lrud

#endif  // LRUDESIGN_COMMON_H_
