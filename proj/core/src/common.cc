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

#include "lrudesign/common.h"

#include <algorithm>
#include <bit>
#include <cmath>

namespace lrud {

std::string_view ErrorCodeName(ErrorCode code) {
  switch (code) {
    case ErrorCode::kSelfLoop: return "SelfLoop";
    case ErrorCode::kDuplicateEdge: return "DuplicateEdge";
    case ErrorCode::kDuplicateLabel: return "DuplicateLabel";
    case ErrorCode::kNonPositiveParameter: return "NonPositiveParameter";
    case ErrorCode::kNonAdjacentArc: return "NonAdjacentArc";
    case ErrorCode::kCyclicPrecedence: return "CyclicPrecedence";
    case ErrorCode::kUnknownVertex: return "UnknownVertex";
    case ErrorCode::kUnknownEdge: return "UnknownEdge";
    case ErrorCode::kEmptyLru: return "EmptyLru";
    case ErrorCode::kNotAPartition: return "NotAPartition";
    case ErrorCode::kInstanceTooLarge: return "InstanceTooLarge";
    case ErrorCode::kInfeasibleConfig: return "InfeasibleConfig";
    case ErrorCode::kNonPositiveFactor: return "NonPositiveFactor";
    case ErrorCode::kNotInSupport: return "NotInSupport";
    case ErrorCode::kIntegralityViolation: return "IntegralityViolation";
    case ErrorCode::kFailureSetsNotPartition: return "FailureSetsNotPartition";
    case ErrorCode::kFailureOutsideReplacement:
      return "FailureOutsideReplacement";
    case ErrorCode::kUnknownFixture: return "UnknownFixture";
    case ErrorCode::kParseError: return "ParseError";
    case ErrorCode::kInvalidArgument: return "InvalidArgument";
    case ErrorCode::kNumericalFailure: return "NumericalFailure";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, const std::string& message)
    : std::runtime_error(std::string(ErrorCodeName(code)) + ": " + message),
      code_(code) {}

bool ApproxEqual(double a, double b, double rel_tol) {
  return std::abs(a - b) <= rel_tol * std::max({1.0, std::abs(a), std::abs(b)});
}

VertexSet MakeSet(int size, std::initializer_list<int> members) {
  return MakeSet(size, std::span<const int>(members.begin(), members.size()));
}

VertexSet MakeSet(int size, std::span<const int> members) {
  VertexSet set(size);
  for (int v : members) set.set(v);
  return set;
}

std::vector<int> Members(const VertexSet& set) {
  std::vector<int> out;
  out.reserve(set.count());
  for (auto i = set.find_first(); i != VertexSet::npos; i = set.find_next(i)) {
    out.push_back(static_cast<int>(i));
  }
  return out;
}

bool CanonicalLess(const VertexSet& a, const VertexSet& b) {
  auto i = a.find_first();
  auto j = b.find_first();
  while (i != VertexSet::npos && j != VertexSet::npos) {
    if (i != j) return i < j;
    i = a.find_next(i);
    j = b.find_next(j);
  }
  return i == VertexSet::npos && j != VertexSet::npos;
}

void SortCanonical(std::vector<VertexSet>& sets) {
  std::sort(sets.begin(), sets.end(), CanonicalLess);
}

bool MaskCanonicalLess(std::uint64_t a, std::uint64_t b) {
  while (a != 0 && b != 0) {
    const int ia = std::countr_zero(a);
    const int ib = std::countr_zero(b);
    if (ia != ib) return ia < ib;
    a &= a - 1;
    b &= b - 1;
  }
  return a == 0 && b != 0;
}

std::uint64_t ToMask(const VertexSet& set) {
  std::uint64_t mask = 0;
  for (auto i = set.find_first(); i != VertexSet::npos; i = set.find_next(i)) {
    mask |= std::uint64_t{1} << i;
  }
  return mask;
}

VertexSet FromMask(int size, std::uint64_t mask) {
  VertexSet set(size);
  while (mask != 0) {
    set.set(std::countr_zero(mask));
    mask &= mask - 1;
  }
  return set;
}

}  // namespace lrud
