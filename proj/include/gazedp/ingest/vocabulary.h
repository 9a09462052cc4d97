// Copyright 2026 The gazedp Authors
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

#ifndef GAZEDP_INGEST_VOCABULARY_H_
#define GAZEDP_INGEST_VOCABULARY_H_

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace gazedp::ingest {

// The nine attribute groups stimuli are organised into.
enum class Category {
  kPersonalInformation,
  kDocuments,
  kMedical,
  kEmployment,
  kLife,
  kRelationship,
  kWhereabouts,
  kOnlineActivity,
  kAutomobile,
};

inline constexpr int kNumCategories = 9;

std::string_view CategoryName(Category c);
std::optional<Category> CategoryFromName(std::string_view name);

struct AttributeInfo {
  std::string_view name;
  Category category;
  int block;  // 1..4, the block whose stimuli carry this attribute
};

// All attributes known to the schema, grouped by block (five per block).
std::span<const AttributeInfo> Attributes();

const AttributeInfo* FindAttribute(std::string_view name);

// Attributes presented in `block` (1..4).
std::vector<const AttributeInfo*> AttributesInBlock(int block);

}  // namespace gazedp::ingest

#endif  // GAZEDP_INGEST_VOCABULARY_H_
