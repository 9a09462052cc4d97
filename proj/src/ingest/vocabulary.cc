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

#include "gazedp/ingest/vocabulary.h"

#include <array>

namespace gazedp::ingest {
namespace {

constexpr std::array<std::string_view, kNumCategories> kCategoryNames = {
    "personal_information", "documents",    "medical",
    "employment",           "life",         "relationship",
    "whereabouts",          "online_activity", "automobile",
};

constexpr std::array<AttributeInfo, 20> kAttributes = {{
    {"fingerprint", Category::kPersonalInformation, 1},
    {"receipts", Category::kDocuments, 1},
    {"occupation", Category::kEmployment, 1},
    {"sexual_orientation", Category::kLife, 1},
    {"political_opinion", Category::kLife, 1},
    {"signature", Category::kPersonalInformation, 2},
    {"tickets", Category::kDocuments, 2},
    {"medical_treatment", Category::kMedical, 2},
    {"personal_occasion", Category::kLife, 2},
    {"home_address", Category::kWhereabouts, 2},
    {"face_complete", Category::kPersonalInformation, 3},
    {"credit_card", Category::kDocuments, 3},
    {"medical_history", Category::kMedical, 3},
    {"email_content", Category::kOnlineActivity, 3},
    {"religion", Category::kLife, 3},
    {"full_name", Category::kPersonalInformation, 4},
    {"mail", Category::kDocuments, 4},
    {"license_plate_complete", Category::kAutomobile, 4},
    {"personal_relationship", Category::kRelationship, 4},
    {"visited_location", Category::kWhereabouts, 4},
}};

}  // namespace

std::string_view CategoryName(Category c) {
  return kCategoryNames[static_cast<std::size_t>(c)];
}

std::optional<Category> CategoryFromName(std::string_view name) {
  for (std::size_t i = 0; i < kCategoryNames.size(); ++i) {
    if (kCategoryNames[i] == name) return static_cast<Category>(i);
  }
  return std::nullopt;
}

std::span<const AttributeInfo> Attributes() { return kAttributes; }

const AttributeInfo* FindAttribute(std::string_view name) {
  for (const AttributeInfo& a : kAttributes) {
    if (a.name == name) return &a;
  }
  return nullptr;
}

std::vector<const AttributeInfo*> AttributesInBlock(int block) {
  std::vector<const AttributeInfo*> out;
  for (const AttributeInfo& a : kAttributes) {
    if (a.block == block) out.push_back(&a);
  }
  return out;
}

}  // namespace gazedp::ingest
