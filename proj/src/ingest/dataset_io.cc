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

#include "gazedp/ingest/dataset_io.h"

#include <array>
#include <fstream>
#include <istream>
#include <ostream>
#include <string>

#include "gazedp/common/csv.h"
#include "gazedp/common/errors.h"

namespace gazedp::ingest {
namespace {

constexpr std::array<std::string_view, 13> kColumns = {
    "participant", "block",  "task",  "stimulus",         "attribute",
    "category",    "rating", "response_time_ms", "t_us",  "x_px",
    "y_px",        "pupil",  "valid",
};

enum Column {
  kParticipant, kBlock, kTask, kStimulus, kAttribute, kCategory, kRating,
  kResponseTime, kTus, kX, kY, kPupil, kValid,
};

void ParseMetadata(const std::vector<std::string>& f, std::size_t line_no,
                   Dataset& d) {
  // f[0] is the key with the leading '#' already stripped.
  const std::string& key = f[0];
  if (key == "gazedp-dataset") {
    if (f.size() != 2 || f[1] != "1") {
      throw ParseError(line_no, "unsupported dataset format version");
    }
  } else if (key == "levels") {
    if (f.size() != 2) throw ParseError(line_no, "levels takes one value");
    d.levels = static_cast<int>(csv::ParseInt(f[1], line_no, "levels"));
    if (d.levels < 2) throw ValidationError(line_no, "levels must be >= 2");
  } else if (key == "geometry") {
    if (f.size() != 7) throw ParseError(line_no, "geometry takes six values");
    ScreenGeometry& g = d.geometry;
    g.width_px = csv::ParseDouble(f[1], line_no, "width_px");
    g.height_px = csv::ParseDouble(f[2], line_no, "height_px");
    g.width_mm = csv::ParseDouble(f[3], line_no, "width_mm");
    g.height_mm = csv::ParseDouble(f[4], line_no, "height_mm");
    g.eye_distance_mm = csv::ParseDouble(f[5], line_no, "eye_distance_mm");
    g.sample_rate_hz = csv::ParseDouble(f[6], line_no, "sample_rate_hz");
  } else if (key == "participant") {
    if (f.size() != 6) {
      throw ParseError(line_no, "participant takes five values");
    }
    ParticipantProfile p;
    p.participant_id = f[1];
    p.age_years = static_cast<int>(csv::ParseInt(f[2], line_no, "age"));
    p.gender = f[3];
    p.nationality = f[4];
    if (f[5] != "0" && f[5] != "1") {
      throw ParseError(line_no, "expert flag must be 0 or 1");
    }
    p.privacy_expert = f[5] == "1";
    d.profiles.push_back(std::move(p));
  } else {
    throw ParseError(line_no, "unknown metadata key '" + key + "'");
  }
}

std::string TrimLeft(std::string s) {
  std::size_t i = 0;
  while (i < s.size() && s[i] == ' ') ++i;
  return s.substr(i);
}

}  // namespace

Dataset ParseDataset(std::istream& in) {
  Dataset d;
  std::string line;
  std::size_t line_no = 0;
  bool header_seen = false;
  Trial* current = nullptr;

  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (!header_seen && line[0] == '#') {
      std::vector<std::string> f = csv::SplitLine(line.substr(1), line_no);
      f[0] = TrimLeft(f[0]);
      ParseMetadata(f, line_no, d);
      continue;
    }
    std::vector<std::string> f = csv::SplitLine(line, line_no);
    if (!header_seen) {
      if (f.size() != kColumns.size()) {
        throw ParseError(line_no, "header must name exactly " +
                                      std::to_string(kColumns.size()) +
                                      " columns");
      }
      for (std::size_t i = 0; i < kColumns.size(); ++i) {
        if (f[i] != kColumns[i]) {
          throw ParseError(line_no, "header column " + std::to_string(i + 1) +
                                        " must be '" +
                                        std::string(kColumns[i]) + "', got '" +
                                        f[i] + "'");
        }
      }
      header_seen = true;
      continue;
    }
    if (f.size() != kColumns.size()) {
      throw ParseError(line_no, "expected " + std::to_string(kColumns.size()) +
                                    " fields, got " +
                                    std::to_string(f.size()));
    }

    std::optional<TaskKind> task = TaskKindFromName(f[kTask]);
    if (!task) throw ParseError(line_no, "unknown task '" + f[kTask] + "'");
    const AttributeInfo* attr = FindAttribute(f[kAttribute]);
    if (attr == nullptr) {
      throw SchemaError(line_no, "unknown attribute '" + f[kAttribute] + "'");
    }
    std::optional<Category> category = CategoryFromName(f[kCategory]);
    if (!category) {
      throw SchemaError(line_no, "unknown category '" + f[kCategory] + "'");
    }
    if (*category != attr->category) {
      throw SchemaError(line_no, "attribute '" + f[kAttribute] +
                                     "' does not belong to category '" +
                                     f[kCategory] + "'");
    }
    const int block =
        static_cast<int>(csv::ParseInt(f[kBlock], line_no, "block"));
    const int rating =
        static_cast<int>(csv::ParseInt(f[kRating], line_no, "rating"));
    if (rating < 1 || rating > d.levels) {
      throw ValidationError(line_no, "rating " + std::to_string(rating) +
                                         " outside [1, " +
                                         std::to_string(d.levels) + "]");
    }
    const double rt =
        csv::ParseDouble(f[kResponseTime], line_no, "response_time_ms");

    GazeSample s;
    s.t_us = csv::ParseInt(f[kTus], line_no, "t_us");
    s.x_px = csv::ParseDouble(f[kX], line_no, "x_px");
    s.y_px = csv::ParseDouble(f[kY], line_no, "y_px");
    if (!f[kPupil].empty()) {
      s.pupil = csv::ParseDouble(f[kPupil], line_no, "pupil");
    }
    if (f[kValid] != "0" && f[kValid] != "1") {
      throw ParseError(line_no, "valid must be 0 or 1");
    }
    s.valid = f[kValid] == "1";

    const bool new_trial = current == nullptr ||
                           current->participant_id != f[kParticipant] ||
                           current->stimulus_id != f[kStimulus] ||
                           current->task_kind != *task;
    if (new_trial) {
      Trial t;
      t.participant_id = f[kParticipant];
      t.block = block;
      t.task_kind = *task;
      t.stimulus_id = f[kStimulus];
      t.attribute = f[kAttribute];
      t.category = *category;
      t.rating_l = rating;
      t.response_time_ms = rt;
      d.trials.push_back(std::move(t));
      current = &d.trials.back();
    } else if (current->block != block || current->attribute != f[kAttribute] ||
               current->rating_l != rating ||
               current->response_time_ms != rt) {
      throw ParseError(line_no,
                       "trial-level fields change within one trial");
    } else if (s.t_us < current->samples.back().t_us) {
      throw ValidationError(line_no, "timestamp decreases within trial");
    }
    current->samples.push_back(s);
  }
  if (!header_seen) throw ParseError(line_no, "missing header row");

  ValidationReport report = ValidateDataset(d);
  if (!report.ok()) {
    const Violation& v = report.violations.front();
    throw ValidationError(0, v.location + ": " + v.message);
  }
  return d;
}

Dataset ParseDataset(const std::filesystem::path& path) {
  std::ifstream in(ResolveDatasetPath(path));
  if (!in) throw ParseError(0, "cannot open " + path.string());
  return ParseDataset(in);
}

void WriteDataset(const Dataset& d, std::ostream& out) {
  const ScreenGeometry& g = d.geometry;
  out << "# gazedp-dataset,1\n";
  out << "# levels," << d.levels << "\n";
  out << "# geometry," << csv::FormatDouble(g.width_px) << ','
      << csv::FormatDouble(g.height_px) << ',' << csv::FormatDouble(g.width_mm)
      << ',' << csv::FormatDouble(g.height_mm) << ','
      << csv::FormatDouble(g.eye_distance_mm) << ','
      << csv::FormatDouble(g.sample_rate_hz) << "\n";
  for (const ParticipantProfile& p : d.profiles) {
    out << "# "
        << csv::JoinLine({"participant", p.participant_id,
                          std::to_string(p.age_years), p.gender, p.nationality,
                          p.privacy_expert ? "1" : "0"})
        << "\n";
  }
  std::vector<std::string> header(kColumns.begin(), kColumns.end());
  out << csv::JoinLine(header) << "\n";

  for (const Trial& t : d.trials) {
    const std::string prefix =
        csv::JoinLine({t.participant_id, std::to_string(t.block),
                       std::string(TaskKindName(t.task_kind)), t.stimulus_id,
                       t.attribute, std::string(CategoryName(t.category)),
                       std::to_string(t.rating_l),
                       csv::FormatDouble(t.response_time_ms)});
    for (const GazeSample& s : t.samples) {
      out << prefix << ',' << s.t_us << ',' << csv::FormatDouble(s.x_px) << ','
          << csv::FormatDouble(s.y_px) << ','
          << (s.pupil ? csv::FormatDouble(*s.pupil) : std::string()) << ','
          << (s.valid ? '1' : '0') << '\n';
    }
  }
}

void WriteDataset(const Dataset& d, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  WriteDataset(d, out);
}

std::filesystem::path ResolveDatasetPath(const std::filesystem::path& path) {
  if (std::filesystem::is_directory(path)) return path / kDatasetFileName;
  return path;
}

}  // namespace gazedp::ingest
