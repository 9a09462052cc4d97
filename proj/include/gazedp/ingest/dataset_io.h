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

#ifndef GAZEDP_INGEST_DATASET_IO_H_
#define GAZEDP_INGEST_DATASET_IO_H_

#include <filesystem>
#include <iosfwd>

#include "gazedp/ingest/dataset.h"

namespace gazedp::ingest {

// Flat-table dataset file.
//
// Leading lines starting with '#' carry dataset-level metadata:
//   # gazedp-dataset,1
//   # levels,<L>
//   # geometry,<width_px>,<height_px>,<width_mm>,<height_mm>,<eye_mm>,<hz>
//   # participant,<id>,<age>,<gender>,<nationality>,<expert 0|1>
// followed by the mandatory header row
//   participant,block,task,stimulus,attribute,category,rating,
//   response_time_ms,t_us,x_px,y_px,pupil,valid
// and one row per gaze sample. A new trial starts whenever the
// (participant, stimulus, task) triple changes. An empty pupil field means
// the pupil was not measured for that sample.
inline constexpr char kDatasetFileName[] = "dataset.csv";

// Throws ParseError (malformed row), SchemaError (unknown attribute or
// category) or ValidationError (an invariant fails). Each carries the
// offending 1-based line number when one applies.
Dataset ParseDataset(std::istream& in);
Dataset ParseDataset(const std::filesystem::path& path);

void WriteDataset(const Dataset& d, std::ostream& out);
void WriteDataset(const Dataset& d, const std::filesystem::path& path);

// Accepts either a dataset file or a directory containing kDatasetFileName.
std::filesystem::path ResolveDatasetPath(const std::filesystem::path& path);

}  // namespace gazedp::ingest

#endif  // GAZEDP_INGEST_DATASET_IO_H_
