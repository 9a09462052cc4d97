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

#ifndef GAZEDP_COMMON_CSV_H_
#define GAZEDP_COMMON_CSV_H_

#include <string>
#include <string_view>
#include <vector>

namespace gazedp::csv {

// Splits one comma-separated line. Fields may be double-quoted; a doubled
// quote inside a quoted field is a literal quote. Throws ParseError on an
// unterminated quote.
std::vector<std::string> SplitLine(std::string_view line, std::size_t line_no);

// Quotes the field only when it contains a comma, quote or newline.
std::string Escape(std::string_view field);

std::string JoinLine(const std::vector<std::string>& fields);

// Shortest representation that parses back to the same double.
std::string FormatDouble(double value);

// Strict numeric parsing: the entire field must be consumed.
double ParseDouble(std::string_view field, std::size_t line_no,
                   std::string_view column);
long long ParseInt(std::string_view field, std::size_t line_no,
                   std::string_view column);

}  // namespace gazedp::csv

#endif  // GAZEDP_COMMON_CSV_H_
