// Copyright 2026 The BOPT-VQE Authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at

//     http://www.apache.org/licenses/LICENSE-2.0

// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
/**
 * @file
 * RunRecord CSV files (schema bopt-v1).
 *
 * The file starts with comment lines
 *
 *     # bopt-v1
 *     # arm=<name>
 *     # seed=<k>
 *     # dim=<d>
 *     # warning=<text>      (zero or more)
 *
 * followed by the column header and one row per objective query. Reals are
 * printed with 17 significant digits and theta is a JSON array in one quoted
 * column, so parsing an emitted record reproduces it exactly. Wall-clock time
 * is not stored.
 */
#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "bopt/bopt.hpp"

namespace bopt {

inline constexpr std::string_view kRecordSchema = "bopt-v1";

std::string record_to_csv(const RunRecord &record);
/// Throws DataError on a missing schema tag or malformed rows.
RunRecord record_from_csv(std::string_view text);

void write_record(const std::filesystem::path &path, const RunRecord &record);
RunRecord read_record(const std::filesystem::path &path);

/// %.17g, with "nan" and "inf" spelled without sign ambiguity.
std::string format_real(double value);

} // namespace bopt
