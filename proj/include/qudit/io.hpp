// Copyright 2026 The qudit-gates Authors
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

#pragma once

// File formats.
//
//   matrix        {"dim": d, "re": [[...]], "im": [[...]]}          row-major
//   coefficients  {"dim": d, "h_re": [[...]], "h_im": [[...]]}      (l, m) = (row, col)
//   circuit       {"dim": 4, "oam_offset": -2, "elements": [...], "input": "in", "output": "out"}
//   count matrix  CSV, header "input\output,<labels>", one row per input label
//
// Parse failures throw FormatError naming the offending field.

#include "qudit/core.hpp"
#include "qudit/optics.hpp"
#include "qudit/weyl.hpp"

#include <json.hpp>

#include <filesystem>
#include <string>

namespace qudit::io {

using nlohmann::json;

json matrix_to_json(const GateMatrix& g);
GateMatrix matrix_from_json(const json& j);

json coefficients_to_json(const WeylCoefficients& h);
WeylCoefficients coefficients_from_json(const json& j);

json element_to_json(const optics::OpticalElement& e);
optics::OpticalElement element_from_json(const json& j);

json circuit_to_json(const optics::OpticalCircuit& c);
/// Also surfaces CircuitError for topologically invalid element lists.
optics::OpticalCircuit circuit_from_json(const json& j);

/// Probabilities with 6 decimals; counts as integers.
std::string count_matrix_to_csv(const optics::CountMatrix& m);
/// Cells that are all integral are read as counts, otherwise as probabilities.
optics::CountMatrix count_matrix_from_csv(const std::string& text);

json count_matrix_to_json(const optics::CountMatrix& m);

/// Throws FormatError("file", ...) when unreadable.
std::string read_file(const std::filesystem::path& path);
json parse_json(const std::string& text);

}  // namespace qudit::io
