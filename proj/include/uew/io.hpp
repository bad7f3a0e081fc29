// Copyright 2026 The uew Authors
//
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

// File formats.
//
// Operator JSON:  {"dims":[dA,dB],"matrix":[[[re,im],...],...]}  (row-major)
// State JSON:     the same object with "kind":"density".
// CSV:            header row, LF endings, shortest round-trip decimals.

#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "uew/analysis.hpp"
#include "uew/linalg.hpp"
#include "uew/states.hpp"

namespace uew {

/// Hermiticity tolerance applied when loading files.
inline constexpr double kLoadTolerance = 1e-10;

HermitianOperator parse_operator_json(std::string_view text);
DensityMatrix parse_state_json(std::string_view text);

std::string operator_to_json(const HermitianOperator& op);
std::string state_to_json(const DensityMatrix& rho);

HermitianOperator read_operator_file(const std::filesystem::path& path);
DensityMatrix read_state_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, std::string_view text);

/// Shortest decimal that parses back to the same double.
std::string format_number(double v);

/// alpha,bound,threshold_p
std::string sweep_csv(const std::vector<SweepRow>& rows);
/// label,x,y
std::string plane_csv(const std::vector<PlaneSample>& samples);

/// Parses a real literal or a ratio "p/q".
double parse_real(std::string_view text);

}  // namespace uew
