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

#include "uew/io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "json.hpp"
#include "uew/error.hpp"

namespace uew {
namespace {

using nlohmann::json;

json parse_or_fail(std::string_view text) {
  try {
    return json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    fail(ErrorCode::kParse, std::string("invalid JSON: ") + e.what());
  }
}

std::size_t positive_int(const json& v, const char* what) {
  if (!v.is_number_integer() || v.get<long long>() <= 0) {
    fail(ErrorCode::kParse, std::string(what) + " must be a positive integer");
  }
  return static_cast<std::size_t>(v.get<long long>());
}

HermitianOperator operator_from(const json& doc) {
  if (!doc.is_object()) fail(ErrorCode::kParse, "expected a JSON object");
  if (!doc.contains("dims") || !doc["dims"].is_array() || doc["dims"].size() != 2) {
    fail(ErrorCode::kParse, "\"dims\" must be an array [dA, dB]");
  }
  const Dims dims{positive_int(doc["dims"][0], "dims[0]"),
                  positive_int(doc["dims"][1], "dims[1]")};
  if (dims.total() > kMaxDimension) {
    fail(ErrorCode::kTooLarge, "operator dimension exceeds the supported size");
  }
  if (!doc.contains("matrix") || !doc["matrix"].is_array()) {
    fail(ErrorCode::kParse, "\"matrix\" must be an array of rows");
  }
  const json& rows = doc["matrix"];
  const std::size_t n = dims.total();
  if (rows.size() != n) {
    fail(ErrorCode::kDimensionMismatch, "matrix row count does not match dims");
  }
  std::vector<Complex> m(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    if (!rows[i].is_array() || rows[i].size() != n) {
      fail(ErrorCode::kDimensionMismatch, "matrix is not square of size dA*dB");
    }
    for (std::size_t j = 0; j < n; ++j) {
      const json& z = rows[i][j];
      if (!z.is_array() || z.size() != 2 || !z[0].is_number() || !z[1].is_number()) {
        fail(ErrorCode::kParse, "matrix entries must be [re, im] pairs");
      }
      m[i * n + j] = Complex(z[0].get<double>(), z[1].get<double>());
    }
  }
  return HermitianOperator::from_entries(dims, std::move(m), kLoadTolerance);
}

json to_json(const HermitianOperator& op) {
  const std::size_t n = op.dim();
  json rows = json::array();
  for (std::size_t i = 0; i < n; ++i) {
    json row = json::array();
    for (std::size_t j = 0; j < n; ++j) {
      row.push_back(json::array({op(i, j).real(), op(i, j).imag()}));
    }
    rows.push_back(std::move(row));
  }
  return json{{"dims", {op.dims().a, op.dims().b}}, {"matrix", std::move(rows)}};
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorCode::kIo, "cannot open " + path.string());
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

std::string csv_field(std::string_view s) {
  if (s.find_first_of(",\"\n\r") == std::string_view::npos) return std::string(s);
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out += '"';
    out += ch;
  }
  out += '"';
  return out;
}

}  // namespace

HermitianOperator parse_operator_json(std::string_view text) {
  const json doc = parse_or_fail(text);
  if (doc.is_object() && doc.contains("kind") &&
      !(doc["kind"] == "operator" || doc["kind"] == "density")) {
    fail(ErrorCode::kParse, "unknown \"kind\"");
  }
  return operator_from(doc);
}

DensityMatrix parse_state_json(std::string_view text) {
  const json doc = parse_or_fail(text);
  if (!doc.is_object() || !doc.contains("kind") || doc["kind"] != "density") {
    fail(ErrorCode::kNotState, "state files need \"kind\": \"density\"");
  }
  return DensityMatrix::from_operator(operator_from(doc));
}

std::string operator_to_json(const HermitianOperator& op) {
  return to_json(op).dump() + "\n";
}

std::string state_to_json(const DensityMatrix& rho) {
  json doc = to_json(rho.op());
  doc["kind"] = "density";
  return doc.dump() + "\n";
}

HermitianOperator read_operator_file(const std::filesystem::path& path) {
  try {
    return parse_operator_json(read_file(path));
  } catch (const Error& e) {
    throw Error(e.code(), path.string() + ": " + e.what());
  }
}

DensityMatrix read_state_file(const std::filesystem::path& path) {
  try {
    return parse_state_json(read_file(path));
  } catch (const Error& e) {
    throw Error(e.code(), path.string() + ": " + e.what());
  }
}

void write_text_file(const std::filesystem::path& path, std::string_view text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(ErrorCode::kIo, "cannot write " + path.string());
  out << text;
  if (!out) fail(ErrorCode::kIo, "write failed for " + path.string());
}

std::string format_number(double v) {
  if (std::isinf(v)) return v < 0 ? "-inf" : "inf";
  if (std::isnan(v)) return "nan";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

std::string sweep_csv(const std::vector<SweepRow>& rows) {
  std::string out = "alpha,bound,threshold_p\n";
  for (const SweepRow& r : rows) {
    out += format_number(r.alpha);
    out += ',';
    out += format_number(r.bound);
    out += ',';
    out += r.threshold_p ? format_number(*r.threshold_p) : "none";
    out += '\n';
  }
  return out;
}

std::string plane_csv(const std::vector<PlaneSample>& samples) {
  std::string out = "label,x,y\n";
  for (const PlaneSample& s : samples) {
    out += csv_field(s.label);
    out += ',';
    out += format_number(s.x);
    out += ',';
    out += format_number(s.y);
    out += '\n';
  }
  return out;
}

double parse_real(std::string_view text) {
  auto number = [](std::string_view s) {
    double v = 0.0;
    const char* first = s.data();
    const char* last = s.data() + s.size();
    if (!s.empty() && *first == '+') ++first;
    const auto res = std::from_chars(first, last, v);
    if (res.ec != std::errc() || res.ptr != last || s.empty()) {
      fail(ErrorCode::kParse, "not a number: '" + std::string(s) + "'");
    }
    return v;
  };
  const std::size_t slash = text.find('/');
  if (slash == std::string_view::npos) return number(text);
  const double num = number(text.substr(0, slash));
  const double den = number(text.substr(slash + 1));
  if (den == 0.0) fail(ErrorCode::kParse, "zero denominator in ratio");
  return num / den;
}

}  // namespace uew
