// SPDX-License-Identifier: Apache-2.0
//
// diffbeam: differential beamformer design for planar arrays of first-order elements
// Copyright (C) 2026 The diffbeam Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#include "diffbeam/io.hpp"

#include <algorithm>
#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "diffbeam/errors.hpp"

namespace diffbeam::io {
namespace {

std::string read_text(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw InvalidInput("cannot open " + path.string());
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

std::size_t line_of(const std::string& text, std::size_t byte) {
  byte = std::min(byte, text.size());
  return 1 + static_cast<std::size_t>(
                 std::count(text.begin(), text.begin() + static_cast<std::ptrdiff_t>(byte), '\n'));
}

const Json& require(const Json& obj, const std::string& field, const std::string& context) {
  if (!obj.is_object() || !obj.contains(field)) {
    throw ParseError(context + ": missing field '" + field + "'", context + "." + field);
  }
  return obj.at(field);
}

std::ofstream open_out(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) {
    throw InvalidInput("cannot write " + path.string());
  }
  return out;
}

std::string printf_double(const char* fmt, double v) {
  if (v == 0.0) {
    v = 0.0;  // drop the sign of -0
  }
  char buf[64];
  std::snprintf(buf, sizeof buf, fmt, v);
  return buf;
}

}  // namespace

std::string format_number(double v) { return printf_double("%.9g", v); }

std::string format_exact(double v) { return printf_double("%.17g", v); }

Json load_json(const std::filesystem::path& path) {
  const std::string text = read_text(path);
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    const std::size_t line = line_of(text, e.byte == 0 ? 0 : e.byte - 1);
    throw ParseError(path.string() + ":" + std::to_string(line) + ": " + e.what(), "", line);
  }
}

void save_json(const std::filesystem::path& path, const Json& doc) {
  auto out = open_out(path);
  out << doc.dump(2) << '\n';
}

double get_number(const Json& obj, const std::string& field, const std::string& context) {
  const Json& v = require(obj, field, context);
  if (!v.is_number()) {
    throw ParseError(context + ": field '" + field + "' must be a number", context + "." + field);
  }
  return v.get<double>();
}

double get_number_or(const Json& obj, const std::string& field, double fallback,
                     const std::string& context) {
  if (!obj.is_object() || !obj.contains(field)) {
    return fallback;
  }
  return get_number(obj, field, context);
}

std::int64_t get_integer(const Json& obj, const std::string& field, const std::string& context) {
  const Json& v = require(obj, field, context);
  if (!v.is_number_integer()) {
    throw ParseError(context + ": field '" + field + "' must be an integer",
                     context + "." + field);
  }
  return v.get<std::int64_t>();
}

std::string get_string(const Json& obj, const std::string& field, const std::string& context) {
  const Json& v = require(obj, field, context);
  if (!v.is_string()) {
    throw ParseError(context + ": field '" + field + "' must be a string", context + "." + field);
  }
  return v.get<std::string>();
}

ArrayGeometry geometry_from_json(const Json& doc) {
  const std::string ctx = "geometry";
  const double aperture_mm = get_number(doc, "aperture_radius_mm", ctx);
  const double spacing_mm = get_number(doc, "min_spacing_mm", ctx);
  const Json& list = require(doc, "elements", ctx);
  if (!list.is_array() || list.empty()) {
    throw ParseError("geometry: 'elements' must be a non-empty array", "geometry.elements");
  }
  std::vector<ArrayElement> elements;
  for (std::size_t m = 0; m < list.size(); ++m) {
    const std::string ectx = "geometry.elements[" + std::to_string(m) + "]";
    const Json& e = list[m];
    const double r_mm = get_number(e, "r_mm", ectx);
    const double phi_deg = get_number(e, "phi_deg", ectx);
    const double q = get_number(e, "q", ectx);
    const double steer_deg = get_number(e, "theta_steer_deg", ectx);
    try {
      elements.emplace_back(r_mm / 1000.0, deg_to_rad(phi_deg), q, deg_to_rad(steer_deg));
    } catch (const InvalidInput& err) {
      throw ParseError(ectx + ": " + err.what(), ectx);
    }
  }
  try {
    return ArrayGeometry(std::move(elements), aperture_mm / 1000.0, spacing_mm / 1000.0);
  } catch (const InvalidInput& err) {
    throw ParseError(std::string("geometry: ") + err.what(), ctx);
  }
}

Json geometry_to_json(const ArrayGeometry& geom) {
  Json doc;
  doc["aperture_radius_mm"] = geom.aperture_radius() * 1e3;
  doc["min_spacing_mm"] = geom.min_spacing() * 1e3;
  Json list = Json::array();
  for (const auto& e : geom.elements()) {
    list.push_back({{"r_mm", e.r() * 1e3},
                    {"phi_deg", rad_to_deg(e.phi())},
                    {"q", e.q()},
                    {"theta_steer_deg", rad_to_deg(e.theta_steer())}});
  }
  doc["elements"] = std::move(list);
  return doc;
}

ArrayGeometry read_geometry(const std::filesystem::path& path) {
  const Json doc = load_json(path);
  try {
    return geometry_from_json(doc);
  } catch (const ParseError& e) {
    throw ParseError(path.string() + ": " + e.what(), e.field(), e.line());
  }
}

void write_geometry(const std::filesystem::path& path, const ArrayGeometry& geom) {
  save_json(path, geometry_to_json(geom));
}

SteeredTarget PatternSpec::target() const {
  return SteeredTarget{a_to_b(coefficients), deg_to_rad(steer_deg)};
}

PatternSpec pattern_from_json(const Json& obj) {
  const std::string ctx = "pattern";
  const std::string family = get_string(obj, "family", ctx);
  const std::int64_t order = get_integer(obj, "order", ctx);
  const double steer = get_number_or(obj, "steer_deg", 0.0, ctx);
  if (order < 0 || order >= 63) {
    throw ParseError("pattern: order must lie in [0, 62]", "pattern.order");
  }
  const int n = static_cast<int>(order);
  if (family == "hypercardioid") {
    return {family, hypercardioid_coefficients(n), steer};
  }
  if (family == "cardioid_like") {
    return {family, cardioid_like_coefficients(n), steer};
  }
  if (family == "custom") {
    const Json& a = require(obj, "a", ctx);
    if (!a.is_array() || a.size() != static_cast<std::size_t>(n + 1)) {
      throw ParseError("pattern: 'a' must hold order+1 numbers", "pattern.a");
    }
    std::vector<double> coeffs;
    for (const auto& v : a) {
      if (!v.is_number()) {
        throw ParseError("pattern: 'a' must hold numbers", "pattern.a");
      }
      coeffs.push_back(v.get<double>());
    }
    return {family, normalize_distortionless(std::move(coeffs)), steer};
  }
  throw ParseError("pattern: unknown family '" + family + "'", "pattern.family");
}

Json pattern_to_json(const PatternSpec& spec) {
  Json a = Json::array();
  for (double v : spec.coefficients.a()) {
    a.push_back(v);
  }
  return {{"family", spec.family},
          {"order", spec.coefficients.order()},
          {"a", a},
          {"steer_deg", spec.steer_deg}};
}

FrequencyGrid grid_from_json(const Json& obj) {
  const std::string ctx = "grid";
  const double f_min = get_number_or(obj, "f_min_hz", 50.0, ctx);
  const double f_max = get_number_or(obj, "f_max_hz", 4000.0, ctx);
  std::int64_t count = 80;
  if (obj.is_object() && obj.contains("count")) {
    count = get_integer(obj, "count", ctx);
  }
  if (count < 1) {
    throw ParseError("grid: count must be at least 1", "grid.count");
  }
  try {
    return FrequencyGrid(f_min, f_max, static_cast<std::size_t>(count));
  } catch (const InvalidInput& e) {
    throw ParseError(std::string("grid: ") + e.what(), ctx);
  }
}

Json grid_to_json(const FrequencyGrid& grid) {
  return {{"f_min_hz", grid.f_min()}, {"f_max_hz", grid.f_max()}, {"count", grid.count()}};
}

ElementModel element_model_from_string(const std::string& name) {
  if (name == "first_order") {
    return ElementModel::FirstOrder;
  }
  if (name == "omni") {
    return ElementModel::Omni;
  }
  throw ParseError("unknown element_model '" + name + "' (expected first_order or omni)",
                   "element_model");
}

std::string to_string(ElementModel model) {
  return model == ElementModel::FirstOrder ? "first_order" : "omni";
}

void write_filter_csv(const std::filesystem::path& path, const BeamformerFilter& filter) {
  std::vector<std::string> header{"f_hz"};
  const std::size_t M = filter.weights.empty() ? 0 : static_cast<std::size_t>(filter.weights[0].size());
  for (std::size_t m = 1; m <= M; ++m) {
    header.push_back("re_h" + std::to_string(m));
    header.push_back("im_h" + std::to_string(m));
  }
  std::vector<std::vector<std::string>> rows;
  for (std::size_t k = 0; k < filter.weights.size(); ++k) {
    std::vector<std::string> row{format_exact(filter.grid.at(k))};
    for (Eigen::Index m = 0; m < filter.weights[k].size(); ++m) {
      row.push_back(format_exact(filter.weights[k](m).real()));
      row.push_back(format_exact(filter.weights[k](m).imag()));
    }
    rows.push_back(std::move(row));
  }
  write_csv(path, header, rows);
}

FilterTable read_filter_csv(const std::filesystem::path& path) {
  const std::string text = read_text(path);
  std::istringstream in(text);
  std::string line;
  std::size_t line_no = 0;
  std::size_t columns = 0;
  FilterTable table;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') {
      line.pop_back();
    }
    if (line.empty()) {
      continue;
    }
    std::vector<std::string> cells;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) {
      cells.push_back(cell);
    }
    if (line_no == 1) {
      if (cells.empty() || cells[0] != "f_hz" || cells.size() % 2 == 0) {
        throw ParseError(path.string() + ":1: expected header f_hz,re_h1,im_h1,...", "header", 1);
      }
      columns = cells.size();
      continue;
    }
    if (cells.size() != columns) {
      throw ParseError(path.string() + ":" + std::to_string(line_no) + ": expected " +
                           std::to_string(columns) + " columns, got " +
                           std::to_string(cells.size()),
                       "row", line_no);
    }
    std::vector<double> values;
    for (std::size_t c = 0; c < cells.size(); ++c) {
      try {
        std::size_t used = 0;
        values.push_back(std::stod(cells[c], &used));
        if (used != cells[c].size()) {
          throw std::invalid_argument("trailing characters");
        }
      } catch (const std::exception&) {
        throw ParseError(path.string() + ":" + std::to_string(line_no) + ": column " +
                             std::to_string(c + 1) + " is not a number",
                         "column " + std::to_string(c + 1), line_no);
      }
    }
    table.frequencies_hz.push_back(values[0]);
    Eigen::VectorXcd h((columns - 1) / 2);
    for (Eigen::Index m = 0; m < h.size(); ++m) {
      h(m) = {values[static_cast<std::size_t>(1 + 2 * m)],
              values[static_cast<std::size_t>(2 + 2 * m)]};
    }
    table.weights.push_back(std::move(h));
  }
  if (columns == 0) {
    throw ParseError(path.string() + ": empty filter file", "header", 1);
  }
  return table;
}

void write_csv(const std::filesystem::path& path, const std::vector<std::string>& header,
               const std::vector<std::vector<std::string>>& rows) {
  auto out = open_out(path);
  auto emit = [&out](const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (i) {
        out << ',';
      }
      out << cells[i];
    }
    out << '\n';
  };
  emit(header);
  for (const auto& r : rows) {
    emit(r);
  }
}

std::string hash_to_hex(std::uint64_t hash) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016" PRIx64, hash);
  return buf;
}

std::filesystem::path resolve_relative(const std::filesystem::path& config_path,
                                       const std::string& p) {
  const std::filesystem::path raw(p);
  if (raw.is_absolute()) {
    return raw;
  }
  return config_path.parent_path() / raw;
}

}  // namespace diffbeam::io
