// Copyright 2026 The qcnn-sim Authors
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

// Synthetic two-class image set: label 1 is a single-colored image, label 0
// is i.i.d. uniform noise. Stored as CSV with header `label,p0,...,p{k-1}`.

#pragma once

#include <algorithm>
#include <charconv>
#include <cstdint>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "qcnn/core/sampling.hpp"
#include "qcnn/errors.hpp"

namespace qcnn {

struct LabeledImage {
  std::size_t side = 0;
  std::vector<int> pixels;  // row-major, 0..255
  int label = 0;

  bool operator==(const LabeledImage&) const = default;
};

inline bool valid_side(std::size_t side) { return side == 2 || side == 4 || side == 8; }

inline void check_side(std::size_t side) {
  if (!valid_side(side))
    throw std::invalid_argument("image side must be one of 2, 4, 8; got " + std::to_string(side));
}

inline LabeledImage gen_sample(std::size_t side, Rng& rng) {
  check_side(side);
  LabeledImage img{side, std::vector<int>(side * side, 0), static_cast<int>(rng.below(2))};
  if (img.label == 1) {
    std::fill(img.pixels.begin(), img.pixels.end(), static_cast<int>(rng.between(0, 255)));
    return img;
  }
  // A noise image that happens to be single-colored would carry the wrong
  // label; redraw it.
  do {
    for (auto& p : img.pixels) p = static_cast<int>(rng.between(0, 255));
  } while (std::all_of(img.pixels.begin(), img.pixels.end(), [&](int p) { return p == img.pixels[0]; }));
  return img;
}

inline std::vector<LabeledImage> gen_dataset(std::size_t n, std::size_t side, std::uint64_t seed) {
  if (n == 0) throw std::invalid_argument("dataset size must be at least 1");
  check_side(side);
  Rng rng(seed);
  std::vector<LabeledImage> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) out.push_back(gen_sample(side, rng));
  return out;
}

inline std::string dataset_header(std::size_t pixel_count) {
  std::string h = "label";
  for (std::size_t k = 0; k < pixel_count; ++k) h += ",p" + std::to_string(k);
  return h;
}

inline void write_dataset(std::ostream& os, const std::vector<LabeledImage>& samples) {
  if (samples.empty()) throw std::invalid_argument("refusing to write an empty dataset");
  const std::size_t k = samples.front().pixels.size();
  os << dataset_header(k) << '\n';
  for (const auto& s : samples) {
    if (s.pixels.size() != k) throw std::invalid_argument("mixed image sizes in dataset");
    os << s.label;
    for (int p : s.pixels) os << ',' << p;
    os << '\n';
  }
}

inline void save_dataset(const std::vector<LabeledImage>& samples, const std::string& path) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw std::runtime_error("cannot open " + path + " for writing");
  write_dataset(os, samples);
  if (!os) throw std::runtime_error("write failed: " + path);
}

namespace detail {

inline int parse_int_field(std::string_view field, std::size_t line) {
  int value = 0;
  const auto* end = field.data() + field.size();
  const auto [ptr, ec] = std::from_chars(field.data(), end, value);
  if (ec != std::errc() || ptr != end || field.empty())
    throw ParseError(line, "not an integer: '" + std::string(field) + "'");
  return value;
}

inline std::vector<std::string_view> split_commas(std::string_view row) {
  std::vector<std::string_view> fields;
  std::size_t start = 0;
  for (;;) {
    const std::size_t comma = row.find(',', start);
    fields.push_back(row.substr(start, comma == std::string_view::npos ? row.npos : comma - start));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return fields;
}

}  // namespace detail

inline std::vector<LabeledImage> read_dataset(std::istream& is) {
  std::string line;
  if (!std::getline(is, line)) throw ParseError(1, "missing header");
  const auto header = detail::split_commas(line);
  const std::size_t k = header.size() - 1;
  std::size_t side = 0;
  while (side * side < k) ++side;
  if (side * side != k || !valid_side(side) || line != dataset_header(k))
    throw ParseError(1, "header must be label,p0,...,p{k-1} with k in {4, 16, 64}");

  std::vector<LabeledImage> out;
  std::size_t lineno = 1;
  while (std::getline(is, line)) {
    ++lineno;
    if (line.empty()) continue;
    const auto fields = detail::split_commas(line);
    if (fields.size() != k + 1)
      throw ParseError(lineno, "expected " + std::to_string(k + 1) + " columns, found " +
                                   std::to_string(fields.size()));
    LabeledImage img{side, std::vector<int>(k), detail::parse_int_field(fields[0], lineno)};
    if (img.label != 0 && img.label != 1) throw ParseError(lineno, "label must be 0 or 1");
    for (std::size_t j = 0; j < k; ++j) {
      const int p = detail::parse_int_field(fields[j + 1], lineno);
      if (p < 0 || p > 255) throw ParseError(lineno, "pixel " + std::to_string(p) + " outside [0, 255]");
      img.pixels[j] = p;
    }
    if (img.label == 1 &&
        std::any_of(img.pixels.begin(), img.pixels.end(), [&](int p) { return p != img.pixels[0]; }))
      throw ParseError(lineno, "label 1 requires a single-colored image");
    out.push_back(std::move(img));
  }
  return out;
}

inline std::vector<LabeledImage> load_dataset(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw std::runtime_error("cannot open " + path);
  return read_dataset(is);
}

}  // namespace qcnn
