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

// ASCII portable graymap (P2) reading and writing.

#pragma once

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstddef>
#include <fstream>
#include <istream>
#include <ostream>
#include <string>
#include <vector>

#include "qcnn/errors.hpp"

namespace qcnn {

struct GrayImage {
  std::size_t width = 0;
  std::size_t height = 0;
  std::vector<int> pixels;  // row-major, rescaled to 0..255
};

namespace detail {

// Next whitespace-separated token, skipping '#' comments.
inline bool next_pgm_token(std::istream& is, std::string& tok) {
  tok.clear();
  char ch;
  while (is.get(ch)) {
    if (ch == '#') {
      std::string ignored;
      std::getline(is, ignored);
      if (!tok.empty()) return true;
      continue;
    }
    if (std::isspace(static_cast<unsigned char>(ch))) {
      if (!tok.empty()) return true;
      continue;
    }
    tok.push_back(ch);
  }
  return !tok.empty();
}

inline long pgm_number(std::istream& is, const char* what) {
  std::string tok;
  if (!next_pgm_token(is, tok)) throw ParseError(0, std::string("PGM: missing ") + what);
  std::size_t used = 0;
  long v = 0;
  try {
    v = std::stol(tok, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != tok.size() || v < 0) throw ParseError(0, std::string("PGM: bad ") + what + " '" + tok + "'");
  return v;
}

}  // namespace detail

inline GrayImage read_pgm(std::istream& is) {
  std::string magic;
  if (!detail::next_pgm_token(is, magic) || magic != "P2") throw ParseError(0, "PGM: expected magic P2");
  GrayImage img;
  img.width = static_cast<std::size_t>(detail::pgm_number(is, "width"));
  img.height = static_cast<std::size_t>(detail::pgm_number(is, "height"));
  const long maxval = detail::pgm_number(is, "maxval");
  if (img.width == 0 || img.height == 0 || maxval < 1 || maxval > 65535)
    throw ParseError(0, "PGM: invalid header");
  img.pixels.reserve(img.width * img.height);
  for (std::size_t i = 0; i < img.width * img.height; ++i) {
    const long v = detail::pgm_number(is, "pixel");
    if (v > maxval) throw ParseError(0, "PGM: pixel exceeds maxval");
    img.pixels.push_back(static_cast<int>(std::lround(255.0 * static_cast<double>(v) / static_cast<double>(maxval))));
  }
  return img;
}

inline GrayImage load_pgm(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw std::runtime_error("cannot open " + path);
  return read_pgm(is);
}

inline void write_pgm(std::ostream& os, const GrayImage& img) {
  os << "P2\n" << img.width << ' ' << img.height << "\n255\n";
  for (std::size_t r = 0; r < img.height; ++r) {
    for (std::size_t c = 0; c < img.width; ++c) os << (c ? " " : "") << img.pixels[r * img.width + c];
    os << '\n';
  }
}

inline void save_pgm(const GrayImage& img, const std::string& path) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw std::runtime_error("cannot open " + path + " for writing");
  write_pgm(os, img);
}

/// Probability grid -> 0..255 graymap.
inline GrayImage probabilities_to_gray(std::size_t width, std::size_t height, const std::vector<double>& probs) {
  GrayImage out{width, height, {}};
  out.pixels.reserve(probs.size());
  for (double p : probs) out.pixels.push_back(static_cast<int>(std::lround(255.0 * std::clamp(p, 0.0, 1.0))));
  return out;
}

}  // namespace qcnn
