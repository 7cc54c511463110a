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

#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace qcnn {

/// Raised when a frontier evaluation would need more simultaneously active
/// wires than the configured cap allows.
class ResourceLimitError : public std::runtime_error {
 public:
  ResourceLimitError(std::size_t peak_width, std::size_t cap)
      : std::runtime_error("frontier width limit exceeded: peak active width " +
                           std::to_string(peak_width) + " > cap " + std::to_string(cap)),
        peak_width_(peak_width),
        cap_(cap) {}

  std::size_t peak_width() const noexcept { return peak_width_; }
  std::size_t cap() const noexcept { return cap_; }

 private:
  std::size_t peak_width_;
  std::size_t cap_;
};

/// Malformed input file. `line` is 1-based; 0 when not tied to a line.
class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : std::runtime_error(line ? "line " + std::to_string(line) + ": " + what : what), line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

}  // namespace qcnn
