// Copyright 2026 The qdisplace Authors
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

// Line-delimited self-describing records: `kind key=value key=value ...`.
// Field order is fixed by the writer, numbers are printed with 17 significant
// digits, so identical requests serialize to identical bytes.

#pragma once

#include <cstdint>
#include <cstdio>
#include <string>
#include <string_view>

#include "qdisplace/core.hpp"

namespace qdisplace {

inline std::string format_real(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

inline std::string format_complex(Complex c) {
  char buf[96];
  std::snprintf(buf, sizeof(buf), "%.17g%+.17gi", c.real(), c.imag());
  return buf;
}

class RecordWriter {
 public:
  explicit RecordWriter(std::string_view kind) : line_(kind) {}

  RecordWriter& field(std::string_view key, std::string_view value) {
    line_ += ' ';
    line_ += key;
    line_ += '=';
    line_ += value;
    return *this;
  }

  RecordWriter& field(std::string_view key, double value) {
    return field(key, format_real(value));
  }

  RecordWriter& field(std::string_view key, std::uint64_t value) {
    return field(key, std::to_string(value));
  }

  RecordWriter& field(std::string_view key, int value) {
    return field(key, std::to_string(value));
  }

  RecordWriter& field(std::string_view key, const std::vector<Complex>& values) {
    std::string joined;
    for (std::size_t i = 0; i < values.size(); ++i) {
      if (i) joined += ';';
      joined += format_complex(values[i]);
    }
    return field(key, joined);
  }

  const std::string& line() const { return line_; }

 private:
  std::string line_;
};

}  // namespace qdisplace
