// Copyright 2026 The corrgame Authors
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

#include "parse_util.hpp"

#include <cmath>
#include <cstdlib>
#include <string>

#include "corrgame/errors.hpp"

namespace corrgame::detail {

std::vector<double> parse_real_list(std::string_view text, std::string_view what) {
  std::vector<double> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = text.find(',', start);
    const std::string field(text.substr(start, comma == std::string_view::npos
                                                   ? std::string_view::npos
                                                   : comma - start));
    // strtod rather than from_chars: libstdc++ 11 lacks floating from_chars
    // on some targets.
    char* end = nullptr;
    const double value = std::strtod(field.c_str(), &end);
    const bool consumed = end != field.c_str() &&
                          std::string_view(end).find_first_not_of(" \t") ==
                              std::string_view::npos;
    if (field.empty() || !consumed || !std::isfinite(value)) {
      throw PreconditionError("malformed " + std::string(what) + " \"" +
                              std::string(text) + "\"");
    }
    out.push_back(value);
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

}  // namespace corrgame::detail
