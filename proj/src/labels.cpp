// Copyright 2026 The Solidarity Authors.
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


#include "solidarity/labels.hpp"

namespace solidarity {

std::string_view to_string(LabelCoarse l) {
  switch (l) {
    case LabelCoarse::S:
      return "S";
    case LabelCoarse::A:
      return "A";
    case LabelCoarse::O:
      return "O";
  }
  return "?";
}

std::optional<LabelCoarse> parse_coarse(std::string_view s) {
  if (s == "S") return LabelCoarse::S;
  if (s == "A") return LabelCoarse::A;
  if (s == "O") return LabelCoarse::O;
  return std::nullopt;
}

std::optional<LabelFine> parse_fine(std::string_view s) {
  if (s.size() != 1 || s[0] < '0' || s[0] > '3') return std::nullopt;
  return static_cast<LabelFine>(s[0] - '0');
}

std::string_view to_string(LabelFine l) {
  static constexpr std::string_view kNames[] = {"0", "1", "2", "3"};
  return kNames[index(l)];
}

}  // namespace solidarity
