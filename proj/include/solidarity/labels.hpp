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


#pragma once

#include <array>
#include <optional>
#include <string_view>

namespace solidarity {

// Annotation-guideline encoding; the integer values are part of the file
// formats and must not change.
enum class LabelFine : int {
  Solidarity = 0,
  AntiSolidarity = 1,
  Ambivalent = 2,
  NotApplicable = 3,
};

// Three-class task label. Index order S < A < O is used for every vector,
// matrix row and tie-break in the project.
enum class LabelCoarse : int { S = 0, A = 1, O = 2 };

inline constexpr std::size_t kNumCoarse = 3;
inline constexpr std::size_t kNumFine = 4;
inline constexpr std::array<LabelCoarse, kNumCoarse> kCoarseLabels = {
    LabelCoarse::S, LabelCoarse::A, LabelCoarse::O};

constexpr LabelCoarse collapse_label(LabelFine l) {
  switch (l) {
    case LabelFine::Solidarity:
      return LabelCoarse::S;
    case LabelFine::AntiSolidarity:
      return LabelCoarse::A;
    case LabelFine::Ambivalent:
    case LabelFine::NotApplicable:
      return LabelCoarse::O;
  }
  return LabelCoarse::O;
}

constexpr std::size_t index(LabelCoarse l) { return static_cast<std::size_t>(l); }
constexpr std::size_t index(LabelFine l) { return static_cast<std::size_t>(l); }

std::string_view to_string(LabelCoarse l);
std::optional<LabelCoarse> parse_coarse(std::string_view s);

// "0".."3"
std::optional<LabelFine> parse_fine(std::string_view s);
std::string_view to_string(LabelFine l);

}  // namespace solidarity
