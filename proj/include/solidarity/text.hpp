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

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace solidarity::text {

// Decodes UTF-8 into code points. Invalid sequences decode to U+FFFD,
// consuming one byte, so decoding never fails.
std::vector<char32_t> decode_utf8(std::string_view s);

void append_utf8(std::string& out, char32_t cp);
std::string encode_utf8(const std::vector<char32_t>& cps);

// Unicode general category L* (any letter).
bool is_letter(char32_t cp);
// Unicode Nd.
bool is_digit(char32_t cp);
// Letter, decimal digit or '_': the characters allowed inside hashtags and
// word tokens.
bool is_word_char(char32_t cp);

// Simple (one-to-one) Unicode lowercase mapping.
char32_t to_lower(char32_t cp);
std::string to_lower(std::string_view utf8);
std::string to_upper(std::string_view utf8);

// Stable 64-bit FNV-1a over the bytes of s.
std::uint64_t fnv1a64(std::string_view s);

}  // namespace solidarity::text
