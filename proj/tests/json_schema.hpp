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

// Validator for the JSON Schema keywords used by docs/run_report.schema.json:
// type, required, properties, additionalProperties, items, enum, const,
// minimum, pattern and local $ref. Unknown keywords are ignored.

#include <regex>
#include <string>
#include <vector>

#include "json.hpp"

namespace solidarity::testing {

class SchemaValidator {
 public:
  explicit SchemaValidator(nlohmann::json root) : root_(std::move(root)) {}

  // Returns one message per violation; empty means valid.
  std::vector<std::string> validate(const nlohmann::json& doc) const {
    std::vector<std::string> errors;
    check(root_, doc, "$", errors);
    return errors;
  }

 private:
  static bool has_type(const nlohmann::json& v, const std::string& t) {
    if (t == "object") return v.is_object();
    if (t == "array") return v.is_array();
    if (t == "string") return v.is_string();
    if (t == "integer") return v.is_number_integer();
    if (t == "number") return v.is_number();
    if (t == "boolean") return v.is_boolean();
    if (t == "null") return v.is_null();
    return false;
  }

  const nlohmann::json& resolve(const std::string& ref) const {
    if (ref.rfind("#/", 0) != 0) throw std::runtime_error("unsupported $ref " + ref);
    return root_.at(nlohmann::json::json_pointer(ref.substr(1)));
  }

  void check(const nlohmann::json& s, const nlohmann::json& v, const std::string& at,
             std::vector<std::string>& errors) const {
    if (s.is_boolean()) {
      if (!s.get<bool>()) errors.push_back(at + ": not allowed");
      return;
    }
    if (s.contains("$ref")) {
      check(resolve(s["$ref"].get<std::string>()), v, at, errors);
    }
    if (s.contains("type")) {
      bool ok = false;
      if (s["type"].is_array()) {
        for (const auto& t : s["type"]) ok = ok || has_type(v, t.get<std::string>());
      } else {
        ok = has_type(v, s["type"].get<std::string>());
      }
      if (!ok) {
        errors.push_back(at + ": expected type " + s["type"].dump());
        return;
      }
    }
    if (s.contains("const") && v != s["const"]) {
      errors.push_back(at + ": expected " + s["const"].dump());
    }
    if (s.contains("enum")) {
      bool found = false;
      for (const auto& e : s["enum"]) found = found || e == v;
      if (!found) errors.push_back(at + ": " + v.dump() + " not in enum");
    }
    if (s.contains("minimum") && v.is_number() &&
        v.get<double>() < s["minimum"].get<double>()) {
      errors.push_back(at + ": below minimum");
    }
    if (s.contains("pattern") && v.is_string() &&
        !std::regex_search(v.get<std::string>(), std::regex(s["pattern"].get<std::string>()))) {
      errors.push_back(at + ": does not match " + s["pattern"].get<std::string>());
    }
    if (v.is_object()) {
      if (s.contains("required")) {
        for (const auto& k : s["required"]) {
          if (!v.contains(k.get<std::string>())) {
            errors.push_back(at + ": missing " + k.get<std::string>());
          }
        }
      }
      const auto props = s.value("properties", nlohmann::json::object());
      for (const auto& [k, child] : v.items()) {
        if (props.contains(k)) {
          check(props[k], child, at + "." + k, errors);
        } else if (s.contains("additionalProperties")) {
          check(s["additionalProperties"], child, at + "." + k, errors);
        }
      }
    }
    if (v.is_array() && s.contains("items")) {
      for (std::size_t i = 0; i < v.size(); ++i) {
        check(s["items"], v[i], at + "[" + std::to_string(i) + "]", errors);
      }
    }
  }

  nlohmann::json root_;
};

}  // namespace solidarity::testing
