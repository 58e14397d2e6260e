#pragma once

// Minimal JSON-schema validator covering the keywords used by
// schema/report.schema.json: type, const, enum, required, properties,
// additionalProperties, items, minItems, maxItems, minimum,
// exclusiveMinimum, minLength. Unknown keywords are ignored.

#include <fstream>
#include <string>
#include <vector>

#include "json.hpp"

namespace biham::test {

using nlohmann::json;

inline bool matches_type(const json& v, const std::string& t) {
  if (t == "object") return v.is_object();
  if (t == "array") return v.is_array();
  if (t == "string") return v.is_string();
  if (t == "boolean") return v.is_boolean();
  if (t == "null") return v.is_null();
  if (t == "integer") return v.is_number_integer() || v.is_number_unsigned();
  if (t == "number") return v.is_number();
  return false;
}

inline void validate(const json& v, const json& s, const std::string& path,
                     std::vector<std::string>& errors) {
  auto err = [&](const std::string& what) { errors.push_back(path + ": " + what); };
  if (s.contains("type")) {
    bool ok = false;
    if (s["type"].is_array()) {
      for (const auto& t : s["type"]) ok = ok || matches_type(v, t.get<std::string>());
    } else {
      ok = matches_type(v, s["type"].get<std::string>());
    }
    if (!ok) return err("type mismatch, expected " + s["type"].dump());
  }
  if (s.contains("const") && v != s["const"]) err("const mismatch");
  if (s.contains("enum")) {
    bool found = false;
    for (const auto& e : s["enum"]) found = found || e == v;
    if (!found) err("value " + v.dump() + " not in enum");
  }
  if (v.is_number()) {
    const double x = v.get<double>();
    if (s.contains("minimum") && x < s["minimum"].get<double>()) err("below minimum");
    if (s.contains("exclusiveMinimum") && x <= s["exclusiveMinimum"].get<double>())
      err("not above exclusiveMinimum");
  }
  if (v.is_string() && s.contains("minLength") &&
      v.get<std::string>().size() < s["minLength"].get<std::size_t>())
    err("string too short");
  if (v.is_array()) {
    if (s.contains("minItems") && v.size() < s["minItems"].get<std::size_t>()) err("too few items");
    if (s.contains("maxItems") && v.size() > s["maxItems"].get<std::size_t>()) err("too many items");
    if (s.contains("items"))
      for (std::size_t i = 0; i < v.size(); ++i)
        validate(v[i], s["items"], path + "[" + std::to_string(i) + "]", errors);
  }
  if (v.is_object()) {
    if (s.contains("required"))
      for (const auto& r : s["required"])
        if (!v.contains(r.get<std::string>())) err("missing required '" + r.get<std::string>() + "'");
    const json props = s.value("properties", json::object());
    for (const auto& [key, val] : v.items()) {
      if (props.contains(key)) {
        validate(val, props[key], path + "." + key, errors);
      } else if (s.contains("additionalProperties")) {
        const json& ap = s["additionalProperties"];
        if (ap.is_boolean()) {
          if (!ap.get<bool>()) err("unexpected property '" + key + "'");
        } else {
          validate(val, ap, path + "." + key, errors);
        }
      }
    }
  }
}

inline std::vector<std::string> validate(const json& value, const json& schema) {
  std::vector<std::string> errors;
  validate(value, schema, "$", errors);
  return errors;
}

inline json load_json(const std::string& path) {
  std::ifstream in(path);
  return json::parse(in);
}

}  // namespace biham::test
