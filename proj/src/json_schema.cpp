#include "qshift/json_schema.hpp"

#include <regex>

namespace qshift {

namespace {

using nlohmann::json;

bool has_type(const json& v, const std::string& type) {
  if (type == "object") return v.is_object();
  if (type == "array") return v.is_array();
  if (type == "string") return v.is_string();
  if (type == "boolean") return v.is_boolean();
  if (type == "null") return v.is_null();
  if (type == "integer") return v.is_number_integer();
  if (type == "number") return v.is_number();
  return false;
}

class Validator {
 public:
  explicit Validator(const json& root) : root_(root) {}

  void check(const json& v, const json& s, const std::string& path, std::vector<std::string>& errs) const {
    if (s.is_boolean()) {
      if (!s.get<bool>()) errs.push_back(path + ": no value allowed here");
      return;
    }
    if (s.contains("$ref")) {
      check(v, resolve(s["$ref"].get<std::string>()), path, errs);
    }
    if (s.contains("type")) {
      const json& t = s["type"];
      bool ok = false;
      if (t.is_array()) {
        for (const auto& x : t) ok = ok || has_type(v, x.get<std::string>());
      } else {
        ok = has_type(v, t.get<std::string>());
      }
      if (!ok) {
        errs.push_back(path + ": expected type " + t.dump());
        return;
      }
    }
    if (s.contains("enum")) {
      bool ok = false;
      for (const auto& x : s["enum"]) ok = ok || x == v;
      if (!ok) errs.push_back(path + ": value " + v.dump() + " not in enum");
    }
    if (s.contains("const") && s["const"] != v) errs.push_back(path + ": expected " + s["const"].dump());
    if (v.is_number() && s.contains("minimum") && v.get<double>() < s["minimum"].get<double>()) {
      errs.push_back(path + ": below minimum");
    }
    if (v.is_string()) {
      const auto str = v.get<std::string>();
      if (s.contains("minLength") && str.size() < s["minLength"].get<std::size_t>()) errs.push_back(path + ": string too short");
      if (s.contains("pattern") && !std::regex_search(str, std::regex(s["pattern"].get<std::string>()))) {
        errs.push_back(path + ": '" + str + "' does not match pattern");
      }
    }
    if (v.is_object()) check_object(v, s, path, errs);
    if (v.is_array() && s.contains("items")) {
      for (std::size_t i = 0; i < v.size(); ++i) check(v[i], s["items"], path + "/" + std::to_string(i), errs);
    }
    if (s.contains("allOf")) {
      for (const auto& sub : s["allOf"]) check(v, sub, path, errs);
    }
    if (s.contains("anyOf")) {
      bool ok = false;
      for (const auto& sub : s["anyOf"]) {
        std::vector<std::string> trial;
        check(v, sub, path, trial);
        ok = ok || trial.empty();
      }
      if (!ok) errs.push_back(path + ": matches none of anyOf");
    }
    if (s.contains("if")) {
      std::vector<std::string> trial;
      check(v, s["if"], path, trial);
      if (trial.empty() && s.contains("then")) check(v, s["then"], path, errs);
      if (!trial.empty() && s.contains("else")) check(v, s["else"], path, errs);
    }
  }

 private:
  void check_object(const json& v, const json& s, const std::string& path, std::vector<std::string>& errs) const {
    if (s.contains("required")) {
      for (const auto& key : s["required"]) {
        if (!v.contains(key.get<std::string>())) errs.push_back(path + ": missing required property " + key.dump());
      }
    }
    const json* props = s.contains("properties") ? &s["properties"] : nullptr;
    for (const auto& [key, value] : v.items()) {
      const std::string sub = path + "/" + key;
      if (s.contains("propertyNames")) check(json(key), s["propertyNames"], sub, errs);
      if (props && props->contains(key)) {
        check(value, (*props)[key], sub, errs);
      } else if (s.contains("additionalProperties")) {
        check(value, s["additionalProperties"], sub, errs);
      }
    }
  }

  const json& resolve(const std::string& ref) const {
    if (ref.rfind("#/", 0) != 0) throw std::invalid_argument("only local references are supported: " + ref);
    const json* node = &root_;
    std::size_t pos = 2;
    while (pos <= ref.size()) {
      const std::size_t next = ref.find('/', pos);
      const std::string part = ref.substr(pos, next == std::string::npos ? std::string::npos : next - pos);
      node = &node->at(part);
      if (next == std::string::npos) break;
      pos = next + 1;
    }
    return *node;
  }

  const json& root_;
};

}  // namespace

const nlohmann::json& report_schema() {
  static const nlohmann::json schema = nlohmann::json::parse(kReportSchemaText);
  return schema;
}

std::vector<std::string> validate_json(const nlohmann::json& instance, const nlohmann::json& schema) {
  std::vector<std::string> errs;
  Validator(schema).check(instance, schema, "", errs);
  return errs;
}

}  // namespace qshift
