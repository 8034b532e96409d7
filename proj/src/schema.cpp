#include "gramex/schema.hpp"

#include <cmath>

#include "gramex/schema_embed.hpp"
#include "gramex/util.hpp"

namespace gramex {

using nlohmann::json;

namespace {

bool has_type(const json& v, const std::string& type) {
  if (type == "object") return v.is_object();
  if (type == "array") return v.is_array();
  if (type == "string") return v.is_string();
  if (type == "boolean") return v.is_boolean();
  if (type == "null") return v.is_null();
  if (type == "number") return v.is_number();
  if (type == "integer") {
    if (v.is_number_integer()) return true;
    if (v.is_number_float()) {
      const double d = v.get<double>();
      return std::isfinite(d) && std::floor(d) == d;
    }
    return false;
  }
  throw Error("schema: unknown type '" + type + "'");
}

std::string escape_pointer(const std::string& key) {
  std::string out;
  for (char c : key) {
    if (c == '~') out += "~0";
    else if (c == '/') out += "~1";
    else out += c;
  }
  return out;
}

class Checker {
 public:
  explicit Checker(const json& root) : root_(root) {}

  void check(const json& v, const json& schema, const std::string& at) {
    if (schema.is_boolean()) {
      if (!schema.get<bool>()) fail(at, "no value allowed here");
      return;
    }
    if (auto ref = schema.find("$ref"); ref != schema.end()) {
      check(v, resolve(ref->get<std::string>()), at);
      return;
    }
    if (auto t = schema.find("type"); t != schema.end()) {
      bool ok = false;
      if (t->is_array()) {
        for (const auto& one : *t) ok = ok || has_type(v, one.get<std::string>());
      } else {
        ok = has_type(v, t->get<std::string>());
      }
      if (!ok) {
        fail(at, "expected type " + t->dump() + ", got " + v.type_name());
        return;
      }
    }
    if (auto e = schema.find("enum"); e != schema.end()) {
      bool ok = false;
      for (const auto& one : *e) ok = ok || one == v;
      if (!ok) fail(at, "value " + v.dump() + " not in " + e->dump());
    }
    if (v.is_number()) {
      const double d = v.get<double>();
      if (auto m = schema.find("minimum"); m != schema.end() && d < m->get<double>())
        fail(at, "below minimum " + m->dump());
      if (auto m = schema.find("maximum"); m != schema.end() && d > m->get<double>())
        fail(at, "above maximum " + m->dump());
    }
    if (v.is_array()) {
      if (auto m = schema.find("minItems"); m != schema.end() && v.size() < m->get<std::size_t>())
        fail(at, "fewer than " + m->dump() + " items");
      if (auto items = schema.find("items"); items != schema.end()) {
        for (std::size_t i = 0; i < v.size(); ++i) check(v[i], *items, at + "/" + std::to_string(i));
      }
    }
    if (v.is_object()) {
      if (auto req = schema.find("required"); req != schema.end()) {
        for (const auto& key : *req) {
          if (!v.contains(key.get<std::string>())) fail(at, "missing required property '" + key.get<std::string>() + "'");
        }
      }
      const json* props = nullptr;
      if (auto p = schema.find("properties"); p != schema.end()) props = &*p;
      const auto extra = schema.find("additionalProperties");
      for (const auto& [key, value] : v.items()) {
        const std::string child = at + "/" + escape_pointer(key);
        if (props && props->contains(key)) {
          check(value, (*props)[key], child);
        } else if (extra != schema.end()) {
          check(value, *extra, child);
        }
      }
    }
  }

  std::vector<std::string> errors;

 private:
  const json& resolve(const std::string& ref) {
    const std::string prefix = "#/definitions/";
    if (!starts_with(ref, prefix)) throw Error("schema: unsupported $ref '" + ref + "'");
    const auto& defs = root_.at("definitions");
    auto it = defs.find(ref.substr(prefix.size()));
    if (it == defs.end()) throw Error("schema: unresolved $ref '" + ref + "'");
    return *it;
  }

  void fail(const std::string& at, const std::string& what) { errors.push_back((at.empty() ? "/" : at) + ": " + what); }

  const json& root_;
};

}  // namespace

std::vector<std::string> validate_schema(const json& instance, const json& schema) {
  Checker checker(schema);
  checker.check(instance, schema, "");
  return std::move(checker.errors);
}

const json& bundle_schema() {
  static const json schema = json::parse(detail::kBundleSchema);
  return schema;
}

}  // namespace gramex
