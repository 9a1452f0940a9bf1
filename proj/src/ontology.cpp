#include "accord/ontology.hpp"

#include <algorithm>
#include <set>
#include <unordered_map>

#include <json.hpp>

#include "accord/error.hpp"
#include "accord/io.hpp"
#include "json_util.hpp"

namespace accord {

using nlohmann::json;
using nlohmann::ordered_json;

std::string_view to_string(Datatype d) {
  switch (d) {
    case Datatype::String: return "string";
    case Datatype::Integer: return "integer";
    case Datatype::Decimal: return "decimal";
    case Datatype::Date: return "date";
    case Datatype::Boolean: return "boolean";
  }
  return "string";
}

std::optional<Datatype> parse_datatype(std::string_view s) {
  if (s == "string") return Datatype::String;
  if (s == "integer") return Datatype::Integer;
  if (s == "decimal") return Datatype::Decimal;
  if (s == "date") return Datatype::Date;
  if (s == "boolean") return Datatype::Boolean;
  return std::nullopt;
}

const PropertyDef* ClassDef::find_property(std::string_view property_id) const {
  for (const auto& p : properties)
    if (p.id == property_id) return &p;
  return nullptr;
}

const ClassDef* Ontology::find_class(std::string_view class_id) const {
  for (const auto& c : classes)
    if (c.id == class_id) return &c;
  return nullptr;
}

ClassDef* Ontology::find_class(std::string_view class_id) {
  for (auto& c : classes)
    if (c.id == class_id) return &c;
  return nullptr;
}

std::vector<std::string> Ontology::children_of(std::string_view class_id) const {
  std::vector<std::string> out;
  for (const auto& c : classes)
    if (c.parent && *c.parent == class_id) out.push_back(c.id);
  return out;
}

void validate(const Ontology& o) {
  if (o.version < 0) throw ValidationError("negative version " + std::to_string(o.version));
  std::unordered_map<std::string_view, const ClassDef*> by_id;
  for (const auto& c : o.classes) {
    if (c.id.empty()) throw ValidationError("class with empty id");
    if (c.label.empty()) throw ValidationError("class '" + c.id + "' has an empty label");
    if (!by_id.emplace(c.id, &c).second) throw ValidationError("duplicate class id '" + c.id + "'");
    std::set<std::string_view> prop_ids;
    for (const auto& p : c.properties) {
      if (p.id.empty()) throw ValidationError("property with empty id in class '" + c.id + "'");
      if (p.label.empty())
        throw ValidationError("property '" + p.id + "' in class '" + c.id + "' has an empty label");
      if (!prop_ids.insert(p.id).second)
        throw ValidationError("duplicate property id '" + p.id + "' in class '" + c.id + "'");
    }
  }
  for (const auto& c : o.classes) {
    if (c.parent && !by_id.contains(*c.parent))
      throw ValidationError("class '" + c.id + "' has dangling parent '" + *c.parent + "'");
  }
  // Walk each parent chain; a chain longer than the class count must revisit a node.
  for (const auto& c : o.classes) {
    const ClassDef* cur = &c;
    std::size_t steps = 0;
    while (cur->parent) {
      cur = by_id.at(*cur->parent);
      if (++steps > o.classes.size())
        throw ValidationError("cyclic parent chain through class '" + c.id + "'");
    }
  }
}

Ontology canonicalize(Ontology o) {
  std::sort(o.classes.begin(), o.classes.end(),
            [](const ClassDef& a, const ClassDef& b) { return a.id < b.id; });
  for (auto& c : o.classes)
    std::sort(c.properties.begin(), c.properties.end(),
              [](const PropertyDef& a, const PropertyDef& b) { return a.id < b.id; });
  return o;
}

namespace {

PropertyDef read_property(const json& j, const std::string& where) {
  detail::require_keys(j, {"id", "label", "datatype"}, where);
  PropertyDef p;
  p.id = detail::get_string(j, "id", where);
  p.label = detail::get_string(j, "label", where);
  const auto dt = detail::get_string(j, "datatype", where);
  const auto parsed = parse_datatype(dt);
  if (!parsed) throw ValidationError(where + ": unknown datatype '" + dt + "'");
  p.datatype = *parsed;
  return p;
}

ClassDef read_class(const json& j, const std::string& where) {
  detail::require_keys(j, {"id", "label", "parent", "properties"}, where);
  ClassDef c;
  c.id = detail::get_string(j, "id", where);
  c.label = detail::get_string(j, "label", where);
  const auto& parent = j.at("parent");
  if (parent.is_string()) {
    c.parent = parent.get<std::string>();
  } else if (!parent.is_null()) {
    throw ValidationError(where + ": 'parent' must be a string or null");
  }
  const auto& props = j.at("properties");
  if (!props.is_array()) throw ValidationError(where + ": 'properties' must be an array");
  for (std::size_t i = 0; i < props.size(); ++i)
    c.properties.push_back(read_property(props[i], where + ".properties[" + std::to_string(i) + "]"));
  return c;
}

}  // namespace

Ontology parse_ontology(std::string_view text) {
  const json doc = detail::parse_json(text);
  detail::require_keys(doc, {"name", "version", "classes"}, "ontology");
  Ontology o;
  o.name = detail::get_string(doc, "name", "ontology");
  const auto& version = doc.at("version");
  if (!version.is_number_integer()) throw ValidationError("ontology: 'version' must be an integer");
  o.version = version.get<std::int64_t>();
  const auto& classes = doc.at("classes");
  if (!classes.is_array()) throw ValidationError("ontology: 'classes' must be an array");
  for (std::size_t i = 0; i < classes.size(); ++i)
    o.classes.push_back(read_class(classes[i], "classes[" + std::to_string(i) + "]"));
  validate(o);
  return canonicalize(std::move(o));
}

std::string serialize_ontology(const Ontology& o) {
  const Ontology c = canonicalize(o);
  ordered_json doc;
  doc["name"] = c.name;
  doc["version"] = c.version;
  doc["classes"] = ordered_json::array();
  for (const auto& cls : c.classes) {
    ordered_json jc;
    jc["id"] = cls.id;
    jc["label"] = cls.label;
    jc["parent"] = cls.parent ? ordered_json(*cls.parent) : ordered_json(nullptr);
    jc["properties"] = ordered_json::array();
    for (const auto& p : cls.properties) {
      ordered_json jp;
      jp["id"] = p.id;
      jp["label"] = p.label;
      jp["datatype"] = std::string(to_string(p.datatype));
      jc["properties"].push_back(std::move(jp));
    }
    doc["classes"].push_back(std::move(jc));
  }
  return doc.dump(2) + "\n";
}

std::size_t ontology_size(const Ontology& o) {
  std::size_t n = o.classes.size();
  for (const auto& c : o.classes) n += c.properties.size();
  return std::max<std::size_t>(n, 1);
}

Ontology load_ontology_file(const std::string& path) { return parse_ontology(read_text_file(path)); }

void save_ontology_file(const std::string& path, const Ontology& o) {
  write_text_file(path, serialize_ontology(o));
}

}  // namespace accord
