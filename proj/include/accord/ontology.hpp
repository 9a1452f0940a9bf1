#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace accord {

enum class Datatype { String, Integer, Decimal, Date, Boolean };

std::string_view to_string(Datatype d);
std::optional<Datatype> parse_datatype(std::string_view s);

struct PropertyDef {
  std::string id;
  std::string label;
  Datatype datatype = Datatype::String;

  bool operator==(const PropertyDef&) const = default;
};

struct ClassDef {
  std::string id;
  std::string label;
  std::optional<std::string> parent;
  std::vector<PropertyDef> properties;

  const PropertyDef* find_property(std::string_view property_id) const;
  bool operator==(const ClassDef&) const = default;
};

/// A versioned schema: used both for peers' local schemas and for the common ontology.
///
/// Values produced by parse_ontology() are canonical (classes and properties sorted by id),
/// so structural equality coincides with equality of the serialized form.
struct Ontology {
  std::string name;
  std::int64_t version = 0;
  std::vector<ClassDef> classes;

  const ClassDef* find_class(std::string_view class_id) const;
  ClassDef* find_class(std::string_view class_id);

  /// Ids of the classes whose parent is `class_id`, in class order.
  std::vector<std::string> children_of(std::string_view class_id) const;

  bool operator==(const Ontology&) const = default;
};

/// Throws ValidationError describing the first violated invariant: empty or duplicate ids,
/// empty labels, dangling or cyclic parents, negative version.
void validate(const Ontology& o);

/// Sorts classes and each property list by id.
Ontology canonicalize(Ontology o);

/// Strict reader for the `.onto.json` format. Unknown or missing keys are errors.
Ontology parse_ontology(std::string_view text);

/// Canonical form: fixed key order, sorted classes/properties, two-space indentation,
/// trailing newline.
std::string serialize_ontology(const Ontology& o);

/// Number of classes plus number of properties, floored at 1.
std::size_t ontology_size(const Ontology& o);

Ontology load_ontology_file(const std::string& path);
void save_ontology_file(const std::string& path, const Ontology& o);

}  // namespace accord
