#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "accord/ontology.hpp"

namespace accord {

class SemanticSimilarity;

enum class ChangeKind { AddClass, DeleteClass, RenameClass, AddProperty, DeleteProperty, RenameProperty };

std::string_view to_string(ChangeKind k);
std::optional<ChangeKind> parse_change_kind(std::string_view s);

struct OpWeights {
  double add_class = 1.0;
  double delete_class = 1.0;
  double rename_class = 1.0;
  double add_property = 1.0;
  double delete_property = 1.0;
  double rename_property = 1.0;

  double of(ChangeKind k) const;
  /// Throws ValidationError on a negative weight.
  void validate() const;
  bool operator==(const OpWeights&) const = default;
};

/// One edit between two versions of an ontology.
///
/// `class_id` (and `property_id` for property kinds) name the subject as it exists in the
/// old version, or in the new version for adds. Renames carry both labels; a rename recovered
/// from a delete/add pair also carries the subject's id in the new version in `new_id`.
/// Adds carry the full definition so that the op can be replayed.
struct ChangeOp {
  ChangeKind kind = ChangeKind::AddClass;
  std::string class_id;
  std::string property_id;
  std::string old_label;
  std::string new_label;
  std::string new_id;
  std::optional<ClassDef> added_class;
  std::optional<PropertyDef> added_property;

  bool operator==(const ChangeOp&) const = default;
};

struct ChangeSet {
  std::vector<ChangeOp> ops;
  double magnitude = 0.0;

  bool empty() const { return ops.empty(); }
};

struct DiffOptions {
  OpWeights weights;
  /// When set, deleted/added pairs whose labels score at least `rescue_threshold` are
  /// reported as renames.
  const SemanticSimilarity* rescue = nullptr;
  double rescue_threshold = 0.8;
};

/// Weighted op count over the size of the old version.
double change_magnitude(const std::vector<ChangeOp>& ops, const OpWeights& w, const Ontology& old);

/// Id-anchored structural diff. A class whose parent changed is reported as a delete
/// followed by an add, as is a property whose datatype changed.
///
/// Throws ValidationError when the names differ or the version goes backwards.
ChangeSet diff_versions(const Ontology& old_version, const Ontology& new_version, const DiffOptions& opts = {});

/// Replays `cs` in order and bumps the version by one. Throws ValidationError when an op
/// does not apply (unknown subject, duplicate add, label mismatch) or the result is invalid.
Ontology apply_changes(const Ontology& old_version, const ChangeSet& cs);
Ontology apply_changes(const Ontology& old_version, const std::vector<ChangeOp>& ops);

/// Ops in the order diff_versions emits them.
void sort_ops(std::vector<ChangeOp>& ops);

}  // namespace accord
