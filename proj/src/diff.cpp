#include "accord/diff.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <tuple>

#include "accord/error.hpp"
#include "accord/similarity.hpp"

namespace accord {

std::string_view to_string(ChangeKind k) {
  switch (k) {
    case ChangeKind::AddClass: return "add_class";
    case ChangeKind::DeleteClass: return "delete_class";
    case ChangeKind::RenameClass: return "rename_class";
    case ChangeKind::AddProperty: return "add_property";
    case ChangeKind::DeleteProperty: return "delete_property";
    case ChangeKind::RenameProperty: return "rename_property";
  }
  return "add_class";
}

std::optional<ChangeKind> parse_change_kind(std::string_view s) {
  for (auto k : {ChangeKind::AddClass, ChangeKind::DeleteClass, ChangeKind::RenameClass, ChangeKind::AddProperty,
                 ChangeKind::DeleteProperty, ChangeKind::RenameProperty})
    if (to_string(k) == s) return k;
  return std::nullopt;
}

double OpWeights::of(ChangeKind k) const {
  switch (k) {
    case ChangeKind::AddClass: return add_class;
    case ChangeKind::DeleteClass: return delete_class;
    case ChangeKind::RenameClass: return rename_class;
    case ChangeKind::AddProperty: return add_property;
    case ChangeKind::DeleteProperty: return delete_property;
    case ChangeKind::RenameProperty: return rename_property;
  }
  return 0.0;
}

void OpWeights::validate() const {
  for (double w : {add_class, delete_class, rename_class, add_property, delete_property, rename_property})
    if (!(w >= 0.0)) throw ValidationError("op weights must be non-negative");
}

double change_magnitude(const std::vector<ChangeOp>& ops, const OpWeights& w, const Ontology& old) {
  double total = 0.0;
  for (const auto& op : ops) total += w.of(op.kind);
  return total / static_cast<double>(ontology_size(old));
}

namespace {

int kind_rank(ChangeKind k) {
  switch (k) {
    case ChangeKind::DeleteClass: return 0;
    case ChangeKind::AddClass: return 1;
    case ChangeKind::RenameClass: return 2;
    case ChangeKind::DeleteProperty: return 3;
    case ChangeKind::AddProperty: return 4;
    case ChangeKind::RenameProperty: return 5;
  }
  return 6;
}

/// Greedy one-to-one pairing of deleted and added items by label similarity.
/// Returns (deleted index, added index) pairs.
template <typename Item>
std::vector<std::pair<std::size_t, std::size_t>> rescue_pairs(const std::vector<const Item*>& deleted,
                                                              const std::vector<const Item*>& added,
                                                              const DiffOptions& opts) {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  if (!opts.rescue || deleted.empty() || added.empty()) return out;
  struct Candidate {
    double score;
    std::size_t d, a;
  };
  std::vector<Candidate> cands;
  for (std::size_t d = 0; d < deleted.size(); ++d)
    for (std::size_t a = 0; a < added.size(); ++a) {
      const double s = opts.rescue->label_similarity(deleted[d]->label, added[a]->label);
      if (s >= opts.rescue_threshold) cands.push_back({s, d, a});
    }
  std::sort(cands.begin(), cands.end(), [&](const Candidate& x, const Candidate& y) {
    if (x.score != y.score) return x.score > y.score;
    return std::tie(deleted[x.d]->id, added[x.a]->id) < std::tie(deleted[y.d]->id, added[y.a]->id);
  });
  std::vector<bool> used_d(deleted.size()), used_a(added.size());
  for (const auto& c : cands) {
    if (used_d[c.d] || used_a[c.a]) continue;
    used_d[c.d] = used_a[c.a] = true;
    out.emplace_back(c.d, c.a);
  }
  return out;
}

void diff_properties(const ClassDef& before, const ClassDef& after, const DiffOptions& opts,
                     std::vector<ChangeOp>& ops) {
  std::vector<const PropertyDef*> deleted, added;
  for (const auto& p : before.properties) {
    const PropertyDef* q = after.find_property(p.id);
    if (!q || q->datatype != p.datatype) {
      deleted.push_back(&p);
    } else if (q->label != p.label) {
      ChangeOp op{ChangeKind::RenameProperty, before.id, p.id, p.label, q->label};
      ops.push_back(std::move(op));
    }
  }
  for (const auto& q : after.properties) {
    const PropertyDef* p = before.find_property(q.id);
    if (!p || p->datatype != q.datatype) added.push_back(&q);
  }

  std::vector<bool> rescued_d(deleted.size()), rescued_a(added.size());
  for (auto [d, a] : rescue_pairs(deleted, added, opts)) {
    // A same-id pair is a datatype change; that stays a delete plus an add.
    if (deleted[d]->id == added[a]->id) continue;
    rescued_d[d] = rescued_a[a] = true;
    ChangeOp op{ChangeKind::RenameProperty, before.id, deleted[d]->id, deleted[d]->label, added[a]->label,
                added[a]->id};
    ops.push_back(std::move(op));
  }
  for (std::size_t d = 0; d < deleted.size(); ++d)
    if (!rescued_d[d]) ops.push_back({ChangeKind::DeleteProperty, before.id, deleted[d]->id});
  for (std::size_t a = 0; a < added.size(); ++a)
    if (!rescued_a[a]) {
      ChangeOp op{ChangeKind::AddProperty, before.id, added[a]->id};
      op.added_property = *added[a];
      ops.push_back(std::move(op));
    }
}

}  // namespace

void sort_ops(std::vector<ChangeOp>& ops) {
  std::stable_sort(ops.begin(), ops.end(), [](const ChangeOp& a, const ChangeOp& b) {
    return std::make_tuple(std::cref(a.class_id), kind_rank(a.kind), std::cref(a.property_id)) <
           std::make_tuple(std::cref(b.class_id), kind_rank(b.kind), std::cref(b.property_id));
  });
}

ChangeSet diff_versions(const Ontology& old_version, const Ontology& new_version, const DiffOptions& opts) {
  if (old_version.name != new_version.name)
    throw ValidationError("cannot diff '" + old_version.name + "' against '" + new_version.name + "'");
  if (new_version.version < old_version.version)
    throw ValidationError("version regression: " + std::to_string(old_version.version) + " -> " +
                          std::to_string(new_version.version));

  std::vector<const ClassDef*> deleted, added;
  for (const auto& c : old_version.classes)
    if (!new_version.find_class(c.id)) deleted.push_back(&c);
  for (const auto& c : new_version.classes)
    if (!old_version.find_class(c.id)) added.push_back(&c);

  std::vector<ChangeOp> ops;
  std::map<std::string, std::string> renamed_ids;  // old id -> new id
  std::vector<bool> rescued_d(deleted.size()), rescued_a(added.size());
  for (auto [d, a] : rescue_pairs(deleted, added, opts)) {
    rescued_d[d] = rescued_a[a] = true;
    renamed_ids[deleted[d]->id] = added[a]->id;
    ChangeOp op{ChangeKind::RenameClass, deleted[d]->id, {}, deleted[d]->label, added[a]->label, added[a]->id};
    ops.push_back(std::move(op));
    // Parent differences inside a rescued pair are not reported.
    diff_properties(*deleted[d], *added[a], opts, ops);
  }

  auto mapped = [&](const std::optional<std::string>& parent) -> std::optional<std::string> {
    if (!parent) return parent;
    const auto it = renamed_ids.find(*parent);
    return it == renamed_ids.end() ? parent : std::optional<std::string>(it->second);
  };

  for (const auto& before : old_version.classes) {
    const ClassDef* after = new_version.find_class(before.id);
    if (!after) continue;
    if (mapped(before.parent) != after->parent) {
      ops.push_back({ChangeKind::DeleteClass, before.id});
      ChangeOp add{ChangeKind::AddClass, after->id};
      add.added_class = *after;
      ops.push_back(std::move(add));
      continue;
    }
    if (before.label != after->label) ops.push_back({ChangeKind::RenameClass, before.id, {}, before.label, after->label});
    diff_properties(before, *after, opts, ops);
  }
  for (std::size_t d = 0; d < deleted.size(); ++d)
    if (!rescued_d[d]) ops.push_back({ChangeKind::DeleteClass, deleted[d]->id});
  for (std::size_t a = 0; a < added.size(); ++a)
    if (!rescued_a[a]) {
      ChangeOp op{ChangeKind::AddClass, added[a]->id};
      op.added_class = *added[a];
      ops.push_back(std::move(op));
    }

  sort_ops(ops);
  ChangeSet cs;
  cs.magnitude = change_magnitude(ops, opts.weights, old_version);
  cs.ops = std::move(ops);
  return cs;
}

namespace {

[[noreturn]] void inapplicable(const ChangeOp& op, const std::string& why) {
  std::string subject = op.class_id;
  if (!op.property_id.empty()) subject += "." + op.property_id;
  throw ValidationError("inapplicable " + std::string(to_string(op.kind)) + " on '" + subject + "': " + why);
}

// Ops name classes by their old-version id; `aliases` follows ids changed by earlier renames.
ClassDef& existing_class(Ontology& o, const ChangeOp& op, const std::map<std::string, std::string>& aliases) {
  const auto alias = aliases.find(op.class_id);
  ClassDef* c = o.find_class(alias == aliases.end() ? op.class_id : alias->second);
  if (!c) inapplicable(op, "unknown class");
  return *c;
}

std::vector<PropertyDef>::iterator existing_property(ClassDef& c, const ChangeOp& op) {
  auto it = std::find_if(c.properties.begin(), c.properties.end(),
                         [&](const PropertyDef& p) { return p.id == op.property_id; });
  if (it == c.properties.end()) inapplicable(op, "unknown property");
  return it;
}

}  // namespace

Ontology apply_changes(const Ontology& old_version, const std::vector<ChangeOp>& ops) {
  Ontology o = old_version;
  std::map<std::string, std::string> aliases;
  for (const auto& op : ops) {
    switch (op.kind) {
      case ChangeKind::AddClass: {
        if (!op.added_class) inapplicable(op, "missing class definition");
        if (op.added_class->id != op.class_id) inapplicable(op, "definition id does not match");
        if (o.find_class(op.class_id)) inapplicable(op, "class already exists");
        o.classes.push_back(*op.added_class);
        break;
      }
      case ChangeKind::DeleteClass: {
        existing_class(o, op, aliases);
        std::erase_if(o.classes, [&](const ClassDef& c) { return c.id == op.class_id; });
        break;
      }
      case ChangeKind::RenameClass: {
        ClassDef& c = existing_class(o, op, aliases);
        if (c.label != op.old_label) inapplicable(op, "label is '" + c.label + "', expected '" + op.old_label + "'");
        c.label = op.new_label;
        if (!op.new_id.empty() && op.new_id != op.class_id) {
          if (o.find_class(op.new_id)) inapplicable(op, "class '" + op.new_id + "' already exists");
          c.id = op.new_id;
          aliases[op.class_id] = op.new_id;
          for (auto& other : o.classes)
            if (other.parent && *other.parent == op.class_id) other.parent = op.new_id;
        }
        break;
      }
      case ChangeKind::AddProperty: {
        ClassDef& c = existing_class(o, op, aliases);
        if (!op.added_property) inapplicable(op, "missing property definition");
        if (op.added_property->id != op.property_id) inapplicable(op, "definition id does not match");
        if (c.find_property(op.property_id)) inapplicable(op, "property already exists");
        c.properties.push_back(*op.added_property);
        break;
      }
      case ChangeKind::DeleteProperty: {
        ClassDef& c = existing_class(o, op, aliases);
        c.properties.erase(existing_property(c, op));
        break;
      }
      case ChangeKind::RenameProperty: {
        ClassDef& c = existing_class(o, op, aliases);
        auto it = existing_property(c, op);
        if (it->label != op.old_label)
          inapplicable(op, "label is '" + it->label + "', expected '" + op.old_label + "'");
        it->label = op.new_label;
        if (!op.new_id.empty() && op.new_id != op.property_id) {
          if (c.find_property(op.new_id)) inapplicable(op, "property '" + op.new_id + "' already exists");
          it->id = op.new_id;
        }
        break;
      }
    }
  }
  o.version = old_version.version + 1;
  validate(o);
  return canonicalize(std::move(o));
}

Ontology apply_changes(const Ontology& old_version, const ChangeSet& cs) { return apply_changes(old_version, cs.ops); }

}  // namespace accord
