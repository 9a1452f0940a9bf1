#include "accord/maintenance.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

#include <json.hpp>

#include "accord/error.hpp"
#include "accord/io.hpp"

namespace accord {

void MaintenancePolicy::validate() const {
  if (!(border >= 0.0)) throw ValidationError("border value must be non-negative");
  weights.validate();
  match.validate();
}

std::string_view to_string(Trigger t) {
  switch (t) {
    case Trigger::None: return "none";
    case Trigger::Local: return "local";
    case Trigger::Common: return "common";
    case Trigger::Both: return "both";
  }
  return "none";
}

Trigger detect_change(std::int64_t stored_local, std::int64_t stored_common, const Ontology& current_local,
                      const Ontology& current_common) {
  if (current_local.version < stored_local)
    throw ValidationError("local schema version regressed from " + std::to_string(stored_local) + " to " +
                          std::to_string(current_local.version));
  if (current_common.version < stored_common)
    throw ValidationError("common ontology version regressed from " + std::to_string(stored_common) + " to " +
                          std::to_string(current_common.version));
  const bool local = current_local.version != stored_local;
  const bool common = current_common.version != stored_common;
  if (local && common) return Trigger::Both;
  if (local) return Trigger::Local;
  if (common) return Trigger::Common;
  return Trigger::None;
}

Algorithm select_algorithm(double magnitude, const MaintenancePolicy& policy) {
  if (!(magnitude > 0.0)) throw std::invalid_argument("select_algorithm needs a positive change magnitude");
  return magnitude >= policy.border ? Algorithm::Complex : Algorithm::Simple;
}

PeerState initial_state(std::string peer, const Ontology& local, const Ontology& common,
                        const SemanticSimilarity& sim, const MaintenancePolicy& policy) {
  PeerState s;
  s.agreement = complex_match(local, common, sim, policy.match);
  s.agreement.peer = std::move(peer);
  s.local_snapshot = local;
  s.common_snapshot = common;
  return s;
}

namespace {

void add_subjects(const ChangeSet& cs, std::set<std::string>& into) {
  for (const auto& op : cs.ops) {
    into.insert(op.class_id);
    if (!op.new_id.empty() && op.kind == ChangeKind::RenameClass) into.insert(op.new_id);
  }
}

}  // namespace

MaintenanceResult maintain(const PeerState& stored, const Ontology& current_local, const Ontology& current_common,
                           const SemanticSimilarity& sim, const MaintenancePolicy& policy) {
  MaintenanceResult result;
  MaintenanceReport& r = result.report;
  r.peer = stored.agreement.peer;
  r.trigger = detect_change(stored.agreement.local_version, stored.agreement.common_version, current_local,
                            current_common);
  if (r.trigger == Trigger::None) {
    r.agreement = stored.agreement;
    result.state = stored;
    return result;
  }

  DiffOptions opts;
  opts.weights = policy.weights;
  opts.rescue = &sim;
  if (r.trigger != Trigger::Common) r.local_changes = diff_versions(stored.local_snapshot, current_local, opts);
  if (r.trigger != Trigger::Local) r.common_changes = diff_versions(stored.common_snapshot, current_common, opts);
  r.magnitude = std::max(r.local_changes.magnitude, r.common_changes.magnitude);

  std::vector<Correspondence> surviving;
  for (const auto& c : stored.agreement.correspondences) {
    if (current_local.find_class(c.local) && current_common.find_class(c.common)) {
      surviving.push_back(c);
    } else {
      ++r.dropped;
    }
  }

  Agreement& next = r.agreement;
  next.peer = stored.agreement.peer;
  next.local_version = current_local.version;
  next.common_version = current_common.version;

  if (r.magnitude > 0.0) {
    const Algorithm algorithm = policy.force ? *policy.force : select_algorithm(r.magnitude, policy);
    r.selected = algorithm;
    MatchRequest req;
    req.algorithm = algorithm;
    if (algorithm == Algorithm::Simple) {
      std::set<std::string> touched_local, touched_common;
      add_subjects(r.local_changes, touched_local);
      add_subjects(r.common_changes, touched_common);
      for (const auto& c : stored.agreement.correspondences)
        if (touched_common.contains(c.common)) touched_local.insert(c.local);

      std::vector<Correspondence> kept;
      for (const auto& c : surviving)
        if (!touched_local.contains(c.local)) kept.push_back(c);
      req.local_subset.emplace();
      for (const auto& id : touched_local)
        if (current_local.find_class(id)) req.local_subset->insert(id);
      for (const auto& c : kept) req.blocked_common.insert(c.common);

      MatchOutcome rematched = match_classes(current_local, current_common, sim, policy.match, req);
      r.comparisons = rematched.comparisons;
      next.correspondences = std::move(kept);
      for (auto& c : rematched.correspondences) next.correspondences.push_back(std::move(c));
    } else {
      MatchOutcome full = match_classes(current_local, current_common, sim, policy.match, req);
      r.comparisons = full.comparisons;
      next.correspondences = std::move(full.correspondences);
    }
  } else {
    // Versions moved but nothing structural changed.
    next.correspondences = std::move(surviving);
  }
  std::sort(next.correspondences.begin(), next.correspondences.end(),
            [](const Correspondence& x, const Correspondence& y) { return x.local < y.local; });

  result.state.agreement = next;
  result.state.local_snapshot = current_local;
  result.state.common_snapshot = current_common;
  return result;
}

namespace {

using nlohmann::ordered_json;

ordered_json class_json(const ClassDef& c) {
  ordered_json j;
  j["id"] = c.id;
  j["label"] = c.label;
  j["parent"] = c.parent ? ordered_json(*c.parent) : ordered_json(nullptr);
  j["properties"] = ordered_json::array();
  for (const auto& p : c.properties)
    j["properties"].push_back({{"id", p.id}, {"label", p.label}, {"datatype", std::string(to_string(p.datatype))}});
  return j;
}

ordered_json op_json(const ChangeOp& op) {
  ordered_json j;
  j["kind"] = std::string(to_string(op.kind));
  j["class"] = op.class_id;
  if (!op.property_id.empty()) j["property"] = op.property_id;
  if (op.kind == ChangeKind::RenameClass || op.kind == ChangeKind::RenameProperty) {
    j["old_label"] = op.old_label;
    j["new_label"] = op.new_label;
    if (!op.new_id.empty()) j["new_id"] = op.new_id;
  }
  if (op.added_class) j["definition"] = class_json(*op.added_class);
  if (op.added_property)
    j["definition"] = {{"id", op.added_property->id},
                       {"label", op.added_property->label},
                       {"datatype", std::string(to_string(op.added_property->datatype))}};
  return j;
}

ordered_json change_set_json(const ChangeSet& cs) {
  ordered_json j;
  j["ops"] = ordered_json::array();
  for (const auto& op : cs.ops) j["ops"].push_back(op_json(op));
  j["magnitude"] = cs.magnitude;
  return j;
}

}  // namespace

std::string serialize_change_set(const ChangeSet& cs) { return change_set_json(cs).dump(2) + "\n"; }

std::string serialize_report(const MaintenanceReport& r) {
  ordered_json j;
  j["peer"] = r.peer;
  j["trigger"] = std::string(to_string(r.trigger));
  j["selected"] = r.selected ? std::string(to_string(*r.selected)) : std::string("none");
  j["magnitude"] = r.magnitude;
  j["local_changes"] = change_set_json(r.local_changes);
  j["common_changes"] = change_set_json(r.common_changes);
  j["dropped"] = r.dropped;
  j["comparisons"] = r.comparisons;
  j["agreement"] = ordered_json::parse(serialize_agreement(r.agreement));
  return j.dump(2) + "\n";
}

}  // namespace accord
