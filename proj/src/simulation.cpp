#include "accord/simulation.hpp"

#include <algorithm>
#include <cctype>
#include <cstdio>

#include <json.hpp>

#include "accord/error.hpp"
#include "json_util.hpp"

namespace accord {

namespace {

// Abbreviation-style tokens found in legacy schemas; none of them is a taxonomy word.
const std::vector<std::string> kOovWords = {"rec", "dat", "tbl", "fld", "itm", "obj", "val", "txt", "ref",
                                            "num", "hdr", "dtl", "mst", "ext", "misc", "attr", "xref",
                                            "sfx", "idx", "lkp", "blk", "seg", "qty", "flg"};

std::string capitalize(std::string w) {
  if (!w.empty()) w[0] = static_cast<char>(std::toupper(static_cast<unsigned char>(w[0])));
  return w;
}

std::string compose(const std::vector<std::string>& tokens, bool upper_camel) {
  std::string out;
  for (std::size_t i = 0; i < tokens.size(); ++i) out += (i == 0 && !upper_camel) ? tokens[i] : capitalize(tokens[i]);
  return out;
}

std::string numbered(const char* prefix, std::size_t n) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%s%03zu", prefix, n);
  return buf;
}

/// Another word of one of `word`'s concepts, if there is one.
std::optional<std::string> synonym_of(const Taxonomy& t, const std::string& word, Rng& rng) {
  std::vector<std::string> options;
  for (auto c : t.senses(word))
    for (const auto& w : t.node(c).words)
      if (w != word) options.push_back(w);
  if (options.empty()) return std::nullopt;
  std::sort(options.begin(), options.end());
  return rng.pick(options);
}

}  // namespace

SimplePeer make_twin_peer(const Ontology& common, const Taxonomy& t, std::string peer_id, std::uint64_t seed,
                          const TwinConfig& cfg) {
  Rng rng(seed);
  const WordList words = WordList::from_taxonomy(t);

  // Shuffled numbering so local id order does not mirror common id order.
  std::vector<std::size_t> order(common.classes.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  for (std::size_t i = order.size(); i > 1; --i) std::swap(order[i - 1], order[rng.index(i)]);
  std::map<std::string, std::string> ids;
  for (std::size_t i = 0; i < order.size(); ++i) ids[common.classes[order[i]].id] = numbered("c", i + 1);

  auto synonyms = [&](const std::string& label, bool upper) {
    auto tokens = tokenize_label(label);
    for (auto& tok : tokens)
      if (auto s = synonym_of(t, tok, rng)) tok = *s;
    return compose(tokens, upper);
  };

  SimplePeer peer;
  peer.id = std::move(peer_id);
  peer.local.name = peer.id;
  peer.local.version = 1;
  std::size_t next_property = 1;
  for (const auto& c : common.classes) {
    ClassDef lc;
    lc.id = ids.at(c.id);
    if (c.parent) lc.parent = ids.at(*c.parent);
    const double u = rng.uniform();
    if (u < cfg.keep_label) {
      lc.label = c.label;
    } else if (u < cfg.keep_label + cfg.synonym_label) {
      lc.label = synonyms(c.label, true);
    } else {
      const auto tokens = tokenize_label(c.label);
      std::vector<std::string> reduced{tokens.empty() ? rng.pick(words.vocabulary) : rng.pick(tokens)};
      reduced.push_back(rng.pick(words.oov));
      reduced.push_back(rng.pick(words.oov));
      lc.label = compose(reduced, true);
    }
    for (const auto& p : c.properties) {
      PropertyDef lp{numbered("p", next_property++), p.label, p.datatype};
      if (rng.chance(cfg.synonym_property)) lp.label = synonyms(p.label, false);
      lc.properties.push_back(std::move(lp));
    }
    peer.gold.emplace(lc.id, c.id);
    peer.local.classes.push_back(std::move(lc));
  }
  peer.local = canonicalize(std::move(peer.local));
  validate(peer.local);
  return peer;
}

std::vector<SimplePeer> make_twin_peers(const Ontology& common, const Taxonomy& t, std::size_t count,
                                        std::uint64_t seed, const TwinConfig& cfg) {
  std::vector<SimplePeer> peers;
  for (std::size_t i = 1; i <= count; ++i) {
    char id[32];
    std::snprintf(id, sizeof id, "peer%02zu", i);
    peers.push_back(make_twin_peer(common, t, id, derive_seed({seed, i}), cfg));
  }
  return peers;
}

std::string_view to_string(MutationKind k) {
  switch (k) {
    case MutationKind::Add: return "add";
    case MutationKind::Delete: return "delete";
    case MutationKind::Rename: return "rename";
  }
  return "add";
}

std::optional<MutationKind> parse_mutation_kind(std::string_view s) {
  if (s == "add") return MutationKind::Add;
  if (s == "delete") return MutationKind::Delete;
  if (s == "rename") return MutationKind::Rename;
  return std::nullopt;
}

std::string_view to_string(MutationTarget t) {
  switch (t) {
    case MutationTarget::Class: return "class";
    case MutationTarget::Property: return "property";
    case MutationTarget::Any: return "any";
  }
  return "class";
}

std::optional<MutationTarget> parse_mutation_target(std::string_view s) {
  if (s == "class") return MutationTarget::Class;
  if (s == "property") return MutationTarget::Property;
  if (s == "any") return MutationTarget::Any;
  return std::nullopt;
}

WordList WordList::from_taxonomy(const Taxonomy& t) {
  WordList w;
  w.vocabulary = t.vocabulary();
  for (const auto& word : kOovWords)
    if (t.senses(word).empty()) w.oov.push_back(word);
  return w;
}

Mutator::Mutator(const Taxonomy& t, RenameStyle style)
    : taxonomy_(&t), style_(style), words_(WordList::from_taxonomy(t)) {}

std::string Mutator::fresh_label(bool upper_camel, Rng& rng) const {
  std::vector<std::string> tokens;
  const std::size_t n = 1 + rng.index(2);
  for (std::size_t i = 0; i < n; ++i)
    tokens.push_back(rng.chance(0.7) ? rng.pick(words_.vocabulary) : rng.pick(words_.oov));
  return compose(tokens, upper_camel);
}

std::string Mutator::rename_label(std::string_view label, bool upper_camel, Rng& rng) const {
  const auto original = tokenize_label(label);
  const Taxonomy& t = *taxonomy_;
  auto related_of = [&](const std::string& word) -> std::optional<std::string> {
    std::vector<std::size_t> concepts;
    for (auto c : t.senses(word)) {
      const auto& node = t.node(c);
      for (const auto& p : node.parents) {
        const auto pi = t.index_of(p);
        concepts.push_back(pi);
        for (std::size_t k = 0; k < t.size(); ++k)
          for (const auto& pp : t.node(k).parents)
            if (pp == p && k != c) concepts.push_back(k);
      }
      for (std::size_t k = 0; k < t.size(); ++k)
        for (const auto& pp : t.node(k).parents)
          if (pp == node.id) concepts.push_back(k);
    }
    std::sort(concepts.begin(), concepts.end());
    concepts.erase(std::unique(concepts.begin(), concepts.end()), concepts.end());
    std::vector<std::string> options;
    for (auto c : concepts)
      for (const auto& w : t.node(c).words) options.push_back(w);
    if (options.empty()) return std::nullopt;
    return rng.pick(options);
  };

  for (int attempt = 0; attempt < 8; ++attempt) {
    std::vector<std::string> tokens;
    const std::size_t pivot = original.empty() ? 0 : rng.index(original.size());
    for (std::size_t i = 0; i < original.size(); ++i) {
      const std::string& tok = original[i];
      if (i != pivot && !rng.chance(style_.spread)) {
        tokens.push_back(tok);
        continue;
      }
      const double u = rng.uniform();
      std::optional<std::string> replacement;
      if (u < style_.synonym) {
        replacement = synonym_of(t, tok, rng);
        if (!replacement) replacement = related_of(tok);
      } else if (u < style_.synonym + style_.related) {
        replacement = related_of(tok);
        if (!replacement && t.senses(tok).empty()) replacement = rng.pick(words_.vocabulary);
      }
      tokens.push_back(replacement ? *replacement : rng.pick(words_.oov));
    }
    if (tokens.empty()) tokens.push_back(rng.pick(words_.oov));
    if (tokens != original) return compose(tokens, upper_camel);
  }
  auto tokens = original;
  tokens.push_back(rng.pick(words_.oov));
  return compose(tokens, upper_camel);
}

std::vector<ChangeOp> Mutator::plan(const Ontology& o, MutationKind kind, MutationTarget target, std::size_t count,
                                    Rng& rng) const {
  return plan(o, std::vector<MutationKind>(count, kind), target, rng);
}

std::vector<ChangeOp> Mutator::plan(const Ontology& o, const std::vector<MutationKind>& kinds, MutationTarget target,
                                    Rng& rng) const {
  struct Element {
    std::string cls;
    std::string prop;  // empty for the class itself
  };
  Ontology work = o;
  std::set<std::string> touched_classes;  // any op on the class or its properties
  std::set<std::string> renamed_classes;
  std::set<std::string> added_classes;
  std::set<std::pair<std::string, std::string>> touched_props;
  std::size_t next_id = 1;
  auto fresh_class_id = [&] {
    std::string id;
    do id = numbered("n", next_id++);
    while (work.find_class(id));
    return id;
  };
  auto fresh_property_id = [&](const ClassDef& c) {
    std::string id;
    do id = numbered("q", next_id++);
    while (c.find_property(id));
    return id;
  };
  auto random_datatype = [&] {
    static constexpr Datatype kinds[] = {Datatype::String, Datatype::Integer, Datatype::Decimal, Datatype::Date,
                                         Datatype::Boolean};
    return kinds[rng.index(5)];
  };

  std::vector<ChangeOp> ops;
  for (const MutationKind kind : kinds) {
    std::vector<Element> classes, props;
    for (const auto& c : work.classes) {
      const bool added = added_classes.contains(c.id);
      switch (kind) {
        case MutationKind::Add:
          classes.push_back({c.id, {}});  // as a parent slot
          if (!added) props.push_back({c.id, {}});  // as a property owner
          break;
        case MutationKind::Delete:
          if (!added && !touched_classes.contains(c.id) && work.children_of(c.id).empty())
            classes.push_back({c.id, {}});
          break;
        case MutationKind::Rename:
          if (!added && !renamed_classes.contains(c.id)) classes.push_back({c.id, {}});
          break;
      }
      if (kind != MutationKind::Add && !added)
        for (const auto& p : c.properties)
          if (!touched_props.contains({c.id, p.id})) props.push_back({c.id, p.id});
    }

    bool on_class = target == MutationTarget::Class;
    if (target == MutationTarget::Any) {
      if (kind == MutationKind::Add) {
        std::size_t n_props = 0;
        for (const auto& c : work.classes) n_props += c.properties.size();
        const std::size_t total = work.classes.size() + n_props;
        on_class = props.empty() || total == 0 || rng.index(total) < work.classes.size();
      } else {
        const std::size_t total = classes.size() + props.size();
        if (total == 0) throw ValidationError("no element left to " + std::string(to_string(kind)));
        on_class = rng.index(total) < classes.size();
      }
    }

    ChangeOp op;
    if (kind == MutationKind::Add && on_class) {
      ClassDef c;
      c.id = fresh_class_id();
      c.label = fresh_label(true, rng);
      if (!classes.empty()) c.parent = rng.pick(classes).cls;
      const std::size_t n_props = rng.index(3);
      for (std::size_t k = 0; k < n_props; ++k) {
        PropertyDef p{fresh_property_id(c), fresh_label(false, rng), random_datatype()};
        c.properties.push_back(std::move(p));
      }
      std::sort(c.properties.begin(), c.properties.end(),
                [](const PropertyDef& a, const PropertyDef& b) { return a.id < b.id; });
      op.kind = ChangeKind::AddClass;
      op.class_id = c.id;
      op.added_class = c;
      added_classes.insert(c.id);
      touched_classes.insert(c.id);
    } else if (kind == MutationKind::Add) {
      if (props.empty()) throw ValidationError("no class to add a property to");
      const ClassDef& owner = *work.find_class(rng.pick(props).cls);
      PropertyDef p{fresh_property_id(owner), fresh_label(false, rng), random_datatype()};
      op.kind = ChangeKind::AddProperty;
      op.class_id = owner.id;
      op.property_id = p.id;
      op.added_property = p;
      touched_classes.insert(owner.id);
      touched_props.insert({owner.id, p.id});
    } else {
      const auto& pool = on_class ? classes : props;
      if (pool.empty())
        throw ValidationError("no " + std::string(on_class ? "class" : "property") + " left to " +
                              std::string(to_string(kind)));
      const Element e = rng.pick(pool);
      const ClassDef& c = *work.find_class(e.cls);
      op.class_id = e.cls;
      touched_classes.insert(e.cls);
      if (on_class) {
        if (kind == MutationKind::Delete) {
          op.kind = ChangeKind::DeleteClass;
        } else {
          op.kind = ChangeKind::RenameClass;
          op.old_label = c.label;
          op.new_label = rename_label(c.label, true, rng);
          renamed_classes.insert(e.cls);
        }
      } else {
        op.property_id = e.prop;
        touched_props.insert({e.cls, e.prop});
        if (kind == MutationKind::Delete) {
          op.kind = ChangeKind::DeleteProperty;
        } else {
          op.kind = ChangeKind::RenameProperty;
          op.old_label = c.find_property(e.prop)->label;
          op.new_label = rename_label(op.old_label, false, rng);
        }
      }
    }
    work = apply_changes(work, std::vector<ChangeOp>{op});
    ops.push_back(std::move(op));
  }
  return ops;
}

void apply_to_peer(SimplePeer& peer, const std::vector<ChangeOp>& ops) {
  peer.local = apply_changes(peer.local, ops);
  for (const auto& op : ops) {
    if (op.kind == ChangeKind::DeleteClass) {
      std::erase_if(peer.gold, [&](const auto& g) { return g.first == op.class_id; });
    } else if (op.kind == ChangeKind::RenameClass && !op.new_id.empty()) {
      PairSet next;
      for (const auto& g : peer.gold) next.emplace(g.first == op.class_id ? op.new_id : g.first, g.second);
      peer.gold = std::move(next);
    }
  }
}

void apply_common_change(std::vector<SimplePeer>& peers, const std::vector<ChangeOp>& ops) {
  for (auto& peer : peers)
    for (const auto& op : ops) {
      if (op.kind == ChangeKind::DeleteClass) {
        std::erase_if(peer.gold, [&](const auto& g) { return g.second == op.class_id; });
      } else if (op.kind == ChangeKind::RenameClass && !op.new_id.empty()) {
        PairSet next;
        for (const auto& g : peer.gold) next.emplace(g.first, g.second == op.class_id ? op.new_id : g.second);
        peer.gold = std::move(next);
      }
    }
}

SuperPeer::SuperPeer(Ontology common, const SemanticSimilarity& sim, MaintenancePolicy policy)
    : common_(std::move(common)), sim_(&sim), policy_(std::move(policy)) {
  policy_.validate();
}

void SuperPeer::register_peer(const SimplePeer& peer) {
  if (registry_.contains(peer.id)) throw ValidationError("peer '" + peer.id + "' is already registered");
  registry_.emplace(peer.id, initial_state(peer.id, peer.local, common_, *sim_, policy_));
}

const PeerState& SuperPeer::state(std::string_view id) const {
  const auto it = registry_.find(std::string(id));
  if (it == registry_.end()) throw ValidationError("peer '" + std::string(id) + "' is not registered");
  return it->second;
}

MaintenanceReport SuperPeer::maintain_peer(std::string_view id, const Ontology& current_local) {
  const auto it = registry_.find(std::string(id));
  if (it == registry_.end()) throw ValidationError("peer '" + std::string(id) + "' is not registered");
  auto result = maintain(it->second, current_local, common_, *sim_, policy_);
  it->second = std::move(result.state);
  return std::move(result.report);
}

std::map<std::string, std::set<std::string>> SuperPeer::route_query(const std::set<std::string>& common_ids) const {
  for (const auto& id : common_ids)
    if (!common_.find_class(id)) throw ValidationError("query names unknown common class '" + id + "'");
  std::map<std::string, std::set<std::string>> out;
  for (const auto& [peer, state] : registry_) {
    std::set<std::string> hits;
    for (const auto& c : state.agreement.correspondences)
      if (common_ids.contains(c.common)) hits.insert(c.local);
    if (!hits.empty()) out.emplace(peer, std::move(hits));
  }
  return out;
}

Scenario parse_scenario(std::string_view text) {
  const auto doc = detail::parse_json(text);
  detail::require_keys(doc, {"seed", "rounds"}, "scenario");
  Scenario sc;
  const long long seed = detail::get_integer(doc, "seed", "scenario");
  sc.seed = static_cast<std::uint64_t>(seed);
  const auto& rounds = doc.at("rounds");
  if (!rounds.is_array()) throw ValidationError("scenario: 'rounds' must be an array");
  for (std::size_t r = 0; r < rounds.size(); ++r) {
    if (!rounds[r].is_array()) throw ValidationError("scenario: each round must be an array of steps");
    std::vector<ScenarioStep> steps;
    for (std::size_t s = 0; s < rounds[r].size(); ++s) {
      const std::string where = "rounds[" + std::to_string(r) + "][" + std::to_string(s) + "]";
      const auto& j = rounds[r][s];
      detail::require_keys(j, {"where", "op", "target", "count"}, where);
      ScenarioStep step;
      const auto loc = detail::get_string(j, "where", where);
      if (loc.rfind("peer:", 0) == 0 && loc.size() > 5) {
        step.peer = loc.substr(5);
      } else if (loc != "common") {
        throw ValidationError(where + ": 'where' must be \"common\" or \"peer:<id>\"");
      }
      const auto op = parse_mutation_kind(detail::get_string(j, "op", where));
      if (!op) throw ValidationError(where + ": 'op' must be add, delete or rename");
      step.op = *op;
      const auto target = parse_mutation_target(detail::get_string(j, "target", where));
      if (!target || *target == MutationTarget::Any)
        throw ValidationError(where + ": 'target' must be class or property");
      step.target = *target;
      const long long count = detail::get_integer(j, "count", where);
      if (count < 1) throw ValidationError(where + ": 'count' must be at least 1");
      step.count = static_cast<std::size_t>(count);
      steps.push_back(std::move(step));
    }
    sc.rounds.push_back(std::move(steps));
  }
  return sc;
}

std::string serialize_sim_log(const SimLog& log) {
  std::string out;
  for (const auto& r : log.records) {
    nlohmann::ordered_json j;
    j["round"] = r.round;
    j["peer"] = r.peer;
    j["trigger"] = std::string(to_string(r.trigger));
    j["selected"] = r.selected ? std::string(to_string(*r.selected)) : std::string("none");
    j["magnitude"] = r.magnitude;
    j["dropped"] = r.dropped;
    j["comparisons"] = r.comparisons;
    j["correspondences"] = r.correspondences;
    j["precision"] = r.eval.precision;
    j["recall"] = r.eval.recall;
    j["f_measure"] = r.eval.f_measure;
    out += j.dump();
    out += '\n';
  }
  return out;
}

SimLog run_scenario(SuperPeer& sp, std::vector<SimplePeer>& peers, const Scenario& sc, const Mutator& mutator) {
  std::sort(peers.begin(), peers.end(), [](const SimplePeer& a, const SimplePeer& b) { return a.id < b.id; });
  for (const auto& p : peers)
    if (!sp.is_registered(p.id)) throw ValidationError("peer '" + p.id + "' is not registered");

  Rng rng(sc.seed);
  SimLog log;
  for (std::size_t round = 0; round < sc.rounds.size(); ++round) {
    for (const auto& step : sc.rounds[round]) {
      if (step.peer) {
        const auto it = std::find_if(peers.begin(), peers.end(), [&](const SimplePeer& p) { return p.id == *step.peer; });
        if (it == peers.end()) throw ValidationError("scenario names unknown peer '" + *step.peer + "'");
        apply_to_peer(*it, mutator.plan(it->local, step.op, step.target, step.count, rng));
      } else {
        const auto ops = mutator.plan(sp.common(), step.op, step.target, step.count, rng);
        sp.set_common(apply_changes(sp.common(), ops));
        apply_common_change(peers, ops);
      }
    }
    for (const auto& peer : peers) {
      const MaintenanceReport report = sp.maintain_peer(peer.id, peer.local);
      SimRecord rec;
      rec.round = round + 1;
      rec.peer = peer.id;
      rec.trigger = report.trigger;
      rec.selected = report.selected;
      rec.magnitude = report.magnitude;
      rec.dropped = report.dropped;
      rec.comparisons = report.comparisons;
      rec.correspondences = report.agreement.correspondences.size();
      rec.eval = score(pairs_of(report.agreement), peer.gold);
      log.records.push_back(std::move(rec));
    }
  }
  log.rounds = sc.rounds.size();
  return log;
}

}  // namespace accord
