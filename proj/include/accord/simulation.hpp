#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "accord/diff.hpp"
#include "accord/evaluation.hpp"
#include "accord/maintenance.hpp"
#include "accord/ontology.hpp"
#include "accord/rng.hpp"
#include "accord/similarity.hpp"
#include "accord/taxonomy.hpp"

namespace accord {

/// A peer exporting a local schema, with the ground-truth mapping kept by the generator.
struct SimplePeer {
  std::string id;
  Ontology local;
  PairSet gold;
};

/// How a generated peer's labels depart from the common ontology. Class labels are kept
/// verbatim, rewritten with same-concept synonyms, or reduced to one original token padded
/// with out-of-vocabulary tokens (recoverable only through structure). Property labels are
/// kept or rewritten with synonyms.
struct TwinConfig {
  double keep_label = 0.55;
  double synonym_label = 0.40;  // remainder: reduced labels
  double synonym_property = 0.35;
};

/// A perturbed copy of `common` with fresh ids, plus its gold mapping.
SimplePeer make_twin_peer(const Ontology& common, const Taxonomy& t, std::string peer_id, std::uint64_t seed,
                          const TwinConfig& cfg = {});

/// Peers "peer01".."peerNN", each seeded from `seed` and its position.
std::vector<SimplePeer> make_twin_peers(const Ontology& common, const Taxonomy& t, std::size_t count,
                                        std::uint64_t seed, const TwinConfig& cfg = {});

enum class MutationKind { Add, Delete, Rename };
enum class MutationTarget { Class, Property, Any };

std::string_view to_string(MutationKind k);
std::optional<MutationKind> parse_mutation_kind(std::string_view s);
std::string_view to_string(MutationTarget t);
std::optional<MutationTarget> parse_mutation_target(std::string_view s);

/// A rename replaces one token of the label, and each other token with probability `spread`.
/// A replacement is a same-concept synonym, a word from a neighbouring concept, or an
/// out-of-vocabulary word.
struct RenameStyle {
  double synonym = 0.4;
  double related = 0.4;  // remainder: out of vocabulary
  double spread = 0.3;
};

/// Words for generated labels: the taxonomy vocabulary plus a disjoint out-of-vocabulary list.
struct WordList {
  std::vector<std::string> vocabulary;
  std::vector<std::string> oov;

  static WordList from_taxonomy(const Taxonomy& t);
};

/// Plans random edits. Every element is touched at most once per plan and only leaf classes
/// are deleted, so diff_versions(o, apply_changes(o, plan)) reproduces the plan.
class Mutator {
 public:
  Mutator(const Taxonomy& t, RenameStyle style = {});

  /// `count` ops of one kind. Target Any draws uniformly over classes and properties.
  /// Throws ValidationError when fewer than `count` ops can be planned.
  std::vector<ChangeOp> plan(const Ontology& o, MutationKind kind, MutationTarget target, std::size_t count,
                             Rng& rng) const;

  /// One op per entry of `kinds`, in order.
  std::vector<ChangeOp> plan(const Ontology& o, const std::vector<MutationKind>& kinds, MutationTarget target,
                             Rng& rng) const;

  std::string rename_label(std::string_view label, bool upper_camel, Rng& rng) const;

 private:
  std::string fresh_label(bool upper_camel, Rng& rng) const;

  const Taxonomy* taxonomy_;
  RenameStyle style_;
  WordList words_;
};

/// Applies `ops` to a peer's schema and keeps the gold mapping in step.
void apply_to_peer(SimplePeer& peer, const std::vector<ChangeOp>& ops);

/// Drops gold links to deleted common classes.
void apply_common_change(std::vector<SimplePeer>& peers, const std::vector<ChangeOp>& ops);

/// Registry node of the two-level architecture.
class SuperPeer {
 public:
  SuperPeer(Ontology common, const SemanticSimilarity& sim, MaintenancePolicy policy);

  /// Builds the initial agreement. Throws ValidationError on a duplicate id.
  void register_peer(const SimplePeer& peer);

  bool is_registered(std::string_view id) const { return registry_.contains(std::string(id)); }
  std::size_t size() const { return registry_.size(); }
  const PeerState& state(std::string_view id) const;
  const Ontology& common() const { return common_; }
  const MaintenancePolicy& policy() const { return policy_; }

  void set_common(Ontology common) { common_ = std::move(common); }

  /// Maintains one peer against its current schema and the current common ontology.
  MaintenanceReport maintain_peer(std::string_view id, const Ontology& current_local);

  /// Local classes each peer maps from the queried common classes; peers with no match are
  /// left out. Throws ValidationError for an id not in the common ontology.
  std::map<std::string, std::set<std::string>> route_query(const std::set<std::string>& common_ids) const;

 private:
  Ontology common_;
  const SemanticSimilarity* sim_;
  MaintenancePolicy policy_;
  std::map<std::string, PeerState> registry_;
};

struct ScenarioStep {
  std::optional<std::string> peer;  // nullopt: the common ontology
  MutationKind op = MutationKind::Add;
  MutationTarget target = MutationTarget::Class;
  std::size_t count = 1;
};

struct Scenario {
  std::uint64_t seed = 0;
  std::vector<std::vector<ScenarioStep>> rounds;
};

/// `.scenario.json` reader (strict).
Scenario parse_scenario(std::string_view text);

struct SimRecord {
  std::size_t round = 0;
  std::string peer;
  Trigger trigger = Trigger::None;
  std::optional<Algorithm> selected;
  double magnitude = 0.0;
  std::size_t dropped = 0;
  std::size_t comparisons = 0;
  std::size_t correspondences = 0;
  EvalReport eval;
};

struct SimLog {
  std::vector<SimRecord> records;
  std::size_t rounds = 0;
};

/// One JSON object per line, in (round, peer id) order.
std::string serialize_sim_log(const SimLog& log);

/// Runs every round: mutations first (drawn from the scenario seed), then one maintenance
/// run per registered peer, in peer-id order.
SimLog run_scenario(SuperPeer& sp, std::vector<SimplePeer>& peers, const Scenario& sc, const Mutator& mutator);

}  // namespace accord
